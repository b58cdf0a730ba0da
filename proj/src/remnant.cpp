#include "preisach/remnant.hpp"

#include "preisach/errors.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace preisach {

namespace {

struct Piece {
    double x_lo;
    double x_hi;
    double row;
};

/// Horizontal profile pieces of the switched region. For amplitude > 0 these
/// are the staircase steps below zero clipped to columns [0, amplitude]; for
/// amplitude < 0 the steps above the pulse row.
[[nodiscard]] std::vector<Piece> region_pieces(const InterfaceLine& line, double amplitude) {
    std::vector<Piece> pieces;
    const auto& v = line.vertices();
    for (std::size_t i = 1; i < v.size(); ++i) {
        const auto& a = v[i - 1];
        const auto& b = v[i];
        if (a.beta != b.beta) continue;  // vertical
        if (amplitude > 0.0) {
            const double lo = std::max(a.alpha, 0.0);
            const double hi = std::min(b.alpha, amplitude);
            if (hi > lo && a.beta < 0.0) pieces.push_back({lo, hi, a.beta});
        } else {
            if (a.beta > amplitude) pieces.push_back({a.alpha, b.alpha, a.beta});
        }
    }
    return pieces;
}

void require_resting(const InterfaceLine& line, const char* what) {
    if (!line.resting()) {
        throw std::invalid_argument(std::string(what) + ": interface must rest at zero input");
    }
}

}  // namespace

double SwitchedRegion::area() const {
    if (polygon.size() < 3) return 0.0;
    double twice = 0.0;
    for (std::size_t i = 0; i < polygon.size(); ++i) {
        const auto& p = polygon[i];
        const auto& q = polygon[(i + 1) % polygon.size()];
        twice += p.alpha * q.beta - q.alpha * p.beta;
    }
    return 0.5 * std::abs(twice);
}

SwitchedRegion switched_region(const InterfaceLine& line, double amplitude) {
    if (!line.bounds().contains(amplitude)) {
        throw InputRangeError(amplitude, 0, line.bounds().lo, line.bounds().hi);
    }
    require_resting(line, "switched_region");

    SwitchedRegion region;
    region.sign = amplitude >= 0.0 ? +1 : -1;
    if (amplitude == 0.0) return region;

    const auto pieces = region_pieces(line, amplitude);
    if (pieces.empty()) return region;

    auto& poly = region.polygon;
    if (amplitude > 0.0) {
        poly.push_back({pieces.front().x_lo, 0.0});
        poly.push_back({pieces.back().x_hi, 0.0});
    } else {
        poly.push_back({pieces.front().x_lo, amplitude});
        poly.push_back({pieces.back().x_hi, amplitude});
    }
    for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) {
        poly.push_back({it->x_hi, it->row});
        poly.push_back({it->x_lo, it->row});
    }
    // Degenerate edges (e.g. a leading zero-height step) collapse to dups.
    poly.erase(std::unique(poly.begin(), poly.end()), poly.end());
    if (!poly.empty() && poly.front() == poly.back()) poly.pop_back();
    if (poly.size() < 3) poly.clear();
    return region;
}

double switched_mass(const InterfaceLine& line, const WeightField& w, double amplitude) {
    if (!line.bounds().contains(amplitude)) {
        throw InputRangeError(amplitude, 0, line.bounds().lo, line.bounds().hi);
    }
    require_resting(line, "switched_mass");
    double mass = 0.0;
    for (const auto& p : region_pieces(line, amplitude)) {
        if (amplitude > 0.0) {
            mass += w.rect_mass(p.x_lo, p.x_hi, p.row, 0.0);
        } else {
            mass += w.rect_mass(p.x_lo, p.x_hi, amplitude, p.row);
        }
    }
    return mass;
}

RemnantCurve::RemnantCurve(InterfaceLine base, WeightField weight, Backend backend,
                           int grid_levels)
    : base_(std::move(base)),
      weight_(std::move(weight)),
      backend_(backend),
      grid_levels_(grid_levels),
      rho0_(output_from_interface(base_, weight_)) {
    require_resting(base_, "RemnantCurve");
    if (!(base_.bounds() == weight_.bounds())) {
        throw std::invalid_argument("RemnantCurve: interface and weight bounds mismatch");
    }
    if (backend_ == Backend::grid) {
        if (grid_levels_ < 1) {
            throw std::invalid_argument("RemnantCurve: grid backend needs grid_levels >= 1");
        }
        auto proto = std::make_shared<DiscretePreisach>(
            DiscretePreisach::discretize(weight_, grid_levels_));
        proto->load_interface(base_);
        grid_prototype_ = std::move(proto);
    }
}

double RemnantCurve::value(double amplitude) const {
    if (!base_.bounds().contains(amplitude)) {
        throw InputRangeError(amplitude, 0, base_.bounds().lo, base_.bounds().hi);
    }
    if (backend_ == Backend::grid) {
        DiscretePreisach op = *grid_prototype_;  // fresh copy per evaluation
        op.apply_value(amplitude);
        return op.apply_value(0.0);
    }
    const double mass = switched_mass(base_, weight_, amplitude);
    return rho0_ + (amplitude >= 0.0 ? 2.0 : -2.0) * mass;
}

double RemnantCurve::derivative(double amplitude) const {
    if (!base_.bounds().contains(amplitude)) {
        throw InputRangeError(amplitude, 0, base_.bounds().lo, base_.bounds().hi);
    }
    if (amplitude >= 0.0) {
        const double row = base_.profile_right(amplitude);
        return 2.0 * weight_.line_mass_alpha(amplitude, std::min(row, 0.0), 0.0);
    }
    const double col = base_.column_at_row_deep(amplitude);
    return 2.0 * weight_.line_mass_beta(amplitude, 0.0, std::max(col, 0.0));
}

std::vector<CurveSample> RemnantCurve::sample(std::span<const double> amplitudes) const {
    for (std::size_t i = 1; i < amplitudes.size(); ++i) {
        if (amplitudes[i] < amplitudes[i - 1]) {
            throw std::invalid_argument("sample: amplitude grid must be sorted ascending");
        }
    }
    std::vector<CurveSample> rows;
    rows.reserve(amplitudes.size());
    for (const double a : amplitudes) {
        rows.push_back({a, value(a), derivative(a)});
    }
    return rows;
}

void write_curve_csv(std::ostream& out, std::span<const CurveSample> rows) {
    out << std::setprecision(12);
    out << "A,rho,drho_dA\n";
    for (const auto& r : rows) {
        out << r.amplitude << ',' << r.value << ',' << r.slope << '\n';
    }
}

}  // namespace preisach
