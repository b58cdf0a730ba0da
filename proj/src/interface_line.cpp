#include "preisach/interface_line.hpp"

#include "preisach/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace preisach {

namespace {

[[nodiscard]] std::string point_str(const PlanePoint& p) {
    return "(" + std::to_string(p.alpha) + ", " + std::to_string(p.beta) + ")";
}

}  // namespace

InterfaceLine::InterfaceLine(PlaneBounds bounds, std::vector<PlanePoint> corners)
    : bounds_(bounds), v_(std::move(corners)) {
    normalize_and_validate();
}

void InterfaceLine::normalize_and_validate() {
    if (v_.empty()) throw std::invalid_argument("interface: empty vertex list");

    // Drop exact duplicates, then merge collinear runs.
    std::vector<PlanePoint> clean;
    clean.reserve(v_.size() + 2);
    for (const auto& p : v_) {
        if (!clean.empty() && clean.back() == p) continue;
        clean.push_back(p);
    }
    // Monotonicity must hold before collinear runs collapse, or a backward
    // step could merge away silently.
    for (std::size_t i = 1; i < clean.size(); ++i) {
        const auto& a = clean[i - 1];
        const auto& b = clean[i];
        const bool horizontal = a.beta == b.beta && b.alpha > a.alpha;
        const bool vertical = a.alpha == b.alpha && b.beta < a.beta;
        if (!horizontal && !vertical) {
            throw std::invalid_argument("interface: segment " + point_str(a) + " -> " +
                                        point_str(b) + " is not a monotone staircase step");
        }
    }
    std::vector<PlanePoint> merged;
    merged.reserve(clean.size() + 2);
    for (const auto& p : clean) {
        while (merged.size() >= 2) {
            const auto& a = merged[merged.size() - 2];
            const auto& b = merged.back();
            const bool same_col = a.alpha == b.alpha && b.alpha == p.alpha;
            const bool same_row = a.beta == b.beta && b.beta == p.beta;
            if (same_col || same_row) {
                merged.pop_back();
            } else {
                break;
            }
        }
        merged.push_back(p);
    }
    v_ = std::move(merged);

    // A lone vertex on the right boundary means everything is +1.
    if (v_.size() == 1 && v_.front().alpha == bounds_.hi) {
        v_.push_back({bounds_.hi, bounds_.lo});
    }
    // Extend the final horizontal run out to the right boundary.
    if (v_.back().alpha < bounds_.hi) {
        v_.push_back({bounds_.hi, v_.back().beta});
    }
    // A trailing vertical on the right boundary separates nothing.
    while (v_.size() >= 3 && v_[v_.size() - 1].alpha == bounds_.hi &&
           v_[v_.size() - 2].alpha == bounds_.hi) {
        v_.pop_back();
    }

    if (v_.size() < 2) throw std::invalid_argument("interface: degenerate vertex list");
    if (v_.front().alpha != v_.front().beta) {
        throw std::invalid_argument("interface: first vertex " + point_str(v_.front()) +
                                    " must sit on the diagonal");
    }
    for (const auto& p : v_) {
        if (!bounds_.contains(p.alpha) || !bounds_.contains(p.beta)) {
            throw std::invalid_argument("interface: vertex " + point_str(p) + " outside bounds");
        }
        if (p.beta > p.alpha) {
            throw std::invalid_argument("interface: vertex " + point_str(p) +
                                        " above the diagonal");
        }
    }
    for (std::size_t i = 1; i < v_.size(); ++i) {
        const auto& a = v_[i - 1];
        const auto& b = v_[i];
        const bool horizontal = a.beta == b.beta && b.alpha > a.alpha;
        const bool vertical = a.alpha == b.alpha && b.beta < a.beta;
        if (!horizontal && !vertical) {
            throw std::invalid_argument("interface: segment " + point_str(a) + " -> " +
                                        point_str(b) + " is not a monotone staircase step");
        }
    }
}

InterfaceLine InterfaceLine::post_reset(PlaneBounds bounds, int polarity) {
    if (polarity != 1 && polarity != -1) {
        throw std::invalid_argument("post_reset: polarity must be +1 or -1");
    }
    if (!bounds.contains(0.0)) {
        throw std::invalid_argument("post_reset: bounds must contain zero");
    }
    if (polarity == 1) {
        return InterfaceLine(bounds, {{0.0, 0.0}, {0.0, bounds.lo}, {bounds.hi, bounds.lo}});
    }
    return InterfaceLine(bounds, {{0.0, 0.0}, {bounds.hi, 0.0}});
}

InterfaceLine InterfaceLine::all_negative(PlaneBounds bounds) {
    return InterfaceLine(bounds, {{bounds.lo, bounds.lo}, {bounds.hi, bounds.lo}});
}

InterfaceLine InterfaceLine::all_positive(PlaneBounds bounds) {
    return InterfaceLine(bounds, {{bounds.hi, bounds.hi}, {bounds.hi, bounds.lo}});
}

double InterfaceLine::profile_right(double alpha) const {
    const double s = diagonal_start();
    if (alpha < s || alpha > bounds_.hi) {
        throw std::invalid_argument("profile_right: column " + std::to_string(alpha) +
                                    " outside [" + std::to_string(s) + ", " +
                                    std::to_string(bounds_.hi) + "]");
    }
    double last_row = v_.back().beta;
    for (std::size_t i = 1; i < v_.size(); ++i) {
        const auto& a = v_[i - 1];
        const auto& b = v_[i];
        if (a.beta != b.beta) continue;  // vertical
        if (alpha >= a.alpha && alpha < b.alpha) return a.beta;
        last_row = b.beta;
    }
    return last_row;  // alpha == hi, or a vertical-only line
}

double InterfaceLine::column_at_row_deep(double beta) const {
    const double s = diagonal_start();
    if (beta > s || beta < bounds_.lo) {
        throw std::invalid_argument("column_at_row_deep: row " + std::to_string(beta) +
                                    " outside [" + std::to_string(bounds_.lo) + ", " +
                                    std::to_string(s) + "]");
    }
    for (std::size_t i = 1; i < v_.size(); ++i) {
        const auto& a = v_[i - 1];
        const auto& b = v_[i];
        if (a.alpha != b.alpha) continue;  // horizontal
        if (beta <= a.beta && beta > b.beta) return a.alpha;
    }
    // Deeper than every vertical: the far end of the bottom run.
    return v_.back().alpha;
}

bool InterfaceLine::below(double alpha, double beta) const {
    const double s = diagonal_start();
    if (alpha < s) return true;
    if (alpha > bounds_.hi) return false;
    return beta < profile_right(alpha);
}

InterfaceLine InterfaceLine::wipe(double amplitude) const {
    if (!bounds_.contains(amplitude)) {
        throw InputRangeError(amplitude, 0, bounds_.lo, bounds_.hi);
    }
    if (!resting()) {
        throw std::invalid_argument("wipe: interface must rest at zero input");
    }
    if (amplitude == 0.0) return *this;

    std::vector<PlanePoint> nv;
    nv.reserve(v_.size() + 3);
    if (amplitude > 0.0) {
        const double row = profile_right(amplitude);
        nv.push_back({0.0, 0.0});
        nv.push_back({amplitude, 0.0});
        nv.push_back({amplitude, row});
        for (const auto& p : v_) {
            if (p.alpha > amplitude) nv.push_back(p);
        }
    } else {
        const double col = column_at_row_deep(amplitude);
        nv.push_back({0.0, 0.0});
        nv.push_back({0.0, amplitude});
        nv.push_back({col, amplitude});
        for (const auto& p : v_) {
            if (p.beta < amplitude) nv.push_back(p);
        }
    }
    return InterfaceLine(bounds_, std::move(nv));
}

double InterfaceLine::positive_mass(const WeightField& w) const {
    double mass = w.wedge_mass(diagonal_start());
    for (std::size_t i = 1; i < v_.size(); ++i) {
        const auto& a = v_[i - 1];
        const auto& b = v_[i];
        if (a.beta != b.beta) continue;  // vertical
        mass += w.rect_mass(a.alpha, b.alpha, bounds_.lo, a.beta);
    }
    return mass;
}

double output_from_interface(const InterfaceLine& line, const WeightField& w) {
    const double plus = line.positive_mass(w);
    return 2.0 * plus - w.total_mass();
}

nlohmann::json InterfaceLine::to_json() const {
    nlohmann::json j;
    j["bounds"] = {bounds_.lo, bounds_.hi};
    nlohmann::json verts = nlohmann::json::array();
    for (const auto& p : v_) verts.push_back({p.alpha, p.beta});
    j["vertices"] = std::move(verts);
    return j;
}

InterfaceLine InterfaceLine::from_json(const nlohmann::json& j) {
    const auto& b = j.at("bounds");
    PlaneBounds bounds(b.at(0).get<double>(), b.at(1).get<double>());
    std::vector<PlanePoint> verts;
    for (const auto& p : j.at("vertices")) {
        verts.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    }
    return InterfaceLine(bounds, std::move(verts));
}

}  // namespace preisach
