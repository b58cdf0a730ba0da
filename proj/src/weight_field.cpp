#include "preisach/weight_field.hpp"

#include "preisach/errors.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

namespace preisach {

namespace {

constexpr double kSimpsonTol = 1e-13;

[[nodiscard]] double normal_cdf(double x, double center, double sigma) {
    return 0.5 * std::erfc(-(x - center) / (sigma * std::numbers::sqrt2));
}

[[nodiscard]] double normal_pdf(double x, double center, double sigma) {
    const double z = (x - center) / sigma;
    return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

/// Area of {(x, y) in [x1,x2] x [y1,y2] : y <= x}.
[[nodiscard]] double area_below_diagonal(double x1, double x2, double y1, double y2) {
    if (x2 <= x1 || y2 <= y1) return 0.0;
    if (y2 <= x1) return (x2 - x1) * (y2 - y1);
    if (y1 >= x2) return 0.0;
    double area = 0.0;
    const double strip_top = std::min(y2, x1);
    if (strip_top > y1) area += (x2 - x1) * (strip_top - y1);
    const double ylo = std::max(y1, x1);
    const double yhi = std::min(y2, x2);
    if (yhi > ylo) {
        const double wlo = x2 - ylo;
        const double whi = x2 - yhi;
        area += 0.5 * (wlo * wlo - whi * whi);
    }
    return area;
}

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_simpson_rec(const F& f, double a, double b, double fa, double fm, double fb,
                            double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    const double err = left + right - whole;
    if (depth <= 0 || std::abs(err) <= 15.0 * tol) {
        return left + right + err / 15.0;
    }
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol) {
    if (b <= a) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = simpson(a, b, fa, fm, fb);
    return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

void require_ordered(double& lo, double& hi) {
    if (hi < lo) std::swap(lo, hi);
}

}  // namespace

WeightField::WeightField(PlaneBounds bounds, std::variant<Uniform, Gaussian, Grid> kind)
    : bounds_(bounds), kind_(std::move(kind)) {
    total_mass_ = wedge_mass(bounds_.hi);
}

WeightField WeightField::uniform(PlaneBounds bounds, double density) {
    if (density < 0.0) throw std::invalid_argument("uniform weight density must be nonnegative");
    return WeightField(bounds, Uniform{density});
}

WeightField WeightField::gaussian(PlaneBounds bounds, double center_alpha, double center_beta,
                                  double sigma, double mass) {
    if (sigma <= 0.0) throw std::invalid_argument("gaussian weight sigma must be positive");
    if (mass < 0.0) throw std::invalid_argument("gaussian weight mass must be nonnegative");
    return WeightField(bounds, Gaussian{center_alpha, center_beta, sigma, mass});
}

WeightField WeightField::grid(PlaneBounds bounds, std::vector<double> values, int cols, int rows,
                              double alpha_spacing, double beta_spacing) {
    if (cols <= 0 || rows <= 0) throw std::invalid_argument("weight grid must be non-empty");
    if (alpha_spacing <= 0.0 || beta_spacing <= 0.0) {
        throw std::invalid_argument("weight grid spacing must be positive");
    }
    if (values.size() != static_cast<std::size_t>(cols) * static_cast<std::size_t>(rows)) {
        throw std::invalid_argument("weight grid values size does not match cols*rows");
    }
    for (double v : values) {
        if (!(v >= 0.0)) throw std::invalid_argument("weight grid values must be nonnegative");
    }
    return WeightField(bounds, Grid{std::move(values), cols, rows, alpha_spacing, beta_spacing});
}

double WeightField::eval(double alpha, double beta) const {
    if (const auto* u = std::get_if<Uniform>(&kind_)) return u->density;
    if (const auto* g = std::get_if<Gaussian>(&kind_)) {
        return g->mass * normal_pdf(alpha, g->center_alpha, g->sigma) *
               normal_pdf(beta, g->center_beta, g->sigma);
    }
    const auto& gr = std::get<Grid>(kind_);
    const int i = static_cast<int>(std::floor((alpha - bounds_.lo) / gr.alpha_spacing));
    const int j = static_cast<int>(std::floor((beta - bounds_.lo) / gr.beta_spacing));
    if (i < 0 || i >= gr.cols || j < 0 || j >= gr.rows) return 0.0;
    return gr.values[static_cast<std::size_t>(j) * gr.cols + i];
}

double WeightField::rect_mass(double a1, double a2, double b1, double b2) const {
    require_ordered(a1, a2);
    require_ordered(b1, b2);
    if (a2 <= a1 || b2 <= b1) return 0.0;
    if (const auto* u = std::get_if<Uniform>(&kind_)) {
        return u->density * (a2 - a1) * (b2 - b1);
    }
    if (const auto* g = std::get_if<Gaussian>(&kind_)) {
        return g->mass *
               (normal_cdf(a2, g->center_alpha, g->sigma) -
                normal_cdf(a1, g->center_alpha, g->sigma)) *
               (normal_cdf(b2, g->center_beta, g->sigma) -
                normal_cdf(b1, g->center_beta, g->sigma));
    }
    const auto& gr = std::get<Grid>(kind_);
    double m = 0.0;
    const int j0 = std::max(0, static_cast<int>(std::floor((b1 - bounds_.lo) / gr.beta_spacing)));
    const int j1 = std::min(gr.rows - 1,
                            static_cast<int>(std::floor((b2 - bounds_.lo) / gr.beta_spacing)));
    const int i0 = std::max(0, static_cast<int>(std::floor((a1 - bounds_.lo) / gr.alpha_spacing)));
    const int i1 = std::min(gr.cols - 1,
                            static_cast<int>(std::floor((a2 - bounds_.lo) / gr.alpha_spacing)));
    for (int j = j0; j <= j1; ++j) {
        const double cb1 = bounds_.lo + j * gr.beta_spacing;
        const double ob = std::min(b2, cb1 + gr.beta_spacing) - std::max(b1, cb1);
        if (ob <= 0.0) continue;
        for (int i = i0; i <= i1; ++i) {
            const double ca1 = bounds_.lo + i * gr.alpha_spacing;
            const double oa = std::min(a2, ca1 + gr.alpha_spacing) - std::max(a1, ca1);
            if (oa <= 0.0) continue;
            m += gr.values[static_cast<std::size_t>(j) * gr.cols + i] * oa * ob;
        }
    }
    return m;
}

double WeightField::rect_mass_below_diagonal(double a1, double a2, double b1, double b2) const {
    require_ordered(a1, a2);
    require_ordered(b1, b2);
    if (a2 <= a1 || b2 <= b1) return 0.0;
    if (b2 <= a1) return rect_mass(a1, a2, b1, b2);
    if (b1 >= a2) return 0.0;
    if (const auto* u = std::get_if<Uniform>(&kind_)) {
        return u->density * area_below_diagonal(a1, a2, b1, b2);
    }
    if (const auto* g = std::get_if<Gaussian>(&kind_)) {
        double m = 0.0;
        const double strip_top = std::min(b2, a1);
        if (strip_top > b1) m += rect_mass(a1, a2, b1, strip_top);
        const double ylo = std::max(b1, a1);
        const double yhi = std::min(b2, a2);
        if (yhi > ylo) {
            const double cax = g->center_alpha;
            const double cby = g->center_beta;
            const double s = g->sigma;
            const double phi_a2 = normal_cdf(a2, cax, s);
            const auto f = [&](double y) {
                return normal_pdf(y, cby, s) * (phi_a2 - normal_cdf(y, cax, s));
            };
            m += g->mass * adaptive_simpson(f, ylo, yhi, kSimpsonTol);
        }
        return m;
    }
    const auto& gr = std::get<Grid>(kind_);
    double m = 0.0;
    const int j0 = std::max(0, static_cast<int>(std::floor((b1 - bounds_.lo) / gr.beta_spacing)));
    const int j1 = std::min(gr.rows - 1,
                            static_cast<int>(std::floor((b2 - bounds_.lo) / gr.beta_spacing)));
    const int i0 = std::max(0, static_cast<int>(std::floor((a1 - bounds_.lo) / gr.alpha_spacing)));
    const int i1 = std::min(gr.cols - 1,
                            static_cast<int>(std::floor((a2 - bounds_.lo) / gr.alpha_spacing)));
    for (int j = j0; j <= j1; ++j) {
        const double cb1 = bounds_.lo + j * gr.beta_spacing;
        const double yl = std::max(b1, cb1);
        const double yh = std::min(b2, cb1 + gr.beta_spacing);
        if (yh <= yl) continue;
        for (int i = i0; i <= i1; ++i) {
            const double ca1 = bounds_.lo + i * gr.alpha_spacing;
            const double xl = std::max(a1, ca1);
            const double xh = std::min(a2, ca1 + gr.alpha_spacing);
            if (xh <= xl) continue;
            m += gr.values[static_cast<std::size_t>(j) * gr.cols + i] *
                 area_below_diagonal(xl, xh, yl, yh);
        }
    }
    return m;
}

double WeightField::wedge_mass(double s) const {
    return rect_mass_below_diagonal(bounds_.lo, s, bounds_.lo, s);
}

double WeightField::line_mass_alpha(double alpha, double b1, double b2) const {
    require_ordered(b1, b2);
    if (b2 <= b1) return 0.0;
    if (const auto* u = std::get_if<Uniform>(&kind_)) return u->density * (b2 - b1);
    if (const auto* g = std::get_if<Gaussian>(&kind_)) {
        return g->mass * normal_pdf(alpha, g->center_alpha, g->sigma) *
               (normal_cdf(b2, g->center_beta, g->sigma) -
                normal_cdf(b1, g->center_beta, g->sigma));
    }
    const auto& gr = std::get<Grid>(kind_);
    const int i = static_cast<int>(std::floor((alpha - bounds_.lo) / gr.alpha_spacing));
    if (i < 0 || i >= gr.cols) return 0.0;
    double m = 0.0;
    const int j0 = std::max(0, static_cast<int>(std::floor((b1 - bounds_.lo) / gr.beta_spacing)));
    const int j1 = std::min(gr.rows - 1,
                            static_cast<int>(std::floor((b2 - bounds_.lo) / gr.beta_spacing)));
    for (int j = j0; j <= j1; ++j) {
        const double cb1 = bounds_.lo + j * gr.beta_spacing;
        const double ob = std::min(b2, cb1 + gr.beta_spacing) - std::max(b1, cb1);
        if (ob > 0.0) m += gr.values[static_cast<std::size_t>(j) * gr.cols + i] * ob;
    }
    return m;
}

double WeightField::line_mass_beta(double beta, double a1, double a2) const {
    require_ordered(a1, a2);
    if (a2 <= a1) return 0.0;
    if (const auto* u = std::get_if<Uniform>(&kind_)) return u->density * (a2 - a1);
    if (const auto* g = std::get_if<Gaussian>(&kind_)) {
        return g->mass * normal_pdf(beta, g->center_beta, g->sigma) *
               (normal_cdf(a2, g->center_alpha, g->sigma) -
                normal_cdf(a1, g->center_alpha, g->sigma));
    }
    const auto& gr = std::get<Grid>(kind_);
    const int j = static_cast<int>(std::floor((beta - bounds_.lo) / gr.beta_spacing));
    if (j < 0 || j >= gr.rows) return 0.0;
    double m = 0.0;
    const int i0 = std::max(0, static_cast<int>(std::floor((a1 - bounds_.lo) / gr.alpha_spacing)));
    const int i1 = std::min(gr.cols - 1,
                            static_cast<int>(std::floor((a2 - bounds_.lo) / gr.alpha_spacing)));
    for (int i = i0; i <= i1; ++i) {
        const double ca1 = bounds_.lo + i * gr.alpha_spacing;
        const double oa = std::min(a2, ca1 + gr.alpha_spacing) - std::max(a1, ca1);
        if (oa > 0.0) m += gr.values[static_cast<std::size_t>(j) * gr.cols + i] * oa;
    }
    return m;
}

double WeightField::sup_bound() const {
    if (const auto* u = std::get_if<Uniform>(&kind_)) return u->density;
    if (const auto* g = std::get_if<Gaussian>(&kind_)) {
        return g->mass / (2.0 * std::numbers::pi * g->sigma * g->sigma);
    }
    const auto& gr = std::get<Grid>(kind_);
    return *std::max_element(gr.values.begin(), gr.values.end());
}

bool WeightField::strictly_positive() const {
    if (const auto* u = std::get_if<Uniform>(&kind_)) return u->density > 0.0;
    if (const auto* g = std::get_if<Gaussian>(&kind_)) return g->mass > 0.0;
    const auto& gr = std::get<Grid>(kind_);
    const bool covers = bounds_.lo + gr.cols * gr.alpha_spacing >= bounds_.hi - 1e-9 &&
                        bounds_.lo + gr.rows * gr.beta_spacing >= bounds_.hi - 1e-9;
    if (!covers) return false;
    return std::all_of(gr.values.begin(), gr.values.end(), [](double v) { return v > 0.0; });
}

const char* WeightField::kind_name() const {
    if (std::holds_alternative<Uniform>(kind_)) return "uniform";
    if (std::holds_alternative<Gaussian>(kind_)) return "gaussian";
    return "grid";
}

nlohmann::json WeightField::to_json() const {
    nlohmann::json j;
    if (const auto* u = std::get_if<Uniform>(&kind_)) {
        j["kind"] = "uniform";
        j["density"] = u->density;
        return j;
    }
    if (const auto* g = std::get_if<Gaussian>(&kind_)) {
        j["kind"] = "gaussian";
        j["center"] = {g->center_alpha, g->center_beta};
        j["sigma"] = g->sigma;
        j["mass"] = g->mass;
        return j;
    }
    const auto& gr = std::get<Grid>(kind_);
    j["kind"] = "grid";
    j["alpha_spacing"] = gr.alpha_spacing;
    j["beta_spacing"] = gr.beta_spacing;
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < gr.rows; ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < gr.cols; ++c) {
            row.push_back(gr.values[static_cast<std::size_t>(r) * gr.cols + c]);
        }
        rows.push_back(std::move(row));
    }
    j["values"] = std::move(rows);
    return j;
}

WeightField WeightField::from_json(const nlohmann::json& j, PlaneBounds bounds) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "uniform") {
        if (j.contains("total_mass")) {
            const double area = bounds.span() * bounds.span() / 2.0;
            return uniform(bounds, j.at("total_mass").get<double>() / area);
        }
        return uniform(bounds, j.at("density").get<double>());
    }
    if (kind == "gaussian") {
        const auto& c = j.at("center");
        return gaussian(bounds, c.at(0).get<double>(), c.at(1).get<double>(),
                        j.at("sigma").get<double>(), j.at("mass").get<double>());
    }
    if (kind == "grid") {
        const auto& rows = j.at("values");
        const int nrows = static_cast<int>(rows.size());
        if (nrows == 0) throw ConfigError("grid weight: empty values");
        const int ncols = static_cast<int>(rows.at(0).size());
        std::vector<double> values;
        values.reserve(static_cast<std::size_t>(nrows) * ncols);
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != ncols) {
                throw ConfigError("grid weight: ragged value rows");
            }
            for (const auto& v : row) values.push_back(v.get<double>());
        }
        return grid(bounds, std::move(values), ncols, nrows, j.at("alpha_spacing").get<double>(),
                    j.at("beta_spacing").get<double>());
    }
    throw ConfigError("unknown weight kind: " + kind);
}

WeightField WeightField::grid_from_csv(std::istream& in, PlaneBounds bounds) {
    std::string line;
    if (!std::getline(in, line) || line.find("alpha_spacing") == std::string::npos) {
        throw ConfigError("weight CSV: missing 'alpha_spacing,beta_spacing' header");
    }
    if (!std::getline(in, line)) throw ConfigError("weight CSV: missing spacing row");
    double sa = 0.0;
    double sb = 0.0;
    {
        std::istringstream ss(line);
        char comma = 0;
        if (!(ss >> sa >> comma >> sb) || comma != ',') {
            throw ConfigError("weight CSV: malformed spacing row '" + line + "'");
        }
    }
    std::vector<double> values;
    int cols = -1;
    int rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string cell;
        int c = 0;
        while (std::getline(ss, cell, ',')) {
            values.push_back(std::stod(cell));
            ++c;
        }
        if (cols < 0) cols = c;
        if (c != cols) throw ConfigError("weight CSV: ragged row " + std::to_string(rows));
        ++rows;
    }
    if (rows == 0) throw ConfigError("weight CSV: no value rows");
    return grid(bounds, std::move(values), cols, rows, sa, sb);
}

void WeightField::write_grid_csv(std::ostream& out) const {
    const auto* gr = std::get_if<Grid>(&kind_);
    if (gr == nullptr) throw std::logic_error("write_grid_csv: not a gridded weight field");
    out << "alpha_spacing,beta_spacing\n";
    out << gr->alpha_spacing << ',' << gr->beta_spacing << '\n';
    for (int j = 0; j < gr->rows; ++j) {
        for (int i = 0; i < gr->cols; ++i) {
            if (i != 0) out << ',';
            out << gr->values[static_cast<std::size_t>(j) * gr->cols + i];
        }
        out << '\n';
    }
}

}  // namespace preisach
