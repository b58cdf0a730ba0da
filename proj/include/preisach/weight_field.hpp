#pragma once

// Nonnegative weight density over the Preisach half-plane, in three flavours:
// uniform density, isotropic Gaussian, and a gridded (piecewise constant) field.
// All region masses are exact up to 1D adaptive quadrature where the diagonal
// edge makes a Gaussian integral non-separable.

#include "preisach/plane.hpp"

#include <json.hpp>

#include <iosfwd>
#include <variant>
#include <vector>

namespace preisach {

class WeightField {
public:
    struct Uniform {
        double density;  // weight per unit area
    };

    struct Gaussian {
        double center_alpha;
        double center_beta;
        double sigma;
        double mass;  // total mass over the whole plane (not just the domain)
    };

    struct Grid {
        std::vector<double> values;  // row-major: values[j * cols + i], j = beta row
        int cols;
        int rows;
        double alpha_spacing;
        double beta_spacing;
    };

    static WeightField uniform(PlaneBounds bounds, double density);
    static WeightField gaussian(PlaneBounds bounds, double center_alpha, double center_beta,
                                double sigma, double mass);
    static WeightField grid(PlaneBounds bounds, std::vector<double> values, int cols, int rows,
                            double alpha_spacing, double beta_spacing);

    /// Loads a gridded field from CSV: a literal "alpha_spacing,beta_spacing"
    /// header, one line with the two spacings, then row-major value rows
    /// (first row is the beta cells starting at the lower bound).
    static WeightField grid_from_csv(std::istream& in, PlaneBounds bounds);
    void write_grid_csv(std::ostream& out) const;

    [[nodiscard]] const PlaneBounds& bounds() const noexcept { return bounds_; }

    /// Pointwise density; zero outside a gridded field's extent.
    [[nodiscard]] double eval(double alpha, double beta) const;

    /// Mass of an axis-aligned rectangle [a1,a2] x [b1,b2].
    [[nodiscard]] double rect_mass(double a1, double a2, double b1, double b2) const;

    /// Mass of a rectangle clipped to the admissible half-plane {beta <= alpha}.
    [[nodiscard]] double rect_mass_below_diagonal(double a1, double a2, double b1, double b2) const;

    /// Mass of the triangle {lo <= beta <= alpha <= s}.
    [[nodiscard]] double wedge_mass(double s) const;

    /// Line integral of w(alpha, .) over beta in [b1, b2].
    [[nodiscard]] double line_mass_alpha(double alpha, double b1, double b2) const;

    /// Line integral of w(., beta) over alpha in [a1, a2].
    [[nodiscard]] double line_mass_beta(double beta, double a1, double a2) const;

    /// Total mass over the admissible triangle.
    [[nodiscard]] double total_mass() const noexcept { return total_mass_; }

    /// Pointwise upper bound on the density (Lipschitz constants).
    [[nodiscard]] double sup_bound() const;

    /// True when the density is strictly positive over the whole domain.
    [[nodiscard]] bool strictly_positive() const;

    /// "uniform", "gaussian" or "grid".
    [[nodiscard]] const char* kind_name() const;

    [[nodiscard]] nlohmann::json to_json() const;
    static WeightField from_json(const nlohmann::json& j, PlaneBounds bounds);

private:
    WeightField(PlaneBounds bounds, std::variant<Uniform, Gaussian, Grid> kind);

    PlaneBounds bounds_;
    std::variant<Uniform, Gaussian, Grid> kind_;
    double total_mass_ = 0.0;
};

}  // namespace preisach
