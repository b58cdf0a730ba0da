#pragma once

// The remnant curve: pulse amplitude -> leftover output once the input is back
// at zero, for a fixed starting interface. The curve value is the base remnant
// plus twice the weight mass of the switched region (relays flip by 2).

#include "preisach/discrete.hpp"
#include "preisach/interface_line.hpp"
#include "preisach/weight_field.hpp"

#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

namespace preisach {

/// Relays that change state under one pulse from rest: the region enclosed
/// between the interface and its wiped successor.
struct SwitchedRegion {
    std::vector<PlanePoint> polygon;  // closed rectilinear boundary, empty if no switch
    int sign = +1;                    // +1: relays flip -1 -> +1; -1: the reverse

    [[nodiscard]] bool empty() const noexcept { return polygon.empty(); }
    [[nodiscard]] double area() const;
};

/// Region switched by a pulse of the given amplitude from a resting interface.
[[nodiscard]] SwitchedRegion switched_region(const InterfaceLine& line, double amplitude);

/// Weight mass of that region.
[[nodiscard]] double switched_mass(const InterfaceLine& line, const WeightField& w,
                                   double amplitude);

struct CurveSample {
    double amplitude;
    double value;
    double slope;
};

class RemnantCurve {
public:
    enum class Backend { analytic, grid };

    /// Analytic backend integrates the switched region exactly; the grid
    /// backend replays the pulse on a fresh discretized operator per
    /// evaluation. Slopes always come from the analytic integrals.
    RemnantCurve(InterfaceLine base, WeightField weight, Backend backend = Backend::analytic,
                 int grid_levels = 0);

    [[nodiscard]] const InterfaceLine& base_interface() const noexcept { return base_; }
    [[nodiscard]] const WeightField& weight() const noexcept { return weight_; }
    [[nodiscard]] Backend backend() const noexcept { return backend_; }

    /// Remnant at zero amplitude (the base interface's own output).
    [[nodiscard]] double value_at_zero() const noexcept { return rho0_; }

    [[nodiscard]] double value(double amplitude) const;

    /// One-sided derivative taken on the side where the switched region grows;
    /// at a vertex abscissa this is the next-column (next-row) integral.
    [[nodiscard]] double derivative(double amplitude) const;

    /// Rows (A, rho(A), rho'(A)) for a sorted amplitude grid.
    [[nodiscard]] std::vector<CurveSample> sample(std::span<const double> amplitudes) const;

private:
    InterfaceLine base_;
    WeightField weight_;
    Backend backend_;
    int grid_levels_;
    double rho0_;
    std::shared_ptr<const DiscretePreisach> grid_prototype_;  // cloned per evaluation
};

/// CSV with header "A,rho,drho_dA".
void write_curve_csv(std::ostream& out, std::span<const CurveSample> rows);

}  // namespace preisach
