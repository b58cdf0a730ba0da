#pragma once

// The staircase memory interface of a Preisach operator: a monotone polyline
// separating relays at -1 (above/right) from relays at +1 (below/left).
//
// Vertices run from a point on the diagonal (s, s) rightward/downward in
// strictly alternating horizontal and vertical segments, ending at the right
// boundary alpha = hi. A resting interface (input at zero) has s = 0.

#include "preisach/plane.hpp"
#include "preisach/weight_field.hpp"

#include <json.hpp>

#include <vector>

namespace preisach {

class InterfaceLine {
public:
    /// Validates and canonicalizes a corner polyline: merges collinear and
    /// zero-length segments, extends the last horizontal to alpha = hi, trims
    /// a redundant trailing vertical on the right boundary.
    InterfaceLine(PlaneBounds bounds, std::vector<PlanePoint> corners);

    /// Interface after one saturating reset pulse of amplitude -polarity*|hi|
    /// from any state: polarity +1 resets with the negative pulse.
    static InterfaceLine post_reset(PlaneBounds bounds, int polarity);
    /// Every relay at -1 (empty +1 region).
    static InterfaceLine all_negative(PlaneBounds bounds);
    /// Every relay at +1 (empty -1 region).
    static InterfaceLine all_positive(PlaneBounds bounds);

    [[nodiscard]] const PlaneBounds& bounds() const noexcept { return bounds_; }
    [[nodiscard]] const std::vector<PlanePoint>& vertices() const noexcept { return v_; }

    /// Abscissa of the diagonal start point.
    [[nodiscard]] double diagonal_start() const noexcept { return v_.front().alpha; }
    [[nodiscard]] bool resting() const noexcept { return diagonal_start() == 0.0; }

    /// True when (alpha, beta) lies on the +1 side.
    [[nodiscard]] bool below(double alpha, double beta) const;

    /// Staircase height just right of the given column (the row of the
    /// horizontal segment active at alpha+). Defined for alpha in [s, hi].
    [[nodiscard]] double profile_right(double alpha) const;

    /// Staircase column at the given row, taking the far (deep) end when the
    /// row coincides with a horizontal segment. Defined for beta <= s.
    [[nodiscard]] double column_at_row_deep(double beta) const;

    /// Memory state after one full pulse 0 -> amplitude -> 0 (the wiping-out
    /// update). Requires a resting interface.
    [[nodiscard]] InterfaceLine wipe(double amplitude) const;

    /// Mass of the +1 region under the given weight field.
    [[nodiscard]] double positive_mass(const WeightField& w) const;

    [[nodiscard]] nlohmann::json to_json() const;
    static InterfaceLine from_json(const nlohmann::json& j);

    friend bool operator==(const InterfaceLine& a, const InterfaceLine& b) {
        return a.bounds_ == b.bounds_ && a.v_ == b.v_;
    }

private:
    void normalize_and_validate();

    PlaneBounds bounds_;
    std::vector<PlanePoint> v_;
};

/// Weighted relay-state sum for the interface: (+1 mass) - (-1 mass).
[[nodiscard]] double output_from_interface(const InterfaceLine& line, const WeightField& w);

}  // namespace preisach
