#pragma once

// Preisach plane geometry: input bounds and threshold points.

#include <stdexcept>
#include <string>

namespace preisach {

/// Closed input range [lo, hi]. Relay thresholds live in the triangle
/// {(alpha, beta) : lo <= beta <= alpha <= hi}.
struct PlaneBounds {
    double lo;
    double hi;

    PlaneBounds(double lo_, double hi_) : lo(lo_), hi(hi_) {
        if (!(lo < hi)) {
            throw std::invalid_argument("PlaneBounds: lo must be < hi (got [" +
                                        std::to_string(lo_) + ", " + std::to_string(hi_) + "])");
        }
    }

    [[nodiscard]] double span() const noexcept { return hi - lo; }
    [[nodiscard]] bool contains(double u) const noexcept { return u >= lo && u <= hi; }

    friend bool operator==(const PlaneBounds&, const PlaneBounds&) = default;
};

/// A point (alpha, beta) in the threshold plane.
struct PlanePoint {
    double alpha;
    double beta;

    friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
};

}  // namespace preisach
