#pragma once

// Shared test helpers: independent oracles and randomized-case generators.
// Everything here is deliberately simple and separate from the library's
// sweep/integration code paths so it can serve as ground truth.

#include "preisach/discrete.hpp"
#include "preisach/interface_line.hpp"
#include "preisach/rng.hpp"
#include "preisach/weight_field.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <span>
#include <vector>

namespace preisach::test {

/// Closed-form remnant of the uniform unit-mass benchmark setup after a
/// negative reset and one pulse of amplitude A >= 0 on [-B, B].
inline double uniform_remnant(double amplitude, double half_span = 400.0) {
    return amplitude / half_span - 0.5;
}

/// Brute-force relay trajectory: every relay stepped one sample at a time via
/// relay_update, no sweep shortcuts. States start at -1.
inline double brute_force_output(int levels, const PlaneBounds& bounds, double relay_weight,
                                 std::span<const double> samples) {
    const double h = bounds.span() / levels;
    const auto level = [&](int i) { return bounds.lo + (i + 0.5) * h; };
    double out = 0.0;
    for (int b = 0; b < levels; ++b) {
        for (int a = b; a < levels; ++a) {
            int state = -1;
            for (const double u : samples) {
                state = relay_update(state, u, level(a), level(b));
            }
            out += relay_weight * state;
        }
    }
    return out;
}

/// Random resting interface built by folding random alternating pulses, so it
/// is valid by construction and exercises the wipe path.
inline InterfaceLine random_resting_interface(std::mt19937_64& eng, const PlaneBounds& bounds,
                                              int max_pulses = 6) {
    InterfaceLine line = InterfaceLine::post_reset(bounds, uniform01(eng) < 0.5 ? +1 : -1);
    const int pulses = 1 + static_cast<int>(uniform01(eng) * max_pulses);
    double hi = std::min(-bounds.lo, bounds.hi) * 0.98;
    double lo = -hi;
    int sign = uniform01(eng) < 0.5 ? +1 : -1;
    for (int k = 0; k < pulses; ++k) {
        const double magnitude = (sign > 0 ? hi : -lo) * (0.25 + 0.7 * uniform01(eng));
        const double amplitude = sign * magnitude;
        line = line.wipe(amplitude);
        if (sign > 0) {
            hi = magnitude * 0.9;
        } else {
            lo = -magnitude * 0.9;
        }
        sign = -sign;
        if (hi < bounds.span() * 0.01 || -lo < bounds.span() * 0.01) break;
    }
    return line;
}

/// Random strictly positive gridded weight field covering the whole domain.
inline WeightField random_grid_weight(std::mt19937_64& eng, const PlaneBounds& bounds,
                                      int max_cells = 12) {
    const int cells = 2 + static_cast<int>(uniform01(eng) * (max_cells - 2));
    const double spacing = bounds.span() / cells;
    std::vector<double> values(static_cast<std::size_t>(cells) * cells);
    for (auto& v : values) v = 0.05 + 1.95 * uniform01(eng);
    return WeightField::grid(bounds, std::move(values), cells, cells, spacing, spacing);
}

/// Random strictly positive Gaussian weight field.
inline WeightField random_gaussian_weight(std::mt19937_64& eng, const PlaneBounds& bounds) {
    const double span = bounds.span();
    const double ca = uniform_in(eng, bounds.lo + 0.2 * span, bounds.hi - 0.2 * span);
    const double cb = uniform_in(eng, bounds.lo + 0.1 * span, std::min(ca, bounds.hi - 0.3 * span));
    const double sigma = uniform_in(eng, span / 8.0, span / 3.0);
    const double mass = uniform_in(eng, 0.5, 2.0);
    return WeightField::gaussian(bounds, ca, cb, sigma, mass);
}

/// Random extrema-complete in-bounds sample sequence.
inline std::vector<double> random_samples(std::mt19937_64& eng, const PlaneBounds& bounds,
                                          int max_len = 10) {
    const int len = 1 + static_cast<int>(uniform01(eng) * max_len);
    std::vector<double> samples;
    samples.reserve(static_cast<std::size_t>(len));
    for (int i = 0; i < len; ++i) {
        samples.push_back(uniform_in(eng, bounds.lo, bounds.hi));
    }
    return samples;
}

/// Max profile distance between two interfaces, sampled at columns at least
/// `guard` away from either line's corner columns (staircase jumps make the
/// profile distance meaningless at corners).
inline double profile_distance(const InterfaceLine& a, const InterfaceLine& b, int columns,
                               double guard) {
    const PlaneBounds& bounds = a.bounds();
    const double s = std::max(a.diagonal_start(), b.diagonal_start());
    double worst = 0.0;
    for (int i = 0; i <= columns; ++i) {
        const double x = s + (bounds.hi - s) * i / columns;
        bool near_corner = false;
        for (const auto& p : a.vertices()) {
            if (std::abs(p.alpha - x) < guard) near_corner = true;
        }
        for (const auto& p : b.vertices()) {
            if (std::abs(p.alpha - x) < guard) near_corner = true;
        }
        if (near_corner || x < a.diagonal_start() || x < b.diagonal_start()) continue;
        worst = std::max(worst, std::abs(a.profile_right(x) - b.profile_right(x)));
    }
    return worst;
}

}  // namespace preisach::test
