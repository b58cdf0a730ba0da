#pragma once

// Discretized Preisach operator: a triangular grid of +/-1 relays with
// per-relay weights. This is the brute-force measurement oracle; the exact
// interface representation lives in interface_line.hpp.
//
// Thresholds are cell-centered: level(i) = lo + (i + 1/2) * h with
// h = span / levels, so a pulse to either bound switches every relay and the
// extracted interface lands on cell edges lo + k * h.

#include "preisach/errors.hpp"
#include "preisach/interface_line.hpp"
#include "preisach/plane.hpp"
#include "preisach/weight_field.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace preisach {

/// One relay step: +1 above alpha, -1 below beta, held in between.
/// Throws MalformedRelayError when alpha < beta.
[[nodiscard]] int relay_update(int state, double input, double alpha, double beta);

class DiscretePreisach {
public:
    /// Equal per-relay weight, all relays at -1, input resting at zero.
    DiscretePreisach(int levels, PlaneBounds bounds, double relay_weight);

    /// Per-relay weights from cell integrals of a continuum field (diagonal
    /// cells get the half-cell triangle integral).
    static DiscretePreisach discretize(const WeightField& w, int levels);

    [[nodiscard]] int levels() const noexcept { return n_; }
    [[nodiscard]] std::size_t relay_count() const noexcept { return states_.size(); }
    [[nodiscard]] const PlaneBounds& bounds() const noexcept { return bounds_; }
    [[nodiscard]] double spacing() const noexcept { return h_; }
    [[nodiscard]] double level(int i) const noexcept { return bounds_.lo + (i + 0.5) * h_; }
    [[nodiscard]] double edge(int i) const noexcept { return bounds_.lo + i * h_; }
    [[nodiscard]] double current_input() const noexcept { return input_; }

    /// Relay (alpha index a, beta index b), a >= b.
    [[nodiscard]] int relay_state(int a, int b) const { return states_[index(a, b)]; }
    [[nodiscard]] double relay_weight(int a, int b) const { return weights_[index(a, b)]; }
    void set_relay_state(int a, int b, int state) { states_[index(a, b)] = to_state(state); }

    [[nodiscard]] double total_weight_mass() const;
    [[nodiscard]] double max_column_mass() const;
    [[nodiscard]] double output() const;

    /// Feeds samples in order; each consecutive pair is a monotone ramp and
    /// every relay steps per relay_update at each sample. The first sample is
    /// the initial input evaluation (relays it forces switch immediately), so
    /// re-sampling an input may refine ramps between samples but must keep the
    /// first sample first. Returns the output after every sample.
    /// Out-of-range samples throw InputRangeError naming the offending index.
    std::vector<double> apply_input(std::span<const double> samples);

    /// Single monotone ramp from the current input; returns the new output.
    double apply_value(double u);

    void set_all(int state);

    /// Loads relay states from an interface line; input rests at zero.
    void load_interface(const InterfaceLine& line);

    /// Extracts the +1/-1 boundary as an interface line quantized to cell
    /// edges. Throws RepresentabilityError when the partition is not a
    /// staircase.
    [[nodiscard]] InterfaceLine interface() const;

private:
    [[nodiscard]] std::size_t index(int a, int b) const;
    static std::int8_t to_state(int s);
    void ramp_to(double u);

    int n_;
    PlaneBounds bounds_;
    double h_;
    std::vector<std::size_t> row_offset_;  // row b -> index of relay (a=b, b)
    std::vector<std::int8_t> states_;
    std::vector<double> weights_;
    double input_ = 0.0;
};

}  // namespace preisach
