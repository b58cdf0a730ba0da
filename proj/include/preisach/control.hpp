#pragma once

// Iterative remnant control: drive the operator's remnant to a target value by
// updating the control pulse amplitude between reset pulses. Three update
// laws: proportional (fixed gain), Newton (analytic slope), secant (measured
// slope).

#include "preisach/discrete.hpp"
#include "preisach/weight_field.hpp"

#include <iosfwd>
#include <optional>
#include <variant>
#include <vector>

namespace preisach {

struct Proportional {
    double gain;  // > 0
};

struct Newton {};

struct Secant {
    double seed0;  // first two probe amplitudes (magnitudes)
    double seed1;
};

using UpdateLaw = std::variant<Proportional, Newton, Secant>;

struct ControllerConfig {
    UpdateLaw law;
    double target = 0.0;             // desired remnant y_d
    double max_amplitude = 0.0;      // A_max > 0
    double tolerance = 0.005;        // remnant units
    int max_iterations = 50;
    double initial_amplitude = 0.0;  // first pulse magnitude (proportional / Newton)
};

struct IterationRecord {
    int iteration;                 // k, 0-based
    double amplitude;              // signed A_k actually applied
    double output;                 // measured y_k
    double error;                  // e_k = y_k - target
    std::optional<double> slope;   // slope used to produce this amplitude
    bool clamped = false;
};

struct IterationTrace {
    std::vector<IterationRecord> rows;
    bool converged = false;
    int polarity = +1;

    [[nodiscard]] int iterations() const noexcept { return static_cast<int>(rows.size()); }
    [[nodiscard]] double final_error() const { return rows.empty() ? 0.0 : rows.back().error; }
    [[nodiscard]] double final_amplitude() const {
        return rows.empty() ? 0.0 : rows.back().amplitude;
    }
};

/// Picks the reset sign by probing one reset pulse: +1 when the target sits
/// above the post-reset remnant (negative resets, positive control pulses).
/// Throws InfeasibleTargetError when |target| exceeds the total weight mass.
/// The trial reset mutates the operator.
[[nodiscard]] int choose_polarity(DiscretePreisach& op, double target, double max_amplitude);

/// A_{k+1} = A_k - gain * e_k.
[[nodiscard]] double step_proportional(double amplitude, double error, double gain);

/// A_{k+1} = A_k - e_k / slope. Throws DegenerateSlopeError on zero slope.
[[nodiscard]] double step_newton(double amplitude, double error, double slope);

/// A_{k+1} = A_k - e_k * (A_k - A_prev) / (y_k - y_prev).
/// Throws StalledSecantError when the measured slope is undefined.
[[nodiscard]] double step_secant(double amplitude, double amplitude_prev, double output,
                                 double output_prev, double error);

struct ClampResult {
    double value;
    bool clamped;
};

[[nodiscard]] ClampResult clamp_amplitude(double proposal, double lo, double hi);

/// Runs the full reset-interleaved session: reset, pulse A_k, measure, update,
/// until |e_k| <= tolerance or max_iterations. Measurements come from the grid
/// operator; Newton slopes come from the analytic curve over `weight` with the
/// post-reset base interface. Step errors propagate; a step clamped to the
/// same boundary three times in a row aborts as infeasible.
IterationTrace run_controller(DiscretePreisach& op, const WeightField& weight,
                              const ControllerConfig& cfg, double period);

/// CSV with header "k,A_k,y_k,e_k,slope,clamped".
void write_trace_csv(std::ostream& out, const IterationTrace& trace);

}  // namespace preisach
