#include "preisach/control.hpp"

#include "preisach/errors.hpp"
#include "preisach/interface_line.hpp"
#include "preisach/remnant.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace preisach {

int choose_polarity(DiscretePreisach& op, double target, double max_amplitude) {
    const double mass = op.total_weight_mass();
    if (std::abs(target) > mass) {
        throw InfeasibleTargetError("target remnant " + std::to_string(target) +
                                    " outside the saturation range [-" + std::to_string(mass) +
                                    ", " + std::to_string(mass) + "]");
    }
    const std::array<double, 2> trial{-max_amplitude, 0.0};
    op.apply_input(trial);
    return target > op.output() ? +1 : -1;
}

double step_proportional(double amplitude, double error, double gain) {
    if (!(gain > 0.0)) throw std::invalid_argument("proportional gain must be positive");
    return amplitude - gain * error;
}

double step_newton(double amplitude, double error, double slope) {
    if (slope == 0.0) throw DegenerateSlopeError("Newton step with zero slope");
    return amplitude - error / slope;
}

double step_secant(double amplitude, double amplitude_prev, double output, double output_prev,
                   double error) {
    if (amplitude == amplitude_prev || output == output_prev) {
        throw StalledSecantError(
            "secant step undefined: repeated amplitude or output; perturb the amplitude by one "
            "grid step and retry");
    }
    return amplitude - error * (amplitude - amplitude_prev) / (output - output_prev);
}

ClampResult clamp_amplitude(double proposal, double lo, double hi) {
    if (proposal < lo) return {lo, true};
    if (proposal > hi) return {hi, true};
    return {proposal, false};
}

namespace {

void validate_config(const ControllerConfig& cfg, const PlaneBounds& bounds) {
    if (!(cfg.tolerance > 0.0)) throw std::invalid_argument("controller: tolerance must be > 0");
    if (!(cfg.max_amplitude > 0.0) || !bounds.contains(cfg.max_amplitude) ||
        !bounds.contains(-cfg.max_amplitude)) {
        throw std::invalid_argument("controller: max_amplitude must be positive and inside the "
                                    "operator bounds on both sides");
    }
    if (cfg.max_iterations < 1) {
        throw std::invalid_argument("controller: max_iterations must be >= 1");
    }
    if (std::abs(cfg.initial_amplitude) > cfg.max_amplitude) {
        throw std::invalid_argument("controller: |initial_amplitude| must be <= max_amplitude");
    }
    if (const auto* p = std::get_if<Proportional>(&cfg.law)) {
        if (!(p->gain > 0.0)) throw std::invalid_argument("controller: gain must be > 0");
    }
    if (const auto* s = std::get_if<Secant>(&cfg.law)) {
        if (std::abs(s->seed0) > cfg.max_amplitude || std::abs(s->seed1) > cfg.max_amplitude) {
            throw std::invalid_argument("controller: secant seeds must be <= max_amplitude");
        }
    }
}

}  // namespace

IterationTrace run_controller(DiscretePreisach& op, const WeightField& weight,
                              const ControllerConfig& cfg, double period) {
    validate_config(cfg, op.bounds());
    if (!(period > 0.0)) throw std::invalid_argument("controller: period must be > 0");

    IterationTrace trace;
    trace.polarity = choose_polarity(op, cfg.target, cfg.max_amplitude);
    const int p = trace.polarity;
    const double reset = -p * cfg.max_amplitude;
    const double lo = std::min(0.0, p * cfg.max_amplitude);
    const double hi = std::max(0.0, p * cfg.max_amplitude);

    // The reset pulse pins the same base interface every iteration; the
    // analytic curve over it supplies Newton slopes.
    const RemnantCurve curve(InterfaceLine::post_reset(op.bounds(), p), weight);
    const double slope_floor =
        1e-12 * op.total_weight_mass() / cfg.max_amplitude;

    int repeated_clamps = 0;
    double last_clamp_value = 0.0;
    for (int k = 0; k < cfg.max_iterations; ++k) {
        double amplitude = 0.0;
        std::optional<double> slope;
        bool clamped = false;

        if (k == 0) {
            const auto* s = std::get_if<Secant>(&cfg.law);
            amplitude = p * (s != nullptr ? s->seed0 : cfg.initial_amplitude);
        } else if (k == 1 && std::holds_alternative<Secant>(cfg.law)) {
            amplitude = p * std::get<Secant>(cfg.law).seed1;
        } else {
            const auto& last = trace.rows.back();
            double proposal = 0.0;
            if (const auto* prop = std::get_if<Proportional>(&cfg.law)) {
                proposal = step_proportional(last.amplitude, last.error, prop->gain);
            } else if (std::holds_alternative<Newton>(cfg.law)) {
                const double s = curve.derivative(last.amplitude);
                if (std::abs(s) < slope_floor) {
                    throw DegenerateSlopeError("remnant slope " + std::to_string(s) +
                                               " at amplitude " + std::to_string(last.amplitude) +
                                               " below floor " + std::to_string(slope_floor));
                }
                slope = s;
                proposal = step_newton(last.amplitude, last.error, s);
            } else {
                const auto& prev = trace.rows[trace.rows.size() - 2];
                slope = (last.output - prev.output) / (last.amplitude - prev.amplitude);
                proposal = step_secant(last.amplitude, prev.amplitude, last.output, prev.output,
                                       last.error);
            }
            const ClampResult c = clamp_amplitude(proposal, lo, hi);
            amplitude = c.value;
            clamped = c.clamped;
        }

        if (clamped) {
            if (repeated_clamps > 0 && amplitude == last_clamp_value) {
                ++repeated_clamps;
            } else {
                repeated_clamps = 1;
                last_clamp_value = amplitude;
            }
            if (repeated_clamps >= 3) {
                throw InfeasibleTargetError(
                    "amplitude clamped to " + std::to_string(amplitude) +
                    " three times in a row: target unreachable within max_amplitude");
            }
        } else {
            repeated_clamps = 0;
        }

        const std::array<double, 4> period_samples{reset, 0.0, amplitude, 0.0};
        op.apply_input(period_samples);
        const double y = op.output();
        const double e = y - cfg.target;
        trace.rows.push_back({k, amplitude, y, e, slope, clamped});
        if (std::abs(e) <= cfg.tolerance) {
            trace.converged = true;
            break;
        }
    }
    return trace;
}

void write_trace_csv(std::ostream& out, const IterationTrace& trace) {
    out << std::setprecision(12);
    out << "k,A_k,y_k,e_k,slope,clamped\n";
    for (const auto& r : trace.rows) {
        out << r.iteration << ',' << r.amplitude << ',' << r.output << ',' << r.error << ',';
        if (r.slope.has_value()) out << *r.slope;
        out << ',' << (r.clamped ? 1 : 0) << '\n';
    }
}

}  // namespace preisach
