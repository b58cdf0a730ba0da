#pragma once

// Amplitude-parametrized pulses and the reset-interleaved iterative input
// schedule. Pulses start and end at zero, are monotone on the rise and on the
// settle interval, with opposite slope signs, and the rise direction follows
// the sign of the amplitude. The operators are rate independent, so pulses are
// handled as extrema-complete sample sequences.

#include "preisach/plane.hpp"

#include <functional>
#include <span>
#include <vector>

namespace preisach {

struct PulseSignal {
    double amplitude;
    double rise_end;    // peak time
    double settle_end;  // back to zero from here on
    std::function<double(double)> shape;

    [[nodiscard]] double operator()(double t) const { return shape(t); }
};

/// Symmetric triangle: zero at 0, peak at T/2, zero at T.
[[nodiscard]] PulseSignal make_triangle_pulse(double amplitude, double period);

/// Half-sine arch with the same endpoints.
[[nodiscard]] PulseSignal make_half_sine_pulse(double amplitude, double period);

/// Triangle with the peak at peak_fraction * period, peak_fraction in (0, 1).
[[nodiscard]] PulseSignal make_asymmetric_triangle_pulse(double amplitude, double period,
                                                         double peak_fraction);

/// Per-condition result of checking a pulse on a sample grid.
struct PulseCheck {
    bool returns_to_zero = false;         // zero at 0 and from settle_end on
    bool piecewise_monotone = false;      // monotone on each of the two intervals
    bool opposite_slopes = false;         // rise and settle move in opposite directions
    bool slope_matches_amplitude = false; // rise direction equals sign(amplitude)

    [[nodiscard]] bool all() const {
        return returns_to_zero && piecewise_monotone && opposite_slopes && slope_matches_amplitude;
    }
};

/// Evaluates the four pulse conditions on `samples` grid points (>= 3).
[[nodiscard]] PulseCheck validate_pulse(const PulseSignal& pulse, int samples);

struct TimedSample {
    double time;
    double value;

    friend bool operator==(const TimedSample&, const TimedSample&) = default;
};

/// Dense sampling of a pulse over [0, settle_end], peak time included.
[[nodiscard]] std::vector<TimedSample> sample_pulse(const PulseSignal& pulse, int count);

/// Reset-interleaved schedule: a reset pulse of amplitude -polarity*max_amplitude,
/// then control pulse A_k and another reset for every k.
struct IterativeInputSchedule {
    double max_amplitude;
    double period;
    std::vector<double> amplitudes;
    int polarity = +1;

    /// Extrema-complete samples: every peak and zero crossing, at multiples of
    /// period/2.
    [[nodiscard]] std::vector<TimedSample> samples() const;
};

/// Convenience wrapper building the schedule's sample sequence directly.
[[nodiscard]] std::vector<TimedSample> compose_schedule(std::span<const double> amplitudes,
                                                        double max_amplitude, double period,
                                                        int polarity);

/// Re-times a sample sequence through a non-decreasing map; values unchanged.
[[nodiscard]] std::vector<TimedSample> time_transform(std::span<const TimedSample> samples,
                                                      const std::function<double(double)>& map);

/// Strips times for feeding an operator.
[[nodiscard]] std::vector<double> values_of(std::span<const TimedSample> samples);

/// CSV with header "time,value".
void write_schedule_csv(std::ostream& out, std::span<const TimedSample> samples);

}  // namespace preisach
