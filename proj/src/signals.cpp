#include "preisach/signals.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace preisach {

namespace {

void require_period(double period) {
    if (!(period > 0.0)) throw std::invalid_argument("pulse period must be positive");
}

/// Sign classification with an absolute floor for sampled slopes.
[[nodiscard]] int slope_sign(double d, double floor) {
    if (d > floor) return 1;
    if (d < -floor) return -1;
    return 0;
}

}  // namespace

PulseSignal make_triangle_pulse(double amplitude, double period) {
    require_period(period);
    const double t1 = 0.5 * period;
    return PulseSignal{amplitude, t1, period, [amplitude, t1, period](double t) {
                           if (t <= 0.0 || t >= period) return 0.0;
                           if (t <= t1) return amplitude * (t / t1);
                           return amplitude * ((period - t) / (period - t1));
                       }};
}

PulseSignal make_half_sine_pulse(double amplitude, double period) {
    require_period(period);
    return PulseSignal{amplitude, 0.5 * period, period, [amplitude, period](double t) {
                           if (t <= 0.0 || t >= period) return 0.0;
                           return amplitude * std::sin(std::numbers::pi * t / period);
                       }};
}

PulseSignal make_asymmetric_triangle_pulse(double amplitude, double period, double peak_fraction) {
    require_period(period);
    if (!(peak_fraction > 0.0 && peak_fraction < 1.0)) {
        throw std::invalid_argument("peak_fraction must lie in (0, 1)");
    }
    const double t1 = peak_fraction * period;
    return PulseSignal{amplitude, t1, period, [amplitude, t1, period](double t) {
                           if (t <= 0.0 || t >= period) return 0.0;
                           if (t <= t1) return amplitude * (t / t1);
                           return amplitude * ((period - t) / (period - t1));
                       }};
}

PulseCheck validate_pulse(const PulseSignal& pulse, int samples) {
    if (samples < 3) throw std::invalid_argument("validate_pulse: need at least 3 samples");
    const double t2 = pulse.settle_end;
    const double t1 = pulse.rise_end;
    const double scale = std::max(std::abs(pulse.amplitude), 1e-30);
    const double zero_tol = 1e-9 * scale;
    const double slope_floor = 1e-12 * scale;

    PulseCheck check;
    check.returns_to_zero = std::abs(pulse(0.0)) <= zero_tol && std::abs(pulse(t2)) <= zero_tol &&
                            std::abs(pulse(1.5 * t2)) <= zero_tol &&
                            std::abs(pulse(10.0 * t2)) <= zero_tol;

    const auto interval_sign = [&](double a, double b) {
        // Returns the common sign of all increments on (a, b), 0 if flat,
        // -2 on a sign conflict (non-monotone).
        int sgn = 0;
        double prev = pulse(a);
        for (int i = 1; i <= samples; ++i) {
            const double t = a + (b - a) * static_cast<double>(i) / samples;
            const double cur = pulse(t);
            const int s = slope_sign(cur - prev, slope_floor);
            if (s != 0) {
                if (sgn == 0) {
                    sgn = s;
                } else if (s != sgn) {
                    return -2;
                }
            }
            prev = cur;
        }
        return sgn;
    };

    const int rise_sign = interval_sign(0.0, t1);
    const int settle_sign = interval_sign(t1, t2);
    check.piecewise_monotone = rise_sign != -2 && settle_sign != -2;
    check.opposite_slopes = check.piecewise_monotone && rise_sign * settle_sign < 0;

    const int amp_sign = pulse.amplitude > 0.0 ? 1 : (pulse.amplitude < 0.0 ? -1 : 0);
    if (amp_sign == 0) {
        // Zero amplitude: admissible only as the identically-zero pulse.
        check.slope_matches_amplitude = rise_sign == 0 && settle_sign == 0;
        check.opposite_slopes = check.slope_matches_amplitude;
    } else {
        check.slope_matches_amplitude = check.piecewise_monotone && rise_sign == amp_sign;
    }
    return check;
}

std::vector<TimedSample> sample_pulse(const PulseSignal& pulse, int count) {
    if (count < 2) throw std::invalid_argument("sample_pulse: need at least 2 samples");
    std::vector<TimedSample> out;
    out.reserve(static_cast<std::size_t>(count) + 1);
    bool peak_emitted = false;
    for (int i = 0; i < count; ++i) {
        const double t = pulse.settle_end * static_cast<double>(i) / (count - 1);
        if (!peak_emitted && t > pulse.rise_end) {
            out.push_back({pulse.rise_end, pulse(pulse.rise_end)});
            peak_emitted = true;
        }
        if (t == pulse.rise_end) peak_emitted = true;
        out.push_back({t, pulse(t)});
    }
    return out;
}

std::vector<TimedSample> IterativeInputSchedule::samples() const {
    return compose_schedule(amplitudes, max_amplitude, period, polarity);
}

std::vector<TimedSample> compose_schedule(std::span<const double> amplitudes,
                                          double max_amplitude, double period, int polarity) {
    require_period(period);
    if (!(max_amplitude > 0.0)) {
        throw std::invalid_argument("compose_schedule: max_amplitude must be positive");
    }
    if (polarity != 1 && polarity != -1) {
        throw std::invalid_argument("compose_schedule: polarity must be +1 or -1");
    }
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
        if (std::abs(amplitudes[i]) > max_amplitude) {
            throw std::invalid_argument("compose_schedule: amplitude at index " +
                                        std::to_string(i) + " exceeds max_amplitude");
        }
    }
    const double reset = -polarity * max_amplitude;
    std::vector<TimedSample> out;
    out.reserve(2 * (2 * amplitudes.size() + 1) + 1);
    double t = 0.0;
    out.push_back({t, 0.0});
    const auto push_pulse = [&](double a) {
        out.push_back({t + 0.5 * period, a});
        out.push_back({t + period, 0.0});
        t += period;
    };
    push_pulse(reset);
    for (const double a : amplitudes) {
        push_pulse(a);
        push_pulse(reset);
    }
    return out;
}

std::vector<TimedSample> time_transform(std::span<const TimedSample> samples,
                                        const std::function<double(double)>& map) {
    std::vector<TimedSample> out;
    out.reserve(samples.size());
    double prev = -std::numeric_limits<double>::infinity();
    for (const auto& s : samples) {
        const double t = map(s.time);
        if (t < prev) {
            throw std::invalid_argument("time_transform: map is not non-decreasing at t=" +
                                        std::to_string(s.time));
        }
        prev = t;
        out.push_back({t, s.value});
    }
    return out;
}

std::vector<double> values_of(std::span<const TimedSample> samples) {
    std::vector<double> v;
    v.reserve(samples.size());
    for (const auto& s : samples) v.push_back(s.value);
    return v;
}

void write_schedule_csv(std::ostream& out, std::span<const TimedSample> samples) {
    out << std::setprecision(12);
    out << "time,value\n";
    for (const auto& s : samples) out << s.time << ',' << s.value << '\n';
}

}  // namespace preisach
