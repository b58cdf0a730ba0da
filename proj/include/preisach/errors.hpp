#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace preisach {

/// Input sample outside the operator's admissible range.
class InputRangeError : public std::out_of_range {
public:
    InputRangeError(double value, std::size_t sample_index, double lo, double hi)
        : std::out_of_range("input sample " + std::to_string(value) + " at index " +
                            std::to_string(sample_index) + " outside [" + std::to_string(lo) +
                            ", " + std::to_string(hi) + "]"),
          value_(value),
          index_(sample_index) {}

    [[nodiscard]] double value() const noexcept { return value_; }
    [[nodiscard]] std::size_t index() const noexcept { return index_; }

private:
    double value_;
    std::size_t index_;
};

/// Relay with alpha < beta.
class MalformedRelayError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Relay array whose +1/-1 partition is not a staircase.
class RepresentabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Target remnant outside what the operator can produce.
class InfeasibleTargetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Newton step with a slope below the floor.
class DegenerateSlopeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Secant step with a zero denominator.
class StalledSecantError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed configuration (CLI / experiment files).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace preisach
