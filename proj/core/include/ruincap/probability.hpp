#pragma once

#include <cmath>
#include <string>

#include "ruincap/errors.hpp"

namespace ruincap {

// A value in [0, 1]. Construction rejects NaN and out-of-range input.
class Probability {
public:
    constexpr Probability() = default;
    explicit Probability(double value) : value_(value) {
        if (!(value >= 0.0 && value <= 1.0)) {
            throw DomainError("probability out of [0,1]: " + std::to_string(value));
        }
    }

    constexpr double value() const noexcept { return value_; }
    constexpr operator double() const noexcept { return value_; }

private:
    double value_ = 0.0;
};

// Clamp a raw quadrature result into [0, 1].
inline double clamp_probability(double raw) noexcept {
    if (std::isnan(raw)) return raw;
    return raw < 0.0 ? 0.0 : (raw > 1.0 ? 1.0 : raw);
}

}  // namespace ruincap
