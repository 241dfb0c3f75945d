#include "ruincap/special.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ruincap/errors.hpp"

namespace ruincap::special {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kLogSqrt2Pi = 0.91893853320467274178;

// log Phi(-a) for a > 0 large, Phi(-a) = phi(a) / (a + 1/(a + 2/(a + 3/(a + ...)))).
double log_lower_tail_continued_fraction(double a) {
    double denom = a;
    for (int k = 80; k >= 1; --k) {
        denom = a + k / denom;
    }
    return -0.5 * a * a - kLogSqrt2Pi - std::log(denom);
}

}  // namespace

double std_normal_cdf(double x) {
    return 0.5 * std::erfc(-x * kInvSqrt2);
}

double std_normal_log_cdf(double x) {
    if (x < -8.0) return log_lower_tail_continued_fraction(-x);
    if (x > 0.0) return std::log1p(-0.5 * std::erfc(x * kInvSqrt2));
    return std::log(0.5 * std::erfc(-x * kInvSqrt2));
}

double std_normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("std_normal_quantile: p must lie in (0,1), got " + std::to_string(p));
    }
    // Acklam's rational approximation, relative error ~1.2e-9.
    static constexpr std::array<double, 6> a{-3.969683028665376e+01, 2.209460984245205e+02,
                                             -2.759285104469687e+02, 1.383577518672690e+02,
                                             -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr std::array<double, 5> b{-5.447609879822406e+01, 1.615858368580409e+02,
                                             -1.556989798598866e+02, 6.680131188771972e+01,
                                             -1.328068155288572e+01};
    static constexpr std::array<double, 6> c{-7.784894002430293e-03, -3.223964580411365e-01,
                                             -2.400758277161838e+00, -2.549732539343734e+00,
                                             4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr std::array<double, 4> d{7.784695709041462e-03, 3.224671290700398e-01,
                                             2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // One Halley step. Both branches give Phi(x) - p; the upper one works on
    // the small tail so precision survives p close to 1.
    const double density = std::exp(-0.5 * x * x - kLogSqrt2Pi);
    const double residual = (p < 0.5) ? std_normal_cdf(x) - p : (1.0 - p) - std_normal_cdf(-x);
    const double step = residual / density;
    return x - step / (1.0 + 0.5 * x * step);
}

double normal_pdf(double x, double mean, double variance) {
    if (!(variance > 0.0)) {
        throw DomainError("normal_pdf: variance must be positive, got " + std::to_string(variance));
    }
    const double z = x - mean;
    return std::exp(-0.5 * z * z / variance - kLogSqrt2Pi) / std::sqrt(variance);
}

double normal_cdf(double x, double mean, double variance) {
    if (!(variance > 0.0)) {
        throw DomainError("normal_cdf: variance must be positive, got " + std::to_string(variance));
    }
    return std_normal_cdf((x - mean) / std::sqrt(variance));
}

double bessel_i1_scaled(double x) {
    if (!(x >= 0.0)) {
        throw DomainError("bessel_i1_scaled: x must be nonnegative, got " + std::to_string(x));
    }
    if (x == 0.0) return 0.0;

    if (x <= 25.0) {
        // I_1(x) = sum_m (x/2)^{2m+1} / (m! (m+1)!)
        const double half = 0.5 * x;
        const double q = half * half;
        double term = half;
        double sum = term;
        for (int m = 1; m < 500; ++m) {
            term *= q / (static_cast<double>(m) * (m + 1));
            sum += term;
            if (term < sum * 1e-17) break;
        }
        return sum * std::exp(-x);
    }

    // Hankel expansion: e^{-x} I_1(x) ~ (2 pi x)^{-1/2} sum_k (-1)^k a_k(1) / x^k,
    // a_k(1) = prod_{j=1..k} (4 - (2j-1)^2) / (k! 8^k). Stop at the smallest term.
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double next = -term * (4.0 - odd * odd) / (8.0 * k * x);
        if (std::abs(next) >= std::abs(term)) break;
        term = next;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

namespace {

void check_ig_arguments(double x, double mu, double lambda) {
    if (!(x > 0.0) || !(mu > 0.0) || !(lambda > 0.0)) {
        throw DomainError("inverse_gaussian_cdf: x, mu, lambda must be positive (x=" +
                          std::to_string(x) + ", mu=" + std::to_string(mu) +
                          ", lambda=" + std::to_string(lambda) + ")");
    }
}

}  // namespace

double inverse_gaussian_cdf(double x, double mu, double lambda) {
    check_ig_arguments(x, mu, lambda);
    if (std::isinf(x)) return 1.0;
    const double root = std::sqrt(lambda / x);
    const double ratio = x / mu;  // 0 when mu is infinite
    const double first = std_normal_cdf(root * (ratio - 1.0));
    const double log_second = 2.0 * lambda / mu + std_normal_log_cdf(-root * (ratio + 1.0));
    return clamp_probability(first + std::exp(log_second));
}

double inverse_gaussian_cdf_scaled(double x, double mu, double lambda) {
    check_ig_arguments(x, mu, lambda);
    const double shift = -2.0 * lambda / mu;
    if (std::isinf(x)) return std::exp(shift);
    const double root = std::sqrt(lambda / x);
    const double ratio = x / mu;
    const double first = std::exp(shift + std_normal_log_cdf(root * (ratio - 1.0)));
    const double second = std_normal_cdf(-root * (ratio + 1.0));
    return first + second;
}

}  // namespace ruincap::special
