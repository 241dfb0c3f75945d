#pragma once

#include "ruincap/probability.hpp"

// Scalar special-function kernels. All functions are pure and reentrant.
namespace ruincap::special {

// Standard Gaussian c.d.f., via erfc with symmetric reflection.
double std_normal_cdf(double x);

// log Phi(x). Accurate far into the lower tail: for x < -8 it uses the
// Laplace continued fraction for the Mills ratio instead of log(erfc).
double std_normal_log_cdf(double x);

// Inverse of std_normal_cdf on (0, 1). Rational initial approximation
// followed by one Newton step. Throws DomainError for p outside (0, 1).
double std_normal_quantile(double p);

// The (1 - alpha)-quantile z_alpha.
inline double upper_quantile(Probability alpha) { return std_normal_quantile(1.0 - alpha.value()); }

// Gaussian density with the given mean and variance (variance > 0).
double normal_pdf(double x, double mean, double variance);

// Gaussian c.d.f. with the given mean and variance.
double normal_cdf(double x, double mean, double variance);

// e^{-x} I_1(x) for x >= 0. Stays finite for any x where I_1 itself overflows.
double bessel_i1_scaled(double x);

// Inverse Gaussian c.d.f.
//
//   F(x; mu, lambda) = Phi(sqrt(lambda/x) (x/mu - 1))
//                    + exp(2 lambda/mu) Phi(-sqrt(lambda/x) (x/mu + 1))
//
// The second term is combined in log space so it cannot overflow when
// lambda/mu is large. mu = +infinity is accepted and gives the continuous
// limit 2 Phi(-sqrt(lambda/x)).
double inverse_gaussian_cdf(double x, double mu, double lambda);

// exp(-2 lambda/mu) * F(x; mu, lambda), evaluated without forming either
// factor separately.
double inverse_gaussian_cdf_scaled(double x, double mu, double lambda);

}  // namespace ruincap::special
