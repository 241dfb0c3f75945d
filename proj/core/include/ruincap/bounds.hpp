#pragma once

#include "ruincap/model.hpp"
#include "ruincap/probability.hpp"

namespace ruincap::bounds {

enum class KappaMethod { closed_form, root_find };

// Positive root of E exp(kappa (Y - cT)) = 1.
struct AdjustmentCoefficient {
    double kappa;
    KappaMethod method;
    double lo;  // bracket used by the root finder (equal to kappa for closed forms)
    double hi;
};

// Throws Unsupported for heavy-tailed claims (no root exists), DomainError
// for c <= c*, BracketFailure if the root cannot be bracketed.
AdjustmentCoefficient adjustment_coefficient(const RiskModel& m, double c);

// Exponential pair, c > delta/rho:  max{0, -ln(alpha c rho/delta) / (rho - delta/c)}.
double capital_upper_bound_exp(const ExpPair& p, Probability alpha, double c);

// -ln(alpha) / kappa.
double capital_upper_bound_lundberg(const RiskModel& m, Probability alpha, double c);

enum class RatioVariant {
    x_based,  // law of X = Y - cT
    y_based,  // claim-size law alone
};

// Extremes of  e^{kappa x} P{Z > x} / E[e^{kappa Z}; Z > x]  over x >= 0,
// with Z = X or Z = Y. b_minus is the infimum, b_plus the supremum.
struct RatioBounds {
    double b_minus;
    double b_plus;
};

RatioBounds lundberg_ratio_bounds(const RiskModel& m, double c, RatioVariant variant = RatioVariant::y_based);

// Exact u_alpha(c) for the exponential pair:  -ln(alpha c rho/delta) c/(c rho - delta),
// clamped at zero. Throws DomainError for c <= c* (u_alpha is infinite).
double ultimate_capital_exp(const ExpPair& p, Probability alpha, double c);

// Capital interval [ -ln(alpha/b_minus)/kappa, -ln(alpha/b_plus)/kappa ]
// (each clamped at zero) implied by the two-sided ratio bounds.
struct CapitalInterval {
    double lower;
    double upper;
    double kappa;
    RatioBounds ratio;
};

CapitalInterval ultimate_capital_interval(const RiskModel& m, Probability alpha, double c,
                                          RatioVariant variant = RatioVariant::y_based);

}  // namespace ruincap::bounds
