#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ruincap/dist.hpp"

namespace ruincap {

// Compound renewal risk model: inter-claim times T and claim sizes Y,
// independent. Reserve R_s = u + c s - V_s with V_s the aggregate claims.
struct RiskModel {
    Distribution t_law;
    Distribution y_law;
};

struct DerivedConstants {
    double c_star;  // E Y / E T
    double m_big;   // M = E T / E Y
    double d2_big;  // D^2 = ((ET)^2 DY + (EY)^2 DT) / (EY)^3
    double m_v;     // mean rate of V_s
    double d2_v;    // variance rate of V_s
    double m_n;     // mean rate of N_s
    double d2_n;    // variance rate of N_s
};

// Throws MomentUndefined ("constants unavailable") naming the offending law.
DerivedConstants derived_constants(const RiskModel& m);

// E Y / E T; needs only the means.
double equilibrium_price(const RiskModel& m);

// Hypotheses behind the approximations, checked per family.
struct PreconditionReport {
    bool t_density_bounded = false;
    bool y_density_bounded = false;
    bool variances_finite = false;
    bool positive_d2 = false;
    bool t_third_moment_finite = false;
    bool y_third_moment_finite = false;
    bool y_light_tailed = false;

    // inverse Gaussian ruin approximation
    bool inverse_gaussian() const {
        return t_density_bounded && y_density_bounded && positive_d2 && t_third_moment_finite &&
               y_third_moment_finite;
    }
    // asymptotic endpoints and bilateral bounds for the non-ruin capital
    bool asymptotic_capital() const { return positive_d2 && t_third_moment_finite && y_third_moment_finite; }
    // Lundberg-type bounds and Cramer approximation
    bool lundberg() const { return y_light_tailed && variances_finite; }

    // Human readable list of violated hypotheses.
    std::vector<std::string> violations() const;
};

PreconditionReport theorem_preconditions(const RiskModel& m);

// Exponential T (rate delta) and exponential Y (rate rho).
struct ExpPair {
    double delta;
    double rho;
};

std::optional<ExpPair> as_exp_pair(const RiskModel& m);

// Throws Unsupported when the model is not an exponential pair.
ExpPair require_exp_pair(const RiskModel& m, std::string_view who);

enum class CapitalKind { var, nonruin, ultimate };
enum class Method { exact_exp, clt, inverse_gaussian, cramer, monte_carlo, bound_upper, bound_lower };

std::string_view to_string(CapitalKind k);
std::string_view to_string(Method m);

struct CapitalPoint {
    double c = 0.0;
    double u = 0.0;
    CapitalKind kind = CapitalKind::nonruin;
    Method method = Method::exact_exp;
    bool clamped = false;                 // solution was negative and set to zero
    std::optional<double> lower;          // interval, when the method yields one
    std::optional<double> upper;
};

}  // namespace ruincap
