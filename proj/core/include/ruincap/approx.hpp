#pragma once

#include <string>
#include <vector>

#include "ruincap/model.hpp"
#include "ruincap/probability.hpp"

namespace ruincap::approx {

// Central limit Value-at-Risk:  max{0, (M_V - c) t + z_alpha D_V sqrt(t)}.
// Requires 0 < alpha < 1/2.
double var_clt(const RiskModel& m, Probability alpha, double t, double c);

enum class Regime { subcritical, supercritical };

// Inverse Gaussian parameters. For the subcritical regime mu = 1/(1 - cM)
// (infinite at cM = 1); for the supercritical one mu = 1/(cM - 1).
struct IGParams {
    double mu;
    double lambda;
    Regime regime;
};

IGParams ig_params(double m_big, double d2_big, double u, double c);

enum class IGForm { integral, closed };

// Inverse Gaussian approximation of P{tau(u,c) <= t}. Throws DomainError at
// c = 0 (the integration range is empty; use the aggregate claims law).
Probability ig_ruin_probability(const RiskModel& m, double u, double c, double t, IGForm form = IGForm::closed);
Probability ig_ruin_probability(double m_big, double d2_big, double u, double c, double t,
                                IGForm form = IGForm::closed);

struct CramerConstants {
    double big_c;
    double kappa;
    double m_sub;   // subcritical mean factor
    double d2_sub;
    double m_sup;   // supercritical mean factor
    double d2_sup;
    Regime regime;
};

// Throws DomainError at c = delta/rho, where the approximation is excluded.
CramerConstants cramer_constants_exp(const ExpPair& p, double c);

// Subcritical:   Phi((t - m_sub u) / sqrt(d2_sub u))
// Supercritical: C e^{-kappa u} Phi((t - m_sup u) / sqrt(d2_sup u))
Probability cramer_ruin_exp(const ExpPair& p, double u, double c, double t);

struct Endpoints {
    double u_at_zero;
    double u_at_cstar;
    std::vector<std::string> warnings;  // violated moment hypotheses
};

//   u(0)  = t/M + (D/M^{3/2}) z_alpha sqrt(t)
//   u(c*) = (D/M^{3/2}) z_{alpha/2} sqrt(t)
Endpoints capital_asymptotic_endpoints(const RiskModel& m, Probability alpha, double t);

struct Band {
    double lower;
    double upper;
    std::vector<std::string> warnings;
};

// (c* - c) t + (D/M^{3/2}) z sqrt(t), with z = z_alpha (lower) and
// z_{alpha/2} (upper). Only for 0 <= c <= c*; throws DomainError otherwise.
Band capital_asymptotic_bounds(const RiskModel& m, Probability alpha, double t, double c);

}  // namespace ruincap::approx
