#pragma once

#include "ruincap/model.hpp"
#include "ruincap/probability.hpp"

// Closed-form results for exponential inter-claim times (rate delta) and
// exponential claims (rate rho).
namespace ruincap::exact {

// P{V_t <= x}. Zero for x < 0; the atom e^{-t delta} sits at x = 0.
// Throws IntegrationFailure when the quadrature does not converge.
Probability aggregate_cdf_exp(const ExpPair& p, double t, double x);

// P{V_t > x}, integrated directly over the upper tail when that is the
// smaller side so that small probabilities keep their relative accuracy.
Probability aggregate_survival_exp(const ExpPair& p, double t, double x);

// Density of the absolutely continuous part of V_t at x > 0.
double aggregate_density_exp(const ExpPair& p, double t, double x);

// P{tau(u,c) < infinity}.
Probability ruin_ultimate_exp(const ExpPair& p, double u, double c);

// P{tau(0,c) > s}: survival up to s when starting from zero capital.
double survival_from_zero_exp(const ExpPair& p, double c, double s);

enum class RuinRoute {
    aggregate,    // c = 0: ruin by t iff V_t > u
    oscillatory,  // ultimate ruin minus the [0, pi] integral
    seal,         // convolution with the zero-capital survival function
};

struct RuinEvaluation {
    double value = 0.0;  // clamped to [0, 1]
    double raw = 0.0;    // before clamping
    bool out_of_range = false;  // raw left [0, 1] by more than 1e-7
    RuinRoute route = RuinRoute::oscillatory;
};

// P{tau(u,c) <= t}. The oscillatory integral is used unless its integrand
// peaks above e^8 (premium well below the equilibrium price), where the
// subtraction would cancel catastrophically; Seal's formula is used there.
RuinEvaluation ruin_finite_exp_detail(const ExpPair& p, double u, double c, double t);

inline Probability ruin_finite_exp(const ExpPair& p, double u, double c, double t) {
    return Probability(ruin_finite_exp_detail(p, u, c, t).value);
}

// Force a route; for cross-checks.
RuinEvaluation ruin_finite_exp_route(const ExpPair& p, double u, double c, double t, RuinRoute route);

}  // namespace ruincap::exact
