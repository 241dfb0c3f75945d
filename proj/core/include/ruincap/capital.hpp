#pragma once

#include <optional>
#include <vector>

#include "ruincap/curve_table.hpp"
#include "ruincap/model.hpp"
#include "ruincap/montecarlo.hpp"
#include "ruincap/probability.hpp"

namespace ruincap::capital {

enum class Backend { exact_exp, inverse_gaussian, monte_carlo, clt, cramer };

Method method_of(Backend b);

struct SolveSpec {
    Backend backend = Backend::exact_exp;
    double u_tolerance = 0.0;   // 0: 1e-4 times the natural capital scale (D/M^{3/2}) sqrt(t)
    double p_tolerance = 1e-6;  // probability residual accepted at the root
    double max_bracket = 0.0;   // 0: upper asymptotic bound plus 10 (D/M^{3/2}) sqrt(t)
    mc::SimConfig sim{};        // used by the monte_carlo backend (sim.t is overwritten by t)
};

// Smallest u >= 0 with P{V_t > u + ct} = alpha; zero (clamped) when
// P{V_t > ct} < alpha already. Backends: exact_exp, clt, monte_carlo.
CapitalPoint var_capital(const RiskModel& m, Probability alpha, double t, double c, const SolveSpec& spec);

// Smallest u >= 0 with P{tau(u,c) <= t} = alpha, clamped at zero.
// Backends: exact_exp, inverse_gaussian, monte_carlo, cramer (exponential
// pair only); clt only at c = 0 where both capitals coincide. The inverse
// Gaussian approximation is not monotone in u near zero, so its largest root
// is returned. `upper_hint`, when valid, narrows the initial bracket.
CapitalPoint nonruin_capital(const RiskModel& m, Probability alpha, double t, double c, const SolveSpec& spec,
                             std::optional<double> upper_hint = std::nullopt);

// u_alpha(c) for c > c*. Exponential pair: exact closed form (method
// exact_exp). Other light-tailed models: midpoint of the interval implied by
// the Lundberg ratio bounds, with the interval in lower/upper (method
// bound_upper). Heavy tails: Unsupported. c <= c*: DomainError (infinite).
CapitalPoint ultimate_capital(const RiskModel& m, Probability alpha, double c, const SolveSpec& spec);

// Capital curve over a strictly increasing, nonnegative grid. Columns are c
// then <kind>_<method> for each requested kind (plus _lo/_hi interval columns
// for monte_carlo). Per-point failures become NA with a warning line.
CurveTable capital_curve(const RiskModel& m, Probability alpha, double t, const std::vector<double>& c_grid,
                         const SolveSpec& spec, const std::vector<CapitalKind>& kinds);

}  // namespace ruincap::capital
