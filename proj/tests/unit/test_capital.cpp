#include <gtest/gtest.h>

#include <cmath>

#include "../support/oracles.hpp"
#include "ruincap/approx.hpp"
#include "ruincap/bounds.hpp"
#include "ruincap/capital.hpp"
#include "ruincap/errors.hpp"
#include "ruincap/exact.hpp"

using namespace ruincap;
using namespace ruincap::capital;

namespace {
const RiskModel unit{Distribution::exponential(1.0), Distribution::exponential(1.0)};
const ExpPair unit_pair{1.0, 1.0};
const Probability a05(0.05);

SolveSpec with(Backend b) {
    SolveSpec s;
    s.backend = b;
    return s;
}

std::vector<double> grid(double a, double b, double h) {
    std::vector<double> g;
    for (int i = 0; a + i * h <= b + 1e-9; ++i) g.push_back(std::round((a + i * h) * 1e12) / 1e12);
    return g;
}
}  // namespace

TEST(VarCapital, ExactAgainstPoissonGammaOracle) {
    for (double c : {0.0, 0.5, 1.0, 1.1}) {
        const auto p = var_capital(unit, a05, 200.0, c, with(Backend::exact_exp));
        const double ref = oracle::bisect(
            [&](double u) { return 1.0 - oracle::aggregate_cdf_poisson_gamma(1.0, 1.0, 200.0, u + c * 200.0) - 0.05; },
            0.0, 400.0, 80);
        EXPECT_NEAR(p.u, ref, 1e-3) << c;
        EXPECT_EQ(p.kind, CapitalKind::var);
        EXPECT_EQ(p.method, Method::exact_exp);
    }
}

TEST(VarCapital, ClampAndOrdering) {
    const auto hi = var_capital(unit, a05, 200.0, 2.0, with(Backend::exact_exp));
    EXPECT_EQ(hi.u, 0.0);
    EXPECT_TRUE(hi.clamped);
    const double v0 = var_capital(unit, a05, 200.0, 0.0, with(Backend::exact_exp)).u;
    const double n0 = nonruin_capital(unit, a05, 200.0, 0.0, with(Backend::exact_exp)).u;
    EXPECT_NEAR(v0, n0, 1e-3);
    EXPECT_NEAR(n0, 233.7296, 1e-3);
    EXPECT_LT(var_capital(unit, a05, 200.0, 1.0, with(Backend::exact_exp)).u, 40.0844);
    EXPECT_NEAR(var_capital(unit, a05, 200.0, 1.0, with(Backend::clt)).u, approx::var_clt(unit, a05, 200.0, 1.0), 1e-9);
}

TEST(NonruinCapital, ExactReference) {
    const auto p = nonruin_capital(unit, a05, 200.0, 1.0, with(Backend::exact_exp));
    EXPECT_NEAR(p.u, 40.0844, 0.05);
    EXPECT_NEAR(p.u, 40.084293355485997, 1e-3);
    EXPECT_NEAR(exact::ruin_finite_exp(unit_pair, p.u, 1.0, 200.0).value(), 0.05, 1e-6);
    // at c = 3 ruin from zero capital still has probability 1/3 > alpha
    EXPECT_NEAR(nonruin_capital(unit, a05, 200.0, 3.0, with(Backend::exact_exp)).u, -std::log(0.15) * 1.5, 1e-3);
    EXPECT_TRUE(var_capital(unit, a05, 200.0, 3.0, with(Backend::exact_exp)).clamped);
    EXPECT_NEAR(nonruin_capital(unit, a05, 200.0, 2.0, with(Backend::exact_exp)).u, 4.60516, 1e-3);
}

TEST(NonruinCapital, InverseGaussianBackend) {
    const auto p = nonruin_capital(unit, a05, 200.0, 1.0, with(Backend::inverse_gaussian));
    EXPECT_NEAR(p.u, 43.227853, 1e-3);
    EXPECT_NEAR(approx::ig_ruin_probability(unit, p.u, 1.0, 200.0).value(), 0.05, 1e-6);
    // the approximation error carries over to the capital: a few money units at t = 200
    for (double c = 0.5; c <= 1.5 + 1e-9; c += 0.1) {
        const double e = nonruin_capital(unit, a05, 200.0, c, with(Backend::exact_exp)).u;
        const double g = nonruin_capital(unit, a05, 200.0, c, with(Backend::inverse_gaussian)).u;
        EXPECT_LE(std::fabs(e - g), 5.0) << c;
    }
    // zero premium falls back to the CLT VaR: both capitals solve the same equation there
    EXPECT_NEAR(nonruin_capital(unit, a05, 200.0, 0.0, with(Backend::inverse_gaussian)).u,
                approx::var_clt(unit, a05, 200.0, 0.0), 1e-9);
}

TEST(NonruinCapital, CramerAndCompatibility) {
    const auto p = nonruin_capital(unit, a05, 200.0, 1.5, with(Backend::cramer));
    EXPECT_NEAR(approx::cramer_ruin_exp(unit_pair, p.u, 1.5, 200.0).value(), 0.05, 1e-6);
    const RiskModel pareto{Distribution::exponential(1.0), Distribution::pareto(4.0, 0.4)};
    EXPECT_THROW(nonruin_capital(pareto, a05, 200.0, 1.0, with(Backend::exact_exp)), Unsupported);
    EXPECT_THROW(nonruin_capital(unit, a05, 200.0, 1.0, with(Backend::clt)), ModelIncompatible);
    EXPECT_THROW(var_capital(unit, a05, 200.0, 1.0, with(Backend::inverse_gaussian)), Unsupported);
}

TEST(UltimateCapital, Values) {
    EXPECT_NEAR(ultimate_capital(unit, a05, 2.0, {}).u, 4.6052, 1e-4);
    const double u105 = ultimate_capital(unit, a05, 1.05, {}).u;
    EXPECT_NEAR(u105, -std::log(0.05 * 1.05) * 21.0, 1e-9);
    EXPECT_GE(u105, nonruin_capital(unit, a05, 200.0, 1.05, with(Backend::exact_exp)).u);
    EXPECT_THROW(ultimate_capital(unit, a05, 1.0, {}), DomainError);
    const RiskModel m4{Distribution::erlang(1.6, 2), Distribution::exponential(0.6)};
    const auto p = ultimate_capital(m4, a05, 2.0, {});
    ASSERT_TRUE(p.lower && p.upper);
    EXPECT_LE(*p.lower, p.u);
    EXPECT_LE(p.u, *p.upper);
    EXPECT_EQ(p.method, Method::bound_upper);
    EXPECT_THROW(ultimate_capital({Distribution::exponential(1.0), Distribution::pareto(4.0, 0.4)}, a05, 2.0, {}),
                 Unsupported);
}

TEST(CapitalCurve, OrderingOnFullGrid) {
    const auto g = grid(0.0, 2.5, 0.05);
    const auto t = capital_curve(unit, a05, 200.0, g, with(Backend::exact_exp),
                                 {CapitalKind::var, CapitalKind::nonruin, CapitalKind::ultimate});
    ASSERT_EQ(t.rows.size(), 51u);
    ASSERT_EQ(t.header, (std::vector<std::string>{"c", "var_exact", "nonruin_exact", "ultimate_exact"}));
    double prev = INFINITY;
    for (const auto& row : t.rows) {
        const double c = *row[0];
        ASSERT_TRUE(row[1] && row[2]);
        EXPECT_GE(*row[1], 0.0);
        EXPECT_LE(*row[1], *row[2] + 1e-6) << c;
        EXPECT_LE(*row[2], prev + 1e-6) << c;
        prev = *row[2];
        if (c > 1.0) {
            ASSERT_TRUE(row[3]);
            EXPECT_LE(*row[2], *row[3] + 1e-6) << c;
        } else {
            EXPECT_FALSE(row[3]);
        }
    }
}

TEST(CapitalCurve, ResidualAtEverySolvedPoint) {
    const auto g = grid(0.0, 2.0, 0.1);
    const auto t = capital_curve(unit, a05, 200.0, g, with(Backend::exact_exp), {CapitalKind::nonruin});
    for (const auto& row : t.rows) {
        if (*row[1] > 0.0) {
            EXPECT_NEAR(exact::ruin_finite_exp(unit_pair, *row[1], *row[0], 200.0).value(), 0.05, 1e-6) << *row[0];
        }
    }
}

TEST(CapitalCurve, NondecreasingInHorizon) {
    for (double c : {0.8, 1.0, 1.3}) {
        double prev = 0.0;
        for (double t : {50.0, 100.0, 200.0, 400.0}) {
            const double u = nonruin_capital(unit, a05, t, c, with(Backend::exact_exp)).u;
            EXPECT_GE(u, prev - 1e-4) << c << " " << t;
            prev = u;
        }
    }
}

TEST(CapitalCurve, BelowExponentialUpperBound) {
    const RiskModel m1{Distribution::exponential(0.8), Distribution::exponential(0.6)};
    const auto g = grid(1.35, 3.0, 0.05);
    const auto t = capital_curve(m1, a05, 200.0, g, with(Backend::exact_exp), {CapitalKind::nonruin});
    for (const auto& row : t.rows) {
        EXPECT_LE(*row[1], bounds::capital_upper_bound_exp({0.8, 0.6}, a05, *row[0]) + 1e-6);
        EXPECT_LE(*row[1], bounds::capital_upper_bound_lundberg(m1, a05, *row[0]) + 1e-6);
    }
}

TEST(CapitalCurve, EdgeCases) {
    const auto empty = capital_curve(unit, a05, 200.0, {}, with(Backend::exact_exp), {CapitalKind::nonruin});
    EXPECT_TRUE(empty.rows.empty());
    EXPECT_THROW(capital_curve(unit, a05, 200.0, {1.0, 0.5}, with(Backend::exact_exp), {CapitalKind::nonruin}),
                 DomainError);
    // per-point failures become NA with a warning
    const RiskModel pareto{Distribution::exponential(1.0), Distribution::pareto(4.0, 0.4)};
    const auto t = capital_curve(pareto, a05, 200.0, {0.5, 1.0}, with(Backend::exact_exp), {CapitalKind::nonruin});
    EXPECT_FALSE(t.rows[0][1].has_value());
    EXPECT_FALSE(t.metadata.empty());
}

TEST(CapitalCurve, MonteCarloColumns) {
    SolveSpec s = with(Backend::monte_carlo);
    s.sim.n_paths = 2000;
    const auto t = capital_curve(unit, a05, 200.0, {0.9, 1.0, 1.1}, s, {CapitalKind::var, CapitalKind::nonruin});
    EXPECT_EQ(t.header, (std::vector<std::string>{"c", "var_mc", "var_mc_lo", "var_mc_hi", "nonruin_mc",
                                                  "nonruin_mc_lo", "nonruin_mc_hi"}));
    for (const auto& row : t.rows) {
        EXPECT_LE(*row[1], *row[4]);
        EXPECT_LE(*row[5], *row[4]);
        EXPECT_LE(*row[4], *row[6]);
    }
}
