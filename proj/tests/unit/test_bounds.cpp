#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "../support/oracles.hpp"
#include "ruincap/bounds.hpp"
#include "ruincap/errors.hpp"
#include "ruincap/exact.hpp"

using namespace ruincap;
using namespace ruincap::bounds;

namespace {
const RiskModel unit{Distribution::exponential(1.0), Distribution::exponential(1.0)};
const RiskModel m4{Distribution::erlang(1.6, 2), Distribution::exponential(0.6)};
const Probability a05(0.05);

double lundberg_residual(const RiskModel& m, double c, double kappa) {
    return *mgf(m.y_law, kappa) * *mgf(m.t_law, -kappa * c) - 1.0;
}
}  // namespace

TEST(AdjustmentCoefficient, ExponentialClosedForm) {
    const auto k = adjustment_coefficient(unit, 2.0);
    EXPECT_EQ(k.method, KappaMethod::closed_form);
    EXPECT_NEAR(k.kappa, 0.5, 1e-15);
}

TEST(AdjustmentCoefficient, ErlangAgainstBisection) {
    const auto k = adjustment_coefficient(m4, 2.0);
    const double ref = oracle::bisect(
        [](double x) { return (0.6 - x) * (1.6 + 2 * x) * (1.6 + 2 * x) - 0.6 * 2.56; }, 1e-9, 0.6 - 1e-12);
    EXPECT_NEAR(k.kappa, ref, 1e-10);
    EXPECT_NEAR(k.kappa, 0.254983443527, 1e-11);
    EXPECT_LE(std::fabs(lundberg_residual(m4, 2.0, k.kappa)), 1e-10);
    EXPECT_GT(k.kappa, 0.0);
    EXPECT_LT(k.kappa, 0.6);
}

TEST(AdjustmentCoefficient, GeneralLightTailedResidual) {
    const std::vector<std::pair<RiskModel, double>> cases{
        {{Distribution::mixture2(1.0, 2.0, 2.0 / 3.0), Distribution::erlang(3.0, 2)}, 1.0},
        {{Distribution::erlang(6.0, 4), Distribution::erlang(1.0, 2)}, 4.0},
        {{Distribution::pareto(4.0, 0.4), Distribution::exponential(1.0)}, 1.5},
        {{Distribution::exponential(0.8), Distribution::mixture2(1.0, 3.0, 0.5)}, 1.0},
    };
    for (const auto& [m, c] : cases) {
        const auto k = adjustment_coefficient(m, c);
        EXPECT_LE(std::fabs(lundberg_residual(m, c, k.kappa)), 1e-10) << m.y_law.describe();
        EXPECT_LT(k.kappa, m.y_law.mgf_abscissa());
    }
}

TEST(AdjustmentCoefficient, Errors) {
    EXPECT_THROW(adjustment_coefficient({Distribution::exponential(1.0), Distribution::pareto(4.0, 0.4)}, 5.0),
                 Unsupported);
    EXPECT_THROW(adjustment_coefficient(unit, 1.0), DomainError);
    EXPECT_THROW(adjustment_coefficient(m4, 1.2), DomainError);
}

TEST(UpperBoundExp, Values) {
    const ExpPair p{1.0, 1.0};
    EXPECT_NEAR(capital_upper_bound_exp(p, a05, 2.0), 4.6052, 1e-4);
    EXPECT_EQ(capital_upper_bound_exp(p, a05, 25.0), 0.0);
    const double u = capital_upper_bound_exp(p, a05, 2.0);
    EXPECT_NEAR(exact::ruin_ultimate_exp(p, u, 2.0).value(), 0.05, 1e-8);
    EXPECT_THROW(capital_upper_bound_exp(p, a05, 1.0), DomainError);
}

TEST(UpperBoundLundberg, Values) {
    EXPECT_NEAR(capital_upper_bound_lundberg(unit, a05, 2.0), -std::log(0.05) / 0.5, 1e-12);
    EXPECT_NEAR(capital_upper_bound_lundberg(unit, a05, 2.0), 5.9915, 1e-4);
    EXPECT_NEAR(capital_upper_bound_lundberg(m4, a05, 2.0), -std::log(0.05) / adjustment_coefficient(m4, 2.0).kappa,
                1e-12);
    EXPECT_EQ(capital_upper_bound_lundberg(unit, Probability(1.0), 2.0), 0.0);
}

TEST(UpperBounds, ExponentialBoundIsTighter) {
    const RiskModel m1{Distribution::exponential(0.8), Distribution::exponential(0.6)};
    for (double c = 1.35; c <= 3.0; c += 0.05) {
        EXPECT_LE(capital_upper_bound_exp({0.8, 0.6}, a05, c), capital_upper_bound_lundberg(m1, a05, c));
    }
}

TEST(UpperBounds, MarkovInequality) {
    for (double c : {1.2, 2.0, 4.0}) {
        const double kappa = adjustment_coefficient(unit, c).kappa;
        for (double u : {1.0, 5.0, 10.0}) {
            EXPECT_LE(exact::ruin_ultimate_exp({1.0, 1.0}, u, c).value(), std::exp(-kappa * u));
        }
    }
}

TEST(RatioBounds, ExponentialClaimsAreConstant) {
    const double kappa = adjustment_coefficient(m4, 2.0).kappa;
    const auto y = lundberg_ratio_bounds(m4, 2.0, RatioVariant::y_based);
    EXPECT_NEAR(y.b_minus, 1.0 - kappa / 0.6, 1e-12);
    EXPECT_NEAR(y.b_plus, 1.0 - kappa / 0.6, 1e-12);
    EXPECT_NEAR(y.b_minus, 0.575028, 1e-6);
}

TEST(RatioBounds, ErlangClaimsAgainstGrid) {
    const RiskModel m{Distribution::erlang(6.0, 4), Distribution::erlang(1.0, 2)};
    const double c = 4.0;
    const double kappa = adjustment_coefficient(m, c).kappa;
    const auto y = lundberg_ratio_bounds(m, c, RatioVariant::y_based);
    EXPECT_GT(y.b_minus, 0.0);
    EXPECT_LE(y.b_minus, y.b_plus);
    EXPECT_LE(y.b_plus, 1.0);
    // for Erlang(1, 2) claims the ratio (1 + x) / (x / (1 - k) + 1 / (1 - k)^2) rises
    // from (1 - k)^2 at x = 0 to 1 - k as x grows
    EXPECT_NEAR(y.b_minus, (1.0 - kappa) * (1.0 - kappa), 1e-6);
    EXPECT_NEAR(y.b_plus, 1.0 - kappa, 1e-6);
    // brute-force quadrature on a grid stays inside the bounds
    for (double x = 0.0; x <= 60.0; x += 0.25) {
        const double tail = oracle::integrate_to_inf([&](double s) { return std::exp(kappa * (s - x)) * pdf(m.y_law, s); }, x);
        const double r = survival(m.y_law, x) / tail;
        EXPECT_NEAR(r, (1.0 + x) / (x / (1.0 - kappa) + 1.0 / ((1.0 - kappa) * (1.0 - kappa))), 1e-8) << x;
        EXPECT_GE(r, y.b_minus - 1e-9);
        EXPECT_LE(r, y.b_plus + 1e-9);
    }

    const auto x = lundberg_ratio_bounds(m, c, RatioVariant::x_based);
    EXPECT_GT(x.b_minus, 0.0);
    EXPECT_LE(x.b_minus, x.b_plus);
    EXPECT_LE(x.b_plus, 1.0);
}

TEST(RatioBounds, CapitalInterval) {
    const RiskModel m{Distribution::erlang(6.0, 4), Distribution::erlang(1.0, 2)};
    const auto iv = ultimate_capital_interval(m, a05, 4.0);
    EXPECT_LE(iv.lower, iv.upper);
    EXPECT_NEAR(iv.lower, std::max(0.0, -std::log(0.05 / iv.ratio.b_minus) / iv.kappa), 1e-12);
    EXPECT_NEAR(iv.upper, std::max(0.0, -std::log(0.05 / iv.ratio.b_plus) / iv.kappa), 1e-12);
}

TEST(UltimateCapitalExp, Values) {
    const ExpPair p{1.0, 1.0};
    EXPECT_NEAR(ultimate_capital_exp(p, a05, 2.0), 4.6052, 1e-4);
    EXPECT_NEAR(ultimate_capital_exp(p, a05, 2.0), capital_upper_bound_exp(p, a05, 2.0), 1e-12);
    EXPECT_NEAR(ultimate_capital_exp(p, a05, 1.05), -std::log(0.05 * 1.05) * 1.05 / 0.05, 1e-9);
    EXPECT_EQ(ultimate_capital_exp(p, Probability(0.45), 3.0), 0.0);
    EXPECT_THROW(ultimate_capital_exp(p, a05, 1.0), DomainError);
    double prev = 0.0;
    for (double c = 3.0; c > 1.0005; c = 1.0 + (c - 1.0) * 0.7) {
        const double u = ultimate_capital_exp(p, a05, c);
        EXPECT_GT(u, prev);
        prev = u;
    }
    EXPECT_GT(prev, 5e3);
}
