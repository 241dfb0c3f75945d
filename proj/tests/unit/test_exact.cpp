#include <gtest/gtest.h>

#include <cmath>

#include "../support/oracles.hpp"
#include "ruincap/exact.hpp"

using namespace ruincap;
using namespace ruincap::exact;

namespace {
const ExpPair unit{1.0, 1.0};
}

TEST(AggregateCdf, BoundaryValues) {
    EXPECT_EQ(aggregate_cdf_exp(unit, 1.0, -1.0).value(), 0.0);
    EXPECT_EQ(aggregate_cdf_exp(unit, 1.0, -1e-300).value(), 0.0);
    // the atom: no claim by t
    EXPECT_NEAR(aggregate_cdf_exp(unit, 3.0, 0.0).value(), std::exp(-3.0), 1e-15);
    EXPECT_NEAR(aggregate_cdf_exp(unit, 1.0, 1e6).value(), 1.0, 1e-8);
    EXPECT_NEAR(aggregate_cdf_exp(unit, 200.0, 200.0).value(), 0.5, 0.03);
}

TEST(AggregateCdf, MatchesPoissonGammaMixture) {
    for (ExpPair p : {ExpPair{1.0, 1.0}, ExpPair{0.8, 0.6}, ExpPair{2.0, 0.5}}) {
        for (double t : {0.5, 10.0, 200.0}) {
            const double mean = p.delta / p.rho * t, sd = std::sqrt(2.0 * p.delta * t) / p.rho;
            for (double z = -3.0; z <= 6.0; z += 0.5) {
                const double x = std::max(0.0, mean + z * sd);
                const double ref = oracle::aggregate_cdf_poisson_gamma(p.delta, p.rho, t, x);
                EXPECT_NEAR(aggregate_cdf_exp(p, t, x).value(), ref, 1e-10) << t << " " << x;
                EXPECT_NEAR(aggregate_survival_exp(p, t, x).value(), 1.0 - ref, 1e-10);
            }
        }
    }
}

TEST(AggregateCdf, SurvivalKeepsRelativeAccuracyInTail) {
    const double t = 200.0, x = 400.0;  // ten standard deviations
    const double s = aggregate_survival_exp(unit, t, x).value();
    // tail of the Poisson-gamma mixture summed directly
    double ref = 0.0;
    for (int n = 1; n < 1000; ++n) {
        const double logw = -t + n * std::log(t) - std::lgamma(n + 1.0);
        ref += std::exp(logw) * boost::math::gamma_q(static_cast<double>(n), x);
    }
    EXPECT_GT(s, 0.0);
    EXPECT_NEAR(s / ref, 1.0, 1e-8);
}

TEST(AggregateCdf, MonotoneAndDensityConsistent) {
    double prev = 0.0;
    for (double x = 0.0; x < 400.0; x += 2.5) {
        const double f = aggregate_cdf_exp(unit, 200.0, x).value();
        EXPECT_GE(f, prev - 1e-14);
        prev = f;
    }
    const double h = 1e-3;
    for (double x : {50.0, 180.0, 250.0}) {
        const double fd = (aggregate_cdf_exp(unit, 200.0, x + h).value() - aggregate_cdf_exp(unit, 200.0, x - h).value()) / (2 * h);
        EXPECT_NEAR(aggregate_density_exp(unit, 200.0, x), fd, 1e-7);
    }
}

TEST(UltimateRuin, ClosedForm) {
    EXPECT_EQ(ruin_ultimate_exp(unit, 17.0, 0.5).value(), 1.0);
    EXPECT_EQ(ruin_ultimate_exp(unit, 3.0, 0.0).value(), 1.0);
    EXPECT_EQ(ruin_ultimate_exp(unit, 3.0, 1.0).value(), 1.0);
    EXPECT_NEAR(ruin_ultimate_exp(unit, 0.0, 2.0).value(), 0.5, 1e-15);
    EXPECT_NEAR(ruin_ultimate_exp(unit, 4.60517, 2.0).value(), 0.05, 1e-6);
}

TEST(FiniteRuin, ReferenceValues) {
    EXPECT_NEAR(ruin_finite_exp(unit, 50.0, 1.0, 1000.0).value(), 0.26, 0.005);
    // frozen after cross-checking both quadrature routes and simulation
    EXPECT_NEAR(ruin_finite_exp(unit, 50.0, 1.0, 1000.0).value(), 0.25998797963465348, 1e-10);
    EXPECT_NEAR(ruin_finite_exp(unit, 20.0, 2.0, 1e5).value(), 0.5 * std::exp(-10.0), 1e-6);
    EXPECT_GE(ruin_finite_exp(unit, 0.0, 0.5, 1e4).value(), 0.999);
}

TEST(FiniteRuin, ZeroPremiumUsesAggregateLaw) {
    for (double u : {0.0, 10.0, 150.0, 200.0, 260.0}) {
        const auto r = ruin_finite_exp_detail(unit, u, 0.0, 200.0);
        EXPECT_EQ(r.route, RuinRoute::aggregate);
        EXPECT_NEAR(r.value + aggregate_cdf_exp(unit, 200.0, u).value(), 1.0, 1e-14);
    }
}

TEST(FiniteRuin, RoutesAgree) {
    // below c* the oscillatory integrand grows like exp(u rho (sqrt(beta) - 1)) and
    // cancels; compare only where that factor stays moderate
    for (double c : {0.5, 0.8, 0.95}) {
        for (double u : {1.0, 5.0, 40.0, 140.0}) {
            if (c < 1.0 && u * (std::sqrt(1.0 / c) - 1.0) > 5.0) continue;
            const auto a = ruin_finite_exp_route(unit, u, c, 200.0, RuinRoute::seal);
            const auto b = ruin_finite_exp_route(unit, u, c, 200.0, RuinRoute::oscillatory);
            EXPECT_NEAR(a.raw, b.raw, 1e-9) << c << " " << u;
        }
    }
    const ExpPair m1{0.8, 0.6};
    EXPECT_NEAR(ruin_finite_exp_route(m1, 60.0, 1.2, 200.0, RuinRoute::seal).raw,
                ruin_finite_exp_route(m1, 60.0, 1.2, 200.0, RuinRoute::oscillatory).raw, 1e-9);
    // deep in the region where the oscillatory route is ill-conditioned
    const auto deep = ruin_finite_exp_detail(unit, 140.0, 0.5, 200.0);
    EXPECT_EQ(deep.route, RuinRoute::seal);
    EXPECT_NEAR(deep.value, 0.02896856, 1e-7);
}

TEST(FiniteRuin, ZeroCapitalSurvival) {
    for (double c : {0.5, 1.0, 2.0}) {
        for (double s : {1.0, 10.0, 100.0}) {
            EXPECT_NEAR(survival_from_zero_exp(unit, c, s), 1.0 - ruin_finite_exp(unit, 0.0, c, s).value(), 1e-9);
        }
    }
}

TEST(FiniteRuin, BoundedByUltimate) {
    for (double u : {0.0, 5.0, 30.0, 80.0}) {
        for (double c : {0.3, 0.9, 1.0, 1.1, 2.0}) {
            for (double t : {1.0, 50.0, 500.0}) {
                const double f = ruin_finite_exp(unit, u, c, t).value();
                EXPECT_GE(f, 0.0);
                EXPECT_LE(f, ruin_ultimate_exp(unit, u, c).value() + 1e-9);
            }
        }
    }
}

TEST(FiniteRuin, Monotonicity) {
    const double tol = 1e-6;
    for (double c : {0.0, 0.7, 1.0, 1.3}) {
        double prev = 2.0;
        for (double u = 0.0; u <= 120.0; u += 4.0) {
            const double v = ruin_finite_exp(unit, u, c, 300.0).value();
            EXPECT_LE(v, prev + tol) << "u " << u << " c " << c;
            prev = v;
        }
    }
    for (double u : {10.0, 50.0}) {
        double prev = 2.0;
        for (double c = 0.0; c <= 2.0; c += 0.05) {
            const double v = ruin_finite_exp(unit, u, c, 300.0).value();
            EXPECT_LE(v, prev + tol) << "u " << u << " c " << c;
            prev = v;
        }
        prev = -1.0;
        for (double t = 1.0; t <= 2000.0; t *= 1.5) {
            const double v = ruin_finite_exp(unit, u, 1.1, t).value();
            EXPECT_GE(v, prev - tol) << "u " << u << " t " << t;
            prev = v;
        }
    }
}
