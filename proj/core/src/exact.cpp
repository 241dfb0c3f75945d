#include "ruincap/exact.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "ruincap/detail/quadrature.hpp"
#include "ruincap/errors.hpp"
#include "ruincap/special.hpp"

namespace ruincap::exact {

namespace {

constexpr double pi = std::numbers::pi;

void check_pair(const ExpPair& p) {
    if (!(p.delta > 0.0 && p.rho > 0.0 && std::isfinite(p.delta) && std::isfinite(p.rho))) {
        throw DomainError("exponential pair needs delta > 0 and rho > 0");
    }
}

void check_t(double t) {
    if (!(t > 0.0 && std::isfinite(t))) throw DomainError("horizon t must be positive and finite");
}

// After z = w^2 the continuous part of the aggregate claims law becomes
// 2a I1s(2aw) exp(-rho (w - w*)^2), a = sqrt(delta rho t), w* = sqrt(delta t / rho).
struct AggregateIntegrand {
    double a, rho, w_star, sd;

    AggregateIntegrand(const ExpPair& p, double t)
        : a(std::sqrt(p.delta * p.rho * t)),
          rho(p.rho),
          w_star(std::sqrt(p.delta * t / p.rho)),
          sd(1.0 / std::sqrt(2.0 * p.rho)) {}

    double operator()(double w) const {
        if (w <= 0.0) return 0.0;
        const double d = w - w_star;
        return 2.0 * a * special::bessel_i1_scaled(2.0 * a * w) * std::exp(-rho * d * d);
    }

    std::vector<double> knots() const {
        std::vector<double> k;
        for (double z : {-12.0, -8.0, -5.0, -3.0, -1.5, 0.0, 1.5, 3.0, 5.0, 8.0, 12.0}) {
            k.push_back(w_star + z * sd);
        }
        return k;
    }

    double upper_cut() const { return w_star + 40.0 * sd; }
};

double ruin_oscillatory(const ExpPair& p, double u, double c, double t) {
    const double beta = p.delta / (c * p.rho);
    const double sb = std::sqrt(beta);
    const double rho = p.rho;
    const double ultimate = ruin_ultimate_exp(p, u, c);
    auto f = [=](double x) {
        const double h = std::sin(0.5 * x);
        const double q = (1.0 - sb) * (1.0 - sb) + 4.0 * sb * h * h;
        if (q <= 0.0) return 0.0;
        const double e = u * rho * (sb * std::cos(x) - 1.0) - t * c * rho * q;
        return beta / q * std::exp(e) * 2.0 * std::sin(u * rho * sb * std::sin(x) + x) * std::sin(x);
    };
    int panels = static_cast<int>(std::ceil(
        std::max({64.0, 2.0 * (1.0 + u * rho * sb), 2.0 * std::sqrt(t * c * rho * sb)})));
    double prev = detail::gauss_legendre_composite(f, 0.0, pi, panels);
    double diff = 0.0;
    for (int iter = 0; iter < 12; ++iter) {
        panels *= 2;
        const double next = detail::gauss_legendre_composite(f, 0.0, pi, panels);
        diff = std::abs(next - prev);
        prev = next;
        if (diff <= 1e-11 * std::max(1.0, std::abs(next))) return ultimate - next / pi;
    }
    throw IntegrationFailure("finite-horizon ruin (oscillatory integral) did not converge", diff);
}

double ruin_seal(const ExpPair& p, double u, double c, double t) {
    // P{tau > t} = F_t(u + ct) - c int_0^t phi0(t - s) f_s(u + cs) ds
    const double drift = p.delta / p.rho - c;  // > 0 on this route
    auto g = [&](double s) {
        if (s <= 0.0) return 0.0;
        return survival_from_zero_exp(p, c, t - s) * aggregate_density_exp(p, s, u + c * s);
    };
    std::vector<double> knots;
    const double s0 = u / drift;
    const double w = std::sqrt(2.0 * p.delta * std::max(s0, 1.0)) / p.rho / drift;
    for (double z : {-8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0}) knots.push_back(s0 + z * w);
    knots.push_back(t - 1.0);
    detail::QuadratureOptions opt;
    opt.rel_tol = 1e-10;
    opt.abs_tol = 1e-12;
    const double conv = detail::integrate(g, 0.0, t, knots, opt, "finite-horizon ruin (Seal)").value;
    return aggregate_survival_exp(p, t, u + c * t).value() + c * conv;
}

}  // namespace

Probability aggregate_cdf_exp(const ExpPair& p, double t, double x) {
    check_pair(p);
    check_t(t);
    if (std::isnan(x)) throw DomainError("aggregate_cdf_exp: x is NaN");
    if (x < 0.0) return Probability(0.0);
    const double atom = std::exp(-t * p.delta);
    if (x == 0.0) return Probability(atom);
    const AggregateIntegrand g(p, t);
    const double w = std::sqrt(x);
    if (w > g.w_star) return Probability(clamp_probability(1.0 - aggregate_survival_exp(p, t, x).value()));
    auto knots = g.knots();
    const double body = detail::integrate(g, 0.0, w, knots, {}, "aggregate claims c.d.f.").value;
    return Probability(clamp_probability(atom + body));
}

Probability aggregate_survival_exp(const ExpPair& p, double t, double x) {
    check_pair(p);
    check_t(t);
    if (std::isnan(x)) throw DomainError("aggregate_survival_exp: x is NaN");
    if (x < 0.0) return Probability(1.0);
    const double atom = std::exp(-t * p.delta);
    if (x == 0.0) return Probability(clamp_probability(-std::expm1(-t * p.delta)));
    const AggregateIntegrand g(p, t);
    const double w = std::sqrt(x);
    auto knots = g.knots();
    if (w <= g.w_star) {
        const double body = detail::integrate(g, 0.0, w, knots, {}, "aggregate claims c.d.f.").value;
        return Probability(clamp_probability(1.0 - atom - body));
    }
    const double hi = g.upper_cut();
    if (w >= hi) return Probability(0.0);
    const double tail = detail::integrate(g, w, hi, knots, {}, "aggregate claims tail").value;
    return Probability(clamp_probability(tail));
}

double aggregate_density_exp(const ExpPair& p, double t, double x) {
    check_pair(p);
    check_t(t);
    if (x <= 0.0) return 0.0;
    const double z = 2.0 * std::sqrt(p.delta * p.rho * t * x);
    const double d = std::sqrt(p.rho * x) - std::sqrt(p.delta * t);
    // exp(z - delta t - rho x) = exp(-d^2)
    return std::sqrt(p.delta * p.rho * t / x) * special::bessel_i1_scaled(z) * std::exp(-d * d);
}

Probability ruin_ultimate_exp(const ExpPair& p, double u, double c) {
    check_pair(p);
    if (!(u >= 0.0) || !(c >= 0.0)) throw DomainError("ruin_ultimate_exp: u and c must be >= 0");
    if (c == 0.0) return Probability(1.0);
    const double beta = p.delta / (c * p.rho);
    if (beta >= 1.0) return Probability(1.0);
    return Probability(beta * std::exp(-u * (c * p.rho - p.delta) / c));
}

double survival_from_zero_exp(const ExpPair& p, double c, double s) {
    // E[(cs - V_s)^+] / (cs), summed over the Poisson number of claims with
    // Gamma(n, rho) claim totals:
    //   E[(a - G_n)^+] = a P(n, rho a) - (n/rho) P(n+1, rho a)
    if (s <= 0.0) return 1.0;
    if (c <= 0.0) return std::exp(-p.delta * s);
    const double a = c * s;
    const double lam = p.delta * s;
    const double x = p.rho * a;
    double total = std::exp(-lam) * a;
    const double spread = 15.0 * std::sqrt(lam);
    const long n_lo = std::max(1L, static_cast<long>(std::floor(lam - spread - 10.0)));
    const long n_hi = static_cast<long>(std::ceil(lam + spread + 40.0));
    const double log_x = std::log(x);
    const double log_lam = std::log(lam);
    // P(n, x) regularized lower incomplete gamma, then P(n+1) = P(n) - x^n e^{-x}/n!
    double pn = boost::math::gamma_p(static_cast<double>(n_lo), x);
    double log_term = n_lo * log_x - x - std::lgamma(n_lo + 1.0);
    double log_w = -lam + n_lo * log_lam - std::lgamma(n_lo + 1.0);
    for (long n = n_lo; n <= n_hi; ++n) {
        const double pn1 = std::max(0.0, pn - std::exp(log_term));
        total += std::exp(log_w) * (a * pn - (static_cast<double>(n) / p.rho) * pn1);
        pn = pn1;
        log_term += log_x - std::log(n + 1.0);
        log_w += log_lam - std::log(n + 1.0);
    }
    return std::clamp(total / a, 0.0, 1.0);
}

RuinEvaluation ruin_finite_exp_route(const ExpPair& p, double u, double c, double t, RuinRoute route) {
    check_pair(p);
    check_t(t);
    if (!(u >= 0.0) || !(c >= 0.0) || !std::isfinite(u) || !std::isfinite(c)) {
        throw DomainError("ruin_finite_exp: u and c must be finite and >= 0");
    }
    RuinEvaluation r;
    r.route = route;
    switch (route) {
        case RuinRoute::aggregate:
            if (c != 0.0) throw DomainError("aggregate route applies only at c = 0");
            r.raw = aggregate_survival_exp(p, t, u).value();
            break;
        case RuinRoute::oscillatory:
            if (c == 0.0) throw DomainError("oscillatory route needs c > 0");
            r.raw = ruin_oscillatory(p, u, c, t);
            break;
        case RuinRoute::seal:
            if (!(c > 0.0 && c < p.delta / p.rho)) throw DomainError("Seal route needs 0 < c < delta/rho");
            r.raw = ruin_seal(p, u, c, t);
            break;
    }
    r.value = clamp_probability(r.raw);
    r.out_of_range = r.raw < -1e-7 || r.raw > 1.0 + 1e-7;
    return r;
}

RuinEvaluation ruin_finite_exp_detail(const ExpPair& p, double u, double c, double t) {
    check_pair(p);
    if (c == 0.0) return ruin_finite_exp_route(p, u, c, t, RuinRoute::aggregate);
    if (c > 0.0) {
        const double beta = p.delta / (c * p.rho);
        if (beta > 1.0) {
            const double g = std::sqrt(beta) - 1.0;
            const double peak = u * p.rho * g - t * c * p.rho * g * g;
            if (peak > 8.0) return ruin_finite_exp_route(p, u, c, t, RuinRoute::seal);
        }
    }
    return ruin_finite_exp_route(p, u, c, t, RuinRoute::oscillatory);
}

}  // namespace ruincap::exact
