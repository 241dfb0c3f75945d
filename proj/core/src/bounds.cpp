#include "ruincap/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "ruincap/detail/quadrature.hpp"
#include "ruincap/errors.hpp"

namespace ruincap::bounds {

namespace {

double log_sum_exp(double a, double b) {
    const double m = std::max(a, b);
    if (m == -std::numeric_limits<double>::infinity()) return m;
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

// log sum_{j<k} (x)^j / j!
double log_partial_exp_series(double x, int k) {
    if (x <= 0.0) return 0.0;
    double best = -std::numeric_limits<double>::infinity();
    std::vector<double> terms(k);
    for (int j = 0; j < k; ++j) {
        terms[j] = j * std::log(x) - std::lgamma(j + 1.0);
        best = std::max(best, terms[j]);
    }
    double s = 0.0;
    for (double v : terms) s += std::exp(v - best);
    return best + std::log(s);
}

double log_erlang_survival(double rate, int k, double y) { return -rate * y + log_partial_exp_series(rate * y, k); }

// log of the claim survival function.
double log_survival(const Distribution& d, double y) {
    if (y <= 0.0) return 0.0;
    if (auto e = d.as<Exponential>()) return -e->rate * y;
    if (auto e = d.as<Erlang>()) return log_erlang_survival(e->rate, e->shape, y);
    if (auto e = d.as<MixtureExp2>()) {
        return log_sum_exp(std::log(e->weight) - e->rate1 * y, std::log1p(-e->weight) - e->rate2 * y);
    }
    if (auto e = d.as<Pareto>()) return -e->shape * std::log1p(e->scale * y);
    throw Unsupported("ratio bounds: unsupported claim law " + d.describe());
}

// log of  e^{kappa y} P{Y > y} / int_y^inf e^{kappa z} dF_Y(z)
double log_claim_ratio(const Distribution& d, double kappa, double y) {
    y = std::max(y, 0.0);
    if (auto e = d.as<Exponential>()) return std::log1p(-kappa / e->rate);
    if (auto e = d.as<Erlang>()) {
        const double r = e->rate, s = r - kappa;
        return kappa * y + log_erlang_survival(r, e->shape, y) - e->shape * std::log(r / s) -
               log_erlang_survival(s, e->shape, y);
    }
    if (auto e = d.as<MixtureExp2>()) {
        const double a1 = e->rate1 - kappa, a2 = e->rate2 - kappa;
        const double lp = std::log(e->weight), lq = std::log1p(-e->weight);
        const double num = log_sum_exp(lp - a1 * y, lq - a2 * y);
        const double den = log_sum_exp(lp + std::log(e->rate1 / a1) - a1 * y, lq + std::log(e->rate2 / a2) - a2 * y);
        return num - den;
    }
    throw Unsupported("ratio bounds: claim law " + d.describe() + " has no adjustment coefficient");
}

// Limit of the claim ratio as y grows: the slowest exponential rate r in the
// tail gives (r - kappa) / r. The x-based ratio shares it. The approach is
// only O(1/y) for Erlang laws, so a finite grid alone misses the supremum.
double claim_ratio_limit(const Distribution& d, double kappa) {
    if (auto e = d.as<Exponential>()) return 1.0 - kappa / e->rate;
    if (auto e = d.as<Erlang>()) return 1.0 - kappa / e->rate;
    if (auto e = d.as<MixtureExp2>()) return 1.0 - kappa / std::min(e->rate1, e->rate2);
    throw Unsupported("ratio bounds: claim law " + d.describe() + " has no adjustment coefficient");
}

// The ratio for X = Y - cT is a weighted harmonic mean of the claim ratio
// evaluated at x + cT, with weights f_T(s) P{Y > x + cs}.
double x_based_ratio(const RiskModel& m, double c, double kappa, double x) {
    const double et = mean(m.t_law);
    const double ls0 = log_survival(m.y_law, x);
    auto weight = [&](double s) { return pdf(m.t_law, s) * std::exp(log_survival(m.y_law, x + c * s) - ls0); };
    auto mapped = [&](double tau, bool harmonic) {
        if (tau >= 1.0) return 0.0;
        const double s = et * tau / (1.0 - tau);
        const double jac = et / ((1.0 - tau) * (1.0 - tau));
        double w = weight(s) * jac;
        if (w == 0.0) return 0.0;
        if (harmonic) w /= std::exp(log_claim_ratio(m.y_law, kappa, x + c * s));
        return w;
    };
    std::vector<double> knots{0.1, 0.25, 0.5, 0.75, 0.9, 0.97, 0.99};
    detail::QuadratureOptions opt;
    opt.rel_tol = 1e-11;
    opt.abs_tol = 1e-14;
    const double num =
        detail::integrate([&](double tau) { return mapped(tau, false); }, 0.0, 1.0, knots, opt, "ratio bound").value;
    const double den =
        detail::integrate([&](double tau) { return mapped(tau, true); }, 0.0, 1.0, knots, opt, "ratio bound").value;
    return num / den;
}

}  // namespace

AdjustmentCoefficient adjustment_coefficient(const RiskModel& m, double c) {
    if (!m.y_law.light_tailed()) {
        throw Unsupported("adjustment coefficient does not exist: claim law " + m.y_law.describe() +
                          " is heavy-tailed");
    }
    const double c_star = equilibrium_price(m);
    if (!(c > c_star)) throw DomainError("adjustment coefficient: no positive root for c <= c*");

    if (auto p = as_exp_pair(m)) {
        const double k = p->rho - p->delta / c;
        return {k, KappaMethod::closed_form, k, k};
    }
    auto h = [&](double r) -> double {
        auto my = mgf(m.y_law, r);
        auto mt = mgf(m.t_law, -r * c);
        if (!my || !mt) return std::numeric_limits<double>::infinity();
        return std::log(*my) + std::log(*mt);
    };
    const double lo = 1e-12;
    const double hi = 0.999999 * m.y_law.mgf_abscissa();
    const double h_lo = h(lo), h_hi = h(hi);
    if (!(h_lo < 0.0 && h_hi > 0.0)) {
        throw BracketFailure("adjustment coefficient: Lundberg equation not bracketed on (1e-12, " +
                             std::to_string(hi) + ")");
    }
    boost::uintmax_t iters = 200;
    auto [a, b] = boost::math::tools::toms748_solve(h, lo, hi, h_lo, h_hi,
                                                    boost::math::tools::eps_tolerance<double>(50), iters);
    const double k = 0.5 * (a + b);
    return {k, KappaMethod::root_find, lo, hi};
}

double capital_upper_bound_exp(const ExpPair& p, Probability alpha, double c) {
    if (!(c > p.delta / p.rho)) throw DomainError("exponential bound requires c > c*");
    if (!(alpha.value() > 0.0)) throw DomainError("alpha must be positive");
    const double v = -std::log(alpha.value() * c * p.rho / p.delta) / (p.rho - p.delta / c);
    return std::max(0.0, v);
}

double capital_upper_bound_lundberg(const RiskModel& m, Probability alpha, double c) {
    if (!(alpha.value() > 0.0)) throw DomainError("alpha must be positive");
    const double k = adjustment_coefficient(m, c).kappa;
    return std::max(0.0, -std::log(alpha.value()) / k);
}

RatioBounds lundberg_ratio_bounds(const RiskModel& m, double c, RatioVariant variant) {
    const double kappa = adjustment_coefficient(m, c).kappa;
    std::function<double(double)> ratio;
    if (variant == RatioVariant::y_based) {
        ratio = [&](double x) { return std::exp(log_claim_ratio(m.y_law, kappa, x)); };
    } else {
        ratio = [&, kappa](double x) { return x_based_ratio(m, c, kappa, x); };
    }
    const double scale = mean(m.y_law);
    std::vector<double> xs{0.0};
    const int n = variant == RatioVariant::y_based ? 400 : 60;
    for (int i = 0; i < n; ++i) xs.push_back(scale * std::pow(10.0, -4.0 + 7.0 * i / (n - 1)));
    std::vector<double> rs(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) rs[i] = ratio(xs[i]);

    auto refine = [&](std::size_t i, double sign) {
        double best = rs[i];
        if (i == 0 || i + 1 == xs.size()) return best;
        auto g = [&](double x) { return sign * ratio(x); };
        auto r = boost::math::tools::brent_find_minima(g, xs[i - 1], xs[i + 1], 40);
        return sign > 0 ? std::min(best, r.second) : std::max(best, -r.second);
    };
    const auto lo_it = std::min_element(rs.begin(), rs.end());
    const auto hi_it = std::max_element(rs.begin(), rs.end());
    RatioBounds b;
    b.b_minus = refine(static_cast<std::size_t>(lo_it - rs.begin()), 1.0);
    b.b_plus = refine(static_cast<std::size_t>(hi_it - rs.begin()), -1.0);
    const double tail = claim_ratio_limit(m.y_law, kappa);
    b.b_minus = std::min(b.b_minus, tail);
    b.b_plus = std::max(b.b_plus, tail);
    b.b_minus = std::clamp(b.b_minus, 0.0, 1.0);
    b.b_plus = std::clamp(b.b_plus, b.b_minus, 1.0);
    return b;
}

double ultimate_capital_exp(const ExpPair& p, Probability alpha, double c) {
    if (!(c > p.delta / p.rho)) throw DomainError("u_alpha is infinite for c <= c*");
    if (!(alpha.value() > 0.0)) throw DomainError("alpha must be positive");
    const double v = -std::log(alpha.value() * c * p.rho / p.delta) * c / (c * p.rho - p.delta);
    return std::max(0.0, v);
}

CapitalInterval ultimate_capital_interval(const RiskModel& m, Probability alpha, double c, RatioVariant variant) {
    if (!(alpha.value() > 0.0)) throw DomainError("alpha must be positive");
    CapitalInterval out;
    out.kappa = adjustment_coefficient(m, c).kappa;
    out.ratio = lundberg_ratio_bounds(m, c, variant);
    out.lower = std::max(0.0, -std::log(alpha.value() / out.ratio.b_minus) / out.kappa);
    out.upper = std::max(0.0, -std::log(alpha.value() / out.ratio.b_plus) / out.kappa);
    return out;
}

}  // namespace ruincap::bounds
