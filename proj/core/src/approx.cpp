#include "ruincap/approx.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "ruincap/detail/quadrature.hpp"
#include "ruincap/errors.hpp"
#include "ruincap/special.hpp"

namespace ruincap::approx {

namespace {

void check_alpha(Probability alpha) {
    if (!(alpha.value() > 0.0 && alpha.value() < 0.5)) throw DomainError("alpha must lie in (0, 1/2)");
}

void check_positive(double x, const char* name) {
    if (!(x > 0.0 && std::isfinite(x))) throw DomainError(std::string(name) + " must be positive and finite");
}

double ig_integral(double m_big, double d2_big, double u, double c, double t) {
    const double cm = c * m_big;
    const double v1 = c * c * d2_big / u;
    auto g = [=](double x) {
        const double y = x + 1.0;
        const double v = v1 * y;
        const double d = x - cm * y;
        return std::exp(-0.5 * d * d / v) / (y * std::sqrt(2.0 * std::numbers::pi * v));
    };
    const double hi = c * t / u;
    std::vector<double> knots;
    const double slope = std::abs(1.0 - cm);
    const double centre = cm < 1.0 ? cm / (1.0 - cm) : 0.0;
    const double sd = slope > 0.0 ? std::sqrt(v1 * (centre + 1.0)) / slope : std::sqrt(v1);
    for (double z : {-16.0, -8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0}) {
        knots.push_back(centre + z * sd);
    }
    detail::QuadratureOptions opt;
    opt.rel_tol = 1e-12;
    opt.abs_tol = 1e-14;
    return detail::integrate(g, 0.0, hi, knots, opt, "inverse Gaussian integral").value;
}

double ig_closed(double m_big, double d2_big, double u, double c, double t) {
    const IGParams p = ig_params(m_big, d2_big, u, c);
    const double x1 = c * t / u + 1.0;
    if (p.regime == Regime::subcritical) {
        return special::inverse_gaussian_cdf(x1, p.mu, p.lambda) - special::inverse_gaussian_cdf(1.0, p.mu, p.lambda);
    }
    return special::inverse_gaussian_cdf_scaled(x1, p.mu, p.lambda) -
           special::inverse_gaussian_cdf_scaled(1.0, p.mu, p.lambda);
}

std::vector<std::string> asymptotic_warnings(const RiskModel& m) {
    auto report = theorem_preconditions(m);
    std::vector<std::string> w;
    if (!report.asymptotic_capital()) {
        for (auto& v : report.violations()) {
            if (v.find("heavy-tailed") == std::string::npos) w.push_back(v);
        }
    }
    return w;
}

}  // namespace

double var_clt(const RiskModel& m, Probability alpha, double t, double c) {
    check_alpha(alpha);
    check_positive(t, "t");
    if (!(c >= 0.0)) throw DomainError("c must be >= 0");
    const DerivedConstants k = derived_constants(m);
    const double z = special::upper_quantile(alpha);
    return std::max(0.0, (k.m_v - c) * t + z * std::sqrt(k.d2_v) * std::sqrt(t));
}

IGParams ig_params(double m_big, double d2_big, double u, double c) {
    check_positive(m_big, "M");
    check_positive(d2_big, "D^2");
    check_positive(u, "u");
    check_positive(c, "c");
    const double cm = c * m_big;
    IGParams p;
    p.lambda = u / (c * c * d2_big);
    if (cm <= 1.0) {
        p.regime = Regime::subcritical;
        p.mu = cm == 1.0 ? std::numeric_limits<double>::infinity() : 1.0 / (1.0 - cm);
    } else {
        p.regime = Regime::supercritical;
        p.mu = 1.0 / (cm - 1.0);
    }
    return p;
}

Probability ig_ruin_probability(double m_big, double d2_big, double u, double c, double t, IGForm form) {
    if (c == 0.0) {
        throw DomainError("inverse Gaussian approximation is empty at c = 0; use the aggregate claims law");
    }
    check_positive(u, "u");
    check_positive(c, "c");
    check_positive(t, "t");
    const double raw =
        form == IGForm::integral ? ig_integral(m_big, d2_big, u, c, t) : ig_closed(m_big, d2_big, u, c, t);
    return Probability(clamp_probability(raw));
}

Probability ig_ruin_probability(const RiskModel& m, double u, double c, double t, IGForm form) {
    const DerivedConstants k = derived_constants(m);
    return ig_ruin_probability(k.m_big, k.d2_big, u, c, t, form);
}

CramerConstants cramer_constants_exp(const ExpPair& p, double c) {
    check_positive(p.delta, "delta");
    check_positive(p.rho, "rho");
    check_positive(c, "c");
    const double beta = p.delta / (c * p.rho);
    if (std::abs(beta - 1.0) <= 1e-12) throw DomainError("Cramer approximation excluded at c = c*");
    const double g = 1.0 - beta;
    CramerConstants k;
    k.big_c = beta;
    k.kappa = p.rho * g;
    k.m_sub = -1.0 / (c * g);
    k.d2_sub = -2.0 * beta / (c * c * p.rho * g * g * g);
    k.m_sup = beta / (c * g);
    k.d2_sup = 2.0 * beta / (c * c * p.rho * g * g * g);
    k.regime = beta > 1.0 ? Regime::subcritical : Regime::supercritical;
    return k;
}

Probability cramer_ruin_exp(const ExpPair& p, double u, double c, double t) {
    check_positive(u, "u");
    check_positive(t, "t");
    const CramerConstants k = cramer_constants_exp(p, c);
    if (k.regime == Regime::subcritical) {
        if (!(k.m_sub > 0.0 && k.d2_sub > 0.0)) throw NumericalFailure("Cramer subcritical constants not positive");
        return Probability(clamp_probability(special::normal_cdf(t, k.m_sub * u, k.d2_sub * u)));
    }
    const double tail = k.big_c * std::exp(-k.kappa * u);
    return Probability(clamp_probability(tail * special::normal_cdf(t, k.m_sup * u, k.d2_sup * u)));
}

Endpoints capital_asymptotic_endpoints(const RiskModel& m, Probability alpha, double t) {
    check_alpha(alpha);
    check_positive(t, "t");
    const DerivedConstants k = derived_constants(m);
    const double scale = std::sqrt(k.d2_big) / std::pow(k.m_big, 1.5);
    Endpoints e;
    e.u_at_zero = t / k.m_big + scale * special::upper_quantile(alpha) * std::sqrt(t);
    e.u_at_cstar = scale * special::upper_quantile(Probability(alpha.value() / 2.0)) * std::sqrt(t);
    e.warnings = asymptotic_warnings(m);
    return e;
}

Band capital_asymptotic_bounds(const RiskModel& m, Probability alpha, double t, double c) {
    check_alpha(alpha);
    check_positive(t, "t");
    const DerivedConstants k = derived_constants(m);
    if (!(c >= 0.0)) throw DomainError("c must be >= 0");
    if (c > k.c_star * (1.0 + 1e-12)) {
        throw DomainError("asymptotic bounds apply only for c <= c*; use the Lundberg-type bounds");
    }
    const double scale = std::sqrt(k.d2_big) / std::pow(k.m_big, 1.5);
    const double drift = std::max(0.0, k.c_star - c) * t;
    Band b;
    b.lower = drift + scale * special::upper_quantile(alpha) * std::sqrt(t);
    b.upper = drift + scale * special::upper_quantile(Probability(alpha.value() / 2.0)) * std::sqrt(t);
    b.warnings = asymptotic_warnings(m);
    return b;
}

}  // namespace ruincap::approx
