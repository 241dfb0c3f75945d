#include "ruincap/capital.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>

#include "ruincap/approx.hpp"
#include "ruincap/bounds.hpp"
#include "ruincap/errors.hpp"
#include "ruincap/exact.hpp"
#include "ruincap/special.hpp"

namespace ruincap::capital {

namespace {

using Prob = std::function<double(double)>;

void check_query(Probability alpha, double t, double c) {
    if (!(alpha.value() > 0.0 && alpha.value() < 0.5)) throw DomainError("alpha must lie in (0, 1/2)");
    if (!(t > 0.0 && std::isfinite(t))) throw DomainError("t must be positive and finite");
    if (!(c >= 0.0 && std::isfinite(c))) throw DomainError("c must be finite and >= 0");
}

double natural_scale(const RiskModel& m, double t) {
    try {
        const DerivedConstants k = derived_constants(m);
        return std::sqrt(k.d2_big) / std::pow(k.m_big, 1.5) * std::sqrt(t);
    } catch (const ModelIncompatible&) {
        return std::sqrt(t);
    }
}

double default_bracket(const RiskModel& m, Probability alpha, double t, double c) {
    const DerivedConstants k = derived_constants(m);
    const double scale = std::sqrt(k.d2_big) / std::pow(k.m_big, 1.5) * std::sqrt(t);
    const double z2 = special::upper_quantile(Probability(alpha.value() / 2.0));
    return std::max(0.0, k.c_star - c) * t + scale * z2 + 10.0 * scale;
}

struct Tolerances {
    double u;
    double p;
};

Tolerances tolerances(const RiskModel& m, double t, const SolveSpec& spec) {
    Tolerances tol;
    tol.u = spec.u_tolerance > 0.0 ? spec.u_tolerance : 1e-4 * std::max(1.0, natural_scale(m, t));
    tol.p = spec.p_tolerance > 0.0 ? spec.p_tolerance : 1e-6;
    return tol;
}

// Bisection for P(u) = alpha on [lo, hi] with P(lo) > alpha >= P(hi).
// Returns the upper end, where P <= alpha: the capital errs on the safe side.
double bisect(const Prob& p, double alpha, double lo, double hi, const Tolerances& tol) {
    double p_hi = p(hi);
    for (int i = 0; i < 200; ++i) {
        if (hi - lo <= tol.u && alpha - p_hi <= tol.p) break;
        if (hi - lo <= 1e-13 * std::max(1.0, hi)) break;
        const double mid = 0.5 * (lo + hi);
        const double v = p(mid);
        if (v > alpha) {
            lo = mid;
        } else {
            hi = mid;
            p_hi = v;
        }
    }
    return hi;
}

// Monotone (nonincreasing) probability in u: root in [0, inf).
CapitalPoint solve_monotone(const Prob& p, double alpha, double bracket, const Tolerances& tol,
                            std::optional<double> hint) {
    CapitalPoint out;
    const double p0 = p(0.0);
    if (p0 <= alpha) {
        out.u = 0.0;
        out.clamped = true;
        return out;
    }
    double hi = bracket;
    if (hint && *hint > 0.0 && p(*hint) <= alpha) {
        hi = *hint;
    } else {
        int expand = 0;
        while (p(hi) > alpha) {
            if (++expand > 60) throw BracketFailure("no solution below max_bracket");
            hi *= 2.0;
        }
    }
    out.u = bisect(p, alpha, 0.0, hi, tol);
    return out;
}

// Largest root for a probability that rises from 0 at u = 0+ before
// decreasing: scan down from the bracket to the first u with P(u) >= alpha.
CapitalPoint solve_largest_root(const Prob& p, double alpha, double bracket, const Tolerances& tol) {
    CapitalPoint out;
    double hi = bracket;
    int expand = 0;
    while (p(hi) > alpha) {
        if (++expand > 60) throw BracketFailure("no solution below max_bracket");
        hi *= 2.0;
    }
    const int steps = 400;
    const double h = hi / steps;
    double upper = hi;
    for (int i = steps - 1; i >= 1; --i) {
        const double u = i * h;
        if (p(u) >= alpha) {
            out.u = bisect(p, alpha, u, upper, tol);
            return out;
        }
        upper = u;
    }
    // below the first grid step: refine on (0, h]
    for (double u = h / 2.0; u > h * 1e-6; u /= 2.0) {
        if (p(u) >= alpha) {
            out.u = bisect(p, alpha, u, upper, tol);
            return out;
        }
        upper = u;
    }
    out.u = 0.0;
    out.clamped = true;
    return out;
}

mc::SimConfig sim_for(const SolveSpec& spec, double t) {
    mc::SimConfig cfg = spec.sim;
    cfg.t = t;
    return cfg;
}

CapitalPoint from_estimate(const mc::Estimate& e) {
    CapitalPoint out;
    out.u = e.point;
    out.lower = e.ci_lo;
    out.upper = e.ci_hi;
    out.clamped = e.point == 0.0;
    return out;
}

}  // namespace

Method method_of(Backend b) {
    switch (b) {
        case Backend::exact_exp: return Method::exact_exp;
        case Backend::inverse_gaussian: return Method::inverse_gaussian;
        case Backend::monte_carlo: return Method::monte_carlo;
        case Backend::clt: return Method::clt;
        case Backend::cramer: return Method::cramer;
    }
    return Method::exact_exp;
}

CapitalPoint var_capital(const RiskModel& m, Probability alpha, double t, double c, const SolveSpec& spec) {
    check_query(alpha, t, c);
    CapitalPoint out;
    switch (spec.backend) {
        case Backend::exact_exp: {
            const ExpPair pair = require_exp_pair(m, "var_capital");
            const Tolerances tol = tolerances(m, t, spec);
            auto p = [&](double u) { return exact::aggregate_survival_exp(pair, t, u + c * t).value(); };
            const double bracket = spec.max_bracket > 0.0 ? spec.max_bracket : default_bracket(m, alpha, t, c);
            out = solve_monotone(p, alpha.value(), bracket, tol, std::nullopt);
            break;
        }
        case Backend::clt:
            out.u = approx::var_clt(m, alpha, t, c);
            out.clamped = out.u == 0.0;
            break;
        case Backend::monte_carlo:
            out = from_estimate(mc::estimate_capitals(m, alpha, c, sim_for(spec, t)).var_cap);
            break;
        case Backend::inverse_gaussian:
        case Backend::cramer:
            throw Unsupported("var capital: backend approximates ruin probabilities only");
    }
    out.c = c;
    out.kind = CapitalKind::var;
    out.method = method_of(spec.backend);
    return out;
}

CapitalPoint nonruin_capital(const RiskModel& m, Probability alpha, double t, double c, const SolveSpec& spec,
                             std::optional<double> upper_hint) {
    check_query(alpha, t, c);
    CapitalPoint out;
    const Tolerances tol = tolerances(m, t, spec);
    const double a = alpha.value();
    switch (spec.backend) {
        case Backend::exact_exp: {
            const ExpPair pair = require_exp_pair(m, "nonruin_capital");
            auto p = [&](double u) { return exact::ruin_finite_exp(pair, u, c, t).value(); };
            double bracket = spec.max_bracket > 0.0 ? spec.max_bracket : default_bracket(m, alpha, t, c);
            std::optional<double> ultimate;
            if (c > pair.delta / pair.rho) {
                ultimate = bounds::ultimate_capital_exp(pair, alpha, c);
                bracket = std::min(bracket, std::max(tol.u, *ultimate));
            }
            out = solve_monotone(p, a, bracket, tol, upper_hint);
            // finite-horizon capital never exceeds the ultimate one; for large c
            // they agree to well below the bisection tolerance
            if (ultimate && out.u > *ultimate) out.u = *ultimate;
            break;
        }
        case Backend::inverse_gaussian: {
            if (c == 0.0) {
                SolveSpec redirected = spec;
                redirected.backend = Backend::clt;
                out = var_capital(m, alpha, t, c, redirected);
                break;
            }
            const DerivedConstants k = derived_constants(m);
            auto p = [&](double u) {
                return u <= 0.0 ? 0.0 : approx::ig_ruin_probability(k.m_big, k.d2_big, u, c, t).value();
            };
            const double bracket = spec.max_bracket > 0.0 ? spec.max_bracket : default_bracket(m, alpha, t, c);
            out = solve_largest_root(p, a, bracket, tol);
            break;
        }
        case Backend::cramer: {
            const ExpPair pair = require_exp_pair(m, "cramer");
            approx::cramer_constants_exp(pair, c);  // throws at c = c*
            auto p = [&](double u) {
                return u <= 0.0 ? 1.0 : approx::cramer_ruin_exp(pair, u, c, t).value();
            };
            const double bracket = spec.max_bracket > 0.0 ? spec.max_bracket : default_bracket(m, alpha, t, c);
            out = solve_monotone(p, a, bracket, tol, upper_hint);
            break;
        }
        case Backend::monte_carlo:
            out = from_estimate(mc::estimate_capitals(m, alpha, c, sim_for(spec, t)).nonruin_cap);
            break;
        case Backend::clt:
            if (c != 0.0) throw Unsupported("nonruin capital: the clt backend applies only at c = 0");
            out.u = approx::var_clt(m, alpha, t, c);
            out.clamped = out.u == 0.0;
            break;
    }
    out.c = c;
    out.kind = CapitalKind::nonruin;
    out.method = method_of(spec.backend);
    return out;
}

CapitalPoint ultimate_capital(const RiskModel& m, Probability alpha, double c, const SolveSpec&) {
    if (!(alpha.value() > 0.0 && alpha.value() < 1.0)) throw DomainError("alpha must lie in (0, 1)");
    if (!(c > equilibrium_price(m))) throw DomainError("u_alpha is infinite for c <= c*");
    CapitalPoint out;
    out.c = c;
    out.kind = CapitalKind::ultimate;
    if (auto pair = as_exp_pair(m)) {
        out.u = bounds::ultimate_capital_exp(*pair, alpha, c);
        out.method = Method::exact_exp;
    } else {
        if (!m.y_law.light_tailed()) {
            throw Unsupported("no finite-c>c* bound available for heavy-tailed claims");
        }
        const auto iv = bounds::ultimate_capital_interval(m, alpha, c);
        out.u = 0.5 * (iv.lower + iv.upper);
        out.lower = iv.lower;
        out.upper = iv.upper;
        out.method = Method::bound_upper;
    }
    out.clamped = out.u == 0.0;
    return out;
}

CurveTable capital_curve(const RiskModel& m, Probability alpha, double t, const std::vector<double>& c_grid,
                         const SolveSpec& spec, const std::vector<CapitalKind>& kinds) {
    for (std::size_t j = 1; j < c_grid.size(); ++j) {
        if (!(c_grid[j] > c_grid[j - 1])) throw DomainError("c grid must be strictly increasing");
    }
    for (double c : c_grid) {
        if (!(c >= 0.0)) throw DomainError("c grid must be nonnegative");
    }
    CurveTable table;
    table.header.emplace_back("c");
    const bool mc_backend = spec.backend == Backend::monte_carlo;
    const std::string method(to_string(method_of(spec.backend)));
    for (CapitalKind k : kinds) {
        const std::string name = std::string(to_string(k)) + "_" +
                                 (k == CapitalKind::ultimate ? std::string("exact") : method);
        table.header.push_back(name);
        if (mc_backend && k != CapitalKind::ultimate) {
            table.header.push_back(name + "_lo");
            table.header.push_back(name + "_hi");
        }
    }
    for (double c : c_grid) table.rows.push_back({c});
    if (c_grid.empty()) return table;

    auto warn = [&](double c, const std::string& col, const std::exception& e) {
        std::ostringstream os;
        os << "c=" << format_double(c) << " " << col << ": " << e.what();
        table.add_meta("warning", os.str());
    };

    std::optional<mc::SimulatedCurve> sim;
    if (mc_backend) {
        try {
            sim = mc::simulate_curve(m, alpha, c_grid, sim_for(spec, t));
            for (const auto& w : sim->warnings) table.add_meta("warning", w);
        } catch (const std::exception& e) {
            warn(c_grid.front(), "mc", e);
        }
    }

    std::size_t col = 1;
    for (CapitalKind k : kinds) {
        const std::string& name = table.header[col];
        std::optional<double> hint;
        for (std::size_t i = 0; i < c_grid.size(); ++i) {
            const double c = c_grid[i];
            auto& row = table.rows[i];
            try {
                if (k == CapitalKind::ultimate) {
                    row.push_back(ultimate_capital(m, alpha, c, spec).u);
                    continue;
                }
                if (mc_backend) {
                    if (!sim) {
                        row.insert(row.end(), 3, std::nullopt);
                        continue;
                    }
                    const auto& pt = sim->points[i];
                    const mc::Estimate& e = k == CapitalKind::var ? pt.var_cap : pt.nonruin_cap;
                    row.push_back(e.point);
                    row.push_back(e.ci_lo);
                    row.push_back(e.ci_hi);
                    continue;
                }
                CapitalPoint p = k == CapitalKind::var ? var_capital(m, alpha, t, c, spec)
                                                       : nonruin_capital(m, alpha, t, c, spec, hint);
                row.push_back(p.u);
                // the non-ruin capital is nonincreasing in c: previous value bounds the next
                if (k == CapitalKind::nonruin && spec.backend != Backend::inverse_gaussian && p.u > 0.0) {
                    hint = p.u * (1.0 + 1e-9) + 1e-9;
                }
            } catch (const std::exception& e) {
                row.push_back(std::nullopt);
                warn(c, name, e);
            }
        }
        col += (mc_backend && k != CapitalKind::ultimate) ? 3 : 1;
    }
    return table;
}

}  // namespace ruincap::capital
