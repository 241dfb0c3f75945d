#include "ruincap/model.hpp"

#include "ruincap/errors.hpp"

namespace ruincap {

namespace {

MomentSet law_moments(const Distribution& d, const char* role) {
    try {
        return moments(d);
    } catch (const MomentUndefined& e) {
        throw MomentUndefined(std::string("constants unavailable: ") + role + " law " + e.what());
    }
}

bool density_bounded(const Distribution& d) {
    if (auto k = d.as<Kummer>()) return k->k > 2.0;
    return true;
}

bool third_finite(const Distribution& d) {
    try {
        return moments(d).third_moment.has_value();
    } catch (const MomentUndefined&) {
        return false;
    }
}

}  // namespace

DerivedConstants derived_constants(const RiskModel& m) {
    const MomentSet t = law_moments(m.t_law, "T");
    const MomentSet y = law_moments(m.y_law, "Y");
    const double et = t.mean, ey = y.mean;
    const double mixed = et * et * y.variance + ey * ey * t.variance;
    DerivedConstants k;
    k.c_star = ey / et;
    k.m_big = et / ey;
    k.d2_big = mixed / (ey * ey * ey);
    k.m_v = ey / et;
    k.d2_v = mixed / (et * et * et);
    k.m_n = 1.0 / et;
    k.d2_n = t.variance / (et * et * et);
    return k;
}

double equilibrium_price(const RiskModel& m) {
    double et, ey;
    try {
        et = mean(m.t_law);
    } catch (const MomentUndefined& e) {
        throw MomentUndefined(std::string("constants unavailable: T law ") + e.what());
    }
    try {
        ey = mean(m.y_law);
    } catch (const MomentUndefined& e) {
        throw MomentUndefined(std::string("constants unavailable: Y law ") + e.what());
    }
    return ey / et;
}

PreconditionReport theorem_preconditions(const RiskModel& m) {
    PreconditionReport r;
    r.t_density_bounded = density_bounded(m.t_law);
    r.y_density_bounded = density_bounded(m.y_law);
    try {
        auto k = derived_constants(m);
        r.variances_finite = true;
        r.positive_d2 = k.d2_big > 0.0;
    } catch (const MomentUndefined&) {
    }
    r.t_third_moment_finite = third_finite(m.t_law);
    r.y_third_moment_finite = third_finite(m.y_law);
    r.y_light_tailed = m.y_law.light_tailed();
    return r;
}

std::vector<std::string> PreconditionReport::violations() const {
    std::vector<std::string> out;
    if (!t_density_bounded) out.emplace_back("density of T is unbounded");
    if (!y_density_bounded) out.emplace_back("density of Y is unbounded");
    if (!variances_finite) out.emplace_back("variance of T or Y is infinite");
    else if (!positive_d2) out.emplace_back("D^2 is not positive");
    if (!t_third_moment_finite) out.emplace_back("E T^3 is infinite");
    if (!y_third_moment_finite) out.emplace_back("E Y^3 is infinite");
    if (!y_light_tailed) out.emplace_back("Y is heavy-tailed: no adjustment coefficient");
    return out;
}

std::optional<ExpPair> as_exp_pair(const RiskModel& m) {
    auto t = m.t_law.as<Exponential>();
    auto y = m.y_law.as<Exponential>();
    if (!t || !y) return std::nullopt;
    return ExpPair{t->rate, y->rate};
}

ExpPair require_exp_pair(const RiskModel& m, std::string_view who) {
    auto p = as_exp_pair(m);
    if (!p) {
        throw Unsupported(std::string(who) + ": exact requires exponential pair (got T " + m.t_law.describe() +
                          ", Y " + m.y_law.describe() + ")");
    }
    return *p;
}

std::string_view to_string(CapitalKind k) {
    switch (k) {
        case CapitalKind::var: return "var";
        case CapitalKind::nonruin: return "nonruin";
        case CapitalKind::ultimate: return "ultimate";
    }
    return "?";
}

std::string_view to_string(Method m) {
    switch (m) {
        case Method::exact_exp: return "exact";
        case Method::clt: return "clt";
        case Method::inverse_gaussian: return "ig";
        case Method::cramer: return "cramer";
        case Method::monte_carlo: return "mc";
        case Method::bound_upper: return "bound_upper";
        case Method::bound_lower: return "bound_lower";
    }
    return "?";
}

}  // namespace ruincap
