#include "ruincap/dist.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "ruincap/detail/quadrature.hpp"
#include "ruincap/errors.hpp"

namespace ruincap {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool positive(double x) { return std::isfinite(x) && x > 0.0; }

void require(bool ok, const std::string& what) {
    if (!ok) throw DomainError(what);
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(10);
    os << x;
    return os.str();
}

// E Y^j for the Kummer law; requires 2j < l.
double kummer_raw_moment(const Kummer& d, int j) {
    double lg = std::lgamma(d.k / 2.0 + j) + std::lgamma(d.l / 2.0 - j) - std::lgamma(d.k / 2.0) -
                std::lgamma(d.l / 2.0) + std::lgamma(j + 1.0) + j * std::log(d.l / d.k);
    return std::exp(lg);
}

// Raw moments up to order 3 where finite (entries past the limit are NaN).
std::array<double, 4> raw_moments(const Distribution& d, int& finite_up_to) {
    std::array<double, 4> m{1.0, NAN, NAN, NAN};
    finite_up_to = 3;
    std::visit(overloaded{
                   [&](const Exponential& e) {
                       m[1] = 1.0 / e.rate;
                       m[2] = 2.0 / (e.rate * e.rate);
                       m[3] = 6.0 / (e.rate * e.rate * e.rate);
                   },
                   [&](const Erlang& e) {
                       double k = e.shape, r = e.rate;
                       m[1] = k / r;
                       m[2] = k * (k + 1.0) / (r * r);
                       m[3] = k * (k + 1.0) * (k + 2.0) / (r * r * r);
                   },
                   [&](const MixtureExp2& e) {
                       double p = e.weight, q = 1.0 - e.weight;
                       for (int j = 1; j <= 3; ++j) {
                           double f = std::tgamma(j + 1.0);
                           m[j] = p * f / std::pow(e.rate1, j) + q * f / std::pow(e.rate2, j);
                       }
                   },
                   [&](const Pareto& e) {
                       double a = e.shape, b = e.scale;
                       finite_up_to = 0;
                       if (a > 1.0) { m[1] = 1.0 / ((a - 1.0) * b); finite_up_to = 1; }
                       if (a > 2.0) { m[2] = 2.0 / ((a - 1.0) * (a - 2.0) * b * b); finite_up_to = 2; }
                       if (a > 3.0) {
                           m[3] = 6.0 / ((a - 1.0) * (a - 2.0) * (a - 3.0) * b * b * b);
                           finite_up_to = 3;
                       }
                   },
                   [&](const Kummer& e) {
                       finite_up_to = 0;
                       for (int j = 1; j <= 3; ++j) {
                           if (2.0 * j < e.l) {
                               m[j] = kummer_raw_moment(e, j);
                               finite_up_to = j;
                           }
                       }
                   },
               },
               d.law());
    return m;
}

std::string moment_constraint(const Distribution& d, int order) {
    if (auto p = d.as<Pareto>()) {
        return d.describe() + ": moment of order " + std::to_string(order) + " requires a > " +
               std::to_string(order) + " (a = " + fmt(p->shape) + ")";
    }
    if (auto k = d.as<Kummer>()) {
        return d.describe() + ": moment of order " + std::to_string(order) + " requires l > " +
               std::to_string(2 * order) + " (l = " + fmt(k->l) + ")";
    }
    return d.describe() + ": moment undefined";
}

double erlang_survival(double rate, int shape, double x) {
    // sum_{j<k} e^{-rx} (rx)^j / j!, accumulated in log space
    double rx = rate * x;
    double term = std::exp(-rx);
    if (term == 0.0) {
        double s = 0.0;
        for (int j = 0; j < shape; ++j) {
            s += std::exp(-rx + j * std::log(rx) - std::lgamma(j + 1.0));
        }
        return s;
    }
    double s = term;
    for (int j = 1; j < shape; ++j) {
        term *= rx / j;
        s += term;
    }
    return std::min(1.0, s);
}

[[noreturn]] void kummer_unsupported(const char* what) {
    throw Unsupported(std::string("kummer: ") + what +
                      " is unsupported (needs the confluent hypergeometric U function)");
}

}  // namespace

Distribution::Distribution(Law law) : law_(law) {
    std::visit(overloaded{
                   [](const Exponential& e) { require(positive(e.rate), "exponential: rate must be > 0"); },
                   [](const Erlang& e) {
                       require(positive(e.rate), "erlang: rate must be > 0");
                       require(e.shape >= 1, "erlang: shape must be a positive integer");
                   },
                   [](const MixtureExp2& e) {
                       require(positive(e.rate1), "mixture2: rate1 must be > 0");
                       require(positive(e.rate2), "mixture2: rate2 must be > 0");
                       require(e.weight > 0.0 && e.weight < 1.0, "mixture2: weight must lie in (0,1)");
                   },
                   [](const Pareto& e) {
                       require(positive(e.shape), "pareto: a must be > 0");
                       require(positive(e.scale), "pareto: b must be > 0");
                   },
                   [](const Kummer& e) {
                       require(positive(e.k), "kummer: k must be > 0");
                       require(positive(e.l), "kummer: l must be > 0");
                   },
               },
               law_);
}

std::string_view Distribution::family() const noexcept {
    static constexpr std::array<std::string_view, 5> names{"exponential", "erlang", "mixture2", "pareto",
                                                           "kummer"};
    return names[law_.index()];
}

std::string Distribution::describe() const {
    return std::visit(
        overloaded{
            [](const Exponential& e) { return "exponential(rate=" + fmt(e.rate) + ")"; },
            [](const Erlang& e) {
                return "erlang(rate=" + fmt(e.rate) + ",shape=" + std::to_string(e.shape) + ")";
            },
            [](const MixtureExp2& e) {
                return "mixture2(rate1=" + fmt(e.rate1) + ",rate2=" + fmt(e.rate2) + ",weight=" + fmt(e.weight) +
                       ")";
            },
            [](const Pareto& e) { return "pareto(a=" + fmt(e.shape) + ",b=" + fmt(e.scale) + ")"; },
            [](const Kummer& e) { return "kummer(k=" + fmt(e.k) + ",l=" + fmt(e.l) + ")"; },
        },
        law_);
}

bool Distribution::light_tailed() const noexcept { return mgf_abscissa() > 0.0; }

double Distribution::mgf_abscissa() const noexcept {
    return std::visit(overloaded{
                          [](const Exponential& e) { return e.rate; },
                          [](const Erlang& e) { return e.rate; },
                          [](const MixtureExp2& e) { return std::min(e.rate1, e.rate2); },
                          [](const Pareto&) { return 0.0; },
                          [](const Kummer&) { return 0.0; },
                      },
                      law_);
}

double mean(const Distribution& d) {
    int n = 0;
    auto m = raw_moments(d, n);
    if (n < 1) throw MomentUndefined(moment_constraint(d, 1));
    return m[1];
}

MomentSet moments(const Distribution& d) {
    int n = 0;
    auto m = raw_moments(d, n);
    if (n < 2) throw MomentUndefined(moment_constraint(d, n < 1 ? 1 : 2));
    MomentSet out;
    out.mean = m[1];
    out.variance = m[2] - m[1] * m[1];
    // closed forms avoid cancellation in m2 - m1^2
    if (auto p = d.as<Pareto>()) {
        double a = p->shape, b = p->scale;
        out.variance = a / ((a - 1.0) * (a - 1.0) * (a - 2.0) * b * b);
    } else if (auto e = d.as<Erlang>()) {
        out.variance = e->shape / (e->rate * e->rate);
    } else if (auto x = d.as<Exponential>()) {
        out.variance = 1.0 / (x->rate * x->rate);
    }
    if (n >= 3) out.third_moment = m[3];
    return out;
}

double pdf(const Distribution& d, double x) {
    if (x < 0.0) return 0.0;
    return std::visit(overloaded{
                          [x](const Exponential& e) { return e.rate * std::exp(-e.rate * x); },
                          [x](const Erlang& e) {
                              if (x == 0.0) return e.shape == 1 ? e.rate : 0.0;
                              return std::exp(e.shape * std::log(e.rate) + (e.shape - 1) * std::log(x) -
                                              e.rate * x - std::lgamma(e.shape));
                          },
                          [x](const MixtureExp2& e) {
                              return e.weight * e.rate1 * std::exp(-e.rate1 * x) +
                                     (1.0 - e.weight) * e.rate2 * std::exp(-e.rate2 * x);
                          },
                          [x](const Pareto& e) {
                              return e.shape * e.scale * std::pow(x * e.scale + 1.0, -(e.shape + 1.0));
                          },
                          [](const Kummer&) -> double { kummer_unsupported("density"); },
                      },
                      d.law());
}

double survival(const Distribution& d, double x) {
    if (x <= 0.0) {
        if (d.as<Kummer>()) kummer_unsupported("distribution function");
        return 1.0;
    }
    return std::visit(overloaded{
                          [x](const Exponential& e) { return std::exp(-e.rate * x); },
                          [x](const Erlang& e) { return erlang_survival(e.rate, e.shape, x); },
                          [x](const MixtureExp2& e) {
                              return e.weight * std::exp(-e.rate1 * x) + (1.0 - e.weight) * std::exp(-e.rate2 * x);
                          },
                          [x](const Pareto& e) { return std::pow(x * e.scale + 1.0, -e.shape); },
                          [](const Kummer&) -> double { kummer_unsupported("distribution function"); },
                      },
                      d.law());
}

double cdf(const Distribution& d, double x) {
    if (x <= 0.0) {
        if (d.as<Kummer>()) kummer_unsupported("distribution function");
        return 0.0;
    }
    return std::visit(overloaded{
                          [x](const Exponential& e) { return -std::expm1(-e.rate * x); },
                          [x](const Pareto& e) { return -std::expm1(-e.shape * std::log1p(x * e.scale)); },
                          [&](const auto&) { return 1.0 - survival(d, x); },
                      },
                      d.law());
}

// 1 - u is exact for the 53-bit uniforms of RandomStream, so log(1 - u)
// loses nothing against log1p(-u) and is cheaper.
double exponential_from_uniform(double rate, double u) { return -std::log(1.0 - u) / rate; }

double pareto_from_uniform(double a, double b, double u) { return std::expm1(-std::log(1.0 - u) / a) / b; }

double sample(const Distribution& d, RandomStream& rng) {
    return std::visit(overloaded{
                          [&](const Exponential& e) { return exponential_from_uniform(e.rate, rng.uniform()); },
                          [&](const Erlang& e) {
                              double s = 0.0;
                              for (int j = 0; j < e.shape; ++j) s -= std::log(1.0 - rng.uniform());
                              return s / e.rate;
                          },
                          [&](const MixtureExp2& e) {
                              double rate = rng.uniform() < e.weight ? e.rate1 : e.rate2;
                              return exponential_from_uniform(rate, rng.uniform());
                          },
                          [&](const Pareto& e) { return pareto_from_uniform(e.shape, e.scale, rng.uniform()); },
                          [](const Kummer&) -> double { kummer_unsupported("sampling"); },
                      },
                      d.law());
}

std::optional<double> mgf(const Distribution& d, double r) {
    if (!std::isfinite(r)) throw DomainError("mgf: r must be finite");
    if (r == 0.0) return 1.0;
    if (r >= d.mgf_abscissa()) return std::nullopt;
    return std::visit(
        overloaded{
            [r](const Exponential& e) -> std::optional<double> { return e.rate / (e.rate - r); },
            [r](const Erlang& e) -> std::optional<double> {
                return std::exp(e.shape * std::log(e.rate / (e.rate - r)));
            },
            [r](const MixtureExp2& e) -> std::optional<double> {
                return e.weight * e.rate1 / (e.rate1 - r) + (1.0 - e.weight) * e.rate2 / (e.rate2 - r);
            },
            [r](const Pareto& e) -> std::optional<double> {
                // substitute v = F(x): x = ((1-v)^{-1/a} - 1)/b
                double a = e.shape, b = e.scale;
                auto f = [=](double v) {
                    if (v >= 1.0) return 0.0;
                    double x = std::expm1(-std::log1p(-v) / a) / b;
                    return std::exp(r * x);
                };
                std::array<double, 4> knots{0.5, 0.9, 0.99, 0.999};
                return detail::integrate(f, 0.0, 1.0, knots, {}, "pareto mgf").value;
            },
            [r](const Kummer& e) -> std::optional<double> {
                // Y = E (l/k) B' with E ~ Exp(1), B' = P/(1-P), P ~ Beta(k/2, l/2):
                // E e^{rY} = E (1-P) / (1 - P - r (l/k) P)
                double a = e.k / 2.0, b = e.l / 2.0, s = r * e.l / e.k;
                double lbeta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
                auto f = [=](double p) {
                    if (p <= 0.0 || p >= 1.0) return 0.0;
                    double w = std::exp((a - 1.0) * std::log(p) + (b - 1.0) * std::log1p(-p) - lbeta);
                    return w * (1.0 - p) / (1.0 - p - s * p);
                };
                double mu = a / (a + b);
                double sd = std::sqrt(a * b / ((a + b) * (a + b) * (a + b + 1.0)));
                std::vector<double> knots;
                for (double z : {-10.0, -6.0, -3.0, -1.0, 0.0, 1.0, 3.0, 6.0, 10.0}) {
                    double p = mu + z * sd;
                    if (p > 0.0 && p < 1.0) knots.push_back(p);
                }
                return detail::integrate(f, 0.0, 1.0, knots, {}, "kummer mgf").value;
            },
        },
        d.law());
}

}  // namespace ruincap
