#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "ruincap/rng.hpp"

namespace ruincap {

// Positive laws for inter-claim times T and claim sizes Y.

struct Exponential {
    double rate;
};

struct Erlang {
    double rate;
    int shape;
};

// weight * Exp(rate1) + (1 - weight) * Exp(rate2)
struct MixtureExp2 {
    double rate1;
    double rate2;
    double weight;
};

// Lomax form: f(x) = a b / (x b + 1)^{a + 1}, x > 0.
struct Pareto {
    double shape;  // a
    double scale;  // b
};

// Kummer law with parameters (k, l); density involves the confluent
// hypergeometric U function. Only moments and the moment generating function
// on r <= 0 are available.
struct Kummer {
    double k;
    double l;
};

class Distribution {
public:
    using Law = std::variant<Exponential, Erlang, MixtureExp2, Pareto, Kummer>;

    // Validates parameters; throws DomainError.
    explicit Distribution(Law law);

    static Distribution exponential(double rate) { return Distribution(Exponential{rate}); }
    static Distribution erlang(double rate, int shape) { return Distribution(Erlang{rate, shape}); }
    static Distribution mixture2(double rate1, double rate2, double weight) {
        return Distribution(MixtureExp2{rate1, rate2, weight});
    }
    static Distribution pareto(double a, double b) { return Distribution(Pareto{a, b}); }
    static Distribution kummer(double k, double l) { return Distribution(Kummer{k, l}); }

    const Law& law() const noexcept { return law_; }

    template <class T>
    const T* as() const noexcept { return std::get_if<T>(&law_); }

    // "exponential", "erlang", "mixture2", "pareto", "kummer"
    std::string_view family() const noexcept;

    // e.g. "pareto(a=4,b=0.35)"
    std::string describe() const;

    // Finite moment generating function on some r > 0.
    bool light_tailed() const noexcept;

    // Supremum of r with a finite moment generating function (0 for heavy tails).
    double mgf_abscissa() const noexcept;

private:
    Law law_;
};

struct MomentSet {
    double mean;
    double variance;
    std::optional<double> third_moment;  // raw E X^3; absent when infinite
};

// Mean only; throws MomentUndefined (Pareto a <= 1, Kummer l <= 2).
double mean(const Distribution& d);

// Mean, variance and raw third moment. Throws MomentUndefined when the
// variance does not exist (Pareto a <= 2, Kummer l <= 4).
MomentSet moments(const Distribution& d);

// Density at x > 0. Throws Unsupported for Kummer.
double pdf(const Distribution& d, double x);

// c.d.f. and survival function. Throw Unsupported for Kummer.
double cdf(const Distribution& d, double x);
double survival(const Distribution& d, double x);

// One draw. Throws Unsupported for Kummer.
double sample(const Distribution& d, RandomStream& rng);

// Inversion samplers, exposed for their closed forms.
double exponential_from_uniform(double rate, double u);
double pareto_from_uniform(double a, double b, double u);

// E exp(r X), or std::nullopt when the integral diverges (r at or beyond the
// abscissa; every r > 0 for Pareto and Kummer).
std::optional<double> mgf(const Distribution& d, double r);

}  // namespace ruincap
