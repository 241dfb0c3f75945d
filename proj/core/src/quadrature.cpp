#include "ruincap/detail/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ruincap/errors.hpp"

namespace ruincap::detail {

namespace {

struct Panel {
    double a, b, value, error, l1;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel evaluate(const Integrand& f, double a, double b, const std::string& what) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
    Panel p{a, b, 0.0, 0.0, 0.0};
    p.value = GK::integrate(f, a, b, 0, 0.0, &p.error, &p.l1);
    if (!std::isfinite(p.value) || !std::isfinite(p.error)) {
        throw IntegrationFailure(what + ": non-finite integrand on [" + std::to_string(a) + ", " +
                                     std::to_string(b) + "]",
                                 p.error);
    }
    return p;
}

}  // namespace

QuadratureResult integrate(const Integrand& f, double a, double b,
                           std::span<const double> breakpoints,
                           const QuadratureOptions& options, const std::string& what) {
    QuadratureResult result;
    if (!(b > a)) return result;

    std::vector<double> knots{a};
    for (double p : breakpoints) {
        if (p > a && p < b && std::isfinite(p)) knots.push_back(p);
    }
    knots.push_back(b);
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

    std::priority_queue<Panel> heap;
    double value = 0.0, error = 0.0, l1 = 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        Panel p = evaluate(f, knots[i], knots[i + 1], what);
        value += p.value;
        error += p.error;
        l1 += p.l1;
        heap.push(p);
    }
    int panels = static_cast<int>(heap.size());
    while (error > std::max(options.abs_tol, options.rel_tol * std::abs(value)) && panels < options.max_panels) {
        Panel worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) break;  // cannot split further
        heap.pop();
        Panel left = evaluate(f, worst.a, mid, what);
        Panel right = evaluate(f, mid, worst.b, what);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        l1 += left.l1 + right.l1 - worst.l1;
        heap.push(left);
        heap.push(right);
        ++panels;
    }
    // re-sum to shed drift from the running updates
    value = error = l1 = 0.0;
    while (!heap.empty()) {
        value += heap.top().value;
        error += heap.top().error;
        l1 += heap.top().l1;
        heap.pop();
    }
    result.value = value;
    result.error = error;
    result.l1 = l1;
    if (error > std::max(options.fail_abs, options.fail_rel * l1)) {
        throw IntegrationFailure(what + ": quadrature did not converge", error);
    }
    return result;
}

double gauss_legendre_composite(const Integrand& f, double a, double b, int panels) {
    using GL = boost::math::quadrature::gauss<double, 16>;
    const double width = (b - a) / panels;
    double sum = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double lo = a + i * width;
        const double hi = (i + 1 == panels) ? b : lo + width;
        sum += GL::integrate(f, lo, hi);
    }
    return sum;
}

}  // namespace ruincap::detail
