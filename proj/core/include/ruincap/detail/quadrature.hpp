#pragma once

#include <functional>
#include <span>
#include <string>

namespace ruincap::detail {

using Integrand = std::function<double(double)>;

struct QuadratureOptions {
    double rel_tol = 1e-12;      // stop when total error <= max(abs_tol, rel_tol*|I|)
    double abs_tol = 1e-13;
    double fail_abs = 1e-7;      // error estimate above max(fail_abs, fail_rel*L1) -> failure
    double fail_rel = 1e-6;
    int max_panels = 2000;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    double l1 = 0.0;
};

// Globally adaptive 21-point Gauss-Kronrod on [a, b]: the panel with the
// largest error estimate is bisected until the tolerance is met or the panel
// budget runs out. Starts from the given breakpoints (those outside (a, b)
// are ignored). Throws IntegrationFailure when the
// summed error estimate exceeds the failure thresholds; `what` names the
// quantity in the error message.
QuadratureResult integrate(const Integrand& f, double a, double b,
                           std::span<const double> breakpoints = {},
                           const QuadratureOptions& options = {},
                           const std::string& what = "integral");

// Fixed 16-node Gauss-Legendre rule on `panels` equal subintervals of [a, b].
double gauss_legendre_composite(const Integrand& f, double a, double b, int panels);

}  // namespace ruincap::detail
