#pragma once

#include <stdexcept>
#include <string>

namespace ruincap {

// Invalid argument or parameter outside the admissible domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Base for quadrature and root-bracketing failures.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IntegrationFailure : public NumericalFailure {
public:
    IntegrationFailure(const std::string& what, double error_estimate)
        : NumericalFailure(what + " (error estimate " + std::to_string(error_estimate) + ")"),
          error_estimate_(error_estimate) {}

    double error_estimate() const noexcept { return error_estimate_; }

private:
    double error_estimate_;
};

class BracketFailure : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

// The requested quantity does not exist or is not supported for this model:
// undefined moments, heavy-tailed claims with no adjustment coefficient,
// Kummer sampling, exact formulas requested for non-exponential pairs, ...
class ModelIncompatible : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MomentUndefined : public ModelIncompatible {
public:
    using ModelIncompatible::ModelIncompatible;
};

class Unsupported : public ModelIncompatible {
public:
    using ModelIncompatible::ModelIncompatible;
};

}  // namespace ruincap
