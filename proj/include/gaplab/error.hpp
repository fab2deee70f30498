#pragma once

#include <stdexcept>
#include <string>

namespace gaplab {

/// Invalid domain, potential, or run configuration.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Numerical failure inside a solver or a derived-field computation.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NoConvergence : public SolverError {
public:
    NoConvergence(const std::string& what, double residual1, double residual2, int iterations)
        : SolverError(what), residual1_(residual1), residual2_(residual2), iterations_(iterations) {}

    double residual1() const noexcept { return residual1_; }
    double residual2() const noexcept { return residual2_; }
    int iterations() const noexcept { return iterations_; }

private:
    double residual1_;
    double residual2_;
    int iterations_;
};

class EmptyMask : public SolverError {
public:
    using SolverError::SolverError;
};

class ZeroDenominator : public SolverError {
public:
    using SolverError::SolverError;
};

class ExtrapolationUnstable : public SolverError {
public:
    using SolverError::SolverError;
};

/// A hypothesis gate of an estimate fails; the check is skipped, not failed.
class HypothesisFailed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a formula.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class NotADisk : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace gaplab
