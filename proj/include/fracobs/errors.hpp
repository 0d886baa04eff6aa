#pragma once

#include <stdexcept>
#include <string>

namespace fracobs {

struct PoleError : std::domain_error {
    explicit PoleError(const std::string& msg) : std::domain_error(msg) {}
};

struct OverflowError : std::range_error {
    explicit OverflowError(const std::string& msg) : std::range_error(msg) {}
};

// Requested tolerance could not be met by any evaluation method.
struct AccuracyError : std::runtime_error {
    explicit AccuracyError(const std::string& msg) : std::runtime_error(msg) {}
};

// Series/quadrature failed to stabilize inside its documented domain.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DomainError : std::domain_error {
    explicit DomainError(const std::string& msg) : std::domain_error(msg) {}
};

struct GridMismatchError : std::invalid_argument {
    explicit GridMismatchError(const std::string& msg) : std::invalid_argument(msg) {}
};

struct EigenFailure : std::runtime_error {
    explicit EigenFailure(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotObservableError : std::runtime_error {
    explicit NotObservableError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConventionError : std::invalid_argument {
    explicit ConventionError(const std::string& msg) : std::invalid_argument(msg) {}
};

struct ConfigError : std::invalid_argument {
    explicit ConfigError(const std::string& msg) : std::invalid_argument(msg) {}
};

}  // namespace fracobs
