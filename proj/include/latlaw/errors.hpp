#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace latlaw {

/// Parameter outside the admissible range of an operation or law.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Result not representable in double precision (e.g. exp overflow).
class RangeError : public std::range_error {
public:
    using std::range_error::range_error;
};

/// Series division by a series whose constant term vanishes.
class SingularError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Constructor-level rejection of a parameter combination that a
/// characterization forbids (n <= m, p >= p0, b > p, ...).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class FactorizationInvalid : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Coefficients below -pmf_tol. Carries the offending indices.
class NotAValidPMF : public std::runtime_error {
public:
    NotAValidPMF(std::string what, std::vector<std::size_t> indices)
        : std::runtime_error(std::move(what)), indices_(std::move(indices)) {}

    const std::vector<std::size_t>& indices() const noexcept { return indices_; }

private:
    std::vector<std::size_t> indices_;
};

/// Untracked tail mass too large for inverse-CDF sampling at the configured order.
class TailTooHeavy : public std::runtime_error {
public:
    TailTooHeavy(std::string what, double tail)
        : std::runtime_error(std::move(what)), tail_(tail) {}

    double tail() const noexcept { return tail_; }

private:
    double tail_;
};

}  // namespace latlaw
