#pragma once

#include <stdexcept>
#include <string>

namespace hardcore {

// Raised when a request is outside the supported mathematical domain
// (non-attainable distance, sliding or exceptional value, bad site).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidSite : public DomainError {
public:
    using DomainError::DomainError;
};

class UnsupportedCase : public DomainError {
public:
    using DomainError::DomainError;
};

class CommensurabilityError : public DomainError {
public:
    using DomainError::DomainError;
};

// Raised when an exact computation would exceed its configured size limit.
class BudgetError : public std::runtime_error {
public:
    BudgetError(const std::string& what, long long limit)
        : std::runtime_error(what + " (limit " + std::to_string(limit) + ")"), limit_(limit) {}
    long long limit() const noexcept { return limit_; }

private:
    long long limit_;
};

}  // namespace hardcore
