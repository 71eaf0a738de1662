#pragma once

#include <stdexcept>
#include <string>

namespace fod {

/// Outcome classification shared by all point evaluations.
enum class Status {
    ok,
    domain_error,
    pole,
    no_convergence,
};

inline const char* status_name(Status s) {
    switch (s) {
        case Status::ok: return "ok";
        case Status::domain_error: return "domain_error";
        case Status::pole: return "pole";
        case Status::no_convergence: return "no_convergence";
    }
    return "unknown";
}

/// Malformed expression text. Carries the byte offset of the offending token.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string msg, std::size_t position)
        : std::runtime_error(std::move(msg)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Precondition violation on an operator argument (pole of gamma, x <= 0, ...).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A limit or quadrature refinement failed to settle within its budget.
class NonConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace fod
