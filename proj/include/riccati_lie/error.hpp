#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace riccati_lie {

/// Error classes surfaced by the library. The CLI maps each to a distinct
/// exit code.
enum class ErrorKind {
    parse,       ///< malformed config, timefn text or CSV
    domain,      ///< point outside O / W+, or coefficient sign condition violated
    genericity,  ///< degenerate configuration for the superposition rule
    branch,      ///< superposition bracket non-positive: no p0 < 0 solution
    numeric,     ///< integrator failure (step underflow, step budget)
    range,       ///< query outside a trajectory's time range
    contract,    ///< caller broke an operation's input contract
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ParseError : public Error {
public:
    /// `position` is a 0-based character or token offset, depending on the parser.
    ParseError(const std::string& what, std::size_t position)
        : Error(ErrorKind::parse, what), position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

class GenericityError : public Error {
public:
    explicit GenericityError(const std::string& what) : Error(ErrorKind::genericity, what) {}

protected:
    GenericityError(ErrorKind kind, const std::string& what) : Error(kind, what) {}
};

class BranchError : public GenericityError {
public:
    explicit BranchError(const std::string& what) : GenericityError(ErrorKind::branch, what) {}
};

class RangeError : public Error {
public:
    explicit RangeError(const std::string& what) : Error(ErrorKind::range, what) {}
};

class ContractError : public Error {
public:
    explicit ContractError(const std::string& what) : Error(ErrorKind::contract, what) {}
};

/// The integrator could not keep a trial state inside the guarded domain.
/// `last_valid_t` is the time of the last accepted sample.
class GuardViolation : public Error {
public:
    GuardViolation(const std::string& what, double last_valid_t)
        : Error(ErrorKind::domain, what), last_valid_t_(last_valid_t) {}
    double last_valid_t() const noexcept { return last_valid_t_; }

private:
    double last_valid_t_;
};

class StepUnderflow : public Error {
public:
    StepUnderflow(const std::string& what, double t) : Error(ErrorKind::numeric, what), t_(t) {}
    double t() const noexcept { return t_; }

private:
    double t_;
};

}  // namespace riccati_lie
