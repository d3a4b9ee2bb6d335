#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace rev {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Lexical or structural error in an input file; positions are 1-based.
struct ParseError : Error {
    ParseError(std::string origin_, std::size_t line_, std::size_t col_, const std::string& msg)
        : Error(origin_ + ":" + std::to_string(line_) + ":" + std::to_string(col_) + ": " + msg),
          origin(std::move(origin_)), line(line_), col(col_) {}

    std::string origin;
    std::size_t line = 0;
    std::size_t col = 0;
};

/// Input is syntactically fine but uses a construct outside the supported fragment.
struct UnsupportedFeature : ParseError {
    UnsupportedFeature(std::string origin_, std::size_t line_, std::size_t col_,
                       std::string feature_)
        : ParseError(std::move(origin_), line_, col_, "unsupported feature: " + feature_),
          feature(std::move(feature_)) {}

    std::string feature;
};

struct UnknownFact : ParseError {
    UnknownFact(std::string origin_, std::size_t line_, std::size_t col_, std::string fact_)
        : ParseError(std::move(origin_), line_, col_, "unknown fact: " + fact_),
          fact(std::move(fact_)) {}

    std::string fact;
};

/// Construction of a Domain refused because well-formedness violations remain.
struct DomainError : Error {
    explicit DomainError(std::string msg, std::vector<std::string> violations_ = {})
        : Error(std::move(msg)), violations(std::move(violations_)) {}

    std::vector<std::string> violations;
};

struct PreconditionViolated : Error {
    PreconditionViolated(std::string action_, std::vector<std::string> missing_)
        : Error(format(action_, missing_)), action(std::move(action_)),
          missing(std::move(missing_)) {}

    std::string action;
    std::vector<std::string> missing;

private:
    static std::string format(const std::string& a, const std::vector<std::string>& m) {
        std::string s = "action '" + a + "' is not applicable; missing facts:";
        for (const auto& f : m) s += " " + f;
        return s;
    }
};

struct UniverseMismatch : Error {
    UniverseMismatch(std::size_t lhs_, std::size_t rhs_)
        : Error("fact-universe mismatch: " + std::to_string(lhs_) + " vs " +
                std::to_string(rhs_)),
          lhs(lhs_), rhs(rhs_) {}

    std::size_t lhs;
    std::size_t rhs;
};

struct EnumerationCapExceeded : Error {
    EnumerationCapExceeded(std::string what_, std::size_t cap_, std::size_t size_)
        : Error(what_ + " (cap " + std::to_string(cap_) + ", size " + std::to_string(size_) + ")"),
          cap(cap_), size(size_) {}

    std::size_t cap;
    std::size_t size;
};

struct PhiNotSupported : Error {
    using Error::Error;
};

struct SolverError : Error {
    using Error::Error;
};

struct SolverNotFound : SolverError {
    using SolverError::SolverError;
};

struct SolverCrashed : SolverError {
    SolverCrashed(const std::string& msg, std::string raw_)
        : SolverError(msg), raw(std::move(raw_)) {}

    std::string raw;
};

/// Solver ran but its output could not be interpreted.
struct SolverOutputError : SolverError {
    SolverOutputError(const std::string& msg, std::string raw_)
        : SolverError(msg), raw(std::move(raw_)) {}

    std::string raw;
};

struct InconsistentModel : Error {
    using Error::Error;
};

} // namespace rev
