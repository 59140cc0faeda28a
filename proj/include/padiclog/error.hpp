#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace padiclog {

enum class ErrorKind {
    InvalidArgument,
    ParseError,
    DenominatorBudgetExceeded,
    DivisionByZero,
    PrecisionLoss,
    PrecisionExhausted,
    Indeterminate,
    HypothesisFailed,
    NotInImage,
    NotIntegral,
    NotFiltrationAdapted,
    SingularOperator,
    DegenerateInput,
    SearchExhausted,
    IntegralityViolation,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// that callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    /// True for the kinds that signal a precision shortfall rather than a
    /// definite mathematical failure.
    bool is_precision_issue() const noexcept {
        return kind_ == ErrorKind::PrecisionLoss || kind_ == ErrorKind::PrecisionExhausted ||
               kind_ == ErrorKind::Indeterminate;
    }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DenominatorBudgetExceeded: return "DenominatorBudgetExceeded";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::PrecisionLoss: return "PrecisionLoss";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::Indeterminate: return "Indeterminate";
    case ErrorKind::HypothesisFailed: return "HypothesisFailed";
    case ErrorKind::NotInImage: return "NotInImage";
    case ErrorKind::NotIntegral: return "NotIntegral";
    case ErrorKind::NotFiltrationAdapted: return "NotFiltrationAdapted";
    case ErrorKind::SingularOperator: return "SingularOperator";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::SearchExhausted: return "SearchExhausted";
    case ErrorKind::IntegralityViolation: return "IntegralityViolation";
    }
    return "Unknown";
}

} // namespace padiclog
