#ifndef HYPERMOMENT_ERROR_HPP
#define HYPERMOMENT_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hypermoment {

enum class ErrorCode {
    RankMismatch,
    OrderMismatch,
    DominanceViolation,
    CoefficientUnavailable,
    InvalidSpec,
    NegativeLinearization,
    UnknownCatalogEntry,
    ExpNonzeroConstant,
    IncompleteSeed,
    TableRangeExceeded,
    DivisionByZero,
    ParseError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::OrderMismatch: return "OrderMismatch";
    case ErrorCode::DominanceViolation: return "DominanceViolation";
    case ErrorCode::CoefficientUnavailable: return "CoefficientUnavailable";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::NegativeLinearization: return "NegativeLinearization";
    case ErrorCode::UnknownCatalogEntry: return "UnknownCatalogEntry";
    case ErrorCode::ExpNonzeroConstant: return "ExpNonzeroConstant";
    case ErrorCode::IncompleteSeed: return "IncompleteSeed";
    case ErrorCode::TableRangeExceeded: return "TableRangeExceeded";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Every failure raised by the library. `details()` carries structured
/// extras, e.g. the missing multi-indices of an incomplete seed.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::vector<std::string> details = {})
        : std::runtime_error(std::string(to_string(code)) + ": " + message)
        , code_(code)
        , details_(std::move(details))
    {
    }

    ErrorCode code() const noexcept { return code_; }
    const std::vector<std::string>& details() const noexcept { return details_; }

private:
    ErrorCode code_;
    std::vector<std::string> details_;
};

} // namespace hypermoment

#endif
