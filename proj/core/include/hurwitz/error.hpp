#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hurwitz {

enum class ErrorCode {
    IrreducibleFactor,
    ZeroForm,
    ZeroInput,
    NotReduced,
    ConductorInequalityViolated,
    LeadingExponentDivisibleByP,
    PlaceOutsideEdge,
    ShapeViolation,
    TrunkNotAllowed,
    DepthTooHigh,
    NoRootInField,
    NonPositiveSolution,
    PreconditionViolated,
    SearchFailed,
    TargetInfeasible,
    FieldMismatch,
    ParseError,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::optional<int> detail = std::nullopt);

    ErrorCode code() const noexcept { return code_; }
    // Degree of the irreducible factor, violated level, required exponent or
    // suggested extension degree, depending on the code.
    std::optional<int> detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    std::optional<int> detail_;
};

}  // namespace hurwitz
