#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace turfbbn {

enum class ErrorCode {
    // network structure
    CycleDetected,
    CptShapeMismatch,
    RowNotNormalized,
    UnknownVariable,
    UnknownState,
    InvalidVariable,
    DuplicateEdge,
    ParseError,
    // learning
    EmptyDataset,
    InvalidConfig,
    InfeasibleConstraints,
    TooManyVariables,
    UnknownEdge,
    // inference
    ZeroProbabilityEvidence,
    AllZeroWeights,
    InvalidQuery,
    ThresholdNotACutPoint,
    // fishery metrics
    InvalidArrangement,
    DegenerateGeometry,
    EmptySample,
    AllZeroDifferences,
    // pipeline
    SchemaError,
    RangeError,
    UncoveredValue,
    InvalidArgument,
};

std::string_view error_code_name(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (CLI exit codes, HTTP status mapping) can dispatch on it.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace turfbbn
