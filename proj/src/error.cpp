#include "turfbbn/error.hpp"

namespace turfbbn {

std::string_view error_code_name(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::CptShapeMismatch: return "CptShapeMismatch";
    case ErrorCode::RowNotNormalized: return "RowNotNormalized";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::UnknownState: return "UnknownState";
    case ErrorCode::InvalidVariable: return "InvalidVariable";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InfeasibleConstraints: return "InfeasibleConstraints";
    case ErrorCode::TooManyVariables: return "TooManyVariables";
    case ErrorCode::UnknownEdge: return "UnknownEdge";
    case ErrorCode::ZeroProbabilityEvidence: return "ZeroProbabilityEvidence";
    case ErrorCode::AllZeroWeights: return "AllZeroWeights";
    case ErrorCode::InvalidQuery: return "InvalidQuery";
    case ErrorCode::ThresholdNotACutPoint: return "ThresholdNotACutPoint";
    case ErrorCode::InvalidArrangement: return "InvalidArrangement";
    case ErrorCode::DegenerateGeometry: return "DegenerateGeometry";
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::AllZeroDifferences: return "AllZeroDifferences";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::RangeError: return "RangeError";
    case ErrorCode::UncoveredValue: return "UncoveredValue";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

}  // namespace turfbbn
