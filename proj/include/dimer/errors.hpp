#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dimer {

enum class ErrorCode {
    ParseError,
    NonBipartite,
    DanglingEdgeReference,
    RotationMismatch,
    Disconnected,
    EulerCharacteristicNonzero,
    DegenerateHomology,
    DegenerateCollapse,
    NotClosed,
    NoPerfectMatching,
    DegeneratePolygon,
    NonUniqueExtremal,
    DimensionMismatch,
    InconsistentModel,
    CrossCheckFailure,
    InvalidLattice,
    ParityViolation,
    NotParallelogram,
    SearchExhausted,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NonBipartite: return "NonBipartite";
    case ErrorCode::DanglingEdgeReference: return "DanglingEdgeReference";
    case ErrorCode::RotationMismatch: return "RotationMismatch";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::EulerCharacteristicNonzero: return "EulerCharacteristicNonzero";
    case ErrorCode::DegenerateHomology: return "DegenerateHomology";
    case ErrorCode::DegenerateCollapse: return "DegenerateCollapse";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::NoPerfectMatching: return "NoPerfectMatching";
    case ErrorCode::DegeneratePolygon: return "DegeneratePolygon";
    case ErrorCode::NonUniqueExtremal: return "NonUniqueExtremal";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InconsistentModel: return "InconsistentModel";
    case ErrorCode::CrossCheckFailure: return "CrossCheckFailure";
    case ErrorCode::InvalidLattice: return "InvalidLattice";
    case ErrorCode::ParityViolation: return "ParityViolation";
    case ErrorCode::NotParallelogram: return "NotParallelogram";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI exit-code mapping) can branch on it.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

} // namespace dimer
