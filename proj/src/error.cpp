#include "iprctl/error.hpp"

namespace iprctl {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NegativeWeight: return "NegativeWeight";
        case ErrorCode::NotNormalized: return "NotNormalized";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::EpsOutOfRange: return "EpsOutOfRange";
        case ErrorCode::IncoherentCredalSet: return "IncoherentCredalSet";
        case ErrorCode::StateSpaceTooLarge: return "StateSpaceTooLarge";
        case ErrorCode::ImpreciseModelInPreciseOp: return "ImpreciseModelInPreciseOp";
        case ErrorCode::UnknownState: return "UnknownState";
        case ErrorCode::NegativeHorizon: return "NegativeHorizon";
        case ErrorCode::HorizonExceeded: return "HorizonExceeded";
        case ErrorCode::MissingRewards: return "MissingRewards";
        case ErrorCode::NegativeBudget: return "NegativeBudget";
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::UnknownAtom: return "UnknownAtom";
        case ErrorCode::PreciseQueryOnImpreciseModel: return "PreciseQueryOnImpreciseModel";
        case ErrorCode::FileNotFound: return "FileNotFound";
        case ErrorCode::SchemaError: return "SchemaError";
        case ErrorCode::ExplosionGuardTripped: return "ExplosionGuardTripped";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

namespace {

std::string describe(std::size_t position, const std::vector<std::string>& expected,
                     const std::string& found) {
    std::string msg = "at position " + std::to_string(position) + ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i > 0) msg += (i + 1 == expected.size()) ? " or " : ", ";
        msg += expected[i];
    }
    msg += ", found " + (found.empty() ? std::string("end of input") : "'" + found + "'");
    return msg;
}

}  // namespace

SyntaxError::SyntaxError(std::size_t position, std::vector<std::string> expected,
                         const std::string& found)
    : Error(ErrorCode::SyntaxError, describe(position, expected, found)),
      position_(position),
      expected_(std::move(expected)) {}

}  // namespace iprctl
