#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace iprctl {

enum class ErrorCode {
    NegativeWeight,
    NotNormalized,
    DimensionMismatch,
    EpsOutOfRange,
    IncoherentCredalSet,
    StateSpaceTooLarge,
    ImpreciseModelInPreciseOp,
    UnknownState,
    NegativeHorizon,
    HorizonExceeded,
    MissingRewards,
    NegativeBudget,
    SyntaxError,
    UnknownAtom,
    PreciseQueryOnImpreciseModel,
    FileNotFound,
    SchemaError,
    ExplosionGuardTripped,
    IndexOutOfRange,
    InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Base exception for every failure raised by the library. The code is stable
/// and used by the CLI to pick an exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Formula parse failure with the byte offset where it happened.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t position, std::vector<std::string> expected, const std::string& found);

    std::size_t position() const noexcept { return position_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t position_;
    std::vector<std::string> expected_;
};

}  // namespace iprctl
