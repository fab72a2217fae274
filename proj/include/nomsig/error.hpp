#ifndef NOMSIG_ERROR_HPP_
#define NOMSIG_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace nomsig {

enum class ErrorCode {
    kMalformedEncoding,
    kNotOnCurve,
    kNotInSubgroup,
    kUnsupportedSecurityLevel,
    kLengthMismatch,
    kAbortBadOpening,
    kProtocolOrder,
    kRecoveryFailed,
    kInvalidAmounts,
    kInsufficientAdvance,
    kInsufficientFunds,
    kWrongPhase,
    kNonceReplayed,
    kMalformedTransaction,
    kUnknownAddress,
    kUnknownSchemaVersion,
    kWrongArtifactKind,
};

constexpr std::string_view error_name(ErrorCode c)
{
    switch (c) {
    case ErrorCode::kMalformedEncoding: return "MalformedEncoding";
    case ErrorCode::kNotOnCurve: return "NotOnCurve";
    case ErrorCode::kNotInSubgroup: return "NotInSubgroup";
    case ErrorCode::kUnsupportedSecurityLevel: return "UnsupportedSecurityLevel";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kAbortBadOpening: return "AbortBadOpening";
    case ErrorCode::kProtocolOrder: return "ProtocolOrder";
    case ErrorCode::kRecoveryFailed: return "RecoveryFailed";
    case ErrorCode::kInvalidAmounts: return "InvalidAmounts";
    case ErrorCode::kInsufficientAdvance: return "InsufficientAdvance";
    case ErrorCode::kInsufficientFunds: return "InsufficientFunds";
    case ErrorCode::kWrongPhase: return "WrongPhase";
    case ErrorCode::kNonceReplayed: return "NonceReplayed";
    case ErrorCode::kMalformedTransaction: return "MalformedTransaction";
    case ErrorCode::kUnknownAddress: return "UnknownAddress";
    case ErrorCode::kUnknownSchemaVersion: return "UnknownSchemaVersion";
    case ErrorCode::kWrongArtifactKind: return "WrongArtifactKind";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code)
    {
    }
    explicit Error(ErrorCode code) : std::runtime_error(std::string(error_name(code))), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace nomsig

#endif  // NOMSIG_ERROR_HPP_
