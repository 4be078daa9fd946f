#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace frenet_svd {

enum class ErrorCode {
    RankDeficient,
    DomainError,
    UnknownCurve,
    InvalidParams,
    NotUnitSpeed,
    DegenerateCurve,
    InvalidCurvature,
    InvalidFrame,
    NonPositiveCurvature,
    NoConvergence,
    PatternViolation,
    InsufficientLadder,
    UnderResolved,
    DegenerateSpectrum,
    TooFewSamples,
    DegenerateMoments,
    ParseError,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::RankDeficient: return "RankDeficient";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::UnknownCurve: return "UnknownCurve";
        case ErrorCode::InvalidParams: return "InvalidParams";
        case ErrorCode::NotUnitSpeed: return "NotUnitSpeed";
        case ErrorCode::DegenerateCurve: return "DegenerateCurve";
        case ErrorCode::InvalidCurvature: return "InvalidCurvature";
        case ErrorCode::InvalidFrame: return "InvalidFrame";
        case ErrorCode::NonPositiveCurvature: return "NonPositiveCurvature";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::PatternViolation: return "PatternViolation";
        case ErrorCode::InsufficientLadder: return "InsufficientLadder";
        case ErrorCode::UnderResolved: return "UnderResolved";
        case ErrorCode::DegenerateSpectrum: return "DegenerateSpectrum";
        case ErrorCode::TooFewSamples: return "TooFewSamples";
        case ErrorCode::DegenerateMoments: return "DegenerateMoments";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), message_(what) {}

    ErrorCode code() const noexcept { return code_; }
    /// what() without the code prefix.
    const std::string& message() const noexcept { return message_; }

private:
    ErrorCode code_;
    std::string message_;
};

}  // namespace frenet_svd
