#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace csrange {

enum class ErrorCode {
    ZeroDistance,
    InvalidExponent,
    InvalidThreshold,
    InvalidArgument,
    EmptyLinkSet,
    TooLarge,
    NotAViolation,
    SamePolarity,
};

inline const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::ZeroDistance: return "ZeroDistance";
        case ErrorCode::InvalidExponent: return "InvalidExponent";
        case ErrorCode::InvalidThreshold: return "InvalidThreshold";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::EmptyLinkSet: return "EmptyLinkSet";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::NotAViolation: return "NotAViolation";
        case ErrorCode::SamePolarity: return "SamePolarity";
    }
    return "Unknown";
}

/// Every library failure is reported as an Error carrying a machine-checkable code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

namespace detail {

inline void require_exponent(double alpha) {
    // alpha <= 2 makes the interference tail sum over the plane diverge
    if (!(alpha > 2.0)) {
        throw Error(ErrorCode::InvalidExponent,
                    "path-loss exponent must exceed 2 (interference tail diverges), got " +
                        std::to_string(alpha));
    }
}

inline void require_threshold(double gamma0) {
    if (!(gamma0 > 0.0) || gamma0 == std::numeric_limits<double>::infinity()) {
        throw Error(ErrorCode::InvalidThreshold,
                    "SINR threshold must be positive and finite, got " + std::to_string(gamma0));
    }
}

inline void require_positive(double value, const char* name) {
    if (!(value > 0.0) || value == std::numeric_limits<double>::infinity()) {
        throw Error(ErrorCode::InvalidArgument,
                    std::string(name) + " must be positive and finite, got " + std::to_string(value));
    }
}

}  // namespace detail
}  // namespace csrange
