#ifndef EDLAB_ERRORS_HPP
#define EDLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace edlab {

enum class ErrorCode {
    GridMismatch,
    DimensionMismatch,
    AlphaOutOfRange,
    OrderNotAdmissible,
    NonPositiveMean,
    TailMassTooLarge,
    MomentDiverges,
    StabilityViolation,
    NegativeDensityBeyondTolerance,
    InsufficientPoints,
    IncompatiblePrediction,
    UnsupportedDensity,
    InvalidArgument,
    IoError,
};

const char* to_string(ErrorCode code);

/// All library failures are reported through this exception; `code` is the
/// machine-checkable reason, `what()` carries the human diagnostic.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
    if (!condition) fail(code, message);
}

}  // namespace edlab

#endif
