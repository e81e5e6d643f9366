#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fz {

enum class ErrorKind {
    InvalidInput,
    NonConvergence,
    StepUnderflow,
    NoConvergence,
    DerivativeVanishes,
    AmbiguousPairing,
    CutCollision,
    StepTooCoarse,
    SingularNormalization,
    RadiusOverflow,
    OnThetaDivisor,
    DivisorPole,
    Collision,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for every numerical and validation failure in the
// library; callers dispatch on kind().
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace fz
