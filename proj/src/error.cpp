#include "finitezone/error.hpp"

#include "finitezone/types.hpp"

namespace fz {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidInput: return "InvalidInput";
        case ErrorKind::NonConvergence: return "NonConvergence";
        case ErrorKind::StepUnderflow: return "StepUnderflow";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::DerivativeVanishes: return "DerivativeVanishes";
        case ErrorKind::AmbiguousPairing: return "AmbiguousPairing";
        case ErrorKind::CutCollision: return "CutCollision";
        case ErrorKind::StepTooCoarse: return "StepTooCoarse";
        case ErrorKind::SingularNormalization: return "SingularNormalization";
        case ErrorKind::RadiusOverflow: return "RadiusOverflow";
        case ErrorKind::OnThetaDivisor: return "OnThetaDivisor";
        case ErrorKind::DivisorPole: return "DivisorPole";
        case ErrorKind::Collision: return "Collision";
    }
    return "Unknown";
}

void Tolerances::validate() const {
    if (!(quad_tol > 0.0) || !(ode_tol > 0.0) || !(root_tol > 0.0) || !(branch_factor > 0.0))
        throw Error(ErrorKind::InvalidInput, "all tolerances must be strictly positive");
}

}  // namespace fz
