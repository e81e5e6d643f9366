#pragma once

#include "finitezone/periods.hpp"
#include "finitezone/theta.hpp"

namespace fz {

// Abel image of P with base point infinity, and the regularized integral
// q(P) = sqrt(E(P)) + int_inf^P (Omega - d sqrt E), both along the same path.
struct AbelImage {
    CVector A;
    cplx q{0.0};
};

// The path runs from infinity to a far point E_far in the local parameter
// k = 1/sqrt(E), then along a straight segment from E_far to P.
// Directions whose segment crosses fewer of the avoid loops are preferred.
AbelImage abel_image(const SpectralCurve& curve, const PeriodData& pd, const SheetPoint& P, double tol = 1e-10,
                     const std::vector<Path>& avoid = {});

inline CVector abel_map(const SpectralCurve& curve, const PeriodData& pd, const SheetPoint& P, double tol = 1e-10) {
    return abel_image(curve, pd, P, tol).A;
}

// Holomorphic differentials at P: omega_k = (sum_m c_km E^m) dE / w, as the
// vector of dA_k/dE on P's sheet.
CVector omega_at(const PeriodData& pd, const SheetPoint& P);

// K_j = (1 + B_jj)/2 + sum_{l != j} oint_{a_l} omega_l(P) A_j(P), with A_j
// continued along each a-cycle loop from its start point and reached from
// infinity without crossing an a-cycle. Every a-cycle must be a single loop.
CVector riemann_constants(const SpectralCurve& curve, const HomologyBasis& basis, const PeriodData& pd,
                          double tol = 1e-10);

// Riemann constants of sd.basis: the formula in the chain basis, carried over
// by K = Q^T K_chain - diag(N)/2.
CVector riemann_constants(const SpectralData& sd, double tol = 1e-10);

}  // namespace fz
