#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "finitezone/curve.hpp"
#include "finitezone/types.hpp"

namespace fz {

struct PeriodData {
    // raw_a(j, m) = integral of E^m dE / w over a_j, m = 0..g (same for raw_b).
    CMatrix raw_a, raw_b;
    // omega_j = sum_k norm_coeffs(j, k) E^k dE / w.
    CMatrix norm_coeffs;
    CMatrix B;
    // Omega = (sum_m omega_coeffs[m] E^m) dE / (2w) with omega_coeffs[g] = 1.
    CVector omega_coeffs;
    CVector U;
    cplx C{0.0};
    double normalization_residual = 0.0;  // max |oint_{a_j} omega_k - delta_jk| by re-integration

    int genus() const { return static_cast<int>(B.rows()); }
};

// Integral of f(E) dE / w over a cycle, with w tracked along each loop.
cplx cycle_integral(const SpectralCurve& curve, const Cycle& cycle, const std::function<cplx(cplx)>& f, double tol);

// Raw and normalized periods, Riemann matrix, quasimomentum and constant C.
PeriodData compute_period_data(const SpectralCurve& curve, const HomologyBasis& basis, double tol = 1e-10);

// Omega coefficients and U from the raw periods.
std::pair<CVector, CVector> quasimomentum(const CMatrix& raw_a, const CMatrix& raw_b);

cplx its_matveev_constant(const SpectralCurve& curve, const CMatrix& raw_a, const CMatrix& norm_coeffs);

// Integer matrix expected for conj(B) + B in a reality-adapted basis: a block
// of ones of size n, then ones with 2 on the diagonal. Zero for M-curves.
IMatrix reality_target(const RealStructure& rs, int g);

struct RealityCheck {
    bool integral = false;          // conj(B) + B is an integer matrix
    bool matches_target = false;    // and equals reality_target
    IMatrix M;                      // rounded conj(B) + B
    double residual = 0.0;          // distance of conj(B) + B from M
    std::vector<double> mu;         // diag(M)/2 mod 1
    std::string diagnostic;
};

RealityCheck check_reality(const RealStructure& rs, const CMatrix& B, double tol = 1e-6);

// Symplectic change a' = Q^{-1} a, b' = Q^T b - N a' with Q unimodular and N
// symmetric, chosen so that conj(B) + B equals reality_target. Leaves the
// basis as is (with a diagnostic) when no such change is found.
struct RealityAdaptation {
    HomologyBasis basis;
    IMatrix Q, N;  // identity and zero when the basis is kept
    std::string diagnostic;
};
RealityAdaptation adapt_to_reality(const SpectralCurve& curve, const RealStructure& rs, const HomologyBasis& basis,
                                   const PeriodData& pd);

// Everything derived from the branch points alone.
struct SpectralData {
    SpectralCurve curve;
    RealStructure structure;
    CutSystem cuts;
    HomologyBasis basis;
    PeriodData periods;
    RealityCheck reality;
    // The single-loop basis built on the cut chain, and the change
    // a = Q^{-1} a_chain, b = Q^T b_chain - N a leading to basis.
    HomologyBasis chain_basis;
    PeriodData chain_periods;
    IMatrix Q, N;

    static SpectralData build(const SpectralCurve& curve, double quad_tol = 1e-10);
};

}  // namespace fz
