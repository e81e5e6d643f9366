#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "finitezone/abel.hpp"
#include "finitezone/theta.hpp"

namespace fz {

// Poles P_1..P_g of the Bloch function. A point exactly on a branch point
// carries w = 0.
struct DivisorData {
    std::vector<SheetPoint> points;
};

// Throws InvalidInput unless D has g finite points on the curve, each either
// on a branch point or at least delta_branch away from all of them.
void validate_divisor(const SpectralCurve& curve, const DivisorData& D, double branch_factor = 1e-3);

enum class SymmetryClass { PT, Real, RealAndPT, Generic };
std::string to_string(SymmetryClass s);

// z0 = -sum A(P_j) - K, reduced.
CVector z0_from_divisor(const SpectralData& sd, const CVector& K, const DivisorData& D, double tol = 1e-10);

// Zeros of theta(A(P) + z0) on the curve (the poles of psi), found by Newton
// from a grid of seeds. Throws NoConvergence unless exactly g are found.
DivisorData divisor_from_z0(const SpectralData& sd, const CVector& z0, double tol = 1e-10);

// Tests z0 + conj(z0) = mu (real) and z0 = conj(z0) + mu (PT) modulo the lattice.
SymmetryClass classify_symmetry(const CVector& z0, const CMatrix& B, const std::vector<double>& mu,
                                const RealStructure& rs, double tol = 1e-8, std::string* diagnostic = nullptr);

// Smallest T > 0 with U T in the lattice, searched over small lattice vectors.
std::optional<double> detect_period(const CMatrix& B, const CVector& U, int max_coeff = 6);

struct SmoothnessWitness {
    double min_theta = 0.0;
    double argmin = 0.0;
};

class PotentialModel {
public:
    // scan_range is used when the potential is not periodic; for periodic
    // potentials one period starting at 0 is scanned.
    PotentialModel(std::shared_ptr<const SpectralData> sd, const CVector& z0,
                   std::pair<double, double> scan_range = {-10.0, 10.0}, int scan_samples = 2000);

    const SpectralData& spectral() const { return *sd_; }
    const SpectralCurve& curve() const { return sd_->curve; }
    const PeriodData& periods() const { return sd_->periods; }
    const ThetaContext& theta_context() const { return ctx_; }
    const CVector& z0() const { return z0_; }
    SymmetryClass symmetry() const { return symmetry_; }
    const std::string& symmetry_diagnostic() const { return symmetry_diag_; }
    bool smooth() const { return smooth_; }
    const SmoothnessWitness& witness() const { return witness_; }
    std::optional<double> period() const { return period_; }
    int genus() const { return sd_->curve.genus(); }

private:
    std::shared_ptr<const SpectralData> sd_;
    ThetaContext ctx_;
    CVector z0_;
    SymmetryClass symmetry_ = SymmetryClass::Generic;
    std::string symmetry_diag_;
    bool smooth_ = true;
    SmoothnessWitness witness_;
    std::optional<double> period_;
};

// Minimum of |theta(U x + z0)| (reduced) over the samples, refined by
// golden-section search around the smallest sampled values.
SmoothnessWitness smoothness_scan(const ThetaContext& ctx, const CVector& U, const CVector& z0, double x0, double x1,
                                  int samples);

// u(x) = -2 d^2/dx^2 log theta(U x + z0) + C. Throws OnThetaDivisor near poles.
cplx potential_u(const PotentialModel& m, double x);
// du/dx.
cplx potential_du(const PotentialModel& m, double x);

// psi(x, P) = exp(i x q(P)) theta(A(P) + x U + z0) theta(z0)
//             / (theta(A(P) + z0) theta(x U + z0)), so psi(0, P) = 1.
// Throws DivisorPole when theta(A(P) + z0) vanishes and OnThetaDivisor at
// poles of u.
cplx bloch_psi(const PotentialModel& m, const SheetPoint& P, double x);

// The same for many x with one Abel evaluation.
std::vector<cplx> bloch_psi(const PotentialModel& m, const SheetPoint& P, const std::vector<double>& xs);

}  // namespace fz
