#pragma once

#include "finitezone/types.hpp"

namespace fz {

using IVector = Eigen::VectorXi;

// Riemann theta function of a fixed period matrix B (Im B > 0).
class ThetaContext {
public:
    explicit ThetaContext(CMatrix B, double target_tol = 1e-15, int max_radius = 40);

    const CMatrix& B() const { return B_; }
    int genus() const { return static_cast<int>(B_.rows()); }
    double target_tol() const { return tol_; }
    double lambda_min() const { return lambda_min_; }
    const RMatrix& im_inverse() const { return im_inv_; }
    // |theta(0)|, the scale of the divisor threshold.
    double theta0() const { return theta0_; }
    double divisor_threshold() const { return 1e-6 * theta0_; }

    // Integer box holding every term within target_tol (relative to the
    // largest term) of the series at z: n_k in [lo_k, hi_k].
    struct Box {
        IVector lo, hi;
    };
    Box box(const CVector& z) const;
    // Largest |n_k| enumerated at z. Throws RadiusOverflow above the budget.
    int radius(const CVector& z) const;

private:
    CMatrix B_;
    RMatrix im_inv_;
    double tol_;
    int max_radius_;
    double lambda_min_ = 0.0;
    double rho_ = 0.0;      // ellipsoid radius in the Im B metric
    RVector half_width_;    // rho * sqrt((Im B)^{-1})_kk
    double theta0_ = 1.0;
};

// z = reduced + m + B n with reduced in the fundamental cell around 0.
struct LatticeReduction {
    CVector z;
    IVector m, n;
};

LatticeReduction reduce_mod_lattice(const CMatrix& B, const CVector& z);
// True when u - v lies in Z^g + B Z^g within tol.
bool lattice_equivalent(const CMatrix& B, const CVector& u, const CVector& v, double tol = 1e-9);
// Distance of u - v from the nearest lattice vector (after reduction).
double lattice_distance(const CMatrix& B, const CVector& u, const CVector& v);

// Plain truncated series at z (no reduction).
cplx theta(const ThetaContext& ctx, const CVector& z);

// theta(z) = exp(log_factor) * value, with value = theta(reduced z).
struct ReducedTheta {
    cplx log_factor;
    cplx value;
};
ReducedTheta theta_reduced(const ThetaContext& ctx, const CVector& z);

// d^k/dt^k theta(z + t dir) at t = 0, k = 0..3, by term-wise differentiation.
struct ThetaJet {
    cplx d0, d1, d2, d3;
};
ThetaJet theta_jet(const ThetaContext& ctx, const CVector& z, const CVector& dir);

// Gradient of theta at z (no reduction).
CVector theta_gradient(const ThetaContext& ctx, const CVector& z);

// |theta| at the reduced point.
double divisor_distance(const ThetaContext& ctx, const CVector& z);

// Second and third t-derivatives of log theta(z + t dir). Throw OnThetaDivisor
// when |theta| at the reduced point is below the divisor threshold.
cplx theta_log_dd(const ThetaContext& ctx, const CVector& z, const CVector& dir);
cplx theta_log_d3(const ThetaContext& ctx, const CVector& z, const CVector& dir);

}  // namespace fz
