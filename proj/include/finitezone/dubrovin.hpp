#pragma once

#include <vector>

#include "finitezone/ode.hpp"
#include "finitezone/potential.hpp"

namespace fz {

// Zeros gamma_j(x) of psi(x, .) with their sheet values w_j.
struct DubrovinState {
    double x = 0.0;
    std::vector<SheetPoint> points;
};

// Dense solution of the Dubrovin system for (gamma_1..gamma_g, w_1..w_g).
class DubrovinTrajectory {
public:
    DubrovinTrajectory(Trajectory traj, const SpectralCurve& curve)
        : traj_(std::move(traj)), curve_(&curve), g_(curve.genus()) {}

    double start() const { return traj_.start(); }
    double end() const { return traj_.end(); }
    DubrovinState at(double x) const;
    const Trajectory& raw() const { return traj_; }

private:
    Trajectory traj_;
    const SpectralCurve* curve_;  // must outlive the trajectory
    int g_;
};

// Sign of the flow that matches the theta-function potential.
inline constexpr double kDubrovinSign = 1.0;

// gamma_j' = -2 i s w_j / prod_{k != j}(gamma_j - gamma_k), with w_j carried
// along as w_j' = -i s R'(gamma_j) / prod, which stays regular where w_j = 0.
// Throws Collision when two gamma_j come within 1e-6 * min branch separation.
DubrovinTrajectory dubrovin_flow(const SpectralCurve& curve, const DivisorData& D, double x0, double x1,
                                 double tol = 1e-10, double sign = kDubrovinSign);

// Continues the flow from an arbitrary state (no divisor validation).
DubrovinTrajectory dubrovin_flow(const SpectralCurve& curve, const DubrovinState& start, double x1,
                                 double tol = 1e-10, double sign = kDubrovinSign);

// u = -2 sum gamma_j + sum E_k.
cplx trace_potential(const DubrovinState& state, const SpectralCurve& curve);

// Picks the sign s for which -2 sum gamma_j'(0) equals potential_du(m, 0).
// Throws NoConvergence with both mismatches when neither sign agrees.
double calibrate_dubrovin_sign(const PotentialModel& m, const DivisorData& D, double rel_tol = 1e-6);

}  // namespace fz
