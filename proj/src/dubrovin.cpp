#include "finitezone/dubrovin.hpp"

#include <cmath>
#include <sstream>

#include "finitezone/error.hpp"

namespace fz {

namespace {

cplx dR(const SpectralCurve& c, cplx E) { return c.dP(E); }

// Returns gamma_j' for j = 0..g-1 and fills dw.
CVector gamma_rates(const SpectralCurve& c, const CVector& y, int g, double sign, double min_gap, double x,
                    CVector* dw) {
    CVector dg(g);
    if (dw) dw->resize(g);
    for (int j = 0; j < g; ++j) {
        cplx prod = 1.0;
        for (int k = 0; k < g; ++k) {
            if (k == j) continue;
            const cplx d = y[j] - y[k];
            if (std::abs(d) < min_gap) {
                std::ostringstream msg;
                msg << "gamma_" << j + 1 << " and gamma_" << k + 1 << " collide at x = " << x << " (gamma = " << y[j]
                    << ")";
                throw Error(ErrorKind::Collision, msg.str());
            }
            prod *= d;
        }
        dg[j] = -2.0 * I * sign * y[g + j] / prod;
        if (dw) (*dw)[j] = -I * sign * dR(c, y[j]) / prod;
    }
    return dg;
}

}  // namespace

DubrovinState DubrovinTrajectory::at(double x) const {
    const CVector y = traj_(x);
    DubrovinState s{x, {}};
    // Reported w is the root of R(gamma) nearest the carried value.
    for (int j = 0; j < g_; ++j) {
        const cplx r = std::sqrt(curve_->P(y[j]));
        s.points.push_back({y[j], std::abs(r - y[g_ + j]) <= std::abs(r + y[g_ + j]) ? r : -r});
    }
    return s;
}

DubrovinTrajectory dubrovin_flow(const SpectralCurve& curve, const DivisorData& D, double x0, double x1, double tol,
                                 double sign) {
    if (curve.genus() < 1) throw Error(ErrorKind::InvalidInput, "Dubrovin flow needs genus >= 1");
    validate_divisor(curve, D);
    return dubrovin_flow(curve, DubrovinState{x0, D.points}, x1, tol, sign);
}

DubrovinTrajectory dubrovin_flow(const SpectralCurve& curve, const DubrovinState& start, double x1, double tol,
                                 double sign) {
    const int g = curve.genus();
    if (g < 1) throw Error(ErrorKind::InvalidInput, "Dubrovin flow needs genus >= 1");
    if (static_cast<int>(start.points.size()) != g) throw Error(ErrorKind::InvalidInput, "state needs g points");
    const double x0 = start.x;
    const double min_gap = 1e-6 * curve.min_separation();
    CVector y0(2 * g);
    for (int j = 0; j < g; ++j) {
        y0[j] = start.points[j].E;
        y0[g + j] = start.points[j].w;
    }
    gamma_rates(curve, y0, g, sign, min_gap, x0, nullptr);
    const VectorField rhs = [&curve, g, sign, min_gap](double x, const CVector& y) {
        CVector dw;
        const CVector dg = gamma_rates(curve, y, g, sign, min_gap, x, &dw);
        CVector out(2 * g);
        out << dg, dw;
        return out;
    };
    // Local error per step is set below tol so the accumulated error stays near tol.
    return {solve_ivp(rhs, y0, x0, x1, 1e-2 * tol), curve};
}

cplx trace_potential(const DubrovinState& state, const SpectralCurve& curve) {
    cplx u = curve.sum_branch_points();
    for (const auto& p : state.points) u -= 2.0 * p.E;
    return u;
}

double calibrate_dubrovin_sign(const PotentialModel& m, const DivisorData& D, double rel_tol) {
    const auto& c = m.curve();
    const int g = c.genus();
    if (g < 1) return kDubrovinSign;
    CVector y(2 * g);
    for (int j = 0; j < g; ++j) {
        y[j] = D.points[j].E;
        y[g + j] = D.points[j].w;
    }
    const cplx target = potential_du(m, 0.0);
    double mismatch[2];
    for (int i = 0; i < 2; ++i) {
        const double s = i == 0 ? 1.0 : -1.0;
        const CVector dg = gamma_rates(c, y, g, s, 0.0, 0.0, nullptr);
        mismatch[i] = std::abs(-2.0 * dg.sum() - target);
    }
    const double scale = rel_tol * (1.0 + std::abs(target));
    if (mismatch[0] <= scale) return 1.0;
    if (mismatch[1] <= scale) return -1.0;
    std::ostringstream msg;
    msg << "neither Dubrovin sign matches u'(0) = " << target << ": mismatch " << mismatch[0] << " (+), "
        << mismatch[1] << " (-)";
    throw Error(ErrorKind::NoConvergence, msg.str());
}

}  // namespace fz
