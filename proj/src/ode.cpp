#include "finitezone/ode.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "finitezone/error.hpp"

namespace fz {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;
// Continuous extension.
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

double error_norm(const CVector& err, const CVector& y0, const CVector& y1, double tol) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < err.size(); ++i) {
        const double scale = tol * (1.0 + std::max(std::abs(y0[i]), std::abs(y1[i])));
        sum += std::norm(err[i]) / (scale * scale);
    }
    return std::sqrt(sum / static_cast<double>(std::max<Eigen::Index>(1, err.size())));
}

}  // namespace

CVector Trajectory::operator()(double x) const {
    const bool forward = xs_.back() >= xs_.front();
    auto cmp = [forward](double a, double b) { return forward ? a < b : a > b; };
    if (cmp(x, xs_.front()) || cmp(xs_.back(), x)) {
        const double tol = 1e-12 * (1.0 + std::abs(x));
        if (std::abs(x - xs_.front()) <= tol) return ys_.front();
        if (std::abs(x - xs_.back()) <= tol) return ys_.back();
        throw Error(ErrorKind::InvalidInput, "dense output requested outside the integrated span");
    }
    auto it = std::upper_bound(xs_.begin(), xs_.end(), x, cmp);
    std::size_t k = static_cast<std::size_t>(std::distance(xs_.begin(), it));
    k = std::clamp<std::size_t>(k, 1, xs_.size() - 1) - 1;
    if (x == xs_[k]) return ys_[k];
    if (x == xs_[k + 1]) return ys_[k + 1];
    const double h = xs_[k + 1] - xs_[k];
    const double s = (x - xs_[k]) / h;
    const auto& r = dense_[k];
    const double s1 = 1.0 - s;
    return r[0] + s * (r[1] + s1 * (r[2] + s * (r[3] + s1 * r[4])));
}

Trajectory solve_ivp(const VectorField& rhs, const CVector& y0, double x0, double x1, double tol, int max_steps) {
    if (!(tol > 0.0)) throw Error(ErrorKind::InvalidInput, "ODE tolerance must be positive");
    Trajectory traj;
    traj.xs_.push_back(x0);
    traj.ys_.push_back(y0);
    if (x1 == x0) return traj;

    const double dir = x1 > x0 ? 1.0 : -1.0;
    const double span = std::abs(x1 - x0);
    double x = x0;
    CVector y = y0;
    CVector k1 = rhs(x, y);

    // Initial step from the usual derivative-scale heuristic.
    double h;
    {
        const double dy = k1.norm() / std::sqrt(double(std::max<Eigen::Index>(1, y.size())));
        const double sy = 1.0 + y.norm() / std::sqrt(double(std::max<Eigen::Index>(1, y.size())));
        h = dy > 0.0 ? 0.01 * sy / dy : 0.01 * span;
        h = std::min(h, span);
        h = std::max(h, 1e-6 * span);
    }

    int steps = 0;
    double err_prev = 1e-4;
    while (dir * (x1 - x) > 0.0) {
        if (++steps > max_steps) throw Error(ErrorKind::StepUnderflow, "ODE step budget exhausted");
        bool last = false;
        if (h >= std::abs(x1 - x)) {
            h = std::abs(x1 - x);
            last = true;
        }
        const double hs = dir * h;
        const CVector k2 = rhs(x + c2 * hs, y + hs * (a21 * k1));
        const CVector k3 = rhs(x + c3 * hs, y + hs * (a31 * k1 + a32 * k2));
        const CVector k4 = rhs(x + c4 * hs, y + hs * (a41 * k1 + a42 * k2 + a43 * k3));
        const CVector k5 = rhs(x + c5 * hs, y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const CVector k6 = rhs(x + hs, y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const CVector y1 = y + hs * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
        const double xn = last ? x1 : x + hs;
        const CVector k7 = rhs(xn, y1);
        const CVector err = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double en = error_norm(err, y, y1, tol);

        if (!std::isfinite(en)) {
            h *= 0.25;
        } else if (en <= 1.0) {
            std::array<CVector, 5> r;
            r[0] = y;
            r[1] = y1 - y;
            r[2] = hs * k1 - r[1];
            r[3] = r[1] - hs * k7 - r[2];
            r[4] = hs * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
            traj.dense_.push_back(std::move(r));
            x = xn;
            y = y1;
            k1 = k7;
            traj.xs_.push_back(x);
            traj.ys_.push_back(y);
            // PI step-size control.
            const double fac = 0.9 * std::pow(std::max(en, 1e-10), -0.7 / 5) * std::pow(err_prev, 0.4 / 5);
            h *= std::clamp(fac, 0.2, 5.0);
            err_prev = std::max(en, 1e-4);
            if (last) break;
        } else {
            h *= std::clamp(0.9 * std::pow(en, -0.2), 0.1, 0.9);
        }
        if (h < 1e-14 * (std::abs(x) + span)) {
            std::ostringstream msg;
            msg << "adaptive step collapsed to " << h << " at x = " << x;
            throw Error(ErrorKind::StepUnderflow, msg.str());
        }
    }
    return traj;
}

}  // namespace fz
