#pragma once

#include <Eigen/Dense>
#include <complex>
#include <numbers>

namespace fz {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;
using IMatrix = Eigen::MatrixXi;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

// Absolute and per-stage accuracy targets shared by the numerical kernels.
struct Tolerances {
    double quad_tol = 1e-10;
    double ode_tol = 1e-10;
    double root_tol = 1e-10;
    // Exclusion radius around branch points, relative to the minimal
    // branch-point separation.
    double branch_factor = 1e-3;

    void validate() const;
};

}  // namespace fz
