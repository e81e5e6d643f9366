#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "finitezone/types.hpp"

namespace fz {

using PotentialFn = std::function<cplx(double)>;

// Translation by T in the basis (c, s) with c(0) = s'(0) = 1, c'(0) = s(0) = 0:
// matrix = [[c(T), s(T)], [c'(T), s'(T)]].
struct MonodromyResult {
    Eigen::Matrix2cd matrix;
    cplx r;                      // half trace
    cplx lambda_plus, lambda_minus;
    double det_error = 0.0;      // max |c s' - s c' - 1| over the integration nodes
};

MonodromyResult monodromy(const PotentialFn& u, double T, cplx E, double tol = 1e-10);

// r +- sqrt(r^2 - 1) ordered so that |first| >= |second|.
std::pair<cplx, cplx> multipliers(cplx r);

struct ScanGrid {
    double re_min = 0.0, re_max = 1.0, im_min = 0.0, im_max = 0.0;
    int n_re = 2, n_im = 1;
    cplx node(int i_re, int i_im) const;
};

struct BlochScan {
    ScanGrid grid;
    double eps = 1e-3;
    // Row-major over (i_im, i_re).
    std::vector<double> abs_lambda;  // |lambda| closest to 1; NaN where the node failed
    std::vector<char> in_spectrum;
    std::vector<std::string> errors;  // "i_re,i_im: message" for failed nodes
};

// Evaluates every node independently on worker threads; the result does not
// depend on the thread count.
BlochScan bloch_scan(const PotentialFn& u, double T, const ScanGrid& grid, double eps = 1e-3, double tol = 1e-10,
                     unsigned threads = 0);

// CSV with columns re_E,im_E,abs_lambda,in_spectrum.
void write_scan_csv(std::ostream& os, const BlochScan& scan);

struct BranchRecovery {
    std::vector<cplx> simple;          // merged simple zeros of r^2 - 1
    std::vector<cplx> double_zeros;    // converged but |d(r^2 - 1)/dE| < 1e-4
    std::vector<std::string> failures;  // per-guess NoConvergence reports
};

// Newton on r(E)^2 - 1 from each guess, derivative by central differences.
BranchRecovery recover_branch_points(const PotentialFn& u, double T, const std::vector<cplx>& guesses,
                                     double tol = 1e-10);

}  // namespace fz
