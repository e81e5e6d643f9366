#pragma once

#include <functional>

#include "finitezone/path.hpp"
#include "finitezone/types.hpp"

namespace fz {

// Integrand seen by the path integrator. The piece index and local parameter
// are passed alongside E so that callers can look up continuously tracked
// quantities (such as a square-root branch) at that position.
using PathIntegrand = std::function<cplx(std::size_t piece, double t, cplx E)>;

struct QuadratureResult {
    cplx value;
    double error;
    int evaluations;
};

// Adaptive Gauss-Kronrod (7/15) over t in [0,1] of g(t). Endpoint
// inverse-square-root singularities are removed by a substitution when
// declared. Throws NonConvergence when the estimate stalls above tol.
QuadratureResult integrate_unit(const std::function<cplx(double)>& g, Singular singular, double tol,
                                int max_intervals = 4000);

// Integral of f dE along path.
QuadratureResult integrate_path(const PathIntegrand& f, const Path& path, double tol);

// Convenience overload for integrands that depend on E alone.
QuadratureResult integrate_path(const std::function<cplx(cplx)>& f, const Path& path, double tol);

}  // namespace fz
