#pragma once

#include <functional>
#include <optional>

#include "finitezone/types.hpp"

namespace fz {

using ScalarMap = std::function<cplx(cplx)>;

// Damped Newton iteration for f(z) = 0. The derivative is taken by central
// differences unless supplied. Returns a z with |f(z)| <= tol; throws
// NoConvergence or DerivativeVanishes.
cplx find_root(const ScalarMap& f, cplx guess, double tol, const std::optional<ScalarMap>& derivative = std::nullopt,
               int max_iter = 200);

// Central difference of f at z with step h.
cplx central_difference(const ScalarMap& f, cplx z, double h);

}  // namespace fz
