#include "finitezone/roots.hpp"

#include <cmath>
#include <sstream>

#include "finitezone/error.hpp"

namespace fz {

cplx central_difference(const ScalarMap& f, cplx z, double h) { return (f(z + h) - f(z - h)) / (2.0 * h); }

cplx find_root(const ScalarMap& f, cplx guess, double tol, const std::optional<ScalarMap>& derivative, int max_iter) {
    cplx z = guess;
    cplx fz = f(z);
    // Once |f| is within tolerance keep polishing while the steps still shrink,
    // which pushes roots of higher multiplicity closer to the true zero.
    double last_step = std::numeric_limits<double>::infinity();
    for (int it = 0; it < max_iter; ++it) {
        if (fz == 0.0) return z;
        const double h = 1e-6 * std::max(1.0, std::abs(z));
        const cplx df = derivative ? (*derivative)(z) : central_difference(f, z, h);
        if (!std::isfinite(std::abs(df)) || std::abs(df) <= 1e-300) {
            if (std::abs(fz) <= tol) return z;
            throw Error(ErrorKind::DerivativeVanishes, "derivative vanishes during Newton iteration");
        }
        cplx step = fz / df;
        // Backtrack until |f| does not increase.
        cplx zn = z - step;
        cplx fn = f(zn);
        for (int b = 0; b < 30 && !(std::abs(fn) <= std::abs(fz)); ++b) {
            step *= 0.5;
            zn = z - step;
            fn = f(zn);
        }
        const double converged_step = std::abs(step);
        if (std::abs(fz) <= tol && !(std::abs(fn) < std::abs(fz) && converged_step < 0.9 * last_step)) return z;
        if (!(std::abs(fn) <= std::abs(fz)) && std::abs(fz) <= tol) return z;
        z = zn;
        fz = fn;
        last_step = converged_step;
        if (std::abs(fz) <= tol && converged_step <= 1e-14 * (1.0 + std::abs(z))) return z;
    }
    if (std::abs(fz) <= tol) return z;
    std::ostringstream msg;
    msg << "Newton iteration did not reach |f| <= " << tol << " (last |f| = " << std::abs(fz) << ")";
    throw Error(ErrorKind::NoConvergence, msg.str());
}

}  // namespace fz
