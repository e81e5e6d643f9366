#include "finitezone/abel.hpp"

#include <cmath>

#include "finitezone/error.hpp"
#include "finitezone/ode.hpp"
#include "finitezone/quadrature.hpp"

namespace fz {

namespace {

double point_segment_distance(cplx z, cplx a, cplx b) {
    const cplx d = b - a;
    const double len2 = std::norm(d);
    double t = len2 > 0.0 ? ((z - a) * std::conj(d)).real() / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(z - (a + t * d));
}

// Integrals of E^m dE / w, m = 0..g, along a tracked path.
CVector monomial_integrals(const TrackedPath& tp, int g, double tol) {
    CVector out(g + 1);
    for (int m = 0; m <= g; ++m) {
        auto f = [&](std::size_t piece, double t, cplx E) { return std::pow(E, m) / tp.w(piece, t); };
        out[m] = integrate_path(f, tp.path(), tol / (g + 1)).value;
    }
    return out;
}

// Proper crossings of the segment (a, b] with a closed path, sampled finely.
int crossings(cplx a, cplx b, const Path& loop) {
    auto cross = [](cplx u, cplx v) { return u.real() * v.imag() - u.imag() * v.real(); };
    int count = 0;
    for (const auto& piece : loop.pieces()) {
        const int n = std::holds_alternative<Arc>(piece.geom) ? 64 : 1;
        cplx p = piece.at(0.0);
        for (int i = 1; i <= n; ++i) {
            const cplx q = piece.at(static_cast<double>(i) / n);
            const cplx d1 = b - a, d2 = q - p;
            const double den = cross(d1, d2);
            if (den != 0.0) {
                const double t = cross(p - a, d2) / den;
                const double u = cross(p - a, d1) / den;
                if (t > 1e-9 && t <= 1.0 && u >= 0.0 && u < 1.0) ++count;
            }
            p = q;
        }
    }
    return count;
}

}  // namespace

CVector omega_at(const PeriodData& pd, const SheetPoint& P) {
    const int g = pd.genus();
    CVector powers(g);
    cplx p = 1.0;
    for (int m = 0; m < g; ++m, p *= P.E) powers[m] = p;
    return pd.norm_coeffs * powers / P.w;
}

AbelImage abel_image(const SpectralCurve& curve, const PeriodData& pd, const SheetPoint& P, double tol,
                     const std::vector<Path>& avoid) {
    const int g = curve.genus();
    const auto& e = curve.branch_points();
    const double min_sep = curve.min_separation();

    // Start on a branch point exactly when P is one.
    cplx E0 = P.E;
    cplx w0 = P.w;
    Singular sing = Singular::none;
    std::ptrdiff_t near = -1;
    for (std::size_t i = 0; i < e.size(); ++i) {
        const double d = std::abs(P.E - e[i]);
        if (d <= 1e-12 * (1.0 + curve.scale())) {
            E0 = e[i];
            w0 = 0.0;
        }
        if (d < 1e-2 * min_sep) {
            sing = Singular::left;
            near = static_cast<std::ptrdiff_t>(i);
        }
    }

    // Far point in the direction that keeps the segment clear of other branch points.
    double emax = 0.0;
    for (auto z : e) emax = std::max(emax, std::abs(z));
    const double R = 2.0 * (emax + std::abs(E0)) + 1.0;
    double best_clear = -1.0;
    int best_cross = 1 << 30;
    cplx E_far = E0 + R;
    for (int k = 0; k < 64; ++k) {
        const cplx cand = E0 + R * std::polar(1.0, 2.0 * pi * (k + 0.5) / 64.0);
        double clear = 1e300;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (static_cast<std::ptrdiff_t>(i) != near) clear = std::min(clear, point_segment_distance(e[i], E0, cand));
        int cr = 0;
        for (const auto& loop : avoid) cr += crossings(E0, cand, loop);
        if (cr < best_cross || (cr == best_cross && clear > best_clear)) {
            best_cross = cr;
            best_clear = clear;
            E_far = cand;
        }
    }

    const TrackedPath tp(curve, Path::line(E0, E_far, sing), w0);
    const CVector seg = monomial_integrals(tp, g, 0.5 * tol);
    const cplx w_far = tp.w_end();

    // Local parameter at infinity on the sheet of w_far.
    auto s_of = [&](cplx k) {
        cplx s = 1.0;
        for (auto z : e) s *= std::sqrt(1.0 - z * k * k);
        return s;
    };
    cplx k_far = 1.0 / std::sqrt(E_far);
    {
        const cplx w_k = std::pow(k_far, -(2 * g + 1)) * s_of(k_far);
        if (std::abs(w_k - w_far) > std::abs(w_k + w_far)) k_far = -k_far;
    }
    const Path kpath = Path::line(0.0, k_far);

    AbelImage out;
    // E^m dE / w = -2 k^{2g-2-2m} / s(k) dk.
    CVector kint(g);
    for (int m = 0; m < g; ++m) {
        auto f = [&](cplx k) { return -2.0 * std::pow(k, 2 * g - 2 - 2 * m) / s_of(k); };
        kint[m] = integrate_path(f, kpath, 0.25 * tol / std::max(1, g)).value;
    }
    out.A = pd.norm_coeffs * (kint - seg.head(g));

    // Omega - d sqrt(E) = -k^{-2} (poly(k)/s - 1) dk with poly(k) = sum_m o_m k^{2g-2m};
    // both poly - 1 and s - 1 are expanded so the k^{-2} cancels exactly.
    auto reg = [&](cplx k) {
        const cplx k2 = k * k;
        cplx poly_m1 = 0.0;  // (poly - 1) / k^2
        for (int m = 0; m < g; ++m) poly_m1 += pd.omega_coeffs[m] * std::pow(k2, g - m - 1);
        cplx D = 0.0;  // (s^2 - 1) / k^2
        for (auto z : e) D = D * (1.0 - z * k2) - z;
        const cplx s = s_of(k);
        return -(poly_m1 - D / (s + 1.0)) / s;
    };
    const cplx qk = integrate_path(reg, kpath, 0.25 * tol).value;
    cplx omega_seg = 0.0;
    for (int m = 0; m <= g; ++m) omega_seg += 0.5 * pd.omega_coeffs[m] * seg[m];
    out.q = 1.0 / k_far + qk - omega_seg;
    return out;
}

CVector riemann_constants(const SpectralCurve& curve, const HomologyBasis& basis, const PeriodData& pd, double tol) {
    const int g = curve.genus();
    CVector K(g);
    for (int j = 0; j < g; ++j) K[j] = 0.5 * (1.0 + pd.B(j, j));
    if (g < 2) return K;
    for (const auto& cyc : basis.a_cycles)
        if (cyc.terms.size() != 1)
            throw Error(ErrorKind::InvalidInput, "Riemann-constant formula needs a-cycles drawn as single loops");

    // Abel values at the loop starts come from paths that cross no a-cycle.
    std::vector<Path> a_loops;
    for (const auto& cyc : basis.a_cycles)
        for (const auto& [coef, loop] : cyc.terms) a_loops.push_back(loop.path);

    // Along each loop: F_j = int omega_j from the loop start, G_lj = int omega_l F_j.
    for (int l = 0; l < g; ++l) {
        for (const auto& [coef, loop] : basis.a_cycles[static_cast<std::size_t>(l)].terms) {
            const TrackedPath tp(curve, loop.path, loop.w_start);
            const CVector A0 = abel_image(curve, pd, {loop.path.start(), loop.w_start}, tol, a_loops).A;
            CVector y = CVector::Zero(g + g * g);
            for (std::size_t piece = 0; piece < tp.path().size(); ++piece) {
                const Piece& pc = tp.path().pieces()[piece];
                VectorField rhs = [&](double t, const CVector& Y) {
                    const cplx E = pc.at(t);
                    const CVector om = omega_at(pd, {E, tp.w(piece, t)}) * pc.tangent(t);
                    CVector d(g + g * g);
                    d.head(g) = om;
                    for (int a = 0; a < g; ++a)
                        for (int b = 0; b < g; ++b) d[g + a * g + b] = om[a] * Y[b];
                    return d;
                };
                y = solve_ivp(rhs, y, 0.0, 1.0, 1e-3 * tol).final_state();
            }
            for (int j = 0; j < g; ++j) {
                if (j == l) continue;
                K[j] += static_cast<double>(coef) * (A0[j] * y[l] + y[g + l * g + j]);
            }
        }
    }
    return K;
}

CVector riemann_constants(const SpectralData& sd, double tol) {
    const CVector Kc = riemann_constants(sd.curve, sd.chain_basis, sd.chain_periods, tol);
    return sd.Q.transpose().cast<cplx>() * Kc - 0.5 * sd.N.diagonal().cast<cplx>();
}

}  // namespace fz
