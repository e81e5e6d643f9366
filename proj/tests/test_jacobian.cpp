#include <cmath>
#include <random>

#include "doctest.h"
#include "finitezone/abel.hpp"
#include "finitezone/error.hpp"
#include "finitezone/quadrature.hpp"
#include "finitezone/theta.hpp"

using namespace fz;

namespace {

CVector random_z(std::mt19937& rng, int g, double re, double im) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    CVector z(g);
    for (int k = 0; k < g; ++k) z[k] = cplx{re * u(rng), im * u(rng)};
    return z;
}

CMatrix ones_b(cplx b) {
    CMatrix B(1, 1);
    B(0, 0) = b;
    return B;
}

const SpectralData& cached(int which) {
    static const std::vector<SpectralData> all = [] {
        std::vector<SpectralData> v;
        v.push_back(SpectralData::build(SpectralCurve({-1.0, 0.0, 1.0})));
        v.push_back(SpectralData::build(SpectralCurve({0.0, I, -I})));
        v.push_back(SpectralData::build(SpectralCurve({-2.0, -1.0, 0.0, 1.0, 2.0})));
        v.push_back(SpectralData::build(SpectralCurve({-1.0, 0.0, 1.0, 2.0 * I, -2.0 * I})));
        v.push_back(SpectralData::build(
            SpectralCurve({cplx{0.5, 0.1}, cplx{-1, 1.5}, cplx{-1.2, -1.5}, cplx{2, 0.3}, cplx{-2.5, 0}})));
        return v;
    }();
    return all[static_cast<std::size_t>(which)];
}

// d/dz log theta, through the reduced argument.
CVector log_gradient(const ThetaContext& ctx, const CVector& z) {
    const auto r = reduce_mod_lattice(ctx.B(), z);
    return theta_gradient(ctx, r.z) / theta(ctx, r.z) - 2.0 * pi * I * r.n.cast<cplx>();
}

// Zeros of F(P) = theta(A(P) + z0) by Newton in E from a grid of seeds on both
// sheets; the sheet follows the iterate continuously.
std::vector<SheetPoint> zeros_of_F(const SpectralData& sd, const ThetaContext& ctx, const CVector& z0) {
    const auto& c = sd.curve;
    const double L = 2.0 * (1.0 + c.scale());
    std::vector<SheetPoint> found;
    for (int ix = 0; ix < 7; ++ix)
        for (int iy = 0; iy < 7; ++iy)
            for (double sheet : {1.0, -1.0}) {
                cplx E{-L + 2.0 * L * (ix + 0.37) / 7.0, -L + 2.0 * L * (iy + 0.61) / 7.0};
                cplx w = sheet * std::sqrt(c.P(E));
                bool ok = false;
                for (int it = 0; it < 60; ++it) {
                    const SheetPoint P{E, w};
                    const CVector A = abel_map(c, sd.periods, P);
                    const cplx dlog = log_gradient(ctx, A + z0).cwiseProduct(omega_at(sd.periods, P)).sum();
                    cplx step = -1.0 / dlog;
                    const double cap = 0.5 * (1.0 + std::abs(E));
                    if (std::abs(step) > cap) step *= cap / std::abs(step);
                    E += step;
                    const cplx w1 = std::sqrt(c.P(E));
                    w = std::abs(w1 - w) < std::abs(w1 + w) ? w1 : -w1;
                    if (std::abs(step) < 1e-12 * (1.0 + std::abs(E))) {
                        ok = true;
                        break;
                    }
                }
                if (!ok) continue;
                if (divisor_distance(ctx, abel_map(c, sd.periods, {E, w}) + z0) > 1e-9) continue;
                bool dup = false;
                for (const auto& q : found)
                    if (std::abs(q.E - E) < 1e-6 && std::abs(q.w - w) < 1e-6 * (1.0 + std::abs(w))) dup = true;
                if (!dup) found.push_back({E, w});
            }
    return found;
}

}  // namespace

TEST_CASE("theta: g=1, B=i against direct summation") {
    double direct = 0.0;
    for (int n = -20; n <= 20; ++n) direct += std::exp(-pi * n * n);
    CHECK(std::abs(direct - 1.08643481) < 1e-8);
    const ThetaContext ctx(ones_b(I));
    CHECK(std::abs(theta(ctx, CVector::Zero(1)) - direct) <= 1e-8);
    CVector z(1);
    z[0] = cplx{0.5, 0.5};
    CHECK(std::abs(theta(ctx, z)) <= 1e-10);
    CHECK(divisor_distance(ctx, z) <= 1e-10);
    CHECK_THROWS_AS(theta_log_dd(ctx, z, CVector::Ones(1)), Error);
}

TEST_CASE("theta: quasi-periodicity, parity and reality for computed Riemann matrices") {
    std::mt19937 rng(7);
    for (int which = 0; which < 5; ++which) {
        const auto& sd = cached(which);
        const int g = sd.curve.genus();
        const CMatrix& B = sd.periods.B;
        const ThetaContext ctx(B);
        for (int trial = 0; trial < 100; ++trial) {
            const CVector z = random_z(rng, g, 1.0, 0.5);
            const cplx t = theta(ctx, z);
            for (int k = 0; k < g; ++k) {
                const CVector ek = CVector::Unit(g, k);
                CHECK(std::abs(theta(ctx, z + ek) - t) <= 1e-10 * (1.0 + std::abs(t)));
                const cplx shifted = theta(ctx, z + B.col(k));
                const cplx expect = std::exp(-pi * I * B(k, k) - 2.0 * pi * I * z[k]) * t;
                CHECK(std::abs(shifted - expect) <= 1e-9 * std::abs(expect));
            }
            CHECK(std::abs(theta(ctx, -z) - t) <= 1e-12 * (1.0 + std::abs(t)));
            if (sd.structure.is_real()) {
                CVector mu(g);
                for (int k = 0; k < g; ++k) mu[k] = sd.reality.mu[static_cast<std::size_t>(k)];
                const cplx r = theta(ctx, z.conjugate() + mu);
                CHECK(std::abs(r - std::conj(t)) <= 1e-9 * (1.0 + std::abs(t)));
            }
        }
    }
}

TEST_CASE("theta: mu matches the classification") {
    for (int which = 0; which < 4; ++which) {
        const auto& sd = cached(which);
        CHECK(sd.reality.mu == sd.structure.mu);
    }
}

TEST_CASE("theta_log_dd: finite differences, evenness, periodicity") {
    std::mt19937 rng(11);
    for (int which : {0, 2, 4}) {
        const auto& sd = cached(which);
        const int g = sd.curve.genus();
        const ThetaContext ctx(sd.periods.B);
        for (int trial = 0; trial < 10; ++trial) {
            const CVector z = random_z(rng, g, 0.5, 0.2);
            const CVector dir = random_z(rng, g, 1.0, 1.0);
            if (divisor_distance(ctx, z) < 1e-2) continue;
            const double h = 1e-4;
            const cplx t0 = theta(ctx, z);
            const cplx lp = std::log(theta(ctx, z + h * dir) / t0), lm = std::log(theta(ctx, z - h * dir) / t0);
            const cplx fd = (lp + lm) / (h * h);
            const cplx an = theta_log_dd(ctx, z, dir);
            CHECK(std::abs(an - fd) <= 1e-6 * (1.0 + std::abs(an)));
            CHECK(std::abs(theta_log_dd(ctx, -z, dir) - an) <= 1e-9 * (1.0 + std::abs(an)));
            for (int k = 0; k < g; ++k) {
                CHECK(std::abs(theta_log_dd(ctx, z + CVector::Unit(g, k), dir) - an) <= 1e-9 * (1.0 + std::abs(an)));
                CHECK(std::abs(theta_log_dd(ctx, z + sd.periods.B.col(k), dir) - an) <= 1e-9 * (1.0 + std::abs(an)));
            }
            // Third derivative against differences of the second.
            const cplx d3 = (theta_log_dd(ctx, z + h * dir, dir) - theta_log_dd(ctx, z - h * dir, dir)) / (2.0 * h);
            CHECK(std::abs(theta_log_d3(ctx, z, dir) - d3) <= 1e-5 * (1.0 + std::abs(d3)));
        }
    }
}

TEST_CASE("reduce_mod_lattice and radius overflow") {
    const CMatrix B = ones_b(I);
    CVector z(1);
    z[0] = cplx{2.3, 3.0};
    const auto r = reduce_mod_lattice(B, z);
    CHECK(std::abs(r.z[0] - 0.3) < 1e-12);
    CHECK(r.m[0] == 2);
    CHECK(r.n[0] == 3);
    const auto r2 = reduce_mod_lattice(B, r.z);
    CHECK(r2.z == r.z);
    CHECK(lattice_equivalent(B, z, r.z));

    const ThetaContext ctx(B, 1e-15, 10);
    z[0] = cplx{0.0, 40.0};
    CHECK_THROWS_AS(theta(ctx, z), Error);
    const auto rt = theta_reduced(ctx, z);
    CHECK(std::abs(rt.value - theta(ctx, CVector::Zero(1))) < 1e-12);
}

TEST_CASE("abel_map: base point, branch points, sheet involution, path independence") {
    for (int which = 0; which < 5; ++which) {
        const auto& sd = cached(which);
        const auto& c = sd.curve;
        const auto& pd = sd.periods;
        const int g = c.genus();
        const CVector zero = CVector::Zero(g);
        {
            const cplx E{1e12, 3e11};
            CHECK(abel_map(c, pd, {E, std::sqrt(c.P(E))}).cwiseAbs().maxCoeff() <= 1e-5);
        }
        for (auto e : c.branch_points()) CHECK(lattice_distance(pd.B, 2.0 * abel_map(c, pd, {e, 0.0}), zero) <= 1e-7);
        for (cplx E : {cplx{0.3, 0.7}, cplx{-1.7, -0.2}, cplx{2.5, 1.1}}) {
            const cplx w = std::sqrt(c.P(E));
            const CVector A = abel_map(c, pd, {E, w});
            CHECK(lattice_distance(pd.B, abel_map(c, pd, {E, -w}), -A) <= 1e-7);
            // A different path to the same point (forced around the a-cycles).
            std::vector<Path> avoid;
            for (const auto& cyc : sd.basis.b_cycles)
                for (const auto& [k, loop] : cyc.terms) avoid.push_back(loop.path);
            CHECK(lattice_distance(pd.B, abel_image(c, pd, {E, w}, 1e-10, avoid).A, A) <= 1e-7);
            // Additivity along a short segment.
            const cplx E2 = E + cplx{0.05, -0.03};
            const SheetPoint P2 = continue_sqrt(c, Path::line(E, E2), w);
            CVector seg(g);
            const TrackedPath tp(c, Path::line(E, E2), w);
            for (int k = 0; k < g; ++k) {
                auto f = [&](std::size_t piece, double t, cplx x) {
                    return omega_at(pd, {x, tp.w(piece, t)})[k];
                };
                seg[k] = integrate_path(f, tp.path(), 1e-12).value;
            }
            CHECK(lattice_distance(pd.B, abel_map(c, pd, P2), A + seg) <= 1e-7);
        }
    }
}

TEST_CASE("riemann_constants: genus one") {
    const auto& sd = cached(0);
    const CVector K = riemann_constants(sd);
    CHECK(std::abs(K[0] - 0.5 * (1.0 + sd.periods.B(0, 0))) == 0.0);
    CHECK(std::abs(K[0] - cplx{0.5, 0.5}) <= 1e-6);
}

TEST_CASE("riemann_constants: zeros of theta(A(P)+z0) sum to -z0-K") {
    std::mt19937 rng(3);
    for (int which : {0, 1, 2, 3, 4}) {
        const auto& sd = cached(which);
        const int g = sd.curve.genus();
        const ThetaContext ctx(sd.periods.B);
        const CVector K = riemann_constants(sd);
        for (int trial = 0; trial < 2; ++trial) {
            const CVector z0 = random_z(rng, g, 0.5, 0.3);
            const auto zeros = zeros_of_F(sd, ctx, z0);
            CHECK(static_cast<int>(zeros.size()) == g);
            CVector sum = CVector::Zero(g);
            for (const auto& P : zeros) sum += abel_map(sd.curve, sd.periods, P);
            CHECK(lattice_distance(sd.periods.B, sum, -z0 - K) <= 1e-5);
        }
    }
}
