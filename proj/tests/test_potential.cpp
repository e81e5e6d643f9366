#include <cmath>
#include <random>

#include "doctest.h"
#include "finitezone/error.hpp"
#include "finitezone/potential.hpp"

using namespace fz;

namespace {

std::shared_ptr<const SpectralData> shared(int which) {
    static const std::vector<std::shared_ptr<const SpectralData>> all = [] {
        std::vector<std::vector<cplx>> bps = {
            {-1.0, 0.0, 1.0},
            {0.0, I, -I},
            {-2.0, -1.0, 0.0, 1.0, 2.0},
            {-1.0, 0.0, 1.0, 2.0 * I, -2.0 * I},
            {cplx{0.5, 0.1}, cplx{-1, 1.5}, cplx{-1.2, -1.5}, cplx{2, 0.3}, cplx{-2.5, 0}},
            {1.5},
        };
        std::vector<std::shared_ptr<const SpectralData>> v;
        for (auto& b : bps) v.push_back(std::make_shared<const SpectralData>(SpectralData::build(SpectralCurve(b))));
        return v;
    }();
    return all[static_cast<std::size_t>(which)];
}

CVector vec(std::initializer_list<cplx> xs) {
    CVector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index k = 0;
    for (cplx x : xs) v[k++] = x;
    return v;
}

SheetPoint point(const SpectralCurve& c, cplx E, double sheet = 1.0) { return {E, sheet * std::sqrt(c.P(E))}; }

// Relative residual of -psi'' + u psi - E psi by the five-point stencil.
double schrodinger_residual(const PotentialModel& m, const SheetPoint& P, double x, double h = 1e-3) {
    const auto ps = bloch_psi(m, P, std::vector<double>{x - 2 * h, x - h, x, x + h, x + 2 * h});
    const cplx d2 = (-ps[0] + 16.0 * ps[1] - 30.0 * ps[2] + 16.0 * ps[3] - ps[4]) / (12.0 * h * h);
    return std::abs(-d2 + potential_u(m, x) * ps[2] - P.E * ps[2]) / std::max(1.0, std::abs(ps[2]));
}

double alpha_of(const SpectralData& sd) { return sd.periods.B(0, 0).imag(); }

}  // namespace

TEST_CASE("genus 0 gives the constant potential and plane waves") {
    const auto sd = shared(5);
    PotentialModel m(sd, CVector(0));
    CHECK(m.smooth());
    CHECK(m.symmetry() == SymmetryClass::RealAndPT);
    for (double x : {-3.0, 0.0, 2.5}) {
        CHECK(std::abs(potential_u(m, x) - 1.5) <= 1e-12);
        CHECK(std::abs(potential_du(m, x)) == 0.0);
    }
    const SheetPoint P = point(m.curve(), cplx{4.0, 1.0});
    CHECK(schrodinger_residual(m, P, 0.7) <= 1e-5);
}

TEST_CASE("Bloch function solves the Schrodinger equation") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int which : {0, 1, 2, 3, 4}) {
        const auto sd = shared(which);
        const int g = sd->curve.genus();
        CVector z0(g);
        for (int k = 0; k < g; ++k) z0[k] = cplx{0.13 + 0.07 * k, 0.05};
        PotentialModel m(sd, z0);
        for (int i = 0; i < 10; ++i) {
            const SheetPoint P = point(sd->curve, cplx{u(rng), u(rng)}, i % 2 ? 1.0 : -1.0);
            const double x = 0.5 * u(rng);
            INFO("curve " << which << " E = " << P.E << " x = " << x);
            CHECK(schrodinger_residual(m, P, x) <= 1e-5);
        }
        const SheetPoint P = point(sd->curve, cplx{0.4, 0.9});
        CHECK(std::abs(bloch_psi(m, P, 0.0) - 1.0) <= 1e-12);
    }
}

TEST_CASE("Bloch function large-E asymptotics") {
    for (int which : {0, 2, 3}) {
        const auto sd = shared(which);
        const int g = sd->curve.genus();
        PotentialModel m(sd, CVector::Constant(g, cplx{0.1, 0.02}));
        for (double phase : {0.3, 1.4, 2.9}) {
            const cplx E = 1e4 * std::exp(I * phase);
            const cplx k = std::sqrt(E);
            // Take the sheet on which q(P) ~ +sqrt(E).
            SheetPoint P = point(sd->curve, E);
            if (std::abs(abel_image(sd->curve, sd->periods, P).q - k) > 0.5 * std::abs(k)) P.w = -P.w;
            for (double x : {0.2, 0.9}) {
                const cplx r = bloch_psi(m, P, x) * std::exp(-I * k * x);
                CHECK(std::abs(r - 1.0) <= 10.0 / std::sqrt(std::abs(E)));
            }
        }
    }
}

TEST_CASE("genus-1 real chain: smooth real potential at z0 = 0") {
    const auto sd = shared(0);
    PotentialModel m(sd, vec({0.0}));
    REQUIRE(m.period());
    const double alpha = alpha_of(*sd);
    // Period T with U T in the lattice; U = i V gives T = alpha / |V|.
    CHECK(std::abs(*m.period() - alpha / std::abs(sd->periods.U[0])) <= 1e-9);
    CHECK(m.smooth());
    CHECK(m.symmetry() == SymmetryClass::RealAndPT);
    const double T = *m.period();
    double im = 0.0;
    for (int i = 0; i < 200; ++i) im = std::max(im, std::abs(potential_u(m, T * i / 200.0).imag()));
    CHECK(im <= 1e-7);
    for (double x : {0.1, 0.8, 2.0}) CHECK(std::abs(potential_u(m, x + T) - potential_u(m, x)) <= 1e-8);
}

TEST_CASE("genus-1 PT family") {
    const auto sd = shared(0);
    const double alpha = alpha_of(*sd);
    for (cplx z : {cplx{0.3, 0.0}, cplx{0.3, alpha / 2}, cplx{0.1, 0.0}}) {
        PotentialModel m(sd, vec({z}));
        CHECK(m.symmetry() == SymmetryClass::PT);
        CHECK(m.smooth());
        double pt = 0.0, im = 0.0;
        const double T = *m.period();
        for (int i = 0; i < 100; ++i) {
            const double x = T * i / 100.0;
            pt = std::max(pt, std::abs(std::conj(potential_u(m, -x)) - potential_u(m, x)));
            im = std::max(im, std::abs(potential_u(m, x).imag()));
        }
        CHECK(pt <= 1e-7);
        CHECK(im > 1e-3);
    }
}

TEST_CASE("genus-1 singular lines") {
    const auto sd = shared(0);
    const double alpha = alpha_of(*sd);
    CHECK_FALSE(PotentialModel(sd, vec({0.5})).smooth());
    CHECK_FALSE(PotentialModel(sd, vec({cplx{0.5, 0.3}})).smooth());
    CHECK_FALSE(PotentialModel(sd, vec({cplx{0.5, alpha / 2}})).smooth());
    CHECK(PotentialModel(sd, vec({cplx{0.45, alpha / 2}})).smooth());
    const PotentialModel bad(sd, vec({0.5}));
    CHECK_THROWS_AS(potential_u(bad, bad.witness().argmin), Error);
}

TEST_CASE("case 2: complex-conjugate pair") {
    const auto sd = shared(1);
    const cplx b = sd->periods.B(0, 0);
    CHECK(std::abs(b.real() - 0.5) <= 1e-7);
    const double alpha = b.imag();
    const ThetaContext ctx(sd->periods.B);
    CHECK(divisor_distance(ctx, vec({cplx{0.75, alpha / 2}})) <= 1e-8);
    for (double re : {0.25, 0.75}) {
        PotentialModel m(sd, vec({cplx{re, 0.0}}));
        CHECK(m.symmetry() == SymmetryClass::Real);
        CHECK_FALSE(m.smooth());
        CHECK(m.witness().min_theta <= 1e-6);
    }
    PotentialModel pt(sd, vec({cplx{0.1, alpha / 2}}));
    CHECK(pt.symmetry() == SymmetryClass::PT);
    CHECK(pt.smooth());
    PotentialModel edge(sd, vec({cplx{0.25, alpha / 2}}));
    CHECK(edge.symmetry() == SymmetryClass::RealAndPT);
    CHECK_FALSE(edge.smooth());
}

TEST_CASE("genus-2 reality") {
    const auto sd = shared(2);
    PotentialModel m(sd, vec({0.0, 0.0}));
    CHECK(m.symmetry() == SymmetryClass::RealAndPT);
    CHECK(m.smooth());
    for (double x : {-2.0, 0.3, 1.7}) CHECK(std::abs(potential_u(m, x).imag()) <= 1e-8);
    const auto nr = shared(4);
    std::string diag;
    CHECK(classify_symmetry(vec({0.0, 0.0}), nr->periods.B, {0.0, 0.0}, nr->structure, 1e-8, &diag) ==
          SymmetryClass::Generic);
    CHECK_FALSE(diag.empty());
    PotentialModel g(nr, vec({0.1, 0.2}));
    CHECK(g.symmetry() == SymmetryClass::Generic);
    CHECK_FALSE(g.symmetry_diagnostic().empty());
}

TEST_CASE("translation and lattice invariance of u") {
    for (int which : {0, 3}) {
        const auto sd = shared(which);
        const int g = sd->curve.genus();
        const CVector z0 = CVector::Constant(g, cplx{0.17, 0.04});
        const double s = 0.37;
        PotentialModel a(sd, z0), b(sd, z0 + sd->periods.U * s);
        CVector shift = CVector::Ones(g) + sd->periods.B.col(g - 1);
        PotentialModel c(sd, z0 + shift);
        for (double x : {-0.8, 0.2, 1.1}) {
            CHECK(std::abs(a.periods().C - b.periods().C) == 0.0);
            CHECK(std::abs(potential_u(b, x) - potential_u(a, x + s)) <= 1e-8);
            CHECK(std::abs(potential_u(c, x) - potential_u(a, x)) <= 1e-8);
        }
    }
}

TEST_CASE("potential_du matches finite differences") {
    const auto sd = shared(3);
    PotentialModel m(sd, vec({cplx{0.2, 0.1}, cplx{-0.1, 0.3}}));
    const double h = 1e-4;
    for (double x : {-0.5, 0.4}) {
        const cplx fd = (potential_u(m, x + h) - potential_u(m, x - h)) / (2 * h);
        CHECK(std::abs(fd - potential_du(m, x)) <= 1e-6 * (1.0 + std::abs(fd)));
    }
}

TEST_CASE("period detection") {
    CMatrix B(1, 1);
    B(0, 0) = cplx{0.0, 2.0};
    CVector U(1);
    U[0] = cplx{0.0, 0.5};
    REQUIRE(detect_period(B, U));
    CHECK(std::abs(*detect_period(B, U) - 4.0) <= 1e-12);
    U[0] = cplx{0.3 * std::sqrt(2.0), 0.5};
    CHECK_FALSE(detect_period(B, U));
    CHECK_FALSE(detect_period(shared(2)->periods.B, shared(2)->periods.U, 3));
}

TEST_CASE("divisor validation") {
    const auto& c = shared(0)->curve;
    CHECK_THROWS_AS(validate_divisor(c, {}), Error);
    CHECK_THROWS_AS(validate_divisor(c, {{point(c, 0.3), point(c, 0.6)}}), Error);
    CHECK_THROWS_AS(validate_divisor(c, {{{cplx{0.3, 0.0}, 5.0}}}), Error);
    CHECK_THROWS_AS(validate_divisor(c, {{point(c, 1e-7)}}), Error);
    CHECK_THROWS_AS(validate_divisor(c, {{{cplx{0.3, 0.0}, cplx{NAN, 0.0}}}}), Error);
    CHECK_NOTHROW(validate_divisor(c, {{{0.0, 0.0}}}));
    CHECK_NOTHROW(validate_divisor(c, {{point(c, 0.5)}}));
    const auto& c2 = shared(2)->curve;
    CHECK_THROWS_AS(validate_divisor(c2, {{point(c2, 0.5), point(c2, 0.5, -1.0)}}), Error);
}

TEST_CASE("divisor and z0 round trip") {
    for (int which : {0, 1, 3, 4}) {
        const auto sd = shared(which);
        const int g = sd->curve.genus();
        const CVector K = riemann_constants(*sd);
        CVector z0(g);
        for (int k = 0; k < g; ++k) z0[k] = cplx{0.21 - 0.13 * k, 0.09 + 0.05 * k};
        const DivisorData D = divisor_from_z0(*sd, z0);
        REQUIRE(static_cast<int>(D.points.size()) == g);
        const CVector back = z0_from_divisor(*sd, K, D);
        INFO("curve " << which);
        CHECK(lattice_distance(sd->periods.B, back, z0) <= 1e-6);
        // psi has its poles on D.
        PotentialModel m(sd, z0);
        for (const auto& P : D.points) CHECK_THROWS_AS(bloch_psi(m, P, 0.5), Error);
    }
}

TEST_CASE("Akhiezer divisor on a finite gap edge gives a smooth real potential") {
    const auto sd = shared(0);
    const CVector K = riemann_constants(*sd);
    // The finite gap is (0, 1); an edge of the infinite gap gives a singular one.
    for (double e : {0.0, 1.0}) {
        const CVector z0 = z0_from_divisor(*sd, K, {{{e, 0.0}}});
        PotentialModel m(sd, z0);
        CHECK(m.symmetry() == SymmetryClass::RealAndPT);
        CHECK(m.smooth());
    }
    PotentialModel s(sd, z0_from_divisor(*sd, K, {{{-1.0, 0.0}}}));
    CHECK(s.symmetry() == SymmetryClass::RealAndPT);
    CHECK_FALSE(s.smooth());
}
