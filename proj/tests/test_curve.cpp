#include <cmath>

#include "doctest.h"
#include "finitezone/curve.hpp"
#include "finitezone/error.hpp"

using namespace fz;

TEST_CASE("classify_real_structure examples") {
    {
        auto rs = classify_real_structure(SpectralCurve({-1.0, 0.0, 1.0}));
        CHECK(rs.kind == RealKind::MCurve);
        REQUIRE(rs.mu.size() == 1);
        CHECK(rs.mu[0] == 0.0);
    }
    {
        auto rs = classify_real_structure(SpectralCurve({0.0, I, -I}));
        CHECK(rs.kind == RealKind::NonSeparating);
        CHECK(rs.n_ovals == 1);
        CHECK(rs.mu[0] == 0.5);
        CHECK(rs.conj_pairs.size() == 1);
    }
    {
        auto rs = classify_real_structure(SpectralCurve({0.0, 1.0, cplx{2, 1}}));
        CHECK(rs.kind == RealKind::NonReal);
        CHECK_FALSE(rs.diagnostic.empty());
    }
    {
        auto rs = classify_real_structure(SpectralCurve({-1.0, 0.0, 1.0, 2.0 * I, -2.0 * I}));
        CHECK(rs.kind == RealKind::NonSeparating);
        CHECK(rs.n_ovals == 2);
        CHECK(rs.mu == std::vector<double>{0.5, 0.5});
    }
}

TEST_CASE("classify_real_structure is conjugation-equivariant") {
    const std::vector<std::vector<cplx>> configs = {
        {cplx{0.3, 0}, cplx{-1, 2}, cplx{-1, -2}, cplx{2, 0.5}, cplx{2, -0.5}},
        {cplx{0, 0}, cplx{1, 1}, cplx{3, 0}},
        {cplx{-3, 0}, cplx{-1, 0}, cplx{2, 0}},
    };
    for (const auto& c : configs) {
        std::vector<cplx> conj;
        for (auto z : c) conj.push_back(std::conj(z));
        auto a = classify_real_structure(SpectralCurve(c));
        auto b = classify_real_structure(SpectralCurve(conj));
        CHECK(a.kind == b.kind);
        CHECK(a.mu == b.mu);
        CHECK(a.real_roots == b.real_roots);
        CHECK(a.n_ovals == b.n_ovals);
    }
}

TEST_CASE("classify_real_structure rejects ambiguous pairing") {
    const double tol = 1e-6;
    SpectralCurve c({cplx{0, 0.5e-6}, cplx{0, -1.2e-6}, 1.0}, tol);
    CHECK_THROWS_AS(classify_real_structure(c), Error);
}

TEST_CASE("SpectralCurve validation") {
    CHECK_THROWS_AS(SpectralCurve({0.0, 1.0}), Error);
    CHECK_THROWS_AS(SpectralCurve({0.0, 1.0, 1.0}), Error);
    CHECK_NOTHROW(SpectralCurve({2.0}));
}

TEST_CASE("build_cut_system layouts") {
    {
        SpectralCurve c({-1.0, 0.0, 1.0});
        auto cs = build_cut_system(c, classify_real_structure(c));
        REQUIRE(cs.cuts.size() == 1);
        CHECK(cs.cuts[0].from == cplx{-1.0});
        CHECK(cs.cuts[0].to == cplx{0.0});
        CHECK(cs.infinite_from == cplx{1.0});
        CHECK(cs.infinite_direction == cplx{1.0});
    }
    {
        SpectralCurve c({-2.0, -1.0, 0.0, 1.0, 2.0});
        auto cs = build_cut_system(c, classify_real_structure(c));
        REQUIRE(cs.cuts.size() == 2);
        CHECK(cs.cuts[0].from == cplx{-2.0});
        CHECK(cs.cuts[0].to == cplx{-1.0});
        CHECK(cs.cuts[1].from == cplx{0.0});
        CHECK(cs.cuts[1].to == cplx{1.0});
        CHECK(cs.infinite_from == cplx{2.0});
    }
    {
        // The straight cut between i and -i would pass through the real root 0;
        // the layout detours it to the left of every real root.
        SpectralCurve c({0.0, I, -I});
        auto cs = build_cut_system(c, classify_real_structure(c));
        REQUIRE(cs.cuts.size() == 1);
        const auto& route = cs.cuts[0].route;
        CHECK(route.size() == 3);
        CHECK(route[1].real() < 0.0);
        CHECK(route[1].imag() == 0.0);
        CHECK(cs.infinite_from == cplx{0.0});
        CHECK(cs.clearance > 0.5);
    }
}

TEST_CASE("continue_sqrt: monodromy around branch points and cuts") {
    SpectralCurve c({-1.0, 0.0, 1.0});
    {
        const cplx w0 = std::sqrt(c.P(4.0));
        auto p = continue_sqrt(c, Path::line(4.0, 4.0), w0);
        CHECK(std::abs(p.w - std::sqrt(60.0)) < 1e-12);
        CHECK(std::abs(std::sqrt(60.0) - 7.74597) < 1e-5);
    }
    {
        // Loop around the single branch point 1.
        const Path loop = Path::circle(1.0, 0.5);
        const cplx E0 = loop.start();
        const cplx w0 = std::sqrt(c.P(E0));
        auto p = continue_sqrt(c, loop, w0);
        CHECK(std::abs(p.w + w0) < 1e-12 * (1 + std::abs(w0)));
    }
    {
        // Loop around the cut [-1, 0].
        const Path loop = sausage({-1.0, 0.0}, 0.3);
        const cplx w0 = std::sqrt(c.P(loop.start()));
        auto p = continue_sqrt(c, loop, w0);
        CHECK(std::abs(p.w - w0) < 1e-12 * (1 + std::abs(w0)));
    }
    {
        // Parity property over random closed loops.
        for (int k = 0; k < 8; ++k) {
            const cplx center{-1.5 + 0.4 * k, 0.1 * (k % 3)};
            const double radius = 0.35 + 0.05 * k;
            const Path loop = Path::circle(center, radius, 0.3 * k);
            int enclosed = 0;
            for (auto e : c.branch_points()) enclosed += winding_number(loop, e);
            const cplx w0 = std::sqrt(c.P(loop.start()));
            auto p = continue_sqrt(c, loop, w0);
            const cplx expected = (enclosed % 2 == 0) ? w0 : -w0;
            CHECK(std::abs(p.w - expected) < 1e-10 * (1 + std::abs(w0)));
            CHECK(on_curve(c, p));
        }
    }
    CHECK_THROWS_AS(continue_sqrt(c, Path::line(-2.0, 2.0), std::sqrt(c.P(-2.0))), Error);
}

TEST_CASE("build_homology_basis gives a canonical intersection matrix") {
    const std::vector<std::vector<cplx>> configs = {
        {-1.0, 0.0, 1.0},
        {0.0, I, -I},
        {-2.0, -1.0, 0.0, 1.0, 2.0},
        {-1.0, 0.0, 1.0, 2.0 * I, -2.0 * I},
        {cplx{0.1, 0.2}, cplx{1.3, -0.4}, cplx{-0.8, 0.9}},
        {cplx{0.5, 0}, cplx{-1, 1.5}, cplx{-1, -1.5}, cplx{2, 0}, cplx{-2.5, 0}},
    };
    for (const auto& bp : configs) {
        SpectralCurve c(bp);
        const int g = c.genus();
        auto basis = build_homology_basis(c, build_cut_system(c, classify_real_structure(c)));
        IMatrix J = IMatrix::Zero(2 * g, 2 * g);
        J.topRightCorner(g, g) = IMatrix::Identity(g, g);
        J.bottomLeftCorner(g, g) = -IMatrix::Identity(g, g);
        CHECK(basis.intersection_matrix == J);
        for (const auto& cyc : basis.a_cycles)
            for (const auto& [coef, loop] : cyc.terms) CHECK(loop.path.closed());
    }
}
