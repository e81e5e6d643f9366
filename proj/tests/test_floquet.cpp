#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "finitezone/error.hpp"
#include "finitezone/floquet.hpp"
#include "finitezone/potential.hpp"

using namespace fz;

namespace {

std::shared_ptr<const SpectralData> build(std::vector<cplx> e) {
    return std::make_shared<const SpectralData>(SpectralData::build(SpectralCurve(std::move(e))));
}

PotentialFn free_u() {
    return [](double) { return cplx{0.0}; };
}

PotentialFn model_u(const std::shared_ptr<const PotentialModel>& m) {
    return [m](double x) { return potential_u(*m, x); };
}

std::shared_ptr<const PotentialModel> genus1(std::vector<cplx> e, cplx z0) {
    return std::make_shared<const PotentialModel>(build(std::move(e)), CVector::Constant(1, z0));
}

bool near_any(const std::vector<cplx>& v, cplx z, double tol) {
    for (cplx x : v)
        if (std::abs(x - z) <= tol) return true;
    return false;
}

}  // namespace

TEST_CASE("free monodromy") {
    for (cplx E : {cplx{0.25}, cplx{1.0}, cplx{2.0, 1.0}}) {
        const auto m = monodromy(free_u(), 2 * pi, E);
        CHECK(std::abs(m.r - std::cos(2 * pi * std::sqrt(E))) <= 1e-8);
        CHECK(m.det_error <= 1e-7);
        CHECK(std::abs(m.lambda_plus * m.lambda_minus - 1.0) <= 1e-7);
    }
    CHECK_THROWS_AS(monodromy(free_u(), 0.0, 1.0), Error);
}

TEST_CASE("multipliers") {
    auto [a, b] = multipliers(1.0);
    CHECK(std::abs(a - 1.0) <= 1e-15);
    CHECK(std::abs(b - 1.0) <= 1e-15);
    std::tie(a, b) = multipliers(0.0);
    CHECK(std::abs(std::abs(a) - 1.0) <= 1e-15);
    CHECK(std::abs(a * b - 1.0) <= 1e-15);
    CHECK(std::abs(a + b) <= 1e-15);
    CHECK(std::abs(a.imag()) == doctest::Approx(1.0));
    std::tie(a, b) = multipliers(1.25);
    CHECK(std::abs(a - 2.0) <= 1e-15);
    CHECK(std::abs(b - 0.5) <= 1e-15);
    std::tie(a, b) = multipliers(-1.25);
    CHECK(std::abs(a + 2.0) <= 1e-15);
}

TEST_CASE("determinant and analyticity on theta potentials") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    for (auto m : {genus1({-1.0, 0.0, 1.0}, 0.0), genus1({-1.0, 0.0, 1.0}, 0.3)}) {
        const auto u = model_u(m);
        const double T = *m->period();
        for (int i = 0; i < 5; ++i) CHECK(monodromy(u, T, {d(rng), d(rng)}).det_error <= 1e-7);
        // Mean value over a circle reproduces the centre.
        const cplx c{0.4, 0.3};
        cplx mean = 0.0;
        const int n = 16;
        for (int k = 0; k < n; ++k) mean += monodromy(u, T, c + 0.2 * std::exp(2.0 * pi * I * double(k) / double(n))).r;
        CHECK(std::abs(mean / double(n) - monodromy(u, T, c).r) <= 1e-6);
    }
}

TEST_CASE("free branch points: only E = 0 is simple") {
    const auto rec = recover_branch_points(free_u(), 2 * pi, {0.02, 0.26, 0.98, cplx{0.01, 0.01}});
    REQUIRE(rec.simple.size() == 1);
    CHECK(std::abs(rec.simple[0]) <= 1e-6);
    CHECK(near_any(rec.double_zeros, 0.25, 1e-3));
    CHECK(near_any(rec.double_zeros, 1.0, 1e-3));
}

TEST_CASE("branch points recovered from genus-1 potentials") {
    const std::vector<cplx> e = {-1.0, 0.0, 1.0};
    for (cplx z0 : {cplx{0.0}, cplx{0.3}}) {
        const auto m = genus1(e, z0);
        const auto u = model_u(m);
        const double T = *m->period();
        const auto rec = recover_branch_points(u, T, {-1.1, 0.1, 0.9, cplx{1.05, 0.05}});
        CHECK(rec.simple.size() == 3);
        for (cplx x : e) CHECK(near_any(rec.simple, x, 1e-4));
        for (cplx x : e) CHECK(std::abs(monodromy(u, T, x).r * monodromy(u, T, x).r - 1.0) <= 1e-4);
    }
    const auto s = build({0.0, I, -I});
    const double alpha = s->periods.B(0, 0).imag();
    const auto m = std::make_shared<const PotentialModel>(s, CVector::Constant(1, cplx{0.1, alpha / 2}));
    REQUIRE(m->period());
    const auto rec = recover_branch_points(model_u(m), *m->period(), {0.05, cplx{0.05, 0.95}, cplx{-0.05, -1.05}});
    CHECK(rec.simple.size() == 3);
    for (cplx x : {cplx{0.0}, I, -I}) CHECK(near_any(rec.simple, x, 1e-3));
}

TEST_CASE("Bloch scans") {
    ScanGrid grid{-1.0, 3.0, -0.5, 0.5, 9, 5};
    const auto free = bloch_scan(free_u(), 2 * pi, grid, 1e-3, 1e-10, 3);
    CHECK(free.errors.empty());
    for (int j = 0; j < grid.n_im; ++j)
        for (int i = 0; i < grid.n_re; ++i) {
            const cplx E = grid.node(i, j);
            const bool expect = E.imag() == 0.0 && E.real() >= 0.0;
            CHECK(bool(free.in_spectrum[static_cast<std::size_t>(j * grid.n_re + i)]) == expect);
        }
    // Thread count does not change the output.
    const auto one = bloch_scan(free_u(), 2 * pi, grid, 1e-3, 1e-10, 1);
    CHECK(one.abs_lambda == free.abs_lambda);

    const auto real = genus1({-1.0, 0.0, 1.0}, 0.0);
    ScanGrid g2{-1.5, 2.0, -0.4, 0.4, 15, 5};
    const auto rs = bloch_scan(model_u(real), *real->period(), g2);
    for (int j = 0; j < g2.n_im; ++j)
        for (int i = 0; i < g2.n_re; ++i) {
            const cplx E = g2.node(i, j);
            const bool in = rs.in_spectrum[static_cast<std::size_t>(j * g2.n_re + i)];
            if (E.imag() != 0.0) CHECK_FALSE(in);
            const double x = E.real();
            if (E.imag() == 0.0 && std::min({std::abs(x + 1.0), std::abs(x), std::abs(x - 1.0)}) > 0.05)
                CHECK(in == ((x > -1.0 && x < 0.0) || x > 1.0));
        }

    const auto pt = genus1({-1.0, 0.0, 1.0}, 0.3);
    ScanGrid g3{-1.5, 2.0, -0.6, 0.6, 15, 7};
    const auto ps = bloch_scan(model_u(pt), *pt->period(), g3, 2e-2);
    for (int j = 0; j < g3.n_im; ++j)
        for (int i = 0; i < g3.n_re; ++i) {
            const std::size_t a = static_cast<std::size_t>(j * g3.n_re + i);
            const std::size_t b = static_cast<std::size_t>((g3.n_im - 1 - j) * g3.n_re + i);
            CHECK(std::abs(ps.abs_lambda[a] - ps.abs_lambda[b]) <= 1e-6);
            CHECK(ps.in_spectrum[a] == ps.in_spectrum[b]);
        }

    std::ostringstream csv;
    write_scan_csv(csv, free);
    std::istringstream in(csv.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "re_E,im_E,abs_lambda,in_spectrum");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == grid.n_re * grid.n_im);
}
