#include "finitezone/floquet.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include "finitezone/error.hpp"
#include "finitezone/ode.hpp"

namespace fz {

MonodromyResult monodromy(const PotentialFn& u, double T, cplx E, double tol) {
    if (!(T > 0.0)) throw Error(ErrorKind::InvalidInput, "period must be positive");
    // y = (c, c', s, s').
    const VectorField rhs = [&u, E](double x, const CVector& y) {
        const cplx q = u(x) - E;
        CVector d(4);
        d << y[1], q * y[0], y[3], q * y[2];
        return d;
    };
    CVector y0(4);
    y0 << 1.0, 0.0, 0.0, 1.0;
    const Trajectory tr = solve_ivp(rhs, y0, 0.0, T, tol);
    MonodromyResult out;
    for (const auto& y : tr.states())
        out.det_error = std::max(out.det_error, std::abs(y[0] * y[3] - y[2] * y[1] - 1.0));
    const CVector& yT = tr.final_state();
    out.matrix << yT[0], yT[2], yT[1], yT[3];
    out.r = 0.5 * (yT[0] + yT[3]);
    std::tie(out.lambda_plus, out.lambda_minus) = multipliers(out.r);
    return out;
}

std::pair<cplx, cplx> multipliers(cplx r) {
    const cplx s = std::sqrt(r * r - 1.0);
    cplx a = r + s, b = r - s;
    if (std::abs(a) < std::abs(b)) std::swap(a, b);
    // The smaller root from the product avoids cancellation.
    if (a != 0.0) b = 1.0 / a;
    return {a, b};
}

cplx ScanGrid::node(int i_re, int i_im) const {
    const double x = n_re > 1 ? re_min + (re_max - re_min) * i_re / (n_re - 1) : re_min;
    const double y = n_im > 1 ? im_min + (im_max - im_min) * i_im / (n_im - 1) : im_min;
    return {x, y};
}

BlochScan bloch_scan(const PotentialFn& u, double T, const ScanGrid& grid, double eps, double tol,
                     unsigned threads) {
    if (grid.n_re < 1 || grid.n_im < 1) throw Error(ErrorKind::InvalidInput, "scan grid needs at least one node");
    BlochScan scan{grid, eps, {}, {}, {}};
    const std::size_t n = static_cast<std::size_t>(grid.n_re) * static_cast<std::size_t>(grid.n_im);
    scan.abs_lambda.assign(n, std::numeric_limits<double>::quiet_NaN());
    scan.in_spectrum.assign(n, 0);
    std::vector<std::string> errs(n);
    std::atomic<int> next_row{0};
    auto work = [&] {
        for (int j = next_row++; j < grid.n_im; j = next_row++) {
            for (int i = 0; i < grid.n_re; ++i) {
                const std::size_t k = static_cast<std::size_t>(j) * grid.n_re + i;
                try {
                    const auto m = monodromy(u, T, grid.node(i, j), tol);
                    const double a = std::abs(m.lambda_plus), b = std::abs(m.lambda_minus);
                    scan.abs_lambda[k] = std::abs(a - 1.0) <= std::abs(b - 1.0) ? a : b;
                    scan.in_spectrum[k] = std::min(a, 1.0 / a) >= 1.0 - eps ? 1 : 0;
                } catch (const std::exception& e) {
                    std::ostringstream msg;
                    msg << i << "," << j << ": " << e.what();
                    errs[k] = msg.str();
                }
            }
        }
    };
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(grid.n_im));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    for (auto& e : errs)
        if (!e.empty()) scan.errors.push_back(std::move(e));
    return scan;
}

void write_scan_csv(std::ostream& os, const BlochScan& scan) {
    const auto old = os.precision(17);
    os << "re_E,im_E,abs_lambda,in_spectrum\n";
    for (int j = 0; j < scan.grid.n_im; ++j)
        for (int i = 0; i < scan.grid.n_re; ++i) {
            const std::size_t k = static_cast<std::size_t>(j) * scan.grid.n_re + i;
            const cplx E = scan.grid.node(i, j);
            os << E.real() << ',' << E.imag() << ',' << scan.abs_lambda[k] << ',' << int(scan.in_spectrum[k]) << '\n';
        }
    os.precision(old);
}

BranchRecovery recover_branch_points(const PotentialFn& u, double T, const std::vector<cplx>& guesses, double tol) {
    BranchRecovery out;
    auto f = [&](cplx E) {
        const cplx r = monodromy(u, T, E, tol).r;
        return r * r - 1.0;
    };
    auto df = [&](cplx E) {
        const double h = 1e-4 * (1.0 + std::abs(E));
        return (f(E + h) - f(E - h)) / (2.0 * h);
    };
    auto merge = [](std::vector<cplx>& v, cplx E) {
        for (cplx x : v)
            if (std::abs(x - E) <= 1e-5) return;
        v.push_back(E);
    };
    for (cplx E : guesses) {
        try {
            bool done = false;
            for (int it = 0; it < 60 && !done; ++it) {
                const cplx d = df(E);
                if (d == 0.0) break;
                const cplx step = f(E) / d;
                E -= step;
                done = std::abs(step) <= 1e-11 * (1.0 + std::abs(E));
            }
            const cplx d = df(E);
            if (!done && std::abs(d) >= 1e-4) {
                std::ostringstream msg;
                msg << "Newton from guess did not converge (last E = " << E << ")";
                throw Error(ErrorKind::NoConvergence, msg.str());
            }
            if (std::abs(d) < 1e-4) {
                if (std::abs(f(E)) <= 1e-6) merge(out.double_zeros, E);
                else throw Error(ErrorKind::NoConvergence, "iteration stalled away from a zero");
            } else {
                merge(out.simple, E);
            }
        } catch (const Error& e) {
            out.failures.push_back(e.what());
        }
    }
    return out;
}

}  // namespace fz
