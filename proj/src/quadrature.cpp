#include "finitezone/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <sstream>

#include "finitezone/error.hpp"

namespace fz {

namespace {

// Kronrod 15-point nodes on [-1,1] (non-negative half) with the embedded
// Gauss 7-point weights on the odd-indexed nodes.
constexpr std::array<double, 8> xk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> wk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780, 0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Interval {
    double a, b;
    cplx value;
    double error;
    bool operator<(const Interval& o) const { return error < o.error; }
};

Interval gk15(const std::function<cplx(double)>& g, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const cplx fc = g(c);
    cplx kron = fc * wk[7];
    cplx gauss = fc * wg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * xk[j];
        const cplx f1 = g(c - dx), f2 = g(c + dx);
        kron += wk[j] * (f1 + f2);
        if (j % 2 == 1) gauss += wg[j / 2] * (f1 + f2);
    }
    return Interval{a, b, kron * h, std::abs((kron - gauss) * h)};
}

// Maps s in [0,1] onto t in [0,1] so that the Jacobian vanishes like sqrt at
// the declared singular ends.
std::function<cplx(double)> desingularize(const std::function<cplx(double)>& g, Singular s) {
    switch (s) {
        case Singular::none: return g;
        case Singular::left: return [g](double u) { return g(u * u) * (2.0 * u); };
        case Singular::right:
            return [g](double u) {
                const double v = 1.0 - u;
                return g(1.0 - v * v) * (2.0 * v);
            };
        case Singular::both:
            return [g](double u) {
                const double sn = std::sin(0.5 * pi * u);
                return g(sn * sn) * (0.5 * pi * std::sin(pi * u));
            };
    }
    return g;
}

}  // namespace

QuadratureResult integrate_unit(const std::function<cplx(double)>& g0, Singular singular, double tol,
                                int max_intervals) {
    const auto g = desingularize(g0, singular);
    std::priority_queue<Interval> heap;
    Interval first = gk15(g, 0.0, 1.0);
    cplx total = first.value;
    double err = first.error;
    heap.push(first);
    int evaluations = 15;

    while (err > tol && static_cast<int>(heap.size()) < max_intervals) {
        Interval worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            heap.push(worst);
            break;
        }
        Interval left = gk15(g, worst.a, mid), right = gk15(g, mid, worst.b);
        evaluations += 30;
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        // Recompute the running sums occasionally to stop cancellation drift.
        if (heap.size() % 256 == 0) {
            auto copy = heap;
            total = 0.0;
            err = 0.0;
            while (!copy.empty()) {
                total += copy.top().value;
                err += copy.top().error;
                copy.pop();
            }
        }
    }

    // Round-off floor: the estimate cannot drop below a few ulps of the result.
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(total));
    if (err > tol && err > floor) {
        std::ostringstream msg;
        msg << "quadrature error estimate " << err << " above tolerance " << tol << " after " << heap.size()
            << " subintervals";
        throw Error(ErrorKind::NonConvergence, msg.str());
    }
    return {total, err, evaluations};
}

QuadratureResult integrate_path(const PathIntegrand& f, const Path& path, double tol) {
    QuadratureResult out{0.0, 0.0, 0};
    if (path.empty()) return out;
    const double piece_tol = tol / static_cast<double>(path.size());
    for (std::size_t k = 0; k < path.size(); ++k) {
        const Piece& p = path.pieces()[k];
        auto g = [&](double t) { return f(k, t, p.at(t)) * p.tangent(t); };
        const auto r = integrate_unit(g, p.singular, piece_tol);
        out.value += r.value;
        out.error += r.error;
        out.evaluations += r.evaluations;
    }
    return out;
}

QuadratureResult integrate_path(const std::function<cplx(cplx)>& f, const Path& path, double tol) {
    return integrate_path([&f](std::size_t, double, cplx E) { return f(E); }, path, tol);
}

}  // namespace fz
