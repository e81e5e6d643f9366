#include "finitezone/theta.hpp"

#include <cmath>
#include <sstream>

#include "finitezone/error.hpp"

namespace fz {

namespace {

// Calls f(n) for every integer vector with lo <= n <= hi.
template <class F>
void for_each_in_box(const IVector& lo, const IVector& hi, F&& f) {
    const auto g = lo.size();
    IVector n = lo;
    if (g == 0) {
        f(n);
        return;
    }
    while (true) {
        f(n);
        Eigen::Index k = 0;
        while (k < g && n[k] == hi[k]) {
            n[k] = lo[k];
            ++k;
        }
        if (k == g) return;
        ++n[k];
    }
}

template <class F>
void for_each_in_box(int g, int r, F&& f) {
    for_each_in_box(IVector::Constant(g, -r), IVector::Constant(g, r), std::forward<F>(f));
}

cplx exponent(const CMatrix& B, const IVector& n, const CVector& z) {
    const CVector nc = n.cast<cplx>();
    return I * pi * nc.dot(B * nc) + 2.0 * pi * I * nc.dot(z);
}

}  // namespace

ThetaContext::ThetaContext(CMatrix B, double target_tol, int max_radius)
    : B_(std::move(B)), tol_(target_tol), max_radius_(max_radius) {
    if (B_.rows() != B_.cols()) throw Error(ErrorKind::InvalidInput, "Riemann matrix must be square");
    if (!(tol_ > 0.0)) throw Error(ErrorKind::InvalidInput, "theta tolerance must be positive");
    const auto g = B_.rows();
    if (g == 0) return;
    const RMatrix imB = 0.5 * (B_.imag() + B_.imag().transpose());
    Eigen::SelfAdjointEigenSolver<RMatrix> es(imB);
    lambda_min_ = es.eigenvalues().minCoeff();
    if (!(lambda_min_ > 0.0)) throw Error(ErrorKind::InvalidInput, "imaginary part of B is not positive definite");
    im_inv_ = imB.inverse();
    // Terms outside (n - c)^T Im B (n - c) <= rho^2 are below exp(-pi rho^2)
    // times the largest one; the extra log counts lattice points per shell.
    const double base = -std::log(tol_) + 2.0;
    rho_ = std::sqrt(base / pi);
    for (int it = 0; it < 3; ++it)
        rho_ = std::sqrt((base + static_cast<double>(g) * std::log(2.0 + 2.0 * rho_ / std::sqrt(lambda_min_))) / pi);
    half_width_ = rho_ * im_inv_.diagonal().cwiseSqrt();
    theta0_ = std::abs(theta(*this, CVector::Zero(g)));
}

ThetaContext::Box ThetaContext::box(const CVector& z) const {
    const int g = genus();
    const RVector c = -im_inv_ * RVector(z.imag());
    Box b{IVector(g), IVector(g)};
    for (int k = 0; k < g; ++k) {
        b.lo[k] = static_cast<int>(std::ceil(c[k] - half_width_[k]));
        b.hi[k] = static_cast<int>(std::floor(c[k] + half_width_[k]));
        if (b.hi[k] < b.lo[k]) b.hi[k] = b.lo[k] = static_cast<int>(std::lround(c[k]));
        if (std::max(std::abs(b.lo[k]), std::abs(b.hi[k])) > max_radius_) {
            std::ostringstream msg;
            msg << "theta series needs more than " << max_radius_ << " terms per axis (|Im z| = "
                << z.imag().norm() << "); reduce the argument modulo the lattice first";
            throw Error(ErrorKind::RadiusOverflow, msg.str());
        }
    }
    return b;
}

int ThetaContext::radius(const CVector& z) const {
    const Box b = box(z);
    return std::max(b.lo.cwiseAbs().maxCoeff(), b.hi.cwiseAbs().maxCoeff());
}

LatticeReduction reduce_mod_lattice(const CMatrix& B, const CVector& z) {
    const auto g = B.rows();
    LatticeReduction out{z, IVector::Zero(g), IVector::Zero(g)};
    if (g == 0) return out;
    const RMatrix imB = B.imag();
    const RVector nv = imB.fullPivLu().solve(RVector(z.imag()));
    for (Eigen::Index k = 0; k < g; ++k) out.n[k] = static_cast<int>(std::lround(nv[k]));
    CVector w = z - B * out.n.cast<cplx>();
    for (Eigen::Index k = 0; k < g; ++k) out.m[k] = static_cast<int>(std::lround(w[k].real()));
    out.z = w - out.m.cast<cplx>();
    return out;
}

double lattice_distance(const CMatrix& B, const CVector& u, const CVector& v) {
    const CVector d = u - v;
    const auto r = reduce_mod_lattice(B, d);
    // Neighbouring cells can be closer when B is skewed.
    double best = r.z.cwiseAbs().maxCoeff();
    const auto g = B.rows();
    for_each_in_box(static_cast<int>(g), 1, [&](const IVector& n) {
        for_each_in_box(static_cast<int>(g), 1, [&](const IVector& m) {
            const CVector c = r.z - m.cast<cplx>() - B * n.cast<cplx>();
            best = std::min(best, c.cwiseAbs().maxCoeff());
        });
    });
    return best;
}

bool lattice_equivalent(const CMatrix& B, const CVector& u, const CVector& v, double tol) {
    return lattice_distance(B, u, v) <= tol;
}

cplx theta(const ThetaContext& ctx, const CVector& z) {
    const int g = ctx.genus();
    if (g == 0) return 1.0;
    const auto bx = ctx.box(z);
    cplx sum = 0.0;
    for_each_in_box(bx.lo, bx.hi, [&](const IVector& n) { sum += std::exp(exponent(ctx.B(), n, z)); });
    return sum;
}

ReducedTheta theta_reduced(const ThetaContext& ctx, const CVector& z) {
    if (ctx.genus() == 0) return {0.0, 1.0};
    const auto r = reduce_mod_lattice(ctx.B(), z);
    // theta(w + m + B n) = exp(-pi i n.B.n - 2 pi i n.w) theta(w).
    const CVector nc = r.n.cast<cplx>();
    const cplx lf = -I * pi * nc.dot(ctx.B() * nc) - 2.0 * pi * I * nc.dot(r.z);
    return {lf, theta(ctx, r.z)};
}

ThetaJet theta_jet(const ThetaContext& ctx, const CVector& z, const CVector& dir) {
    const int g = ctx.genus();
    if (g == 0) return {1.0, 0.0, 0.0, 0.0};
    const auto bx = ctx.box(z);
    ThetaJet j{0.0, 0.0, 0.0, 0.0};
    for_each_in_box(bx.lo, bx.hi, [&](const IVector& n) {
        const cplx t = std::exp(exponent(ctx.B(), n, z));
        const cplx f = 2.0 * pi * I * n.cast<cplx>().dot(dir);
        j.d0 += t;
        j.d1 += f * t;
        j.d2 += f * f * t;
        j.d3 += f * f * f * t;
    });
    return j;
}

CVector theta_gradient(const ThetaContext& ctx, const CVector& z) {
    const int g = ctx.genus();
    CVector grad = CVector::Zero(g);
    if (g == 0) return grad;
    const auto bx = ctx.box(z);
    for_each_in_box(bx.lo, bx.hi, [&](const IVector& n) {
        grad += (2.0 * pi * I * std::exp(exponent(ctx.B(), n, z))) * n.cast<cplx>();
    });
    return grad;
}

double divisor_distance(const ThetaContext& ctx, const CVector& z) {
    if (ctx.genus() == 0) return 1.0;
    return std::abs(theta(ctx, reduce_mod_lattice(ctx.B(), z).z));
}

namespace {

ThetaJet reduced_jet(const ThetaContext& ctx, const CVector& z, const CVector& dir) {
    // log theta differs from its reduced value by a function linear in z, so
    // derivatives of order >= 2 of log theta agree.
    const CVector w = reduce_mod_lattice(ctx.B(), z).z;
    const ThetaJet j = theta_jet(ctx, w, dir);
    if (std::abs(j.d0) < ctx.divisor_threshold()) {
        std::ostringstream msg;
        msg << "|theta| = " << std::abs(j.d0) << " below divisor threshold " << ctx.divisor_threshold();
        throw Error(ErrorKind::OnThetaDivisor, msg.str());
    }
    return j;
}

}  // namespace

cplx theta_log_dd(const ThetaContext& ctx, const CVector& z, const CVector& dir) {
    if (ctx.genus() == 0) return 0.0;
    const ThetaJet j = reduced_jet(ctx, z, dir);
    const cplx a = j.d1 / j.d0, b = j.d2 / j.d0;
    return b - a * a;
}

cplx theta_log_d3(const ThetaContext& ctx, const CVector& z, const CVector& dir) {
    if (ctx.genus() == 0) return 0.0;
    const ThetaJet j = reduced_jet(ctx, z, dir);
    const cplx a = j.d1 / j.d0, b = j.d2 / j.d0, c = j.d3 / j.d0;
    return c - 3.0 * a * b + 2.0 * a * a * a;
}

}  // namespace fz
