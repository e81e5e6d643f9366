#include "finitezone/potential.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "finitezone/error.hpp"

namespace fz {

std::string to_string(SymmetryClass s) {
    switch (s) {
        case SymmetryClass::PT: return "PT";
        case SymmetryClass::Real: return "Real";
        case SymmetryClass::RealAndPT: return "RealAndPT";
        case SymmetryClass::Generic: return "Generic";
    }
    return "?";
}

namespace {

double nearest_branch(const SpectralCurve& c, cplx E, std::size_t* idx = nullptr) {
    double best = 1e300;
    const auto& e = c.branch_points();
    for (std::size_t i = 0; i < e.size(); ++i) {
        const double d = std::abs(E - e[i]);
        if (d < best) {
            best = d;
            if (idx) *idx = i;
        }
    }
    return best;
}

CVector log_gradient(const ThetaContext& ctx, const CVector& z) {
    const auto r = reduce_mod_lattice(ctx.B(), z);
    return theta_gradient(ctx, r.z) / theta(ctx, r.z) - 2.0 * pi * I * r.n.cast<cplx>();
}

// Lattice-invariant size of theta: |theta(z)| exp(-pi y.(Im B)^{-1}.y), y = Im z.
double theta_norm(const ThetaContext& ctx, const CVector& z) {
    const CVector r = reduce_mod_lattice(ctx.B(), z).z;
    const RVector y = r.imag();
    return std::abs(theta(ctx, r)) * std::exp(-pi * y.dot(ctx.im_inverse() * y));
}

}  // namespace

void validate_divisor(const SpectralCurve& curve, const DivisorData& D, double branch_factor) {
    const int g = curve.genus();
    if (static_cast<int>(D.points.size()) != g) {
        std::ostringstream msg;
        msg << "divisor has " << D.points.size() << " points, genus is " << g;
        throw Error(ErrorKind::InvalidInput, msg.str());
    }
    const double delta = curve.delta_branch(branch_factor);
    const double exact = 1e-12 * (1.0 + curve.scale());
    for (const auto& P : D.points) {
        if (!std::isfinite(P.E.real()) || !std::isfinite(P.E.imag()) || !std::isfinite(P.w.real()) ||
            !std::isfinite(P.w.imag()))
            throw Error(ErrorKind::InvalidInput, "divisor point is not finite");
        const double d = nearest_branch(curve, P.E);
        if (d <= exact) {
            if (std::abs(P.w) > 1e-6) throw Error(ErrorKind::InvalidInput, "divisor point on a branch point needs w = 0");
            continue;
        }
        if (d < delta) throw Error(ErrorKind::InvalidInput, "divisor point too close to a branch point");
        if (!on_curve(curve, P)) throw Error(ErrorKind::InvalidInput, "divisor point does not satisfy w^2 = P(E)");
    }
    for (std::size_t i = 0; i < D.points.size(); ++i)
        for (std::size_t j = i + 1; j < D.points.size(); ++j)
            if (std::abs(D.points[i].E - D.points[j].E) < delta)
                throw Error(ErrorKind::InvalidInput, "divisor points share a projection; the divisor is special");
}

CVector z0_from_divisor(const SpectralData& sd, const CVector& K, const DivisorData& D, double tol) {
    validate_divisor(sd.curve, D);
    CVector z = -K;
    for (const auto& P : D.points) z -= abel_map(sd.curve, sd.periods, P, tol);
    return reduce_mod_lattice(sd.periods.B, z).z;
}

DivisorData divisor_from_z0(const SpectralData& sd, const CVector& z0, double tol) {
    const auto& c = sd.curve;
    const int g = c.genus();
    DivisorData D;
    if (g == 0) return D;
    const ThetaContext ctx(sd.periods.B);
    const double min_sep = c.min_separation();
    const double L = 1.5 * (1.0 + c.scale());
    std::vector<SheetPoint> found;

    auto newton = [&](cplx E, cplx w) -> std::optional<SheetPoint> {
        for (int it = 0; it < 80; ++it) {
            const SheetPoint P{E, w};
            const CVector A = abel_map(c, sd.periods, P, tol);
            const CVector grad = log_gradient(ctx, A + z0);
            std::size_t ib = 0;
            const double d = nearest_branch(c, E, &ib);
            double move;
            if (d < 0.3 * min_sep) {
                // Chart w near a branch point: dA/dw = 2 poly(E) / P'(E).
                const CVector dA = omega_at(sd.periods, P) * w * 2.0 / c.dP(E);
                const cplx step = -1.0 / grad.cwiseProduct(dA).sum();
                cplx w1 = w + step;
                cplx E1 = E;
                for (int k = 0; k < 30; ++k) E1 -= (c.P(E1) - w1 * w1) / c.dP(E1);
                const cplx wr = std::sqrt(c.P(E1));
                w1 = std::abs(wr - w1) < std::abs(wr + w1) ? wr : -wr;
                move = std::abs(E1 - E);
                E = E1;
                w = w1;
            } else {
                cplx step = -1.0 / grad.cwiseProduct(omega_at(sd.periods, P)).sum();
                const double cap = 0.5 * (1.0 + std::abs(E));
                if (std::abs(step) > cap) step *= cap / std::abs(step);
                E += step;
                const cplx w1 = std::sqrt(c.P(E));
                w = std::abs(w1 - w) < std::abs(w1 + w) ? w1 : -w1;
                move = std::abs(step);
            }
            if (!std::isfinite(E.real()) || !std::isfinite(E.imag())) return std::nullopt;
            if (move < 1e-13 * (1.0 + std::abs(E))) {
                std::size_t i = 0;
                if (nearest_branch(c, E, &i) < 1e-9 * (1.0 + c.scale())) return SheetPoint{c.branch_points()[i], 0.0};
                return SheetPoint{E, w};
            }
        }
        return std::nullopt;
    };

    auto try_seed = [&](cplx E, double sheet) {
        const auto P = newton(E, sheet * std::sqrt(c.P(E)));
        if (!P) return;
        const CVector A = abel_map(c, sd.periods, *P, tol);
        if (theta_norm(ctx, A + z0) > 1e-8 * ctx.theta0()) return;
        for (const auto& q : found)
            if (std::abs(q.E - P->E) < 1e-6 * (1.0 + std::abs(P->E)) &&
                std::abs(q.w - P->w) < 1e-6 * (1.0 + std::abs(P->w)))
                return;
        found.push_back(*P);
    };
    // Seeds ringed around each branch point, then a grid over the branch locus.
    std::vector<cplx> seeds;
    for (cplx e : c.branch_points())
        for (int k = 0; k < 6; ++k) seeds.push_back(e + 0.35 * min_sep * std::exp(I * (0.3 + k * pi / 3.0)));
    for (int ix = 0; ix < 8; ++ix)
        for (int iy = 0; iy < 8; ++iy)
            seeds.push_back({-L + 2.0 * L * (ix + 0.43) / 8.0, -L + 2.0 * L * (iy + 0.57) / 8.0});
    for (cplx E : seeds) {
        for (double sheet : {1.0, -1.0}) try_seed(E, sheet);
        if (static_cast<int>(found.size()) > g) break;
    }
    if (static_cast<int>(found.size()) != g) {
        std::ostringstream msg;
        msg << "found " << found.size() << " zeros of theta(A(P) + z0), expected " << g;
        throw Error(ErrorKind::NoConvergence, msg.str());
    }
    D.points = std::move(found);
    return D;
}

SymmetryClass classify_symmetry(const CVector& z0, const CMatrix& B, const std::vector<double>& mu,
                                const RealStructure& rs, double tol, std::string* diagnostic) {
    auto note = [&](const std::string& s) {
        if (diagnostic) *diagnostic = s;
    };
    if (!rs.is_real()) {
        note("curve is not real");
        return SymmetryClass::Generic;
    }
    const auto g = z0.size();
    CVector m(g);
    for (Eigen::Index k = 0; k < g; ++k) m[k] = mu[static_cast<std::size_t>(k)];
    const bool real = lattice_distance(B, z0 + z0.conjugate(), m) <= tol;
    const bool pt = lattice_distance(B, z0, z0.conjugate() + m) <= tol;
    note("");
    if (real && pt) return SymmetryClass::RealAndPT;
    if (pt) return SymmetryClass::PT;
    if (real) return SymmetryClass::Real;
    return SymmetryClass::Generic;
}

std::optional<double> detect_period(const CMatrix& B, const CVector& U, int max_coeff) {
    const int g = static_cast<int>(B.rows());
    if (g == 0 || U.norm() == 0.0) return std::nullopt;
    if (g >= 3) max_coeff = std::min(max_coeff, 3);
    const double un2 = U.squaredNorm();
    std::optional<double> best;
    IVector n = IVector::Constant(g, -max_coeff), m(g);
    auto next = [&](IVector& v) {
        for (int k = 0; k < g; ++k) {
            if (v[k] < max_coeff) {
                ++v[k];
                return true;
            }
            v[k] = -max_coeff;
        }
        return false;
    };
    do {
        const CVector Bn = B * n.cast<cplx>();
        m.setConstant(-max_coeff);
        do {
            const CVector v = m.cast<cplx>() + Bn;
            const double T = U.dot(v).real() / un2;
            if (T <= 1e-12) continue;
            if ((v - U * T).norm() <= 1e-8 * (1.0 + v.norm()) && (!best || T < *best)) best = T;
        } while (next(m));
    } while (next(n));
    return best;
}

SmoothnessWitness smoothness_scan(const ThetaContext& ctx, const CVector& U, const CVector& z0, double x0, double x1,
                                  int samples) {
    if (ctx.genus() == 0) return {1.0, x0};
    samples = std::max(samples, 3);
    auto f = [&](double x) { return theta_norm(ctx, U * x + z0); };
    std::vector<double> xs(static_cast<std::size_t>(samples)), fs(xs.size());
    for (int i = 0; i < samples; ++i) {
        xs[i] = x0 + (x1 - x0) * i / (samples - 1);
        fs[i] = f(xs[i]);
    }
    std::vector<int> minima;
    for (int i = 0; i < samples; ++i) {
        const bool left = i == 0 || fs[i] <= fs[i - 1];
        const bool right = i == samples - 1 || fs[i] <= fs[i + 1];
        if (left && right) minima.push_back(i);
    }
    std::sort(minima.begin(), minima.end(), [&](int a, int b) { return fs[a] < fs[b]; });
    if (minima.size() > 6) minima.resize(6);
    SmoothnessWitness best{fs[minima.front()], xs[minima.front()]};
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int i : minima) {
        double a = xs[std::max(i - 1, 0)], b = xs[std::min(i + 1, samples - 1)];
        double c = b - gr * (b - a), d = a + gr * (b - a);
        double fc = f(c), fd = f(d);
        while (b - a > 1e-12 * (1.0 + std::abs(a))) {
            if (fc < fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - gr * (b - a);
                fc = f(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + gr * (b - a);
                fd = f(d);
            }
        }
        const double xm = 0.5 * (a + b), fm = f(xm);
        if (fm < best.min_theta) best = {fm, xm};
    }
    return best;
}

PotentialModel::PotentialModel(std::shared_ptr<const SpectralData> sd, const CVector& z0,
                               std::pair<double, double> scan_range, int scan_samples)
    : sd_(std::move(sd)), ctx_(sd_->periods.B) {
    const int g = sd_->curve.genus();
    if (z0.size() != g) throw Error(ErrorKind::InvalidInput, "z0 has the wrong dimension");
    z0_ = reduce_mod_lattice(sd_->periods.B, z0).z;
    if (g == 0) {
        symmetry_ = sd_->structure.is_real() ? SymmetryClass::RealAndPT : SymmetryClass::Generic;
        witness_ = {1.0, 0.0};
        return;
    }
    if (sd_->reality.matches_target) {
        symmetry_ = classify_symmetry(z0_, sd_->periods.B, sd_->reality.mu, sd_->structure, 1e-8, &symmetry_diag_);
    } else {
        symmetry_ = SymmetryClass::Generic;
        symmetry_diag_ = sd_->structure.is_real() ? "basis is not reality-adapted: " + sd_->reality.diagnostic
                                                  : "curve is not real";
    }
    period_ = detect_period(sd_->periods.B, sd_->periods.U);
    const auto [x0, x1] = period_ ? std::pair<double, double>{0.0, *period_} : scan_range;
    witness_ = smoothness_scan(ctx_, sd_->periods.U, z0_, x0, x1, scan_samples);
    smooth_ = witness_.min_theta > ctx_.divisor_threshold();
}

cplx potential_u(const PotentialModel& m, double x) {
    const auto& pd = m.periods();
    if (m.genus() == 0) return pd.C;
    return -2.0 * theta_log_dd(m.theta_context(), pd.U * x + m.z0(), pd.U) + pd.C;
}

cplx potential_du(const PotentialModel& m, double x) {
    const auto& pd = m.periods();
    if (m.genus() == 0) return 0.0;
    return -2.0 * theta_log_d3(m.theta_context(), pd.U * x + m.z0(), pd.U);
}

std::vector<cplx> bloch_psi(const PotentialModel& m, const SheetPoint& P, const std::vector<double>& xs) {
    const auto& pd = m.periods();
    const auto& ctx = m.theta_context();
    const AbelImage ai = abel_image(m.curve(), pd, P);
    const CVector base = ai.A + m.z0();
    const ReducedTheta den = theta_reduced(ctx, base);
    if (std::abs(den.value) < ctx.divisor_threshold())
        throw Error(ErrorKind::DivisorPole, "P lies on the pole divisor of psi");
    std::vector<cplx> out;
    out.reserve(xs.size());
    const ReducedTheta t0 = theta_reduced(ctx, m.z0());
    for (double x : xs) {
        const CVector zx = pd.U * x + m.z0();
        const ReducedTheta num = theta_reduced(ctx, base + pd.U * x);
        const ReducedTheta tx = theta_reduced(ctx, zx);
        if (std::abs(tx.value) < ctx.divisor_threshold())
            throw Error(ErrorKind::OnThetaDivisor, "potential is singular at this x");
        const cplx lf = I * x * ai.q + num.log_factor - den.log_factor + t0.log_factor - tx.log_factor;
        out.push_back(std::exp(lf) * (num.value * t0.value) / (den.value * tx.value));
    }
    return out;
}

cplx bloch_psi(const PotentialModel& m, const SheetPoint& P, double x) { return bloch_psi(m, P, std::vector{x})[0]; }

}  // namespace fz
