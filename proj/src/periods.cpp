#include "finitezone/periods.hpp"

#include <cmath>
#include <cstdint>
#include <deque>
#include <optional>
#include <unordered_map>
#include <sstream>

#include "finitezone/error.hpp"
#include "finitezone/quadrature.hpp"

namespace fz {

cplx cycle_integral(const SpectralCurve& curve, const Cycle& cycle, const std::function<cplx(cplx)>& f, double tol) {
    cplx total = 0.0;
    const double term_tol = tol / static_cast<double>(std::max<std::size_t>(1, cycle.terms.size()));
    for (const auto& [coef, loop] : cycle.terms) {
        const TrackedPath tp(curve, loop.path, loop.w_start);
        auto integrand = [&](std::size_t piece, double t, cplx E) { return f(E) / tp.w(piece, t); };
        total += static_cast<double>(coef) * integrate_path(integrand, tp.path(), term_tol).value;
    }
    return total;
}

namespace {

CMatrix raw_periods(const SpectralCurve& curve, const std::vector<Cycle>& cycles, double tol) {
    const int g = curve.genus();
    CMatrix R(g, g + 1);
    for (int j = 0; j < g; ++j) {
        for (int m = 0; m <= g; ++m) {
            R(j, m) = cycle_integral(
                curve, cycles[static_cast<std::size_t>(j)], [m](cplx E) { return std::pow(E, m); }, tol);
        }
    }
    return R;
}

}  // namespace

std::pair<CVector, CVector> quasimomentum(const CMatrix& raw_a, const CMatrix& raw_b) {
    const auto g = raw_a.rows();
    CVector coeffs(g + 1);
    coeffs[g] = 1.0;
    if (g > 0) {
        const CMatrix A = raw_a.leftCols(g);
        coeffs.head(g) = A.fullPivLu().solve(CVector(-raw_a.col(g)));
    }
    // U_k = (1/2pi) oint_{b_k} Omega, Omega = poly dE / (2w).
    CVector U = (raw_b * coeffs) / (4.0 * pi);
    return {coeffs, U};
}

cplx its_matveev_constant(const SpectralCurve& curve, const CMatrix& raw_a, const CMatrix& norm_coeffs) {
    const auto g = raw_a.rows();
    cplx s = 0.0;
    for (Eigen::Index j = 0; j < g; ++j)
        for (Eigen::Index m = 0; m < g; ++m) s += norm_coeffs(j, m) * raw_a(j, m + 1);
    return -2.0 * s + curve.sum_branch_points();
}

PeriodData compute_period_data(const SpectralCurve& curve, const HomologyBasis& basis, double tol) {
    const int g = curve.genus();
    PeriodData pd;
    if (g == 0) {
        pd.raw_a = pd.raw_b = CMatrix(0, 1);
        pd.norm_coeffs = pd.B = CMatrix(0, 0);
        pd.omega_coeffs = CVector::Ones(1);
        pd.U = CVector(0);
        pd.C = curve.sum_branch_points();
        return pd;
    }
    pd.raw_a = raw_periods(curve, basis.a_cycles, tol);
    pd.raw_b = raw_periods(curve, basis.b_cycles, tol);

    const CMatrix A = pd.raw_a.leftCols(g);
    Eigen::JacobiSVD<CMatrix> svd(A);
    const auto sv = svd.singularValues();
    const double cond = sv(0) / sv(sv.size() - 1);
    if (!(cond < 1e12)) {
        std::ostringstream msg;
        msg << "a-period matrix is numerically singular (condition number " << cond << ")";
        throw Error(ErrorKind::SingularNormalization, msg.str());
    }
    const CMatrix Ainv = A.fullPivLu().inverse();
    pd.norm_coeffs = Ainv.transpose();
    pd.B = pd.raw_b.leftCols(g) * Ainv;

    // Re-integrate the normalized differentials around the a-cycles.
    double resid = 0.0;
    for (int j = 0; j < g; ++j) {
        for (int k = 0; k < g; ++k) {
            auto omega_k = [&](cplx E) {
                cplx v = 0.0;
                for (int m = g - 1; m >= 0; --m) v = v * E + pd.norm_coeffs(k, m);
                return v;
            };
            const cplx p = cycle_integral(curve, basis.a_cycles[static_cast<std::size_t>(j)], omega_k, tol);
            resid = std::max(resid, std::abs(p - (j == k ? 1.0 : 0.0)));
        }
    }
    pd.normalization_residual = resid;

    std::tie(pd.omega_coeffs, pd.U) = quasimomentum(pd.raw_a, pd.raw_b);
    pd.C = its_matveev_constant(curve, pd.raw_a, pd.norm_coeffs);
    return pd;
}

IMatrix reality_target(const RealStructure& rs, int g) {
    IMatrix T = IMatrix::Zero(g, g);
    if (rs.kind != RealKind::NonSeparating) return T;
    T.setOnes();
    for (int j = rs.n_ovals; j < g; ++j) T(j, j) = 2;
    return T;
}

RealityCheck check_reality(const RealStructure& rs, const CMatrix& B, double tol) {
    RealityCheck rc;
    const auto g = static_cast<int>(B.rows());
    rc.M = IMatrix::Zero(g, g);
    rc.mu.assign(static_cast<std::size_t>(g), 0.0);
    if (!rs.is_real()) {
        rc.diagnostic = "curve is not real; no reality symmetry of B";
        return rc;
    }
    const CMatrix S = B.conjugate() + B;
    for (int j = 0; j < g; ++j)
        for (int k = 0; k < g; ++k) {
            const double v = S(j, k).real();
            rc.M(j, k) = static_cast<int>(std::lround(v));
            rc.residual = std::max(rc.residual, std::abs(S(j, k) - static_cast<double>(rc.M(j, k))));
        }
    rc.integral = rc.residual <= tol;
    for (int j = 0; j < g; ++j) rc.mu[static_cast<std::size_t>(j)] = (std::abs(rc.M(j, j)) % 2) * 0.5;
    rc.matches_target = rc.integral && rc.M == reality_target(rs, g);
    if (!rc.integral) {
        std::ostringstream msg;
        msg << "conj(B) + B is not integral (residual " << rc.residual << ")";
        rc.diagnostic = msg.str();
    } else if (!rc.matches_target) {
        rc.diagnostic = "conj(B) + B is integral but not of the adapted block shape";
    }
    return rc;
}

namespace {

// Symmetric 0/1 matrix packed into the bits of its upper triangle.
std::uint64_t pack_mod2(const IMatrix& M) {
    std::uint64_t key = 0;
    int bit = 0;
    for (Eigen::Index j = 0; j < M.rows(); ++j)
        for (Eigen::Index k = j; k < M.cols(); ++k, ++bit)
            if (((M(j, k) % 2) + 2) % 2 == 1) key |= std::uint64_t{1} << bit;
    return key;
}

// Unimodular Q with Q^T M Q = T mod 2, as a product of transvections
// (column i added to column j). Breadth-first over the mod-2 forms.
std::optional<IMatrix> congruence_mod2(const IMatrix& M, const IMatrix& T) {
    const auto g = static_cast<int>(M.rows());
    using Move = std::pair<int, int>;
    struct Node {
        std::uint64_t parent;
        Move move;
    };
    auto step = [](IMatrix X, int i, int j) {
        // E = I + e_ij: X -> E^T X E.
        X.col(j) += X.col(i);
        X.row(j) += X.row(i);
        for (Eigen::Index a = 0; a < X.rows(); ++a)
            for (Eigen::Index b = 0; b < X.cols(); ++b) X(a, b) = ((X(a, b) % 2) + 2) % 2;
        return X;
    };
    const std::uint64_t goal = pack_mod2(T);
    std::unordered_map<std::uint64_t, Node> seen;
    std::deque<IMatrix> queue;
    IMatrix start = M;
    for (Eigen::Index a = 0; a < M.rows(); ++a)
        for (Eigen::Index b = 0; b < M.cols(); ++b) start(a, b) = ((M(a, b) % 2) + 2) % 2;
    seen.emplace(pack_mod2(start), Node{0, {-1, -1}});
    queue.push_back(start);
    bool found = pack_mod2(start) == goal;
    while (!found && !queue.empty()) {
        const IMatrix X = queue.front();
        queue.pop_front();
        const std::uint64_t kx = pack_mod2(X);
        for (int i = 0; i < g && !found; ++i)
            for (int j = 0; j < g && !found; ++j) {
                if (i == j) continue;
                IMatrix Y = step(X, i, j);
                const std::uint64_t ky = pack_mod2(Y);
                if (seen.count(ky)) continue;
                seen.emplace(ky, Node{kx, {i, j}});
                if (ky == goal) found = true;
                queue.push_back(std::move(Y));
            }
    }
    if (!found) return std::nullopt;
    std::vector<Move> moves;
    for (std::uint64_t k = goal; seen.at(k).move.first >= 0; k = seen.at(k).parent) moves.push_back(seen.at(k).move);
    IMatrix Q = IMatrix::Identity(g, g);
    for (auto it = moves.rbegin(); it != moves.rend(); ++it) Q.col(it->second) += Q.col(it->first);
    return Q;
}

Cycle combine(const std::vector<Cycle>& cycles, const Eigen::Ref<const Eigen::RowVectorXi>& coef) {
    Cycle out;
    for (Eigen::Index k = 0; k < coef.size(); ++k)
        if (coef[k] != 0) out = out.plus(cycles[static_cast<std::size_t>(k)], coef[k]);
    return out;
}

}  // namespace

RealityAdaptation adapt_to_reality(const SpectralCurve& curve, const RealStructure& rs, const HomologyBasis& basis,
                                   const PeriodData& pd) {
    const int g = curve.genus();
    RealityAdaptation keep{basis, IMatrix::Identity(g, g), IMatrix::Zero(g, g), ""};
    if (g == 0 || !rs.is_real()) return keep;
    const RealityCheck rc = check_reality(rs, pd.B);
    if (!rc.integral) {
        keep.diagnostic = rc.diagnostic;
        return keep;
    }
    const IMatrix T = reality_target(rs, g);
    if (g > 6) {
        keep.diagnostic = "genus too large for the reality adaptation search; basis kept";
        return keep;
    }
    const auto Q = congruence_mod2(rc.M, T);
    if (!Q) {
        keep.diagnostic = "conj(B) + B is not congruent to the adapted block shape mod 2; basis kept";
        return keep;
    }
    // a' = Q^{-1} a, b' = Q^T b gives B' = Q^T B Q; then b'' = b' - N a'.
    const IMatrix Qinv = Q->cast<double>().inverse().array().round().cast<int>().matrix();
    const IMatrix M2 = Q->transpose() * rc.M * *Q;
    const IMatrix N = (M2 - T) / 2;
    HomologyBasis out;
    for (int j = 0; j < g; ++j) out.a_cycles.push_back(combine(basis.a_cycles, Qinv.row(j)));
    for (int j = 0; j < g; ++j) {
        Cycle b = combine(basis.b_cycles, Q->col(j).transpose());
        out.b_cycles.push_back(b.plus(combine(out.a_cycles, N.row(j)), -1));
    }
    out.intersection_matrix = intersection_matrix(curve, out.a_cycles, out.b_cycles);
    return {std::move(out), *Q, N, ""};
}

SpectralData SpectralData::build(const SpectralCurve& curve, double quad_tol) {
    RealStructure rs = classify_real_structure(curve);
    CutSystem cuts = build_cut_system(curve, rs);
    HomologyBasis basis = build_homology_basis(curve, cuts);
    PeriodData pd = compute_period_data(curve, basis, quad_tol);
    const int g = curve.genus();
    SpectralData sd{curve, rs, std::move(cuts), basis, pd, {}, basis, pd, IMatrix::Identity(g, g), IMatrix::Zero(g, g)};
    if (rs.is_real() && g > 0 && !check_reality(rs, pd.B).matches_target) {
        RealityAdaptation ad = adapt_to_reality(curve, rs, basis, pd);
        if (ad.diagnostic.empty()) {
            sd.basis = std::move(ad.basis);
            sd.periods = compute_period_data(curve, sd.basis, quad_tol);
            sd.Q = ad.Q;
            sd.N = ad.N;
        } else {
            sd.structure.diagnostic = ad.diagnostic;
        }
    }
    sd.reality = check_reality(sd.structure, sd.periods.B);
    return sd;
}

}  // namespace fz
