#include "finitezone/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "finitezone/error.hpp"

namespace fz {

namespace {

double cross(cplx a, cplx b) { return std::imag(std::conj(a) * b); }

double point_segment_distance(cplx z, cplx a, cplx b) {
    const cplx d = b - a;
    const double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(z - a);
    const double t = std::clamp(std::real((z - a) * std::conj(d)) / len2, 0.0, 1.0);
    return std::abs(z - (a + t * d));
}

// Proper or touching intersection test with parameters along both segments.
bool segment_intersection(cplx p, cplx q, cplx r, cplx s, double& alpha, double& beta) {
    const cplx d1 = q - p, d2 = s - r;
    const double den = cross(d1, d2);
    if (den == 0.0) return false;
    alpha = cross(r - p, d2) / den;
    beta = cross(r - p, d1) / den;
    return alpha >= 0.0 && alpha < 1.0 && beta >= 0.0 && beta < 1.0;
}

double segment_segment_distance(cplx a, cplx b, cplx c, cplx d) {
    double al, be;
    if (segment_intersection(a, b, c, d, al, be)) return 0.0;
    return std::min({point_segment_distance(a, c, d), point_segment_distance(b, c, d), point_segment_distance(c, a, b),
                     point_segment_distance(d, a, b)});
}

bool same_point(cplx a, cplx b, double scale) { return std::abs(a - b) <= 1e-12 * (1.0 + scale); }

}  // namespace

// ---------------------------------------------------------------- curve

SpectralCurve::SpectralCurve(std::vector<cplx> branch_points, double match_tol) : e_(std::move(branch_points)) {
    if (e_.empty() || e_.size() % 2 == 0)
        throw Error(ErrorKind::InvalidInput, "the number of branch points must be odd and at least 1");
    genus_ = static_cast<int>(e_.size() - 1) / 2;
    scale_ = 0.0;
    for (auto e : e_) {
        if (!std::isfinite(e.real()) || !std::isfinite(e.imag()))
            throw Error(ErrorKind::InvalidInput, "branch points must be finite");
        scale_ = std::max(scale_, std::abs(e));
    }
    min_sep_ = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < e_.size(); ++j)
        for (std::size_t k = j + 1; k < e_.size(); ++k) min_sep_ = std::min(min_sep_, std::abs(e_[j] - e_[k]));
    if (e_.size() == 1) min_sep_ = 1.0 + scale_;
    if (min_sep_ <= 1e-8 * (1.0 + scale_)) {
        std::ostringstream msg;
        msg << "branch points must be pairwise distinct (minimal separation " << min_sep_ << ")";
        throw Error(ErrorKind::InvalidInput, msg.str());
    }
    match_tol_ = match_tol > 0.0 ? match_tol : 1e-9 * (1.0 + scale_);
}

cplx SpectralCurve::P(cplx E) const {
    cplx p = 1.0;
    for (auto e : e_) p *= (E - e);
    return p;
}

cplx SpectralCurve::dP(cplx E) const {
    cplx sum = 0.0;
    for (std::size_t j = 0; j < e_.size(); ++j) {
        cplx term = 1.0;
        for (std::size_t k = 0; k < e_.size(); ++k)
            if (k != j) term *= (E - e_[k]);
        sum += term;
    }
    return sum;
}

cplx SpectralCurve::sum_branch_points() const { return std::accumulate(e_.begin(), e_.end(), cplx{0.0}); }

bool on_curve(const SpectralCurve& curve, const SheetPoint& p) {
    const cplx P = curve.P(p.E);
    return std::abs(p.w * p.w - P) <= 1e-8 * (1.0 + std::abs(P));
}

std::string to_string(RealKind k) {
    switch (k) {
        case RealKind::MCurve: return "MCurve";
        case RealKind::NonSeparating: return "NonSeparating";
        case RealKind::NonReal: return "NonReal";
    }
    return "?";
}

// ---------------------------------------------------------------- real structure

RealStructure classify_real_structure(const SpectralCurve& curve) {
    const auto& e = curve.branch_points();
    const double tol = curve.match_tol();
    const int g = curve.genus();
    RealStructure rs;

    std::vector<int> real_idx, complex_idx;
    for (int j = 0; j < static_cast<int>(e.size()); ++j) {
        if (std::abs(e[j].imag()) <= tol) {
            // A near-real root that also has a distinct near-conjugate partner is ambiguous.
            for (int k = 0; k < static_cast<int>(e.size()); ++k) {
                if (k != j && std::abs(e[k].imag()) > tol && std::abs(e[k] - std::conj(e[j])) <= 2 * tol) {
                    throw Error(ErrorKind::AmbiguousPairing,
                                "root " + std::to_string(j) + " is real within match_tol but also pairs with root " +
                                    std::to_string(k));
                }
            }
            real_idx.push_back(j);
        } else {
            complex_idx.push_back(j);
        }
    }

    std::vector<bool> used(e.size(), false);
    bool closed = true;
    for (int j : complex_idx) {
        if (used[j] || e[j].imag() < 0.0) continue;
        int partner = -1;
        for (int k : complex_idx) {
            if (k == j || used[k]) continue;
            if (std::abs(e[k] - std::conj(e[j])) <= tol) {
                if (partner >= 0) throw Error(ErrorKind::AmbiguousPairing, "root has several conjugate partners");
                partner = k;
            }
        }
        if (partner < 0) {
            closed = false;
            break;
        }
        used[j] = used[partner] = true;
        rs.conj_pairs.emplace_back(j, partner);
    }
    if (closed)
        for (int j : complex_idx)
            if (!used[j]) closed = false;

    for (int j : real_idx) rs.real_roots.push_back(e[j].real());
    std::sort(rs.real_roots.begin(), rs.real_roots.end());
    std::sort(rs.conj_pairs.begin(), rs.conj_pairs.end(),
              [&](auto a, auto b) { return e[a.first].imag() < e[b.first].imag(); });

    if (!closed) {
        rs.kind = RealKind::NonReal;
        rs.mu.assign(static_cast<std::size_t>(g), 0.0);
        rs.conj_pairs.clear();
        rs.diagnostic = "branch points are not closed under complex conjugation";
        return rs;
    }
    const int n_real = static_cast<int>(real_idx.size());
    if (n_real == 2 * g + 1) {
        rs.kind = RealKind::MCurve;
        rs.n_ovals = g + 1;
        rs.mu.assign(static_cast<std::size_t>(g), 0.0);
    } else {
        rs.kind = RealKind::NonSeparating;
        rs.n_ovals = (n_real + 1) / 2;
        rs.mu.assign(static_cast<std::size_t>(g), 0.0);
        for (int j = 0; j < rs.n_ovals; ++j) rs.mu[static_cast<std::size_t>(j)] = 0.5;
    }
    return rs;
}

// ---------------------------------------------------------------- cut layout

std::vector<cplx> CutSystem::subchain(std::size_t i0, std::size_t i1) const {
    std::vector<cplx> out{chain[i0]};
    for (std::size_t i = i0; i < i1; ++i) {
        const auto& r = edge_routes[i];
        out.insert(out.end(), r.begin() + 1, r.end());
    }
    return out;
}

namespace {

// Minimal distance between non-adjacent parts of a polyline, including every
// vertex against segments it does not bound.
double polyline_clearance(const std::vector<cplx>& v) {
    double best = std::numeric_limits<double>::infinity();
    const std::size_t m = v.size();
    for (std::size_t i = 0; i + 1 < m; ++i) best = std::min(best, std::abs(v[i + 1] - v[i]));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t s = 0; s + 1 < m; ++s)
            if (i != s && i != s + 1) best = std::min(best, point_segment_distance(v[i], v[s], v[s + 1]));
    for (std::size_t s = 0; s + 1 < m; ++s)
        for (std::size_t t = s + 2; t + 1 < m; ++t)
            best = std::min(best, segment_segment_distance(v[s], v[s + 1], v[t], v[t + 1]));
    return best;
}

}  // namespace

CutSystem build_cut_system(const SpectralCurve& curve, const RealStructure& structure) {
    const auto& e = curve.branch_points();
    const int g = curve.genus();
    CutSystem cs;

    if (structure.is_real()) {
        cs.symmetric = true;
        const double r1 = structure.real_roots.front();
        const double step = curve.min_separation();
        int m = 0;
        for (const auto& [up, down] : structure.conj_pairs) {
            ++m;
            const cplx c = e[static_cast<std::size_t>(up)];
            const cplx cb = e[static_cast<std::size_t>(down)];
            cs.chain.push_back(cb);
            cs.chain.push_back(c);
            // The pair's cut must cross the real axis left of every real root.
            if (c.real() < r1 - 0.5 * step) {
                cs.edge_routes.push_back({cb, c});
            } else {
                const cplx apex{r1 - step * m, 0.0};
                cs.edge_routes.push_back({cb, apex, c});
            }
            // Connector to the next chain point, filled below.
            cs.edge_routes.push_back({});
        }
        for (double r : structure.real_roots) {
            cs.chain.emplace_back(r, 0.0);
            cs.edge_routes.push_back({});
        }
        cs.edge_routes.pop_back();
        for (std::size_t i = 0; i < cs.edge_routes.size(); ++i)
            if (cs.edge_routes[i].empty()) cs.edge_routes[i] = {cs.chain[i], cs.chain[i + 1]};
        cs.infinite_direction = 1.0;
    } else {
        cs.chain = e;
        std::sort(cs.chain.begin(), cs.chain.end(), [](cplx a, cplx b) {
            return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
        });
        for (std::size_t i = 0; i + 1 < cs.chain.size(); ++i) cs.edge_routes.push_back({cs.chain[i], cs.chain[i + 1]});
        cs.infinite_direction = 1.0;
    }
    cs.infinite_from = cs.chain.back();

    for (int j = 0; j < g; ++j) {
        const auto i = static_cast<std::size_t>(2 * j);
        cs.cuts.push_back({cs.chain[i], cs.chain[i + 1], cs.edge_routes[i]});
    }

    if (g > 0) {
        const auto v = cs.subchain(0, cs.chain.size() - 1);
        cs.clearance = polyline_clearance(v);
        if (!(cs.clearance > 1e-6 * (1.0 + curve.scale()))) {
            std::ostringstream msg;
            msg << "cut layout self-intersects or passes through a branch point (clearance " << cs.clearance << ")";
            throw Error(ErrorKind::CutCollision, msg.str());
        }
        // The infinite cut is a ray; it may not meet the chain.
        const cplx far = cs.infinite_from + cs.infinite_direction * (4.0 * (1.0 + curve.scale()));
        for (std::size_t s = 0; s + 1 < v.size(); ++s) {
            if (same_point(v[s + 1], cs.infinite_from, curve.scale())) continue;
            if (segment_segment_distance(cs.infinite_from, far, v[s], v[s + 1]) < 1e-9 * (1.0 + curve.scale()))
                throw Error(ErrorKind::CutCollision, "infinite cut meets a finite cut");
        }
    } else {
        cs.clearance = 1.0 + curve.scale();
    }
    return cs;
}

// ---------------------------------------------------------------- sheet tracking

namespace {

// Splits arcs so that every branch point sees each sub-arc under an angle
// below pi, which makes the principal root of the ratio a valid continuation.
void subdivide_arc(const Piece& p, const std::vector<cplx>& e, std::vector<Piece>& out, int depth = 0) {
    const auto& arc = std::get<Arc>(p.geom);
    bool split = std::abs(arc.sweep) > pi / 8;
    if (!split) {
        const cplx mid_dir = std::polar(1.0, arc.theta0 + 0.5 * arc.sweep);
        const double chord_depth = arc.radius * std::cos(0.5 * arc.sweep);
        for (auto z : e) {
            const cplx rel = z - arc.center;
            if (std::abs(rel) <= arc.radius * (1.0 + 1e-12) && std::real(rel * std::conj(mid_dir)) >= chord_depth) {
                split = true;
                break;
            }
        }
    }
    if (!split) {
        out.push_back(p);
        return;
    }
    if (depth > 40) throw Error(ErrorKind::StepTooCoarse, "arc passes through a branch point");
    Piece a = p, b = p;
    auto& aa = std::get<Arc>(a.geom);
    auto& bb = std::get<Arc>(b.geom);
    aa.sweep = 0.5 * arc.sweep;
    bb.theta0 = arc.theta0 + 0.5 * arc.sweep;
    bb.sweep = 0.5 * arc.sweep;
    a.singular = (p.singular == Singular::left) ? Singular::left : Singular::none;
    b.singular = (p.singular == Singular::right) ? Singular::right : Singular::none;
    subdivide_arc(a, e, out, depth + 1);
    subdivide_arc(b, e, out, depth + 1);
}

}  // namespace

TrackedPath::TrackedPath(const SpectralCurve& curve, const Path& path, cplx w_start) : curve_(&curve) {
    const auto& e = curve.branch_points();
    std::vector<Piece> pieces;
    for (const auto& p : path.pieces()) {
        if (std::holds_alternative<Arc>(p.geom))
            subdivide_arc(p, e, pieces);
        else
            pieces.push_back(p);
    }
    path_ = Path(std::move(pieces));
    const double scale = curve.scale();

    const cplx E0 = path_.start();
    {
        const cplx P0 = curve.P(E0);
        if (std::abs(w_start * w_start - P0) > 1e-6 * (1.0 + std::abs(P0)))
            throw Error(ErrorKind::InvalidInput, "starting sheet value does not satisfy w^2 = P(E)");
    }

    // Current tracked factor values at the start of the piece.
    std::vector<cplx> cur(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) cur[i] = std::sqrt(E0 - e[i]);
    {
        cplx prod = 1.0;
        for (auto c : cur) prod *= c;
        if (std::abs(prod) > 0.0 && std::abs(prod - w_start) > std::abs(prod + w_start)) cur[0] = -cur[0];
    }

    factors_.resize(path_.size());
    for (std::size_t k = 0; k < path_.size(); ++k) {
        const Piece& p = path_.pieces()[k];
        const cplx a = p.start(), b = p.end();
        auto& fs = factors_[k];
        fs.resize(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) {
            const bool starts_here = same_point(a, e[i], scale);
            if (starts_here) {
                if (k > 0) throw Error(ErrorKind::StepTooCoarse, "path passes through a branch point");
                // Factor anchored at the far end; the sheet at a branch point is immaterial.
                fs[i] = Factor{std::sqrt(b - e[i]), b - e[i], true};
                continue;
            }
            if (std::holds_alternative<Segment>(p.geom) && !same_point(b, e[i], scale)) {
                if (point_segment_distance(e[i], a, b) <= 1e-13 * (1.0 + scale))
                    throw Error(ErrorKind::StepTooCoarse, "path segment passes through a branch point");
            }
            fs[i] = Factor{cur[i], a - e[i], false};
        }
        // Advance to the end of the piece.
        for (std::size_t i = 0; i < e.size(); ++i) {
            const auto& f = fs[i];
            const cplx ratio = (b - e[i]) / f.base;
            cur[i] = f.value * std::sqrt(ratio);
            if (k + 1 < path_.size() && same_point(b, e[i], scale))
                throw Error(ErrorKind::StepTooCoarse, "path passes through a branch point");
        }
    }
}

cplx TrackedPath::w(std::size_t piece, double t) const {
    const auto& e = curve_->branch_points();
    const cplx E = path_.pieces()[piece].at(t);
    cplx prod = 1.0;
    const auto& fs = factors_[piece];
    for (std::size_t i = 0; i < e.size(); ++i) prod *= fs[i].value * std::sqrt((E - e[i]) / fs[i].base);
    return prod;
}

cplx TrackedPath::w_end() const {
    if (path_.empty()) return 0.0;
    return w(path_.size() - 1, 1.0);
}

SheetPoint continue_sqrt(const SpectralCurve& curve, const Path& path, cplx w_start) {
    return TrackedPath(curve, path, w_start).end_point();
}

// ---------------------------------------------------------------- cycles

Cycle Cycle::negated() const {
    Cycle c = *this;
    for (auto& [coef, loop] : c.terms) coef = -coef;
    return c;
}

Cycle Cycle::plus(const Cycle& other, int coefficient) const {
    Cycle c = *this;
    if (coefficient == 0) return c;
    for (const auto& [coef, loop] : other.terms) c.terms.emplace_back(coef * coefficient, loop);
    return c;
}

Path sausage(const std::vector<cplx>& poly, double rho) {
    if (poly.size() < 2) throw Error(ErrorKind::InvalidInput, "sausage needs at least one segment");
    std::vector<Piece> pieces;

    auto side = [&](const std::vector<cplx>& v) {
        const std::size_t m = v.size() - 1;
        std::vector<cplx> d(m);
        std::vector<double> len(m);
        for (std::size_t i = 0; i < m; ++i) {
            len[i] = std::abs(v[i + 1] - v[i]);
            d[i] = (v[i + 1] - v[i]) / len[i];
        }
        auto normal = [&](std::size_t i) { return -I * d[i]; };  // right-hand normal
        cplx P = v[0] + rho * normal(0);
        for (std::size_t i = 0; i < m; ++i) {
            const cplx Q = v[i + 1] + rho * normal(i);
            if (i + 1 == m) {
                pieces.push_back(Piece{Segment{P, Q}});
                pieces.push_back(Piece{Arc{v[m], rho, std::arg(normal(i)), pi}});
                break;
            }
            const double turn = cross(d[i], d[i + 1]);
            if (turn > 1e-12) {
                pieces.push_back(Piece{Segment{P, Q}});
                pieces.push_back(Piece{Arc{v[i + 1], rho, std::arg(normal(i)), std::arg(d[i + 1] / d[i])}});
                P = v[i + 1] + rho * normal(i + 1);
            } else if (turn < -1e-12) {
                // Inner side: meet at the intersection of the two offset lines.
                const cplx p0 = v[i] + rho * normal(i), p1 = v[i + 1] + rho * normal(i + 1);
                const double s = cross(p1 - p0, d[i + 1]) / cross(d[i], d[i + 1]);
                const double s1 = cross(p1 - p0, d[i]) / cross(d[i], d[i + 1]);
                if (!(s > 0.0 && s < len[i] && s1 > 0.0 && s1 < len[i + 1]))
                    throw Error(ErrorKind::CutCollision, "loop offset exceeds a chain segment at a sharp turn");
                const cplx M = p0 + s * d[i];
                pieces.push_back(Piece{Segment{P, M}});
                P = M;
            } else {
                pieces.push_back(Piece{Segment{P, Q}});
                P = Q;
            }
        }
    };

    side(poly);
    std::vector<cplx> rev(poly.rbegin(), poly.rend());
    side(rev);
    return Path(std::move(pieces));
}

namespace {

struct Sampled {
    std::vector<cplx> E;
    std::vector<std::size_t> piece;
    std::vector<double> t;
};

Sampled sample_loop(const TrackedPath& tp, int per_piece) {
    Sampled s;
    const auto& ps = tp.path().pieces();
    for (std::size_t k = 0; k < ps.size(); ++k) {
        const int n = std::holds_alternative<Segment>(ps[k].geom) ? 1 : per_piece;
        for (int j = 0; j < n; ++j) {
            const double t = static_cast<double>(j) / n;
            s.E.push_back(ps[k].at(t));
            s.piece.push_back(k);
            s.t.push_back(t);
        }
    }
    // Closing node.
    s.E.push_back(ps.back().at(1.0));
    s.piece.push_back(ps.size() - 1);
    s.t.push_back(1.0);
    return s;
}

}  // namespace

int intersection_number(const SpectralCurve& curve, const Loop& x, const Loop& y) {
    const TrackedPath tx(curve, x.path, x.w_start), ty(curve, y.path, y.w_start);
    const Sampled sx = sample_loop(tx, 24), sy = sample_loop(ty, 24);

    auto param = [](const Sampled& s, std::size_t i, double alpha) {
        // Chord i joins node i and i+1; nodes on the same piece share that piece.
        const std::size_t k = s.piece[i];
        const double t1 = (s.piece[i + 1] == k) ? s.t[i + 1] : 1.0;
        return std::pair{k, s.t[i] + alpha * (t1 - s.t[i])};
    };

    int total = 0;
    for (std::size_t i = 0; i + 1 < sx.E.size(); ++i) {
        const cplx p = sx.E[i], q = sx.E[i + 1];
        for (std::size_t j = 0; j + 1 < sy.E.size(); ++j) {
            const cplx r = sy.E[j], s = sy.E[j + 1];
            if (std::max(p.real(), q.real()) < std::min(r.real(), s.real()) ||
                std::max(r.real(), s.real()) < std::min(p.real(), q.real()) ||
                std::max(p.imag(), q.imag()) < std::min(r.imag(), s.imag()) ||
                std::max(r.imag(), s.imag()) < std::min(p.imag(), q.imag()))
                continue;
            double alpha, beta;
            if (!segment_intersection(p, q, r, s, alpha, beta)) continue;
            const auto [kx, txp] = param(sx, i, alpha);
            const auto [ky, typ] = param(sy, j, beta);
            const cplx wx = tx.w(kx, txp), wy = ty.w(ky, typ);
            if (std::abs(wx - wy) < std::abs(wx + wy)) total += cross(q - p, s - r) > 0.0 ? 1 : -1;
        }
    }
    return total;
}

int intersection_number(const SpectralCurve& curve, const Cycle& x, const Cycle& y) {
    int total = 0;
    for (const auto& [cx, lx] : x.terms)
        for (const auto& [cy, ly] : y.terms) total += cx * cy * intersection_number(curve, lx, ly);
    return total;
}

IMatrix intersection_matrix(const SpectralCurve& curve, const std::vector<Cycle>& a, const std::vector<Cycle>& b) {
    const auto g = static_cast<int>(a.size());
    IMatrix J = IMatrix::Zero(2 * g, 2 * g);
    std::vector<const Cycle*> all;
    for (const auto& c : a) all.push_back(&c);
    for (const auto& c : b) all.push_back(&c);
    for (int i = 0; i < 2 * g; ++i)
        for (int j = i + 1; j < 2 * g; ++j) {
            J(i, j) = intersection_number(curve, *all[i], *all[j]);
            J(j, i) = -J(i, j);
        }
    return J;
}

HomologyBasis build_homology_basis(const SpectralCurve& curve, const CutSystem& cuts) {
    const int g = curve.genus();
    HomologyBasis basis;
    if (g == 0) {
        basis.intersection_matrix = IMatrix::Zero(0, 0);
        return basis;
    }
    const double d = cuts.clearance;
    const double rho_a = 0.25 * d;
    const auto& chain = cuts.chain;
    const auto& e = curve.branch_points();

    auto make_loop = [&](std::size_t i0, std::size_t i1, double rho) {
        Path p = sausage(cuts.subchain(i0, i1), rho);
        // Every enclosed branch point once, all others not at all.
        for (auto z : e) {
            const auto it = std::find_if(chain.begin(), chain.end(), [&](cplx c) { return c == z; });
            const auto idx = static_cast<std::size_t>(std::distance(chain.begin(), it));
            const int expect = (idx >= i0 && idx <= i1) ? 1 : 0;
            if (winding_number(p, z) != expect)
                throw Error(ErrorKind::CutCollision, "cycle loop does not enclose the intended branch points");
        }
        const cplx E0 = p.start();
        cplx w0 = 1.0;
        for (auto z : e) w0 *= std::sqrt(E0 - z);
        return Loop{std::move(p), w0};
    };

    for (int j = 0; j < g; ++j) {
        const auto i = static_cast<std::size_t>(2 * j);
        basis.a_cycles.push_back(Cycle::of(make_loop(i, i + 1, rho_a)));
        const double rho_b = d * (0.45 - 0.15 * static_cast<double>(j) / g);
        basis.b_cycles.push_back(Cycle::of(make_loop(i + 1, static_cast<std::size_t>(2 * g), rho_b)));
    }

    // Orient every b_j so that a_j . b_j = +1.
    for (int j = 0; j < g; ++j) {
        const int s = intersection_number(curve, basis.a_cycles[j], basis.b_cycles[j]);
        if (s == -1)
            basis.b_cycles[j] = basis.b_cycles[j].negated();
        else if (s != 1)
            throw Error(ErrorKind::CutCollision, "a- and b-cycle do not intersect once");
    }
    basis.intersection_matrix = intersection_matrix(curve, basis.a_cycles, basis.b_cycles);
    IMatrix canonical = IMatrix::Zero(2 * g, 2 * g);
    canonical.topRightCorner(g, g) = IMatrix::Identity(g, g);
    canonical.bottomLeftCorner(g, g) = -IMatrix::Identity(g, g);
    if (basis.intersection_matrix != canonical)
        throw Error(ErrorKind::CutCollision, "constructed cycles do not form a canonical basis");
    return basis;
}

}  // namespace fz
