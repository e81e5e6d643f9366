#pragma once

#include <string>
#include <vector>

#include "finitezone/path.hpp"
#include "finitezone/types.hpp"

namespace fz {

// w^2 = P(E) = (E - E_1)...(E - E_{2g+1}), compactified by one point at infinity.
class SpectralCurve {
public:
    explicit SpectralCurve(std::vector<cplx> branch_points, double match_tol = -1.0);

    const std::vector<cplx>& branch_points() const { return e_; }
    int genus() const { return genus_; }
    double match_tol() const { return match_tol_; }
    double min_separation() const { return min_sep_; }
    // Characteristic size of the branch-point configuration.
    double scale() const { return scale_; }
    double delta_branch(double factor) const { return factor * min_sep_; }

    cplx P(cplx E) const;
    cplx dP(cplx E) const;
    cplx sum_branch_points() const;

private:
    std::vector<cplx> e_;
    int genus_;
    double match_tol_;
    double min_sep_;
    double scale_;
};

// A point of the curve: E with a tracked value of sqrt(P(E)).
struct SheetPoint {
    cplx E;
    cplx w;
};

bool on_curve(const SpectralCurve& curve, const SheetPoint& p);

enum class RealKind { MCurve, NonSeparating, NonReal };

std::string to_string(RealKind k);

struct RealStructure {
    RealKind kind = RealKind::NonReal;
    int n_ovals = 0;              // fixed ovals of the antiinvolution (NonSeparating)
    std::vector<double> mu;       // half-period vector, entries in {0, 1/2}
    std::vector<double> real_roots;
    std::vector<std::pair<int, int>> conj_pairs;  // (upper, lower) indices into branch_points
    std::string diagnostic;

    bool is_real() const { return kind != RealKind::NonReal; }
};

RealStructure classify_real_structure(const SpectralCurve& curve);

// Layout of the two-sheeted covering. Branch points are visited along a
// simple polyline ("chain"); consecutive pairs (chain[2j], chain[2j+1]) are
// the finite cuts and the last chain point starts the infinite cut.
struct CutSystem {
    struct Cut {
        cplx from, to;
        std::vector<cplx> route;  // polyline vertices from `from` to `to`
    };

    std::vector<cplx> chain;                      // 2g+1 branch points in chain order
    std::vector<std::vector<cplx>> edge_routes;   // route chain[i] -> chain[i+1]
    std::vector<Cut> cuts;                        // g finite cuts
    cplx infinite_from{};
    cplx infinite_direction{1.0, 0.0};
    bool symmetric = false;
    double clearance = 0.0;  // min distance between non-adjacent parts of the chain

    // All polyline vertices of the chain between chain[i0] and chain[i1].
    std::vector<cplx> subchain(std::size_t i0, std::size_t i1) const;
};

CutSystem build_cut_system(const SpectralCurve& curve, const RealStructure& structure);

// Continuous square root of P along a path, exact per-factor continuation:
// w(E) = prod_i sqrt(E - e_i) with every factor continued without jumps.
class TrackedPath {
public:
    TrackedPath(const SpectralCurve& curve, const Path& path, cplx w_start);

    const Path& path() const { return path_; }
    cplx w(std::size_t piece, double t) const;
    cplx w_start() const { return w(0, 0.0); }
    cplx w_end() const;
    SheetPoint end_point() const { return {path_.end(), w_end()}; }

private:
    const SpectralCurve* curve_;
    Path path_;
    // Per piece and branch point: reference value of sqrt(E - e_i) at t_ref.
    struct Factor {
        cplx value;
        cplx base;   // E(t_ref) - e_i, or the displacement for anchored factors
        bool anchored_end = false;  // piece starts on this branch point
    };
    std::vector<std::vector<Factor>> factors_;
};

SheetPoint continue_sqrt(const SpectralCurve& curve, const Path& path, cplx w_start);

// A lifted closed loop: the E-plane loop plus the starting sheet value.
struct Loop {
    Path path;
    cplx w_start;
};

// Integer combination of lifted loops.
struct Cycle {
    std::vector<std::pair<int, Loop>> terms;

    static Cycle of(Loop loop) { return Cycle{{{1, std::move(loop)}}}; }
    Cycle negated() const;
    Cycle plus(const Cycle& other, int coefficient) const;
};

struct HomologyBasis {
    std::vector<Cycle> a_cycles, b_cycles;
    IMatrix intersection_matrix;  // rows/cols ordered a_1..a_g, b_1..b_g
};

// Boundary of the rho-neighbourhood of a polyline, counterclockwise.
Path sausage(const std::vector<cplx>& polyline, double rho);

// Intersection number of two lifted loops (sign from the E-plane orientation).
int intersection_number(const SpectralCurve& curve, const Loop& x, const Loop& y);
int intersection_number(const SpectralCurve& curve, const Cycle& x, const Cycle& y);

IMatrix intersection_matrix(const SpectralCurve& curve, const std::vector<Cycle>& a, const std::vector<Cycle>& b);

HomologyBasis build_homology_basis(const SpectralCurve& curve, const CutSystem& cuts);

}  // namespace fz
