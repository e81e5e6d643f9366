#pragma once

#include <variant>
#include <vector>

#include "finitezone/types.hpp"

namespace fz {

// Which ends of a piece carry an inverse-square-root singularity of the
// integrand.
enum class Singular { none, left, right, both };

struct Segment {
    cplx a, b;
};

struct Arc {
    cplx center;
    double radius;
    double theta0;  // start angle
    double sweep;   // signed angle swept
};

// One straight or circular piece parametrized over [0,1].
struct Piece {
    std::variant<Segment, Arc> geom;
    Singular singular = Singular::none;

    cplx at(double t) const;
    cplx tangent(double t) const;  // dE/dt
    cplx start() const { return at(0.0); }
    cplx end() const { return at(1.0); }
    Piece reversed() const;
    double length() const;
};

class Path {
public:
    Path() = default;
    explicit Path(std::vector<Piece> pieces);

    static Path line(cplx a, cplx b, Singular s = Singular::none);
    static Path polyline(const std::vector<cplx>& vertices);
    static Path circle(cplx center, double radius, double theta0 = 0.0);

    void append(const Piece& p);
    void append(const Path& p);

    const std::vector<Piece>& pieces() const { return pieces_; }
    std::size_t size() const { return pieces_.size(); }
    bool empty() const { return pieces_.empty(); }
    cplx start() const { return pieces_.front().start(); }
    cplx end() const { return pieces_.back().end(); }
    bool closed(double tol = 1e-12) const;
    Path reversed() const;
    double length() const;

    // Splits the path at global parameter s in [0, size()]; piece k covers [k, k+1].
    std::pair<Path, Path> split(double s) const;

private:
    std::vector<Piece> pieces_;
};

// Winding number of a closed path around z.
int winding_number(const Path& loop, cplx z);

// Distance from z to the path, sampled finely on arcs.
double distance_to(const Path& path, cplx z);

}  // namespace fz
