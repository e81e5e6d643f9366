#include "finitezone/path.hpp"

#include <algorithm>
#include <cmath>

#include "finitezone/error.hpp"

namespace fz {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Singular flip(Singular s) {
    switch (s) {
        case Singular::left: return Singular::right;
        case Singular::right: return Singular::left;
        default: return s;
    }
}

double segment_distance(cplx a, cplx b, cplx z) {
    const cplx d = b - a;
    const double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(z - a);
    const double t = std::clamp(std::real((z - a) * std::conj(d)) / len2, 0.0, 1.0);
    return std::abs(z - (a + t * d));
}

}  // namespace

cplx Piece::at(double t) const {
    return std::visit(overloaded{
                          [t](const Segment& s) { return s.a + t * (s.b - s.a); },
                          [t](const Arc& a) { return a.center + std::polar(a.radius, a.theta0 + t * a.sweep); },
                      },
                      geom);
}

cplx Piece::tangent(double t) const {
    return std::visit(overloaded{
                          [](const Segment& s) { return s.b - s.a; },
                          [t](const Arc& a) {
                              return I * a.sweep * std::polar(a.radius, a.theta0 + t * a.sweep);
                          },
                      },
                      geom);
}

Piece Piece::reversed() const {
    Piece p = *this;
    p.singular = flip(singular);
    std::visit(overloaded{
                   [](Segment& s) { std::swap(s.a, s.b); },
                   [](Arc& a) {
                       a.theta0 += a.sweep;
                       a.sweep = -a.sweep;
                   },
               },
               p.geom);
    return p;
}

double Piece::length() const {
    return std::visit(overloaded{
                          [](const Segment& s) { return std::abs(s.b - s.a); },
                          [](const Arc& a) { return a.radius * std::abs(a.sweep); },
                      },
                      geom);
}

Path::Path(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
    for (std::size_t k = 1; k < pieces_.size(); ++k) {
        const cplx gap = pieces_[k].start() - pieces_[k - 1].end();
        if (std::abs(gap) > 1e-9 * (1.0 + std::abs(pieces_[k].start())))
            throw Error(ErrorKind::InvalidInput, "path pieces do not share endpoints");
    }
}

Path Path::line(cplx a, cplx b, Singular s) { return Path({Piece{Segment{a, b}, s}}); }

Path Path::polyline(const std::vector<cplx>& vertices) {
    std::vector<Piece> pieces;
    for (std::size_t k = 1; k < vertices.size(); ++k) pieces.push_back(Piece{Segment{vertices[k - 1], vertices[k]}});
    return Path(std::move(pieces));
}

Path Path::circle(cplx center, double radius, double theta0) {
    // Four quarter arcs keep each piece well away from wrapping around a
    // nearby point.
    std::vector<Piece> pieces;
    for (int k = 0; k < 4; ++k) pieces.push_back(Piece{Arc{center, radius, theta0 + k * pi / 2, pi / 2}});
    return Path(std::move(pieces));
}

void Path::append(const Piece& p) {
    if (!pieces_.empty() && std::abs(p.start() - end()) > 1e-9 * (1.0 + std::abs(end())))
        throw Error(ErrorKind::InvalidInput, "appended piece does not start at the path end");
    pieces_.push_back(p);
}

void Path::append(const Path& p) {
    for (const auto& piece : p.pieces()) append(piece);
}

bool Path::closed(double tol) const {
    return !pieces_.empty() && std::abs(end() - start()) <= tol * (1.0 + std::abs(start()));
}

Path Path::reversed() const {
    std::vector<Piece> out;
    out.reserve(pieces_.size());
    for (auto it = pieces_.rbegin(); it != pieces_.rend(); ++it) out.push_back(it->reversed());
    return Path(std::move(out));
}

double Path::length() const {
    double len = 0.0;
    for (const auto& p : pieces_) len += p.length();
    return len;
}

std::pair<Path, Path> Path::split(double s) const {
    if (s < 0.0 || s > static_cast<double>(pieces_.size()))
        throw Error(ErrorKind::InvalidInput, "split parameter outside the path");
    auto k = static_cast<std::size_t>(std::floor(s));
    double t = s - static_cast<double>(k);
    if (k == pieces_.size()) {
        k -= 1;
        t = 1.0;
    }

    auto sub = [](const Piece& p, double t0, double t1) {
        Piece q = p;
        std::visit(overloaded{
                       [&](Segment& seg) {
                           const cplx a = p.at(t0), b = p.at(t1);
                           seg = Segment{a, b};
                       },
                       [&](Arc& arc) {
                           const auto& orig = std::get<Arc>(p.geom);
                           arc.theta0 = orig.theta0 + t0 * orig.sweep;
                           arc.sweep = (t1 - t0) * orig.sweep;
                       },
                   },
                   q.geom);
        return q;
    };

    std::vector<Piece> first(pieces_.begin(), pieces_.begin() + static_cast<std::ptrdiff_t>(k));
    std::vector<Piece> second;
    const Piece& p = pieces_[k];
    if (t > 0.0) {
        Piece head = sub(p, 0.0, t);
        head.singular = (p.singular == Singular::left || p.singular == Singular::both) ? Singular::left : Singular::none;
        first.push_back(head);
    }
    if (t < 1.0) {
        Piece tail = sub(p, t, 1.0);
        tail.singular =
            (p.singular == Singular::right || p.singular == Singular::both) ? Singular::right : Singular::none;
        second.push_back(tail);
    }
    second.insert(second.end(), pieces_.begin() + static_cast<std::ptrdiff_t>(k) + 1, pieces_.end());
    return {Path(std::move(first)), Path(std::move(second))};
}

int winding_number(const Path& loop, cplx z) {
    double total = 0.0;
    for (const auto& p : loop.pieces()) {
        const int n = std::holds_alternative<Segment>(p.geom) ? 1 : 64;
        cplx prev = p.at(0.0) - z;
        for (int k = 1; k <= n; ++k) {
            const cplx cur = p.at(static_cast<double>(k) / n) - z;
            total += std::arg(cur / prev);
            prev = cur;
        }
    }
    return static_cast<int>(std::lround(total / (2 * pi)));
}

double distance_to(const Path& path, cplx z) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : path.pieces()) {
        if (const auto* s = std::get_if<Segment>(&p.geom)) {
            best = std::min(best, segment_distance(s->a, s->b, z));
        } else {
            constexpr int n = 256;
            for (int k = 0; k < n; ++k) best = std::min(best, segment_distance(p.at(double(k) / n), p.at(double(k + 1) / n), z));
        }
    }
    return best;
}

}  // namespace fz
