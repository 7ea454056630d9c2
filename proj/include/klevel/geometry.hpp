#pragma once

#include <array>
#include <optional>
#include <vector>

#include "klevel/mutation.hpp"
#include "klevel/rational.hpp"

namespace klevel {

/// Non-vertical plane z = a*x + b*y + c. The z-intercept c doubles as the
/// plane's intersection with the z-axis, which orders the per-plane curve
/// families in the diamond machinery.
struct Plane {
    Rational a, b, c;

    friend bool operator==(const Plane& p, const Plane& q) {
        return p.a == q.a && p.b == q.b && p.c == q.c;
    }
};

using PlaneList = std::vector<Plane>;

struct Point2 {
    Rational x, y;
    friend bool operator==(const Point2& p, const Point2& q) { return p.x == q.x && p.y == q.y; }
};

struct Point3 {
    Rational x, y, z;
    friend bool operator==(const Point3& p, const Point3& q) {
        return p.x == q.x && p.y == q.y && p.z == q.z;
    }
};

inline Rational plane_eval(const Plane& p, const Rational& x, const Rational& y) {
    return p.a * x + p.b * y + p.c;
}

inline bool plane_contains(const Plane& p, const Point3& q) {
    return plane_eval(p, q.x, q.y) == q.z;
}

/// Intersection line of two planes, canonically parametrized: direction is
/// scaled so dx = 1, or dy = 1 when the projected line is parallel to the
/// y-axis. The origin is the point at x = 0 (resp. y = 0). Canonical form
/// makes serialized output deterministic across runs.
struct IntersectionLine {
    int i = -1, j = -1;
    Point3 origin;
    Rational dx, dy, dz;

    Point3 at(const Rational& t) const {
        return Point3{origin.x + dx * t, origin.y + dy * t, origin.z + dz * t};
    }
};

/// Line of two raw planes; throws ParallelPlanesError when gradients coincide.
inline IntersectionLine line_of(const Plane& p, const Plane& q, int i = -1, int j = -1) {
    // p - q vanishes on the line: alpha*x + beta*y + delta = 0 in projection.
    Rational alpha = p.a - q.a;
    Rational beta = p.b - q.b;
    Rational delta = p.c - q.c;
    if (alpha.is_zero() && beta.is_zero()) throw ParallelPlanesError(i, j);

    IntersectionLine l;
    l.i = i;
    l.j = j;
    Rational dx = -beta, dy = alpha;
    if (dx.is_zero() ? dy.sign() < 0 : dx.sign() < 0) {
        dx = -dx;
        dy = -dy;
    }
    if (!dx.is_zero()) {
        l.dy = dy / dx;
        l.dx = Rational(1);
        l.origin.x = Rational(0);
        l.origin.y = -delta / beta;
    } else {
        l.dx = Rational(0);
        l.dy = Rational(1);
        l.origin.x = -delta / alpha;
        l.origin.y = Rational(0);
    }
    l.dz = p.a * l.dx + p.b * l.dy;
    l.origin.z = plane_eval(p, l.origin.x, l.origin.y);
    return l;
}

/// Common point of three raw planes, or nullopt when the triple is
/// degenerate (no unique point).
inline std::optional<Point3> triple_point(const Plane& p, const Plane& q, const Plane& r) {
    // Subtracting q and r from p gives a 2x2 linear system in (x, y).
    Rational a1 = p.a - q.a, b1 = p.b - q.b, c1 = q.c - p.c;
    Rational a2 = p.a - r.a, b2 = p.b - r.b, c2 = r.c - p.c;
    Rational det = a1 * b2 - b1 * a2;
    if (det.is_zero()) return std::nullopt;
    Rational x = (c1 * b2 - b1 * c2) / det;
    Rational y = (a1 * c2 - c1 * a2) / det;
    return Point3{x, y, plane_eval(p, x, y)};
}

/// Number of planes passing strictly below the point; exact trichotomy.
inline int level(const PlaneList& planes, const Point3& p) {
    const bool mutate = testing::active_mutation() == testing::Mutation::level_strictness;
    int count = 0;
    for (const Plane& d : planes) {
        Rational z = plane_eval(d, p.x, p.y);
        if (mutate ? z <= p.z : z < p.z) ++count;
    }
    return count;
}

/// n choose 3 as a plain count.
inline long long choose3(long long n) { return n < 3 ? 0 : n * (n - 1) * (n - 2) / 6; }
inline long long choose2(long long n) { return n < 2 ? 0 : n * (n - 1) / 2; }

} // namespace klevel
