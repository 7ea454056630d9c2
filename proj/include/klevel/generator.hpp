#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "klevel/arrangement.hpp"

namespace klevel {

struct GenConfig {
    int n = 1;
    long coord_bound = 10;     // coefficients drawn from [-coord_bound, coord_bound]
    std::uint64_t seed = 0;
    long max_rejections = 200000;
};

namespace detail {

/// Bounded uniform draws over the raw engine stream. The engine is fully
/// specified by the standard; avoiding std distributions keeps the stream
/// identical across library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t draw;
        do {
            draw = eng_();
        } while (draw >= limit);
        return draw % bound;
    }

    long uniform(long lo, long hi) {
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

private:
    std::mt19937_64 eng_;
};

} // namespace detail

/// Rejection-sampled integer arrangement: candidate planes are drawn
/// uniformly and kept only while every general-position condition stays
/// satisfiable; violating candidates are discarded, never perturbed.
/// Identical seeds produce identical arrangements.
inline Arrangement gen_random(const GenConfig& cfg) {
    if (cfg.n < 1 || cfg.coord_bound < 1) throw Error("gen_random: bad configuration");
    detail::Rng rng(cfg.seed);

    PlaneList planes;
    std::set<Rational> slopes;        // projected line slopes, all pairs
    std::vector<Point3> vertices;     // triple points of the accepted prefix
    long rejections = 0;

    while (static_cast<int>(planes.size()) < cfg.n) {
        Plane cand{Rational(rng.uniform(-cfg.coord_bound, cfg.coord_bound)),
                   Rational(rng.uniform(-cfg.coord_bound, cfg.coord_bound)),
                   Rational(rng.uniform(-cfg.coord_bound, cfg.coord_bound))};

        bool ok = true;
        std::vector<Rational> new_slopes;
        for (const Plane& p : planes) {
            if ((p.a == cand.a && p.b == cand.b) || p.c == cand.c || p.b == cand.b) {
                ok = false; // parallel or identical, duplicate intercept, y-parallel projection
                break;
            }
            new_slopes.push_back(-(p.a - cand.a) / (p.b - cand.b));
        }
        if (ok) {
            // All projected slopes stay pairwise distinct; a collision among
            // the new ones is a degenerate triple through the candidate.
            std::set<Rational> fresh;
            for (const Rational& s : new_slopes)
                if (slopes.count(s) || !fresh.insert(s).second) {
                    ok = false;
                    break;
                }
        }
        if (ok) {
            for (const Point3& v : vertices)
                if (plane_contains(cand, v)) {
                    ok = false; // would create four concurrent planes
                    break;
                }
        }
        if (!ok) {
            if (++rejections > cfg.max_rejections)
                throw RejectionBudgetError("gen_random: rejection budget exhausted");
            continue;
        }

        const int m = static_cast<int>(planes.size());
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                vertices.push_back(*triple_point(planes[static_cast<std::size_t>(i)],
                                                 planes[static_cast<std::size_t>(j)], cand));
        for (const Rational& s : new_slopes) slopes.insert(s);
        planes.push_back(cand);
    }

    auto result = validate(std::move(planes));
    if (!result.ok()) throw Error("gen_random: generated arrangement failed validation");
    return *result.arrangement;
}

} // namespace klevel
