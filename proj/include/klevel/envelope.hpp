#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "klevel/arrangement.hpp"
#include "klevel/generator.hpp"

namespace klevel {

/// y = s*x + t
struct LinearFn {
    Rational s, t;
    Rational at(const Rational& x) const { return s * x + t; }
};

/// One y-vertical pseudo-trapezoid of a minimization-diagram face, plus the
/// semi-unbounded prism hanging below its lift to the face's plane. Bounded
/// by at most two vertical slab lines and at most two diagram edges, so the
/// prism has a constant-size description.
struct Trapezoid {
    int face = -1;                               // plane attaining the minimum
    std::optional<Rational> x_lo, x_hi;          // slab bounds, absent = unbounded
    std::optional<std::pair<int, LinearFn>> top; // bounding plane id + edge line
    std::optional<std::pair<int, LinearFn>> bottom;
    std::vector<Point2> corners;                 // up to four, exact
};

struct EnvelopeDiagram {
    std::vector<int> sample;          // plane ids, ascending
    std::vector<Trapezoid> trapezoids;
    long long vertex_count = 0;       // distinct diagram vertices
    int faces_nonempty = 0;
};

namespace detail {

/// Lower envelope (pointwise min) of affine functions, as maximal pieces
/// from left to right. For the upper envelope pass negated inputs.
struct EnvelopePiece {
    int id;
    LinearFn fn;
    std::optional<Rational> from, to;
};

inline std::vector<EnvelopePiece> lower_envelope_1d(const std::vector<std::pair<int, LinearFn>>& fns) {
    std::vector<EnvelopePiece> pieces;
    if (fns.empty()) return pieces;
    // Active at x -> -infinity: the largest slope (ties impossible for
    // distinct projected lines of one face).
    std::size_t cur = 0;
    for (std::size_t i = 1; i < fns.size(); ++i)
        if (fns[i].second.s > fns[cur].second.s) cur = i;
    std::optional<Rational> from; // -infinity
    while (true) {
        // Earliest takeover by a function of smaller slope.
        std::optional<Rational> best_x;
        std::size_t best = fns.size();
        for (std::size_t i = 0; i < fns.size(); ++i) {
            if (fns[i].second.s >= fns[cur].second.s) continue;
            Rational x = (fns[i].second.t - fns[cur].second.t) /
                         (fns[cur].second.s - fns[i].second.s);
            if (from && !(x > *from)) continue;
            if (!best_x || x < *best_x ||
                (x == *best_x && fns[i].second.s < fns[best].second.s)) {
                best_x = x;
                best = i;
            }
        }
        if (!best_x) {
            pieces.push_back(EnvelopePiece{fns[cur].first, fns[cur].second, from, std::nullopt});
            return pieces;
        }
        pieces.push_back(EnvelopePiece{fns[cur].first, fns[cur].second, from, best_x});
        from = best_x;
        cur = best;
    }
}

inline std::vector<EnvelopePiece> upper_envelope_1d(std::vector<std::pair<int, LinearFn>> fns) {
    for (auto& f : fns) {
        f.second.s = -f.second.s;
        f.second.t = -f.second.t;
    }
    auto pieces = lower_envelope_1d(fns);
    for (auto& p : pieces) {
        p.fn.s = -p.fn.s;
        p.fn.t = -p.fn.t;
    }
    return pieces;
}

inline const EnvelopePiece& piece_at(const std::vector<EnvelopePiece>& pieces,
                                     const Rational& x) {
    for (const auto& p : pieces) {
        if (p.from && x < *p.from) continue;
        if (p.to && x > *p.to) continue;
        return p;
    }
    throw Error("envelope: no active piece");
}

/// Closed interval with optional infinite ends.
struct XInterval {
    bool empty = true;
    std::optional<Rational> lo, hi; // absent = unbounded

    void include(const std::optional<Rational>& a, const std::optional<Rational>& b) {
        if (empty) {
            empty = false;
            lo = a;
            hi = b;
            return;
        }
        if (!a) lo.reset();
        else if (lo && *a < *lo) lo = a;
        if (!b) hi.reset();
        else if (hi && *b > *hi) hi = b;
    }
};

} // namespace detail

/// Minimization diagram of the lower envelope of the sampled planes, with
/// each face cut into y-vertical pseudo-trapezoids by vertical extensions
/// through every face vertex.
inline EnvelopeDiagram lower_envelope_diagram(const PlaneList& all, std::vector<int> sample) {
    std::sort(sample.begin(), sample.end());
    EnvelopeDiagram diagram;
    diagram.sample = sample;
    std::set<std::pair<Rational, Rational>> vertices;

    for (int i : sample) {
        const Plane& pi = all[static_cast<std::size_t>(i)];
        // Face of plane i: all (x, y) where plane_i is the sample minimum.
        // Each other plane contributes y <= f(x) or y >= f(x).
        std::vector<std::pair<int, LinearFn>> uppers, lowers;
        for (int j : sample) {
            if (j == i) continue;
            const Plane& pj = all[static_cast<std::size_t>(j)];
            Rational alpha = pi.a - pj.a, beta = pi.b - pj.b, delta = pi.c - pj.c;
            LinearFn boundary{-alpha / beta, -delta / beta};
            if (beta.sign() > 0)
                uppers.push_back({j, boundary});
            else
                lowers.push_back({j, boundary});
        }
        auto top = detail::lower_envelope_1d(uppers);  // y <= U(x), U = min
        auto bottom = detail::upper_envelope_1d(lowers); // y >= L(x), L = max

        // Feasible x-interval of the face: L <= U. U - L is concave, so the
        // region is one interval; scan the refined breakpoint partition.
        std::vector<Rational> breaks;
        for (const auto& p : top) {
            if (p.from) breaks.push_back(*p.from);
            if (p.to) breaks.push_back(*p.to);
        }
        for (const auto& p : bottom) {
            if (p.from) breaks.push_back(*p.from);
            if (p.to) breaks.push_back(*p.to);
        }
        std::sort(breaks.begin(), breaks.end());
        breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

        std::optional<Rational> x_lo, x_hi; // feasible interval, absent = unbounded
        if (!top.empty() && !bottom.empty()) {
            // Feasible x-range: where the gap U - L (concave piecewise
            // affine) is nonnegative. Solve per breakpoint cell and merge;
            // concavity makes the union one interval.
            struct Cell {
                std::optional<Rational> a, b;
            };
            std::vector<Cell> cells;
            if (breaks.empty()) {
                cells.push_back({std::nullopt, std::nullopt});
            } else {
                cells.push_back({std::nullopt, breaks.front()});
                for (std::size_t s = 0; s + 1 < breaks.size(); ++s)
                    cells.push_back({breaks[s], breaks[s + 1]});
                cells.push_back({breaks.back(), std::nullopt});
            }
            detail::XInterval feasible;
            for (const auto& cell : cells) {
                Rational probe = cell.a && cell.b ? (*cell.a + *cell.b) / Rational(2)
                                 : cell.a         ? *cell.a + Rational(1)
                                 : cell.b         ? *cell.b - Rational(1)
                                                  : Rational(0);
                const auto& tp = detail::piece_at(top, probe);
                const auto& bp = detail::piece_at(bottom, probe);
                Rational gap0 = tp.fn.at(probe) - bp.fn.at(probe);
                Rational slope = tp.fn.s - bp.fn.s;
                std::optional<Rational> ca = cell.a, cb = cell.b;
                if (slope.is_zero()) {
                    if (gap0.sign() < 0) continue;
                } else {
                    Rational root = probe - gap0 / slope;
                    if (slope.sign() > 0) {
                        if (!ca || root > *ca) ca = root;
                    } else {
                        if (!cb || root < *cb) cb = root;
                    }
                    if (ca && cb && *ca > *cb) continue;
                }
                feasible.include(ca, cb);
            }
            if (feasible.empty) continue;
            x_lo = feasible.lo;
            x_hi = feasible.hi;
        }

        // Diagram vertices on this face's boundary: edge breakpoints inside
        // the feasible interval plus the interval endpoints (where the two
        // boundary chains meet). Shared vertices dedupe through the set.
        auto in_domain = [&](const Rational& x) {
            return !(x_lo && x < *x_lo) && !(x_hi && x > *x_hi);
        };
        for (const auto& p : top)
            if (p.from && in_domain(*p.from)) vertices.insert({*p.from, p.fn.at(*p.from)});
        for (const auto& p : bottom)
            if (p.from && in_domain(*p.from)) vertices.insert({*p.from, p.fn.at(*p.from)});
        for (const auto& endpoint : {x_lo, x_hi})
            if (endpoint && !top.empty())
                vertices.insert({*endpoint, detail::piece_at(top, *endpoint).fn.at(*endpoint)});

        // Slab boundaries: every face vertex x inside the feasible interval,
        // plus the interval endpoints.
        std::vector<Rational> slabs;
        auto keep = [&](const Rational& x) {
            if (!in_domain(x)) return;
            slabs.push_back(x);
        };
        for (const Rational& b : breaks) keep(b);
        if (x_lo) slabs.push_back(*x_lo);
        if (x_hi) slabs.push_back(*x_hi);
        std::sort(slabs.begin(), slabs.end());
        slabs.erase(std::unique(slabs.begin(), slabs.end()), slabs.end());

        auto edge_at = [&](const std::vector<detail::EnvelopePiece>& pieces, const Rational& x)
            -> std::optional<std::pair<int, LinearFn>> {
            for (const auto& p : pieces) {
                if (p.from && x < *p.from) continue;
                if (p.to && x > *p.to) continue;
                return std::make_pair(p.id, p.fn);
            }
            return std::nullopt;
        };

        // One trapezoid per slab, including the unbounded end slabs.
        std::vector<std::pair<std::optional<Rational>, std::optional<Rational>>> ranges;
        if (slabs.empty()) {
            ranges.push_back({x_lo, x_hi});
        } else {
            if (!x_lo || *x_lo < slabs.front()) ranges.push_back({x_lo, slabs.front()});
            for (std::size_t s = 0; s + 1 < slabs.size(); ++s)
                ranges.push_back({slabs[s], slabs[s + 1]});
            if (!x_hi || *x_hi > slabs.back()) ranges.push_back({slabs.back(), x_hi});
        }
        bool face_has_trapezoid = false;
        for (auto& [lo, hi] : ranges) {
            if (lo && hi && !(*lo < *hi)) continue; // degenerate slab
            Trapezoid tau;
            tau.face = i;
            tau.x_lo = lo;
            tau.x_hi = hi;
            Rational mid = lo && hi ? (*lo + *hi) / Rational(2)
                           : lo     ? *lo + Rational(1)
                           : hi     ? *hi - Rational(1)
                                    : Rational(0);
            tau.top = top.empty() ? std::nullopt : edge_at(top, mid);
            tau.bottom = bottom.empty() ? std::nullopt : edge_at(bottom, mid);
            for (const auto& xb : {lo, hi}) {
                if (!xb) continue;
                if (tau.top) tau.corners.push_back(Point2{*xb, tau.top->second.at(*xb)});
                if (tau.bottom) tau.corners.push_back(Point2{*xb, tau.bottom->second.at(*xb)});
            }
            diagram.trapezoids.push_back(std::move(tau));
            face_has_trapezoid = true;
        }
        if (face_has_trapezoid) ++diagram.faces_nonempty;
    }
    diagram.vertex_count = static_cast<long long>(vertices.size());
    return diagram;
}

/// Exact conflict test: does plane d pass strictly below the face plane
/// somewhere over the closed trapezoid? Affine minimum over a convex set:
/// attained at a corner or along an unbounded direction. Touching the prism
/// roof only (equality) is not a conflict.
inline bool prism_conflicts(const PlaneList& all, const Trapezoid& tau, int d) {
    if (d == tau.face) return false;
    const Plane& pd = all[static_cast<std::size_t>(d)];
    const Plane& pf = all[static_cast<std::size_t>(tau.face)];
    Rational alpha = pd.a - pf.a, beta = pd.b - pf.b, delta = pd.c - pf.c;
    auto value = [&](const Point2& p) { return alpha * p.x + beta * p.y + delta; };

    for (const auto& c : tau.corners)
        if (value(c).sign() < 0) return true;

    // Extreme recession rays: vertical when a side has no bounding edge,
    // and along each existing edge when a slab end is open.
    if (!tau.top && beta.sign() < 0) return true;
    if (!tau.bottom && beta.sign() > 0) return true;
    for (const auto& edge : {tau.top, tau.bottom}) {
        if (!edge) continue;
        Rational rate = alpha + beta * edge->second.s;
        if (!tau.x_lo && rate.sign() > 0) return true;
        if (!tau.x_hi && rate.sign() < 0) return true;
    }
    return false;
}

struct SampleTrial {
    std::vector<int> sample;
    long long envelope_vertices = 0;
    long long prisms = 0;
    std::vector<int> conflict_sizes; // per prism
    double statistic = 0.0;          // sum over prisms of |conflicts|^(8/3)
};

struct SampleResult {
    int k = 0, r = 0, trials = 0;
    long long envelope_complexity = 0; // max vertices over trials
    long long prism_count = 0;         // max prisms over trials
    double statistic = 0.0;            // mean over trials
    double ratio_nk53 = 0.0;           // statistic / (n * k^(5/3)), observed only
    std::vector<SampleTrial> per_trial;
};

/// Random-sample experiment: draws R of size r = floor(n / 2k), decomposes
/// the region below its lower envelope into semi-unbounded vertical prisms,
/// and accumulates the conflict-set statistic. Exact arithmetic everywhere
/// except the final per-trial power sum, which is the reporting layer.
inline SampleResult clarkson_shor_sample(const Arrangement& arr, int k, int trials,
                                         std::uint64_t seed,
                                         std::optional<int> r_override = std::nullopt) {
    const int n = arr.size();
    if (!r_override) {
        if (k < 1 || 2 * k > n - 3) throw Error("clarkson_shor_sample: k out of range");
    }
    const int r = r_override ? *r_override : n / (2 * k);
    if (r < 1 || r > n) throw Error("clarkson_shor_sample: sample size out of range");

    detail::Rng rng(seed);
    SampleResult result;
    result.k = k;
    result.r = r;
    result.trials = trials;

    double stat_sum = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        // Partial Fisher-Yates draw of r distinct plane ids.
        std::vector<int> ids(static_cast<std::size_t>(n));
        std::iota(ids.begin(), ids.end(), 0);
        for (int pos = 0; pos < r; ++pos) {
            int swap_with = pos + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - pos)));
            std::swap(ids[static_cast<std::size_t>(pos)], ids[static_cast<std::size_t>(swap_with)]);
        }
        ids.resize(static_cast<std::size_t>(r));

        SampleTrial t;
        auto diagram = lower_envelope_diagram(arr.planes(), ids);
        t.sample = diagram.sample;
        t.envelope_vertices = diagram.vertex_count;
        t.prisms = static_cast<long long>(diagram.trapezoids.size());
        for (const auto& tau : diagram.trapezoids) {
            int conflicts = 0;
            for (int d = 0; d < n; ++d)
                if (prism_conflicts(arr.planes(), tau, d)) ++conflicts;
            t.conflict_sizes.push_back(conflicts);
            t.statistic += std::cbrt(std::pow(static_cast<double>(conflicts), 8.0));
        }
        stat_sum += t.statistic;
        result.envelope_complexity = std::max(result.envelope_complexity, t.envelope_vertices);
        result.prism_count = std::max(result.prism_count, t.prisms);
        result.per_trial.push_back(std::move(t));
    }
    result.statistic = trials > 0 ? stat_sum / trials : 0.0;
    result.ratio_nk53 =
        result.statistic / (static_cast<double>(n) * std::cbrt(std::pow(k, 5.0)));
    return result;
}

} // namespace klevel
