#pragma once

#include <algorithm>
#include <array>
#include <future>
#include <optional>
#include <vector>

#include "klevel/arrangement.hpp"

namespace klevel {

/// Corridor of three planes: the open region strictly between their lower
/// and upper envelopes. Classified by the level of its unique vertex.
struct Corridor {
    std::array<int, 3> triple; // canonically sorted
    Point3 vertex;
    int vertex_level;
};

struct KCorridorSet {
    int k = 0;
    std::vector<Corridor> corridors;
};

/// Ordered immersion: `inner` and `outer` share exactly one plane, and the
/// intersection line of inner's other two planes lies fully inside outer.
struct ImmersionPair {
    std::array<int, 3> inner;
    std::array<int, 3> outer;
    int shared;
    std::pair<int, int> inner_line;

    friend bool operator==(const ImmersionPair& a, const ImmersionPair& b) {
        return a.inner == b.inner && a.outer == b.outer;
    }
    friend bool operator<(const ImmersionPair& a, const ImmersionPair& b) {
        return a.inner != b.inner ? a.inner < b.inner : a.outer < b.outer;
    }
};

/// Memoized vertices and levels of all C(n,3) triples of an arrangement.
class LevelTable {
public:
    explicit LevelTable(const Arrangement& arr) : n_(arr.size()) {
        entries_.reserve(static_cast<std::size_t>(choose3(n_)));
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j)
                for (int k = j + 1; k < n_; ++k) {
                    Point3 v = intersect_triple(arr, i, j, k);
                    entries_.push_back(Entry{{i, j, k}, v, level(arr, v)});
                }
    }

    struct Entry {
        std::array<int, 3> triple;
        Point3 vertex;
        int vertex_level;
    };

    const std::vector<Entry>& entries() const { return entries_; }

    int level_of(int i, int j, int k) const { return entry_of(i, j, k).vertex_level; }
    const Entry& entry_of(int i, int j, int k) const {
        std::array<int, 3> t{i, j, k};
        std::sort(t.begin(), t.end());
        return entries_[index_of(t)];
    }

private:
    std::size_t index_of(const std::array<int, 3>& t) const {
        // Position of (t0<t1<t2) in the lexicographic triple enumeration.
        long long before = choose3(n_) - choose3(n_ - t[0]);
        before += choose2(n_ - 1 - t[0]) - choose2(n_ - t[1]);
        before += t[2] - t[1] - 1;
        return static_cast<std::size_t>(before);
    }

    int n_;
    std::vector<Entry> entries_;
};

namespace detail {

/// Intersection of closed constraint sets {t : u + v*t >= 0}, each of which
/// is empty, all of R, or a closed ray. Tracked as [lo, hi] with optional
/// infinite ends.
struct ParamInterval {
    bool empty = false;
    std::optional<Rational> lo, hi;

    void add_ge(const Rational& u, const Rational& v) {
        if (empty) return;
        if (v.is_zero()) {
            const bool mutate =
                testing::active_mutation() == testing::Mutation::corridor_ray_closure;
            if (mutate ? u.sign() <= 0 : u.sign() < 0) empty = true;
            return;
        }
        Rational bound = -u / v;
        if (v.sign() > 0) {
            if (!lo || bound > *lo) lo = bound;
        } else {
            if (!hi || bound < *hi) hi = bound;
        }
        if (lo && hi && *lo > *hi) empty = true;
    }
};

} // namespace detail

/// Exact decision: is the line fully contained in the corridor of `triple`?
/// Containment holds iff neither "on or above all three planes" nor "on or
/// below all three planes" is realized at any parameter. Both sets are
/// intersections of closed rays, so emptiness is decided exactly; a line
/// touching the corridor boundary is not contained.
inline bool line_in_corridor(const Arrangement& arr, const IntersectionLine& line,
                             std::array<int, 3> triple) {
    detail::ParamInterval above, below;
    for (int idx : triple) {
        const Plane& d = arr.plane(idx);
        // f(t) = z_line(t) - z_plane(t) = u + v*t
        Rational u = line.origin.z - plane_eval(d, line.origin.x, line.origin.y);
        Rational v = line.dz - (d.a * line.dx + d.b * line.dy);
        above.add_ge(u, v);
        below.add_ge(-u, -v);
    }
    return above.empty && below.empty;
}

/// All k-corridors: exactly the triples whose vertex lies at level k.
inline KCorridorSet enumerate_k_corridors(const LevelTable& table, int k) {
    KCorridorSet set;
    set.k = k;
    for (const auto& e : table.entries())
        if (e.vertex_level == k)
            set.corridors.push_back(Corridor{e.triple, e.vertex, e.vertex_level});
    return set;
}

inline KCorridorSet enumerate_k_corridors(const Arrangement& arr, int k) {
    return enumerate_k_corridors(LevelTable(arr), k);
}

/// |C^k| for each k in [0, n-3]; sums to C(n,3).
inline std::vector<long long> level_profile(int n, const LevelTable& table) {
    std::vector<long long> profile(static_cast<std::size_t>(std::max(0, n - 2)), 0);
    for (const auto& e : table.entries()) {
        if (e.vertex_level >= 0 && e.vertex_level < static_cast<int>(profile.size()))
            ++profile[static_cast<std::size_t>(e.vertex_level)];
    }
    return profile;
}

inline std::vector<long long> level_profile(const Arrangement& arr) {
    return level_profile(arr.size(), LevelTable(arr));
}

struct ImmersionCount {
    long long count = 0;                 // X^k
    std::vector<ImmersionPair> pairs;    // canonically sorted
};

namespace detail {

inline std::optional<int> shared_plane(const std::array<int, 3>& a, const std::array<int, 3>& b) {
    int shared = -1, count = 0;
    for (int x : a)
        for (int y : b)
            if (x == y) {
                shared = x;
                ++count;
            }
    if (count != 1) return std::nullopt;
    return shared;
}

inline std::optional<ImmersionPair> immersion_of(const Arrangement& arr, const Corridor& inner,
                                                 const Corridor& outer) {
    auto shared = shared_plane(inner.triple, outer.triple);
    if (!shared) return std::nullopt;
    std::array<int, 2> rest{};
    int r = 0;
    for (int x : inner.triple)
        if (x != *shared) rest[static_cast<std::size_t>(r++)] = x;
    IntersectionLine line = intersect_pair(arr, rest[0], rest[1]);
    if (!line_in_corridor(arr, line, outer.triple)) return std::nullopt;
    return ImmersionPair{inner.triple, outer.triple, *shared, {rest[0], rest[1]}};
}

} // namespace detail

/// Exhaustive scan of ordered pairs of k-corridors sharing exactly one
/// plane. The pair order is (immersed, containing). `workers` > 1 splits the
/// scan by inner corridor; the merge is deterministic.
inline ImmersionCount count_immersions(const Arrangement& arr, const LevelTable& table, int k,
                                       int workers = 1) {
    KCorridorSet set = enumerate_k_corridors(table, k);
    const auto& cs = set.corridors;
    ImmersionCount result;

    auto scan = [&](std::size_t begin, std::size_t end) {
        std::vector<ImmersionPair> found;
        for (std::size_t a = begin; a < end; ++a)
            for (std::size_t b = 0; b < cs.size(); ++b) {
                if (a == b) continue;
                if (auto p = detail::immersion_of(arr, cs[a], cs[b])) found.push_back(*p);
            }
        return found;
    };

    if (workers <= 1 || cs.size() < 4) {
        result.pairs = scan(0, cs.size());
    } else {
        std::size_t chunk = (cs.size() + static_cast<std::size_t>(workers) - 1) /
                            static_cast<std::size_t>(workers);
        std::vector<std::future<std::vector<ImmersionPair>>> parts;
        for (std::size_t begin = 0; begin < cs.size(); begin += chunk)
            parts.push_back(std::async(std::launch::async, scan, begin,
                                       std::min(begin + chunk, cs.size())));
        for (auto& f : parts) {
            auto part = f.get();
            result.pairs.insert(result.pairs.end(), part.begin(), part.end());
        }
    }
    std::sort(result.pairs.begin(), result.pairs.end());
    result.count = static_cast<long long>(result.pairs.size());
    return result;
}

inline ImmersionCount count_immersions(const Arrangement& arr, int k, int workers = 1) {
    return count_immersions(arr, LevelTable(arr), k, workers);
}

struct AntipodalCounts {
    int up = 0, down = 0;
};

/// Levels of the witness corridors C_{i,j,d} above and below a generic point
/// p on the line of planes i and j. The caller asserts |up - down| <= 2.
/// Throws NonGenericPointError when some other plane passes through p.
inline AntipodalCounts antipodality_check(const Arrangement& arr, const LevelTable& table, int i,
                                          int j, const Point3& p, int k) {
    if (!plane_contains(arr.plane(i), p) || !plane_contains(arr.plane(j), p))
        throw Error("antipodality point not on the line of the given pair");
    AntipodalCounts counts;
    for (int d = 0; d < arr.size(); ++d) {
        if (d == i || d == j) continue;
        Rational zd = plane_eval(arr.plane(d), p.x, p.y);
        if (zd == p.z) throw NonGenericPointError(d);
        if (table.level_of(i, j, d) != k) continue;
        if (zd > p.z)
            ++counts.up;
        else
            ++counts.down;
    }
    return counts;
}

inline AntipodalCounts antipodality_check(const Arrangement& arr, int i, int j, const Point3& p,
                                          int k) {
    return antipodality_check(arr, LevelTable(arr), i, j, p, k);
}

/// Sample-point schedule along the line of (i, j): the crossing parameters
/// of every other plane are sorted, and we take all interval midpoints plus
/// one point past each extreme. This covers every combinatorially distinct
/// generic position of a point on the line.
inline std::vector<Point3> antipodality_sample_points(const Arrangement& arr, int i, int j) {
    IntersectionLine line = intersect_pair(arr, i, j);
    std::vector<Rational> params;
    for (int d = 0; d < arr.size(); ++d) {
        if (d == i || d == j) continue;
        const Plane& pd = arr.plane(d);
        Rational u = line.origin.z - plane_eval(pd, line.origin.x, line.origin.y);
        Rational v = line.dz - (pd.a * line.dx + pd.b * line.dy);
        // v != 0: no intersection line is parallel to a third plane.
        params.push_back(-u / v);
    }
    std::sort(params.begin(), params.end());
    std::vector<Point3> points;
    if (params.empty()) {
        points.push_back(line.at(Rational(0)));
        return points;
    }
    points.push_back(line.at(params.front() - Rational(1)));
    for (std::size_t s = 0; s + 1 < params.size(); ++s)
        points.push_back(line.at((params[s] + params[s + 1]) / Rational(2)));
    points.push_back(line.at(params.back() + Rational(1)));
    return points;
}

/// Number of k-corridors over planes disjoint from {i, j} that fully contain
/// the line of (i, j). The caller asserts count <= (n-2)(n-3)/2.
inline int lovasz_count(const Arrangement& arr, const LevelTable& table, int i, int j, int k) {
    IntersectionLine line = intersect_pair(arr, i, j);
    int count = 0;
    for (const auto& e : table.entries()) {
        if (e.vertex_level != k) continue;
        if (e.triple[0] == i || e.triple[1] == i || e.triple[2] == i) continue;
        if (e.triple[0] == j || e.triple[1] == j || e.triple[2] == j) continue;
        if (line_in_corridor(arr, line, e.triple)) ++count;
    }
    return count;
}

inline int lovasz_count(const Arrangement& arr, int i, int j, int k) {
    return lovasz_count(arr, LevelTable(arr), i, j, k);
}

} // namespace klevel
