#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "klevel/geometry.hpp"

namespace klevel {

/// General-position conditions checked by validate(). Each maps to a distinct
/// report entry carrying the offending index tuple.
enum class Violation {
    IdenticalPlanes,
    ParallelPlanes,
    DuplicateZIntercept,
    YParallelProjection,   // projected intersection line parallel to the y-axis
    ParallelProjections,   // two projected intersection lines mutually parallel
    LineParallelToPlane,   // intersection line parallel to a third plane
    ThreeShareLine,
    FourConcurrent,
};

inline const char* violation_name(Violation v) {
    switch (v) {
        case Violation::IdenticalPlanes: return "identical_planes";
        case Violation::ParallelPlanes: return "parallel_planes";
        case Violation::DuplicateZIntercept: return "duplicate_z_intercept";
        case Violation::YParallelProjection: return "y_parallel_projection";
        case Violation::ParallelProjections: return "parallel_projections";
        case Violation::LineParallelToPlane: return "line_parallel_to_plane";
        case Violation::ThreeShareLine: return "three_share_line";
        case Violation::FourConcurrent: return "four_concurrent";
    }
    return "unknown";
}

struct ValidationIssue {
    Violation kind;
    std::vector<int> witness;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
    bool has(Violation v) const {
        for (const auto& is : issues)
            if (is.kind == v) return true;
        return false;
    }
};

/// Per-condition certificate; all flags true in any constructed Arrangement.
struct Certificate {
    bool no_identical = false;
    bool no_parallel = false;
    bool distinct_intercepts = false;
    bool no_y_parallel_projection = false;
    bool distinct_projected_slopes = false;
    bool no_line_parallel_to_plane = false;
    bool no_three_share_line = false;
    bool no_four_concurrent = false;
};

struct ValidationResult;

/// Validated list of planes in general position. Immutable after
/// construction; every operation over it is a pure function, so instances
/// are safe to share across threads without synchronization.
class Arrangement {
public:
    const PlaneList& planes() const { return planes_; }
    const Plane& plane(int i) const { return planes_[static_cast<std::size_t>(i)]; }
    int size() const { return static_cast<int>(planes_.size()); }
    const Certificate& certificate() const { return cert_; }

private:
    friend struct ValidationResult;
    friend ValidationResult validate(PlaneList planes);
    Arrangement(PlaneList planes, Certificate cert)
        : planes_(std::move(planes)), cert_(cert) {}

    PlaneList planes_;
    Certificate cert_;
};

struct ValidationResult {
    std::optional<Arrangement> arrangement;
    ValidationReport report;
    bool ok() const { return arrangement.has_value(); }

    static ValidationResult success(PlaneList planes, Certificate cert) {
        ValidationResult r;
        r.arrangement.emplace(Arrangement(std::move(planes), cert));
        return r;
    }
};

/// Checks every general-position condition and returns either a certified
/// Arrangement or the full list of violations with witnesses. Rejection
/// only: degenerate inputs are reported, never perturbed.
inline ValidationResult validate(PlaneList planes) {
    const int n = static_cast<int>(planes.size());
    ValidationReport report;
    auto add = [&](Violation v, std::vector<int> w) {
        report.issues.push_back(ValidationIssue{v, std::move(w)});
    };

    // Pairwise conditions. good_pair marks pairs with distinct gradients and
    // a non-y-parallel projected line, which later checks rely on.
    std::vector<std::vector<bool>> good_pair(static_cast<std::size_t>(n),
                                             std::vector<bool>(static_cast<std::size_t>(n), false));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const Plane& p = planes[static_cast<std::size_t>(i)];
            const Plane& q = planes[static_cast<std::size_t>(j)];
            if (p == q) {
                add(Violation::IdenticalPlanes, {i, j});
                continue;
            }
            if (p.a == q.a && p.b == q.b) {
                add(Violation::ParallelPlanes, {i, j});
                continue;
            }
            if (p.c == q.c) add(Violation::DuplicateZIntercept, {i, j});
            if (p.b == q.b) {
                add(Violation::YParallelProjection, {i, j});
                continue;
            }
            good_pair[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
        }
    }

    // All projected intersection lines must have pairwise distinct slopes, so
    // that they form a pseudoline family: every pair of projections crosses
    // exactly once. Slope of the projection of plane_i ∩ plane_j.
    std::map<Rational, std::pair<int, int>> slope_owner;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (!good_pair[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) continue;
            const Plane& p = planes[static_cast<std::size_t>(i)];
            const Plane& q = planes[static_cast<std::size_t>(j)];
            Rational slope = -(p.a - q.a) / (p.b - q.b);
            auto [it, inserted] = slope_owner.emplace(slope, std::make_pair(i, j));
            if (!inserted) {
                auto [pi, pj] = it->second;
                // Collisions between pairs sharing a plane are degenerate
                // triples; the triple scan below reports those.
                if (pi != i && pi != j && pj != i && pj != j)
                    add(Violation::ParallelProjections, {pi, pj, i, j});
            }
        }
    }

    // A line parallel to a third plane can also pair two planes whose
    // projected slopes never collide with another pair's: check triples
    // directly. A triple has a unique common point iff l_ij is not parallel
    // to plane k, which is what triple_point's determinant tests.
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (!good_pair[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) continue;
            for (int k = j + 1; k < n; ++k) {
                if (!good_pair[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] ||
                    !good_pair[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)])
                    continue;
                const Plane& p = planes[static_cast<std::size_t>(i)];
                const Plane& q = planes[static_cast<std::size_t>(j)];
                const Plane& r = planes[static_cast<std::size_t>(k)];
                if (triple_point(p, q, r)) continue;
                IntersectionLine l = line_of(p, q, i, j);
                if (plane_contains(r, l.origin) && plane_contains(r, l.at(Rational(1))))
                    add(Violation::ThreeShareLine, {i, j, k});
                else
                    add(Violation::LineParallelToPlane, {i, j, k});
            }
        }

    // No four planes concurrent at a point.
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                auto pt = triple_point(planes[static_cast<std::size_t>(i)],
                                       planes[static_cast<std::size_t>(j)],
                                       planes[static_cast<std::size_t>(k)]);
                if (!pt) continue;
                for (int m = k + 1; m < n; ++m)
                    if (plane_contains(planes[static_cast<std::size_t>(m)], *pt))
                        add(Violation::FourConcurrent, {i, j, k, m});
            }

    if (!report.issues.empty()) {
        ValidationResult r;
        r.report = std::move(report);
        return r;
    }
    Certificate cert;
    cert.no_identical = cert.no_parallel = cert.distinct_intercepts = true;
    cert.no_y_parallel_projection = cert.distinct_projected_slopes = true;
    cert.no_line_parallel_to_plane = cert.no_three_share_line = cert.no_four_concurrent = true;
    return ValidationResult::success(std::move(planes), cert);
}

/// Intersection line of planes i and j of a validated arrangement.
inline IntersectionLine intersect_pair(const Arrangement& arr, int i, int j) {
    return line_of(arr.plane(i), arr.plane(j), i, j);
}

/// Unique common point of three planes of a validated arrangement.
inline Point3 intersect_triple(const Arrangement& arr, int i, int j, int k) {
    auto pt = triple_point(arr.plane(i), arr.plane(j), arr.plane(k));
    if (!pt) throw DegenerateTripleError(i, j, k);
    return *pt;
}

inline int level(const Arrangement& arr, const Point3& p) { return level(arr.planes(), p); }

} // namespace klevel
