#pragma once

#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "klevel/corridors.hpp"
#include "klevel/diamonds.hpp"

namespace klevel {

struct CheckRow {
    std::string check;
    std::string params;
    std::string observed;
    std::string bound;
    bool pass = false;
    std::string witness; // replayable pointer for failures, empty otherwise
};

struct VerificationReport {
    std::vector<CheckRow> rows;

    bool all_pass() const {
        for (const auto& r : rows)
            if (!r.pass) return false;
        return true;
    }
    int failures() const {
        int f = 0;
        for (const auto& r : rows)
            if (!r.pass) ++f;
        return f;
    }
};

namespace detail {

inline std::string fmt_pair(int i, int j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

} // namespace detail

/// Runs every statement-level check over one arrangement: the antipodality
/// schedule, per-line containment bounds, immersion-count bounds, the
/// partition and housing identities, diamond bounds, the lower-bound chain,
/// and predicate sanity rows. Failures are report rows with witnesses, never
/// exceptions. `workers` parallelizes the immersion scans.
inline VerificationReport verify_all(const Arrangement& arr, int workers = 1) {
    VerificationReport report;
    const int n = arr.size();
    LevelTable table(arr);
    auto add = [&](std::string check, std::string params, std::string observed, std::string bound,
                   bool pass, std::string witness = "") {
        if (!pass && witness.empty()) witness = params; // replay context at minimum
        report.rows.push_back(CheckRow{std::move(check), std::move(params), std::move(observed),
                                       std::move(bound), pass, std::move(witness)});
    };

    // Partition identity.
    {
        auto profile = level_profile(n, table);
        long long sum = 0;
        for (long long v : profile) sum += v;
        add("partition_identity", "n=" + std::to_string(n), std::to_string(sum),
            std::to_string(choose3(n)), sum == choose3(n));
    }

    if (n < 3) return report;
    const int kmax = n - 3;

    // Antipodality over the full sample-point schedule.
    {
        int max_diff = 0;
        std::string witness;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                auto points = antipodality_sample_points(arr, i, j);
                for (const auto& p : points)
                    for (int k = 0; k <= kmax; ++k) {
                        auto c = antipodality_check(arr, table, i, j, p, k);
                        int diff = c.up > c.down ? c.up - c.down : c.down - c.up;
                        if (diff > max_diff) {
                            max_diff = diff;
                            if (diff > 2)
                                witness = "pair " + detail::fmt_pair(i, j) + " k=" +
                                          std::to_string(k) + " at x=" + p.x.str();
                        }
                    }
            }
        add("antipodality", "all pairs, full schedule, all k", std::to_string(max_diff), "2",
            max_diff <= 2, witness);
    }

    // Per-line containment counts, bucketed by level once per pair.
    std::vector<std::vector<long long>> lovasz(static_cast<std::size_t>(kmax + 1));
    for (auto& v : lovasz) v.assign(static_cast<std::size_t>(choose2(n)), 0);
    {
        std::size_t pair_index = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j, ++pair_index) {
                IntersectionLine line = intersect_pair(arr, i, j);
                for (const auto& e : table.entries()) {
                    if (e.vertex_level > kmax) continue;
                    bool disjoint = e.triple[0] != i && e.triple[1] != i && e.triple[2] != i &&
                                    e.triple[0] != j && e.triple[1] != j && e.triple[2] != j;
                    if (!disjoint) continue;
                    if (line_in_corridor(arr, line, e.triple))
                        ++lovasz[static_cast<std::size_t>(e.vertex_level)][pair_index];
                }
            }
        long long limit = static_cast<long long>(n - 2) * (n - 3) / 2;
        long long worst = 0;
        for (int k = 0; k <= kmax; ++k)
            for (long long c : lovasz[static_cast<std::size_t>(k)]) worst = std::max(worst, c);
        add("lovasz_bound", "all lines, all k", std::to_string(worst), std::to_string(limit),
            worst <= limit);
    }

    // Openness sanity: a line is never contained in a corridor defined with
    // either of its own planes.
    {
        long long violations = 0;
        std::string witness;
        for (int i = 0; i < n && violations == 0; ++i)
            for (int j = i + 1; j < n && violations == 0; ++j) {
                IntersectionLine line = intersect_pair(arr, i, j);
                for (int d = 0; d < n; ++d) {
                    if (d == i || d == j) continue;
                    std::array<int, 3> t{i, j, d};
                    std::sort(t.begin(), t.end());
                    if (line_in_corridor(arr, line, t)) {
                        ++violations;
                        witness = "line " + detail::fmt_pair(i, j) + " corridor with " +
                                  std::to_string(d);
                        break;
                    }
                }
            }
        add("corridor_openness", "lines vs own corridors", std::to_string(violations), "0",
            violations == 0, witness);
    }

    // The base plane's z-axis point must lie on the upper side of every
    // member curve; the wedge machinery is anchored to that fact.
    {
        long long violations = 0;
        std::string witness;
        for (int a = 0; a < n; ++a) {
            GammaA gamma = build_gamma(arr, a);
            for (std::size_t m = 0; m < gamma.members.size(); ++m)
                if (gamma.curves[m].C.sign() <= 0) {
                    ++violations;
                    if (witness.empty())
                        witness = "base " + std::to_string(a) + " member " +
                                  std::to_string(gamma.members[m]);
                }
        }
        add("gamma_orientation", "all bases, all members", std::to_string(violations), "0",
            violations == 0, witness);
    }

    // Wedge membership equals the symmetric difference of raw side signs,
    // probed at member-curve crossing points.
    {
        long long mismatches = 0, compared = 0;
        std::string witness;
        for (int a = 0; a < n && mismatches == 0; ++a) {
            GammaA gamma = build_gamma(arr, a);
            const auto& ms = gamma.members;
            if (ms.size() < 2) continue;
            std::vector<Point2> probes;
            for (std::size_t u = 0; u < ms.size() && probes.size() < 6; ++u)
                for (std::size_t v = u + 1; v < ms.size() && probes.size() < 6; ++v)
                    probes.push_back(curve_crossing(gamma, ms[u], ms[v]));
            for (std::size_t x = 0; x < ms.size() && mismatches == 0; ++x)
                for (std::size_t y = x + 1; y < ms.size() && mismatches == 0; ++y)
                    for (const Point2& p : probes) {
                        bool lhs;
                        try {
                            lhs = in_wedge(gamma, p, ms[x], ms[y]);
                        } catch (const OnBoundaryError&) {
                            continue;
                        }
                        ++compared;
                        bool sx = gamma.curve_of(ms[x]).value_at(p).sign() > 0;
                        bool sy = gamma.curve_of(ms[y]).value_at(p).sign() > 0;
                        if (lhs != (sx != sy)) {
                            ++mismatches;
                            witness = "base " + std::to_string(a) + " wedge " +
                                      detail::fmt_pair(ms[x], ms[y]);
                            break;
                        }
                    }
        }
        add("wedge_xor_pointwise", "compared=" + std::to_string(compared),
            std::to_string(mismatches), "0", mismatches == 0, witness);
    }

    // Per-k chain: immersion bounds, housing, diamonds, lower bound.
    for (int k = 0; k <= kmax; ++k) {
        auto imm = count_immersions(arr, table, k, workers);
        long long ck = 0;
        for (const auto& e : table.entries())
            if (e.vertex_level == k) ++ck;

        // X^k upper bounds.
        long long xk = imm.count;
        long long n4_bound = 3LL * n * n * n * n / 4;
        add("xk_upper_bound", "k=" + std::to_string(k), std::to_string(xk),
            "3n^4/4=" + std::to_string(n4_bound), xk <= n4_bound);
        long long lovasz_total = 0;
        for (long long c : lovasz[static_cast<std::size_t>(k)]) lovasz_total += c;
        add("xk_lovasz_charge", "k=" + std::to_string(k), std::to_string(xk),
            "3*lovasz_total=" + std::to_string(3 * lovasz_total), xk <= 3 * lovasz_total);

        // Anti-symmetry of the immersion relation.
        {
            std::set<std::pair<std::array<int, 3>, std::array<int, 3>>> seen;
            for (const auto& p : imm.pairs) seen.insert({p.inner, p.outer});
            long long both_ways = 0;
            for (const auto& p : imm.pairs)
                if (seen.count({p.outer, p.inner})) ++both_ways;
            add("immersion_antisymmetry", "k=" + std::to_string(k), std::to_string(both_ways),
                "0", both_ways == 0);
        }

        // Housing identity and the diamond chain.
        long long housed = 0, delta_sum = 0, no_containment = 0, duplicate_pairs = 0;
        long long euler_violations = 0, crossing_violations = 0;
        Rational per_graph_lower_sum(0);
        std::set<std::pair<std::array<int, 3>, std::array<int, 3>>> produced;
        std::string diamond_witness;
        for (int a = 0; a < n; ++a) {
            LevelGraph g = build_level_graph(arr, table, a, k);
            housed += static_cast<long long>(g.edges.size());
            DiamondScan scan;
            try {
                scan = count_diamonds(arr, g);
            } catch (const NoContainmentError& e) {
                ++no_containment;
                diamond_witness = e.artifact;
                continue;
            }
            delta_sum += scan.delta;
            for (const auto& rec : scan.records) {
                auto pair = diamond_to_immersion(arr, g, rec);
                if (!produced.insert({pair.inner, pair.outer}).second) ++duplicate_pairs;
            }
            auto euler = check_euler_bound(g, scan.delta);
            if (!euler.removal_bound_ok || !euler.planar_bound_ok) ++euler_violations;
            auto crossing = check_crossing_bound(g, scan.delta);
            if (crossing.applicable && !crossing.ok) ++crossing_violations;
            long long edges = static_cast<long long>(g.edges.size());
            long long verts = static_cast<long long>(g.gamma.members.size());
            if (verts > 0) {
                Rational term = Rational(edges * edges * edges) / Rational(64 * verts * verts) -
                                Rational(verts);
                per_graph_lower_sum += term;
            }
        }
        add("housing_identity", "k=" + std::to_string(k), std::to_string(housed),
            std::to_string(ck), housed == ck);
        add("diamond_containment", "k=" + std::to_string(k), std::to_string(no_containment), "0",
            no_containment == 0, diamond_witness);
        add("diamond_injectivity", "k=" + std::to_string(k), std::to_string(duplicate_pairs), "0",
            duplicate_pairs == 0);
        add("diamond_sum_vs_xk", "k=" + std::to_string(k), std::to_string(delta_sum),
            "X^k=" + std::to_string(xk), delta_sum <= xk);
        add("euler_bounds", "k=" + std::to_string(k), std::to_string(euler_violations), "0",
            euler_violations == 0);
        add("crossing_bound", "k=" + std::to_string(k), std::to_string(crossing_violations), "0",
            crossing_violations == 0);

        // Per-graph lower-bound sum, then the closed-form chain.
        bool per_graph_ok = Rational(xk) >= per_graph_lower_sum;
        add("xk_per_graph_lower", "k=" + std::to_string(k), std::to_string(xk),
            per_graph_lower_sum.str(), per_graph_ok);
        Rational chain = Rational(ck * ck * ck) / Rational(64LL * n * n * n * n) -
                         Rational(static_cast<long long>(n) * n);
        add("xk_lower_chain", "k=" + std::to_string(k), std::to_string(xk), chain.str(),
            Rational(xk) >= chain);
        long long ck3_bound_hi = 48LL * n * n * n * n * n * n * n * n +
                                 64LL * n * n * n * n * n * n;
        add("ck_cubed_bound", "k=" + std::to_string(k), std::to_string(ck * ck * ck),
            std::to_string(ck3_bound_hi), ck * ck * ck <= ck3_bound_hi);
    }

    return report;
}

} // namespace klevel
