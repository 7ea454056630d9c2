#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "klevel/diamonds.hpp"
#include "klevel/generator.hpp"
#include "klevel/verify.hpp"

namespace klevel {

struct ExperimentRow {
    int n = 0, k = 0, trial = 0;
    std::uint64_t seed = 0; // the derived per-cell seed actually used
    long long ck = 0, xk = 0;
    long long lovasz_max = 0;
    long long diamond_sum = 0;
    bool bound_ok = true;
};

struct SlopeSummary {
    int n = 0;
    double slope = 0.0; // fitted log-log slope of mean |C^k| against k
    int points = 0;
};

struct ExperimentResult {
    std::vector<ExperimentRow> rows;
    std::vector<SlopeSummary> slopes;
};

namespace detail {

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t n, std::uint64_t trial) {
    // splitmix64 finalizer over a packed cell key.
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (n * 1000003ULL + trial + 1ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace detail

/// Batch experiment: for every (n, trial) one seeded arrangement, and for
/// every k the counted quantities plus a per-row pass flag for the exact
/// bounds. Rows are a pure function of (ns, ks, trials, seed).
inline ExperimentResult experiment_batch(const std::vector<int>& ns, const std::vector<int>& ks,
                                         int trials, std::uint64_t seed, long coord_bound = 50,
                                         int workers = 1) {
    ExperimentResult result;
    for (int n : ns) {
        for (int trial = 0; trial < trials; ++trial) {
            GenConfig cfg;
            cfg.n = n;
            cfg.coord_bound = coord_bound;
            cfg.seed = detail::mix_seed(seed, static_cast<std::uint64_t>(n),
                                        static_cast<std::uint64_t>(trial));
            Arrangement arr = gen_random(cfg);
            LevelTable table(arr);
            for (int k : ks) {
                ExperimentRow row;
                row.n = n;
                row.k = k;
                row.trial = trial;
                row.seed = cfg.seed;
                for (const auto& e : table.entries())
                    if (e.vertex_level == k) ++row.ck;
                row.xk = count_immersions(arr, table, k, workers).count;
                for (int i = 0; i < n; ++i)
                    for (int j = i + 1; j < n; ++j)
                        row.lovasz_max = std::max(
                            row.lovasz_max,
                            static_cast<long long>(lovasz_count(arr, table, i, j, k)));
                for (int a = 0; a < n; ++a) {
                    LevelGraph g = build_level_graph(arr, table, a, k);
                    row.diamond_sum += count_diamonds(arr, g).delta;
                }

                long long n4 = 3LL * n * n * n * n / 4;
                long long lovasz_bound = n >= 3 ? static_cast<long long>(n - 2) * (n - 3) / 2 : 0;
                long long ck3_hi = 48LL * n * n * n * n * n * n * n * n +
                                   64LL * n * n * n * n * n * n;
                Rational chain = Rational(row.ck * row.ck * row.ck) /
                                     Rational(64LL * n * n * n * n) -
                                 Rational(static_cast<long long>(n) * n);
                row.bound_ok = row.xk <= n4 && row.lovasz_max <= lovasz_bound &&
                               row.ck * row.ck * row.ck <= ck3_hi &&
                               Rational(row.xk) >= chain && row.diamond_sum <= row.xk;
                result.rows.push_back(row);
            }
        }
    }

    // Fitted log-log slope of mean |C^k| against k, per n; report layer.
    for (int n : ns) {
        std::map<int, std::pair<double, int>> by_k;
        for (const auto& row : result.rows)
            if (row.n == n) {
                by_k[row.k].first += static_cast<double>(row.ck);
                by_k[row.k].second += 1;
            }
        std::vector<std::pair<double, double>> pts;
        for (const auto& [k, acc] : by_k) {
            if (k <= 0) continue;
            double mean = acc.first / acc.second;
            if (mean > 0.0) pts.push_back({std::log(static_cast<double>(k)), std::log(mean)});
        }
        SlopeSummary s;
        s.n = n;
        s.points = static_cast<int>(pts.size());
        if (pts.size() >= 2) {
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            for (auto [x, y] : pts) {
                sx += x;
                sy += y;
                sxx += x * x;
                sxy += x * y;
            }
            double m = static_cast<double>(pts.size());
            double denom = m * sxx - sx * sx;
            s.slope = denom != 0.0 ? (m * sxy - sx * sy) / denom : 0.0;
        }
        result.slopes.push_back(s);
    }
    return result;
}

/// Fixed, documented column set.
inline std::string experiment_csv(const ExperimentResult& result) {
    std::ostringstream os;
    os << "n,k,trial,seed,Ck,Xk,lovasz_max,diamond_sum,bound_ok\n";
    for (const auto& r : result.rows)
        os << r.n << "," << r.k << "," << r.trial << "," << r.seed << "," << r.ck << "," << r.xk
           << "," << r.lovasz_max << "," << r.diamond_sum << "," << (r.bound_ok ? 1 : 0) << "\n";
    return os.str();
}

} // namespace klevel
