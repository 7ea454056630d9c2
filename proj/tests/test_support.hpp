#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "klevel/arrangement.hpp"

namespace ktest {

inline klevel::Plane make_plane(long a, long b, long c) {
    return klevel::Plane{klevel::Rational(a), klevel::Rational(b), klevel::Rational(c)};
}

/// Planes z = t*x + t^2*y + t^3 sampled on the moment curve. For parameter
/// sets with pairwise-distinct sums these are valid arrangements of any
/// size: a cubic cannot have four roots, so no four planes are concurrent,
/// and projected slopes -1/(s+t) are pairwise distinct.
inline klevel::PlaneList moment_planes(const std::vector<long>& ts) {
    klevel::PlaneList planes;
    for (long t : ts) planes.push_back(make_plane(t, t * t, t * t * t));
    return planes;
}

/// Fibonacci-style parameters have pairwise-distinct sums.
inline std::vector<long> sidon_params(int n) {
    std::vector<long> ts{1, 2};
    while (static_cast<int>(ts.size()) < n)
        ts.push_back(ts[ts.size() - 1] + ts[ts.size() - 2]);
    ts.resize(static_cast<std::size_t>(n));
    return ts;
}

inline klevel::Arrangement require_valid(klevel::PlaneList planes) {
    auto result = klevel::validate(std::move(planes));
    if (!result.ok()) {
        std::string msg = "expected a valid arrangement, got:";
        for (const auto& issue : result.report.issues) {
            msg += std::string(" ") + klevel::violation_name(issue.kind) + "(";
            for (std::size_t w = 0; w < issue.witness.size(); ++w)
                msg += (w ? "," : "") + std::to_string(issue.witness[w]);
            msg += ")";
        }
        throw klevel::Error(msg);
    }
    return *result.arrangement;
}

inline klevel::Arrangement moment_arrangement(int n) {
    return require_valid(moment_planes(sidon_params(n)));
}

inline std::string fixture_path(const std::string& name) {
    return std::string(KLEVEL_FIXTURE_DIR) + "/" + name;
}

/// One validation-gated draw of n random integer planes; nullopt on a
/// degenerate draw so callers can loop.
inline std::optional<klevel::Arrangement> random_arrangement(std::mt19937_64& rng, int n,
                                                             long bound) {
    std::uniform_int_distribution<long> coeff(-bound, bound);
    klevel::PlaneList planes;
    for (int i = 0; i < n; ++i) planes.push_back(make_plane(coeff(rng), coeff(rng), coeff(rng)));
    auto result = klevel::validate(std::move(planes));
    if (!result.ok()) return std::nullopt;
    return result.arrangement;
}

} // namespace ktest
