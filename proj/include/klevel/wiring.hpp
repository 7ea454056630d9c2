#pragma once

#include <algorithm>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "klevel/errors.hpp"

namespace klevel {

/// Combinatorial pseudoline arrangement: wires 0..n-1 listed top-to-bottom
/// at left infinity, plus an ordered event list. Each event swaps the wires
/// at positions (p, p+1) of the current order; across all events every
/// unordered pair swaps exactly once, so the final order is the reversal.
struct WiringDiagram {
    int n = 0;
    std::vector<int> initial_order;
    std::vector<int> events;
};

enum class WiringViolation {
    BadInitialOrder, // not a permutation of 0..n-1
    InvalidAdjacency, // event position out of range
    PairSwapsTwice,
    PairNeverSwaps,
};

inline const char* wiring_violation_name(WiringViolation v) {
    switch (v) {
        case WiringViolation::BadInitialOrder: return "bad_initial_order";
        case WiringViolation::InvalidAdjacency: return "invalid_adjacency";
        case WiringViolation::PairSwapsTwice: return "pair_swaps_twice";
        case WiringViolation::PairNeverSwaps: return "pair_never_swaps";
    }
    return "unknown";
}

struct WiringIssue {
    WiringViolation kind;
    std::vector<int> witness; // wires and/or event index, see kind
};

struct WiringValidation {
    std::optional<WiringDiagram> diagram;
    std::vector<WiringIssue> issues;
    bool ok() const { return diagram.has_value(); }
    bool has(WiringViolation v) const {
        for (const auto& is : issues)
            if (is.kind == v) return true;
        return false;
    }
};

/// Checks the allowable-sequence contract and returns a certified diagram or
/// every violation with witnesses.
inline WiringValidation validate_wiring(int n, std::vector<int> initial_order,
                                        std::vector<int> events) {
    WiringValidation result;
    auto add = [&](WiringViolation v, std::vector<int> w) {
        result.issues.push_back(WiringIssue{v, std::move(w)});
    };

    if (n < 0 || static_cast<int>(initial_order.size()) != n) {
        add(WiringViolation::BadInitialOrder, {});
        return result;
    }
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int w : initial_order) {
        if (w < 0 || w >= n || seen[static_cast<std::size_t>(w)]) {
            add(WiringViolation::BadInitialOrder, {w});
            return result;
        }
        seen[static_cast<std::size_t>(w)] = true;
    }

    std::vector<int> order = initial_order;
    std::vector<std::vector<int>> swaps(static_cast<std::size_t>(n),
                                        std::vector<int>(static_cast<std::size_t>(n), 0));
    for (std::size_t e = 0; e < events.size(); ++e) {
        int p = events[e];
        if (p < 0 || p + 1 >= n) {
            add(WiringViolation::InvalidAdjacency, {static_cast<int>(e), p});
            continue;
        }
        int u = order[static_cast<std::size_t>(p)];
        int v = order[static_cast<std::size_t>(p) + 1];
        int lo = std::min(u, v), hi = std::max(u, v);
        if (++swaps[static_cast<std::size_t>(lo)][static_cast<std::size_t>(hi)] == 2)
            add(WiringViolation::PairSwapsTwice, {lo, hi, static_cast<int>(e)});
        std::swap(order[static_cast<std::size_t>(p)], order[static_cast<std::size_t>(p) + 1]);
    }
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (swaps[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] == 0)
                add(WiringViolation::PairNeverSwaps, {u, v});

    if (!result.issues.empty()) return result;
    // Implied by single swaps per pair; checked as an internal consistency
    // assertion rather than a user-facing condition.
    std::vector<int> reversed(initial_order.rbegin(), initial_order.rend());
    if (order != reversed) throw Error("wiring invariant broken: final order is not the reversal");
    result.diagram = WiringDiagram{n, std::move(initial_order), std::move(events)};
    return result;
}

/// Wire pair swapped by each event, derived by simulation.
inline std::vector<std::pair<int, int>> event_wires(const WiringDiagram& wd) {
    std::vector<int> order = wd.initial_order;
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(wd.events.size());
    for (int p : wd.events) {
        pairs.emplace_back(order[static_cast<std::size_t>(p)], order[static_cast<std::size_t>(p) + 1]);
        std::swap(order[static_cast<std::size_t>(p)], order[static_cast<std::size_t>(p) + 1]);
    }
    return pairs;
}

/// Per-wire event indices in left-to-right order along the wire (equal to
/// event order for an x-monotone diagram).
inline std::vector<std::vector<int>> wire_event_lists(const WiringDiagram& wd) {
    auto pairs = event_wires(wd);
    std::vector<std::vector<int>> lists(static_cast<std::size_t>(wd.n));
    for (std::size_t e = 0; e < pairs.size(); ++e) {
        lists[static_cast<std::size_t>(pairs[e].first)].push_back(static_cast<int>(e));
        lists[static_cast<std::size_t>(pairs[e].second)].push_back(static_cast<int>(e));
    }
    return lists;
}

/// Vertical mirror: order reversed, positions flipped, event order kept.
inline WiringDiagram mirror_wiring(const WiringDiagram& wd) {
    WiringDiagram m;
    m.n = wd.n;
    m.initial_order.assign(wd.initial_order.rbegin(), wd.initial_order.rend());
    m.events.reserve(wd.events.size());
    for (int p : wd.events) m.events.push_back(wd.n - 2 - p);
    return m;
}

// Text format: line 1 "n"; line 2 the initial order, space separated;
// then one event position per line.

inline std::string format_wiring(const WiringDiagram& wd) {
    std::ostringstream os;
    os << wd.n << "\n";
    for (std::size_t i = 0; i < wd.initial_order.size(); ++i)
        os << (i ? " " : "") << wd.initial_order[i];
    os << "\n";
    for (int p : wd.events) os << p << "\n";
    return os.str();
}

inline WiringValidation parse_wiring(std::istream& in) {
    int n = 0;
    if (!(in >> n)) throw Error("wiring text: missing wire count");
    std::vector<int> order(static_cast<std::size_t>(std::max(n, 0)));
    for (auto& w : order)
        if (!(in >> w)) throw Error("wiring text: truncated initial order");
    std::vector<int> events;
    int p;
    while (in >> p) events.push_back(p);
    return validate_wiring(n, std::move(order), std::move(events));
}

} // namespace klevel
