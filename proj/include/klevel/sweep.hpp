#pragma once

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "klevel/wiring.hpp"

namespace klevel {

enum class MoveKind { EmptyTriangle, TakeFirstRay, PassFirstRay };

inline const char* move_kind_name(MoveKind k) {
    switch (k) {
        case MoveKind::EmptyTriangle: return "empty_triangle";
        case MoveKind::TakeFirstRay: return "take_first_ray";
        case MoveKind::PassFirstRay: return "pass_first_ray";
    }
    return "unknown";
}

struct SweepMove {
    MoveKind kind;
    int w1 = -1, w2 = -1; // w2 used by EmptyTriangle only
};

/// State of the sweep curve: the ordered sequence of wires it crosses, the
/// wires entirely below it, and the wires above its left end at x = -inf.
/// The last set pins the curve's left-infinity position, which the crossing
/// sequence alone does not determine; it must be a prefix of the diagram's
/// initial order. Wires in neither xi nor below are entirely above.
struct SweepFront {
    std::vector<int> xi;
    std::set<int> below;
    std::set<int> left_above;

    friend bool operator==(const SweepFront& a, const SweepFront& b) {
        return a.xi == b.xi && a.below == b.below && a.left_above == b.left_above;
    }
};

struct SweepTrace {
    SweepFront initial;
    std::vector<SweepMove> moves;
    std::vector<SweepFront> snapshots; // state after each move
    int empty_triangles = 0, take_rays = 0, pass_rays = 0;

    const SweepFront& final_front() const {
        return snapshots.empty() ? initial : snapshots.back();
    }
};

/// Start state for sweeping a diagram from below everything: the curve
/// crosses nothing and every wire is above it.
inline SweepFront front_below_all(const WiringDiagram& wd) {
    SweepFront f;
    for (int w = 0; w < wd.n; ++w) f.left_above.insert(w);
    return f;
}

namespace detail {

enum class WireStatus { Below, FullyAbove, Rising, Falling };

struct SweepState {
    const WiringDiagram* wd = nullptr;
    std::vector<std::pair<int, int>> pairs;     // event -> wire pair
    std::vector<std::vector<int>> wire_events;  // wire -> its events, along-wire order
    std::vector<char> swept;                    // per event
    std::vector<WireStatus> status;             // per wire
    std::vector<int> boundary;                  // per wire, see below
    std::vector<int> pos0;                      // wire -> index in initial order
    std::deque<int> xi;
    std::set<int> below, left_above;

    // Rising wires keep their swept crossings as a prefix of wire_events
    // (boundary = count swept); falling wires keep the unswept ones as the
    // prefix (boundary = count unswept).

    int degree(int w) const { return static_cast<int>(wire_events[static_cast<std::size_t>(w)].size()); }

    bool has_candidate(int w) const {
        auto s = status[static_cast<std::size_t>(w)];
        int b = boundary[static_cast<std::size_t>(w)];
        if (s == WireStatus::Rising) return b < degree(w);
        if (s == WireStatus::Falling) return b > 0;
        return false;
    }

    /// Crossing the sweep curve would pass next on wire w, on the above side.
    int candidate(int w) const {
        auto s = status[static_cast<std::size_t>(w)];
        int b = boundary[static_cast<std::size_t>(w)];
        return s == WireStatus::Rising ? wire_events[static_cast<std::size_t>(w)][static_cast<std::size_t>(b)]
                                       : wire_events[static_cast<std::size_t>(w)][static_cast<std::size_t>(b - 1)];
    }

    void advance(int w) {
        auto s = status[static_cast<std::size_t>(w)];
        boundary[static_cast<std::size_t>(w)] += s == WireStatus::Rising ? 1 : -1;
    }

    SweepFront front() const {
        SweepFront f;
        f.xi.assign(xi.begin(), xi.end());
        f.below = below;
        f.left_above = left_above;
        return f;
    }

    std::string dump() const {
        std::ostringstream os;
        os << "xi=[";
        for (std::size_t i = 0; i < xi.size(); ++i) os << (i ? " " : "") << xi[i];
        os << "] below={";
        for (int w : below) os << w << " ";
        os << "} left_above={";
        for (int w : left_above) os << w << " ";
        os << "}";
        return os.str();
    }
};

/// Builds the engine state, deriving which crossings already lie below the
/// curve. Throws when the front is inconsistent with the diagram.
inline SweepState init_state(const WiringDiagram& wd, const SweepFront& start) {
    SweepState st;
    st.wd = &wd;
    st.pairs = event_wires(wd);
    st.wire_events = wire_event_lists(wd);
    st.swept.assign(st.pairs.size(), 0);
    st.status.assign(static_cast<std::size_t>(wd.n), WireStatus::FullyAbove);
    st.boundary.assign(static_cast<std::size_t>(wd.n), 0);
    st.pos0.assign(static_cast<std::size_t>(wd.n), -1);
    for (int i = 0; i < wd.n; ++i) st.pos0[static_cast<std::size_t>(wd.initial_order[static_cast<std::size_t>(i)])] = i;
    st.xi.assign(start.xi.begin(), start.xi.end());
    st.below = start.below;
    st.left_above = start.left_above;

    std::vector<int> xi_pos(static_cast<std::size_t>(wd.n), -1);
    for (std::size_t i = 0; i < start.xi.size(); ++i) {
        int w = start.xi[i];
        if (w < 0 || w >= wd.n || xi_pos[static_cast<std::size_t>(w)] != -1)
            throw Error("sweep front: bad crossing sequence");
        xi_pos[static_cast<std::size_t>(w)] = static_cast<int>(i);
    }
    for (int w : start.below) {
        if (xi_pos[static_cast<std::size_t>(w)] != -1) throw Error("sweep front: wire both crossed and below");
        st.status[static_cast<std::size_t>(w)] = WireStatus::Below;
    }
    for (int w = 0; w < wd.n; ++w) {
        if (xi_pos[static_cast<std::size_t>(w)] != -1)
            st.status[static_cast<std::size_t>(w)] = start.left_above.count(w) ? WireStatus::Falling : WireStatus::Rising;
        else if (!start.below.count(w) && !start.left_above.count(w))
            throw Error("sweep front: fully-above wire missing from left_above");
    }
    // left_above must be a prefix of the initial order.
    {
        int m = static_cast<int>(start.left_above.size());
        for (int i = 0; i < m; ++i)
            if (!start.left_above.count(wd.initial_order[static_cast<std::size_t>(i)]))
                throw Error("sweep front: left_above is not a prefix of the initial order");
    }

    // Classify each crossing as already swept or not.
    for (std::size_t e = 0; e < st.pairs.size(); ++e) {
        auto [u, v] = st.pairs[e];
        auto su = st.status[static_cast<std::size_t>(u)], sv = st.status[static_cast<std::size_t>(v)];
        auto order_in_xi = [&](int a, int b) { return xi_pos[static_cast<std::size_t>(a)] < xi_pos[static_cast<std::size_t>(b)]; };
        bool is_swept;
        if (su == WireStatus::Below && sv == WireStatus::Below) {
            is_swept = true;
        } else if (su == WireStatus::FullyAbove && sv == WireStatus::FullyAbove) {
            is_swept = false;
        } else if ((su == WireStatus::Below && sv == WireStatus::FullyAbove) ||
                   (su == WireStatus::FullyAbove && sv == WireStatus::Below)) {
            throw Error("sweep front: a below wire cannot cross a fully-above wire");
        } else if (su == WireStatus::Below || sv == WireStatus::Below) {
            is_swept = true; // crossing lies on the fully-below wire
        } else if (su == WireStatus::FullyAbove || sv == WireStatus::FullyAbove) {
            is_swept = false;
        } else {
            // Both crossed by the curve. Let u be the earlier crossing on it.
            if (!order_in_xi(u, v)) std::swap(u, v);
            bool u_rising = st.status[static_cast<std::size_t>(u)] == WireStatus::Rising;
            bool v_rising = st.status[static_cast<std::size_t>(v)] == WireStatus::Rising;
            if (u_rising && v_rising)
                is_swept = st.pos0[static_cast<std::size_t>(v)] < st.pos0[static_cast<std::size_t>(u)];
            else if (u_rising && !v_rising)
                is_swept = false;
            else if (!u_rising && v_rising)
                is_swept = true;
            else
                is_swept = st.pos0[static_cast<std::size_t>(v)] < st.pos0[static_cast<std::size_t>(u)];
        }
        st.swept[e] = is_swept ? 1 : 0;
    }

    // Swept crossings must sit on the correct side of each wire's own
    // crossing with the curve: a prefix for rising wires (suffix for
    // falling), contiguously.
    for (int w = 0; w < wd.n; ++w) {
        const auto& evs = st.wire_events[static_cast<std::size_t>(w)];
        int swept_count = 0;
        for (int e : evs) swept_count += st.swept[static_cast<std::size_t>(e)];
        auto s = st.status[static_cast<std::size_t>(w)];
        if (s == WireStatus::Below && swept_count != static_cast<int>(evs.size()))
            throw Error("sweep front: below wire has an unswept crossing");
        if (s == WireStatus::FullyAbove && swept_count != 0)
            throw Error("sweep front: fully-above wire has a swept crossing");
        if (s == WireStatus::Rising) {
            for (int i = 0; i < swept_count; ++i)
                if (!st.swept[static_cast<std::size_t>(evs[static_cast<std::size_t>(i)])])
                    throw Error("sweep front: swept crossings of a rising wire are not a prefix");
            st.boundary[static_cast<std::size_t>(w)] = swept_count;
        } else if (s == WireStatus::Falling) {
            int unswept = static_cast<int>(evs.size()) - swept_count;
            for (int i = 0; i < unswept; ++i)
                if (st.swept[static_cast<std::size_t>(evs[static_cast<std::size_t>(i)])])
                    throw Error("sweep front: unswept crossings of a falling wire are not a prefix");
            st.boundary[static_cast<std::size_t>(w)] = unswept;
        }
    }
    return st;
}

} // namespace detail

/// Number of crossings strictly above the curve described by the front.
inline int crossings_above(const WiringDiagram& wd, const SweepFront& front) {
    auto st = detail::init_state(wd, front);
    int count = 0;
    for (char s : st.swept)
        if (!s) ++count;
    return count;
}

/// Sweeps the curve upward until every wire lies below it, using the three
/// moves: passing over an empty triangle, taking on the first ray, passing
/// over a ray. A crossed wire leaves the sequence at the end matching its
/// orientation: at the left end when it entered from above, at the right
/// end when it exits upward. Move selection is a fixed greedy (leftmost
/// empty triangle, then ray passes, then ray take-ons), so traces are
/// deterministic. Throws SweepStuckError if no move applies; that must
/// never happen for a valid diagram and a consistent front.
inline SweepTrace sweep_up(const WiringDiagram& wd, const SweepFront& start) {
    auto st = detail::init_state(wd, start);
    SweepTrace trace;
    trace.initial = start;

    auto done = [&] { return st.xi.empty() && static_cast<int>(st.below.size()) == wd.n; };
    while (!done()) {
        bool moved = false;

        // Empty triangle: adjacent pair whose next crossing on the above
        // side is their mutual one.
        for (std::size_t i = 0; i + 1 < st.xi.size() && !moved; ++i) {
            int u = st.xi[i], v = st.xi[i + 1];
            if (!st.has_candidate(u) || !st.has_candidate(v)) continue;
            int e = st.candidate(u);
            if (e != st.candidate(v)) continue;
            st.swept[static_cast<std::size_t>(e)] = 1;
            st.advance(u);
            st.advance(v);
            std::swap(st.xi[i], st.xi[i + 1]);
            trace.moves.push_back(SweepMove{MoveKind::EmptyTriangle, u, v});
            ++trace.empty_triangles;
            moved = true;
        }
        if (!moved && !st.xi.empty()) {
            // Pass over the first ray: leftmost crossing, wire entering from
            // above, with no unswept crossing left on it.
            int w = st.xi.front();
            if (st.status[static_cast<std::size_t>(w)] == detail::WireStatus::Falling &&
                st.boundary[static_cast<std::size_t>(w)] == 0) {
                st.xi.pop_front();
                st.below.insert(w);
                st.left_above.erase(w);
                st.status[static_cast<std::size_t>(w)] = detail::WireStatus::Below;
                trace.moves.push_back(SweepMove{MoveKind::PassFirstRay, w});
                ++trace.pass_rays;
                moved = true;
            }
        }
        if (!moved && !st.xi.empty()) {
            // Mirror release at the right end for wires exiting upward.
            int w = st.xi.back();
            if (st.status[static_cast<std::size_t>(w)] == detail::WireStatus::Rising &&
                st.boundary[static_cast<std::size_t>(w)] == st.degree(w)) {
                st.xi.pop_back();
                st.below.insert(w);
                st.status[static_cast<std::size_t>(w)] = detail::WireStatus::Below;
                trace.moves.push_back(SweepMove{MoveKind::PassFirstRay, w});
                ++trace.pass_rays;
                moved = true;
            }
        }
        if (!moved && !st.left_above.empty()) {
            // Take on the first ray: the wire adjacent to the curve's left
            // end from above, when it is still entirely above.
            int w = -1, best = -1;
            for (int cand : st.left_above)
                if (st.pos0[static_cast<std::size_t>(cand)] > best) {
                    best = st.pos0[static_cast<std::size_t>(cand)];
                    w = cand;
                }
            if (w >= 0 && st.status[static_cast<std::size_t>(w)] == detail::WireStatus::FullyAbove) {
                st.xi.push_front(w);
                st.left_above.erase(w);
                st.status[static_cast<std::size_t>(w)] = detail::WireStatus::Rising;
                st.boundary[static_cast<std::size_t>(w)] = 0;
                trace.moves.push_back(SweepMove{MoveKind::TakeFirstRay, w});
                ++trace.take_rays;
                moved = true;
            }
        }
        if (!moved) throw SweepStuckError(st.dump());
        trace.snapshots.push_back(st.front());
    }
    return trace;
}

namespace detail {

inline SweepFront mirror_front(const WiringDiagram& wd, const SweepFront& f) {
    SweepFront m;
    m.xi = f.xi; // left-to-right order along the curve survives a vertical flip
    for (int w = 0; w < wd.n; ++w) {
        bool crossed = std::find(f.xi.begin(), f.xi.end(), w) != f.xi.end();
        if (!crossed && !f.below.count(w)) m.below.insert(w); // above <-> below
        if (!f.left_above.count(w)) m.left_above.insert(w);
    }
    return m;
}

} // namespace detail

/// Downward sweep: the vertical mirror image of sweep_up. Returned fronts
/// are re-mirrored, so `below` in the result means below the original
/// orientation's curve.
inline SweepTrace sweep_down(const WiringDiagram& wd, const SweepFront& start) {
    WiringDiagram m = mirror_wiring(wd);
    SweepTrace t = sweep_up(m, detail::mirror_front(wd, start));
    SweepTrace out;
    out.initial = start;
    out.moves = t.moves;
    out.empty_triangles = t.empty_triangles;
    out.take_rays = t.take_rays;
    out.pass_rays = t.pass_rays;
    out.snapshots.reserve(t.snapshots.size());
    for (const auto& f : t.snapshots) out.snapshots.push_back(detail::mirror_front(m, f));
    return out;
}

} // namespace klevel
