#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "klevel/corridors.hpp"
#include "klevel/sweep.hpp"

namespace klevel {

/// One plane's cross-section with the vertical curtain over a base line,
/// flattened to the (t, z) plane: z(t) = intercept + slope * t, where t is
/// the base line's x-monotone parameter. Within a flattened curtain the
/// cross-sections of planes are again lines.
struct CurtainCurve {
    int plane = -1;
    Rational intercept, slope;
    Rational cross_t;   // parameter where the curve meets the base curve
    bool above_left = false; // lies above the base curve left of the crossing

    Rational z_at(const Rational& t) const { return intercept + slope * t; }
};

/// Flattened curtain over the intersection line of planes (i, j), with the
/// wiring diagram of the cross-section curves, per-curve level annotations
/// for the queried k, and the sweep front describing the base curve.
struct CurtainArrangement {
    int i = -1, j = -1, k = 0;
    IntersectionLine base;
    Rational base_intercept, base_slope; // z of the base curve over t
    std::vector<CurtainCurve> curves;    // wire w of the diagram is curves[w]
    std::vector<bool> level_annotation;  // C_{i,j,plane(w)} at level k
    WiringDiagram diagram;               // events in increasing parameter order
    std::vector<Rational> event_params;
    std::vector<bool> event_above_base;
    SweepFront base_front;               // the base curve crosses every wire

    Rational base_z(const Rational& t) const { return base_intercept + base_slope * t; }
    int wire_of(int plane) const {
        for (std::size_t w = 0; w < curves.size(); ++w)
            if (curves[w].plane == plane) return static_cast<int>(w);
        return -1;
    }
};

/// Extracts the curtain over the line of planes (i, j). All crossing
/// parameters are exact rationals; events are sorted by parameter (ties
/// between distinct points are ordered by height and always commute).
inline CurtainArrangement curtain_of(const Arrangement& arr, const LevelTable& table, int i,
                                     int j, int k) {
    CurtainArrangement c;
    c.i = i;
    c.j = j;
    c.k = k;
    c.base = intersect_pair(arr, i, j);
    c.base_intercept = c.base.origin.z;
    c.base_slope = c.base.dz;

    for (int d = 0; d < arr.size(); ++d) {
        if (d == i || d == j) continue;
        const Plane& pd = arr.plane(d);
        CurtainCurve curve;
        curve.plane = d;
        curve.intercept = plane_eval(pd, c.base.origin.x, c.base.origin.y);
        curve.slope = pd.a * c.base.dx + pd.b * c.base.dy;
        // Distinct slope from the base: no line is parallel to a third plane.
        curve.cross_t = (c.base_intercept - curve.intercept) / (curve.slope - c.base_slope);
        curve.above_left = curve.slope < c.base_slope;
        c.curves.push_back(curve);
        c.level_annotation.push_back(table.level_of(i, j, d) == k);
    }
    const int m = static_cast<int>(c.curves.size());

    // Top-to-bottom order at t = -infinity: ascending curtain slope.
    std::vector<int> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return c.curves[static_cast<std::size_t>(a)].slope < c.curves[static_cast<std::size_t>(b)].slope;
    });

    // All pairwise crossings, sorted by (t, z); both coordinates together
    // identify the crossing point, so the order is strict.
    struct Crossing {
        Rational t, z;
        int w1, w2;
    };
    std::vector<Crossing> crossings;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
            const auto& ca = c.curves[static_cast<std::size_t>(a)];
            const auto& cb = c.curves[static_cast<std::size_t>(b)];
            Rational t = (ca.intercept - cb.intercept) / (cb.slope - ca.slope);
            crossings.push_back(Crossing{t, ca.z_at(t), a, b});
        }
    std::sort(crossings.begin(), crossings.end(), [](const Crossing& x, const Crossing& y) {
        return x.t != y.t ? x.t < y.t : x.z < y.z;
    });

    // Turn crossings into adjacent-swap events by simulation.
    std::vector<int> current = order;
    std::vector<int> events;
    for (const auto& cr : crossings) {
        auto p1 = std::find(current.begin(), current.end(), cr.w1) - current.begin();
        auto p2 = std::find(current.begin(), current.end(), cr.w2) - current.begin();
        if (p1 > p2) std::swap(p1, p2);
        if (p2 != p1 + 1) throw Error("curtain: crossing of non-adjacent curves");
        events.push_back(static_cast<int>(p1));
        std::swap(current[static_cast<std::size_t>(p1)], current[static_cast<std::size_t>(p2)]);
        c.event_params.push_back(cr.t);
        c.event_above_base.push_back(cr.z > c.base_z(cr.t));
    }

    auto validated = validate_wiring(m, order, events);
    if (!validated.ok()) throw Error("curtain: extracted wiring diagram invalid");
    c.diagram = *validated.diagram;

    // The base curve crosses every curve once, in crossing-parameter order.
    std::vector<int> xi(static_cast<std::size_t>(m));
    std::iota(xi.begin(), xi.end(), 0);
    std::sort(xi.begin(), xi.end(), [&](int a, int b) {
        return c.curves[static_cast<std::size_t>(a)].cross_t < c.curves[static_cast<std::size_t>(b)].cross_t;
    });
    c.base_front.xi = xi;
    for (int w = 0; w < m; ++w)
        if (c.curves[static_cast<std::size_t>(w)].above_left) c.base_front.left_above.insert(w);
    return c;
}

inline CurtainArrangement curtain_of(const Arrangement& arr, int i, int j, int k) {
    return curtain_of(arr, LevelTable(arr), i, j, k);
}

/// Balance of level-k witnesses around a crossing of two curtain curves.
/// `enters`/`exits` count, over all remaining planes of the arrangement,
/// those whose corridor with the crossing pair is at level k and whose
/// surface passes above (resp. below) the crossing point; this equals the
/// antipodality count at the crossing's vertical line, so
/// |exits - enters| <= 2. The curtain-restricted pair drops the curtain's
/// two defining planes (both always pass below a crossing above the base).
struct CrossingClassification {
    int enters = 0, exits = 0;                  // over all planes but the crossing pair
    int enters_curtain = 0, exits_curtain = 0;  // restricted to curtain curves
};

inline CrossingClassification classify_crossing(const Arrangement& arr, const LevelTable& table,
                                                const CurtainArrangement& curtain, int wc, int wd,
                                                int k) {
    const auto& cc = curtain.curves[static_cast<std::size_t>(wc)];
    const auto& cd = curtain.curves[static_cast<std::size_t>(wd)];
    Rational t = (cc.intercept - cd.intercept) / (cd.slope - cc.slope);
    Rational z = cc.z_at(t);
    if (!(z > curtain.base_z(t)))
        throw Error("classify_crossing: crossing does not lie above the base curve");

    CrossingClassification out;
    Point3 base_pt = curtain.base.at(t);
    for (int e = 0; e < arr.size(); ++e) {
        if (e == cc.plane || e == cd.plane) continue;
        Rational ze = plane_eval(arr.plane(e), base_pt.x, base_pt.y);
        if (ze == z) throw NonGenericPointError(e);
        if (table.level_of(cc.plane, cd.plane, e) != k) continue;
        bool above = ze > z;
        bool in_curtain = e != curtain.i && e != curtain.j;
        if (above) {
            ++out.enters;
            if (in_curtain) ++out.enters_curtain;
        } else {
            ++out.exits;
            if (in_curtain) ++out.exits_curtain;
        }
    }
    return out;
}

} // namespace klevel
