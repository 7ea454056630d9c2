#pragma once

#include <json.hpp>

#include <istream>
#include <string>

#include "klevel/curtain.hpp"
#include "klevel/diamonds.hpp"
#include "klevel/envelope.hpp"
#include "klevel/sweep.hpp"
#include "klevel/verify.hpp"

namespace klevel {

using json = nlohmann::json;

// Arrangement file format: {"planes": [{"a": "p/q", "b": "p/q", "c": "p/q"},
// ...]}. Plane ids are array positions; rationals serialize as "p/q" in
// lowest terms, and an integer shortcut "p" (or a JSON integer) is accepted
// on input.

inline Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(static_cast<long long>(j.get<long long>()));
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    throw Error("expected a rational as \"p/q\", \"p\", or an integer");
}

inline json planes_to_json(const PlaneList& planes) {
    json out = json::array();
    for (const Plane& p : planes)
        out.push_back({{"a", p.a.str()}, {"b", p.b.str()}, {"c", p.c.str()}});
    return json{{"planes", out}};
}

inline PlaneList planes_from_json(const json& j) {
    if (!j.contains("planes") || !j["planes"].is_array())
        throw Error("arrangement JSON must contain a \"planes\" array");
    PlaneList planes;
    for (const auto& pj : j["planes"])
        planes.push_back(Plane{rational_from_json(pj.at("a")), rational_from_json(pj.at("b")),
                               rational_from_json(pj.at("c"))});
    return planes;
}

inline PlaneList read_planes(std::istream& in) {
    json j;
    in >> j;
    return planes_from_json(j);
}

inline json validation_report_to_json(const ValidationReport& report) {
    json issues = json::array();
    for (const auto& issue : report.issues)
        issues.push_back({{"condition", violation_name(issue.kind)}, {"witness", issue.witness}});
    return json{{"valid", report.ok()}, {"violations", issues}};
}

inline json verification_report_to_json(const VerificationReport& report) {
    json rows = json::array();
    for (const auto& r : report.rows) {
        json row{{"check", r.check}, {"params", r.params}, {"observed", r.observed},
                 {"bound", r.bound},  {"ok", r.pass}};
        if (!r.witness.empty()) row["witness"] = r.witness;
        rows.push_back(row);
    }
    return json{{"ok", report.all_pass()}, {"failures", report.failures()}, {"checks", rows}};
}

inline json immersions_to_json(int k, const ImmersionCount& imm, int n) {
    long long bound = 3LL * n * n * n * n / 4;
    json witnesses = json::array();
    for (const auto& p : imm.pairs)
        witnesses.push_back({{"inner", p.inner}, {"outer", p.outer}, {"shared", p.shared},
                             {"inner_line", {p.inner_line.first, p.inner_line.second}}});
    return json{{"k", k},        {"X_k", imm.count},        {"bound", bound},
                {"ok", imm.count <= bound}, {"witnesses", witnesses}};
}

inline json trace_to_json(const SweepTrace& trace) {
    json moves = json::array();
    for (std::size_t m = 0; m < trace.moves.size(); ++m) {
        const auto& mv = trace.moves[m];
        json entry{{"move", move_kind_name(mv.kind)}};
        if (mv.kind == MoveKind::EmptyTriangle)
            entry["wires"] = {mv.w1, mv.w2};
        else
            entry["wire"] = mv.w1;
        const auto& f = trace.snapshots[m];
        entry["front"] = {{"xi", f.xi}, {"below", std::vector<int>(f.below.begin(), f.below.end())}};
        moves.push_back(entry);
    }
    return json{{"moves", moves},
                {"empty_triangles", trace.empty_triangles},
                {"take_rays", trace.take_rays},
                {"pass_rays", trace.pass_rays}};
}

inline json level_graph_to_json(const LevelGraph& graph, const DiamondScan& scan) {
    json edges = json::array();
    for (auto [b, c] : graph.edges) edges.push_back({b, c});
    json diamonds = json::array();
    for (const auto& rec : scan.records)
        diamonds.push_back({{"edge1", {rec.edge1.first, rec.edge1.second}},
                            {"edge2", {rec.edge2.first, rec.edge2.second}},
                            {"immersed_first", rec.immersed_first}});
    return json{{"base", graph.gamma.base},
                {"k", graph.k},
                {"members", graph.gamma.members},
                {"edges", edges},
                {"diamonds", diamonds}};
}

inline json sample_result_to_json(const SampleResult& result) {
    json trials = json::array();
    for (const auto& t : result.per_trial)
        trials.push_back({{"sample", t.sample},
                          {"envelope_vertices", t.envelope_vertices},
                          {"prisms", t.prisms},
                          {"conflict_sizes", t.conflict_sizes},
                          {"statistic", t.statistic}});
    return json{{"k", result.k},
                {"r", result.r},
                {"trials", result.trials},
                {"envelope_complexity", result.envelope_complexity},
                {"prism_count", result.prism_count},
                {"statistic", result.statistic},
                {"ratio_nk53", result.ratio_nk53},
                {"per_trial", trials}};
}

} // namespace klevel
