#include "klevel/envelope.hpp"
#include "klevel/experiment.hpp"
#include "klevel/generator.hpp"
#include "klevel/json_io.hpp"
#include "klevel/verify.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "test_support.hpp"

namespace {

using klevel::Arrangement;
using klevel::GenConfig;
using klevel::Point2;
using klevel::Point3;
using klevel::Rational;

GenConfig config(int n, long bound, std::uint64_t seed) {
    GenConfig cfg;
    cfg.n = n;
    cfg.coord_bound = bound;
    cfg.seed = seed;
    return cfg;
}

TEST(GenRandom, DeterministicAcrossRuns) {
    auto a = klevel::gen_random(config(3, 5, 1));
    auto b = klevel::gen_random(config(3, 5, 1));
    EXPECT_EQ(klevel::planes_to_json(a.planes()).dump(),
              klevel::planes_to_json(b.planes()).dump());

    auto c = klevel::gen_random(config(10, 30, 99));
    auto d = klevel::gen_random(config(10, 30, 99));
    EXPECT_EQ(klevel::planes_to_json(c.planes()).dump(),
              klevel::planes_to_json(d.planes()).dump());
}

TEST(GenRandom, SinglePlaneAndFullValidation) {
    auto one = klevel::gen_random(config(1, 5, 42));
    EXPECT_EQ(one.size(), 1);

    auto arr = klevel::gen_random(config(12, 50, 7));
    const auto& cert = arr.certificate();
    EXPECT_TRUE(cert.no_identical && cert.no_parallel && cert.distinct_intercepts &&
                cert.no_y_parallel_projection && cert.distinct_projected_slopes &&
                cert.no_line_parallel_to_plane && cert.no_three_share_line &&
                cert.no_four_concurrent);
}

TEST(GenRandom, TinyBudgetExhausts) {
    GenConfig cfg = config(9, 1, 5); // 27 possible planes with many collisions
    cfg.max_rejections = 3;
    EXPECT_THROW(klevel::gen_random(cfg), klevel::RejectionBudgetError);
}

TEST(Fixture, RecordedEightPlaneArrangement) {
    std::ifstream in(ktest::fixture_path("arr8.json"));
    ASSERT_TRUE(in.good()) << "fixture file missing";
    auto planes = klevel::read_planes(in);
    auto result = klevel::validate(planes);
    EXPECT_TRUE(result.ok());
    // The file records gen_random(n=8, bound=20, seed=2024) verbatim.
    auto regen = klevel::gen_random(config(8, 20, 2024));
    EXPECT_EQ(klevel::planes_to_json(regen.planes()).dump(),
              klevel::planes_to_json(planes).dump());
}

TEST(JsonIo, RationalFormsAccepted) {
    auto j = klevel::json::parse(R"({"planes":[{"a":"-3/6","b":7,"c":"2"}]})");
    auto planes = klevel::planes_from_json(j);
    ASSERT_EQ(planes.size(), 1u);
    EXPECT_EQ(planes[0].a, Rational(-1, 2));
    EXPECT_EQ(planes[0].b, Rational(7));
    EXPECT_EQ(planes[0].c, Rational(2));
    EXPECT_THROW(klevel::planes_from_json(klevel::json::parse(R"({"planes":[{"a":true}]})")),
                 klevel::Error);
}

TEST(JsonIo, LevelGraphDumpShape) {
    auto arr = klevel::gen_random(config(8, 20, 2024));
    klevel::LevelTable table(arr);
    auto g = klevel::build_level_graph(arr, table, 0, 1);
    auto scan = klevel::count_diamonds(arr, g);
    auto j = klevel::level_graph_to_json(g, scan);
    EXPECT_EQ(j["base"], 0);
    EXPECT_EQ(j["k"], 1);
    EXPECT_EQ(j["members"].size(), g.gamma.members.size());
    EXPECT_EQ(j["edges"].size(), g.edges.size());
    EXPECT_EQ(j["diamonds"].size(), scan.records.size());
}

TEST(VerifyAll, SmallestArrangementMostlyVacuous) {
    auto arr = ktest::moment_arrangement(3);
    auto report = klevel::verify_all(arr);
    EXPECT_TRUE(report.all_pass());
}

TEST(VerifyAll, SeededArrangementsPass) {
    for (std::uint64_t seed : {11ULL, 12ULL}) {
        auto arr = klevel::gen_random(config(8, 25, seed));
        auto report = klevel::verify_all(arr);
        EXPECT_TRUE(report.all_pass()) << "seed " << seed << ": "
                                       << klevel::verification_report_to_json(report).dump(2);
    }
}

TEST(VerifyAll, WorkerCountDoesNotChangeTheReport) {
    auto arr = klevel::gen_random(config(8, 25, 33));
    auto seq = klevel::verification_report_to_json(klevel::verify_all(arr, 1)).dump();
    auto par = klevel::verification_report_to_json(klevel::verify_all(arr, 4)).dump();
    EXPECT_EQ(seq, par);
}

// Each documented predicate mutation must trip at least one check on the
// fixture set. The five mutations are the documented ones: level strictness,
// corridor ray closure, wedge combiner, wedge orientation, housing rule.
TEST(MutationSensitivity, EveryMutationIsCaught) {
    std::vector<Arrangement> fixtures;
    fixtures.push_back(klevel::gen_random(config(8, 20, 2024)));
    fixtures.push_back(klevel::gen_random(config(10, 30, 77)));

    using klevel::testing::Mutation;
    for (Mutation m : {Mutation::level_strictness, Mutation::corridor_ray_closure,
                       Mutation::wedge_combiner, Mutation::wedge_orientation,
                       Mutation::housing_rule}) {
        klevel::testing::ScopedMutation guard(m);
        int failures = 0;
        for (const auto& arr : fixtures) {
            try {
                failures += klevel::verify_all(arr).failures();
            } catch (const klevel::Error&) {
                ++failures; // a mutated predicate may break internal invariants outright
            }
        }
        EXPECT_GT(failures, 0) << "mutation " << static_cast<int>(m) << " went unnoticed";
    }
    // And the suite is clean again once the mutation is lifted.
    EXPECT_TRUE(klevel::verify_all(fixtures[0]).all_pass());
}

TEST(Experiment, TrivialRowsAndDeterminism) {
    auto res = klevel::experiment_batch({3}, {1, 2}, 2, 5);
    for (const auto& row : res.rows) {
        EXPECT_EQ(row.ck, 0); // a 3-plane arrangement has no k>0 vertices
        EXPECT_TRUE(row.bound_ok);
    }
    auto again = klevel::experiment_batch({3}, {1, 2}, 2, 5);
    EXPECT_EQ(klevel::experiment_csv(res), klevel::experiment_csv(again));

    auto csv = klevel::experiment_csv(res);
    EXPECT_EQ(csv.substr(0, csv.find('\n')),
              "n,k,trial,seed,Ck,Xk,lovasz_max,diamond_sum,bound_ok");
}

TEST(Experiment, BoundsHoldOnSmallBatch) {
    auto res = klevel::experiment_batch({6, 7}, {0, 1, 2}, 2, 17);
    ASSERT_FALSE(res.rows.empty());
    for (const auto& row : res.rows) EXPECT_TRUE(row.bound_ok);
    ASSERT_EQ(res.slopes.size(), 2u);
}

bool prism_contains(const klevel::PlaneList& all, const klevel::Trapezoid& tau, const Point3& p) {
    if (tau.x_lo && !(p.x > *tau.x_lo)) return false;
    if (tau.x_hi && !(p.x < *tau.x_hi)) return false;
    if (tau.top && !(p.y < tau.top->second.at(p.x))) return false;
    if (tau.bottom && !(p.y > tau.bottom->second.at(p.x))) return false;
    return p.z <= klevel::plane_eval(all[static_cast<std::size_t>(tau.face)], p.x, p.y);
}

TEST(Envelope, SinglePlaneSampleIsOneUnboundedFace) {
    auto arr = ktest::moment_arrangement(3);
    auto diagram = klevel::lower_envelope_diagram(arr.planes(), {1});
    ASSERT_EQ(diagram.trapezoids.size(), 1u);
    EXPECT_EQ(diagram.vertex_count, 0);
    const auto& tau = diagram.trapezoids[0];
    EXPECT_FALSE(tau.x_lo || tau.x_hi || tau.top || tau.bottom);
    // Every other plane dips below a single plane somewhere.
    EXPECT_TRUE(klevel::prism_conflicts(arr.planes(), tau, 0));
    EXPECT_TRUE(klevel::prism_conflicts(arr.planes(), tau, 2));
    EXPECT_FALSE(klevel::prism_conflicts(arr.planes(), tau, 1));
}

TEST(Envelope, FullSampleHasNoConflicts) {
    auto arr = klevel::gen_random(config(9, 20, 4));
    std::vector<int> all_ids;
    for (int i = 0; i < arr.size(); ++i) all_ids.push_back(i);
    auto diagram = klevel::lower_envelope_diagram(arr.planes(), all_ids);
    long long conflicts = 0;
    for (const auto& tau : diagram.trapezoids)
        for (int d = 0; d < arr.size(); ++d)
            if (klevel::prism_conflicts(arr.planes(), tau, d)) ++conflicts;
    EXPECT_EQ(conflicts, 0) << "prisms below the full envelope are conflict-free";

    auto res = klevel::clarkson_shor_sample(arr, 1, 3, 11, arr.size());
    EXPECT_EQ(res.statistic, 0.0);
}

TEST(Envelope, StructuralBoundsAndSampleInvariants) {
    auto arr = klevel::gen_random(config(12, 40, 8));
    auto res = klevel::clarkson_shor_sample(arr, 2, 8, 123);
    EXPECT_EQ(res.r, 3);
    for (const auto& t : res.per_trial) {
        EXPECT_LE(t.envelope_vertices, 2 * res.r);
        EXPECT_LE(t.prisms, 3 * t.envelope_vertices + res.r);
        // Sample planes never conflict with their own decomposition.
        auto diagram = klevel::lower_envelope_diagram(arr.planes(), t.sample);
        for (const auto& tau : diagram.trapezoids)
            for (int id : t.sample)
                EXPECT_FALSE(klevel::prism_conflicts(arr.planes(), tau, id));
    }
}

TEST(Envelope, PointsBelowEnvelopeLieInExactlyOnePrism) {
    auto arr = klevel::gen_random(config(10, 25, 21));
    for (std::vector<int> sample : {std::vector<int>{0, 2, 5}, std::vector<int>{1, 3, 6, 8}}) {
        auto diagram = klevel::lower_envelope_diagram(arr.planes(), sample);
        for (const auto& tau : diagram.trapezoids) {
            // A strictly interior probe point of each prism.
            Rational x = tau.x_lo && tau.x_hi ? (*tau.x_lo + *tau.x_hi) / Rational(2)
                         : tau.x_lo           ? *tau.x_lo + Rational(1)
                         : tau.x_hi           ? *tau.x_hi - Rational(1)
                                              : Rational(0);
            Rational y;
            if (tau.top && tau.bottom)
                y = (tau.top->second.at(x) + tau.bottom->second.at(x)) / Rational(2);
            else if (tau.top)
                y = tau.top->second.at(x) - Rational(1);
            else if (tau.bottom)
                y = tau.bottom->second.at(x) + Rational(1);
            else
                y = Rational(0);
            Rational z =
                klevel::plane_eval(arr.plane(tau.face), x, y) - Rational(1);
            Point3 probe{x, y, z};
            int containing = 0;
            for (const auto& other : diagram.trapezoids)
                if (prism_contains(arr.planes(), other, probe)) ++containing;
            EXPECT_EQ(containing, 1);
        }
    }
}

TEST(Envelope, StatisticReproducibleBitExactly) {
    auto arr = klevel::gen_random(config(14, 40, 31415));
    auto a = klevel::clarkson_shor_sample(arr, 2, 5, 999);
    auto b = klevel::clarkson_shor_sample(arr, 2, 5, 999);
    EXPECT_EQ(a.statistic, b.statistic);
    ASSERT_EQ(a.per_trial.size(), b.per_trial.size());
    for (std::size_t t = 0; t < a.per_trial.size(); ++t) {
        EXPECT_EQ(a.per_trial[t].sample, b.per_trial[t].sample);
        EXPECT_EQ(a.per_trial[t].conflict_sizes, b.per_trial[t].conflict_sizes);
        EXPECT_EQ(a.per_trial[t].statistic, b.per_trial[t].statistic);
    }
}

// Frozen run: n=14, k=2, 20 trials under fixed seeds. The mean statistic is
// recorded here and must reproduce exactly.
TEST(Envelope, RecordedMeanStatisticReproduces) {
    auto arr = klevel::gen_random(config(14, 60, 1234));
    auto res = klevel::clarkson_shor_sample(arr, 2, 20, 42);
    EXPECT_EQ(res.r, 3);
    EXPECT_EQ(res.statistic, 1824.8058225561144);
}

TEST(Experiment, MiddleLevelRowsStayWithinCubeBound) {
    for (int n : {6, 7, 8, 9}) {
        auto res = klevel::experiment_batch({n}, {n / 2}, 1, 271);
        for (const auto& row : res.rows) {
            long long hi = 48LL * n * n * n * n * n * n * n * n + 64LL * n * n * n * n * n * n;
            EXPECT_LE(row.ck * row.ck * row.ck, hi);
            EXPECT_TRUE(row.bound_ok);
        }
    }
}

TEST(Envelope, RicherSamplesKeepStructuralInvariants) {
    auto arr = klevel::gen_random(config(20, 120, 55));
    // r = 5 samples carry fully bounded trapezoids with four corners.
    auto res = klevel::clarkson_shor_sample(arr, 2, 10, 9);
    EXPECT_EQ(res.r, 5);
    bool saw_bounded = false;
    for (const auto& t : res.per_trial) {
        EXPECT_LE(t.envelope_vertices, 2 * res.r);
        auto diagram = klevel::lower_envelope_diagram(arr.planes(), t.sample);
        for (const auto& tau : diagram.trapezoids)
            if (tau.x_lo && tau.x_hi && tau.top && tau.bottom) saw_bounded = true;
    }
    EXPECT_TRUE(saw_bounded);

    // The full-sample envelope is conflict-free and within the vertex bound.
    std::vector<int> all;
    for (int i = 0; i < arr.size(); ++i) all.push_back(i);
    auto diagram = klevel::lower_envelope_diagram(arr.planes(), all);
    EXPECT_LE(diagram.vertex_count, 2 * arr.size());
    for (const auto& tau : diagram.trapezoids)
        for (int d = 0; d < arr.size(); ++d)
            EXPECT_FALSE(klevel::prism_conflicts(arr.planes(), tau, d));
}

TEST(Envelope, KRangeEnforced) {
    auto arr = klevel::gen_random(config(10, 20, 6));
    EXPECT_THROW(klevel::clarkson_shor_sample(arr, 0, 1, 1), klevel::Error);
    EXPECT_THROW(klevel::clarkson_shor_sample(arr, 5, 1, 1), klevel::Error);
}

} // namespace
