// Command-line front end: instance generation, lemma verification suites,
// level/immersion reports, topological sweeps, batch experiments, and the
// random-sampling experiment. Exit code 0 iff every requested check passes.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "klevel/curtain.hpp"
#include "klevel/envelope.hpp"
#include "klevel/experiment.hpp"
#include "klevel/generator.hpp"
#include "klevel/json_io.hpp"
#include "klevel/sweep.hpp"
#include "klevel/verify.hpp"

namespace {

int worker_count() {
    if (const char* env = std::getenv("KLEVEL_WORKERS")) {
        int w = std::atoi(env);
        if (w >= 1) return w;
    }
    return 1;
}

klevel::Arrangement load_arrangement(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw klevel::Error("cannot open " + path);
    auto planes = klevel::read_planes(in);
    auto result = klevel::validate(std::move(planes));
    if (!result.ok()) {
        std::cerr << klevel::validation_report_to_json(result.report).dump(2) << "\n";
        throw klevel::Error("arrangement in " + path + " failed validation");
    }
    return *result.arrangement;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out.good()) throw klevel::Error("cannot write " + out_path);
    out << text << "\n";
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) values.push_back(std::stoi(item));
    return values;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact k-level and corridor analysis for plane arrangements"};
    app.require_subcommand(1);
    bool all_ok = true;

    // gen
    auto* gen = app.add_subcommand("gen", "generate a random valid arrangement");
    int gen_n = 8;
    long gen_bound = 50;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    gen->add_option("--n", gen_n, "number of planes")->required();
    gen->add_option("--bound", gen_bound, "coefficient magnitude bound");
    gen->add_option("--seed", gen_seed, "rng seed");
    gen->add_option("--out", gen_out, "output file (stdout if omitted)");
    gen->callback([&] {
        klevel::GenConfig cfg;
        cfg.n = gen_n;
        cfg.coord_bound = gen_bound;
        cfg.seed = gen_seed;
        auto arr = klevel::gen_random(cfg);
        emit(klevel::planes_to_json(arr.planes()).dump(2), gen_out);
    });

    // verify
    auto* verify = app.add_subcommand("verify", "run the full verification suite");
    std::string verify_in, verify_check;
    verify->add_option("--in", verify_in, "arrangement JSON file")->required();
    verify->add_option("--check", verify_check, "restrict to checks with this name");
    verify->callback([&] {
        auto arr = load_arrangement(verify_in);
        auto report = klevel::verify_all(arr, worker_count());
        if (!verify_check.empty()) {
            klevel::VerificationReport filtered;
            for (const auto& row : report.rows)
                if (row.check == verify_check) filtered.rows.push_back(row);
            if (filtered.rows.empty())
                throw klevel::Error("no check named \"" + verify_check + "\"");
            report = filtered;
        }
        std::cout << klevel::verification_report_to_json(report).dump(2) << "\n";
        all_ok = report.all_pass();
    });

    // levels
    auto* levels = app.add_subcommand("levels", "per-level vertex counts");
    std::string levels_in;
    levels->add_option("--in", levels_in, "arrangement JSON file")->required();
    levels->callback([&] {
        auto arr = load_arrangement(levels_in);
        auto profile = klevel::level_profile(arr);
        long long total = 0;
        for (long long v : profile) total += v;
        klevel::json out{{"n", arr.size()}, {"profile", profile}, {"total", total},
                         {"expected_total", klevel::choose3(arr.size())}};
        std::cout << out.dump(2) << "\n";
        all_ok = total == klevel::choose3(arr.size());
    });

    // immersions
    auto* immersions = app.add_subcommand("immersions", "count ordered immersed corridor pairs");
    std::string imm_in;
    int imm_k = 0;
    immersions->add_option("--in", imm_in, "arrangement JSON file")->required();
    immersions->add_option("--k", imm_k, "level")->required();
    immersions->callback([&] {
        auto arr = load_arrangement(imm_in);
        auto imm = klevel::count_immersions(arr, imm_k, worker_count());
        auto out = klevel::immersions_to_json(imm_k, imm, arr.size());
        std::cout << out.dump(2) << "\n";
        all_ok = out["ok"].get<bool>();
    });

    // sweep
    auto* sweep = app.add_subcommand("sweep", "topological sweep of a wiring diagram or curtain");
    std::string sweep_wiring, sweep_curtain, sweep_in;
    int sweep_k = 0;
    sweep->add_option("--wiring", sweep_wiring, "wiring diagram text file");
    sweep->add_option("--curtain", sweep_curtain, "pair i,j of plane indices");
    sweep->add_option("--in", sweep_in, "arrangement JSON file (curtain mode)");
    sweep->add_option("--k", sweep_k, "level annotation for curtain mode");
    sweep->callback([&] {
        if (sweep_wiring.empty() == sweep_curtain.empty())
            throw klevel::Error("sweep: give exactly one of --wiring or --curtain");
        if (!sweep_wiring.empty()) {
            std::ifstream in(sweep_wiring);
            if (!in.good()) throw klevel::Error("cannot open " + sweep_wiring);
            auto validated = klevel::parse_wiring(in);
            if (!validated.ok()) {
                klevel::json issues = klevel::json::array();
                for (const auto& issue : validated.issues)
                    issues.push_back({{"condition", klevel::wiring_violation_name(issue.kind)},
                                      {"witness", issue.witness}});
                std::cout << klevel::json{{"valid", false}, {"violations", issues}}.dump(2)
                          << "\n";
                all_ok = false;
                return;
            }
            auto trace = klevel::sweep_up(*validated.diagram,
                                          klevel::front_below_all(*validated.diagram));
            klevel::json out{{"valid", true},
                             {"n", validated.diagram->n},
                             {"trace", klevel::trace_to_json(trace)}};
            std::cout << out.dump(2) << "\n";
            return;
        }
        auto ids = parse_int_list(sweep_curtain);
        if (ids.size() != 2) throw klevel::Error("--curtain expects i,j");
        if (sweep_in.empty()) throw klevel::Error("curtain mode needs --in");
        auto arr = load_arrangement(sweep_in);
        if (ids[0] < 0 || ids[1] < 0 || ids[0] >= arr.size() || ids[1] >= arr.size() ||
            ids[0] == ids[1])
            throw klevel::Error("--curtain indices must be two distinct planes of the input");
        klevel::LevelTable table(arr);
        auto curtain = klevel::curtain_of(arr, table, ids[0], ids[1], sweep_k);
        int above = klevel::crossings_above(curtain.diagram, curtain.base_front);
        int below = static_cast<int>(curtain.diagram.events.size()) - above;
        // Sweep toward the thinner side, as the containment-count argument does.
        bool upward = above <= below;
        auto trace = upward ? klevel::sweep_up(curtain.diagram, curtain.base_front)
                            : klevel::sweep_down(curtain.diagram, curtain.base_front);
        klevel::json annotations = klevel::json::array();
        for (std::size_t w = 0; w < curtain.curves.size(); ++w)
            annotations.push_back({{"wire", w},
                                   {"plane", curtain.curves[w].plane},
                                   {"cross_t", curtain.curves[w].cross_t.str()},
                                   {"level_k", static_cast<bool>(curtain.level_annotation[w])}});
        klevel::json out{{"base_pair", {ids[0], ids[1]}},
                         {"k", sweep_k},
                         {"crossings_above", above},
                         {"crossings_below", below},
                         {"direction", upward ? "up" : "down"},
                         {"curves", annotations},
                         {"trace", klevel::trace_to_json(trace)}};
        std::cout << out.dump(2) << "\n";
    });

    // experiment
    auto* experiment = app.add_subcommand("experiment", "seeded batch over n and k grids");
    std::string exp_ns = "6,8", exp_ks = "1,2", exp_csv;
    int exp_trials = 1;
    std::uint64_t exp_seed = 0;
    experiment->add_option("--ns", exp_ns, "comma-separated n values");
    experiment->add_option("--ks", exp_ks, "comma-separated k values");
    experiment->add_option("--trials", exp_trials, "trials per n");
    experiment->add_option("--seed", exp_seed, "batch seed");
    experiment->add_option("--csv", exp_csv, "CSV output file (stdout if omitted)");
    experiment->callback([&] {
        auto result = klevel::experiment_batch(parse_int_list(exp_ns), parse_int_list(exp_ks),
                                               exp_trials, exp_seed, 50, worker_count());
        emit(klevel::experiment_csv(result), exp_csv);
        for (const auto& s : result.slopes)
            std::cerr << "n=" << s.n << " fitted log-log slope of mean |C^k| vs k: " << s.slope
                      << " (" << s.points << " points)\n";
        for (const auto& row : result.rows) all_ok = all_ok && row.bound_ok;
    });

    // sample
    auto* sample = app.add_subcommand("sample", "random-sample envelope experiment");
    std::string sample_in;
    int sample_k = 1, sample_trials = 1;
    std::uint64_t sample_seed = 0;
    sample->add_option("--in", sample_in, "arrangement JSON file")->required();
    sample->add_option("--k", sample_k, "level parameter")->required();
    sample->add_option("--trials", sample_trials, "number of trials");
    sample->add_option("--seed", sample_seed, "rng seed");
    sample->callback([&] {
        auto arr = load_arrangement(sample_in);
        auto result = klevel::clarkson_shor_sample(arr, sample_k, sample_trials, sample_seed);
        std::cout << klevel::sample_result_to_json(result).dump(2) << "\n";
        all_ok = result.envelope_complexity <= 2 * result.r;
    });

    try {
        CLI11_PARSE(app, argc, argv);
    } catch (const klevel::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return all_ok ? 0 : 1;
}
