// rsec: build, sparsify, compare and evaluate motion-planning roadmaps.
//
// Exit codes: 0 success, 2 usage / input errors (bad flags, unreadable or
// malformed files, scenario/roadmap mismatch), 1 any other failure.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rsec/cspace.hpp"
#include "rsec/errors.hpp"
#include "rsec/eval.hpp"
#include "rsec/experiment.hpp"
#include "rsec/io.hpp"
#include "rsec/prm.hpp"
#include "rsec/roadmap.hpp"
#include "rsec/spanner.hpp"
#include "rsec/sparsify.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

int verbosity = 0;

void log(int level, const std::string& message) {
    if (verbosity >= level) std::cerr << message << '\n';
}

rsec::Scenario read_scenario(const fs::path& path) {
    if (!fs::exists(path)) throw rsec::UsageError("scenario file not found: " + path.string());
    try {
        return rsec::load_scenario(path);
    } catch (const rsec::ParseError& e) {
        throw rsec::UsageError(path.string() + ": " + e.what());
    }
}

rsec::Roadmap read_roadmap(const fs::path& path) {
    if (!fs::exists(path)) throw rsec::UsageError("roadmap file not found: " + path.string());
    try {
        return rsec::load_roadmap(path);
    } catch (const rsec::ParseError& e) {
        throw rsec::UsageError(path.string() + ": " + e.what());
    }
}

// Roadmap must live in the scenario: same dimension, free vertices, plannable edges.
void check_against(const rsec::Roadmap& g, const rsec::Scenario& s, const fs::path& path) {
    if (g.dim() != s.dim()) {
        throw rsec::UsageError(path.string() + ": roadmap dim " + std::to_string(g.dim()) +
                               " does not match scenario dim " + std::to_string(s.dim()));
    }
    for (auto v : g.vertex_ids()) {
        if (!s.is_free(g.config(v))) throw rsec::UsageError(path.string() + ": vertex in collision with scenario");
    }
    for (const auto& e : g.edges()) {
        if (!s.local_planner(g.config(e.u), g.config(e.v))) {
            throw rsec::UsageError(path.string() + ": edge fails the scenario's local planner");
        }
    }
}

struct BuildArgs {
    fs::path scenario;
    std::size_t n = 1000;
    std::size_t k = 10;
    std::string connection = "fixed_k";
    std::uint64_t seed = 0;
    fs::path out;
};

int cmd_build(const BuildArgs& a) {
    const auto s = read_scenario(a.scenario);
    rsec::BuildConfig cfg;
    cfg.n = a.n;
    cfg.k = a.k;
    cfg.seed = a.seed;
    if (a.connection == "prm_star") {
        cfg.connection = rsec::ConnectionMode::prm_star;
    } else if (a.connection != "fixed_k") {
        throw rsec::UsageError("unknown connection mode '" + a.connection + "'");
    }
    (void)rsec::connection_count(cfg, s.dim());
    const auto g = rsec::build_prm(s, cfg);
    rsec::save_roadmap(g, a.out);
    log(1, "built " + std::to_string(g.vertex_count()) + " vertices, " + std::to_string(g.edge_count()) + " edges");
    return 0;
}

struct RsecArgs {
    fs::path scenario;
    fs::path in;
    double drift = 0.16;
    std::string heuristic = "deg_sum";
    std::string point_rule = "random";
    std::size_t candidate_points = 1;
    std::string reinsertion = "on";
    std::uint64_t seed = 0;
    fs::path out;
    fs::path report;
};

int cmd_rsec(const RsecArgs& a) {
    rsec::SparsifyConfig cfg;
    const auto h = rsec::parse_heuristic(a.heuristic);
    if (!h) throw rsec::UsageError("unknown heuristic '" + a.heuristic + "'");
    const auto rule = rsec::parse_point_rule(a.point_rule);
    if (!rule) throw rsec::UsageError("unknown contraction point rule '" + a.point_rule + "'");
    if (a.reinsertion != "on" && a.reinsertion != "off") throw rsec::UsageError("--reinsertion is on or off");
    cfg.drift = a.drift;
    cfg.heuristic = *h;
    cfg.point_rule = *rule;
    cfg.candidate_points = a.candidate_points;
    cfg.reinsertion = a.reinsertion == "on";
    cfg.seed = a.seed;

    const auto s = read_scenario(a.scenario);
    const auto g = read_roadmap(a.in);
    check_against(g, s, a.in);

    rsec::ContractionTrace trace;
    if (verbosity >= 2) {
        trace = [](const rsec::ContractionEvent& e) {
            std::cerr << "contract " << e.u << ' ' << e.v << " -> " << e.merged << '\n';
        };
    }
    const auto start = std::chrono::steady_clock::now();
    auto result = rsec::sparsify(g, s, cfg, trace);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    rsec::save_roadmap(result.roadmap, a.out);
    const double compression = result.roadmap.empty() ? 0.0 : rsec::compression_factor(g, result.roadmap);
    if (!a.report.empty()) {
        const auto row = rsec::format_report(a.scenario.stem().string(), cfg, result.report, compression, ms);
        rsec::write_file_atomic(a.report, [&row](std::ostream& out) {
            out << rsec::sparsify_report_header() << '\n' << row << '\n';
        });
    }
    log(1, "rsec: " + std::to_string(result.report.contractions_succeeded) + " contractions, compression " +
               rsec::format_number(compression));
    return 0;
}

struct SpannerArgs {
    fs::path in;
    std::optional<double> stretch;
    std::optional<std::size_t> k;
    fs::path out;
};

int cmd_spanner(const SpannerArgs& a) {
    if (a.stretch.has_value() == a.k.has_value()) throw rsec::UsageError("give exactly one of --stretch or --k");
    const double t = a.stretch ? *a.stretch : rsec::stretch_from_k(*a.k);
    const auto g = read_roadmap(a.in);
    const auto sparse = rsec::greedy_spanner(g, rsec::SpannerConfig{t});
    rsec::save_roadmap(sparse, a.out);
    log(1, "spanner kept " + std::to_string(sparse.edge_count()) + " of " + std::to_string(g.edge_count()) + " edges");
    return 0;
}

struct EvalArgs {
    fs::path scenario;
    fs::path orig;
    fs::path sparse;
    std::size_t queries = 150;
    std::uint64_t seed = 0;
    std::size_t k_conn = rsec::kDefaultConnectK;
    std::size_t connect_samples = rsec::kDefaultConnectSamples;
    std::string algorithm = "eval";
    std::string param = "0";
    std::string heuristic = "none";
    fs::path out;
};

int cmd_eval(const EvalArgs& a) {
    const auto s = read_scenario(a.scenario);
    const auto original = read_roadmap(a.orig);
    const auto sparse = read_roadmap(a.sparse);
    check_against(original, s, a.orig);
    check_against(sparse, s, a.sparse);

    const auto seeds = rsec::run_seeds(a.seed);
    const auto queries = rsec::make_queries(s, a.queries, seeds.queries);
    const rsec::EvalOptions options{a.k_conn, a.connect_samples, seeds.connect};

    rsec::ResultRow row;
    row.scenario = a.scenario.stem().string();
    row.seed = a.seed;
    row.algorithm = a.algorithm;
    row.param = a.param;
    row.heuristic = a.heuristic;
    row.v_orig = original.vertex_count();
    row.e_orig = original.edge_count();
    row.v_sparse = sparse.vertex_count();
    row.e_sparse = sparse.edge_count();
    const auto start = std::chrono::steady_clock::now();
    row.metrics = rsec::evaluate(original, sparse, s, queries, options);
    row.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    const auto line = rsec::format_row(row);
    rsec::write_file_atomic(a.out, [&line](std::ostream& out) { out << rsec::result_header() << '\n' << line << '\n'; });
    log(1, line);
    return 0;
}

struct CompareArgs {
    fs::path spec;
    fs::path out;
};

unsigned threads_from_env() {
    const char* raw = std::getenv("RSEC_THREADS");
    if (raw == nullptr || *raw == '\0') return 0;
    try {
        return static_cast<unsigned>(std::stoul(raw));
    } catch (const std::exception&) {
        throw rsec::UsageError(std::string("RSEC_THREADS must be a non-negative integer, got '") + raw + "'");
    }
}

int cmd_compare(const CompareArgs& a) {
    if (!fs::exists(a.spec)) throw rsec::UsageError("experiment spec not found: " + a.spec.string());
    rsec::ExperimentSpec spec;
    try {
        spec = rsec::load_experiment(a.spec);
    } catch (const rsec::ParseError& e) {
        throw rsec::UsageError(a.spec.string() + ": " + e.what());
    }
    if (!a.out.empty()) spec.output = a.out;
    if (spec.output.empty()) throw rsec::UsageError("no output path: set 'output' in the spec or pass --out");
    const auto s = read_scenario(spec.scenario);

    rsec::ProgressFn progress;
    if (verbosity >= 1) progress = [](const std::string& m) { std::cerr << m << '\n'; };
    const auto rows = rsec::run_experiment(spec, s, threads_from_env(), progress);
    rsec::write_file_atomic(spec.output, [&rows](std::ostream& out) {
        out << rsec::result_header() << '\n';
        for (const auto& row : rows) out << rsec::format_row(row) << '\n';
    });
    log(1, "wrote " + std::to_string(rows.size()) + " rows to " + spec.output.string());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Roadmap sparsification by edge contraction"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("-v,--verbose", verbosity, "Increase verbosity (-vv traces contractions)");

    BuildArgs build;
    auto* build_cmd = app.add_subcommand("build", "Build a k-nearest PRM roadmap");
    build_cmd->add_option("--scenario", build.scenario, "Scenario file")->required();
    build_cmd->add_option("--n", build.n, "Number of vertices")->required();
    build_cmd->add_option("--k", build.k, "Neighbors per vertex (fixed_k)");
    build_cmd->add_option("--connection", build.connection, "fixed_k or prm_star");
    build_cmd->add_option("--seed", build.seed, "Random seed");
    build_cmd->add_option("--out", build.out, "Output roadmap file")->required();

    RsecArgs rsec_args;
    auto* rsec_cmd = app.add_subcommand("rsec", "Sparsify a roadmap by edge contraction");
    rsec_cmd->add_option("--scenario", rsec_args.scenario, "Scenario file")->required();
    rsec_cmd->add_option("--in", rsec_args.in, "Input roadmap")->required();
    rsec_cmd->add_option("--drift", rsec_args.drift, "Normalized drift bound");
    rsec_cmd->add_option("--heuristic", rsec_args.heuristic, "deg_sum | fifo | compressibility | clearance");
    rsec_cmd->add_option("--point-rule", rsec_args.point_rule, "random | midpoint | endpoint");
    rsec_cmd->add_option("--candidate-points", rsec_args.candidate_points, "Contraction-point samples per edge");
    rsec_cmd->add_option("--reinsertion", rsec_args.reinsertion, "on | off");
    rsec_cmd->add_option("--seed", rsec_args.seed, "Random seed");
    rsec_cmd->add_option("--out", rsec_args.out, "Output roadmap")->required();
    rsec_cmd->add_option("--report", rsec_args.report, "Sparsification report CSV");

    SpannerArgs spanner;
    auto* spanner_cmd = app.add_subcommand("spanner", "Greedy t-spanner baseline");
    spanner_cmd->add_option("--in", spanner.in, "Input roadmap")->required();
    spanner_cmd->add_option("--stretch", spanner.stretch, "Stretch t >= 1");
    spanner_cmd->add_option("--k", spanner.k, "Use stretch 2k - 1");
    spanner_cmd->add_option("--out", spanner.out, "Output roadmap")->required();

    EvalArgs eval;
    auto* eval_cmd = app.add_subcommand("eval", "Compare a sparse roadmap against its original");
    eval_cmd->add_option("--scenario", eval.scenario, "Scenario file")->required();
    eval_cmd->add_option("--orig", eval.orig, "Original roadmap")->required();
    eval_cmd->add_option("--sparse", eval.sparse, "Sparse roadmap")->required();
    eval_cmd->add_option("--queries", eval.queries, "Number of query pairs");
    eval_cmd->add_option("--seed", eval.seed, "Random seed");
    eval_cmd->add_option("--k-conn", eval.k_conn, "Candidates tried when attaching a query");
    eval_cmd->add_option("--connect-samples", eval.connect_samples, "Samples for connectivity probability");
    eval_cmd->add_option("--algorithm", eval.algorithm, "Label for the algorithm column");
    eval_cmd->add_option("--param", eval.param, "Label for the param column");
    eval_cmd->add_option("--heuristic", eval.heuristic, "Label for the heuristic column");
    eval_cmd->add_option("--out", eval.out, "Output CSV")->required();

    CompareArgs compare;
    auto* compare_cmd = app.add_subcommand("compare", "Run an experiment sweep");
    compare_cmd->add_option("--spec", compare.spec, "Experiment spec file")->required();
    compare_cmd->add_option("--out", compare.out, "Override the spec's output CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        (void)app.exit(e);
        return kExitUsage;
    }

    try {
        if (*build_cmd) return cmd_build(build);
        if (*rsec_cmd) return cmd_rsec(rsec_args);
        if (*spanner_cmd) return cmd_spanner(spanner);
        if (*eval_cmd) return cmd_eval(eval);
        if (*compare_cmd) return cmd_compare(compare);
    } catch (const rsec::UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const rsec::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}
