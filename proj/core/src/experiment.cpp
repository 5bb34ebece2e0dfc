#include "rsec/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <istream>
#include <mutex>
#include <sstream>
#include <thread>

#include "rsec/errors.hpp"
#include "rsec/spanner.hpp"

namespace rsec {

std::string_view to_string(Algorithm a) noexcept {
    switch (a) {
        case Algorithm::rsec: return "rsec";
        case Algorithm::spanner: return "spanner";
        case Algorithm::none: return "none";
    }
    return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept {
    for (auto a : {Algorithm::rsec, Algorithm::spanner, Algorithm::none}) {
        if (name == to_string(a)) return a;
    }
    return std::nullopt;
}

std::string format_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

// ---------------------------------------------------------------------------
// Spec file

namespace {

std::vector<std::string> tokens(std::istringstream& line) {
    std::vector<std::string> out;
    std::string t;
    while (line >> t) out.push_back(t);
    return out;
}

double to_double(const std::string& token, std::size_t line) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(token, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != token.size() || token.empty()) throw ParseError(line, "bad number '" + token + "'");
    return v;
}

std::size_t to_count(const std::string& token, std::size_t line) {
    const double v = to_double(token, line);
    if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
        throw ParseError(line, "expected a non-negative integer, got '" + token + "'");
    }
    return static_cast<std::size_t>(v);
}

void expect_arity(const std::vector<std::string>& args, std::size_t n, const std::string& key, std::size_t line) {
    if (args.size() != n) throw ParseError(line, "'" + key + "' expects " + std::to_string(n) + " value(s)");
}

}  // namespace

ExperimentSpec parse_experiment(std::istream& in, const std::filesystem::path& base_dir) {
    ExperimentSpec spec;
    bool have_scenario = false;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream line(raw);
        std::string key;
        if (!(line >> key)) continue;
        const auto args = tokens(line);

        if (key == "scenario") {
            expect_arity(args, 1, key, line_no);
            spec.scenario = base_dir / args[0];
            have_scenario = true;
        } else if (key == "n") {
            expect_arity(args, 1, key, line_no);
            spec.build.n = to_count(args[0], line_no);
        } else if (key == "k") {
            expect_arity(args, 1, key, line_no);
            spec.build.k = to_count(args[0], line_no);
        } else if (key == "connection") {
            expect_arity(args, 1, key, line_no);
            if (args[0] == "fixed_k") {
                spec.build.connection = ConnectionMode::fixed_k;
            } else if (args[0] == "prm_star") {
                spec.build.connection = ConnectionMode::prm_star;
            } else {
                throw ParseError(line_no, "unknown connection mode '" + args[0] + "'");
            }
        } else if (key == "algorithms" || key == "algorithm") {
            if (args.empty()) throw ParseError(line_no, "'" + key + "' needs at least one value");
            spec.algorithms.clear();
            for (const auto& a : args) {
                const auto alg = parse_algorithm(a);
                if (!alg) throw ParseError(line_no, "unknown algorithm '" + a + "'");
                spec.algorithms.push_back(*alg);
            }
        } else if (key == "drift") {
            spec.drift_ladder.clear();
            for (const auto& a : args) spec.drift_ladder.push_back(to_double(a, line_no));
        } else if (key == "stretch") {
            spec.stretch_ladder.clear();
            for (const auto& a : args) spec.stretch_ladder.push_back(to_double(a, line_no));
        } else if (key == "heuristics" || key == "heuristic") {
            if (args.empty()) throw ParseError(line_no, "'" + key + "' needs at least one value");
            spec.heuristics.clear();
            for (const auto& a : args) {
                const auto h = parse_heuristic(a);
                if (!h) throw ParseError(line_no, "unknown heuristic '" + a + "'");
                spec.heuristics.push_back(*h);
            }
        } else if (key == "candidate_points") {
            expect_arity(args, 1, key, line_no);
            spec.candidate_points = to_count(args[0], line_no);
        } else if (key == "reinsertion") {
            expect_arity(args, 1, key, line_no);
            if (args[0] != "on" && args[0] != "off") throw ParseError(line_no, "reinsertion is 'on' or 'off'");
            spec.reinsertion = args[0] == "on";
        } else if (key == "runs") {
            expect_arity(args, 1, key, line_no);
            spec.runs = to_count(args[0], line_no);
        } else if (key == "queries") {
            expect_arity(args, 1, key, line_no);
            spec.queries = to_count(args[0], line_no);
        } else if (key == "k_conn") {
            expect_arity(args, 1, key, line_no);
            spec.k_conn = to_count(args[0], line_no);
        } else if (key == "connect_samples") {
            expect_arity(args, 1, key, line_no);
            spec.connect_samples = to_count(args[0], line_no);
        } else if (key == "output") {
            expect_arity(args, 1, key, line_no);
            spec.output = base_dir / args[0];
        } else {
            throw ParseError(line_no, "unknown key '" + key + "'");
        }
    }

    if (!have_scenario) throw ParseError(0, "missing 'scenario'");
    if (spec.runs < 1) throw ParseError(0, "runs must be >= 1");
    if (spec.candidate_points < 1) throw ParseError(0, "candidate_points must be >= 1");
    for (auto a : spec.algorithms) {
        if (a == Algorithm::rsec && spec.drift_ladder.empty()) throw ParseError(0, "rsec needs a nonempty 'drift' ladder");
        if (a == Algorithm::spanner && spec.stretch_ladder.empty()) {
            throw ParseError(0, "spanner needs a nonempty 'stretch' ladder");
        }
    }
    for (double d : spec.drift_ladder) {
        if (!(d > 0.0)) throw ParseError(0, "drift values must be > 0");
    }
    for (double t : spec.stretch_ladder) {
        if (!(t >= 1.0)) throw ParseError(0, "stretch values must be >= 1");
    }
    return spec;
}

ExperimentSpec load_experiment(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open experiment spec " + path.string());
    return parse_experiment(in, path.parent_path());
}

// ---------------------------------------------------------------------------
// Rows

std::string result_header() {
    return "scenario,seed,algorithm,param,heuristic,V_orig,E_orig,V_sparse,E_sparse,compression_factor,"
           "path_degradation,connect_prob_orig,connect_prob_sparse,queries_both,queries_orig_only,"
           "queries_sparse_only,runtime_ms";
}

std::string format_row(const ResultRow& r) {
    std::ostringstream out;
    out << r.scenario << ',' << r.seed << ',' << r.algorithm << ',' << r.param << ',' << r.heuristic << ','
        << r.v_orig << ',' << r.e_orig << ',' << r.v_sparse << ',' << r.e_sparse << ','
        << format_number(r.metrics.compression_factor) << ',' << format_number(r.metrics.path_degradation) << ','
        << format_number(r.metrics.connect_prob_original) << ',' << format_number(r.metrics.connect_prob_sparse)
        << ',' << r.metrics.queries_answered_both << ',' << r.metrics.queries_original_only << ','
        << r.metrics.queries_sparse_only << ',' << format_number(r.runtime_ms);
    return out.str();
}

std::string sparsify_report_header() {
    return "scenario,seed,drift,heuristic,reinsertion,candidate_points,V_initial,E_initial,V_final,E_final,"
           "contractions_attempted,contractions_succeeded,reject_collision,reject_drift,reject_local_planner,"
           "queue_pops,reinsertions,compression_factor,runtime_ms";
}

std::string format_report(std::string_view scenario, const SparsifyConfig& cfg, const SparsifyReport& r,
                          double compression, double runtime_ms) {
    std::ostringstream out;
    out << scenario << ',' << cfg.seed << ',' << format_number(cfg.drift) << ',' << to_string(cfg.heuristic) << ','
        << (cfg.reinsertion ? "on" : "off") << ',' << cfg.candidate_points << ',' << r.initial_vertices << ','
        << r.initial_edges << ',' << r.final_vertices << ',' << r.final_edges << ',' << r.contractions_attempted
        << ',' << r.contractions_succeeded << ',' << r.reject_collision << ',' << r.reject_drift << ','
        << r.reject_local_planner << ',' << r.queue_pops << ',' << r.reinsertions << ','
        << format_number(compression) << ',' << format_number(runtime_ms);
    return out.str();
}

// ---------------------------------------------------------------------------
// Sweep

RunSeeds run_seeds(std::uint64_t run) {
    return RunSeeds{run, derive_seed(run, 1), derive_seed(run, 2), derive_seed(run, 3)};
}

std::size_t cell_count(const ExperimentSpec& spec) {
    std::size_t per_run = 0;
    for (auto a : spec.algorithms) {
        switch (a) {
            case Algorithm::rsec: per_run += spec.drift_ladder.size() * spec.heuristics.size(); break;
            case Algorithm::spanner: per_run += spec.stretch_ladder.size(); break;
            case Algorithm::none: per_run += 1; break;
        }
    }
    return per_run * spec.runs;
}

namespace {

struct Cell {
    Algorithm algorithm;
    double param;
    Heuristic heuristic;
};

std::vector<Cell> cells_of(const ExperimentSpec& spec) {
    std::vector<Cell> out;
    for (auto a : spec.algorithms) {
        switch (a) {
            case Algorithm::rsec:
                for (double d : spec.drift_ladder) {
                    for (auto h : spec.heuristics) out.push_back(Cell{a, d, h});
                }
                break;
            case Algorithm::spanner:
                for (double t : spec.stretch_ladder) out.push_back(Cell{a, t, Heuristic::deg_sum});
                break;
            case Algorithm::none: out.push_back(Cell{a, 0.0, Heuristic::deg_sum}); break;
        }
    }
    return out;
}

template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    const unsigned n = std::min<unsigned>(threads, static_cast<unsigned>(count));
    for (unsigned t = 0; t < n; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec, const Scenario& s, unsigned threads,
                                      const ProgressFn& progress) {
    const std::string scenario_name = spec.scenario.stem().string();
    const auto cells = cells_of(spec);
    std::vector<ResultRow> rows;
    rows.reserve(cells.size() * spec.runs);

    for (std::uint64_t run = 0; run < spec.runs; ++run) {
        const RunSeeds seeds = run_seeds(run);
        BuildConfig build = spec.build;
        build.seed = seeds.build;
        const Roadmap original = build_prm(s, build);
        const QuerySet queries = make_queries(s, spec.queries, seeds.queries);
        const EvalOptions options{spec.k_conn, spec.connect_samples, seeds.connect};
        const double p_original =
            connectivity_probability(original, s, options.connect_samples, options.k_conn, options.connect_seed);
        if (progress) {
            progress("run " + std::to_string(run) + ": roadmap " + std::to_string(original.vertex_count()) + " V / " +
                     std::to_string(original.edge_count()) + " E");
        }

        std::vector<ResultRow> run_rows(cells.size());
        parallel_for(cells.size(), threads, [&](std::size_t i) {
            const Cell& cell = cells[i];
            const auto start = std::chrono::steady_clock::now();
            ResultRow row;
            row.scenario = scenario_name;
            row.seed = run;
            row.algorithm = std::string(to_string(cell.algorithm));
            row.heuristic = "none";
            Roadmap sparse(original.dim());
            switch (cell.algorithm) {
                case Algorithm::rsec: {
                    SparsifyConfig cfg;
                    cfg.drift = cell.param;
                    cfg.heuristic = cell.heuristic;
                    cfg.candidate_points = spec.candidate_points;
                    cfg.reinsertion = spec.reinsertion;
                    cfg.seed = seeds.sparsify;
                    sparse = sparsify(original, s, cfg).roadmap;
                    row.param = format_number(cell.param);
                    row.heuristic = std::string(to_string(cell.heuristic));
                    break;
                }
                case Algorithm::spanner:
                    sparse = greedy_spanner(original, SpannerConfig{cell.param});
                    row.param = format_number(cell.param);
                    break;
                case Algorithm::none:
                    sparse = original;
                    row.param = "0";
                    break;
            }
            row.runtime_ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            row.v_orig = original.vertex_count();
            row.e_orig = original.edge_count();
            row.v_sparse = sparse.vertex_count();
            row.e_sparse = sparse.edge_count();
            row.metrics = evaluate(original, sparse, s, queries, options, p_original);
            run_rows[i] = std::move(row);
        });
        for (auto& row : run_rows) {
            if (progress) progress(format_row(row));
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace rsec
