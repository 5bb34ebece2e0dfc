#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rsec/cspace.hpp"
#include "rsec/eval.hpp"
#include "rsec/prm.hpp"
#include "rsec/sparsify.hpp"

namespace rsec {

enum class Algorithm { rsec, spanner, none };

[[nodiscard]] std::string_view to_string(Algorithm a) noexcept;
[[nodiscard]] std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept;

/// One sweep: for each run seed build a roadmap, apply every
/// (algorithm, parameter, heuristic) cell to it and evaluate every cell on
/// the same query set.
struct ExperimentSpec {
    std::filesystem::path scenario;
    BuildConfig build;
    std::vector<Algorithm> algorithms{Algorithm::rsec};
    std::vector<double> drift_ladder;
    std::vector<double> stretch_ladder;
    std::vector<Heuristic> heuristics{Heuristic::deg_sum};
    std::size_t candidate_points = 1;
    bool reinsertion = true;
    std::size_t runs = 5;
    std::size_t queries = 150;
    std::size_t k_conn = kDefaultConnectK;
    std::size_t connect_samples = kDefaultConnectSamples;
    std::filesystem::path output;
};

/// Key-value lines, `#` comments. Relative paths resolve against `base_dir`.
[[nodiscard]] ExperimentSpec parse_experiment(std::istream& in, const std::filesystem::path& base_dir);
[[nodiscard]] ExperimentSpec load_experiment(const std::filesystem::path& path);

/// Number of CSV rows a spec produces.
[[nodiscard]] std::size_t cell_count(const ExperimentSpec& spec);

struct ResultRow {
    std::string scenario;
    std::uint64_t seed = 0;
    std::string algorithm;
    std::string param;
    std::string heuristic;
    std::size_t v_orig = 0;
    std::size_t e_orig = 0;
    std::size_t v_sparse = 0;
    std::size_t e_sparse = 0;
    MetricsReport metrics;
    double runtime_ms = 0.0;
};

[[nodiscard]] std::string result_header();
[[nodiscard]] std::string format_row(const ResultRow& row);

[[nodiscard]] std::string sparsify_report_header();
[[nodiscard]] std::string format_report(std::string_view scenario, const SparsifyConfig& cfg,
                                        const SparsifyReport& report, double compression, double runtime_ms);

/// Seeds derived from a run index; every run uses these and nothing else.
struct RunSeeds {
    std::uint64_t build;
    std::uint64_t queries;
    std::uint64_t connect;
    std::uint64_t sparsify;
};

[[nodiscard]] RunSeeds run_seeds(std::uint64_t run);

using ProgressFn = std::function<void(const std::string&)>;

/// Runs the full sweep. Rows come back in spec order regardless of `threads`
/// (0 or 1 = sequential).
[[nodiscard]] std::vector<ResultRow> run_experiment(const ExperimentSpec& spec, const Scenario& s,
                                                    unsigned threads = 0, const ProgressFn& progress = {});

/// Formats a number the way every CSV column does (%.10g).
[[nodiscard]] std::string format_number(double x);

}  // namespace rsec
