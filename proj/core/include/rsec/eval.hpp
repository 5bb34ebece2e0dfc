#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "rsec/cspace.hpp"
#include "rsec/roadmap.hpp"

namespace rsec {

inline constexpr std::size_t kDefaultConnectK = 10;
inline constexpr std::size_t kDefaultConnectSamples = 1000;

struct QueryPair {
    Configuration start;
    Configuration goal;
};

struct QuerySet {
    std::vector<QueryPair> pairs;
    std::uint64_t seed = 0;
};

/// `count` pairs of free configurations drawn from `seed`.
[[nodiscard]] QuerySet make_queries(const Scenario& s, std::size_t count, std::uint64_t seed);

struct Attachment {
    VertexId vertex;
    double length;
};

/// Nearest of the `k_conn` nearest roadmap vertices that the local planner
/// reaches from `q`; nullopt if none does.
[[nodiscard]] std::optional<Attachment> connect_query(const Roadmap& g, const Scenario& s,
                                                      std::span<const double> q,
                                                      std::size_t k_conn = kDefaultConnectK);

/// Exact Dijkstra distance; nullopt when dst is unreachable.
[[nodiscard]] std::optional<double> shortest_path(const Roadmap& g, VertexId src, VertexId dst);

struct QueryOutcome {
    std::optional<double> original;
    std::optional<double> sparse;
};

struct Degradation {
    /// mean(sparse lengths) / mean(original lengths) over queries answered by both.
    double ratio = 0.0;
    double avg_path_original = 0.0;
    double avg_path_sparse = 0.0;
    std::size_t both = 0;
    std::size_t original_only = 0;
    std::size_t sparse_only = 0;
    std::vector<QueryOutcome> per_query;
};

/// Full query length (start attachment + roadmap path + goal attachment), or
/// nullopt when the query cannot be answered in g.
[[nodiscard]] std::optional<double> query_length(const Roadmap& g, const Scenario& s, const QueryPair& query,
                                                 std::size_t k_conn = kDefaultConnectK);

/// Throws EvaluationError when no query is answerable in both roadmaps.
[[nodiscard]] Degradation path_degradation(const Roadmap& original, const Roadmap& sparse, const Scenario& s,
                                           const QuerySet& queries, std::size_t k_conn = kDefaultConnectK);

/// size_measure(original) / size_measure(sparse).
[[nodiscard]] double compression_factor(const Roadmap& original, const Roadmap& sparse);

/// Fraction of `m` random free configurations that connect_query can attach.
[[nodiscard]] double connectivity_probability(const Roadmap& g, const Scenario& s, std::size_t m,
                                              std::size_t k_conn, std::uint64_t seed);

struct MetricsReport {
    double avg_path_original = 0.0;
    double avg_path_sparse = 0.0;
    double path_degradation = 0.0;
    double compression_factor = 0.0;
    double vertex_retention = 0.0;
    double edge_retention = 0.0;
    double connect_prob_original = 0.0;
    double connect_prob_sparse = 0.0;
    std::size_t queries_answered_both = 0;
    std::size_t queries_original_only = 0;
    std::size_t queries_sparse_only = 0;
};

struct EvalOptions {
    std::size_t k_conn = kDefaultConnectK;
    std::size_t connect_samples = kDefaultConnectSamples;
    std::uint64_t connect_seed = 0;
};

[[nodiscard]] MetricsReport evaluate(const Roadmap& original, const Roadmap& sparse, const Scenario& s,
                                     const QuerySet& queries, const EvalOptions& options = {});

/// Same as evaluate() with the original's connectivity probability supplied
/// by the caller (it is shared by every cell of a sweep).
[[nodiscard]] MetricsReport evaluate(const Roadmap& original, const Roadmap& sparse, const Scenario& s,
                                     const QuerySet& queries, const EvalOptions& options,
                                     double connect_prob_original);

}  // namespace rsec
