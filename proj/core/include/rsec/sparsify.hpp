#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>

#include "rsec/cspace.hpp"
#include "rsec/random.hpp"
#include "rsec/roadmap.hpp"

namespace rsec {

/// Edge ordering for the contraction queue. Lower keys are popped first.
enum class Heuristic {
    deg_sum,          // degree(u) + degree(v), low first
    fifo,             // insertion order
    compressibility,  // |N(u) ∩ N(v)| / |N(u) ∪ N(v) \ {u, v}|, high first
    clearance,        // sampled edge clearance, high first
};

/// Where along the popped edge the merged vertex is placed.
enum class PointRule {
    random,    // uniform t in (0, 1); the default
    midpoint,  // t = 1/2
    endpoint,  // the first endpoint's configuration
};

[[nodiscard]] std::string_view to_string(Heuristic h) noexcept;
[[nodiscard]] std::optional<Heuristic> parse_heuristic(std::string_view name) noexcept;
[[nodiscard]] std::string_view to_string(PointRule r) noexcept;
[[nodiscard]] std::optional<PointRule> parse_point_rule(std::string_view name) noexcept;

struct SparsifyConfig {
    /// Normalized drift bound; the effective bound is drift * scenario diagonal.
    double drift = 0.16;
    Heuristic heuristic = Heuristic::deg_sum;
    /// Contraction-point samples tried per popped edge.
    std::size_t candidate_points = 1;
    /// Re-queue failed edges when a later contraction moves one of their neighbors.
    bool reinsertion = true;
    PointRule point_rule = PointRule::random;
    std::uint64_t seed = 0;
};

struct SparsifyReport {
    std::size_t contractions_attempted = 0;
    std::size_t contractions_succeeded = 0;
    std::size_t reject_collision = 0;
    std::size_t reject_drift = 0;
    std::size_t reject_local_planner = 0;
    std::size_t initial_vertices = 0;
    std::size_t initial_edges = 0;
    std::size_t final_vertices = 0;
    std::size_t final_edges = 0;
    /// Every pop, stale entries included.
    std::size_t queue_pops = 0;
    std::size_t reinsertions = 0;
};

struct ContractionEvent {
    VertexId u;
    VertexId v;
    VertexId merged;
    const Configuration& point;
};

using ContractionTrace = std::function<void(const ContractionEvent&)>;

struct SparsifyResult {
    Roadmap roadmap;
    SparsifyReport report;
};

/// Queue key of edge (u, v) under `h`. `insertion_index` is the key for fifo
/// and ignored otherwise.
[[nodiscard]] double heuristic_key(const Roadmap& g, const Scenario& s, Heuristic h, VertexId u, VertexId v,
                                   std::uint64_t insertion_index = 0);

enum class PointFailure { none, collision, drift };

struct PointSample {
    std::optional<Configuration> point;
    /// Reason the last candidate was rejected; `none` on success.
    PointFailure failure = PointFailure::none;
};

/// Samples up to `candidates` points on edge (u, v) and returns the first one
/// that is free and within `max_drift` of config(u), config(v) and every
/// ancestor of u and v.
[[nodiscard]] PointSample get_contraction_point(const Roadmap& g, const Scenario& s, VertexId u, VertexId v,
                                                double max_drift, Rng& rng, std::size_t candidates = 1,
                                                PointRule rule = PointRule::random);

/// True iff every vertex in N(u) ∪ N(v) \ {u, v} reaches `p` with the local planner.
[[nodiscard]] bool is_contractible(const Roadmap& g, const Scenario& s, VertexId u, VertexId v,
                                   std::span<const double> p);

/// Roadmap sparsification by edge contraction. Pops edges in heuristic order,
/// contracts each one whose contraction point respects the drift bound and
/// whose new edges all pass the local planner, and stops when the queue is
/// empty. The output keeps every vertex within drift * diagonal of all its
/// ancestors, has only locally-plannable edges, and has the input's component
/// count.
[[nodiscard]] SparsifyResult sparsify(Roadmap g, const Scenario& s, const SparsifyConfig& cfg,
                                      const ContractionTrace& trace = {});

}  // namespace rsec
