#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rsec/cspace.hpp"

namespace rsec {

/// Vertex identifiers are handed out by a monotone counter and never reused
/// within one roadmap, so they stay meaningful in contraction traces.
using VertexId = std::uint32_t;

struct Neighbor {
    VertexId id;
    double weight;
};

struct Edge {
    VertexId u;  // u < v
    VertexId v;
    double weight;
};

struct VertexRecord {
    Configuration config;
    /// Coordinates of every vertex (transitively) contracted into this one.
    /// Empty for sampled vertices; not persisted by save_roadmap.
    std::vector<Configuration> ancestors;
};

/// Undirected, simple, Euclidean-weighted graph over configurations.
///
/// Edge weights are always recomputed from the endpoint configurations, so
/// `weight(u, v) == distance(config(u), config(v))` holds after every mutation.
/// Adjacency lists are kept sorted by neighbor id, which makes every traversal
/// order deterministic.
class Roadmap {
public:
    explicit Roadmap(std::size_t dim);

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] std::size_t vertex_count() const noexcept { return vertex_count_; }
    [[nodiscard]] std::size_t edge_count() const noexcept { return edge_count_; }
    [[nodiscard]] bool empty() const noexcept { return vertex_count_ == 0; }

    /// One past the largest id ever issued.
    [[nodiscard]] VertexId id_limit() const noexcept { return static_cast<VertexId>(nodes_.size()); }

    VertexId add_vertex(Configuration config, std::vector<Configuration> ancestors = {});
    void remove_vertex(VertexId v);

    /// Returns false (and changes nothing) when the edge already exists.
    bool add_edge(VertexId u, VertexId v);
    void remove_edge(VertexId u, VertexId v);

    [[nodiscard]] bool has_vertex(VertexId v) const noexcept;
    [[nodiscard]] bool has_edge(VertexId u, VertexId v) const;
    [[nodiscard]] std::optional<double> weight(VertexId u, VertexId v) const;

    [[nodiscard]] const Configuration& config(VertexId v) const;
    [[nodiscard]] const std::vector<Configuration>& ancestors(VertexId v) const;
    [[nodiscard]] std::size_t degree(VertexId v) const;

    /// Sorted by neighbor id.
    [[nodiscard]] std::span<const Neighbor> adjacency(VertexId v) const;
    [[nodiscard]] std::vector<VertexId> neighbors(VertexId v) const;

    /// Live vertex ids in increasing order.
    [[nodiscard]] std::vector<VertexId> vertex_ids() const;
    /// Every edge once, ordered by (u, v) with u < v.
    [[nodiscard]] std::vector<Edge> edges() const;

    /// Replaces edge (u, v) with a new vertex at `p` joined to every vertex in
    /// neighbors(u) ∪ neighbors(v) \ {u, v}. Common neighbors collapse into a
    /// single edge. The new vertex's ancestor set is
    /// ancestors(u) ∪ ancestors(v) ∪ {config(u), config(v)}.
    /// No legality check happens here.
    VertexId contract_edge(VertexId u, VertexId v, Configuration p);

private:
    struct Node {
        VertexRecord record;
        std::vector<Neighbor> adjacency;
    };

    [[nodiscard]] const Node& node(VertexId v) const;
    [[nodiscard]] Node& node(VertexId v);
    void check_config(const Configuration& q) const;

    std::size_t dim_;
    std::vector<std::optional<Node>> nodes_;
    std::size_t vertex_count_ = 0;
    std::size_t edge_count_ = 0;
};

/// dim·|V| + 3·|E|: coordinates per vertex plus two indices and a weight per edge.
[[nodiscard]] double size_measure(const Roadmap& g);

struct Components {
    std::size_t count = 0;
    /// label[id] for live ids; entries for dead ids are unspecified.
    std::vector<std::size_t> label;
};

[[nodiscard]] Components connected_components(const Roadmap& g);

/// Writes the `roadmap 1` text format. Vertices are relabeled 0..|V|-1 in id order.
void save_roadmap(const Roadmap& g, std::ostream& out);
void save_roadmap(const Roadmap& g, const std::filesystem::path& path);

/// Parses the `roadmap 1` text format; throws ParseError with a line number.
/// Stored weights are validated against the recomputed distance within 1e-6
/// relative and then discarded in favor of the recomputed value.
[[nodiscard]] Roadmap load_roadmap(std::istream& in);
[[nodiscard]] Roadmap load_roadmap(const std::filesystem::path& path);

}  // namespace rsec
