#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rsec/cspace.hpp"
#include "rsec/random.hpp"
#include "rsec/roadmap.hpp"

namespace rsec::test {

inline Scenario empty_scenario(std::size_t dim = 2, double half = 10.0, double resolution = 0.05) {
    return Scenario(Bounds{Configuration(dim, -half), Configuration(dim, half)}, {}, resolution);
}

/// Roadmap with the given vertices and index-pair edges; ids equal indices.
inline Roadmap make_graph(const std::vector<Configuration>& pts,
                          const std::vector<std::pair<VertexId, VertexId>>& edges) {
    Roadmap g(pts.front().size());
    for (const auto& p : pts) g.add_vertex(p);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

/// Plain union-find, used as an independent component counter.
class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }

    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent_[a] = b;
        return true;
    }

private:
    std::vector<std::size_t> parent_;
};

inline std::size_t count_components_uf(const Roadmap& g) {
    const auto ids = g.vertex_ids();
    UnionFind uf(g.id_limit());
    std::size_t count = ids.size();
    for (const auto& e : g.edges()) {
        if (uf.unite(e.u, e.v)) --count;
    }
    return count;
}

/// Random geometric graph in an empty box: n distinct points, each pair joined
/// with probability p.
inline Roadmap random_graph(std::size_t n, double p, std::uint64_t seed, std::size_t dim = 2, double half = 10.0) {
    Rng rng(seed);
    Roadmap g(dim);
    for (std::size_t i = 0; i < n; ++i) {
        Configuration c(dim);
        for (auto& x : c) x = -half + 2.0 * half * uniform01(rng);
        g.add_vertex(std::move(c));
    }
    for (VertexId u = 0; u < n; ++u) {
        for (VertexId v = u + 1; v < n; ++v) {
            if (uniform01(rng) < p) g.add_edge(u, v);
        }
    }
    return g;
}

inline std::set<std::pair<VertexId, VertexId>> edge_pairs(const Roadmap& g) {
    std::set<std::pair<VertexId, VertexId>> out;
    for (const auto& e : g.edges()) out.emplace(e.u, e.v);
    return out;
}

}  // namespace rsec::test
