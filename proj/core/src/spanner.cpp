#include "rsec/spanner.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

#include "rsec/errors.hpp"

namespace rsec {

double stretch_from_k(std::size_t k) {
    if (k < 1) throw UsageError("spanner k must be >= 1");
    return 2.0 * static_cast<double>(k) - 1.0;
}

namespace {

// Dijkstra from `src` that gives up once the frontier exceeds `limit`.
// `dist` is reset only on the vertices it touched.
class BoundedDijkstra {
public:
    explicit BoundedDijkstra(std::size_t id_limit)
        : dist_(id_limit, std::numeric_limits<double>::infinity()) {}

    bool within(const Roadmap& g, VertexId src, VertexId dst, double limit) {
        using Item = std::pair<double, VertexId>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        bool found = false;
        dist_[src] = 0.0;
        touched_.push_back(src);
        heap.emplace(0.0, src);
        while (!heap.empty()) {
            const auto [d, v] = heap.top();
            heap.pop();
            if (d > dist_[v]) continue;
            if (d > limit) break;
            if (v == dst) {
                found = true;
                break;
            }
            for (const auto& n : g.adjacency(v)) {
                const double nd = d + n.weight;
                if (nd < dist_[n.id] && nd <= limit) {
                    if (dist_[n.id] == std::numeric_limits<double>::infinity()) touched_.push_back(n.id);
                    dist_[n.id] = nd;
                    heap.emplace(nd, n.id);
                }
            }
        }
        for (VertexId t : touched_) dist_[t] = std::numeric_limits<double>::infinity();
        touched_.clear();
        return found;
    }

private:
    std::vector<double> dist_;
    std::vector<VertexId> touched_;
};

}  // namespace

Roadmap greedy_spanner(const Roadmap& g, const SpannerConfig& cfg) {
    if (!(cfg.stretch >= 1.0)) throw UsageError("spanner stretch must be >= 1");

    auto edges = g.edges();
    std::stable_sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        if (a.weight != b.weight) return a.weight < b.weight;
        return std::pair(a.u, a.v) < std::pair(b.u, b.v);
    });

    Roadmap spanner = g;
    for (const auto& e : g.edges()) spanner.remove_edge(e.u, e.v);

    BoundedDijkstra search(spanner.id_limit());
    for (const auto& e : edges) {
        if (!search.within(spanner, e.u, e.v, cfg.stretch * e.weight)) spanner.add_edge(e.u, e.v);
    }
    return spanner;
}

}  // namespace rsec
