#include "rsec/eval.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <utility>

#include "rsec/errors.hpp"
#include "rsec/random.hpp"

namespace rsec {

QuerySet make_queries(const Scenario& s, std::size_t count, std::uint64_t seed) {
    QuerySet out;
    out.seed = seed;
    out.pairs.reserve(count);
    Rng rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        Configuration start = s.sample_free(rng);
        Configuration goal = s.sample_free(rng);
        out.pairs.push_back(QueryPair{std::move(start), std::move(goal)});
    }
    return out;
}

std::optional<Attachment> connect_query(const Roadmap& g, const Scenario& s, std::span<const double> q,
                                        std::size_t k_conn) {
    if (q.size() != g.dim()) throw UsageError("query dimension does not match roadmap");
    std::vector<std::pair<double, VertexId>> ranked;
    ranked.reserve(g.vertex_count());
    for (VertexId v : g.vertex_ids()) {
        const auto& c = g.config(v);
        double sum = 0.0;
        for (std::size_t i = 0; i < q.size(); ++i) {
            const double d = c[i] - q[i];
            sum += d * d;
        }
        ranked.emplace_back(sum, v);
    }
    const std::size_t take = std::min(k_conn, ranked.size());
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(take), ranked.end());
    for (std::size_t i = 0; i < take; ++i) {
        const VertexId v = ranked[i].second;
        if (s.local_planner(q, g.config(v))) return Attachment{v, distance(q, g.config(v))};
    }
    return std::nullopt;
}

std::optional<double> shortest_path(const Roadmap& g, VertexId src, VertexId dst) {
    if (!g.has_vertex(src) || !g.has_vertex(dst)) throw UsageError("shortest_path: unknown vertex id");
    if (src == dst) return 0.0;
    using Item = std::pair<double, VertexId>;
    std::vector<double> dist(g.id_limit(), std::numeric_limits<double>::infinity());
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[src] = 0.0;
    heap.emplace(0.0, src);
    while (!heap.empty()) {
        const auto [d, v] = heap.top();
        heap.pop();
        if (d > dist[v]) continue;
        if (v == dst) return d;
        for (const auto& n : g.adjacency(v)) {
            const double nd = d + n.weight;
            if (nd < dist[n.id]) {
                dist[n.id] = nd;
                heap.emplace(nd, n.id);
            }
        }
    }
    return std::nullopt;
}

std::optional<double> query_length(const Roadmap& g, const Scenario& s, const QueryPair& query,
                                   std::size_t k_conn) {
    const auto a = connect_query(g, s, query.start, k_conn);
    if (!a) return std::nullopt;
    const auto b = connect_query(g, s, query.goal, k_conn);
    if (!b) return std::nullopt;
    const auto path = shortest_path(g, a->vertex, b->vertex);
    if (!path) return std::nullopt;
    return a->length + *path + b->length;
}

Degradation path_degradation(const Roadmap& original, const Roadmap& sparse, const Scenario& s,
                             const QuerySet& queries, std::size_t k_conn) {
    Degradation out;
    out.per_query.reserve(queries.pairs.size());
    double sum_original = 0.0;
    double sum_sparse = 0.0;
    for (const auto& q : queries.pairs) {
        QueryOutcome outcome{query_length(original, s, q, k_conn), query_length(sparse, s, q, k_conn)};
        if (outcome.original && outcome.sparse) {
            ++out.both;
            sum_original += *outcome.original;
            sum_sparse += *outcome.sparse;
        } else if (outcome.original) {
            ++out.original_only;
        } else if (outcome.sparse) {
            ++out.sparse_only;
        }
        out.per_query.push_back(outcome);
    }
    if (out.both == 0) throw EvaluationError("no query is answerable in both roadmaps");
    out.avg_path_original = sum_original / static_cast<double>(out.both);
    out.avg_path_sparse = sum_sparse / static_cast<double>(out.both);
    out.ratio = sum_original > 0.0 ? sum_sparse / sum_original : 1.0;
    return out;
}

double compression_factor(const Roadmap& original, const Roadmap& sparse) {
    if (original.dim() != sparse.dim()) throw UsageError("roadmaps differ in dimension");
    const double denominator = size_measure(sparse);
    if (!(denominator > 0.0)) throw EvaluationError("compression factor of an empty roadmap is undefined");
    return size_measure(original) / denominator;
}

double connectivity_probability(const Roadmap& g, const Scenario& s, std::size_t m, std::size_t k_conn,
                                std::uint64_t seed) {
    if (m == 0) throw EvaluationError("connectivity probability needs m > 0 samples");
    Rng rng(seed);
    std::size_t connected = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const Configuration q = s.sample_free(rng);
        if (connect_query(g, s, q, k_conn)) ++connected;
    }
    return static_cast<double>(connected) / static_cast<double>(m);
}

MetricsReport evaluate(const Roadmap& original, const Roadmap& sparse, const Scenario& s, const QuerySet& queries,
                       const EvalOptions& options, double connect_prob_original) {
    const auto degradation = path_degradation(original, sparse, s, queries, options.k_conn);
    MetricsReport r;
    r.avg_path_original = degradation.avg_path_original;
    r.avg_path_sparse = degradation.avg_path_sparse;
    r.path_degradation = degradation.ratio;
    r.compression_factor = compression_factor(original, sparse);
    r.vertex_retention = original.vertex_count() == 0
                             ? 1.0
                             : static_cast<double>(sparse.vertex_count()) / static_cast<double>(original.vertex_count());
    r.edge_retention = original.edge_count() == 0
                           ? 1.0
                           : static_cast<double>(sparse.edge_count()) / static_cast<double>(original.edge_count());
    r.connect_prob_original = connect_prob_original;
    r.connect_prob_sparse =
        connectivity_probability(sparse, s, options.connect_samples, options.k_conn, options.connect_seed);
    r.queries_answered_both = degradation.both;
    r.queries_original_only = degradation.original_only;
    r.queries_sparse_only = degradation.sparse_only;
    return r;
}

MetricsReport evaluate(const Roadmap& original, const Roadmap& sparse, const Scenario& s, const QuerySet& queries,
                       const EvalOptions& options) {
    const double p_original =
        connectivity_probability(original, s, options.connect_samples, options.k_conn, options.connect_seed);
    return evaluate(original, sparse, s, queries, options, p_original);
}

}  // namespace rsec
