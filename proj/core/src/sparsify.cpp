#include "rsec/sparsify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "rsec/errors.hpp"

namespace rsec {

std::string_view to_string(Heuristic h) noexcept {
    switch (h) {
        case Heuristic::deg_sum: return "deg_sum";
        case Heuristic::fifo: return "fifo";
        case Heuristic::compressibility: return "compressibility";
        case Heuristic::clearance: return "clearance";
    }
    return "?";
}

std::optional<Heuristic> parse_heuristic(std::string_view name) noexcept {
    for (auto h : {Heuristic::deg_sum, Heuristic::fifo, Heuristic::compressibility, Heuristic::clearance}) {
        if (name == to_string(h)) return h;
    }
    return std::nullopt;
}

std::string_view to_string(PointRule r) noexcept {
    switch (r) {
        case PointRule::random: return "random";
        case PointRule::midpoint: return "midpoint";
        case PointRule::endpoint: return "endpoint";
    }
    return "?";
}

std::optional<PointRule> parse_point_rule(std::string_view name) noexcept {
    for (auto r : {PointRule::random, PointRule::midpoint, PointRule::endpoint}) {
        if (name == to_string(r)) return r;
    }
    return std::nullopt;
}

double heuristic_key(const Roadmap& g, const Scenario& s, Heuristic h, VertexId u, VertexId v,
                     std::uint64_t insertion_index) {
    if (!g.has_edge(u, v)) throw UsageError("heuristic_key: edge does not exist");
    switch (h) {
        case Heuristic::deg_sum:
            return static_cast<double>(g.degree(u) + g.degree(v));
        case Heuristic::fifo:
            return static_cast<double>(insertion_index);
        case Heuristic::compressibility: {
            const auto a = g.adjacency(u);
            const auto b = g.adjacency(v);
            std::size_t common = 0;
            std::size_t i = 0;
            std::size_t j = 0;
            while (i < a.size() && j < b.size()) {
                if (a[i].id < b[j].id) {
                    ++i;
                } else if (b[j].id < a[i].id) {
                    ++j;
                } else {
                    ++common;
                    ++i;
                    ++j;
                }
            }
            // The edge's own endpoints are left out of the union; u and v are
            // never common neighbors of each other.
            const std::size_t joined = a.size() + b.size() - common - 2;
            if (joined == 0) return 0.0;
            return -static_cast<double>(common) / static_cast<double>(joined);
        }
        case Heuristic::clearance: {
            double lowest = std::numeric_limits<double>::infinity();
            for (const auto& q : s.segment_samples(g.config(u), g.config(v))) {
                lowest = std::min(lowest, s.clearance(q));
            }
            return -lowest;
        }
    }
    return 0.0;
}

namespace {

bool within_drift(std::span<const double> p, std::span<const double> w, double bound_sq) {
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double d = p[i] - w[i];
        sum += d * d;
    }
    return sum <= bound_sq;
}

}  // namespace

PointSample get_contraction_point(const Roadmap& g, const Scenario& s, VertexId u, VertexId v, double max_drift,
                                  Rng& rng, std::size_t candidates, PointRule rule) {
    if (!g.has_edge(u, v)) throw UsageError("get_contraction_point: edge does not exist");
    if (candidates < 1) throw UsageError("candidates must be >= 1");
    const auto& cu = g.config(u);
    const auto& cv = g.config(v);
    const double bound_sq = max_drift * max_drift;

    PointSample out;
    for (std::size_t attempt = 0; attempt < candidates; ++attempt) {
        Configuration p;
        switch (rule) {
            case PointRule::random: p = interpolate(cu, cv, uniform_open01(rng)); break;
            case PointRule::midpoint: p = interpolate(cu, cv, 0.5); break;
            case PointRule::endpoint: p = cu; break;
        }
        if (!s.is_free(p)) {
            out.failure = PointFailure::collision;
            continue;
        }
        const auto ok = [&](const Configuration& w) { return within_drift(p, w, bound_sq); };
        if (!ok(cu) || !ok(cv) || !std::all_of(g.ancestors(u).begin(), g.ancestors(u).end(), ok) ||
            !std::all_of(g.ancestors(v).begin(), g.ancestors(v).end(), ok)) {
            out.failure = PointFailure::drift;
            continue;
        }
        out.point = std::move(p);
        out.failure = PointFailure::none;
        return out;
    }
    return out;
}

bool is_contractible(const Roadmap& g, const Scenario& s, VertexId u, VertexId v, std::span<const double> p) {
    for (VertexId end : {u, v}) {
        for (const auto& n : g.adjacency(end)) {
            if (n.id == u || n.id == v) continue;
            if (!s.local_planner(g.config(n.id), p)) return false;
        }
    }
    return true;
}

namespace {

using EdgeKey = std::uint64_t;

EdgeKey edge_key(VertexId a, VertexId b) {
    if (b < a) std::swap(a, b);
    return (static_cast<EdgeKey>(a) << 32) | b;
}

struct QueueEntry {
    double key;
    std::uint64_t seq;  // insertion counter: tie-breaker and version stamp
    VertexId u;
    VertexId v;
};

struct PopsLater {
    bool operator()(const QueueEntry& a, const QueueEntry& b) const noexcept {
        if (a.key != b.key) return a.key > b.key;
        return a.seq > b.seq;
    }
};

class ContractionQueue {
public:
    ContractionQueue(const Roadmap& g, const Scenario& s, Heuristic h) : g_(g), s_(s), heuristic_(h) {}

    void push(VertexId u, VertexId v) {
        if (v < u) std::swap(u, v);
        const std::uint64_t seq = next_seq_++;
        heap_.push(QueueEntry{heuristic_key(g_, s_, heuristic_, u, v, seq), seq, u, v});
        stamp_[edge_key(u, v)] = seq;
    }

    // Next live entry, skipping entries whose edge is gone or was re-queued.
    std::optional<QueueEntry> pop(std::size_t& pops) {
        while (!heap_.empty()) {
            const QueueEntry top = heap_.top();
            heap_.pop();
            ++pops;
            const auto it = stamp_.find(edge_key(top.u, top.v));
            if (it == stamp_.end() || it->second != top.seq) continue;
            stamp_.erase(it);
            if (!g_.has_vertex(top.u) || !g_.has_vertex(top.v) || !g_.has_edge(top.u, top.v)) continue;
            return top;
        }
        return std::nullopt;
    }

private:
    const Roadmap& g_;
    const Scenario& s_;
    Heuristic heuristic_;
    std::priority_queue<QueueEntry, std::vector<QueueEntry>, PopsLater> heap_;
    std::unordered_map<EdgeKey, std::uint64_t> stamp_;
    std::uint64_t next_seq_ = 0;
};

// Edges that failed to contract, indexed by both endpoints.
class FailedEdges {
public:
    void add(VertexId u, VertexId v) {
        if (!keys_.insert(edge_key(u, v)).second) return;
        grow(std::max(u, v));
        by_vertex_[u].push_back(v);
        by_vertex_[v].push_back(u);
    }

    // Removes and returns failed edges incident to w that still exist in g.
    template <typename Fn>
    void take_incident(const Roadmap& g, VertexId w, Fn&& fn) {
        if (w >= by_vertex_.size()) return;
        auto others = std::move(by_vertex_[w]);
        by_vertex_[w].clear();
        for (VertexId x : others) {
            if (keys_.erase(edge_key(w, x)) == 0) continue;
            if (g.has_vertex(x) && g.has_edge(w, x)) fn(w, x);
        }
    }

private:
    void grow(VertexId id) {
        if (id >= by_vertex_.size()) by_vertex_.resize(static_cast<std::size_t>(id) + 1);
    }

    std::unordered_set<EdgeKey> keys_;
    std::vector<std::vector<VertexId>> by_vertex_;
};

}  // namespace

SparsifyResult sparsify(Roadmap g, const Scenario& s, const SparsifyConfig& cfg, const ContractionTrace& trace) {
    if (!(cfg.drift > 0.0) || !std::isfinite(cfg.drift)) throw UsageError("drift must be a finite value > 0");
    if (cfg.candidate_points < 1) throw UsageError("candidate_points must be >= 1");
    if (g.dim() != s.dim()) throw UsageError("roadmap and scenario dimensions differ");

    SparsifyReport report;
    report.initial_vertices = g.vertex_count();
    report.initial_edges = g.edge_count();

    const double max_drift = cfg.drift * s.diagonal();
    Rng rng(cfg.seed);
    ContractionQueue queue(g, s, cfg.heuristic);
    FailedEdges failed;

    for (const auto& e : g.edges()) queue.push(e.u, e.v);

    while (auto entry = queue.pop(report.queue_pops)) {
        const VertexId u = entry->u;
        const VertexId v = entry->v;
        ++report.contractions_attempted;

        auto sample = get_contraction_point(g, s, u, v, max_drift, rng, cfg.candidate_points, cfg.point_rule);
        if (!sample.point) {
            if (sample.failure == PointFailure::collision) {
                ++report.reject_collision;
            } else {
                ++report.reject_drift;
            }
            failed.add(u, v);
            continue;
        }
        if (!is_contractible(g, s, u, v, *sample.point)) {
            ++report.reject_local_planner;
            failed.add(u, v);
            continue;
        }

        const VertexId merged = g.contract_edge(u, v, std::move(*sample.point));
        ++report.contractions_succeeded;
        if (trace) trace(ContractionEvent{u, v, merged, g.config(merged)});

        const auto neighbors = g.neighbors(merged);
        for (VertexId w : neighbors) queue.push(w, merged);
        if (cfg.reinsertion) {
            for (VertexId w : neighbors) {
                failed.take_incident(g, w, [&](VertexId a, VertexId b) {
                    queue.push(a, b);
                    ++report.reinsertions;
                });
            }
        }
    }

    report.final_vertices = g.vertex_count();
    report.final_edges = g.edge_count();
    return SparsifyResult{std::move(g), report};
}

}  // namespace rsec
