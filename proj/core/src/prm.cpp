#include "rsec/prm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <utility>

#include "rsec/errors.hpp"

namespace rsec {

std::size_t connection_count(const BuildConfig& cfg, std::size_t dim) {
    if (cfg.n < 2) throw UsageError("PRM needs n >= 2");
    if (cfg.connection == ConnectionMode::fixed_k) {
        if (cfg.k < 1) throw UsageError("fixed_k connection needs k >= 1");
        return cfg.k;
    }
    const double d = static_cast<double>(dim);
    return static_cast<std::size_t>(
        std::ceil(std::numbers::e * (1.0 + 1.0 / d) * std::log(static_cast<double>(cfg.n))));
}

std::vector<std::size_t> nearest_k(std::span<const Configuration> points, std::span<const double> query,
                                   std::size_t k, std::size_t skip) {
    std::vector<std::pair<double, std::size_t>> ranked;
    ranked.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i == skip) continue;
        double sum = 0.0;
        for (std::size_t j = 0; j < query.size(); ++j) {
            const double d = points[i][j] - query[j];
            sum += d * d;
        }
        ranked.emplace_back(sum, i);
    }
    const std::size_t take = std::min(k, ranked.size());
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(take), ranked.end());
    std::vector<std::size_t> out(take);
    for (std::size_t i = 0; i < take; ++i) out[i] = ranked[i].second;
    return out;
}

Roadmap connect_samples(const Scenario& s, std::vector<Configuration> samples, std::size_t k) {
    Roadmap g(s.dim());
    for (const auto& q : samples) {
        if (!s.is_free(q)) throw UsageError("PRM sample is not free");
    }
    std::set<std::pair<std::size_t, std::size_t>> candidates;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        for (std::size_t j : nearest_k(samples, samples[i], k, i)) {
            candidates.emplace(std::min(i, j), std::max(i, j));
        }
    }
    for (auto& q : samples) g.add_vertex(std::move(q));
    for (const auto& [i, j] : candidates) {
        const auto a = static_cast<VertexId>(i);
        const auto b = static_cast<VertexId>(j);
        if (s.local_planner(g.config(a), g.config(b))) g.add_edge(a, b);
    }
    return g;
}

Roadmap build_prm(const Scenario& s, const BuildConfig& cfg) {
    const std::size_t k = connection_count(cfg, s.dim());
    Rng rng(cfg.seed);
    std::vector<Configuration> samples;
    samples.reserve(cfg.n);
    std::set<Configuration> seen;
    while (samples.size() < cfg.n) {
        Configuration q = s.sample_free(rng);
        if (!seen.insert(q).second) continue;
        samples.push_back(std::move(q));
    }
    return connect_samples(s, std::move(samples), k);
}

}  // namespace rsec
