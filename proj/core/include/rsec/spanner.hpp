#pragma once

#include <cstddef>

#include "rsec/roadmap.hpp"

namespace rsec {

struct SpannerConfig {
    /// Stretch t >= 1.
    double stretch = 3.0;
};

/// Stretch of the classical greedy (2k - 1)-spanner for a given k >= 1.
[[nodiscard]] double stretch_from_k(std::size_t k);

/// Sequential greedy t-spanner. Edges are scanned by increasing weight (ties
/// by endpoint ids) and an edge is kept only if the spanner built so far has
/// no u-v path of length <= t * w(u, v). Vertices, ids and configurations are
/// left untouched.
[[nodiscard]] Roadmap greedy_spanner(const Roadmap& g, const SpannerConfig& cfg);

}  // namespace rsec
