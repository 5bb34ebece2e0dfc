#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rsec/cspace.hpp"
#include "rsec/roadmap.hpp"

namespace rsec {

enum class ConnectionMode {
    fixed_k,   // connect to the k nearest samples
    prm_star,  // k(n) = ceil(e * (1 + 1/dim) * ln n)
};

struct BuildConfig {
    std::size_t n = 1000;
    ConnectionMode connection = ConnectionMode::fixed_k;
    std::size_t k = 10;
    std::uint64_t seed = 0;
};

/// Connection count used for a given config; validates the config.
[[nodiscard]] std::size_t connection_count(const BuildConfig& cfg, std::size_t dim);

/// Indices of the k nearest points to `query` (exact linear scan, ties by
/// index), nearest first. `skip` is excluded when set.
[[nodiscard]] std::vector<std::size_t> nearest_k(std::span<const Configuration> points,
                                                 std::span<const double> query, std::size_t k,
                                                 std::size_t skip = static_cast<std::size_t>(-1));

/// k-nearest PRM: n distinct free samples, each connected to its k nearest
/// neighbors whenever the local planner succeeds. Deterministic given the seed.
[[nodiscard]] Roadmap build_prm(const Scenario& s, const BuildConfig& cfg);

/// Same connection rule over caller-supplied free samples.
[[nodiscard]] Roadmap connect_samples(const Scenario& s, std::vector<Configuration> samples, std::size_t k);

}  // namespace rsec
