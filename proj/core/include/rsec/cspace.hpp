#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <variant>
#include <vector>

#include "rsec/random.hpp"

namespace rsec {

/// A point in a d-dimensional configuration space. For the point robot used
/// here C-space and workspace coincide.
using Configuration = std::vector<double>;

[[nodiscard]] double distance(std::span<const double> a, std::span<const double> b);

/// a + t * (b - a), component-wise.
[[nodiscard]] Configuration interpolate(std::span<const double> a, std::span<const double> b, double t);

struct Sphere {
    Configuration center;
    double radius = 0.0;
};

struct Box {
    Configuration lo;
    Configuration hi;
};

using Obstacle = std::variant<Sphere, Box>;

struct Bounds {
    Configuration lo;
    Configuration hi;
};

/// Workspace box, obstacle list and local-planner resolution. Immutable once
/// constructed; every query is const and thread-safe.
class Scenario {
public:
    static constexpr std::size_t kDefaultMaxRejections = 10'000;

    /// Validates all invariants; throws UsageError on violation.
    Scenario(Bounds bounds, std::vector<Obstacle> obstacles, double resolution);

    [[nodiscard]] std::size_t dim() const noexcept { return bounds_.lo.size(); }
    [[nodiscard]] const Bounds& bounds() const noexcept { return bounds_; }
    [[nodiscard]] const std::vector<Obstacle>& obstacles() const noexcept { return obstacles_; }
    [[nodiscard]] double resolution() const noexcept { return resolution_; }
    /// Length of the bounding-box diagonal; the drift normalizer.
    [[nodiscard]] double diagonal() const noexcept { return diagonal_; }

    /// Inside the (closed) bounds and strictly outside every obstacle.
    [[nodiscard]] bool is_free(std::span<const double> q) const;

    /// Discretized straight-line check. The pair is put in canonical
    /// (lexicographic) order first so the predicate is exactly symmetric.
    [[nodiscard]] bool local_planner(std::span<const double> q1, std::span<const double> q2) const;

    /// Points tested by local_planner, in canonical order.
    [[nodiscard]] std::vector<Configuration> segment_samples(std::span<const double> q1,
                                                             std::span<const double> q2) const;

    /// Distance to the nearest obstacle surface or workspace face. Throws
    /// DomainError when q is not free.
    [[nodiscard]] double clearance(std::span<const double> q) const;

    /// Rejection sampling over the free subset of the bounds.
    [[nodiscard]] Configuration sample_free(Rng& rng,
                                            std::size_t max_rejections = kDefaultMaxRejections) const;

    /// Uniform point in the bounds, ignoring obstacles.
    [[nodiscard]] Configuration sample_bounds(Rng& rng) const;

private:
    void check_dim(std::span<const double> q) const;
    [[nodiscard]] bool free_unchecked(std::span<const double> q) const;

    Bounds bounds_;
    std::vector<Obstacle> obstacles_;
    double resolution_;
    double diagonal_;
};

/// Parses the line-oriented scenario format (`dim`, `bounds`, `resolution`,
/// `sphere`, `box`; `#` starts a comment).
[[nodiscard]] Scenario parse_scenario(std::istream& in);
[[nodiscard]] Scenario load_scenario(const std::filesystem::path& path);
void write_scenario(const Scenario& s, std::ostream& out);

}  // namespace rsec
