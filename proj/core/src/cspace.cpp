#include "rsec/cspace.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "rsec/errors.hpp"

namespace rsec {

double distance(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

Configuration interpolate(std::span<const double> a, std::span<const double> b, double t) {
    Configuration out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + t * (b[i] - a[i]);
    return out;
}

namespace {

bool all_finite(std::span<const double> q) {
    return std::all_of(q.begin(), q.end(), [](double x) { return std::isfinite(x); });
}

double box_distance(std::span<const double> q, const Box& box) {
    double sum = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        const double d = std::max({box.lo[i] - q[i], 0.0, q[i] - box.hi[i]});
        sum += d * d;
    }
    return std::sqrt(sum);
}

bool inside_closed_box(std::span<const double> q, const Box& box) {
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (q[i] < box.lo[i] || q[i] > box.hi[i]) return false;
    }
    return true;
}

}  // namespace

Scenario::Scenario(Bounds bounds, std::vector<Obstacle> obstacles, double resolution)
    : bounds_(std::move(bounds)), obstacles_(std::move(obstacles)), resolution_(resolution) {
    const std::size_t d = bounds_.lo.size();
    if (d == 0) throw UsageError("scenario dimension must be positive");
    if (bounds_.hi.size() != d) throw UsageError("bounds corners differ in dimension");
    if (!all_finite(bounds_.lo) || !all_finite(bounds_.hi)) throw UsageError("bounds must be finite");
    for (std::size_t i = 0; i < d; ++i) {
        if (!(bounds_.lo[i] < bounds_.hi[i])) throw UsageError("bounds min must be < max componentwise");
    }
    diagonal_ = distance(bounds_.lo, bounds_.hi);
    if (!(resolution_ > 0.0) || !std::isfinite(resolution_)) throw UsageError("resolution must be > 0");
    if (!(resolution_ < diagonal_)) throw UsageError("resolution must be smaller than the bounds diagonal");

    const Box workspace{bounds_.lo, bounds_.hi};
    for (const auto& obstacle : obstacles_) {
        if (const auto* s = std::get_if<Sphere>(&obstacle)) {
            if (s->center.size() != d) throw UsageError("sphere dimension mismatch");
            if (!all_finite(s->center) || !(s->radius > 0.0) || !std::isfinite(s->radius)) {
                throw UsageError("sphere needs a finite center and radius > 0");
            }
            if (box_distance(s->center, workspace) > s->radius) {
                throw UsageError("sphere lies entirely outside the workspace bounds");
            }
        } else {
            const auto& b = std::get<Box>(obstacle);
            if (b.lo.size() != d || b.hi.size() != d) throw UsageError("box dimension mismatch");
            if (!all_finite(b.lo) || !all_finite(b.hi)) throw UsageError("box corners must be finite");
            for (std::size_t i = 0; i < d; ++i) {
                if (!(b.lo[i] < b.hi[i])) throw UsageError("box min must be < max componentwise");
                if (b.hi[i] < bounds_.lo[i] || b.lo[i] > bounds_.hi[i]) {
                    throw UsageError("box lies entirely outside the workspace bounds");
                }
            }
        }
    }
}

void Scenario::check_dim(std::span<const double> q) const {
    if (q.size() != dim()) {
        throw UsageError("configuration has " + std::to_string(q.size()) + " coordinates, scenario dim is " +
                         std::to_string(dim()));
    }
}

bool Scenario::free_unchecked(std::span<const double> q) const {
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (!(q[i] >= bounds_.lo[i] && q[i] <= bounds_.hi[i])) return false;
    }
    for (const auto& obstacle : obstacles_) {
        if (const auto* s = std::get_if<Sphere>(&obstacle)) {
            double sum = 0.0;
            for (std::size_t i = 0; i < q.size(); ++i) {
                const double d = q[i] - s->center[i];
                sum += d * d;
            }
            if (sum <= s->radius * s->radius) return false;
        } else if (inside_closed_box(q, std::get<Box>(obstacle))) {
            return false;
        }
    }
    return true;
}

bool Scenario::is_free(std::span<const double> q) const {
    check_dim(q);
    return free_unchecked(q);
}

namespace {

// Canonical endpoint order so that (q1, q2) and (q2, q1) sample identical points.
std::pair<std::span<const double>, std::span<const double>> canonical(std::span<const double> q1,
                                                                      std::span<const double> q2) {
    if (std::lexicographical_compare(q2.begin(), q2.end(), q1.begin(), q1.end())) return {q2, q1};
    return {q1, q2};
}

std::size_t step_count(std::span<const double> a, std::span<const double> b, double resolution) {
    return static_cast<std::size_t>(std::ceil(distance(a, b) / resolution));
}

}  // namespace

bool Scenario::local_planner(std::span<const double> q1, std::span<const double> q2) const {
    check_dim(q1);
    check_dim(q2);
    const auto [a, b] = canonical(q1, q2);
    const std::size_t m = step_count(a, b, resolution_);
    if (!free_unchecked(a) || !free_unchecked(b)) return false;
    Configuration p(a.size());
    for (std::size_t i = 1; i < m; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(m);
        for (std::size_t j = 0; j < a.size(); ++j) p[j] = a[j] + t * (b[j] - a[j]);
        if (!free_unchecked(p)) return false;
    }
    return true;
}

std::vector<Configuration> Scenario::segment_samples(std::span<const double> q1,
                                                     std::span<const double> q2) const {
    check_dim(q1);
    check_dim(q2);
    const auto [a, b] = canonical(q1, q2);
    const std::size_t m = step_count(a, b, resolution_);
    std::vector<Configuration> out;
    out.reserve(m + 1);
    out.emplace_back(a.begin(), a.end());
    for (std::size_t i = 1; i < m; ++i) {
        out.push_back(interpolate(a, b, static_cast<double>(i) / static_cast<double>(m)));
    }
    if (m > 0) out.emplace_back(b.begin(), b.end());
    return out;
}

double Scenario::clearance(std::span<const double> q) const {
    check_dim(q);
    if (!free_unchecked(q)) throw DomainError("clearance is undefined for a configuration in collision");
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < q.size(); ++i) {
        best = std::min({best, q[i] - bounds_.lo[i], bounds_.hi[i] - q[i]});
    }
    for (const auto& obstacle : obstacles_) {
        if (const auto* s = std::get_if<Sphere>(&obstacle)) {
            best = std::min(best, distance(q, s->center) - s->radius);
        } else {
            best = std::min(best, box_distance(q, std::get<Box>(obstacle)));
        }
    }
    return std::max(best, 0.0);
}

Configuration Scenario::sample_bounds(Rng& rng) const {
    Configuration q(dim());
    for (std::size_t i = 0; i < q.size(); ++i) {
        q[i] = bounds_.lo[i] + uniform01(rng) * (bounds_.hi[i] - bounds_.lo[i]);
    }
    return q;
}

Configuration Scenario::sample_free(Rng& rng, std::size_t max_rejections) const {
    for (std::size_t attempt = 0; attempt <= max_rejections; ++attempt) {
        Configuration q = sample_bounds(rng);
        if (free_unchecked(q)) return q;
    }
    throw InfeasibleError("no free configuration found after " + std::to_string(max_rejections) +
                          " rejections");
}

// ---------------------------------------------------------------------------
// Text format

namespace {

std::vector<double> read_numbers(std::istringstream& in, std::size_t count, std::size_t line,
                                 const std::string& keyword) {
    std::vector<double> values;
    values.reserve(count);
    std::string token;
    while (in >> token) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(token, &used);
        } catch (const std::exception&) {
            throw ParseError(line, "'" + keyword + "': bad number '" + token + "'");
        }
        if (used != token.size()) throw ParseError(line, "'" + keyword + "': bad number '" + token + "'");
        values.push_back(v);
    }
    if (values.size() != count) {
        throw ParseError(line, "'" + keyword + "' expects " + std::to_string(count) + " numbers, got " +
                                   std::to_string(values.size()));
    }
    return values;
}

}  // namespace

Scenario parse_scenario(std::istream& in) {
    std::optional<std::size_t> dim;
    std::optional<Bounds> bounds;
    std::optional<double> resolution;
    std::vector<Obstacle> obstacles;

    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream line(raw);
        std::string keyword;
        if (!(line >> keyword)) continue;

        if (keyword == "dim") {
            const auto v = read_numbers(line, 1, line_no, keyword);
            if (v[0] < 1 || v[0] != std::floor(v[0])) throw ParseError(line_no, "dim must be a positive integer");
            if (dim) throw ParseError(line_no, "duplicate 'dim'");
            dim = static_cast<std::size_t>(v[0]);
            continue;
        }
        if (!dim) throw ParseError(line_no, "'" + keyword + "' before 'dim'");
        const std::size_t d = *dim;
        if (keyword == "bounds") {
            const auto v = read_numbers(line, 2 * d, line_no, keyword);
            if (bounds) throw ParseError(line_no, "duplicate 'bounds'");
            bounds = Bounds{{v.begin(), v.begin() + static_cast<std::ptrdiff_t>(d)},
                            {v.begin() + static_cast<std::ptrdiff_t>(d), v.end()}};
        } else if (keyword == "resolution") {
            resolution = read_numbers(line, 1, line_no, keyword)[0];
        } else if (keyword == "sphere") {
            const auto v = read_numbers(line, d + 1, line_no, keyword);
            obstacles.emplace_back(Sphere{{v.begin(), v.end() - 1}, v.back()});
        } else if (keyword == "box") {
            const auto v = read_numbers(line, 2 * d, line_no, keyword);
            obstacles.emplace_back(Box{{v.begin(), v.begin() + static_cast<std::ptrdiff_t>(d)},
                                       {v.begin() + static_cast<std::ptrdiff_t>(d), v.end()}});
        } else {
            throw ParseError(line_no, "unknown keyword '" + keyword + "'");
        }
    }
    if (!dim) throw ParseError(0, "missing 'dim'");
    if (!bounds) throw ParseError(0, "missing 'bounds'");
    if (!resolution) throw ParseError(0, "missing 'resolution'");
    try {
        return Scenario(std::move(*bounds), std::move(obstacles), *resolution);
    } catch (const UsageError& e) {
        throw ParseError(0, e.what());
    }
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open scenario file " + path.string());
    return parse_scenario(in);
}

void write_scenario(const Scenario& s, std::ostream& out) {
    const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
    const auto coords = [&out](const Configuration& q) {
        for (double x : q) out << ' ' << x;
    };
    out << "dim " << s.dim() << '\n';
    out << "bounds";
    coords(s.bounds().lo);
    coords(s.bounds().hi);
    out << "\nresolution " << s.resolution() << '\n';
    for (const auto& obstacle : s.obstacles()) {
        if (const auto* sp = std::get_if<Sphere>(&obstacle)) {
            out << "sphere";
            coords(sp->center);
            out << ' ' << sp->radius << '\n';
        } else {
            const auto& b = std::get<Box>(obstacle);
            out << "box";
            coords(b.lo);
            coords(b.hi);
            out << '\n';
        }
    }
    out.precision(old_precision);
}

}  // namespace rsec
