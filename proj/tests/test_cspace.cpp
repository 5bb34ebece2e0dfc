#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "rsec/cspace.hpp"
#include "rsec/errors.hpp"
#include "test_support.hpp"

namespace rsec {
namespace {

Scenario unit_sphere_scenario() {
    return Scenario(Bounds{{-100, -100}, {100, 100}}, {Sphere{{0, 0}, 1.0}}, 0.01);
}

TEST(IsFree, EmptyScenarioInsideBounds) {
    const auto s = test::empty_scenario();
    EXPECT_TRUE(s.is_free(std::vector<double>{3.0, -2.0}));
}

TEST(IsFree, OutsideBounds) {
    const auto s = test::empty_scenario();
    EXPECT_FALSE(s.is_free(std::vector<double>{10.5, 0.0}));
}

TEST(IsFree, BoundsFaceIsFree) {
    const auto s = test::empty_scenario();
    EXPECT_TRUE(s.is_free(std::vector<double>{10.0, 0.0}));
}

TEST(IsFree, InsideSphere) {
    const auto s = unit_sphere_scenario();
    EXPECT_FALSE(s.is_free(std::vector<double>{0.5, 0.0}));
}

TEST(IsFree, ObstacleBoundaryCollides) {
    const auto s = unit_sphere_scenario();
    EXPECT_FALSE(s.is_free(std::vector<double>{1.0, 0.0}));
    const Scenario b(Bounds{{-5, -5}, {5, 5}}, {Box{{0, 0}, {1, 1}}}, 0.01);
    EXPECT_FALSE(b.is_free(std::vector<double>{1.0, 0.5}));
    EXPECT_FALSE(b.is_free(std::vector<double>{0.5, 0.5}));
    EXPECT_TRUE(b.is_free(std::vector<double>{1.0 + 1e-12, 0.5}));
}

TEST(IsFree, DimensionMismatch) {
    const auto s = test::empty_scenario();
    EXPECT_THROW((void)s.is_free(std::vector<double>{1.0}), UsageError);
}

TEST(LocalPlanner, ZeroLengthSegment) {
    const auto s = unit_sphere_scenario();
    const std::vector<double> q{3.0, 3.0};
    EXPECT_TRUE(s.local_planner(q, q));
}

TEST(LocalPlanner, ThroughSphereCenter) {
    const auto s = unit_sphere_scenario();
    EXPECT_FALSE(s.local_planner(std::vector<double>{-3.0, 0.0}, std::vector<double>{3.0, 0.0}));
}

TEST(LocalPlanner, EmptyScenarioAnyPair) {
    const auto s = test::empty_scenario();
    Rng rng(4);
    for (int i = 0; i < 200; ++i) {
        EXPECT_TRUE(s.local_planner(s.sample_bounds(rng), s.sample_bounds(rng)));
    }
}

TEST(LocalPlanner, SampleCountFollowsResolution) {
    const Scenario s(Bounds{{0, 0}, {10, 10}}, {}, 0.3);
    // dist 1 -> m = ceil(1 / 0.3) = 4 -> 5 points
    const auto pts = s.segment_samples(std::vector<double>{1, 1}, std::vector<double>{2, 1});
    ASSERT_EQ(pts.size(), 5u);
    EXPECT_DOUBLE_EQ(pts[2][0], 1.5);
}

TEST(LocalPlanner, SymmetricOnRandomPairs) {
    const Scenario s = load_scenario(RSEC_SCENARIO_DIR "/easy2d.txt");
    Rng rng(11);
    std::size_t blocked = 0;
    for (int i = 0; i < 3000; ++i) {
        const auto a = s.sample_bounds(rng);
        const auto b = s.sample_bounds(rng);
        const bool ab = s.local_planner(a, b);
        EXPECT_EQ(ab, s.local_planner(b, a));
        if (!ab) ++blocked;
    }
    EXPECT_GT(blocked, 0u);
}

TEST(LocalPlanner, SuccessImpliesEndpointsAndMidpointFree) {
    const Scenario s = load_scenario(RSEC_SCENARIO_DIR "/easy2d.txt");
    Rng rng(12);
    for (int i = 0; i < 3000; ++i) {
        const auto a = s.sample_free(rng);
        const auto b = s.sample_free(rng);
        if (!s.local_planner(a, b)) continue;
        EXPECT_TRUE(s.is_free(a));
        EXPECT_TRUE(s.is_free(b));
        EXPECT_TRUE(s.is_free(interpolate(a, b, 0.5)));
    }
}

TEST(Clearance, SphereByHand) {
    const auto s = unit_sphere_scenario();
    EXPECT_NEAR(s.clearance(std::vector<double>{3.0, 0.0}), 2.0, 1e-12);
}

TEST(Clearance, CenterOfUnitBox) {
    const Scenario s(Bounds{{-1, -1}, {1, 1}}, {}, 0.01);
    EXPECT_NEAR(s.clearance(std::vector<double>{0.0, 0.0}), 1.0, 1e-12);
}

TEST(Clearance, OnBoundsFaceIsZero) {
    const Scenario s(Bounds{{-1, -1}, {1, 1}}, {}, 0.01);
    EXPECT_EQ(s.clearance(std::vector<double>{1.0, 0.3}), 0.0);
}

TEST(Clearance, BoxDistanceToCornerAndFace) {
    const Scenario s(Bounds{{-100, -100}, {100, 100}}, {Box{{0, 0}, {1, 1}}}, 0.01);
    EXPECT_NEAR(s.clearance(std::vector<double>{4.0, 5.0}), 5.0, 1e-12);   // corner (1,1): 3-4-5
    EXPECT_NEAR(s.clearance(std::vector<double>{0.5, -2.0}), 2.0, 1e-12);  // bottom face
}

TEST(Clearance, CollidingPointIsDomainError) {
    const auto s = unit_sphere_scenario();
    EXPECT_THROW((void)s.clearance(std::vector<double>{0.0, 0.0}), DomainError);
}

TEST(Clearance, OneLipschitzOnRandomPairs) {
    const Scenario s = load_scenario(RSEC_SCENARIO_DIR "/easy2d.txt");
    Rng rng(13);
    for (int i = 0; i < 2000; ++i) {
        const auto p = s.sample_free(rng);
        const auto q = s.sample_free(rng);
        EXPECT_LE(s.clearance(q), distance(q, p) + s.clearance(p) + 1e-12);
    }
}

TEST(Clearance, MatchesSampledSurfaces) {
    // Oracle: nearest of densely sampled obstacle surface points, and the
    // nearest bounds face.
    const Scenario s = load_scenario(RSEC_SCENARIO_DIR "/easy2d.txt");
    std::vector<std::vector<double>> surface;
    for (const auto& o : s.obstacles()) {
        if (const auto* sp = std::get_if<Sphere>(&o)) {
            for (int k = 0; k < 20000; ++k) {
                const double a = 2.0 * M_PI * k / 20000.0;
                surface.push_back({sp->center[0] + sp->radius * std::cos(a), sp->center[1] + sp->radius * std::sin(a)});
            }
        } else {
            const auto& b = std::get<Box>(o);
            for (int k = 0; k <= 5000; ++k) {
                const double t = k / 5000.0;
                const double x = b.lo[0] + t * (b.hi[0] - b.lo[0]);
                const double y = b.lo[1] + t * (b.hi[1] - b.lo[1]);
                surface.push_back({x, b.lo[1]});
                surface.push_back({x, b.hi[1]});
                surface.push_back({b.lo[0], y});
                surface.push_back({b.hi[0], y});
            }
        }
    }
    Rng rng(14);
    for (int i = 0; i < 40; ++i) {
        const auto q = s.sample_free(rng);
        double best = std::min({q[0] + 10.0, 10.0 - q[0], q[1] + 10.0, 10.0 - q[1]});
        for (const auto& p : surface) best = std::min(best, distance(q, p));
        EXPECT_NEAR(s.clearance(q), best, 2e-3);
        EXPECT_LE(s.clearance(q), best + 1e-12);
    }
}

TEST(SampleFree, EmptyScenarioAlwaysSucceeds) {
    const auto s = test::empty_scenario();
    Rng rng(1);
    for (int i = 0; i < 100; ++i) EXPECT_TRUE(s.is_free(s.sample_free(rng)));
}

TEST(SampleFree, FullyCoveredIsInfeasible) {
    const Scenario s(Bounds{{0, 0}, {1, 1}}, {Box{{-1, -1}, {2, 2}}}, 0.01);
    Rng rng(1);
    EXPECT_THROW((void)s.sample_free(rng, 500), InfeasibleError);
}

TEST(SampleFree, DeterministicGivenSeed) {
    const Scenario s = load_scenario(RSEC_SCENARIO_DIR "/easy2d.txt");
    Rng a(77);
    Rng b(77);
    for (int i = 0; i < 50; ++i) EXPECT_EQ(s.sample_free(a), s.sample_free(b));
}

TEST(SampleFree, OutputsAreFree) {
    const Scenario s = load_scenario(RSEC_SCENARIO_DIR "/easy2d.txt");
    Rng rng(5);
    for (int i = 0; i < 2000; ++i) EXPECT_TRUE(s.is_free(s.sample_free(rng)));
}

TEST(ScenarioInvariants, RejectsBadInput) {
    EXPECT_THROW(Scenario(Bounds{{0, 0}, {0, 1}}, {}, 0.1), UsageError);
    EXPECT_THROW(Scenario(Bounds{{0, 0}, {1, 1}}, {}, 0.0), UsageError);
    EXPECT_THROW(Scenario(Bounds{{0, 0}, {1, 1}}, {}, 5.0), UsageError);
    EXPECT_THROW(Scenario(Bounds{{0, 0}, {1, 1}}, {Sphere{{0.5, 0.5}, -1.0}}, 0.1), UsageError);
    EXPECT_THROW(Scenario(Bounds{{0, 0}, {1, 1}}, {Box{{0.5, 0.5}, {0.5, 0.7}}}, 0.1), UsageError);
    EXPECT_THROW(Scenario(Bounds{{0, 0}, {1, 1}}, {Sphere{{5, 5}, 1.0}}, 0.1), UsageError);
    EXPECT_THROW(Scenario(Bounds{{0, 0}, {1, 1}}, {Sphere{{0.5}, 0.1}}, 0.1), UsageError);
}

TEST(ScenarioInvariants, Diagonal) {
    const Scenario s(Bounds{{0, 0}, {3, 4}}, {}, 0.1);
    EXPECT_DOUBLE_EQ(s.diagonal(), 5.0);
}

TEST(ScenarioFormat, ParsesDocumentedExample) {
    std::istringstream in(
        "dim 2\n"
        "bounds -10 -10 10 10\n"
        "resolution 0.05\n"
        "sphere 0 0 1.5\n"
        "box 2 2 4 8\n");
    const auto s = parse_scenario(in);
    EXPECT_EQ(s.dim(), 2u);
    EXPECT_EQ(s.obstacles().size(), 2u);
    EXPECT_DOUBLE_EQ(s.resolution(), 0.05);
    EXPECT_FALSE(s.is_free(std::vector<double>{3.0, 5.0}));
    EXPECT_FALSE(s.is_free(std::vector<double>{1.0, 0.0}));
}

TEST(ScenarioFormat, RoundTrip) {
    const Scenario s = load_scenario(RSEC_SCENARIO_DIR "/easy2d.txt");
    std::stringstream buf;
    write_scenario(s, buf);
    const auto t = parse_scenario(buf);
    EXPECT_EQ(t.dim(), s.dim());
    EXPECT_EQ(t.bounds().lo, s.bounds().lo);
    EXPECT_EQ(t.bounds().hi, s.bounds().hi);
    EXPECT_EQ(t.obstacles().size(), s.obstacles().size());
    EXPECT_EQ(t.resolution(), s.resolution());
}

TEST(ScenarioFormat, ErrorsCarryLineNumbers) {
    auto line_of = [](const std::string& text) -> std::size_t {
        std::istringstream in(text);
        try {
            (void)parse_scenario(in);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 9999;
    };
    EXPECT_EQ(line_of("dim 2\nbounds 0 0 1 1\nresolution 0.1\nsphere 0.5 0.5\n"), 4u);
    EXPECT_EQ(line_of("dim 2\n# comment\nbounds 0 0 1 1\nteapot 1\n"), 4u);
    EXPECT_EQ(line_of("dim 2\nbounds 0 0 1 x\n"), 2u);
    EXPECT_EQ(line_of("sphere 0 0 1\n"), 1u);
}

TEST(ScenarioFormat, MissingFile) {
    EXPECT_ANY_THROW((void)load_scenario("/nonexistent/scenario.txt"));
}

}  // namespace
}  // namespace rsec
