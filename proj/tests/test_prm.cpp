#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "rsec/errors.hpp"
#include "rsec/prm.hpp"
#include "test_support.hpp"

namespace rsec {
namespace {

TEST(Prm, EmptyScenarioSmallNIsComplete) {
    const auto s = test::empty_scenario();
    const auto g = build_prm(s, BuildConfig{10, ConnectionMode::fixed_k, 9, 3});
    EXPECT_EQ(g.vertex_count(), 10u);
    EXPECT_EQ(g.edge_count(), 45u);
}

TEST(Prm, WallSeparatesChambers) {
    const Scenario s = load_scenario(RSEC_SCENARIO_DIR "/wall2d.txt");
    std::vector<Configuration> samples;
    for (double y : {-6.0, -2.0, 2.0, 6.0}) {
        samples.push_back({-3.0, y});
        samples.push_back({3.0, y});
    }
    const auto g = connect_samples(s, samples, 7);
    EXPECT_GE(connected_components(g).count, 2u);
    for (const auto& e : g.edges()) {
        EXPECT_EQ(g.config(e.u)[0] < 0, g.config(e.v)[0] < 0);
    }
}

TEST(Prm, WallRoadmapFromSamplerHasTwoComponents) {
    const Scenario s = load_scenario(RSEC_SCENARIO_DIR "/wall2d.txt");
    const auto g = build_prm(s, BuildConfig{300, ConnectionMode::fixed_k, 10, 1});
    EXPECT_GE(connected_components(g).count, 2u);
}

TEST(Prm, SameSeedSameRoadmap) {
    const Scenario s = load_scenario(RSEC_SCENARIO_DIR "/easy2d.txt");
    const BuildConfig cfg{300, ConnectionMode::fixed_k, 8, 42};
    std::stringstream a;
    std::stringstream b;
    save_roadmap(build_prm(s, cfg), a);
    save_roadmap(build_prm(s, cfg), b);
    EXPECT_EQ(a.str(), b.str());
}

TEST(Prm, DifferentSeedDifferentRoadmap) {
    const auto s = test::empty_scenario();
    const auto a = build_prm(s, BuildConfig{50, ConnectionMode::fixed_k, 5, 1});
    const auto b = build_prm(s, BuildConfig{50, ConnectionMode::fixed_k, 5, 2});
    EXPECT_NE(a.config(0), b.config(0));
}

TEST(Prm, EdgesPassLocalPlannerAndVerticesFree) {
    const Scenario s = load_scenario(RSEC_SCENARIO_DIR "/easy2d.txt");
    const auto g = build_prm(s, BuildConfig{400, ConnectionMode::fixed_k, 10, 7});
    EXPECT_EQ(g.vertex_count(), 400u);
    for (VertexId v : g.vertex_ids()) EXPECT_TRUE(s.is_free(g.config(v)));
    for (const auto& e : g.edges()) EXPECT_TRUE(s.local_planner(g.config(e.u), g.config(e.v)));
}

TEST(Prm, EdgesMatchBruteForceCandidateSet) {
    // Oracle: edge (i, j) iff j is among i's k nearest (or vice versa) and the
    // segment is free; nearest computed by a full sort.
    const Scenario s = load_scenario(RSEC_SCENARIO_DIR "/easy2d.txt");
    const auto g = build_prm(s, BuildConfig{150, ConnectionMode::fixed_k, 6, 9});
    const auto ids = g.vertex_ids();
    std::set<std::pair<VertexId, VertexId>> expected;
    for (VertexId i : ids) {
        std::vector<std::pair<double, VertexId>> order;
        for (VertexId j : ids) {
            if (j != i) order.emplace_back(distance(g.config(i), g.config(j)), j);
        }
        std::sort(order.begin(), order.end());
        for (std::size_t r = 0; r < 6; ++r) {
            const VertexId j = order[r].second;
            if (s.local_planner(g.config(i), g.config(j))) expected.emplace(std::min(i, j), std::max(i, j));
        }
    }
    EXPECT_EQ(test::edge_pairs(g), expected);
}

TEST(Prm, AverageDegreeWithinKAnd2K) {
    const auto s = test::empty_scenario();
    const auto g = build_prm(s, BuildConfig{500, ConnectionMode::fixed_k, 10, 0});
    const double avg = 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(g.vertex_count());
    EXPECT_GE(avg, 10.0);
    EXPECT_LE(avg, 20.0);
}

TEST(Prm, PrmStarConnectionCount) {
    const BuildConfig cfg{1000, ConnectionMode::prm_star, 0, 0};
    EXPECT_EQ(connection_count(cfg, 2), static_cast<std::size_t>(std::ceil(std::exp(1.0) * 1.5 * std::log(1000.0))));
    EXPECT_EQ(connection_count(cfg, 6), static_cast<std::size_t>(std::ceil(std::exp(1.0) * (7.0 / 6.0) * std::log(1000.0))));
}

TEST(Prm, InvalidConfigs) {
    const auto s = test::empty_scenario();
    EXPECT_THROW((void)build_prm(s, BuildConfig{1, ConnectionMode::fixed_k, 3, 0}), UsageError);
    EXPECT_THROW((void)build_prm(s, BuildConfig{10, ConnectionMode::fixed_k, 0, 0}), UsageError);
}

TEST(Prm, InfeasibleScenario) {
    const Scenario s(Bounds{{0, 0}, {1, 1}}, {Box{{-1, -1}, {2, 2}}}, 0.01);
    EXPECT_THROW((void)build_prm(s, BuildConfig{10, ConnectionMode::fixed_k, 3, 0}), InfeasibleError);
}

TEST(NearestK, TiesByIndexAndSkip) {
    const std::vector<Configuration> pts{{1, 0}, {0, 1}, {-1, 0}, {3, 0}};
    const std::vector<double> q{0, 0};
    EXPECT_EQ(nearest_k(pts, q, 2), (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(nearest_k(pts, q, 2, 0), (std::vector<std::size_t>{1, 2}));
    EXPECT_EQ(nearest_k(pts, q, 10).size(), 4u);
}

}  // namespace
}  // namespace rsec
