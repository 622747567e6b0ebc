#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "mpsim/error.hpp"
#include "mpsim/strategy.hpp"

using namespace mpsim;

namespace {

std::vector<PathView> rtt_view(std::initializer_list<double> rtts) {
    std::vector<PathView> v;
    for (double r : rtts) v.push_back({path_at(v.size()), 100.0, r, 0.0, {}});
    return v;
}

std::vector<PathView> load_view(std::initializer_list<double> loads) {
    std::vector<PathView> v;
    for (double l : loads) v.push_back({path_at(v.size()), 100.0, 10.0, l, {}});
    return v;
}

std::vector<PathView> random_view(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> count(1, 6);
    // Coarse grid so ties are common.
    std::uniform_int_distribution<int> value(1, 12);
    std::bernoulli_distribution tagged(0.3);
    std::vector<PathView> v(static_cast<std::size_t>(count(rng)));
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i].id = path_at(i);
        v[i].capacity_mbps = 10.0 * value(rng);
        v[i].inst_rtt_ms = 10.0 * value(rng);
        v[i].prev_load_mbps = 5.0 * (value(rng) - 1);
        if (tagged(rng)) v[i].attributes.insert("high-cost");
    }
    return v;
}

bool contains(const std::vector<PathView>& v, PathId id) {
    return std::any_of(v.begin(), v.end(), [&](const PathView& p) { return p.id == id; });
}

}  // namespace

TEST(StrategyNames, ExactStringsInTableOrder) {
    const std::vector<std::string_view> expected = {"min_rtt",     "min_load",             "attribute_aware",
                                                    "round_robin", "weighted_round_robin", "epsilon_greedy",
                                                    "blest"};
    const auto names = strategy_names();
    EXPECT_EQ(std::vector<std::string_view>(names.begin(), names.end()), expected);
    for (auto n : expected) EXPECT_EQ(strategy_name(*parse_policy(n)), n);
    EXPECT_FALSE(parse_policy("bogus").has_value());
}

TEST(StrategyKind, Validation) {
    EXPECT_NO_THROW(validate(StrategyKind{Policy::EpsilonGreedy, 0.0}));
    EXPECT_NO_THROW(validate(StrategyKind{Policy::EpsilonGreedy, 1.0}));
    EXPECT_THROW(validate(StrategyKind{Policy::EpsilonGreedy, 1.5}), ValidationError);
    EXPECT_THROW(validate(StrategyKind{Policy::EpsilonGreedy, -0.1}), ValidationError);
    EXPECT_THROW(validate(StrategyKind{Policy::Blest, 0.1, 0.9}), ValidationError);
}

TEST(SelectMinRtt, Examples) {
    EXPECT_EQ(select_min_rtt(rtt_view({20, 50, 80})), PathId{1});
    EXPECT_EQ(select_min_rtt(rtt_view({30, 30, 80})), PathId{1});
    EXPECT_EQ(select_min_rtt(rtt_view({60, 50, 80})), PathId{2});
    EXPECT_THROW(select_min_rtt({}), ValidationError);
}

TEST(SelectMinLoad, Examples) {
    EXPECT_EQ(select_min_load(load_view({40, 10, 20})), PathId{2});
    EXPECT_EQ(select_min_load(load_view({0, 0, 0})), PathId{1});
    EXPECT_EQ(select_min_load(load_view({5, 5, 4.9})), PathId{3});
    EXPECT_THROW(select_min_load({}), ValidationError);
}

TEST(SelectAttributeAware, Examples) {
    auto v = rtt_view({20, 50, 80});
    v[2].attributes.insert("high-cost");
    EXPECT_EQ(select_attribute_aware(v, {"high-cost"}), PathId{1});

    auto w = rtt_view({90, 50, 20});
    w[2].attributes.insert("high-cost");
    EXPECT_EQ(select_attribute_aware(w, {"high-cost"}), PathId{2});
    EXPECT_EQ(select_attribute_aware(w, {}), select_min_rtt(w));
}

TEST(SelectAttributeAware, AllFilteredIsAnError) {
    auto v = rtt_view({20, 50});
    for (auto& p : v) p.attributes.insert("high-cost");
    try {
        select_attribute_aware(v, {"high-cost"});
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_STREQ(e.what(), "no admissible path");
    }
}

TEST(SelectRoundRobin, Examples) {
    StrategyState s;
    EXPECT_EQ(select_round_robin(s, 3), PathId{1});
    EXPECT_EQ(s.rr_cursor, 1U);

    StrategyState five{5, {}};
    EXPECT_EQ(select_round_robin(five, 3), PathId{3});
    EXPECT_EQ(five.rr_cursor, 6U);

    StrategyState cycle;
    std::vector<PathId> seq;
    for (int i = 0; i < 6; ++i) seq.push_back(select_round_robin(cycle, 3));
    EXPECT_EQ(seq, (std::vector<PathId>{PathId{1}, PathId{2}, PathId{3}, PathId{1}, PathId{2}, PathId{3}}));
}

TEST(WrrSchedule, DefaultCapacities) {
    const std::array<double, 3> caps{50, 100, 80};
    const auto schedule = wrr_schedule(caps);
    ASSERT_EQ(schedule.size(), 23U);  // (50+100+80)/10
    EXPECT_EQ(std::count(schedule.begin(), schedule.end(), PathId{1}), 5);
    EXPECT_EQ(std::count(schedule.begin(), schedule.end(), PathId{2}), 10);
    EXPECT_EQ(std::count(schedule.begin(), schedule.end(), PathId{3}), 8);
    EXPECT_EQ(schedule.front(), PathId{2});
}

TEST(WrrSchedule, SmallCases) {
    const std::array<double, 2> equal{10, 10};
    EXPECT_EQ(wrr_schedule(equal), (std::vector<PathId>{PathId{1}, PathId{2}}));
    const std::array<double, 1> single{30};
    EXPECT_EQ(wrr_schedule(single), (std::vector<PathId>{PathId{1}}));
    // 10.4 -> 10, 19.6 -> 20: weights 1:2.
    const std::array<double, 2> rounded{10.4, 19.6};
    EXPECT_EQ(wrr_schedule(rounded).size(), 3U);
}

TEST(WrrSchedule, Errors) {
    const std::array<double, 2> zeroish{0.3, 0.4};
    EXPECT_THROW(wrr_schedule(zeroish), ValidationError);
    const std::array<double, 2> negative{10, -1};
    EXPECT_THROW(wrr_schedule(negative), ValidationError);
}

TEST(WrrSchedule, SmoothInterleaving) {
    // Smooth WRR never lets a path drift a full slot from its fair share.
    const std::array<double, 3> caps{50, 100, 80};
    const auto schedule = wrr_schedule(caps);
    const std::array<double, 3> share{5.0 / 23, 10.0 / 23, 8.0 / 23};
    std::array<int, 3> counts{};
    for (std::size_t k = 0; k < schedule.size(); ++k) {
        ++counts[to_index(schedule[k])];
        for (std::size_t p = 0; p < 3; ++p) {
            EXPECT_LT(std::abs(counts[p] - share[p] * static_cast<double>(k + 1)), 1.0) << "slot " << k;
        }
    }
}

TEST(SelectWrr, CompositionAndPeriodicity) {
    const std::array<double, 3> caps{50, 100, 80};
    const auto schedule = wrr_schedule(caps);
    StrategyState s;
    EXPECT_EQ(select_wrr(s, schedule), PathId{2});

    StrategyState t;
    std::array<int, 3> counts{};
    for (int i = 0; i < 23; ++i) ++counts[to_index(select_wrr(t, schedule))];
    EXPECT_EQ(counts, (std::array<int, 3>{5, 10, 8}));
    for (int i = 0; i < 23; ++i) ++counts[to_index(select_wrr(t, schedule))];
    EXPECT_EQ(counts, (std::array<int, 3>{10, 20, 16}));
    EXPECT_EQ(t.rr_cursor, 46U);

    EXPECT_THROW(select_wrr(s, {}), ValidationError);
}

TEST(SelectEpsilonGreedy, ZeroEpsilonIsMinRtt) {
    std::mt19937_64 gen(7);
    StrategyState s{0, AgentRng(1, 2)};
    for (int i = 0; i < 1000; ++i) {
        const auto v = random_view(gen);
        ASSERT_EQ(select_epsilon_greedy(s, v, 0.0), select_min_rtt(v));
    }
}

TEST(SelectEpsilonGreedy, FullExplorationIsUniform) {
    const auto v = rtt_view({20, 50, 80});
    StrategyState s{0, AgentRng(3, 0)};
    constexpr int kDraws = 10000;
    std::array<int, 3> counts{};
    for (int i = 0; i < kDraws; ++i) ++counts[to_index(select_epsilon_greedy(s, v, 1.0))];
    const double expected = kDraws / 3.0;
    const double sigma = std::sqrt(kDraws * (1.0 / 3.0) * (2.0 / 3.0));
    for (int c : counts) EXPECT_LE(std::abs(c - expected), 3.0 * sigma) << c;
}

TEST(SelectEpsilonGreedy, ExploitFrequencyAtTenPercent) {
    const auto v = rtt_view({20, 50, 80});
    StrategyState s{0, AgentRng(11, 5)};
    constexpr int kDraws = 100000;
    int best = 0;
    for (int i = 0; i < kDraws; ++i) best += select_epsilon_greedy(s, v, 0.1) == PathId{1};
    // P(path 1) = (1 - eps) + eps / 3.
    EXPECT_NEAR(static_cast<double>(best) / kDraws, 0.9 + 0.1 / 3.0, 0.01);
}

TEST(SelectEpsilonGreedy, ReproducibleForFixedSeed) {
    const auto v = rtt_view({20, 50, 80});
    StrategyState a{0, AgentRng(99, 4)};
    StrategyState b{0, AgentRng(99, 4)};
    StrategyState other{0, AgentRng(99, 5)};
    std::vector<PathId> seq_a, seq_b, seq_other;
    for (int i = 0; i < 500; ++i) {
        seq_a.push_back(select_epsilon_greedy(a, v, 0.3));
        seq_b.push_back(select_epsilon_greedy(b, v, 0.3));
        seq_other.push_back(select_epsilon_greedy(other, v, 0.3));
    }
    EXPECT_EQ(seq_a, seq_b);
    EXPECT_NE(seq_a, seq_other);
}

TEST(SelectBlest, Examples) {
    EXPECT_EQ(select_blest(rtt_view({20, 50, 80}), 1.5), PathId{1});
    EXPECT_EQ(select_blest(rtt_view({20, 28, 80}), 1.5), PathId{1});
    EXPECT_EQ(select_blest(rtt_view({40, 40, 40}), 1.5), PathId{1});
    EXPECT_THROW(select_blest({}, 1.5), ValidationError);
}

TEST(SelectorProperty, ReturnIdsFromTheView) {
    std::mt19937_64 gen(2024);
    StrategyState s{0, AgentRng(5, 5)};
    const std::vector<PathId> schedule{PathId{1}};
    for (int i = 0; i < 2000; ++i) {
        const auto v = random_view(gen);
        EXPECT_TRUE(contains(v, select_min_rtt(v)));
        EXPECT_TRUE(contains(v, select_min_load(v)));
        EXPECT_TRUE(contains(v, select_round_robin(s, v.size())));
        EXPECT_TRUE(contains(v, select_epsilon_greedy(s, v, 0.5)));
        EXPECT_TRUE(contains(v, select_blest(v, 1.5)));
        EXPECT_TRUE(contains(v, select_wrr(s, schedule)));
    }
}

TEST(SelectorProperty, AttributeAwareNeverPicksForbidden) {
    std::mt19937_64 gen(77);
    for (int i = 0; i < 2000; ++i) {
        const auto v = random_view(gen);
        const bool any_admissible =
            std::any_of(v.begin(), v.end(), [](const PathView& p) { return !p.attributes.contains("high-cost"); });
        if (!any_admissible) {
            EXPECT_THROW(select_attribute_aware(v, {"high-cost"}), ValidationError);
            continue;
        }
        const PathId id = select_attribute_aware(v, {"high-cost"});
        EXPECT_FALSE(v[to_index(id)].attributes.contains("high-cost"));
    }
}

TEST(SelectorProperty, BlestAgreesWithMinRtt) {
    // The filtered set always contains the overall argmin, so the two agree.
    std::mt19937_64 gen(31);
    std::uniform_real_distribution<double> factor(1.0, 3.0);
    for (int i = 0; i < 2000; ++i) {
        const auto v = random_view(gen);
        ASSERT_EQ(select_blest(v, factor(gen)), select_min_rtt(v));
    }
}

TEST(SelectorProperty, PureSelectorsAreDeterministic) {
    std::mt19937_64 gen(8);
    for (int i = 0; i < 500; ++i) {
        const auto v = random_view(gen);
        EXPECT_EQ(select_min_rtt(v), select_min_rtt(v));
        EXPECT_EQ(select_min_load(v), select_min_load(v));
        EXPECT_EQ(select_blest(v, 1.5), select_blest(v, 1.5));
    }
}

TEST(PathSelector, CursorOffsets) {
    const Topology t = default_topology();
    const PathSelector rr({Policy::RoundRobin}, t, {});
    EXPECT_EQ(rr.initial_cursor(0), 0U);
    EXPECT_EQ(rr.initial_cursor(17), 0U);
    const PathSelector wrr({Policy::WeightedRoundRobin}, t, {});
    EXPECT_EQ(wrr.schedule().size(), 23U);
    EXPECT_EQ(wrr.initial_cursor(5), 5U);
    EXPECT_EQ(wrr.initial_cursor(25), 2U);
}
