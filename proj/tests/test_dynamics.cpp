#include <gtest/gtest.h>

#include <random>

#include "capshare/dynamics.hpp"
#include "capshare/equilibrium.hpp"
#include "capshare/search.hpp"
#include "support.hpp"

namespace capshare {
namespace {

const Rational kHalf(1, 2);

bool leq(const Actions& a, const Actions& b) {
  for (std::size_t v = 0; v < a.size(); ++v) {
    if (a[v] > b[v]) return false;
  }
  return true;
}

// Every best-reply fixed point in {0..q}^n, by odometer.
std::vector<Actions> all_fixed_points(const Graph& g, const Nominations& m, int q) {
  std::vector<Actions> out;
  Actions x(g.id_bound(), 0);
  while (true) {
    if (best_reply_step(g, x, m, q) == x) out.push_back(x);
    std::size_t v = 0;
    while (v < x.size() && x[v] == q) x[v++] = 0;
    if (v == x.size()) break;
    ++x[v];
  }
  return out;
}

struct NashInstance {
  Graph g;
  Nominations m;
  Actions x_star;
};

// Random graph + nominations + one of its fixed points, n <= 6.
NashInstance random_nash_instance(std::mt19937_64& rng, int q) {
  while (true) {
    std::size_t n = 2 + rng() % 5;
    Graph g = testing::random_graph(rng, n, 0.4);
    Capacity kappa = testing::random_kappa(rng, g, 1, 3);
    Nominations m = random_nominations(g, kappa, rng);
    auto points = all_fixed_points(g, m, q);
    if (points.empty()) continue;
    return {g, m, points[rng() % points.size()]};
  }
}

Actions random_below(std::mt19937_64& rng, const Actions& top) {
  Actions x(top.size());
  for (std::size_t v = 0; v < top.size(); ++v) x[v] = static_cast<int>(rng() % (top[v] + 1));
  return x;
}

TEST(BestActionResponse, Examples) {
  Graph g = testing::six_player_graph();
  Nominations m = testing::six_player_nominations();
  Actions x0{2, 1, 3, 1, 2, 1};
  EXPECT_EQ(best_action_response(g, x0, m, 4, *g.find("i")), 3);

  Graph k2 = complete_graph(2);
  EXPECT_EQ(best_action_response(k2, {5, 0}, {{1}, {0}}, 4, 1), 0);

  Graph lone = parse_graph("node a\n");
  EXPECT_EQ(best_action_response(lone, {2}, {{}}, 4, 0), 4);
}

TEST(BestReplyStep, Examples) {
  Graph k2 = complete_graph(2);
  Nominations mutual{{1}, {0}};
  EXPECT_EQ(best_reply_step(k2, {0, 0}, mutual, 1), (Actions{1, 1}));
  EXPECT_EQ(best_reply_step(k2, {1, 1}, mutual, 1), (Actions{0, 0}));

  Graph g = testing::six_player_graph();
  EXPECT_EQ(best_reply_step(g, {2, 1, 3, 1, 2, 1}, testing::six_player_nominations(), 4),
            (Actions{3, 2, 3, 1, 2, 1}));
}

TEST(BestReplyStep, StaysWithinZeroToQ) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    Graph g = testing::random_graph(rng, 1 + rng() % 8, 0.4);
    Nominations m = random_nominations(g, testing::random_kappa(rng, g, 0, 3), rng);
    Actions x(g.id_bound());
    for (auto& a : x) a = static_cast<int>(rng() % 9);
    for (int a : best_reply_step(g, x, m, 4)) {
      EXPECT_GE(a, 0);
      EXPECT_LE(a, 4);
    }
  }
}

TEST(Evolve, TwoCycleOnAnEdge) {
  Graph k2 = complete_graph(2);
  Trace t = evolve(k2, {0, 0}, {{1}, {0}}, 1);
  EXPECT_EQ(t.status, Trace::Status::kCycle);
  EXPECT_EQ(t.entry, 0u);
  EXPECT_EQ(t.period, 2u);
  EXPECT_EQ(t.profiles.size(), 3u);
  EXPECT_FALSE(settles_in(t, {1, 1}));
  EXPECT_FALSE(settles_in(t, {0, 0}));
}

TEST(Evolve, NicelyBalancedProfileIsSettledAtOnce) {
  Graph g = testing::star5();
  Capacity kappa = Capacity::uniform(g, 3);
  UtilitySpec spec = make_netflix_spec(kHalf, 5);
  StrategyProfile p = build_profile(g, kappa, find_dp_subgraph(g, kappa), spec, true);
  Trace t = evolve(g, p.actions, p.nominations, spec.q_star);
  EXPECT_TRUE(t.settled());
  EXPECT_EQ(settles_in(t, p.actions), 0u);
  EXPECT_FALSE(settles_in(t, Actions(5, 0)));
}

TEST(Evolve, PerturbedNonSpecialisedEquilibriumUnravels) {
  Graph g = testing::six_player_graph();
  Trace t = evolve(g, {2, 1, 3, 1, 2, 1}, testing::six_player_nominations(), 4);
  EXPECT_EQ(t.status, Trace::Status::kCycle);
  EXPECT_EQ(t.period, 2u);
  EXPECT_EQ(t.entry, 12u);
  EXPECT_EQ(t.profiles[12], Actions(6, 0));
  EXPECT_EQ(t.profiles[13], Actions(6, 4));
}

TEST(Evolve, HorizonExhaustion) {
  Graph k2 = complete_graph(2);
  Trace t = evolve(k2, {0, 0}, {{1}, {0}}, 1, 1);
  EXPECT_EQ(t.status, Trace::Status::kHorizonExhausted);
  EXPECT_EQ(t.profiles.size(), 2u);
  EXPECT_THROW(evolve(k2, {0, 0}, {{1}, {0}}, 1, 0), std::invalid_argument);
}

TEST(Evolve, SettlesLate) {
  // a -> b only: b drops to 0 once a has bought.
  Graph g = complete_graph(2);
  Trace t = evolve(g, {0, 0}, {{1}, {}}, 2);
  EXPECT_TRUE(t.settled());
  EXPECT_EQ(settles_in(t, {2, 0}), 2u);
  EXPECT_EQ(t.profiles[1], (Actions{2, 2}));
  EXPECT_EQ(t.profiles[2], (Actions{2, 0}));
}

TEST(Evolve, TraceInvariants) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    Graph g = testing::random_graph(rng, 1 + rng() % 7, 0.4);
    Nominations m = random_nominations(g, testing::random_kappa(rng, g, 0, 3), rng);
    int q = 1 + static_cast<int>(rng() % 4);
    Actions x0(g.id_bound());
    for (auto& a : x0) a = static_cast<int>(rng() % (q + 1));
    Trace t = evolve(g, x0, m, q);
    ASSERT_NE(t.status, Trace::Status::kHorizonExhausted);
    for (std::size_t s = 1; s < t.profiles.size(); ++s) {
      EXPECT_EQ(t.profiles[s], best_reply_step(g, t.profiles[s - 1], m, q));
    }
    EXPECT_EQ(t.profiles.back(), t.profiles[t.entry]);
    EXPECT_EQ(t.profiles.size(), t.entry + t.period + 1);
    if (t.status == Trace::Status::kCycle) EXPECT_GE(t.period, 2u);
    if (t.settled()) {
      EXPECT_EQ(best_reply_step(g, t.profiles[t.entry], m, q), t.profiles[t.entry]);
    }
  }
}

TEST(FixedPoints, CoincideWithNashActionProfiles) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 500; ++trial) {
    std::size_t n = 1 + rng() % 7;
    Graph g = testing::random_graph(rng, n, 0.4, trial % 3 != 0);
    Capacity kappa = testing::random_kappa(rng, g, 0, 3);
    UtilitySpec spec = trial % 2 ? testing::q3_spec(n) : make_satiation_spec(2, 3, kHalf, n);
    StrategyProfile p;
    p.nominations = random_nominations(g, kappa, rng);
    p.actions.resize(n);
    for (auto& a : p.actions) a = static_cast<int>(rng() % (spec.x_max + 1));
    if (rng() % 2) {
      Trace t = evolve(g, p.actions, p.nominations, spec.q_star);
      p.actions = t.profiles.back();
    }
    bool fixed = best_reply_step(g, p.actions, p.nominations, spec.q_star) == p.actions;
    EXPECT_EQ(fixed, is_nash(g, p, spec).nash);
  }
}

TEST(Sandwich, AlternatesAroundEquilibrium) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 300; ++trial) {
    int q = 1 + static_cast<int>(rng() % 4);
    NashInstance inst = random_nash_instance(rng, q);
    Actions x = random_below(rng, inst.x_star);
    Actions cur = x;
    for (int t = 0; t <= 50; ++t) {
      Actions next = best_reply_step(inst.g, cur, inst.m, q);
      if (t % 2 == 0) {
        ASSERT_TRUE(leq(cur, inst.x_star) && leq(inst.x_star, next));
      } else {
        ASSERT_TRUE(leq(next, inst.x_star) && leq(inst.x_star, cur));
      }
      cur = next;
    }
  }
}

TEST(Sandwich, NonzeroAndBelowSatiationPattern) {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 300; ++trial) {
    int q = 1 + static_cast<int>(rng() % 4);
    NashInstance inst = random_nash_instance(rng, q);
    Actions x = random_below(rng, inst.x_star);
    if (x == inst.x_star) continue;
    Trace t = evolve(inst.g, x, inst.m, q, 50);
    for (std::size_t s = 0; s < t.profiles.size(); ++s) {
      for (Vertex v : inst.g.vertices()) {
        if (s % 2 == 1 && inst.x_star[v] > 0) EXPECT_NE(t.profiles[s][v], 0);
        if (s % 2 == 0 && inst.x_star[v] < q) EXPECT_NE(t.profiles[s][v], q);
      }
    }
  }
}

TEST(Sandwich, UnnominatedVertexReturnsToSatiationOnEvenSteps) {
  // Nobody nominates a, so a's best reply is q whatever it played before:
  // x(0)_a < q does not keep x(2)_a away from q.
  Graph g = complete_graph(2);
  Nominations m{{1}, {}};
  Actions x_star{3, 0};
  ASSERT_EQ(best_reply_step(g, x_star, m, 3), x_star);
  Trace t = evolve(g, {2, 0}, m, 3);
  ASSERT_GE(t.profiles.size(), 3u);
  EXPECT_EQ(t.profiles[2][0], 3);
}

TEST(Reaction, NomineesAnswerChangesOfTheirNominator) {
  std::mt19937_64 rng(53);
  std::size_t checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    int q = 1 + static_cast<int>(rng() % 4);
    NashInstance inst = random_nash_instance(rng, q);
    Actions x = random_below(rng, inst.x_star);
    std::vector<Actions> xs{x};
    for (int t = 0; t < 30; ++t) xs.push_back(best_reply_step(inst.g, xs.back(), inst.m, q));
    for (std::size_t t = 1; t + 1 < xs.size(); ++t) {
      for (Vertex i : inst.g.vertices()) {
        for (Vertex l : inst.m[i]) {
          if (xs[t][l] > 0 && xs[t][i] > xs[t - 1][i]) {
            EXPECT_LT(xs[t + 1][l], xs[t][l]);
            ++checked;
          }
          if (xs[t + 1][l] > 0 && xs[t][i] < xs[t - 1][i]) {
            EXPECT_GT(xs[t + 1][l], xs[t][l]);
            ++checked;
          }
        }
      }
    }
  }
  EXPECT_GT(checked, 100u);
}

TEST(Stability, PathWithSinglyServedPassengerIsUnstable) {
  Graph g = testing::path3();
  Capacity kappa({1, 2, 1});
  UtilitySpec spec = make_netflix_spec(kHalf, 3);
  DPSubgraph h = make_dp_subgraph(g, {1}, {{1, 0}, {1, 2}});
  ASSERT_TRUE(validate_dp_subgraph(g, kappa, h).ok());
  StrategyProfile p = build_profile(g, kappa, h, spec, true);
  StabilityVerdict v = is_action_stable(g, p, spec);
  EXPECT_FALSE(v.stable);
  EXPECT_FALSE(v.not_fixed_point);
  ASSERT_TRUE(v.counterexample);
  EXPECT_EQ(v.counterexample->status, Trace::Status::kCycle);
}

TEST(Stability, FourCycleWithDoublyServedPassengersIsStable) {
  Graph g = testing::cycle4();
  Capacity kappa = Capacity::uniform(g, 2);
  UtilitySpec spec = make_satiation_spec(2, 3, kHalf, 4);
  DPSubgraph h = make_dp_subgraph(g, {0, 2}, {{0, 1}, {0, 3}, {2, 1}, {2, 3}});
  StrategyProfile p = build_profile(g, kappa, h, spec, true);
  StabilityVerdict v = is_action_stable(g, p, spec);
  EXPECT_TRUE(v.stable);
  // Drivers: 1 and 3 are admissible; passengers: only 1.
  EXPECT_EQ(v.perturbations_checked, 6u);
  // A passenger jumping to 2 satiates both drivers at once and the square
  // falls into the all-0 / all-2 cycle, so larger radii can fail.
  StabilityVerdict wide = is_action_stable(g, p, spec, 3);
  EXPECT_FALSE(wide.stable);
  ASSERT_TRUE(wide.counterexample);
  EXPECT_EQ(wide.counterexample->to, 2);
  EXPECT_EQ(wide.counterexample->from, 0);
}

TEST(Stability, NonSpecialisedEquilibriumIsUnstable) {
  Graph g = testing::six_player_graph();
  UtilitySpec spec = make_satiation_spec(4, 4, kHalf, 6);
  StrategyProfile p{{3, 1, 3, 1, 2, 1}, testing::six_player_nominations()};
  StabilityVerdict v = is_action_stable(g, p, spec);
  EXPECT_FALSE(v.stable);
  ASSERT_TRUE(v.counterexample);
}

TEST(Stability, NonFixedPointReportsTheSelfDeviation) {
  Graph g = complete_graph(2);
  UtilitySpec spec = make_netflix_spec(kHalf, 2);
  StabilityVerdict v = is_action_stable(g, StrategyProfile{{0, 0}, {{1}, {0}}}, spec);
  EXPECT_FALSE(v.stable);
  EXPECT_TRUE(v.not_fixed_point);
  ASSERT_TRUE(v.counterexample);
  EXPECT_EQ(v.counterexample->vertex, 0u);
  EXPECT_EQ(v.counterexample->to, 1);
  EXPECT_THROW(is_action_stable(g, StrategyProfile{{0, 0}, {{1}, {0}}}, spec, 0),
               std::invalid_argument);
}

TEST(Stability, EveryNonSpecialisedEquilibriumFailsAtUnitPerturbation) {
  std::size_t found = 0;
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 40 && found < 15; ++trial) {
    std::size_t n = 3 + rng() % 5;
    Graph g = testing::random_graph(rng, n, 0.5);
    Capacity kappa = testing::random_kappa(rng, g, 1, 3);
    UtilitySpec spec = make_satiation_spec(3, 3, kHalf, n);
    for (const auto& p : search_nonspecialised_equilibria(g, kappa, spec, rng(), 5)) {
      ++found;
      EXPECT_FALSE(is_action_stable(g, p, spec).stable);
    }
  }
  EXPECT_GE(found, 1u);
}

}  // namespace
}  // namespace capshare
