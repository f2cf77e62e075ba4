#ifndef CAPSHARE_GAME_HPP
#define CAPSHARE_GAME_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "capshare/equilibrium.hpp"
#include "capshare/graph.hpp"

namespace capshare {

using Rational = boost::rational<std::int64_t>;

/// Parses "3", "-2", "1/2" or a finite decimal such as "0.25".
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& r);

/// Common utility u_i = f(x_i + inflow_i) - c * x_i over actions {0..x_max}.
///
/// `benefit[y]` is f(y); the table must cover the largest possible argument,
/// x_max * n for an n-player game. q_star is the satiation point.
struct UtilitySpec {
  int x_max = 1;
  std::vector<Rational> benefit;
  Rational cost{1, 2};
  int q_star = 1;

  Rational f(int y) const;
};

struct SpecCheck {
  bool q_star_is_argmax = false;
  bool tail_non_increasing = false;
  std::vector<std::string> problems;

  bool ok() const { return q_star_is_argmax && tail_non_increasing; }
};

SpecCheck validate_spec(const UtilitySpec& spec);

/// Smallest maximiser of f(x) - c x over {0..x_max} whose surplus is
/// non-increasing from there to the end of the table; nullopt if none.
std::optional<int> satiation_point(int x_max, const std::vector<Rational>& benefit,
                                   const Rational& cost);

/// Builds a spec from a benefit table, padding it flat (repeating the last
/// value) up to players * x_max and deriving q_star. Throws
/// std::invalid_argument if c <= 0 or no valid satiation point exists.
UtilitySpec make_tabulated_spec(int x_max, std::vector<Rational> benefit, Rational cost,
                                std::size_t players);

/// X = {0,1}, f(0) = 0, f(y) = 1 for y >= 1. Requires 0 < c < 1.
UtilitySpec make_netflix_spec(Rational cost, std::size_t players);

/// f(y) = min(y, q_star) with 0 < c < 1, so q_star is the unique maximiser.
UtilitySpec make_satiation_spec(int q_star, int x_max, Rational cost, std::size_t players);

/// Actions plus nominations, both indexed by vertex id.
struct StrategyProfile {
  std::vector<int> actions;
  std::vector<VertexSet> nominations;

  friend bool operator==(const StrategyProfile&, const StrategyProfile&) = default;
};

/// Checks the strategy-space constraints: x_v in {0..x_max},
/// m_v a subset of N(v) with |m_v| = min{kappa(v), degree(v)}. Returns one
/// message per problem.
std::vector<std::string> profile_problems(const Graph& g, const Capacity& kappa,
                                          const StrategyProfile& profile, int x_max);

/// Sum of x_j over neighbours j that nominate v. v's own nominations play no
/// part.
int inflow(const Graph& g, const StrategyProfile& profile, Vertex v);
int inflow(const Graph& g, const std::vector<int>& actions,
           const std::vector<VertexSet>& nominations, Vertex v);

/// f(x_v + inflow) - c x_v. Throws std::out_of_range if the benefit table is
/// too short.
Rational utility(const Graph& g, const StrategyProfile& profile, const UtilitySpec& spec,
                 Vertex v);

struct NashVerdict {
  bool nash = true;
  std::optional<Vertex> deviator;
  int better_action = 0;
  Rational gain{0};
};

/// Pure Nash check over unilateral action deviations. Nomination deviations
/// never change the deviator's utility, so they are not enumerated.
NashVerdict is_nash(const Graph& g, const StrategyProfile& profile, const UtilitySpec& spec);

struct ProfileClass {
  bool specialised = false;
  bool balanced = false;
  bool nicely_balanced = false;
  std::optional<bool> nash;
  /// Supporting DP-subgraph when balanced.
  std::optional<DPSubgraph> witness;
  std::vector<std::string> notes;
};

ProfileClass classify(const Graph& g, const Capacity& kappa, const StrategyProfile& profile,
                      int q_star);

/// Drivers play q_star and nominate their H-neighbours; passengers play 0.
/// A passenger nominates min{kappa, degree} neighbours: with `nicely` its
/// lowest-id H-neighbour goes in first, then the set is padded with the
/// lowest-id remaining neighbours.
StrategyProfile build_profile(const Graph& g, const Capacity& kappa, const DPSubgraph& h,
                              const UtilitySpec& spec, bool nicely);

}  // namespace capshare

#endif  // CAPSHARE_GAME_HPP
