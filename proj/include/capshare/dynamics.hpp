#ifndef CAPSHARE_DYNAMICS_HPP
#define CAPSHARE_DYNAMICS_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "capshare/game.hpp"
#include "capshare/graph.hpp"

namespace capshare {

using Actions = std::vector<int>;
using Nominations = std::vector<VertexSet>;

/// max{q_star - inflow(v), 0}.
int best_action_response(const Graph& g, const Actions& x, const Nominations& m, int q_star,
                         Vertex v);

/// Synchronous best reply: every present vertex updates at once. Ids not in
/// the graph keep their value.
Actions best_reply_step(const Graph& g, const Actions& x, const Nominations& m, int q_star);

inline constexpr std::size_t kDefaultHorizon = 10'000;

/// Best action evolution x(0), x(1), ... with fixed nominations.
struct Trace {
  enum class Status { kSettled, kCycle, kHorizonExhausted };

  std::vector<Actions> profiles;
  Nominations nominations;
  Status status = Status::kHorizonExhausted;
  /// First time the recurring state appears (t0 when settled).
  std::size_t entry = 0;
  /// 1 when settled, >= 2 for a cycle, 0 when the horizon ran out.
  std::size_t period = 0;
  std::size_t horizon = 0;

  bool settled() const { return status == Status::kSettled; }
};

const char* to_string(Trace::Status status);

/// Iterates best_reply_step until a state repeats or max_t steps are taken.
/// profiles holds x(0)..x(T) where x(T) is the first repeated state.
Trace evolve(const Graph& g, const Actions& x0, const Nominations& m, int q_star,
             std::size_t max_t = kDefaultHorizon);

/// Least t0 with x(t) = target for all t >= t0.
std::optional<std::size_t> settles_in(const Trace& trace, const Actions& target);

struct Perturbation {
  Vertex vertex = 0;
  int from = 0;
  int to = 0;
  Trace::Status status = Trace::Status::kHorizonExhausted;
  std::size_t entry = 0;
  std::size_t period = 0;
};

struct StabilityVerdict {
  bool stable = false;
  /// The profile is not a best-reply fixed point; `counterexample` then
  /// names the vertex whose best reply differs (to = its best reply).
  bool not_fixed_point = false;
  std::optional<Perturbation> counterexample;
  std::size_t perturbations_checked = 0;
};

/// Action stability: every single-vertex change of size <= delta that stays
/// inside {0..x_max} must evolve back to the profile. Failing at size 1
/// already fails every delta, so delta = 1 decides the property.
StabilityVerdict is_action_stable(const Graph& g, const StrategyProfile& profile,
                                  const UtilitySpec& spec, int delta = 1,
                                  std::size_t horizon = kDefaultHorizon);

}  // namespace capshare

#endif  // CAPSHARE_DYNAMICS_HPP
