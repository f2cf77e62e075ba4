#include "capshare/dynamics.hpp"

#include <algorithm>
#include <map>

namespace capshare {

int best_action_response(const Graph& g, const Actions& x, const Nominations& m, int q_star,
                         Vertex v) {
  return std::max(q_star - inflow(g, x, m, v), 0);
}

Actions best_reply_step(const Graph& g, const Actions& x, const Nominations& m, int q_star) {
  Actions next = x;
  for (Vertex v : g.vertices()) next[v] = best_action_response(g, x, m, q_star, v);
  return next;
}

const char* to_string(Trace::Status status) {
  switch (status) {
    case Trace::Status::kSettled:
      return "settled";
    case Trace::Status::kCycle:
      return "cycle";
    case Trace::Status::kHorizonExhausted:
      return "horizon-exhausted";
  }
  return "?";
}

Trace evolve(const Graph& g, const Actions& x0, const Nominations& m, int q_star,
             std::size_t max_t) {
  if (max_t < 1) throw std::invalid_argument("evolve: horizon must be at least 1");
  Trace trace;
  trace.nominations = m;
  trace.horizon = max_t;
  trace.profiles.push_back(x0);

  std::map<Actions, std::size_t> first_seen{{x0, 0}};
  for (std::size_t t = 1; t <= max_t; ++t) {
    Actions next = best_reply_step(g, trace.profiles.back(), m, q_star);
    trace.profiles.push_back(next);
    auto [it, inserted] = first_seen.try_emplace(std::move(next), t);
    if (!inserted) {
      trace.entry = it->second;
      trace.period = t - it->second;
      trace.status = trace.period == 1 ? Trace::Status::kSettled : Trace::Status::kCycle;
      return trace;
    }
  }
  return trace;
}

std::optional<std::size_t> settles_in(const Trace& trace, const Actions& target) {
  if (!trace.settled()) return std::nullopt;
  if (trace.profiles[trace.entry] != target) return std::nullopt;
  return trace.entry;
}

StabilityVerdict is_action_stable(const Graph& g, const StrategyProfile& profile,
                                  const UtilitySpec& spec, int delta, std::size_t horizon) {
  if (delta < 1) throw std::invalid_argument("stability radius must be at least 1");
  StabilityVerdict verdict;
  const Actions& x = profile.actions;
  const Nominations& m = profile.nominations;

  for (Vertex v : g.vertices()) {
    int reply = best_action_response(g, x, m, spec.q_star, v);
    if (reply != x[v]) {
      verdict.not_fixed_point = true;
      verdict.counterexample = Perturbation{v, x[v], reply, Trace::Status::kHorizonExhausted, 0, 0};
      return verdict;
    }
  }

  for (Vertex v : g.vertices()) {
    for (int step = -delta; step <= delta; ++step) {
      int moved = x[v] + step;
      if (step == 0 || moved < 0 || moved > spec.x_max) continue;
      Actions start = x;
      start[v] = moved;
      Trace trace = evolve(g, start, m, spec.q_star, horizon);
      ++verdict.perturbations_checked;
      if (!settles_in(trace, x)) {
        verdict.counterexample = Perturbation{v, x[v], moved, trace.status, trace.entry, trace.period};
        return verdict;
      }
    }
  }
  verdict.stable = true;
  return verdict;
}

}  // namespace capshare
