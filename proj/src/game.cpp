#include "capshare/game.hpp"

#include <algorithm>
#include <stdexcept>

#include "text.hpp"

namespace capshare {

Rational parse_rational(std::string_view text) {
  auto bad = [&] { return std::invalid_argument("not a rational number: '" + std::string(text) + "'"); };
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = detail::to_integer(text.substr(0, slash));
    auto den = detail::to_integer(text.substr(slash + 1));
    if (!num || !den || *den == 0) throw bad();
    return Rational(*num, *den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 12 || frac.find_first_not_of("0123456789") != std::string_view::npos) {
      throw bad();
    }
    bool negative = !whole.empty() && whole[0] == '-';
    if (negative) whole.remove_prefix(1);
    auto w = whole.empty() ? std::optional<long long>(0) : detail::to_integer(whole);
    auto f = detail::to_integer(frac);
    if (!w || !f || *w < 0) throw bad();
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Rational r = Rational(*w) + Rational(*f, scale);
    return negative ? -r : r;
  }
  auto whole = detail::to_integer(text);
  if (!whole) throw bad();
  return Rational(*whole);
}

std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational UtilitySpec::f(int y) const {
  if (y < 0 || static_cast<std::size_t>(y) >= benefit.size()) {
    throw std::out_of_range("benefit table covers 0.." + std::to_string(benefit.size() - 1) +
                            ", asked for f(" + std::to_string(y) + ")");
  }
  return benefit[static_cast<std::size_t>(y)];
}

namespace {

bool tail_non_increasing(const std::vector<Rational>& benefit, const Rational& cost, int from) {
  for (std::size_t y = static_cast<std::size_t>(from) + 1; y < benefit.size(); ++y) {
    Rational prev = benefit[y - 1] - cost * static_cast<std::int64_t>(y - 1);
    Rational here = benefit[y] - cost * static_cast<std::int64_t>(y);
    if (here > prev) return false;
  }
  return true;
}

}  // namespace

std::optional<int> satiation_point(int x_max, const std::vector<Rational>& benefit,
                                   const Rational& cost) {
  if (x_max < 0 || benefit.size() <= static_cast<std::size_t>(x_max)) return std::nullopt;
  Rational best = benefit[0];
  for (int x = 1; x <= x_max; ++x) best = std::max(best, benefit[x] - cost * x);
  for (int x = 0; x <= x_max; ++x) {
    if (benefit[x] - cost * x == best && tail_non_increasing(benefit, cost, x)) return x;
  }
  return std::nullopt;
}

SpecCheck validate_spec(const UtilitySpec& spec) {
  SpecCheck check;
  if (spec.cost <= 0) check.problems.push_back("cost must be positive");
  if (spec.x_max < 0 || spec.benefit.size() <= static_cast<std::size_t>(spec.x_max)) {
    check.problems.push_back("benefit table shorter than the action set");
    return check;
  }
  if (spec.q_star < 0 || spec.q_star > spec.x_max) {
    check.problems.push_back("q_star outside the action set");
    return check;
  }
  Rational at_q = spec.benefit[spec.q_star] - spec.cost * spec.q_star;
  check.q_star_is_argmax = true;
  for (int x = 0; x <= spec.x_max; ++x) {
    if (spec.benefit[x] - spec.cost * x > at_q) {
      check.q_star_is_argmax = false;
      check.problems.push_back("f(x) - c x at x=" + std::to_string(x) + " beats q_star");
      break;
    }
  }
  check.tail_non_increasing = tail_non_increasing(spec.benefit, spec.cost, spec.q_star);
  if (!check.tail_non_increasing) {
    check.problems.push_back("f(x) - c x increases somewhere beyond q_star");
  }
  if (spec.cost <= 0) check.q_star_is_argmax = false;
  return check;
}

UtilitySpec make_tabulated_spec(int x_max, std::vector<Rational> benefit, Rational cost,
                                std::size_t players) {
  if (cost <= 0) throw std::invalid_argument("cost must be positive");
  if (x_max < 0) throw std::invalid_argument("x_max must be nonnegative");
  if (benefit.empty()) throw std::invalid_argument("empty benefit table");
  std::size_t size = std::max<std::size_t>(players, 1) * static_cast<std::size_t>(x_max) + 1;
  if (benefit.size() < size) benefit.resize(size, benefit.back());
  auto q = satiation_point(x_max, benefit, cost);
  if (!q) throw std::invalid_argument("no satiation point: f(x) - c x never settles");
  return UtilitySpec{x_max, std::move(benefit), cost, *q};
}

UtilitySpec make_netflix_spec(Rational cost, std::size_t players) {
  if (cost <= 0 || cost >= 1) throw std::invalid_argument("netflix cost must lie in (0, 1)");
  return make_tabulated_spec(1, {Rational(0), Rational(1)}, cost, players);
}

UtilitySpec make_satiation_spec(int q_star, int x_max, Rational cost, std::size_t players) {
  if (q_star < 0 || q_star > x_max) throw std::invalid_argument("need 0 <= q_star <= x_max");
  if (cost <= 0 || cost >= 1) throw std::invalid_argument("cost must lie in (0, 1)");
  std::vector<Rational> benefit(static_cast<std::size_t>(q_star) + 1);
  for (int y = 0; y <= q_star; ++y) benefit[y] = y;
  return make_tabulated_spec(x_max, std::move(benefit), cost, players);
}

std::vector<std::string> profile_problems(const Graph& g, const Capacity& kappa,
                                          const StrategyProfile& profile, int x_max) {
  std::vector<std::string> problems;
  if (profile.actions.size() < g.id_bound() || profile.nominations.size() < g.id_bound()) {
    problems.push_back("profile does not cover every vertex");
    return problems;
  }
  for (Vertex v : g.vertices()) {
    int x = profile.actions[v];
    if (x < 0 || x > x_max) {
      problems.push_back(g.label(v) + ": action " + std::to_string(x) + " outside 0.." +
                         std::to_string(x_max));
    }
    const VertexSet& m = profile.nominations[v];
    for (Vertex w : m) {
      if (!g.has_edge(v, w)) {
        problems.push_back(g.label(v) + ": nominates non-neighbour " +
                           (w < g.id_bound() ? g.label(w) : std::to_string(w)));
      }
    }
    if (!std::is_sorted(m.begin(), m.end()) ||
        std::adjacent_find(m.begin(), m.end()) != m.end()) {
      problems.push_back(g.label(v) + ": nominations must be distinct");
    }
    auto need = static_cast<std::size_t>(kappa.effective(g, v));
    if (m.size() != need) {
      problems.push_back(g.label(v) + ": nominates " + std::to_string(m.size()) +
                         " neighbours, must nominate exactly " + std::to_string(need));
    }
  }
  return problems;
}

int inflow(const Graph& g, const std::vector<int>& actions,
           const std::vector<VertexSet>& nominations, Vertex v) {
  int total = 0;
  for (Vertex j : g.neighbours(v)) {
    const VertexSet& m = nominations[j];
    if (std::binary_search(m.begin(), m.end(), v)) total += actions[j];
  }
  return total;
}

int inflow(const Graph& g, const StrategyProfile& profile, Vertex v) {
  return inflow(g, profile.actions, profile.nominations, v);
}

Rational utility(const Graph& g, const StrategyProfile& profile, const UtilitySpec& spec,
                 Vertex v) {
  int x = profile.actions[v];
  return spec.f(x + inflow(g, profile, v)) - spec.cost * x;
}

NashVerdict is_nash(const Graph& g, const StrategyProfile& profile, const UtilitySpec& spec) {
  NashVerdict verdict;
  for (Vertex v : g.vertices()) {
    int received = inflow(g, profile, v);
    int x = profile.actions[v];
    Rational current = spec.f(x + received) - spec.cost * x;
    for (int alt = 0; alt <= spec.x_max; ++alt) {
      if (alt == x) continue;
      Rational gain = spec.f(alt + received) - spec.cost * alt - current;
      if (gain > 0) {
        verdict.nash = false;
        verdict.deviator = v;
        verdict.better_action = alt;
        verdict.gain = gain;
        return verdict;
      }
    }
  }
  return verdict;
}

ProfileClass classify(const Graph& g, const Capacity& kappa, const StrategyProfile& profile,
                      int q_star) {
  ProfileClass out;
  VertexSet drivers;
  VertexSet passengers;
  out.specialised = true;
  for (Vertex v : g.vertices()) {
    int x = profile.actions[v];
    if (x == q_star) {
      drivers.push_back(v);
    } else if (x == 0) {
      passengers.push_back(v);
    } else {
      out.specialised = false;
      out.notes.push_back(g.label(v) + " plays " + std::to_string(x) + ", neither 0 nor q*");
    }
  }
  if (!out.specialised) return out;

  DPSubgraph h;
  h.drivers = drivers;
  h.passengers = passengers;
  for (Vertex d : drivers) {
    for (Vertex p : profile.nominations[d]) h.edges.emplace_back(d, p);
  }
  std::sort(h.edges.begin(), h.edges.end());
  auto report = validate_dp_subgraph(g, kappa, h);
  for (const auto& violation : report.violations) out.notes.push_back(violation.detail);
  out.balanced = report.ok();
  if (!out.balanced) return out;

  out.nicely_balanced = true;
  for (Vertex p : passengers) {
    VertexSet servers = h.servers_of(p);
    const VertexSet& m = profile.nominations[p];
    bool returns = std::any_of(m.begin(), m.end(), [&](Vertex w) {
      return std::binary_search(servers.begin(), servers.end(), w);
    });
    if (!returns) {
      out.nicely_balanced = false;
      out.notes.push_back("passenger " + g.label(p) + " nominates none of its drivers");
    }
  }
  out.witness = std::move(h);
  return out;
}

StrategyProfile build_profile(const Graph& g, const Capacity& kappa, const DPSubgraph& h,
                              const UtilitySpec& spec, bool nicely) {
  StrategyProfile profile;
  profile.actions.assign(g.id_bound(), 0);
  profile.nominations.assign(g.id_bound(), {});
  for (Vertex d : h.drivers) {
    profile.actions[d] = spec.q_star;
    profile.nominations[d] = h.served_by(d);
  }
  for (Vertex p : h.passengers) {
    auto size = static_cast<std::size_t>(kappa.effective(g, p));
    VertexSet m;
    if (nicely && size > 0) {
      VertexSet servers = h.servers_of(p);
      if (!servers.empty()) m.push_back(servers.front());
    }
    for (Vertex w : g.neighbours(p)) {
      if (m.size() >= size) break;
      if (std::find(m.begin(), m.end(), w) == m.end()) m.push_back(w);
    }
    std::sort(m.begin(), m.end());
    profile.nominations[p] = std::move(m);
  }
  return profile;
}

}  // namespace capshare
