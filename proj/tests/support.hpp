// Fixtures and brute-force oracles shared by the test suites. The oracles
// here deliberately avoid the library's algorithms (no flow, no peeling) so
// they can be used to check them.
#ifndef CAPSHARE_TESTS_SUPPORT_HPP
#define CAPSHARE_TESTS_SUPPORT_HPP

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "capshare/game.hpp"
#include "capshare/graph.hpp"

namespace capshare::testing {

// Star with centre l: ids l=0, h=1, i=2, j=3, k=4.
inline Graph star5() { return parse_graph("l h\nl i\nl j\nl k\n"); }

// Two stars with joined centres: I=0, i1..i3=1..3, J=4, j1..j3=5..7.
inline Graph double_star() {
  return parse_graph("I i1\nI i2\nI i3\nI J\nJ j1\nJ j2\nJ j3\n");
}

// Centres I and J, each with `leaves` leaves, joined by an edge.
inline Graph generalized_double_star(int leaves) {
  std::string text = "I J\n";
  for (int t = 1; t <= leaves; ++t) text += "I i" + std::to_string(t) + "\n";
  for (int t = 1; t <= leaves; ++t) text += "J j" + std::to_string(t) + "\n";
  return parse_graph(text);
}

// The six-person network that reproduces the best-reply table, players
// ordered i, j, k, l, m, n (ids 0..5).
inline Graph six_player_graph() {
  return parse_graph(
      "node i\nnode j\nnode k\nnode l\nnode m\nnode n\n"
      "j i\nj k\nj l\nj m\nj n\ni n\nk l\nl m\nm n\n");
}

inline std::vector<VertexSet> six_player_nominations() {
  // i->j, j->{k,m,n}, k->l, l->m, m->n, n->i
  return {{1}, {2, 4, 5}, {3}, {4}, {5}, {0}};
}

inline Capacity six_player_kappa() { return Capacity({1, 3, 1, 1, 1, 1}); }

inline Graph path3() { return parse_graph("a b\nb c\n"); }

inline Graph cycle4() { return Graph::with_vertices(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}); }

inline VertexSet ids(const Graph& g, std::initializer_list<const char*> labels) {
  VertexSet out;
  for (const char* l : labels) out.push_back(*g.find(l));
  std::sort(out.begin(), out.end());
  return out;
}

// Random graph on n vertices; connected when `connected` (random spanning
// tree plus extra edges with probability p).
inline Graph random_graph(std::mt19937_64& rng, std::size_t n, double p, bool connected = true) {
  std::vector<Edge> edges;
  std::set<Edge> seen;
  std::bernoulli_distribution coin(p);
  if (connected) {
    for (Vertex v = 1; v < n; ++v) {
      std::uniform_int_distribution<Vertex> parent(0, v - 1);
      Edge e(parent(rng), v);
      seen.insert(e);
      edges.push_back(e);
    }
  }
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      Edge e(u, v);
      if (!seen.count(e) && coin(rng)) {
        seen.insert(e);
        edges.push_back(e);
      }
    }
  }
  return Graph::with_vertices(n, edges);
}

inline Capacity random_kappa(std::mt19937_64& rng, const Graph& g, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  std::vector<int> k(g.id_bound());
  for (auto& x : k) x = dist(rng);
  return Capacity(k);
}

// Reachability by repeated relaxation over the edge list.
inline bool connected_by_relaxation(const Graph& g) {
  auto vs = g.vertices();
  if (vs.empty()) return true;
  std::vector<bool> reach(g.id_bound(), false);
  reach[vs.front()] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Edge& e : g.edges()) {
      if (reach[e.u] != reach[e.v]) {
        reach[e.u] = reach[e.v] = true;
        changed = true;
      }
    }
  }
  return std::all_of(vs.begin(), vs.end(), [&](Vertex v) { return reach[v]; });
}

// D-set test by backtracking over each driver's choice of served passengers.
inline bool is_d_set_backtracking(const Graph& g, const Capacity& kappa, const VertexSet& d) {
  std::vector<bool> is_driver(g.id_bound(), false);
  for (Vertex v : d) is_driver[v] = true;
  std::vector<int> covered(g.id_bound(), 0);

  std::function<bool(std::size_t)> assign = [&](std::size_t idx) -> bool {
    if (idx == d.size()) {
      for (Vertex v : g.vertices()) {
        if (!is_driver[v] && covered[v] == 0) return false;
      }
      return true;
    }
    Vertex driver = d[idx];
    std::vector<Vertex> options;
    for (Vertex w : g.neighbours(driver)) {
      if (!is_driver[w]) options.push_back(w);
    }
    std::size_t need = std::min<std::size_t>(kappa[driver], g.degree(driver));
    if (options.size() < need) return false;
    std::vector<bool> pick(options.size(), false);
    std::fill(pick.begin(), pick.begin() + need, true);
    do {
      for (std::size_t t = 0; t < options.size(); ++t) covered[options[t]] += pick[t];
      bool ok = assign(idx + 1);
      for (std::size_t t = 0; t < options.size(); ++t) covered[options[t]] -= pick[t];
      if (ok) return true;
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return false;
  };
  return assign(0);
}

// All subsets of present vertices, as sorted vectors.
inline std::vector<VertexSet> all_subsets(const Graph& g) {
  auto vs = g.vertices();
  std::vector<VertexSet> out;
  for (std::uint32_t mask = 0; mask < (1u << vs.size()); ++mask) {
    VertexSet s;
    for (std::size_t t = 0; t < vs.size(); ++t) {
      if (mask >> t & 1u) s.push_back(vs[t]);
    }
    out.push_back(std::move(s));
  }
  return out;
}

inline std::vector<VertexSet> maximal_independent_sets(const Graph& g) {
  std::vector<VertexSet> out;
  for (const auto& s : all_subsets(g)) {
    std::vector<bool> in(g.id_bound(), false);
    for (Vertex v : s) in[v] = true;
    bool independent = true;
    for (const Edge& e : g.edges()) independent &= !(in[e.u] && in[e.v]);
    if (!independent) continue;
    bool maximal = true;
    for (Vertex v : g.vertices()) {
      if (in[v]) continue;
      auto nb = g.neighbours(v);
      if (std::none_of(nb.begin(), nb.end(), [&](Vertex w) { return in[w]; })) maximal = false;
    }
    if (maximal) out.push_back(s);
  }
  return out;
}

// Utility straight from the definition, scanning every vertex.
inline Rational direct_utility(const Graph& g, const std::vector<int>& x,
                               const std::vector<VertexSet>& m, const UtilitySpec& spec,
                               Vertex i) {
  int received = 0;
  for (Vertex j : g.vertices()) {
    if (j != i && g.has_edge(i, j) && std::count(m[j].begin(), m[j].end(), i)) received += x[j];
  }
  return spec.benefit.at(static_cast<std::size_t>(x[i] + received)) - spec.cost * x[i];
}

inline bool brute_force_nash(const Graph& g, const StrategyProfile& p, const UtilitySpec& spec) {
  for (Vertex i : g.vertices()) {
    Rational base = direct_utility(g, p.actions, p.nominations, spec, i);
    for (int a = 0; a <= spec.x_max; ++a) {
      auto x = p.actions;
      x[i] = a;
      if (direct_utility(g, x, p.nominations, spec, i) > base) return false;
    }
  }
  return true;
}

// f = (0, 2, 4, 6) flat afterwards, c = 1: surplus 0,1,2,3,2,1,... so q* = 3.
inline UtilitySpec q3_spec(std::size_t players) {
  return make_tabulated_spec(5, {Rational(0), Rational(2), Rational(4), Rational(6)}, Rational(1),
                             players);
}

}  // namespace capshare::testing

#endif  // CAPSHARE_TESTS_SUPPORT_HPP
