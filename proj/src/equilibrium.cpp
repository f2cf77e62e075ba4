#include "capshare/equilibrium.hpp"

#include <algorithm>
#include <cassert>
#include <iterator>

namespace capshare {

namespace {

struct TopUp {
  Vertex vertex;
  int target;       // min{kappa, degree} in the graph the frame was cut from
  VertexSet cross;  // neighbours inside the removed star's leaves
};

struct Frame {
  Vertex centre;
  VertexSet leaves;
  std::vector<TopUp> top_ups;
};

void erase_sorted(std::vector<Vertex>& xs, Vertex v) {
  auto it = std::lower_bound(xs.begin(), xs.end(), v);
  if (it != xs.end() && *it == v) xs.erase(it);
}

// Star peeling on one component. `adj` is the working graph and is consumed.
void peel_component(const VertexSet& component, const Capacity& kappa,
                    std::vector<std::vector<Vertex>>& adj, DPSubgraph& out) {
  std::vector<bool> alive(adj.size(), false);
  for (Vertex v : component) alive[v] = true;
  std::size_t remaining = component.size();

  std::vector<Frame> frames;
  while (remaining > 0) {
    auto fits = std::find_if(component.begin(), component.end(), [&](Vertex v) {
      return alive[v] && adj[v].size() <= static_cast<std::size_t>(kappa[v]);
    });

    if (fits == component.end()) {
      // Every vertex exceeds its capacity: trim the lowest-id one.
      Vertex i = *std::find_if(component.begin(), component.end(),
                               [&](Vertex v) { return alive[v]; });
      std::size_t excess = adj[i].size() - static_cast<std::size_t>(kappa[i]);
      for (std::size_t k = 0; k < excess; ++k) {
        Vertex w = adj[i].back();
        adj[i].pop_back();
        erase_sorted(adj[w], i);
      }
      continue;
    }

    Vertex i = *fits;
    Frame frame{i, adj[i], {}};
    std::vector<bool> in_star(adj.size(), false);
    in_star[i] = true;
    for (Vertex leaf : frame.leaves) in_star[leaf] = true;

    for (Vertex j : component) {
      if (!alive[j] || in_star[j]) continue;
      VertexSet cross;
      for (Vertex w : adj[j]) {
        if (in_star[w]) cross.push_back(w);
      }
      if (cross.empty()) continue;
      int target = std::min<int>(kappa[j], static_cast<int>(adj[j].size()));
      frame.top_ups.push_back({j, target, std::move(cross)});
    }

    auto drop = [&](Vertex v) {
      for (Vertex w : adj[v]) erase_sorted(adj[w], v);
      adj[v].clear();
      alive[v] = false;
      --remaining;
    };
    drop(i);
    for (Vertex leaf : frame.leaves) drop(leaf);
    frames.push_back(std::move(frame));
  }

  // Unwind innermost first.
  std::vector<int> h_degree(adj.size(), 0);
  std::vector<bool> is_driver(adj.size(), false);
  for (auto it = frames.rbegin(); it != frames.rend(); ++it) {
    out.drivers.push_back(it->centre);
    is_driver[it->centre] = true;
    for (Vertex leaf : it->leaves) {
      out.passengers.push_back(leaf);
      out.edges.emplace_back(it->centre, leaf);
      ++h_degree[it->centre];
      ++h_degree[leaf];
    }
    for (const TopUp& t : it->top_ups) {
      if (!is_driver[t.vertex]) continue;
      int need = t.target - h_degree[t.vertex];
      assert(need >= 0 && static_cast<std::size_t>(need) <= t.cross.size());
      for (int k = 0; k < need; ++k) {
        out.edges.emplace_back(t.vertex, t.cross[k]);
        ++h_degree[t.vertex];
        ++h_degree[t.cross[k]];
      }
    }
  }
}

}  // namespace

VertexSet DPSubgraph::served_by(Vertex driver) const {
  VertexSet out;
  for (auto [d, p] : edges) {
    if (d == driver) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

VertexSet DPSubgraph::servers_of(Vertex passenger) const {
  VertexSet out;
  for (auto [d, p] : edges) {
    if (p == passenger) out.push_back(d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t DPSubgraph::degree(Vertex v) const {
  return static_cast<std::size_t>(std::count_if(edges.begin(), edges.end(), [v](auto e) {
    return e.first == v || e.second == v;
  }));
}

ValidationReport validate_dp_subgraph(const Graph& g, const Capacity& kappa,
                                      const DPSubgraph& h) {
  ValidationReport report;
  auto fail = [&](Violation::Kind kind, std::string detail) {
    report.violations.push_back({kind, std::move(detail)});
  };

  // 0 = unassigned, 1 = driver, 2 = passenger
  std::vector<int> side(g.id_bound(), 0);
  auto assign = [&](const VertexSet& s, int tag) {
    for (Vertex v : s) {
      if (!g.has_vertex(v)) {
        fail(Violation::Kind::kNotPartition, "vertex " + std::to_string(v) + " not in G");
      } else if (side[v] != 0) {
        fail(Violation::Kind::kNotPartition, g.label(v) + " listed twice");
      } else {
        side[v] = tag;
      }
    }
  };
  assign(h.drivers, 1);
  assign(h.passengers, 2);
  for (Vertex v : g.vertices()) {
    if (side[v] == 0) fail(Violation::Kind::kNotPartition, g.label(v) + " in neither D nor P");
  }

  std::vector<int> degree(g.id_bound(), 0);
  std::vector<std::pair<Vertex, Vertex>> seen;
  for (auto [d, p] : h.edges) {
    std::string name = "(" + std::to_string(d) + ", " + std::to_string(p) + ")";
    if (!g.has_edge(d, p)) {
      fail(Violation::Kind::kForeignEdge, "edge " + name + " not in G");
      continue;
    }
    name = "(" + g.label(d) + ", " + g.label(p) + ")";
    if (side[d] != 1 || side[p] != 2) {
      fail(Violation::Kind::kForeignEdge, "edge " + name + " not from D to P");
      continue;
    }
    seen.emplace_back(d, p);
    ++degree[d];
    ++degree[p];
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
    fail(Violation::Kind::kForeignEdge, "repeated edge in H");
  }

  for (Vertex v : g.vertices()) {
    if (side[v] == 1 && degree[v] != kappa.effective(g, v)) {
      fail(Violation::Kind::kDriverDegree,
           "driver " + g.label(v) + " has degree " + std::to_string(degree[v]) +
               " in H, needs " + std::to_string(kappa.effective(g, v)));
    }
    if (side[v] == 2 && degree[v] == 0) {
      fail(Violation::Kind::kUncoveredPassenger, "passenger " + g.label(v) + " is not served");
    }
  }
  return report;
}

DPSubgraph find_dp_subgraph(const Graph& g, const Capacity& kappa) {
  kappa.check_covers(g);
  std::vector<std::vector<Vertex>> adj(g.id_bound());
  for (Vertex v : g.vertices()) {
    auto nbrs = g.neighbours(v);
    adj[v].assign(nbrs.begin(), nbrs.end());
  }

  DPSubgraph out;
  for (const VertexSet& component : g.components()) {
    peel_component(component, kappa, adj, out);
  }
  std::sort(out.drivers.begin(), out.drivers.end());
  std::sort(out.passengers.begin(), out.passengers.end());
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

namespace {

void check_complete_args(std::size_t n, int k) {
  if (k < 1 || static_cast<std::size_t>(k) + 1 > n) {
    throw std::invalid_argument("need 1 <= k <= n-1 (n=" + std::to_string(n) +
                                ", k=" + std::to_string(k) + ")");
  }
}

}  // namespace

DPSubgraph construct_complete_min(std::size_t n, int k) {
  check_complete_args(n, k);
  const std::size_t kk = static_cast<std::size_t>(k);
  const std::size_t num_drivers = (n + kk) / (kk + 1);  // ceil(n / (1+k))
  const std::size_t num_passengers = n - num_drivers;

  DPSubgraph out;
  for (Vertex v = 0; v < n; ++v) {
    (v < num_drivers ? out.drivers : out.passengers).push_back(v);
  }
  // Driver a takes k consecutive passengers starting at a*k (mod |P|).
  // k <= |P| keeps them distinct; |D|*k >= |P| covers everyone.
  for (std::size_t a = 0; a < num_drivers; ++a) {
    for (std::size_t t = 0; t < kk; ++t) {
      Vertex p = out.passengers[(a * kk + t) % num_passengers];
      out.edges.emplace_back(out.drivers[a], p);
    }
  }
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

DPSubgraph construct_complete_max(std::size_t n, int k) {
  check_complete_args(n, k);
  const std::size_t num_drivers = n - static_cast<std::size_t>(k);
  DPSubgraph out;
  for (Vertex v = 0; v < n; ++v) {
    (v < num_drivers ? out.drivers : out.passengers).push_back(v);
  }
  for (Vertex d : out.drivers) {
    for (Vertex p : out.passengers) out.edges.emplace_back(d, p);
  }
  return out;
}

DPSubgraph make_dp_subgraph(const Graph& g, VertexSet drivers,
                            std::vector<std::pair<Vertex, Vertex>> edges) {
  std::sort(drivers.begin(), drivers.end());
  DPSubgraph out;
  for (Vertex v : g.vertices()) {
    if (!std::binary_search(drivers.begin(), drivers.end(), v)) out.passengers.push_back(v);
  }
  out.drivers = std::move(drivers);
  std::sort(edges.begin(), edges.end());
  out.edges = std::move(edges);
  return out;
}

}  // namespace capshare
