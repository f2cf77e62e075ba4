#include "capshare/oracle.hpp"

#include <algorithm>
#include <numeric>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/edmonds_karp_max_flow.hpp>

namespace capshare {

namespace {

using Traits = boost::adjacency_list_traits<boost::vecS, boost::vecS, boost::directedS>;
using FlowGraph = boost::adjacency_list<
    boost::vecS, boost::vecS, boost::directedS, boost::no_property,
    boost::property<boost::edge_capacity_t, long,
                    boost::property<boost::edge_residual_capacity_t, long,
                                    boost::property<boost::edge_reverse_t,
                                                    Traits::edge_descriptor>>>>;
using Arc = Traits::edge_descriptor;

class FlowNetwork {
 public:
  explicit FlowNetwork(std::size_t nodes) : graph_(nodes) {}

  Arc add(std::size_t from, std::size_t to, long capacity) {
    auto cap = boost::get(boost::edge_capacity, graph_);
    auto rev = boost::get(boost::edge_reverse, graph_);
    Arc forward = boost::add_edge(from, to, graph_).first;
    Arc backward = boost::add_edge(to, from, graph_).first;
    cap[forward] = capacity;
    cap[backward] = 0;
    rev[forward] = backward;
    rev[backward] = forward;
    return forward;
  }

  long max_flow(std::size_t source, std::size_t sink) {
    return boost::edmonds_karp_max_flow(graph_, source, sink);
  }

  long flow(Arc a) const {
    return boost::get(boost::edge_capacity, graph_, a) -
           boost::get(boost::edge_residual_capacity, graph_, a);
  }

 private:
  FlowGraph graph_;
};

}  // namespace

std::optional<DPSubgraph> is_d_set(const Graph& g, const Capacity& kappa,
                                   const VertexSet& drivers) {
  std::vector<bool> is_driver(g.id_bound(), false);
  for (Vertex d : drivers) {
    if (!g.has_vertex(d)) throw std::out_of_range("driver " + std::to_string(d) + " not in graph");
    is_driver[d] = true;
  }
  VertexSet passengers;
  for (Vertex v : g.vertices()) {
    if (!is_driver[v]) passengers.push_back(v);
  }

  // Cheap necessary conditions.
  for (Vertex d : drivers) {
    auto outlets = std::count_if(g.neighbours(d).begin(), g.neighbours(d).end(),
                                 [&](Vertex w) { return !is_driver[w]; });
    if (outlets < kappa.effective(g, d)) return std::nullopt;
  }
  for (Vertex p : passengers) {
    auto nbrs = g.neighbours(p);
    bool reachable = std::any_of(nbrs.begin(), nbrs.end(), [&](Vertex w) {
      return is_driver[w] && kappa.effective(g, w) > 0;
    });
    if (!reachable) return std::nullopt;
  }

  // Nodes: 0 source, 1 sink, 2 super-source, 3 super-sink, then one per vertex.
  constexpr std::size_t kSource = 0, kSink = 1, kSuperSource = 2, kSuperSink = 3;
  auto node = [](Vertex v) { return 4 + static_cast<std::size_t>(v); };
  FlowNetwork net(4 + g.id_bound());
  std::vector<long> excess(4 + g.id_bound(), 0);

  std::vector<std::pair<Arc, std::pair<Vertex, Vertex>>> service_arcs;
  for (Vertex d : drivers) {
    long demand = kappa.effective(g, d);
    excess[node(d)] += demand;  // lower bound == upper bound
    excess[kSource] -= demand;
    for (Vertex p : g.neighbours(d)) {
      if (!is_driver[p]) service_arcs.push_back({net.add(node(d), node(p), 1), {d, p}});
    }
  }
  for (Vertex p : passengers) {
    excess[kSink] += 1;
    excess[node(p)] -= 1;
    net.add(node(p), kSink, static_cast<long>(g.degree(p)) - 1);
  }
  net.add(kSink, kSource, static_cast<long>(g.num_edges()) + 1);

  long required = 0;
  for (std::size_t v = 0; v < excess.size(); ++v) {
    if (excess[v] > 0) {
      net.add(kSuperSource, v, excess[v]);
      required += excess[v];
    } else if (excess[v] < 0) {
      net.add(v, kSuperSink, -excess[v]);
    }
  }
  if (net.max_flow(kSuperSource, kSuperSink) != required) return std::nullopt;

  DPSubgraph h;
  h.drivers = drivers;
  std::sort(h.drivers.begin(), h.drivers.end());
  h.passengers = std::move(passengers);
  for (const auto& [arc, edge] : service_arcs) {
    if (net.flow(arc) > 0) h.edges.push_back(edge);
  }
  std::sort(h.edges.begin(), h.edges.end());
  return h;
}

DSetReport enumerate_d_sets(const Graph& g, const Capacity& kappa, std::size_t cap) {
  const VertexSet vertices = g.vertices();
  const std::size_t n = vertices.size();
  if (n > cap) {
    throw CapExceeded("graph has " + std::to_string(n) + " vertices, enumeration cap is " +
                      std::to_string(cap) + " (2^n subsets); raise --cap to override");
  }
  kappa.check_covers(g);

  DSetReport report;
  std::vector<std::size_t> index;
  for (std::size_t size = 0; size <= n; ++size) {
    // Lexicographic combinations of `size` positions.
    index.resize(size);
    std::iota(index.begin(), index.end(), 0);
    while (true) {
      VertexSet subset(size);
      for (std::size_t k = 0; k < size; ++k) subset[k] = vertices[index[k]];
      if (auto witness = is_d_set(g, kappa, subset)) {
        if (report.d_sets.empty()) report.min_witness = *witness;
        report.max_witness = std::move(*witness);
        report.d_sets.push_back(std::move(subset));
      }
      std::size_t k = size;
      while (k > 0 && index[k - 1] == n - size + k - 1) --k;
      if (k == 0) break;
      ++index[k - 1];
      for (std::size_t r = k; r < size; ++r) index[r] = index[r - 1] + 1;
    }
  }
  if (!report.d_sets.empty()) {
    report.delta_min = report.d_sets.front().size();
    report.delta_max = report.d_sets.back().size();
  }
  return report;
}

MonotonicityCheck verify_delta_monotonicity(const Graph& g, const Capacity& kappa,
                                            const Capacity& relaxed, std::size_t cap) {
  kappa.check_covers(g);
  relaxed.check_covers(g);
  for (Vertex v : g.vertices()) {
    if (kappa[v] > relaxed[v]) {
      throw std::invalid_argument("capacities are not ordered at vertex " + g.label(v));
    }
  }
  MonotonicityCheck check;
  check.delta_min_relaxed = enumerate_d_sets(g, relaxed, cap).delta_min;
  check.delta_max = enumerate_d_sets(g, kappa, cap).delta_max;
  check.holds = check.delta_min_relaxed <= check.delta_max;
  return check;
}

Bounds bound_formulas(const Graph& g, const Capacity& kappa) {
  Bounds b;
  const VertexSet vertices = g.vertices();
  if (vertices.empty()) return b;
  int k_min = kappa[vertices.front()];
  int k_max = k_min;
  std::size_t d_min = g.degree(vertices.front());
  for (Vertex v : vertices) {
    k_min = std::min(k_min, kappa[v]);
    k_max = std::max(k_max, kappa[v]);
    d_min = std::min(d_min, g.degree(v));
  }
  const std::size_t n = vertices.size();
  const auto denom = static_cast<std::size_t>(k_max) + 1;
  b.lower = (n + denom - 1) / denom;
  b.upper = n - std::min<std::size_t>(n, static_cast<std::size_t>(k_min));
  b.applicable = std::any_of(vertices.begin(), vertices.end(), [&](Vertex v) {
    return static_cast<std::size_t>(kappa[v]) <= d_min;
  });
  return b;
}

std::vector<BoundRow> bound_table(std::size_t n, int k_min, int k_max) {
  if (k_min < 1 || k_min > k_max || static_cast<std::size_t>(k_max) + 1 > n) {
    throw std::invalid_argument("bound table needs 1 <= k_min <= k_max <= n-1");
  }
  std::vector<BoundRow> rows;
  for (int k = k_min; k <= k_max; ++k) {
    auto kk = static_cast<std::size_t>(k);
    rows.push_back({k, (n + kk) / (kk + 1), n - kk});
  }
  return rows;
}

}  // namespace capshare
