#include "capshare/search.hpp"

#include <algorithm>
#include <set>

#include "capshare/dynamics.hpp"

namespace capshare {

std::vector<VertexSet> random_nominations(const Graph& g, const Capacity& kappa,
                                          std::mt19937_64& rng) {
  std::vector<VertexSet> m(g.id_bound());
  for (Vertex v : g.vertices()) {
    auto nbrs = g.neighbours(v);
    auto k = static_cast<std::size_t>(kappa.effective(g, v));
    std::sample(nbrs.begin(), nbrs.end(), std::back_inserter(m[v]), k, rng);
    std::sort(m[v].begin(), m[v].end());
  }
  return m;
}

std::vector<std::vector<int>> nonspecialised_fixed_points(const Graph& g,
                                                          const std::vector<VertexSet>& m,
                                                          int q_star) {
  const VertexSet vertices = g.vertices();
  std::vector<std::vector<int>> found;
  std::vector<int> x(g.id_bound(), 0);
  while (true) {
    bool interior = std::any_of(vertices.begin(), vertices.end(),
                                [&](Vertex v) { return x[v] > 0 && x[v] < q_star; });
    if (interior && best_reply_step(g, x, m, q_star) == x) found.push_back(x);

    // Odometer over {0..q_star}^n.
    std::size_t k = 0;
    while (k < vertices.size() && x[vertices[k]] == q_star) x[vertices[k++]] = 0;
    if (k == vertices.size()) break;
    ++x[vertices[k]];
  }
  return found;
}

std::vector<StrategyProfile> search_nonspecialised_equilibria(const Graph& g,
                                                              const Capacity& kappa,
                                                              const UtilitySpec& spec,
                                                              std::uint64_t seed,
                                                              std::size_t trials) {
  std::mt19937_64 rng(seed);
  std::vector<StrategyProfile> out;
  std::set<std::pair<std::vector<int>, std::vector<VertexSet>>> seen;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    auto m = random_nominations(g, kappa, rng);
    for (auto& x : nonspecialised_fixed_points(g, m, spec.q_star)) {
      if (!seen.emplace(x, m).second) continue;
      StrategyProfile profile{std::move(x), m};
      if (is_nash(g, profile, spec).nash) out.push_back(std::move(profile));
    }
  }
  return out;
}

}  // namespace capshare
