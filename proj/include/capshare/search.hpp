#ifndef CAPSHARE_SEARCH_HPP
#define CAPSHARE_SEARCH_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "capshare/game.hpp"
#include "capshare/graph.hpp"

namespace capshare {

/// Uniformly random admissible nomination profile: each vertex picks
/// min{kappa, degree} distinct neighbours.
std::vector<VertexSet> random_nominations(const Graph& g, const Capacity& kappa,
                                          std::mt19937_64& rng);

/// All action vectors in {0..q_star}^n that are best-reply fixed points for
/// the nominations `m` and have some 0 < x_v < q_star. Exhaustive, so keep n
/// small: (q_star + 1)^n candidates.
std::vector<std::vector<int>> nonspecialised_fixed_points(const Graph& g,
                                                          const std::vector<VertexSet>& m,
                                                          int q_star);

/// Draws `trials` random nomination profiles and collects every
/// non-specialised pure Nash equilibrium found (deduplicated, in discovery
/// order). Deterministic for a given seed.
std::vector<StrategyProfile> search_nonspecialised_equilibria(const Graph& g,
                                                              const Capacity& kappa,
                                                              const UtilitySpec& spec,
                                                              std::uint64_t seed,
                                                              std::size_t trials);

}  // namespace capshare

#endif  // CAPSHARE_SEARCH_HPP
