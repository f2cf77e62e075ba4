#ifndef CAPSHARE_ORACLE_HPP
#define CAPSHARE_ORACLE_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "capshare/equilibrium.hpp"
#include "capshare/graph.hpp"

namespace capshare {

inline constexpr std::size_t kDefaultEnumerationCap = 16;

/// Raised when an exhaustive computation would exceed the vertex cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Witness H if `drivers` is a D-set of (g, kappa), else nullopt.
///
/// Decided as a circulation with lower bounds: source -> driver carries
/// exactly min{kappa, degree}, driver -> passenger unit arcs follow G-edges,
/// passenger -> sink needs at least one unit.
std::optional<DPSubgraph> is_d_set(const Graph& g, const Capacity& kappa,
                                   const VertexSet& drivers);

struct DSetReport {
  /// Sorted by size, then lexicographically.
  std::vector<VertexSet> d_sets;
  std::size_t delta_min = 0;
  std::size_t delta_max = 0;
  std::optional<DPSubgraph> min_witness;
  std::optional<DPSubgraph> max_witness;
};

/// Scans every vertex subset by increasing size. Throws CapExceeded when the
/// graph has more than `cap` vertices.
DSetReport enumerate_d_sets(const Graph& g, const Capacity& kappa,
                            std::size_t cap = kDefaultEnumerationCap);

struct MonotonicityCheck {
  bool holds = false;
  std::size_t delta_min_relaxed = 0;  // under kappa'
  std::size_t delta_max = 0;          // under kappa
};

/// Checks delta_min(kappa') <= delta_max(kappa) for kappa <= kappa'
/// pointwise; throws std::invalid_argument for an unordered pair.
MonotonicityCheck verify_delta_monotonicity(const Graph& g, const Capacity& kappa,
                                            const Capacity& relaxed,
                                            std::size_t cap = kDefaultEnumerationCap);

struct Bounds {
  std::size_t lower = 0;  // ceil(|V| / (1 + max kappa))
  std::size_t upper = 0;  // |V| - min kappa
  /// Some vertex has kappa at most the minimum degree.
  bool applicable = false;
};

Bounds bound_formulas(const Graph& g, const Capacity& kappa);

struct BoundRow {
  int k;
  std::size_t lower;
  std::size_t upper;
};

/// ceil(n/(1+k)) and n-k for k in [k_min, k_max]; complete graph, uniform k.
std::vector<BoundRow> bound_table(std::size_t n, int k_min, int k_max);

}  // namespace capshare

#endif  // CAPSHARE_ORACLE_HPP
