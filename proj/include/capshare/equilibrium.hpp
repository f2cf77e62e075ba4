#ifndef CAPSHARE_EQUILIBRIUM_HPP
#define CAPSHARE_EQUILIBRIUM_HPP

#include <string>
#include <vector>

#include "capshare/graph.hpp"

namespace capshare {

/// Spanning bipartite subgraph H of a host graph with partite sets D
/// (drivers) and P (passengers).
///
/// A valid DP-subgraph gives every driver exactly min{kappa, degree} edges in
/// H and every passenger at least one. The host graph is not stored; pass it
/// alongside when validating or building profiles.
struct DPSubgraph {
  VertexSet drivers;
  VertexSet passengers;
  /// Edges of H as (driver, passenger) pairs, sorted.
  std::vector<std::pair<Vertex, Vertex>> edges;

  /// Passengers a driver serves, ascending.
  VertexSet served_by(Vertex driver) const;
  /// Drivers serving a passenger, ascending.
  VertexSet servers_of(Vertex passenger) const;
  std::size_t degree(Vertex v) const;

  friend bool operator==(const DPSubgraph&, const DPSubgraph&) = default;
};

struct Violation {
  enum class Kind {
    kNotPartition,     // D and P must split V(G)
    kForeignEdge,      // edge missing from G or not between D and P
    kDriverDegree,     // degree_H(d) != min{kappa(d), degree_G(d)}
    kUncoveredPassenger,
  };
  Kind kind;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  explicit operator bool() const { return ok(); }
};

ValidationReport validate_dp_subgraph(const Graph& g, const Capacity& kappa,
                                      const DPSubgraph& h);

/// Builds a DP-subgraph by the star-peeling construction: repeatedly take
/// the lowest-id vertex i with degree(i) <= kappa(i), make it a driver for
/// its whole neighbourhood and continue on G - N[i]; if no such vertex
/// exists, trim the excess edges of the lowest-id vertex (highest-id
/// neighbours go first). Drivers of the inner graph are topped up with edges
/// into N(i), lowest ids first. Runs per connected component.
DPSubgraph find_dp_subgraph(const Graph& g, const Capacity& kappa);

/// DP-subgraph of K_n (kappa = k everywhere) with the fewest possible
/// drivers, ceil(n / (1 + k)). Vertices 0..|D|-1 drive.
DPSubgraph construct_complete_min(std::size_t n, int k);

/// DP-subgraph of K_n (kappa = k everywhere) with n - k drivers, each
/// serving all k passengers.
DPSubgraph construct_complete_max(std::size_t n, int k);

/// Convenience for building a candidate from D alone plus explicit edges.
DPSubgraph make_dp_subgraph(const Graph& g, VertexSet drivers,
                            std::vector<std::pair<Vertex, Vertex>> edges);

}  // namespace capshare

#endif  // CAPSHARE_EQUILIBRIUM_HPP
