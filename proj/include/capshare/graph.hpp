#ifndef CAPSHARE_GRAPH_HPP
#define CAPSHARE_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace capshare {

using Vertex = std::uint32_t;

/// Sorted, duplicate-free list of vertex ids.
using VertexSet = std::vector<Vertex>;

/// Undirected edge, stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Raised for malformed input documents. `line()` is 1-based, 0 when the
/// problem is not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line == 0 ? what
                                     : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Immutable undirected simple graph.
///
/// Vertex ids are dense in [0, id_bound()). Removing vertices keeps the
/// original ids, so a graph may have "holes": ids below id_bound() that are
/// not present. Every id keeps its label regardless.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph on vertices 0..labels.size()-1. Rejects self-loops,
  /// duplicate edges and out-of-range endpoints with std::invalid_argument.
  Graph(std::vector<std::string> labels, const std::vector<Edge>& edges);

  /// Graph on n vertices labelled "0".."n-1".
  static Graph with_vertices(std::size_t n, const std::vector<Edge>& edges = {});

  std::size_t id_bound() const { return labels_.size(); }
  std::size_t num_vertices() const { return num_vertices_; }
  std::size_t num_edges() const { return num_edges_; }
  bool empty() const { return num_vertices_ == 0; }

  bool has_vertex(Vertex v) const { return v < present_.size() && present_[v]; }
  bool has_edge(Vertex a, Vertex b) const;

  /// Neighbours of v in ascending order.
  std::span<const Vertex> neighbours(Vertex v) const;
  std::size_t degree(Vertex v) const { return neighbours(v).size(); }

  /// Present vertices in ascending order.
  VertexSet vertices() const;
  /// Edges sorted lexicographically.
  std::vector<Edge> edges() const;

  const std::string& label(Vertex v) const { return labels_.at(v); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<Vertex> find(std::string_view label) const;

  /// Induced subgraph on V \ s, original ids preserved.
  Graph without_vertices(std::span<const Vertex> s) const;
  /// Spanning subgraph with edge set E \ b.
  Graph without_edges(std::span<const Edge> b) const;

  /// Connected components, each sorted, ordered by smallest member.
  std::vector<VertexSet> components() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check_vertex(Vertex v) const;

  std::vector<std::string> labels_;
  std::vector<bool> present_;
  std::vector<std::vector<Vertex>> adjacency_;
  std::size_t num_vertices_ = 0;
  std::size_t num_edges_ = 0;
};

bool is_connected(const Graph& g);

inline Graph remove_vertices(const Graph& g, std::span<const Vertex> s) {
  return g.without_vertices(s);
}

inline Graph remove_edges(const Graph& g, std::span<const Edge> b) {
  return g.without_edges(b);
}

/// K_n with labels "0".."n-1".
Graph complete_graph(std::size_t n);

/// Parses the edge-list text format: one "u v" pair per line, "node u"
/// declares a vertex, '#' starts a comment. Labels get dense ids in order of
/// first appearance. LF and CRLF line endings are accepted.
Graph parse_graph(std::string_view text);

/// Inverse of parse_graph for present vertices. Isolated vertices are
/// emitted as "node" lines so the round trip keeps them.
std::string serialize_graph(const Graph& g);

/// Per-vertex nonnegative capacity, indexed by vertex id.
class Capacity {
 public:
  Capacity() = default;
  explicit Capacity(std::vector<int> values);

  static Capacity uniform(const Graph& g, int k);

  int operator[](Vertex v) const { return values_.at(v); }
  std::size_t size() const { return values_.size(); }
  const std::vector<int>& values() const { return values_; }

  /// min{kappa(v), degree(v)}.
  int effective(const Graph& g, Vertex v) const;

  /// Copy with kappa(v) replaced.
  Capacity with(Vertex v, int k) const;

  /// Checks that every vertex of g has a value.
  void check_covers(const Graph& g) const;

  friend bool operator==(const Capacity&, const Capacity&) = default;

 private:
  std::vector<int> values_;
};

/// Capacity file: lines "vertex k" plus an optional "default k".
Capacity parse_capacity(std::string_view text, const Graph& g);

/// Formats a vertex set as "{a, b, c}" using labels.
std::string format_set(const Graph& g, std::span<const Vertex> s);

}  // namespace capshare

#endif  // CAPSHARE_GRAPH_HPP
