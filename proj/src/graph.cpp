#include "capshare/graph.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "text.hpp"

namespace capshare {

Graph::Graph(std::vector<std::string> labels, const std::vector<Edge>& edges)
    : labels_(std::move(labels)),
      present_(labels_.size(), true),
      adjacency_(labels_.size()),
      num_vertices_(labels_.size()) {
  for (const Edge& e : edges) {
    if (e.u == e.v) {
      throw std::invalid_argument("self-loop at vertex " + std::to_string(e.u));
    }
    if (e.v >= labels_.size()) {
      throw std::invalid_argument("edge endpoint " + std::to_string(e.v) + " out of range");
    }
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
  }
  for (auto& nbrs : adjacency_) {
    std::sort(nbrs.begin(), nbrs.end());
    if (std::adjacent_find(nbrs.begin(), nbrs.end()) != nbrs.end()) {
      throw std::invalid_argument("duplicate edge");
    }
  }
  num_edges_ = edges.size();
}

Graph Graph::with_vertices(std::size_t n, const std::vector<Edge>& edges) {
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
  return Graph(std::move(labels), edges);
}

void Graph::check_vertex(Vertex v) const {
  if (!has_vertex(v)) throw std::out_of_range("unknown vertex " + std::to_string(v));
}

bool Graph::has_edge(Vertex a, Vertex b) const {
  if (!has_vertex(a) || !has_vertex(b)) return false;
  const auto& nbrs = adjacency_[a];
  return std::binary_search(nbrs.begin(), nbrs.end(), b);
}

std::span<const Vertex> Graph::neighbours(Vertex v) const {
  check_vertex(v);
  return adjacency_[v];
}

VertexSet Graph::vertices() const {
  VertexSet out;
  out.reserve(num_vertices_);
  for (Vertex v = 0; v < present_.size(); ++v) {
    if (present_[v]) out.push_back(v);
  }
  return out;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges_);
  for (Vertex u = 0; u < adjacency_.size(); ++u) {
    for (Vertex v : adjacency_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::optional<Vertex> Graph::find(std::string_view label) const {
  for (Vertex v = 0; v < labels_.size(); ++v) {
    if (present_[v] && labels_[v] == label) return v;
  }
  return std::nullopt;
}

Graph Graph::without_vertices(std::span<const Vertex> s) const {
  Graph out = *this;
  for (Vertex v : s) {
    check_vertex(v);
    if (!out.present_[v]) continue;
    for (Vertex w : out.adjacency_[v]) {
      auto& other = out.adjacency_[w];
      other.erase(std::lower_bound(other.begin(), other.end(), v));
    }
    out.num_edges_ -= out.adjacency_[v].size();
    out.adjacency_[v].clear();
    out.present_[v] = false;
    --out.num_vertices_;
  }
  return out;
}

Graph Graph::without_edges(std::span<const Edge> b) const {
  Graph out = *this;
  for (const Edge& e : b) {
    if (!out.has_edge(e.u, e.v)) {
      throw std::out_of_range("unknown edge " + std::to_string(e.u) + "-" +
                              std::to_string(e.v));
    }
    auto& a = out.adjacency_[e.u];
    a.erase(std::lower_bound(a.begin(), a.end(), e.v));
    auto& c = out.adjacency_[e.v];
    c.erase(std::lower_bound(c.begin(), c.end(), e.u));
    --out.num_edges_;
  }
  return out;
}

std::vector<VertexSet> Graph::components() const {
  std::vector<VertexSet> out;
  std::vector<bool> seen(id_bound(), false);
  for (Vertex root : vertices()) {
    if (seen[root]) continue;
    VertexSet comp;
    std::deque<Vertex> queue{root};
    seen[root] = true;
    while (!queue.empty()) {
      Vertex v = queue.front();
      queue.pop_front();
      comp.push_back(v);
      for (Vertex w : adjacency_[v]) {
        if (!seen[w]) {
          seen[w] = true;
          queue.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

bool is_connected(const Graph& g) {
  if (g.empty()) throw std::invalid_argument("is_connected: empty graph");
  return g.components().size() == 1;
}

Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return Graph::with_vertices(n, edges);
}

Graph parse_graph(std::string_view text) {
  std::vector<std::string> labels;
  std::unordered_map<std::string, Vertex> ids;
  std::vector<Edge> edges;
  std::unordered_map<std::uint64_t, std::size_t> edge_lines;

  auto intern = [&](std::string_view token) {
    auto [it, inserted] = ids.try_emplace(std::string(token), static_cast<Vertex>(labels.size()));
    if (inserted) labels.emplace_back(token);
    return it->second;
  };

  for (const auto& line : detail::tokenize(text)) {
    const auto& t = line.tokens;
    if (t.size() == 2 && t[0] == "node") {
      intern(t[1]);
      continue;
    }
    if (t.size() != 2) {
      throw ParseError(line.number, "expected \"u v\" or \"node u\"");
    }
    if (t[0] == t[1]) {
      throw ParseError(line.number, "self-loop at '" + std::string(t[0]) + "'");
    }
    Vertex a = intern(t[0]);
    Vertex b = intern(t[1]);
    Edge e(a, b);
    std::uint64_t key = (std::uint64_t{e.u} << 32) | e.v;
    if (auto [it, inserted] = edge_lines.try_emplace(key, line.number); !inserted) {
      throw ParseError(line.number, "duplicate edge " + std::string(t[0]) + " " +
                                        std::string(t[1]) + " (first on line " +
                                        std::to_string(it->second) + ")");
    }
    edges.push_back(e);
  }
  if (labels.empty()) throw ParseError(0, "empty graph document");
  return Graph(std::move(labels), edges);
}

std::string serialize_graph(const Graph& g) {
  std::string out;
  for (Vertex v : g.vertices()) {
    if (g.degree(v) == 0) out += "node " + g.label(v) + "\n";
  }
  for (const Edge& e : g.edges()) {
    out += g.label(e.u) + " " + g.label(e.v) + "\n";
  }
  return out;
}

Capacity::Capacity(std::vector<int> values) : values_(std::move(values)) {
  for (std::size_t v = 0; v < values_.size(); ++v) {
    if (values_[v] < 0) {
      throw std::invalid_argument("negative capacity at vertex " + std::to_string(v));
    }
  }
}

Capacity Capacity::uniform(const Graph& g, int k) {
  return Capacity(std::vector<int>(g.id_bound(), k));
}

int Capacity::effective(const Graph& g, Vertex v) const {
  return std::min<int>(values_.at(v), static_cast<int>(g.degree(v)));
}

Capacity Capacity::with(Vertex v, int k) const {
  auto values = values_;
  values.at(v) = k;
  return Capacity(std::move(values));
}

void Capacity::check_covers(const Graph& g) const {
  if (values_.size() < g.id_bound()) {
    throw std::invalid_argument("capacity does not cover every vertex");
  }
}

Capacity parse_capacity(std::string_view text, const Graph& g) {
  std::vector<std::optional<int>> values(g.id_bound());
  std::optional<int> fallback;

  for (const auto& line : detail::tokenize(text)) {
    if (line.tokens.size() != 2) throw ParseError(line.number, "expected \"vertex k\"");
    auto k = detail::to_integer(line.tokens[1]);
    if (!k || *k < 0) throw ParseError(line.number, "capacity must be a nonnegative integer");
    if (line.tokens[0] == "default") {
      fallback = static_cast<int>(*k);
      continue;
    }
    auto v = g.find(line.tokens[0]);
    if (!v) throw ParseError(line.number, "unknown vertex '" + std::string(line.tokens[0]) + "'");
    values[*v] = static_cast<int>(*k);
  }

  std::vector<int> out(g.id_bound(), 0);
  for (Vertex v : g.vertices()) {
    if (values[v]) {
      out[v] = *values[v];
    } else if (fallback) {
      out[v] = *fallback;
    } else {
      throw ParseError(0, "no capacity for vertex '" + g.label(v) + "' and no default");
    }
  }
  return Capacity(std::move(out));
}

std::string format_set(const Graph& g, std::span<const Vertex> s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ", ";
    out += g.label(s[i]);
  }
  return out + "}";
}

}  // namespace capshare
