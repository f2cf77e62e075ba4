#include "capshare/io.hpp"

#include <algorithm>
#include <sstream>

#include "text.hpp"

namespace capshare::io {

UtilitySpec parse_spec(std::string_view text, std::size_t players) {
  std::optional<int> x_max;
  std::optional<Rational> cost;
  std::vector<Rational> benefit;
  for (const auto& line : detail::tokenize(text)) {
    const auto& t = line.tokens;
    try {
      if (t[0] == "xmax" && t.size() == 2) {
        auto v = detail::to_integer(t[1]);
        if (!v || *v < 0) throw ParseError(line.number, "xmax must be a nonnegative integer");
        x_max = static_cast<int>(*v);
      } else if (t[0] == "cost" && t.size() == 2) {
        cost = parse_rational(t[1]);
      } else if (t[0] == "f" && t.size() >= 2) {
        benefit.clear();
        for (std::size_t k = 1; k < t.size(); ++k) benefit.push_back(parse_rational(t[k]));
      } else {
        throw ParseError(line.number, "expected 'xmax N', 'cost C' or 'f v0 v1 ...'");
      }
    } catch (const std::invalid_argument& e) {
      throw ParseError(line.number, e.what());
    }
  }
  if (!x_max || !cost || benefit.empty()) {
    throw ParseError(0, "spec needs xmax, cost and f lines");
  }
  try {
    return make_tabulated_spec(*x_max, std::move(benefit), *cost, players);
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, e.what());
  }
}

StrategyProfile parse_profile(std::string_view text, const Graph& g, const Capacity& kappa,
                              int x_max) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(0, std::string("profile is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError(0, "profile must be a JSON object keyed by label");

  StrategyProfile profile;
  profile.actions.assign(g.id_bound(), 0);
  profile.nominations.assign(g.id_bound(), {});
  std::vector<bool> seen(g.id_bound(), false);
  for (const auto& [label, entry] : doc.items()) {
    auto v = g.find(label);
    if (!v) throw ParseError(0, "profile names unknown vertex '" + label + "'");
    if (!entry.is_object() || !entry.contains("action") || !entry["action"].is_number_integer()) {
      throw ParseError(0, "vertex '" + label + "': needs an integer \"action\"");
    }
    profile.actions[*v] = entry["action"].get<int>();
    VertexSet m;
    for (const auto& nominee : entry.value("nominations", json::array())) {
      if (!nominee.is_string()) throw ParseError(0, "vertex '" + label + "': nominations are labels");
      auto w = g.find(nominee.get<std::string>());
      if (!w) {
        throw ParseError(0, "vertex '" + label + "' nominates unknown vertex '" +
                                nominee.get<std::string>() + "'");
      }
      m.push_back(*w);
    }
    std::sort(m.begin(), m.end());
    profile.nominations[*v] = std::move(m);
    seen[*v] = true;
  }
  for (Vertex v : g.vertices()) {
    if (!seen[v]) throw ParseError(0, "profile is missing vertex '" + g.label(v) + "'");
  }
  auto problems = profile_problems(g, kappa, profile, x_max);
  if (!problems.empty()) throw ParseError(0, "invalid profile: " + problems.front());
  return profile;
}

json profile_to_json(const Graph& g, const StrategyProfile& profile) {
  json doc = json::object();
  for (Vertex v : g.vertices()) {
    json nominees = json::array();
    for (Vertex w : profile.nominations[v]) nominees.push_back(g.label(w));
    doc[g.label(v)] = {{"action", profile.actions[v]}, {"nominations", nominees}};
  }
  return doc;
}

namespace {

json labels_of(const Graph& g, const VertexSet& s) {
  json out = json::array();
  for (Vertex v : s) out.push_back(g.label(v));
  return out;
}

Vertex lookup(const Graph& g, const json& label) {
  if (!label.is_string()) throw ParseError(0, "expected a vertex label");
  auto v = g.find(label.get<std::string>());
  if (!v) throw ParseError(0, "unknown vertex '" + label.get<std::string>() + "'");
  return *v;
}

}  // namespace

json dp_subgraph_to_json(const Graph& g, const DPSubgraph& h) {
  json edges = json::array();
  for (auto [d, p] : h.edges) edges.push_back({g.label(d), g.label(p)});
  return {{"D", labels_of(g, h.drivers)}, {"P", labels_of(g, h.passengers)}, {"H", edges}};
}

DPSubgraph dp_subgraph_from_json(const json& doc, const Graph& g) {
  DPSubgraph h;
  for (const auto& label : doc.at("D")) h.drivers.push_back(lookup(g, label));
  for (const auto& label : doc.at("P")) h.passengers.push_back(lookup(g, label));
  for (const auto& edge : doc.at("H")) {
    if (!edge.is_array() || edge.size() != 2) throw ParseError(0, "H entries are [driver, passenger]");
    h.edges.emplace_back(lookup(g, edge[0]), lookup(g, edge[1]));
  }
  std::sort(h.drivers.begin(), h.drivers.end());
  std::sort(h.passengers.begin(), h.passengers.end());
  std::sort(h.edges.begin(), h.edges.end());
  return h;
}

json report_to_json(const Graph& g, const DSetReport& report) {
  json sets = json::array();
  for (const auto& d : report.d_sets) sets.push_back(labels_of(g, d));
  json out = {{"d_sets", sets},
              {"count", report.d_sets.size()},
              {"delta_min", report.delta_min},
              {"delta_max", report.delta_max}};
  if (report.min_witness) out["min_witness"] = dp_subgraph_to_json(g, *report.min_witness);
  if (report.max_witness) out["max_witness"] = dp_subgraph_to_json(g, *report.max_witness);
  return out;
}

json trace_summary_to_json(const Trace& trace) {
  return {{"status", to_string(trace.status)},
          {"entry", trace.entry},
          {"period", trace.period},
          {"steps", trace.profiles.size() - 1},
          {"horizon", trace.horizon}};
}

std::string trace_table(const Graph& g, const Trace& trace) {
  std::ostringstream out;
  const VertexSet vertices = g.vertices();
  out << "t";
  for (Vertex v : vertices) out << '\t' << g.label(v);
  out << '\n';
  for (std::size_t t = 0; t < trace.profiles.size(); ++t) {
    out << t;
    for (Vertex v : vertices) out << '\t' << trace.profiles[t][v];
    out << '\n';
  }
  return out.str();
}

std::string bound_table_tsv(const std::vector<BoundRow>& rows) {
  std::ostringstream out;
  out << "k\tlower\tupper\n";
  for (const auto& row : rows) out << row.k << '\t' << row.lower << '\t' << row.upper << '\n';
  return out.str();
}

std::string dp_subgraph_text(const Graph& g, const DPSubgraph& h) {
  std::string out = "D = " + format_set(g, h.drivers) + "\n";
  out += "P = " + format_set(g, h.passengers) + "\n";
  out += "H =";
  for (auto [d, p] : h.edges) out += " " + g.label(d) + "->" + g.label(p);
  return out + "\n";
}

}  // namespace capshare::io
