#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "capshare/dynamics.hpp"
#include "capshare/equilibrium.hpp"
#include "capshare/game.hpp"
#include "capshare/graph.hpp"
#include "capshare/io.hpp"
#include "capshare/oracle.hpp"

namespace py = pybind11;
using namespace capshare;

namespace {

py::object to_fraction(const Rational& r) {
  return py::module_::import("fractions").attr("Fraction")(r.numerator(), r.denominator());
}

// Accepts int, str ("1/2", "0.5") or fractions.Fraction.
Rational from_python(const py::object& value) {
  if (py::isinstance<py::int_>(value)) return Rational(value.cast<std::int64_t>());
  if (py::isinstance<py::str>(value)) return parse_rational(value.cast<std::string>());
  if (py::hasattr(value, "numerator") && py::hasattr(value, "denominator")) {
    return Rational(value.attr("numerator").cast<std::int64_t>(),
                    value.attr("denominator").cast<std::int64_t>());
  }
  throw py::type_error("expected int, str or fractions.Fraction");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Capacity-constrained local public goods games";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);

  py::class_<Graph>(m, "Graph")
      .def_static("with_vertices",
                  [](std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
                    std::vector<Edge> es;
                    for (auto [u, v] : edges) es.emplace_back(u, v);
                    return Graph::with_vertices(n, es);
                  },
                  py::arg("n"), py::arg("edges") = std::vector<std::pair<Vertex, Vertex>>{})
      .def_property_readonly("num_vertices", &Graph::num_vertices)
      .def_property_readonly("num_edges", &Graph::num_edges)
      .def_property_readonly("labels", &Graph::labels)
      .def("vertices", &Graph::vertices)
      .def("edges",
           [](const Graph& g) {
             std::vector<std::pair<Vertex, Vertex>> out;
             for (const Edge& e : g.edges()) out.emplace_back(e.u, e.v);
             return out;
           })
      .def("degree", &Graph::degree)
      .def("neighbours",
           [](const Graph& g, Vertex v) {
             auto n = g.neighbours(v);
             return VertexSet(n.begin(), n.end());
           })
      .def("label", &Graph::label)
      .def("find", &Graph::find)
      .def("is_connected", [](const Graph& g) { return is_connected(g); })
      .def("without_vertices", [](const Graph& g, const VertexSet& s) { return g.without_vertices(s); })
      .def("__str__", [](const Graph& g) { return serialize_graph(g); });

  m.def("parse_graph", [](const std::string& text) { return parse_graph(text); });
  m.def("complete_graph", &complete_graph);

  py::class_<Capacity>(m, "Capacity")
      .def(py::init<std::vector<int>>())
      .def_static("uniform", &Capacity::uniform)
      .def("__getitem__", &Capacity::operator[])
      .def_property_readonly("values", &Capacity::values);
  m.def("parse_capacity", [](const std::string& text, const Graph& g) { return parse_capacity(text, g); });

  py::class_<DPSubgraph>(m, "DPSubgraph")
      .def(py::init<>())
      .def_readwrite("drivers", &DPSubgraph::drivers)
      .def_readwrite("passengers", &DPSubgraph::passengers)
      .def_readwrite("edges", &DPSubgraph::edges)
      .def("__eq__", [](const DPSubgraph& a, const DPSubgraph& b) { return a == b; });

  m.def("find_dp_subgraph", &find_dp_subgraph);
  m.def("validate_dp_subgraph", [](const Graph& g, const Capacity& k, const DPSubgraph& h) {
    std::vector<std::string> problems;
    for (const auto& v : validate_dp_subgraph(g, k, h).violations) problems.push_back(v.detail);
    return problems;
  }, "Empty list when H is a valid DP-subgraph, otherwise one message per violation.");
  m.def("construct_complete_min", &construct_complete_min);
  m.def("construct_complete_max", &construct_complete_max);

  py::class_<UtilitySpec>(m, "UtilitySpec")
      .def_readonly("x_max", &UtilitySpec::x_max)
      .def_readonly("q_star", &UtilitySpec::q_star)
      .def_property_readonly("cost", [](const UtilitySpec& s) { return to_fraction(s.cost); })
      .def("f", [](const UtilitySpec& s, int y) { return to_fraction(s.f(y)); });
  m.def("make_netflix_spec", [](const py::object& c, std::size_t players) {
    return make_netflix_spec(from_python(c), players);
  }, py::arg("cost"), py::arg("players"));
  m.def("make_satiation_spec", [](int q, int x_max, const py::object& c, std::size_t players) {
    return make_satiation_spec(q, x_max, from_python(c), players);
  }, py::arg("q_star"), py::arg("x_max"), py::arg("cost"), py::arg("players"));
  m.def("parse_spec", [](const std::string& text, std::size_t players) {
    return io::parse_spec(text, players);
  });

  py::class_<StrategyProfile>(m, "StrategyProfile")
      .def(py::init<>())
      .def(py::init([](std::vector<int> x, std::vector<VertexSet> noms) {
        return StrategyProfile{std::move(x), std::move(noms)};
      }))
      .def_readwrite("actions", &StrategyProfile::actions)
      .def_readwrite("nominations", &StrategyProfile::nominations);

  m.def("build_profile", &build_profile, py::arg("graph"), py::arg("kappa"), py::arg("h"),
        py::arg("spec"), py::arg("nicely") = true);
  m.def("inflow", py::overload_cast<const Graph&, const StrategyProfile&, Vertex>(&inflow));
  m.def("utility", [](const Graph& g, const StrategyProfile& p, const UtilitySpec& s, Vertex v) {
    return to_fraction(utility(g, p, s, v));
  });
  m.def("is_nash", [](const Graph& g, const StrategyProfile& p, const UtilitySpec& s) {
    NashVerdict v = is_nash(g, p, s);
    return py::make_tuple(v.nash, v.deviator);
  }, "Returns (nash, deviating vertex or None).");
  m.def("classify", [](const Graph& g, const Capacity& k, const StrategyProfile& p, int q) {
    ProfileClass c = classify(g, k, p, q);
    py::dict d;
    d["specialised"] = c.specialised;
    d["balanced"] = c.balanced;
    d["nicely_balanced"] = c.nicely_balanced;
    d["notes"] = c.notes;
    return d;
  });

  m.def("best_action_response", &best_action_response);
  m.def("best_reply_step", &best_reply_step);

  py::class_<Trace>(m, "Trace")
      .def_readonly("profiles", &Trace::profiles)
      .def_readonly("entry", &Trace::entry)
      .def_readonly("period", &Trace::period)
      .def_property_readonly("status", [](const Trace& t) { return std::string(to_string(t.status)); });
  m.def("evolve", &evolve, py::arg("graph"), py::arg("x0"), py::arg("nominations"),
        py::arg("q_star"), py::arg("max_t") = kDefaultHorizon);
  m.def("settles_in", &settles_in);
  m.def("is_action_stable", [](const Graph& g, const StrategyProfile& p, const UtilitySpec& s, int delta) {
    StabilityVerdict v = is_action_stable(g, p, s, delta);
    py::object counter = py::none();
    if (v.counterexample) counter = py::make_tuple(v.counterexample->vertex, v.counterexample->to);
    return py::make_tuple(v.stable, counter);
  }, py::arg("graph"), py::arg("profile"), py::arg("spec"), py::arg("delta") = 1,
     "Returns (stable, (vertex, perturbed action) or None).");

  m.def("is_d_set", &is_d_set);
  py::class_<DSetReport>(m, "DSetReport")
      .def_readonly("d_sets", &DSetReport::d_sets)
      .def_readonly("delta_min", &DSetReport::delta_min)
      .def_readonly("delta_max", &DSetReport::delta_max);
  m.def("enumerate_d_sets", &enumerate_d_sets, py::arg("graph"), py::arg("kappa"),
        py::arg("cap") = kDefaultEnumerationCap);
  m.def("verify_delta_monotonicity", [](const Graph& g, const Capacity& a, const Capacity& b) {
    auto c = verify_delta_monotonicity(g, a, b);
    return py::make_tuple(c.holds, c.delta_min_relaxed, c.delta_max);
  });
  m.def("bound_formulas", [](const Graph& g, const Capacity& k) {
    Bounds b = bound_formulas(g, k);
    return py::make_tuple(b.lower, b.upper, b.applicable);
  });
  m.def("bound_table", [](std::size_t n, int k_min, int k_max) {
    std::vector<std::tuple<int, std::size_t, std::size_t>> rows;
    for (const auto& r : bound_table(n, k_min, k_max)) rows.emplace_back(r.k, r.lower, r.upper);
    return rows;
  });
}
