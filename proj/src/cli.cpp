#include "capshare/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "capshare/dynamics.hpp"
#include "capshare/equilibrium.hpp"
#include "capshare/game.hpp"
#include "capshare/graph.hpp"
#include "capshare/io.hpp"
#include "capshare/oracle.hpp"
#include "capshare/search.hpp"

namespace capshare::cli {

namespace {

using io::json;

inline constexpr std::uint64_t kDefaultSeed = 0x5eed2024;

struct Config {
  std::string graph_path;
  std::string kappa_path;
  std::optional<int> kappa_uniform;
  std::string netflix_c;
  std::string spec_path;
  std::optional<int> q_star;
  std::optional<int> x_max;
  std::string profile_path;
  std::size_t horizon = kDefaultHorizon;
  std::size_t cap = kDefaultEnumerationCap;
  int delta = 1;
  std::uint64_t seed = kDefaultSeed;
  std::string format = "table";
  bool strict = false;
  int k_min = 1;
  std::optional<int> k_max;
  std::optional<std::size_t> n;
  std::size_t trials = 50;

  bool structured() const { return format == "structured"; }
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Graph load_graph(const Config& cfg, std::ostream& err) {
  if (cfg.graph_path.empty()) throw UsageError("--graph is required");
  Graph g = parse_graph(read_file(cfg.graph_path));
  if (!is_connected(g)) {
    err << "warning: graph is disconnected; components are handled independently\n";
  }
  return g;
}

Capacity load_kappa(const Config& cfg, const Graph& g) {
  if (cfg.kappa_uniform) {
    if (*cfg.kappa_uniform < 0) throw UsageError("--kappa-uniform must be nonnegative");
    return Capacity::uniform(g, *cfg.kappa_uniform);
  }
  if (cfg.kappa_path.empty()) throw UsageError("one of --kappa or --kappa-uniform is required");
  return parse_capacity(read_file(cfg.kappa_path), g);
}

std::optional<UtilitySpec> load_spec(const Config& cfg, std::size_t players) {
  if (!cfg.netflix_c.empty()) return make_netflix_spec(parse_rational(cfg.netflix_c), players);
  if (!cfg.spec_path.empty()) return io::parse_spec(read_file(cfg.spec_path), players);
  if (cfg.q_star) {
    int x_max = cfg.x_max.value_or(*cfg.q_star + 1);
    return make_satiation_spec(*cfg.q_star, x_max, Rational(1, 2), players);
  }
  return std::nullopt;
}

UtilitySpec require_spec(const Config& cfg, std::size_t players) {
  auto spec = load_spec(cfg, players);
  if (!spec) throw UsageError("a utility spec is required: --netflix-c, --spec or --qstar");
  return *spec;
}

StrategyProfile load_profile(const Config& cfg, const Graph& g, const Capacity& kappa,
                             int x_max) {
  if (cfg.profile_path.empty()) throw UsageError("--profile is required");
  return io::parse_profile(read_file(cfg.profile_path), g, kappa, x_max);
}

void emit(std::ostream& out, json record) { out << record.dump() << '\n'; }

std::string actions_text(const Graph& g, const std::vector<int>& x) {
  std::string s = "(";
  bool first = true;
  for (Vertex v : g.vertices()) {
    if (!first) s += ", ";
    first = false;
    s += std::to_string(x[v]);
  }
  return s + ")";
}

std::string nominations_text(const Graph& g, const StrategyProfile& p) {
  std::ostringstream out;
  for (Vertex v : g.vertices()) {
    out << "  " << g.label(v) << ": action " << p.actions[v] << ", nominates "
        << format_set(g, p.nominations[v]) << '\n';
  }
  return out.str();
}

int cmd_solve(const Config& cfg, std::ostream& out, std::ostream& err) {
  Graph g = load_graph(cfg, err);
  Capacity kappa = load_kappa(cfg, g);
  UtilitySpec spec = load_spec(cfg, g.id_bound()).value_or(make_netflix_spec(Rational(1, 2), g.id_bound()));
  DPSubgraph h = find_dp_subgraph(g, kappa);
  StrategyProfile profile = build_profile(g, kappa, h, spec, true);
  if (cfg.structured()) {
    emit(out, {{"record", "dp_subgraph"}, {"subgraph", io::dp_subgraph_to_json(g, h)}});
    emit(out, {{"record", "profile"}, {"q_star", spec.q_star}, {"profile", io::profile_to_json(g, profile)}});
  } else {
    out << io::dp_subgraph_text(g, h);
    out << "nicely balanced profile (q* = " << spec.q_star << "):\n" << nominations_text(g, profile);
  }
  return kOk;
}

int cmd_check(const Config& cfg, std::ostream& out, std::ostream& err) {
  Graph g = load_graph(cfg, err);
  Capacity kappa = load_kappa(cfg, g);
  UtilitySpec spec = require_spec(cfg, g.id_bound());
  StrategyProfile profile = load_profile(cfg, g, kappa, spec.x_max);
  ProfileClass cls = classify(g, kappa, profile, spec.q_star);
  NashVerdict nash = is_nash(g, profile, spec);
  cls.nash = nash.nash;

  if (cfg.structured()) {
    json record = {{"record", "check"},
                   {"specialised", cls.specialised},
                   {"balanced", cls.balanced},
                   {"nicely_balanced", cls.nicely_balanced},
                   {"nash", nash.nash},
                   {"notes", cls.notes}};
    if (nash.deviator) {
      record["deviator"] = g.label(*nash.deviator);
      record["better_action"] = nash.better_action;
      record["gain"] = format_rational(nash.gain);
    }
    emit(out, record);
  } else {
    out << "specialised      " << (cls.specialised ? "yes" : "no") << '\n'
        << "balanced         " << (cls.balanced ? "yes" : "no") << '\n'
        << "nicely balanced  " << (cls.nicely_balanced ? "yes" : "no") << '\n'
        << "nash             " << (nash.nash ? "yes" : "no") << '\n';
    if (nash.deviator) {
      out << "deviation: " << g.label(*nash.deviator) << " gains " << format_rational(nash.gain)
          << " by playing " << nash.better_action << '\n';
    }
    for (const auto& note : cls.notes) out << "note: " << note << '\n';
  }
  return kOk;
}

int cmd_simulate(const Config& cfg, std::ostream& out, std::ostream& err) {
  Graph g = load_graph(cfg, err);
  Capacity kappa = load_kappa(cfg, g);
  UtilitySpec spec = require_spec(cfg, g.id_bound());
  StrategyProfile profile = load_profile(cfg, g, kappa, spec.x_max);
  Trace trace = evolve(g, profile.actions, profile.nominations, spec.q_star, cfg.horizon);

  if (cfg.structured()) {
    for (std::size_t t = 0; t < trace.profiles.size(); ++t) {
      json row = json::object();
      for (Vertex v : g.vertices()) row[g.label(v)] = trace.profiles[t][v];
      emit(out, {{"record", "state"}, {"t", t}, {"actions", row}});
    }
    json summary = io::trace_summary_to_json(trace);
    summary["record"] = "summary";
    emit(out, summary);
  } else {
    out << io::trace_table(g, trace);
    out << "# " << to_string(trace.status) << " entry=" << trace.entry
        << " period=" << trace.period << '\n';
  }
  if (trace.status == Trace::Status::kHorizonExhausted) {
    err << "note: horizon of " << cfg.horizon << " steps exhausted before a repeat\n";
  }
  if (cfg.strict && !trace.settled()) return kUnsettled;
  return kOk;
}

int cmd_stability(const Config& cfg, std::ostream& out, std::ostream& err) {
  Graph g = load_graph(cfg, err);
  Capacity kappa = load_kappa(cfg, g);
  UtilitySpec spec = require_spec(cfg, g.id_bound());
  StrategyProfile profile = load_profile(cfg, g, kappa, spec.x_max);
  StabilityVerdict verdict = is_action_stable(g, profile, spec, cfg.delta, cfg.horizon);

  if (cfg.structured()) {
    json record = {{"record", "stability"},
                   {"stable", verdict.stable},
                   {"fixed_point", !verdict.not_fixed_point},
                   {"delta", cfg.delta},
                   {"perturbations_checked", verdict.perturbations_checked}};
    if (verdict.counterexample) {
      const auto& c = *verdict.counterexample;
      record["counterexample"] = {{"vertex", g.label(c.vertex)},
                                  {"from", c.from},
                                  {"to", c.to},
                                  {"status", to_string(c.status)},
                                  {"entry", c.entry},
                                  {"period", c.period}};
    }
    emit(out, record);
    return kOk;
  }

  out << (verdict.stable ? "action stable" : "not action stable") << " (delta = " << cfg.delta
      << ", " << verdict.perturbations_checked << " perturbations checked)\n";
  if (verdict.counterexample) {
    const auto& c = *verdict.counterexample;
    if (verdict.not_fixed_point) {
      out << "not a best-reply fixed point: " << g.label(c.vertex) << " would move from "
          << c.from << " to " << c.to << '\n';
    } else {
      out << "perturbation: " << g.label(c.vertex) << " " << c.from << " -> " << c.to << '\n';
      StrategyProfile start = profile;
      start.actions[c.vertex] = c.to;
      Trace trace = evolve(g, start.actions, start.nominations, spec.q_star, cfg.horizon);
      out << "start " << actions_text(g, start.actions) << " ends in " << to_string(trace.status)
          << " entry=" << trace.entry << " period=" << trace.period << '\n';
    }
  }
  return kOk;
}

int cmd_enumerate(const Config& cfg, std::ostream& out, std::ostream& err) {
  Graph g = load_graph(cfg, err);
  Capacity kappa = load_kappa(cfg, g);
  DSetReport report = enumerate_d_sets(g, kappa, cfg.cap);
  if (cfg.structured()) {
    json record = io::report_to_json(g, report);
    record["record"] = "d_sets";
    emit(out, record);
    return kOk;
  }
  out << report.d_sets.size() << " D-sets, delta_min = " << report.delta_min
      << ", delta_max = " << report.delta_max << '\n';
  for (const auto& d : report.d_sets) out << "  " << format_set(g, d) << '\n';
  if (report.min_witness) out << "min witness:\n" << io::dp_subgraph_text(g, *report.min_witness);
  if (report.max_witness) out << "max witness:\n" << io::dp_subgraph_text(g, *report.max_witness);
  return kOk;
}

int cmd_sweep(const Config& cfg, std::ostream& out, std::ostream& err) {
  Graph g = load_graph(cfg, err);
  int k_max = cfg.k_max.value_or(static_cast<int>(g.num_vertices()) - 1);
  if (cfg.k_min < 0 || k_max < cfg.k_min) throw UsageError("need 0 <= --k-min <= --k-max");
  if (!cfg.structured()) out << "kappa\tcount\tdelta_min\tdelta_max\td_sets\n";
  for (int k = cfg.k_min; k <= k_max; ++k) {
    DSetReport report = enumerate_d_sets(g, Capacity::uniform(g, k), cfg.cap);
    if (cfg.structured()) {
      json record = io::report_to_json(g, report);
      record["record"] = "sweep";
      record["kappa"] = k;
      emit(out, record);
      continue;
    }
    out << k << '\t' << report.d_sets.size() << '\t' << report.delta_min << '\t'
        << report.delta_max << '\t';
    for (std::size_t i = 0; i < report.d_sets.size(); ++i) {
      out << (i ? " " : "") << format_set(g, report.d_sets[i]);
    }
    out << '\n';
  }
  return kOk;
}

int cmd_bounds(const Config& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.graph_path.empty()) {
    Graph g = load_graph(cfg, err);
    Capacity kappa = load_kappa(cfg, g);
    Bounds b = bound_formulas(g, kappa);
    if (cfg.structured()) {
      emit(out, {{"record", "bounds"}, {"lower", b.lower}, {"upper", b.upper}, {"applicable", b.applicable}});
    } else {
      out << "lower " << b.lower << "\nupper " << b.upper << "\napplicable "
          << (b.applicable ? "yes" : "no") << '\n';
    }
    return kOk;
  }
  if (!cfg.n) throw UsageError("bounds needs --n (complete graph table) or --graph");
  int k_max = cfg.k_max.value_or(static_cast<int>(*cfg.n) - 1);
  auto rows = bound_table(*cfg.n, cfg.k_min, k_max);
  if (cfg.structured()) {
    for (const auto& r : rows) emit(out, {{"record", "bound"}, {"k", r.k}, {"lower", r.lower}, {"upper", r.upper}});
  } else {
    out << io::bound_table_tsv(rows);
  }
  return kOk;
}

int cmd_search(const Config& cfg, std::ostream& out, std::ostream& err) {
  Graph g = load_graph(cfg, err);
  Capacity kappa = load_kappa(cfg, g);
  UtilitySpec spec = require_spec(cfg, g.id_bound());
  auto found = search_nonspecialised_equilibria(g, kappa, spec, cfg.seed, cfg.trials);
  for (const auto& profile : found) {
    StabilityVerdict verdict = is_action_stable(g, profile, spec, cfg.delta, cfg.horizon);
    if (cfg.structured()) {
      emit(out, {{"record", "equilibrium"},
                 {"profile", io::profile_to_json(g, profile)},
                 {"action_stable", verdict.stable}});
    } else {
      out << actions_text(g, profile.actions) << (verdict.stable ? " stable" : " unstable") << '\n';
    }
  }
  if (!cfg.structured()) out << "# " << found.size() << " non-specialised equilibria\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Capacity-constrained local public goods games", "capshare"};
  app.require_subcommand(1);

  auto add_graph = [&](CLI::App* cmd, bool required) {
    auto* opt = cmd->add_option("--graph", cfg.graph_path, "Edge-list file");
    if (required) opt->required();
    auto* file = cmd->add_option("--kappa", cfg.kappa_path, "Capacity file");
    auto* uniform = cmd->add_option("--kappa-uniform", cfg.kappa_uniform, "Same capacity everywhere");
    file->excludes(uniform);
  };
  auto add_spec = [&](CLI::App* cmd) {
    auto* nc = cmd->add_option("--netflix-c", cfg.netflix_c, "Netflix game with cost c in (0,1)");
    auto* sp = cmd->add_option("--spec", cfg.spec_path, "Utility spec file");
    auto* qs = cmd->add_option("--qstar", cfg.q_star, "Satiation spec f(y) = min(y, q*), c = 1/2");
    cmd->add_option("--xmax", cfg.x_max, "Top action for --qstar (default q*+1)")->needs(qs);
    nc->excludes(sp)->excludes(qs);
    sp->excludes(qs);
  };
  auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--format", cfg.format, "table or structured")
        ->check(CLI::IsMember({"table", "structured"}));
  };

  auto* solve = app.add_subcommand("solve", "Construct a DP-subgraph and nicely balanced profile");
  add_graph(solve, true);
  add_spec(solve);
  add_output(solve);

  auto* check = app.add_subcommand("check", "Classify a profile and test for Nash equilibrium");
  add_graph(check, true);
  add_spec(check);
  check->add_option("--profile", cfg.profile_path, "Profile JSON")->required();
  add_output(check);

  auto* simulate = app.add_subcommand("simulate", "Run the best-action reply dynamic");
  add_graph(simulate, true);
  add_spec(simulate);
  simulate->add_option("--profile", cfg.profile_path, "Profile JSON")->required();
  simulate->add_option("--horizon", cfg.horizon, "Step limit");
  simulate->add_flag("--strict", cfg.strict, "Exit 3 unless the evolution settles");
  add_output(simulate);

  auto* stability = app.add_subcommand("stability", "Test action stability");
  add_graph(stability, true);
  add_spec(stability);
  stability->add_option("--profile", cfg.profile_path, "Profile JSON")->required();
  stability->add_option("--delta", cfg.delta, "Perturbation radius")->check(CLI::PositiveNumber);
  stability->add_option("--horizon", cfg.horizon, "Step limit");
  add_output(stability);

  auto* enumerate = app.add_subcommand("enumerate", "List every D-set by brute force");
  add_graph(enumerate, true);
  enumerate->add_option("--cap", cfg.cap, "Largest vertex count to enumerate");
  add_output(enumerate);

  auto* sweep = app.add_subcommand("sweep", "Enumerate D-sets for uniform capacities k-min..k-max");
  sweep->add_option("--graph", cfg.graph_path, "Edge-list file")->required();
  sweep->add_option("--k-min", cfg.k_min, "Smallest capacity");
  sweep->add_option("--k-max", cfg.k_max, "Largest capacity");
  sweep->add_option("--cap", cfg.cap, "Largest vertex count to enumerate");
  add_output(sweep);

  auto* bounds = app.add_subcommand("bounds", "D-set size bounds");
  add_graph(bounds, false);
  bounds->add_option("--n", cfg.n, "Complete graph size for the bound table");
  bounds->add_option("--k-min", cfg.k_min, "Smallest capacity");
  bounds->add_option("--k-max", cfg.k_max, "Largest capacity");
  add_output(bounds);

  auto* search = app.add_subcommand("search", "Random search for non-specialised equilibria");
  add_graph(search, true);
  add_spec(search);
  search->add_option("--seed", cfg.seed, "RNG seed");
  search->add_option("--trials", cfg.trials, "Random nomination profiles to try");
  search->add_option("--delta", cfg.delta, "Perturbation radius")->check(CLI::PositiveNumber);
  search->add_option("--horizon", cfg.horizon, "Step limit");
  add_output(search);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*solve) return cmd_solve(cfg, out, err);
    if (*check) return cmd_check(cfg, out, err);
    if (*simulate) return cmd_simulate(cfg, out, err);
    if (*stability) return cmd_stability(cfg, out, err);
    if (*enumerate) return cmd_enumerate(cfg, out, err);
    if (*sweep) return cmd_sweep(cfg, out, err);
    if (*bounds) return cmd_bounds(cfg, out, err);
    if (*search) return cmd_search(cfg, out, err);
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace capshare::cli
