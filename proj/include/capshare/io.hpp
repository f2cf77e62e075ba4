#ifndef CAPSHARE_IO_HPP
#define CAPSHARE_IO_HPP

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "capshare/dynamics.hpp"
#include "capshare/equilibrium.hpp"
#include "capshare/game.hpp"
#include "capshare/graph.hpp"
#include "capshare/oracle.hpp"

// Text formats shared by the CLI and the Python bindings. Everything that
// names a vertex uses its label.
namespace capshare::io {

using nlohmann::json;

/// Utility spec file:
///
///   xmax 4
///   cost 1/2
///   f 0 1 2 3 4     # f(0), f(1), ...; padded flat to players * xmax
UtilitySpec parse_spec(std::string_view text, std::size_t players);

/// Profile document: {"label": {"action": 1, "nominations": ["a", "b"]}, ...}.
/// Every vertex must appear. Throws ParseError naming the offending vertex
/// when the strategy-space constraints fail.
StrategyProfile parse_profile(std::string_view text, const Graph& g, const Capacity& kappa,
                              int x_max);
json profile_to_json(const Graph& g, const StrategyProfile& profile);

json dp_subgraph_to_json(const Graph& g, const DPSubgraph& h);
DPSubgraph dp_subgraph_from_json(const json& doc, const Graph& g);

json report_to_json(const Graph& g, const DSetReport& report);
json trace_summary_to_json(const Trace& trace);

/// One row per t, one column per vertex label, tab separated.
std::string trace_table(const Graph& g, const Trace& trace);

/// "k\tlower\tupper" header plus one row per k.
std::string bound_table_tsv(const std::vector<BoundRow>& rows);

std::string dp_subgraph_text(const Graph& g, const DPSubgraph& h);

}  // namespace capshare::io

#endif  // CAPSHARE_IO_HPP
