#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sicps/icp.hpp"
#include "sicps/rational.hpp"

namespace sicps {

struct MaisWitness {
  int value = 0;
  std::vector<Node> nodes;  // sorted by (user, column)
};

/// Acyclic induced subgraph of the union ICP with K-(i-1)L+i-1 nodes: in
/// column p, user 1 together with the users of its first interference chunk.
MaisWitness lower_bound_mais_constructive(const GapVector& gaps);

/// Column visiting order of the constructive witness: columns sorted by the
/// length of user 1's first interference chunk, descending, stable on index.
std::vector<int> mais_column_order(const GapVector& gaps);

/// True iff the subgraph induced by `nodes` (graph indices) has no directed cycle.
bool is_acyclic_induced(const SuicpGraph& graph, const std::vector<std::size_t>& nodes);

constexpr std::size_t kDefaultMaisCap = 26;

/// Node cap for the brute-force search: SICPS_MAIS_CAP when set, else 26.
std::size_t mais_node_cap();

/// Exact maximum acyclic induced subgraph size by branch and bound.
/// Throws std::invalid_argument when the graph has more than node_cap nodes
/// (or more than 64, the hard limit of the bitset search).
int mais_bruteforce(const SuicpGraph& graph, std::size_t node_cap = mais_node_cap());

/// Known optimal rates: (a_i,0,...,0)_L gives K-(i-1)L+i-1, L = 1 gives K,
/// i = 2 with (a_1+a_2+2) | K gives a_1+a_2+2. Absent otherwise.
std::optional<Rational> exact_rate_special(const GapVector& gaps);

/// R_u / (K-(i-1)L+i-1).
Rational gap_ratio(const GapVector& gaps);

struct TildeBounds {
  Rational lower;
  Rational upper;
};

/// lower = sum_t (a_t+1) over s; upper = min{2(K-(i-1)L)+i-2-max(s), K} / l, i = l*m.
/// The upper bound is the per-subfile rate of the split problem scaled by 1/l.
TildeBounds tilde_icp_bounds(const std::vector<int>& base, int repeat, int chunk_length);

struct BoundReport {
  int upper = 0;
  int lower_constructive = 0;
  std::optional<int> lower_brute;
  std::optional<Rational> exact;
  std::vector<Node> witness;
};

/// Full bound report; the brute-force entry is filled only when the SUICP has
/// at most `brute_cap` nodes.
BoundReport analyze_bounds(const GapVector& gaps, std::size_t brute_cap = mais_node_cap());

/// {"upper":..., "lower_constructive":..., "lower_brute":...|null, "exact":"p/q"|null, "witness":[[user,col],...]}
nlohmann::ordered_json to_json(const BoundReport& report);

}  // namespace sicps
