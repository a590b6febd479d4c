#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sicps/field.hpp"
#include "sicps/icp.hpp"

namespace sicps {

/// Colors are 1..num_colors.
struct Coloring {
  std::map<Node, int> assignment;
  int num_colors = 0;
};

/// K colors: color c goes to nodes (<c + sum_{m<v} a_m + (v-1)L>_K, v) for every column v.
Coloring theorem1_coloring(const UnionIcp& icp);

/// For i = 2 and (a_1+a_2+2) | K: node (k,1) gets <k>_n and node (k,2) gets
/// <k+a_2+1>_n with n = a_1+a_2+2. Throws std::invalid_argument otherwise.
Coloring theorem5_coloring(const UnionIcp& icp);

/// One color per node, in graph order.
Coloring unique_coloring(const SuicpGraph& graph);

/// Per-graph-index color vector. Throws std::invalid_argument if a node is uncolored
/// or a color is outside [1, num_colors].
std::vector<int> colors_by_index(const SuicpGraph& graph, const Coloring& coloring);

struct ProperVerdict {
  bool proper = true;
  // (node, interfering node with the same color), ordered by graph index.
  std::vector<std::pair<Node, Node>> violations;
};

ProperVerdict verify_proper(const SuicpGraph& graph, const Coloring& coloring);

/// Maximum over nodes of the number of distinct colors in the closed
/// anti-outneighborhood (the node plus its interferers). Throws
/// std::invalid_argument when the coloring is not proper.
int local_chromatic_value(const SuicpGraph& graph, const Coloring& coloring);

/// R_u = min{2(K-(i-1)L) + i - 2 - a_i, K}, with a_i the largest gap.
int upper_bound_ru(const GapVector& gaps);

/// Linear broadcast from a proper coloring: the server sends chi combinations
/// of the per-color message sums using a chi x n Vandermonde generator.
class TransmissionScheme {
 public:
  TransmissionScheme(PrimeField field, std::vector<int> node_colors, int num_colors, int chi);

  const PrimeField& field() const { return field_; }
  int num_colors() const { return num_colors_; }
  int chi() const { return chi_; }
  const FieldMatrix& generator() const { return generator_; }
  int color_of(std::size_t node) const { return node_colors_[node]; }
  /// Graph indices carrying color c (1-based).
  const std::vector<std::size_t>& color_members(int color) const {
    return color_members_[static_cast<std::size_t>(color - 1)];
  }

  /// chi transmitted packets for one packet per node.
  std::vector<Packet> encode(const std::vector<Packet>& messages) const;

 private:
  PrimeField field_;
  std::vector<int> node_colors_;
  int num_colors_;
  int chi_;
  FieldMatrix generator_;
  std::vector<std::vector<std::size_t>> color_members_;
};

/// Default field: smallest prime >= max(257, n).
std::uint64_t default_field_order(int num_colors);

/// Throws std::invalid_argument when the coloring is improper or the field has
/// fewer than n elements.
TransmissionScheme build_mds_scheme(const SuicpGraph& graph, const Coloring& coloring,
                                    std::optional<std::uint64_t> field_order = std::nullopt);

/// True when every chi x chi column submatrix is nonsingular. Exhaustive over subsets.
bool is_mds(const PrimeField& field, const FieldMatrix& generator);

/// Returns the message of a node the decoder is entitled to (side information only).
using SideInfoLookup = std::function<const Packet&(std::size_t)>;

/// Decodes the packet requested by node u from the broadcast and its side information.
Packet decode_node(const TransmissionScheme& scheme, const SuicpGraph& graph, std::size_t u,
                   const std::vector<Packet>& transmissions, const SideInfoLookup& side_info);

/// Encodes, then decodes every node from only its own side information.
/// Throws std::logic_error if a decoder touches a message it does not know.
std::vector<Packet> simulate_decode(const TransmissionScheme& scheme, const SuicpGraph& graph,
                                    const std::vector<Packet>& messages);

/// {"colors":n, "chi":chi, "field":q, "assignment":[[user,col,color],...]}
nlohmann::ordered_json to_json(const TransmissionScheme& scheme, const SuicpGraph& graph);

}  // namespace sicps
