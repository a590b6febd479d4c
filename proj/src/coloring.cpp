#include "sicps/coloring.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sicps {

Coloring theorem1_coloring(const UnionIcp& icp) {
  const GapVector& spec = icp.spec();
  const int users = icp.users();
  Coloring coloring;
  coloring.num_colors = users;
  long long shift = 0;  // sum_{m=1}^{v-1} a_m + (v-1)L
  for (int v = 1; v <= icp.files_per_user(); ++v) {
    for (int c = 1; c <= users; ++c) coloring.assignment[Node{wrap(c + shift, users), v}] = c;
    if (v < icp.files_per_user()) shift += spec.gap(v) + spec.chunk_length();
  }
  return coloring;
}

Coloring theorem5_coloring(const UnionIcp& icp) {
  if (icp.files_per_user() != 2) throw std::invalid_argument("theorem5_coloring needs exactly two files per user");
  const int a2 = icp.spec().gap(2);
  const int a1 = icp.spec().gap(1);
  const int n = a1 + a2 + 2;
  if (icp.users() % n != 0) {
    throw std::invalid_argument("theorem5_coloring needs K to be a multiple of a_1+a_2+2");
  }
  Coloring coloring;
  coloring.num_colors = n;
  for (int k = 1; k <= icp.users(); ++k) {
    coloring.assignment[Node{k, 1}] = wrap(k, n);
    coloring.assignment[Node{k, 2}] = wrap(k + a2 + 1, n);
  }
  return coloring;
}

Coloring unique_coloring(const SuicpGraph& graph) {
  Coloring coloring;
  coloring.num_colors = static_cast<int>(graph.size());
  for (std::size_t u = 0; u < graph.size(); ++u) coloring.assignment[graph.node(u)] = static_cast<int>(u) + 1;
  return coloring;
}

std::vector<int> colors_by_index(const SuicpGraph& graph, const Coloring& coloring) {
  std::vector<int> colors(graph.size());
  for (std::size_t u = 0; u < graph.size(); ++u) {
    const auto it = coloring.assignment.find(graph.node(u));
    if (it == coloring.assignment.end()) {
      throw std::invalid_argument("coloring leaves node (" + std::to_string(graph.node(u).user) + "," +
                                  std::to_string(graph.node(u).column) + ") uncolored");
    }
    if (it->second < 1 || it->second > coloring.num_colors) throw std::invalid_argument("color index out of range");
    colors[u] = it->second;
  }
  return colors;
}

ProperVerdict verify_proper(const SuicpGraph& graph, const Coloring& coloring) {
  const auto colors = colors_by_index(graph, coloring);
  ProperVerdict verdict;
  for (std::size_t u = 0; u < graph.size(); ++u) {
    for (std::size_t v : graph.interferers(u)) {
      if (colors[u] == colors[v]) verdict.violations.emplace_back(graph.node(u), graph.node(v));
    }
  }
  verdict.proper = verdict.violations.empty();
  return verdict;
}

namespace {

// Sorted colors in the closed anti-outneighborhood of u.
std::vector<int> neighborhood_colors(const SuicpGraph& graph, const std::vector<int>& colors, int num_colors,
                                     std::size_t u) {
  std::vector<char> seen(static_cast<std::size_t>(num_colors) + 1, 0);
  seen[static_cast<std::size_t>(colors[u])] = 1;
  for (std::size_t v = 0; v < graph.size(); ++v) {
    if (v != u && !graph.knows(u, v)) seen[static_cast<std::size_t>(colors[v])] = 1;
  }
  std::vector<int> out;
  for (int c = 1; c <= num_colors; ++c) {
    if (seen[static_cast<std::size_t>(c)]) out.push_back(c);
  }
  return out;
}

}  // namespace

int local_chromatic_value(const SuicpGraph& graph, const Coloring& coloring) {
  if (!verify_proper(graph, coloring).proper) throw std::invalid_argument("local_chromatic_value: coloring is not proper");
  const auto colors = colors_by_index(graph, coloring);
  int best = 0;
  for (std::size_t u = 0; u < graph.size(); ++u) {
    best = std::max(best, static_cast<int>(neighborhood_colors(graph, colors, coloring.num_colors, u).size()));
  }
  return best;
}

int upper_bound_ru(const GapVector& gaps) {
  const int users = gaps.users();
  const int i = gaps.files_per_user();
  const int branch = 2 * (users - (i - 1) * gaps.chunk_length()) + i - 2 - gaps.max_gap();
  return std::min(branch, users);
}

TransmissionScheme::TransmissionScheme(PrimeField field, std::vector<int> node_colors, int num_colors, int chi)
    : field_(field), node_colors_(std::move(node_colors)), num_colors_(num_colors), chi_(chi) {
  if (chi_ < 1 || chi_ > num_colors_) throw std::invalid_argument("scheme rank must lie in [1, number of colors]");
  if (field_.order() < static_cast<std::uint64_t>(num_colors_)) {
    throw std::invalid_argument("field of order " + std::to_string(field_.order()) + " is too small for " +
                                std::to_string(num_colors_) + " colors");
  }
  // Vandermonde rows over the distinct points 1..n (mod q).
  generator_.assign(static_cast<std::size_t>(chi_), std::vector<Symbol>(static_cast<std::size_t>(num_colors_)));
  for (int r = 0; r < chi_; ++r) {
    for (int c = 0; c < num_colors_; ++c) {
      generator_[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
          field_.pow(field_.reduce(static_cast<std::uint64_t>(c) + 1), static_cast<std::uint64_t>(r));
    }
  }
  color_members_.resize(static_cast<std::size_t>(num_colors_));
  for (std::size_t u = 0; u < node_colors_.size(); ++u) {
    color_members_[static_cast<std::size_t>(node_colors_[u] - 1)].push_back(u);
  }
}

std::vector<Packet> TransmissionScheme::encode(const std::vector<Packet>& messages) const {
  if (messages.size() != node_colors_.size()) throw std::invalid_argument("encode: one message per node required");
  const std::size_t width = messages.empty() ? 0 : messages.front().size();
  std::vector<Packet> sums(static_cast<std::size_t>(num_colors_), Packet(width, 0));
  for (std::size_t u = 0; u < messages.size(); ++u) {
    field_.axpy(sums[static_cast<std::size_t>(node_colors_[u] - 1)], 1, messages[u]);
  }
  std::vector<Packet> out(static_cast<std::size_t>(chi_), Packet(width, 0));
  for (int r = 0; r < chi_; ++r) {
    for (int c = 0; c < num_colors_; ++c) {
      field_.axpy(out[static_cast<std::size_t>(r)], generator_[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)],
                  sums[static_cast<std::size_t>(c)]);
    }
  }
  return out;
}

std::uint64_t default_field_order(int num_colors) {
  return next_prime(std::max<std::uint64_t>(257, static_cast<std::uint64_t>(std::max(num_colors, 0))));
}

TransmissionScheme build_mds_scheme(const SuicpGraph& graph, const Coloring& coloring,
                                    std::optional<std::uint64_t> field_order) {
  const int chi = local_chromatic_value(graph, coloring);
  const std::uint64_t q = field_order.value_or(default_field_order(coloring.num_colors));
  return TransmissionScheme(PrimeField(q), colors_by_index(graph, coloring), coloring.num_colors, chi);
}

bool is_mds(const PrimeField& field, const FieldMatrix& generator) {
  const std::size_t rows = generator.size();
  if (rows == 0) return true;
  const std::size_t cols = generator[0].size();
  if (rows > cols) return false;
  std::vector<std::size_t> pick(rows);
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    FieldMatrix sub(rows, std::vector<Symbol>(rows));
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t j = 0; j < rows; ++j) sub[r][j] = generator[r][pick[j]];
    }
    if (field.rank(sub) != rows) return false;
    // Next combination in lexicographic order.
    std::size_t j = rows;
    while (j > 0 && pick[j - 1] == cols - rows + (j - 1)) --j;
    if (j == 0) return true;
    ++pick[j - 1];
    for (std::size_t k = j; k < rows; ++k) pick[k] = pick[k - 1] + 1;
  }
}

Packet decode_node(const TransmissionScheme& scheme, const SuicpGraph& graph, std::size_t u,
                   const std::vector<Packet>& transmissions, const SideInfoLookup& side_info) {
  const PrimeField& f = scheme.field();
  const int n = scheme.num_colors();
  const int chi = scheme.chi();
  if (transmissions.size() != static_cast<std::size_t>(chi)) throw std::invalid_argument("decode: wrong number of transmissions");
  const std::size_t width = transmissions.front().size();

  // Colors that still carry an unknown message: u's own and its interferers'.
  std::vector<char> in_window(static_cast<std::size_t>(n) + 1, 0);
  in_window[static_cast<std::size_t>(scheme.color_of(u))] = 1;
  for (std::size_t v = 0; v < graph.size(); ++v) {
    if (v != u && !graph.knows(u, v)) in_window[static_cast<std::size_t>(scheme.color_of(v))] = 1;
  }
  std::vector<int> solve_for;
  for (int c = 1; c <= n; ++c) {
    if (in_window[static_cast<std::size_t>(c)]) solve_for.push_back(c);
  }
  if (static_cast<int>(solve_for.size()) > chi) throw std::logic_error("decode: more unknown colors than transmissions");
  // Pad with the smallest remaining colors so the system is chi x chi.
  for (int c = 1; c <= n && static_cast<int>(solve_for.size()) < chi; ++c) {
    if (!in_window[static_cast<std::size_t>(c)]) {
      in_window[static_cast<std::size_t>(c)] = 2;
      solve_for.push_back(c);
    }
  }
  std::sort(solve_for.begin(), solve_for.end());

  auto known_sum = [&](int color, std::optional<std::size_t> skip) {
    Packet sum(width, 0);
    for (std::size_t m : scheme.color_members(color)) {
      if (skip && m == *skip) continue;
      f.axpy(sum, 1, side_info(m));
    }
    return sum;
  };

  std::vector<Packet> rhs = transmissions;
  for (int c = 1; c <= n; ++c) {
    if (in_window[static_cast<std::size_t>(c)] == 1 || in_window[static_cast<std::size_t>(c)] == 2) continue;
    const Packet y = known_sum(c, std::nullopt);
    for (int r = 0; r < chi; ++r) {
      f.axmy(rhs[static_cast<std::size_t>(r)], scheme.generator()[static_cast<std::size_t>(r)][static_cast<std::size_t>(c - 1)], y);
    }
  }
  FieldMatrix system(static_cast<std::size_t>(chi), std::vector<Symbol>(static_cast<std::size_t>(chi)));
  for (int r = 0; r < chi; ++r) {
    for (std::size_t j = 0; j < solve_for.size(); ++j) {
      system[static_cast<std::size_t>(r)][j] =
          scheme.generator()[static_cast<std::size_t>(r)][static_cast<std::size_t>(solve_for[j] - 1)];
    }
  }
  const auto solution = f.solve(system, rhs);
  if (!solution) throw std::logic_error("decode: generator submatrix is singular");

  const int own = scheme.color_of(u);
  const auto pos = static_cast<std::size_t>(std::find(solve_for.begin(), solve_for.end(), own) - solve_for.begin());
  Packet decoded = (*solution)[pos];
  const Packet others = known_sum(own, u);
  for (std::size_t j = 0; j < width; ++j) decoded[j] = f.sub(decoded[j], others[j]);
  return decoded;
}

std::vector<Packet> simulate_decode(const TransmissionScheme& scheme, const SuicpGraph& graph,
                                    const std::vector<Packet>& messages) {
  const auto transmissions = scheme.encode(messages);
  std::vector<Packet> decoded;
  decoded.reserve(graph.size());
  for (std::size_t u = 0; u < graph.size(); ++u) {
    decoded.push_back(decode_node(scheme, graph, u, transmissions, [&](std::size_t v) -> const Packet& {
      if (!graph.knows(u, v)) throw std::logic_error("decoder read a message outside its side information");
      return messages[v];
    }));
  }
  return decoded;
}

nlohmann::ordered_json to_json(const TransmissionScheme& scheme, const SuicpGraph& graph) {
  nlohmann::ordered_json out;
  out["colors"] = scheme.num_colors();
  out["chi"] = scheme.chi();
  out["field"] = scheme.field().order();
  auto assignment = nlohmann::ordered_json::array();
  for (std::size_t u = 0; u < graph.size(); ++u) {
    assignment.push_back({graph.node(u).user, graph.node(u).column, scheme.color_of(u)});
  }
  out["assignment"] = std::move(assignment);
  return out;
}

}  // namespace sicps
