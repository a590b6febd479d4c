#include "sicps/icp.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace sicps {

namespace {

int derived_users(const std::vector<int>& gaps, int chunk_length) {
  const long long i = static_cast<long long>(gaps.size());
  const long long sum = std::accumulate(gaps.begin(), gaps.end(), 0LL);
  return static_cast<int>((i - 1) * chunk_length + sum + 1);
}

}  // namespace

GapVector::GapVector(std::vector<int> gaps, int chunk_length) : gaps_(std::move(gaps)), chunk_length_(chunk_length) {
  if (gaps_.empty()) throw std::invalid_argument("gap vector must have at least one entry");
  if (chunk_length_ < 1) throw std::invalid_argument("chunk length L must be at least 1");
  if (std::any_of(gaps_.begin(), gaps_.end(), [](int a) { return a < 0; })) {
    throw std::invalid_argument("gaps must be non-negative");
  }
  users_ = derived_users(gaps_, chunk_length_);
}

int GapVector::max_gap() const { return *std::max_element(gaps_.begin(), gaps_.end()); }

bool GapVector::is_canonical() const { return canonical_rotation(gaps_).first == gaps_; }

std::string GapVector::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t j = 0; j < gaps_.size(); ++j) os << (j ? "," : "") << gaps_[j];
  os << ")_" << chunk_length_;
  return os.str();
}

std::vector<int> single_icp_known_files(const std::vector<int>& gaps, int chunk_length, int users, int k) {
  std::vector<int> out;
  long long offset = 0;
  for (std::size_t v = 1; v < gaps.size(); ++v) {
    offset += gaps[v - 1];
    for (int r = 1; r <= chunk_length; ++r) out.push_back(wrap(k + offset + r, users));
    offset += chunk_length;
  }
  return out;
}

SingleIcp build_structured_icp(const GapVector& gaps) {
  SingleIcp icp{gaps, gaps.users(), {}};
  for (int k = 1; k <= icp.users; ++k) {
    icp.known.push_back(single_icp_known_files(gaps.gaps(), gaps.chunk_length(), icp.users, k));
  }
  return icp;
}

UnionIcp::UnionIcp(GapVector spec) : spec_(std::move(spec)) {
  const int users = spec_.users();
  const int columns = spec_.files_per_user();
  const auto cells = static_cast<std::size_t>(users) * static_cast<std::size_t>(columns);
  known_table_.assign(static_cast<std::size_t>(users) * cells, 0);
  known_.resize(static_cast<std::size_t>(users));
  for (int t = 1; t <= columns; ++t) {
    const auto gaps = column_gaps(t);
    for (int k = 1; k <= users; ++k) {
      for (int b : single_icp_known_files(gaps, spec_.chunk_length(), users, k)) {
        known_table_[static_cast<std::size_t>(k - 1) * cells + static_cast<std::size_t>(b - 1) * columns +
                     static_cast<std::size_t>(t - 1)] = 1;
        known_[static_cast<std::size_t>(k - 1)].push_back(Node{b, t});
      }
    }
  }
  for (auto& set : known_) std::sort(set.begin(), set.end());
}

std::vector<Node> UnionIcp::want_set(int user) const {
  std::vector<Node> out;
  for (int t = 1; t <= files_per_user(); ++t) out.push_back(Node{user, t});
  return out;
}

bool UnionIcp::knows(int user, Node node) const {
  const int columns = files_per_user();
  const auto cells = static_cast<std::size_t>(users()) * static_cast<std::size_t>(columns);
  return known_table_[static_cast<std::size_t>(user - 1) * cells + static_cast<std::size_t>(node.user - 1) * columns +
                      static_cast<std::size_t>(node.column - 1)] != 0;
}

UnionIcp build_union_icp(const GapVector& gaps) { return UnionIcp(gaps); }

SuicpGraph::SuicpGraph(std::vector<Node> nodes, const std::function<bool(std::size_t, std::size_t)>& knows)
    : nodes_(std::move(nodes)), words_((nodes_.size() + 63) / 64) {
  for (std::size_t u = 0; u < nodes_.size(); ++u) {
    if (!index_.emplace(nodes_[u], u).second) throw std::invalid_argument("duplicate node in side-information graph");
  }
  bits_.assign(nodes_.size() * words_, 0);
  for (std::size_t u = 0; u < nodes_.size(); ++u) {
    for (std::size_t v = 0; v < nodes_.size(); ++v) {
      if (u != v && knows(u, v)) bits_[u * words_ + v / 64] |= std::uint64_t{1} << (v % 64);
    }
  }
}

std::optional<std::size_t> SuicpGraph::index_of(Node node) const {
  const auto it = index_.find(node);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> SuicpGraph::side_info(std::size_t u) const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < size(); ++v) {
    if (knows(u, v)) out.push_back(v);
  }
  return out;
}

std::vector<std::size_t> SuicpGraph::interferers(std::size_t u) const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < size(); ++v) {
    if (v != u && !knows(u, v)) out.push_back(v);
  }
  return out;
}

bool SuicpGraph::operator==(const SuicpGraph& other) const {
  return nodes_ == other.nodes_ && bits_ == other.bits_;
}

SuicpGraph to_suicp(const UnionIcp& icp) {
  std::vector<Node> nodes;
  for (int k = 1; k <= icp.users(); ++k) {
    for (int t = 1; t <= icp.files_per_user(); ++t) nodes.push_back(Node{k, t});
  }
  return SuicpGraph(nodes, [&](std::size_t u, std::size_t v) { return icp.knows(nodes[u].user, nodes[v]); });
}

std::vector<int> TildeIcp::repeated() const {
  std::vector<int> out;
  for (int r = 0; r < repeat; ++r) out.insert(out.end(), base.begin(), base.end());
  return out;
}

TildeIcp build_tilde_icp(const std::vector<int>& base, int repeat, int chunk_length) {
  if (base.empty()) throw std::invalid_argument("tilde ICP needs a non-empty base pattern");
  if (repeat < 1) throw std::invalid_argument("tilde ICP repeat count must be at least 1");
  TildeIcp icp;
  icp.base = base;
  icp.repeat = repeat;
  icp.chunk_length = chunk_length;
  const GapVector full(icp.repeated(), chunk_length);  // validates gaps and L
  icp.users = full.users();
  for (std::size_t t = 0; t < base.size(); ++t) icp.columns.push_back(rotate_gaps(full.gaps(), static_cast<long long>(t)));
  return icp;
}

SuicpGraph to_suicp(const TildeIcp& icp) {
  const int columns = static_cast<int>(icp.columns.size());
  std::vector<Node> nodes;
  for (int k = 1; k <= icp.users; ++k) {
    for (int t = 1; t <= columns; ++t) nodes.push_back(Node{k, t});
  }
  // known[k-1][t-1]: rows of column t known to user k.
  std::vector<std::vector<std::vector<std::uint8_t>>> known(
      static_cast<std::size_t>(icp.users),
      std::vector<std::vector<std::uint8_t>>(static_cast<std::size_t>(columns),
                                             std::vector<std::uint8_t>(static_cast<std::size_t>(icp.users) + 1, 0)));
  for (int k = 1; k <= icp.users; ++k) {
    for (int t = 1; t <= columns; ++t) {
      for (int b : single_icp_known_files(icp.columns[static_cast<std::size_t>(t - 1)], icp.chunk_length, icp.users, k)) {
        known[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(t - 1)][static_cast<std::size_t>(b)] = 1;
      }
    }
  }
  return SuicpGraph(nodes, [&](std::size_t u, std::size_t v) {
    const Node& a = nodes[u];
    const Node& b = nodes[v];
    return known[static_cast<std::size_t>(a.user - 1)][static_cast<std::size_t>(b.column - 1)]
                [static_cast<std::size_t>(b.user)] != 0;
  });
}

nlohmann::ordered_json to_json(const UnionIcp& icp) {
  nlohmann::ordered_json out;
  out["gaps"] = icp.spec().gaps();
  out["L"] = icp.spec().chunk_length();
  out["K"] = icp.users();
  out["i"] = icp.files_per_user();
  auto known = nlohmann::ordered_json::array();
  for (int k = 1; k <= icp.users(); ++k) {
    auto row = nlohmann::ordered_json::array();
    for (const Node& n : icp.known_set(k)) row.push_back({n.user, n.column});
    known.push_back(std::move(row));
  }
  out["known"] = std::move(known);
  return out;
}

}  // namespace sicps
