#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sicps/combinatorics.hpp"

namespace sicps {

/// <m>_n: m mod n mapped into [1, n] (a multiple of n maps to n).
constexpr int wrap(long long m, int n) {
  long long r = m % n;
  if (r <= 0) r += n;
  return static_cast<int>(r);
}

/// Gap pattern (a_i, ..., a_1) and chunk length L of a structured ICP. The
/// user count K = (i-1)L + sum(a_j) + 1 is derived.
class GapVector {
 public:
  /// Throws std::invalid_argument on an empty pattern, a negative gap or L < 1.
  GapVector(std::vector<int> gaps, int chunk_length);

  /// Stored high index first: gaps()[0] == a_i, gaps().back() == a_1.
  const std::vector<int>& gaps() const { return gaps_; }
  int chunk_length() const { return chunk_length_; }
  int files_per_user() const { return static_cast<int>(gaps_.size()); }
  int users() const { return users_; }
  /// a_j, 1-based (a_1 is the last entry).
  int gap(int j) const { return gaps_[gaps_.size() - static_cast<std::size_t>(j)]; }
  int max_gap() const;
  /// True when the leading entry is the lexicographically greatest rotation.
  bool is_canonical() const;

  GapVector rotated(long long t) const { return GapVector(rotate_gaps(gaps_, t), chunk_length_); }
  GapVector canonical() const { return GapVector(canonical_rotation(gaps_).first, chunk_length_); }

  /// "(2,1,0)_2"
  std::string to_string() const;

  bool operator==(const GapVector&) const = default;

 private:
  std::vector<int> gaps_;
  int chunk_length_;
  int users_;
};

/// Files known to user k (1-based) in the single (gaps)_L-ICP with K users,
/// in clockwise order starting after k.
std::vector<int> single_icp_known_files(const std::vector<int>& gaps, int chunk_length, int users, int k);

/// The symmetric single-unicast ICP: user k wants x_k.
struct SingleIcp {
  GapVector spec;
  int users;
  // known[k-1]: file indices (1-based) in clockwise order.
  std::vector<std::vector<int>> known;
};

SingleIcp build_structured_icp(const GapVector& gaps);

/// Node (k, j): the j-th file requested by user k. Both indices are 1-based.
struct Node {
  int user;
  int column;
  auto operator<=>(const Node&) const = default;
};

/// Union of the (a_i..a_1)_L-ICP with its i-1 clockwise rotations. Column t
/// holds the (t-1)-th rotation; every user wants one file per column.
class UnionIcp {
 public:
  explicit UnionIcp(GapVector spec);

  const GapVector& spec() const { return spec_; }
  int users() const { return spec_.users(); }
  int files_per_user() const { return spec_.files_per_user(); }

  /// Wanted nodes (k,1..i).
  std::vector<Node> want_set(int user) const;
  /// Sorted known nodes of user k.
  const std::vector<Node>& known_set(int user) const { return known_[static_cast<std::size_t>(user - 1)]; }
  bool knows(int user, Node node) const;
  /// Gap pattern of column t (1-based): the (t-1)-th clockwise rotation.
  std::vector<int> column_gaps(int column) const { return rotate_gaps(spec_.gaps(), column - 1); }

 private:
  GapVector spec_;
  std::vector<std::vector<Node>> known_;
  std::vector<std::uint8_t> known_table_;  // [user][row][column]
};

UnionIcp build_union_icp(const GapVector& gaps);

/// Single-unicast side-information graph. Node u "knows" node v when the file
/// requested by v is in the side information of u; that is the edge u -> v.
class SuicpGraph {
 public:
  SuicpGraph(std::vector<Node> nodes, const std::function<bool(std::size_t, std::size_t)>& knows);

  std::size_t size() const { return nodes_.size(); }
  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(std::size_t index) const { return nodes_[index]; }
  std::optional<std::size_t> index_of(Node node) const;

  bool knows(std::size_t u, std::size_t v) const {
    return (bits_[u * words_ + v / 64] >> (v % 64)) & 1U;
  }
  /// Nodes whose requested file u already has.
  std::vector<std::size_t> side_info(std::size_t u) const;
  /// Every other node whose requested file u does not have.
  std::vector<std::size_t> interferers(std::size_t u) const;

  bool operator==(const SuicpGraph& other) const;

 private:
  std::vector<Node> nodes_;
  std::map<Node, std::size_t> index_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

/// Splits each user of the union ICP into i virtual single-request users that
/// keep the side information of the real user. Nodes are ordered by (user, column).
SuicpGraph to_suicp(const UnionIcp& icp);

/// Union of the distinct rotations of a repeated gap pattern s x l.
struct TildeIcp {
  std::vector<int> base;      // s = (a_m, ..., a_1)
  int repeat = 1;             // l
  int chunk_length = 1;       // L
  int users = 0;              // l*sum(s) + (l*m - 1)*L + 1
  // columns[t] == rotate_gaps(s x l, t) for t in [0, m).
  std::vector<std::vector<int>> columns;

  std::vector<int> repeated() const;  // s x l
  /// The ICP obtained after splitting every file into l equal parts.
  UnionIcp split_union() const { return UnionIcp(GapVector(repeated(), chunk_length)); }
};

TildeIcp build_tilde_icp(const std::vector<int>& base, int repeat, int chunk_length);

/// Side-information graph of the tilde ICP itself (m*K nodes, before splitting).
SuicpGraph to_suicp(const TildeIcp& icp);

/// {"gaps":[...], "L":..., "K":..., "i":..., "known":[[[user,col],...], ...]}
nlohmann::ordered_json to_json(const UnionIcp& icp);

}  // namespace sicps
