#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "sicps/rational.hpp"

namespace sicps {

/// Cyclic shift to the right by t positions: rotate_gaps({2,1,0}, 1) == {0,2,1}.
/// This is the "clockwise rotation" used for gap vectors and compositions alike.
std::vector<int> rotate_gaps(const std::vector<int>& gaps, long long t);

/// Lexicographically greatest rotation together with the smallest shift t such
/// that rotate_gaps(canonical, t) reproduces the input.
std::pair<std::vector<int>, int> canonical_rotation(const std::vector<int>& gaps);

/// Smallest p dividing the length such that rotating by p is the identity.
int minimal_period(const std::vector<int>& values);

/// An ordered tuple (b_m, ..., b_1) of non-negative integers.
struct Composition {
  std::vector<int> parts;

  int max_part() const;
  long long total() const;
  std::size_t size() const { return parts.size(); }

  auto operator<=>(const Composition&) const = default;
};

/// All weak m-compositions of n in ascending lexicographic order.
std::vector<Composition> weak_compositions(int n, int m);

/// Streams the weak m-compositions of n (same order) without materializing them.
void for_each_weak_composition(int n, int m, const std::function<void(const std::vector<int>&)>& visit);

/// Number of weak m-compositions of n whose parts are all < t, via the
/// inclusion-exclusion sum over r + t*s = n.
BigInt composition_count_max_below(int n, int m, int t);

/// Rotation orbit of a composition. The representative is the lexicographically
/// greatest rotation, written as period_block repeated `repeat` times.
struct RotationClass {
  Composition representative;
  std::vector<int> period_block;
  int repeat = 1;
  // members[t] == rotate_gaps(representative, t) for t in [0, period).
  std::vector<Composition> members;

  int period() const { return static_cast<int>(period_block.size()); }
};

/// Partitions a complete set of compositions into rotation classes, sorted by
/// representative in descending lexicographic order. Throws
/// std::invalid_argument when some rotation of a member is missing from the input.
std::vector<RotationClass> group_rotation_classes(const std::vector<Composition>& compositions);

}  // namespace sicps
