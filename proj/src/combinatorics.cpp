#include "sicps/combinatorics.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace sicps {

std::vector<int> rotate_gaps(const std::vector<int>& gaps, long long t) {
  const auto n = static_cast<long long>(gaps.size());
  if (n == 0) return {};
  const long long shift = ((t % n) + n) % n;
  std::vector<int> out(gaps.size());
  for (long long j = 0; j < n; ++j) out[static_cast<std::size_t>((j + shift) % n)] = gaps[static_cast<std::size_t>(j)];
  return out;
}

std::pair<std::vector<int>, int> canonical_rotation(const std::vector<int>& gaps) {
  if (gaps.empty()) throw std::invalid_argument("canonical_rotation: empty gap vector");
  const int n = static_cast<int>(gaps.size());
  std::vector<int> best = gaps;
  for (int t = 1; t < n; ++t) best = std::max(best, rotate_gaps(gaps, t));
  for (int t = 0; t < n; ++t) {
    if (rotate_gaps(best, t) == gaps) return {best, t};
  }
  throw std::logic_error("canonical_rotation: no shift reproduces the input");
}

int minimal_period(const std::vector<int>& values) {
  const int n = static_cast<int>(values.size());
  for (int p = 1; p < n; ++p) {
    if (n % p == 0 && rotate_gaps(values, p) == values) return p;
  }
  return n;
}

int Composition::max_part() const { return parts.empty() ? 0 : *std::max_element(parts.begin(), parts.end()); }

long long Composition::total() const { return std::accumulate(parts.begin(), parts.end(), 0LL); }

void for_each_weak_composition(int n, int m, const std::function<void(const std::vector<int>&)>& visit) {
  if (n < 0 || m < 1) throw std::invalid_argument("weak compositions need n >= 0 and m >= 1");
  std::vector<int> parts(static_cast<std::size_t>(m), 0);
  // Ascending lexicographic order: the first part grows slowest.
  std::function<void(int, int)> fill = [&](int index, int remaining) {
    if (index == m - 1) {
      parts[static_cast<std::size_t>(index)] = remaining;
      visit(parts);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      parts[static_cast<std::size_t>(index)] = v;
      fill(index + 1, remaining - v);
    }
  };
  fill(0, n);
}

std::vector<Composition> weak_compositions(int n, int m) {
  std::vector<Composition> out;
  for_each_weak_composition(n, m, [&](const std::vector<int>& parts) { out.push_back(Composition{parts}); });
  return out;
}

BigInt composition_count_max_below(int n, int m, int t) {
  if (n < 0 || m < 1 || t < 1) throw std::invalid_argument("composition_count_max_below: need n >= 0, m >= 1, t >= 1");
  BigInt total = 0;
  for (long long s = 0; static_cast<long long>(t) * s <= n; ++s) {
    const long long r = n - static_cast<long long>(t) * s;
    BigInt term = binomial(m, s) * binomial(m + r - 1, r);
    if (s % 2 == 0) total += term;
    else total -= term;
  }
  return total;
}

std::vector<RotationClass> group_rotation_classes(const std::vector<Composition>& compositions) {
  std::set<Composition> remaining(compositions.begin(), compositions.end());
  std::vector<RotationClass> classes;
  while (!remaining.empty()) {
    const Composition seed = *remaining.begin();
    RotationClass cls;
    cls.representative = Composition{canonical_rotation(seed.parts).first};
    const int period = minimal_period(cls.representative.parts);
    cls.period_block.assign(cls.representative.parts.begin(), cls.representative.parts.begin() + period);
    cls.repeat = static_cast<int>(cls.representative.size()) / period;
    for (int t = 0; t < period; ++t) {
      Composition member{rotate_gaps(cls.representative.parts, t)};
      if (remaining.erase(member) == 0) {
        throw std::invalid_argument("group_rotation_classes: input is not closed under rotation");
      }
      cls.members.push_back(std::move(member));
    }
    classes.push_back(std::move(cls));
  }
  std::sort(classes.begin(), classes.end(),
            [](const RotationClass& a, const RotationClass& b) { return a.representative > b.representative; });
  return classes;
}

}  // namespace sicps
