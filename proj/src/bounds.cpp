#include "sicps/bounds.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>

#include "sicps/coloring.hpp"

namespace sicps {

std::vector<int> mais_column_order(const GapVector& gaps) {
  std::vector<int> order(static_cast<std::size_t>(gaps.files_per_user()));
  std::iota(order.begin(), order.end(), 1);
  std::stable_sort(order.begin(), order.end(), [&](int p, int q) {
    return rotate_gaps(gaps.gaps(), p - 1).front() > rotate_gaps(gaps.gaps(), q - 1).front();
  });
  return order;
}

MaisWitness lower_bound_mais_constructive(const GapVector& gaps) {
  MaisWitness witness;
  for (int p : mais_column_order(gaps)) {
    const int first = rotate_gaps(gaps.gaps(), p - 1).front();
    for (int k = 1; k <= first + 1; ++k) witness.nodes.push_back(Node{k, p});
  }
  std::sort(witness.nodes.begin(), witness.nodes.end());
  witness.value = static_cast<int>(witness.nodes.size());
  return witness;
}

bool is_acyclic_induced(const SuicpGraph& graph, const std::vector<std::size_t>& nodes) {
  // Kahn's algorithm restricted to the chosen nodes.
  std::vector<std::size_t> members(nodes);
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  std::vector<int> indegree(members.size(), 0);
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = 0; b < members.size(); ++b) {
      if (a != b && graph.knows(members[a], members[b])) ++indegree[b];
    }
  }
  std::vector<std::size_t> ready;
  for (std::size_t b = 0; b < members.size(); ++b) {
    if (indegree[b] == 0) ready.push_back(b);
  }
  std::size_t removed = 0;
  while (!ready.empty()) {
    const std::size_t a = ready.back();
    ready.pop_back();
    ++removed;
    for (std::size_t b = 0; b < members.size(); ++b) {
      if (a != b && graph.knows(members[a], members[b]) && --indegree[b] == 0) ready.push_back(b);
    }
  }
  return removed == members.size();
}

std::size_t mais_node_cap() {
  const char* env = std::getenv("SICPS_MAIS_CAP");
  if (env == nullptr || *env == '\0') return kDefaultMaisCap;
  std::size_t used = 0;
  const unsigned long value = std::stoul(env, &used);
  if (used != std::string(env).size()) throw std::invalid_argument("SICPS_MAIS_CAP must be a positive integer");
  return value;
}

namespace {

using Mask = std::uint64_t;

class MaisSearch {
 public:
  explicit MaisSearch(const SuicpGraph& graph) : n_(graph.size()), out_(n_, 0), in_(n_, 0) {
    for (std::size_t u = 0; u < n_; ++u) {
      for (std::size_t v = 0; v < n_; ++v) {
        if (u != v && graph.knows(u, v)) {
          out_[u] |= Mask{1} << v;
          in_[v] |= Mask{1} << u;
        }
      }
    }
  }

  int run() {
    const Mask all = n_ == 64 ? ~Mask{0} : (Mask{1} << n_) - 1;
    search(0, all);
    return best_;
  }

 private:
  // Nodes of `chosen` reachable from u along edges inside chosen.
  Mask reach_within(Mask start, Mask chosen) const {
    Mask seen = start & chosen;
    Mask frontier = seen;
    while (frontier) {
      const int v = std::countr_zero(frontier);
      frontier &= frontier - 1;
      const Mask next = out_[static_cast<std::size_t>(v)] & chosen & ~seen;
      seen |= next;
      frontier |= next;
    }
    return seen;
  }

  bool closes_cycle(std::size_t u, Mask chosen) const {
    return (reach_within(out_[u], chosen) & in_[u]) != 0;
  }

  // Upper bound on how many candidates fit: nodes joined by 2-cycles cannot
  // coexist, so a greedy clique cover of the 2-cycle graph bounds the count.
  int cover_bound(Mask candidates) const {
    Mask cliques[64];
    int count = 0;
    for (Mask rest = candidates; rest; rest &= rest - 1) {
      const auto u = static_cast<std::size_t>(std::countr_zero(rest));
      const Mask mutual = out_[u] & in_[u];
      int slot = 0;
      while (slot < count && (cliques[slot] & ~mutual) != 0) ++slot;
      if (slot == count) cliques[count++] = 0;
      cliques[slot] |= Mask{1} << u;
    }
    return count;
  }

  void search(Mask chosen, Mask candidates) {
    // Drop candidates that would close a cycle with the chosen nodes.
    for (Mask rest = candidates; rest; rest &= rest - 1) {
      const auto u = static_cast<std::size_t>(std::countr_zero(rest));
      if (closes_cycle(u, chosen)) candidates &= ~(Mask{1} << u);
    }
    // A source or sink of the remaining graph never lies on a cycle: take it.
    bool changed = true;
    while (changed) {
      changed = false;
      const Mask live = chosen | candidates;
      for (Mask rest = candidates; rest; rest &= rest - 1) {
        const auto u = static_cast<std::size_t>(std::countr_zero(rest));
        if ((out_[u] & live) == 0 || (in_[u] & live) == 0) {
          chosen |= Mask{1} << u;
          candidates &= ~(Mask{1} << u);
          changed = true;
        }
      }
    }
    const int size = std::popcount(chosen);
    if (candidates == 0) {
      best_ = std::max(best_, size);
      return;
    }
    if (size + cover_bound(candidates) <= best_) return;

    std::size_t pick = 0;
    int degree = -1;
    for (Mask rest = candidates; rest; rest &= rest - 1) {
      const auto u = static_cast<std::size_t>(std::countr_zero(rest));
      const int d = std::popcount((out_[u] | in_[u]) & candidates);
      if (d > degree) {
        degree = d;
        pick = u;
      }
    }
    const Mask bit = Mask{1} << pick;
    search(chosen | bit, candidates & ~bit);
    search(chosen, candidates & ~bit);
  }

  std::size_t n_;
  std::vector<Mask> out_;
  std::vector<Mask> in_;
  int best_ = 0;
};

}  // namespace

int mais_bruteforce(const SuicpGraph& graph, std::size_t node_cap) {
  if (graph.size() > node_cap || graph.size() > 64) {
    throw std::invalid_argument("mais_bruteforce: " + std::to_string(graph.size()) + " nodes exceed the cap of " +
                                std::to_string(std::min<std::size_t>(node_cap, 64)));
  }
  if (graph.size() == 0) return 0;
  return MaisSearch(graph).run();
}

std::optional<Rational> exact_rate_special(const GapVector& gaps) {
  const GapVector canon = gaps.canonical();
  const auto& a = canon.gaps();
  const int users = canon.users();
  const int i = canon.files_per_user();
  const int L = canon.chunk_length();
  if (std::all_of(a.begin() + 1, a.end(), [](int x) { return x == 0; })) {
    return Rational(users - (i - 1) * L + i - 1);
  }
  if (L == 1) return Rational(users);
  if (i == 2) {
    const int n = canon.gap(1) + canon.gap(2) + 2;
    if (users % n == 0) return Rational(n);
  }
  return std::nullopt;
}

Rational gap_ratio(const GapVector& gaps) {
  const int lower = gaps.users() - (gaps.files_per_user() - 1) * gaps.chunk_length() + gaps.files_per_user() - 1;
  return Rational(upper_bound_ru(gaps), lower);
}

TildeBounds tilde_icp_bounds(const std::vector<int>& base, int repeat, int chunk_length) {
  const TildeIcp tilde = build_tilde_icp(base, repeat, chunk_length);
  TildeBounds bounds;
  for (int a : base) bounds.lower += a + 1;
  bounds.upper = Rational(upper_bound_ru(GapVector(tilde.repeated(), chunk_length)), repeat);
  return bounds;
}

BoundReport analyze_bounds(const GapVector& gaps, std::size_t brute_cap) {
  BoundReport report;
  report.upper = upper_bound_ru(gaps);
  const MaisWitness witness = lower_bound_mais_constructive(gaps);
  report.lower_constructive = witness.value;
  report.witness = witness.nodes;
  report.exact = exact_rate_special(gaps);
  const auto nodes = static_cast<std::size_t>(gaps.users()) * static_cast<std::size_t>(gaps.files_per_user());
  if (nodes <= brute_cap && nodes <= 64) report.lower_brute = mais_bruteforce(to_suicp(build_union_icp(gaps)), brute_cap);
  return report;
}

nlohmann::ordered_json to_json(const BoundReport& report) {
  nlohmann::ordered_json out;
  out["upper"] = report.upper;
  out["lower_constructive"] = report.lower_constructive;
  out["lower_brute"] = report.lower_brute ? nlohmann::ordered_json(*report.lower_brute) : nlohmann::ordered_json(nullptr);
  out["exact"] = report.exact ? nlohmann::ordered_json(to_fraction_string(*report.exact)) : nlohmann::ordered_json(nullptr);
  auto witness = nlohmann::ordered_json::array();
  for (const Node& node : report.witness) witness.push_back({node.user, node.column});
  out["witness"] = std::move(witness);
  return out;
}

}  // namespace sicps
