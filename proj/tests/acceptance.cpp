// Acceptance suite: one line per criterion, non-zero exit if any fails.
#include <chrono>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "sicps/bounds.hpp"
#include "sicps/cli.hpp"
#include "sicps/coloring.hpp"
#include "sicps/macc.hpp"

using namespace sicps;
using Json = nlohmann::json;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void expect(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

Json cli_json(const std::vector<std::string>& args, int& code) {
  std::ostringstream out;
  std::ostringstream err;
  code = run_cli(args, out, err);
  return code == kExitOk || code == kExitVerification ? Json::parse(out.str()) : Json();
}

void for_each_canonical(int max_nodes_or_users, bool count_nodes, const std::function<void(const GapVector&)>& visit) {
  for (int i = 1; i <= max_nodes_or_users; ++i) {
    for (int L = 1; L <= max_nodes_or_users; ++L) {
      const int limit_users = count_nodes ? max_nodes_or_users / i : max_nodes_or_users;
      const int budget = limit_users - 1 - (i - 1) * L;
      if (budget < 0) continue;
      std::vector<int> g(static_cast<std::size_t>(i), 0);
      while (true) {
        int sum = std::accumulate(g.begin(), g.end(), 0);
        if (sum <= budget) {
          GapVector spec(g, L);
          if (spec.is_canonical()) visit(spec);
        }
        int j = i - 1;
        while (j >= 0 && g[static_cast<std::size_t>(j)] == budget) g[static_cast<std::size_t>(j--)] = 0;
        if (j < 0) break;
        ++g[static_cast<std::size_t>(j)];
      }
    }
  }
}

Outcome example1() {
  Outcome o;
  int code = 0;
  const Json j = cli_json({"icp", "analyze", "--gaps", "2,1,0", "--L", "2"}, code);
  o.expect(code == kExitOk, "exit code " + std::to_string(code));
  if (code != kExitOk) return o;
  o.expect(j["K"] == 8, "K");
  o.expect(j["upper"] == 7, "R_u");
  o.expect(j["lower_constructive"] == 6, "lower bound");
  o.expect(j["coloring"]["proper"] == true, "properness");
  o.expect(j["coloring"]["local_chromatic"] == 7, "local chromatic value");
  return o;
}

Outcome example23() {
  Outcome o;
  const GapVector spec({3, 2, 1}, 2);
  o.expect(spec.users() == 11, "K");
  o.expect(2 * (spec.users() - 4) + 1 - 3 == 12, "first branch");
  o.expect(upper_bound_ru(spec) == 11, "R_u");
  o.expect(lower_bound_mais_constructive(spec).value == 9, "lower bound");
  return o;
}

Outcome witness_532() {
  Outcome o;
  const GapVector spec({5, 3, 2}, 2);
  const MaisWitness w = lower_bound_mais_constructive(spec);
  o.expect(w.value == 13, "value " + std::to_string(w.value));
  const SuicpGraph g = to_suicp(build_union_icp(spec));
  std::vector<std::size_t> idx;
  for (const Node& n : w.nodes) idx.push_back(*g.index_of(n));
  o.expect(idx.size() == 13, "witness size");
  o.expect(is_acyclic_induced(g, idx), "witness acyclic");
  return o;
}

Outcome theorem5() {
  Outcome o;
  for (int L : {6, 11}) {
    const GapVector spec({2, 1}, L);
    const UnionIcp icp = build_union_icp(spec);
    const SuicpGraph g = to_suicp(icp);
    const Coloring c = theorem5_coloring(icp);
    o.expect(spec.users() == (L == 6 ? 10 : 15), "K for L=" + std::to_string(L));
    o.expect(exact_rate_special(spec) == Rational(5), "exact rate for L=" + std::to_string(L));
    o.expect(verify_proper(g, c).proper, "properness for L=" + std::to_string(L));
    o.expect(local_chromatic_value(g, c) == 5, "value for L=" + std::to_string(L));
  }
  return o;
}

Outcome example6() {
  Outcome o;
  o.expect(enumerate_placement_sets(8, 2, 2).size() == 20, "|S|");
  const DeliveryTable t = build_delivery_icp(CcdnConfig{8, 8, 2}, 2, {1, 2, 3, 4, 5, 6, 7, 8});
  o.expect(t.columns.size() == 10, "columns");
  std::vector<Composition> labels;
  for (const auto& c : t.columns) labels.push_back(c.label);
  std::vector<std::vector<int>> reps;
  for (const auto& cls : group_rotation_classes(labels)) reps.push_back(cls.representative.parts);
  o.expect(reps == std::vector<std::vector<int>>{{3, 0, 0}, {2, 1, 0}, {2, 0, 1}, {1, 1, 1}}, "classes");
  const Rational r = rate_new(8, 2, 2);
  o.expect(r == Rational(68, 60), "R_new");
  o.expect(rate_hkd(8, 2, 2) == Rational(4, 3), "R_HKD");
  o.expect(rate_rk(8, 8, 2, Rational(2)) == 2, "R_RK");
  o.expect(Rational(5, 3) > r && Rational(7, 6) > r, "reference constants");
  return o;
}

Outcome simulate() {
  Outcome o;
  int code = 0;
  const Json j = cli_json({"macc", "simulate", "--N", "8", "--K", "8", "--L", "2", "--w", "2", "--demands",
                           "1,2,3,4,5,6,7,8", "--seed", "2024"},
                          code);
  o.expect(code == kExitOk, "exit code " + std::to_string(code));
  if (code != kExitOk) return o;
  o.expect(j["decoded_ok"] == true, "decoding");
  o.expect(j["total_rate"] == to_fraction_string(Rational(68, 60)), "total rate " + j["total_rate"].dump());
  return o;
}

Outcome tilde_bound() {
  Outcome o;
  o.expect(tilde_icp_bounds({1}, 3, 2).upper == Rational(8, 3), "upper");
  return o;
}

Outcome closed_form_sweep() {
  Outcome o;
  for (int K = 2; K <= 40; ++K) {
    for (int L = (K + 1) / 2; L < K; ++L) {
      const Rational r = rate_new(K, L, 1);
      const long long d = K - L;
      const Rational closed = (d - 1) % 2 != 0 ? Rational(d * (5 * d + 2), 8 * K) : Rational(d * (5 * d + 2) + 1, 8 * K);
      const std::string at = " at K=" + std::to_string(K) + " L=" + std::to_string(L);
      o.expect(r == closed, "closed form" + at);
      o.expect(r == rate_closed_form_large_L(K, L), "library closed form" + at);
      o.expect(r <= Rational(5 * d * (d + 1), 8 * K), "cap" + at);
    }
  }
  return o;
}

Outcome beats_references() {
  Outcome o;
  for (int K = 1; K <= 20; ++K) {
    for (int L = 1; L <= K; ++L) {
      for (int w = 1; w <= K / L; ++w) {
        const Rational r = rate_new(K, L, w);
        const std::string at = " at K=" + std::to_string(K) + " L=" + std::to_string(L) + " w=" + std::to_string(w);
        o.expect(r <= rate_hkd(K, L, w), "HKD" + at);
        o.expect(r <= rate_rk(K, K, L, Rational(w * K, K)), "RK" + at);
      }
    }
  }
  return o;
}

Outcome random_gap_vectors() {
  Outcome o;
  std::mt19937_64 rng(20240301);
  int accepted = 0;
  while (accepted < 500) {
    const int i = 1 + static_cast<int>(rng() % 6);
    const int L = 1 + static_cast<int>(rng() % 6);
    std::vector<int> g(static_cast<std::size_t>(i));
    for (auto& x : g) x = static_cast<int>(rng() % 10);
    const GapVector spec = GapVector(g, L).canonical();
    if (spec.users() > 30) continue;
    ++accepted;
    const UnionIcp icp = build_union_icp(spec);
    const SuicpGraph graph = to_suicp(icp);
    const Coloring c = theorem1_coloring(icp);
    o.expect(gap_ratio(spec) <= 2, "ratio " + spec.to_string());
    const bool proper = verify_proper(graph, c).proper;
    o.expect(proper, "proper " + spec.to_string());
    if (proper) o.expect(local_chromatic_value(graph, c) <= upper_bound_ru(spec), "value " + spec.to_string());
  }
  return o;
}

Outcome counting() {
  Outcome o;
  for (int K = 1; K <= 24; ++K) {
    for (int L = 1; L <= K; ++L) {
      for (int w = 1; w <= K / L; ++w) {
        const std::string at = " at K=" + std::to_string(K) + " L=" + std::to_string(L) + " w=" + std::to_string(w);
        const auto sets = enumerate_placement_sets(K, L, w);
        o.expect(BigInt(K) * binomial(K - w * L + w - 1, w - 1) / w == sets.size(), "|S|" + at);
        o.expect(BigInt(K) * binomial(K - w * L + w - 1, w - 1) % w == 0, "|S| integral" + at);
        const int n = K - w * L - 1;
        if (n >= 0) {
          o.expect(binomial(K - w * L + w - 1, w) == weak_compositions(n, w + 1).size(), "|B|" + at);
        }
      }
    }
  }
  for (int n = 0; n <= 12; ++n) {
    for (int m = 1; m <= 12; ++m) {
      std::vector<long long> by_max(static_cast<std::size_t>(n) + 1, 0);
      for_each_weak_composition(n, m, [&](const std::vector<int>& parts) {
        ++by_max[static_cast<std::size_t>(*std::max_element(parts.begin(), parts.end()))];
      });
      long long below = 0;
      for (int t = 1; t <= n + 1; ++t) {
        below += by_max[static_cast<std::size_t>(t - 1)];
        o.expect(composition_count_max_below(n, m, t) == below,
                 "Stanley n=" + std::to_string(n) + " m=" + std::to_string(m) + " t=" + std::to_string(t));
      }
    }
  }
  return o;
}

Outcome mais_oracle() {
  Outcome o;
  int instances = 0;
  int cor4 = 0;
  for_each_canonical(26, true, [&](const GapVector& spec) {
    const SuicpGraph g = to_suicp(build_union_icp(spec));
    const int brute = mais_bruteforce(g, 26);
    const int lower = lower_bound_mais_constructive(spec).value;
    ++instances;
    o.expect(brute >= lower, "below constructive on " + spec.to_string());
    o.expect(brute <= upper_bound_ru(spec), "above R_u on " + spec.to_string());
    const auto& a = spec.gaps();
    const bool tight_case = spec.chunk_length() == 1 || std::all_of(a.begin() + 1, a.end(), [](int x) { return x == 0; });
    if (tight_case) {
      ++cor4;
      o.expect(brute == lower, "corollary instance " + spec.to_string());
    }
  });
  o.expect(instances > 0 && cor4 > 0, "empty sweep");
  if (o.ok) o.detail = std::to_string(instances) + " instances, " + std::to_string(cor4) + " with a known optimum";
  return o;
}

void check_non_increasing(Outcome& o, const std::vector<Rational>& values, const std::string& what) {
  for (std::size_t j = 1; j < values.size(); ++j) {
    if (values[j] > values[j - 1]) o.expect(false, what + " step " + std::to_string(j));
  }
}

Outcome figure_shapes() {
  Outcome o;
  // Rate against L at fixed (K, M = wN/K).
  for (const auto& [K, w, top] : std::vector<std::tuple<int, int, int>>{{40, 4, 10}, {100, 2, 50}}) {
    std::vector<Rational> rates;
    for (int L = 1; L <= top; ++L) rates.push_back(rate_new(K, L, w));
    check_non_increasing(o, rates, "R(L) for K=" + std::to_string(K));
  }
  // Rate against K at fixed (L, w).
  for (const auto& [L, w, lo, hi] : std::vector<std::tuple<int, int, int, int>>{{2, 4, 8, 60}, {10, 2, 20, 100}}) {
    std::vector<Rational> rates;
    for (int K = lo; K <= hi; ++K) rates.push_back(-rate_new(K, L, w));
    check_non_increasing(o, rates, "-R(K) for L=" + std::to_string(L));
  }
  // Rate against M, both as raw corner points and on the memory-shared curve.
  for (const auto& [N, K, L] : std::vector<std::tuple<int, int, int>>{{100, 40, 4}, {50, 50, 10}}) {
    std::vector<Rational> corners{Rational(K)};
    for (int w = 1; w <= K / L; ++w) corners.push_back(rate_new(K, L, w));
    check_non_increasing(o, corners, "corner R(M) for K=" + std::to_string(K));
    std::vector<Rational> curve;
    for (const RatePoint& p : tradeoff_curve(CcdnConfig{N, K, L}, 40)) curve.push_back(p.rate);
    check_non_increasing(o, curve, "curve R(M) for K=" + std::to_string(K));
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "(2,1,0)_2 analysis", 1, example1},
      {2, "(3,2,1)_2 bounds", 1, example23},
      {3, "(5,3,2)_2 acyclic witness", 1, witness_532},
      {4, "(2,1)_L exact rate 5", 1, theorem5},
      {5, "(K=8,L=2,w=2) rates and classes", 5, example6},
      {6, "(N=8,K=8,L=2,w=2) end-to-end decode", 30, simulate},
      {7, "tilde bound for (1)x3 at L=2", 1, tilde_bound},
      {8, "w=1 closed form for L >= K/2", 30, closed_form_sweep},
      {9, "new rate below HKD and RK", 60, beats_references},
      {10, "random gap vectors: ratio, properness, local value", 60, random_gap_vectors},
      {11, "placement and composition counts", 60, counting},
      {12, "brute-force MAIS against the constructive bound", 300, mais_oracle},
      {13, "rate curve monotonicity", 60, figure_shapes},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.ok = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.limit_seconds) outcome.expect(false, "took longer than " + std::to_string(c.limit_seconds) + " s");
    if (!outcome.ok) ++failed;
    std::cout << (outcome.ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " (" << seconds << " s)";
    if (!outcome.detail.empty()) std::cout << " - " << outcome.detail.substr(0, 600);
    std::cout << '\n';
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
