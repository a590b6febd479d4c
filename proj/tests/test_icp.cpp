#include <doctest.h>

#include <algorithm>
#include <set>

#include "sicps/icp.hpp"

using namespace sicps;

namespace {

std::vector<GapVector> canonical_family(int max_users) {
  std::vector<GapVector> out;
  for (int i = 1; i <= 5; ++i) {
    for (int L = 1; L <= 4; ++L) {
      const int budget = max_users - 1 - (i - 1) * L;
      if (budget < 0) continue;
      std::vector<int> g(static_cast<std::size_t>(i), 0);
      while (true) {
        int sum = 0;
        for (int x : g) sum += x;
        if (sum <= budget) {
          GapVector spec(g, L);
          if (spec.is_canonical()) out.push_back(spec);
        }
        int j = i - 1;
        while (j >= 0 && g[static_cast<std::size_t>(j)] == budget) g[static_cast<std::size_t>(j--)] = 0;
        if (j < 0) break;
        ++g[static_cast<std::size_t>(j)];
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("gap vector basics") {
  const GapVector g({2, 1, 0}, 2);
  CHECK(g.users() == 8);
  CHECK(g.files_per_user() == 3);
  CHECK(g.gap(3) == 2);
  CHECK(g.gap(1) == 0);
  CHECK(g.max_gap() == 2);
  CHECK(g.is_canonical());
  CHECK(g.to_string() == "(2,1,0)_2");
  CHECK(GapVector({3, 2, 1}, 2).users() == 11);
  CHECK(GapVector({4}, 3).users() == 5);
  CHECK_FALSE(GapVector({0, 2, 1}, 2).is_canonical());
  CHECK(GapVector({0, 2, 1}, 2).canonical() == g);
  CHECK_THROWS_AS(GapVector({1, -1}, 2), std::invalid_argument);
  CHECK_THROWS_AS(GapVector({1, 1}, 0), std::invalid_argument);
  CHECK_THROWS_AS(GapVector({}, 1), std::invalid_argument);
}

TEST_CASE("single structured ICP") {
  const SingleIcp icp = build_structured_icp(GapVector({2, 1, 0}, 2));
  CHECK(icp.users == 8);
  // User 3 skips x4, x5, knows x6, x7, skips x8, knows x1, x2.
  CHECK(icp.known[2] == std::vector<int>{6, 7, 1, 2});
  const SingleIcp lone = build_structured_icp(GapVector({4}, 3));
  CHECK(lone.users == 5);
  for (const auto& k : lone.known) CHECK(k.empty());
}

TEST_CASE("union ICP side information of user 3 in (2,1,0)_2") {
  const UnionIcp icp = build_union_icp(GapVector({2, 1, 0}, 2));
  const std::vector<Node> expected{{1, 1}, {1, 2}, {2, 1}, {4, 2}, {5, 2}, {5, 3},
                                   {6, 1}, {6, 3}, {7, 1}, {7, 3}, {8, 2}, {8, 3}};
  CHECK(icp.known_set(3) == expected);
  CHECK(icp.column_gaps(2) == std::vector<int>{0, 2, 1});
  CHECK(icp.column_gaps(3) == std::vector<int>{1, 0, 2});
  CHECK(icp.want_set(3) == std::vector<Node>{{3, 1}, {3, 2}, {3, 3}});
}

TEST_CASE("union ICP sizes") {
  const UnionIcp five = build_union_icp(GapVector({2, 1}, 6));
  CHECK(five.users() == 10);
  for (int k = 1; k <= 10; ++k) CHECK(five.known_set(k).size() == 12);
  const UnionIcp lone = build_union_icp(GapVector({4}, 3));
  for (int k = 1; k <= lone.users(); ++k) CHECK(lone.known_set(k).empty());
}

TEST_CASE("known sets: size and exclusion of own requests") {
  for (const GapVector& spec : canonical_family(16)) {
    const UnionIcp icp = build_union_icp(spec);
    const auto i = static_cast<std::size_t>(spec.files_per_user());
    for (int k = 1; k <= icp.users(); ++k) {
      const auto& known = icp.known_set(k);
      CHECK(known.size() == i * (i - 1) * static_cast<std::size_t>(spec.chunk_length()));
      for (const Node& n : known) CHECK(n.user != k);
      for (const Node& n : known) CHECK(icp.knows(k, n));
    }
  }
}

TEST_CASE("column t of the union is the single ICP of the (t-1)-th rotation") {
  for (const GapVector& spec : canonical_family(14)) {
    const UnionIcp icp = build_union_icp(spec);
    for (int t = 1; t <= spec.files_per_user(); ++t) {
      const SingleIcp single = build_structured_icp(GapVector(rotate_gaps(spec.gaps(), t - 1), spec.chunk_length()));
      for (int k = 1; k <= icp.users(); ++k) {
        std::set<int> from_union;
        for (const Node& n : icp.known_set(k)) {
          if (n.column == t) from_union.insert(n.user);
        }
        const auto& raw = single.known[static_cast<std::size_t>(k - 1)];
        CHECK(from_union == std::set<int>(raw.begin(), raw.end()));
      }
    }
  }
}

TEST_CASE("side information propagates between neighbouring columns") {
  for (const GapVector& spec : canonical_family(20)) {
    const UnionIcp icp = build_union_icp(spec);
    const int K = spec.users();
    const int L = spec.chunk_length();
    for (int k = 1; k <= K; ++k) {
      for (int n = 1; n <= spec.files_per_user() - 1; ++n) {
        const int an = spec.gap(n);
        for (int m = an + L + 1; m <= K - 1; ++m) {
          const bool next = icp.knows(k, Node{wrap(k + m, K), n + 1});
          const bool here = icp.knows(k, Node{wrap(k + m - an - L, K), n});
          CHECK(next == here);
        }
      }
    }
  }
}

TEST_CASE("rotating the gaps relabels the columns") {
  for (const GapVector& spec : canonical_family(12)) {
    const UnionIcp base = build_union_icp(spec);
    const int i = spec.files_per_user();
    for (int t = 1; t < i; ++t) {
      const UnionIcp turned = build_union_icp(spec.rotated(t));
      for (int k = 1; k <= base.users(); ++k) {
        for (const Node& n : base.known_set(k)) {
          // Column c of the rotated union holds rotation (c-1)+t of the base.
          const int c = wrap(n.column - t, i);
          CHECK(turned.knows(k, Node{n.user, c}));
        }
        CHECK(turned.known_set(k).size() == base.known_set(k).size());
      }
    }
  }
}

TEST_CASE("single-unicast conversion") {
  const SuicpGraph g = to_suicp(build_union_icp(GapVector({2, 1, 0}, 2)));
  CHECK(g.size() == 24);
  CHECK(g.node(0) == Node{1, 1});
  CHECK(*g.index_of(Node{3, 2}) == 7);
  for (std::size_t u = 0; u < g.size(); ++u) {
    for (std::size_t v = 0; v < g.size(); ++v) {
      if (g.node(u).user == g.node(v).user) CHECK(g.side_info(u) == g.side_info(v));
    }
    CHECK(g.side_info(u).size() + g.interferers(u).size() == g.size() - 1);
  }

  const SuicpGraph lone = to_suicp(build_union_icp(GapVector({4}, 3)));
  CHECK(lone.size() == 5);
  for (std::size_t u = 0; u < 5; ++u) CHECK(lone.side_info(u).empty());

  const SuicpGraph big = to_suicp(build_union_icp(GapVector({3, 2, 1}, 2)));
  CHECK(big.size() == 33);
  for (std::size_t v = 0; v < big.size(); ++v) {
    int in = 0;
    for (std::size_t u = 0; u < big.size(); ++u) in += big.knows(u, v) ? 1 : 0;
    CHECK(in == 12);
  }
}

TEST_CASE("tilde ICP") {
  const TildeIcp t = build_tilde_icp({2, 0, 2}, 2, 1);
  CHECK(t.repeated() == std::vector<int>{2, 0, 2, 2, 0, 2});
  REQUIRE(t.columns.size() == 3);
  CHECK(t.columns[0] == std::vector<int>{2, 0, 2, 2, 0, 2});
  CHECK(t.columns[1] == std::vector<int>{2, 2, 0, 2, 2, 0});
  CHECK(t.columns[2] == std::vector<int>{0, 2, 2, 0, 2, 2});
  CHECK(t.users == 2 * 4 + (2 * 3 - 1) * 1 + 1);
  // Rotating s x l by m positions gives back the same column.
  CHECK(rotate_gaps(t.columns[0], 3) == t.columns[0]);
  CHECK(t.split_union().users() == t.users);

  const TildeIcp ones = build_tilde_icp({1}, 3, 2);
  CHECK(ones.users == 8);
  CHECK(ones.columns.size() == 1);
  CHECK(to_suicp(ones).size() == 8);

  const TildeIcp plain = build_tilde_icp({2, 1, 0}, 1, 2);
  CHECK(to_suicp(plain) == to_suicp(build_union_icp(GapVector({2, 1, 0}, 2))));

  CHECK_THROWS_AS(build_tilde_icp({}, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_tilde_icp({1}, 0, 1), std::invalid_argument);
}

TEST_CASE("instance JSON") {
  const auto j = to_json(build_union_icp(GapVector({2, 1, 0}, 2)));
  CHECK(j["K"] == 8);
  CHECK(j["i"] == 3);
  CHECK(j["L"] == 2);
  CHECK(j["gaps"] == nlohmann::ordered_json::array({2, 1, 0}));
  CHECK(j["known"].size() == 8);
  CHECK(j["known"][2][0] == nlohmann::ordered_json::array({1, 1}));
  CHECK(j.begin().key() == "gaps");
}
