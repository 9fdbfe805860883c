#include <numeric>
#include <set>

#include "doctest.h"
#include "tcss/rns.hpp"
#include "tcss/stats.hpp"

using namespace tcss;

namespace {

Group make_group(const PrimeModulus& p, int m) {
  std::vector<FieldElement> ids;
  for (int i = 1; i <= m; ++i) ids.push_back(FieldElement(i, p));
  return Group(p, ids);
}

std::set<Edge> path_edges(const std::vector<int>& path) {
  std::set<Edge> edges;
  int m = static_cast<int>(path.size());
  for (int h = 0; h < m; ++h) edges.insert(Edge::between(path[h], path[(h + 1) % m]));
  return edges;
}

std::uint64_t phi_by_counting(std::uint64_t m) {
  std::uint64_t count = 0;
  for (std::uint64_t i = 1; i <= m; ++i)
    if (std::gcd(i, m) == 1) ++count;
  return count;
}

}  // namespace

TEST_CASE("interval sets") {
  CHECK(rns::interval_set(5) == std::vector<int>{1, 2});
  CHECK(rns::interval_set(10) == std::vector<int>{1, 3});
  CHECK(rns::interval_set(6) == std::vector<int>{1});

  auto d330 = rns::interval_set(330);
  CHECK(d330.size() == 40);
  CHECK(std::vector<int>(d330.begin(), d330.begin() + 6) == std::vector<int>{1, 7, 13, 17, 19, 23});

  // |D_m| = phi(m)/2, phi independently recomputed by counting coprimes.
  for (int m = 3; m <= 200; ++m) {
    CHECK(rns::euler_phi(m) == phi_by_counting(m));
    CHECK(rns::interval_set(m).size() == rns::euler_phi(m) / 2);
  }
}

TEST_CASE("round paths") {
  CHECK(rns::round_path(5, 1) == std::vector<int>{0, 1, 2, 3, 4});
  CHECK(rns::round_path(5, 2) == std::vector<int>{0, 2, 4, 1, 3});
  CHECK_THROWS_AS(rns::round_path(10, 4), Error);

  // Every traversal visits each position exactly once.
  for (int m : {5, 7, 9, 12, 25}) {
    for (int d : rns::interval_set(m)) {
      auto path = rns::round_path(m, d);
      std::set<int> seen(path.begin(), path.end());
      CHECK(seen.size() == static_cast<std::size_t>(m));
      CHECK(path[0] == 0);
    }
  }
}

TEST_CASE("round-path dispatch and limits") {
  auto m6 = rns::round_paths(6, 2);
  REQUIRE(m6.size() == 2);
  CHECK(m6[0] == std::vector<int>{0, 1, 2, 3, 4, 5});
  CHECK(m6[1] == std::vector<int>{0, 2, 4, 1, 5, 3});
  CHECK_THROWS_AS(rns::round_paths(6, 3), Error);

  CHECK(rns::round_paths(4, 1).size() == 1);
  CHECK_THROWS_AS(rns::round_paths(4, 2), Error);
  CHECK_THROWS_AS(rns::round_paths(3, 2), Error);
  CHECK(rns::round_paths(2, 1) == std::vector<std::vector<int>>{{0, 1}});
  CHECK_THROWS_AS(rns::round_paths(5, 3), Error);  // phi(5)/2 = 2
}

TEST_CASE("k traversals cover exactly km distinct channels") {
  for (int m = 5; m <= 24; ++m) {
    if (m == 6) continue;
    int max_k = static_cast<int>(rns::interval_set(m).size());
    for (int k = 1; k <= max_k; ++k) {
      auto paths = rns::round_paths(m, k);
      std::set<Edge> all;
      for (const auto& path : paths) {
        auto edges = path_edges(path);
        CHECK(edges.size() == static_cast<std::size_t>(m));
        all.insert(edges.begin(), edges.end());
      }
      CHECK(all.size() == static_cast<std::size_t>(k) * m);
    }
  }
  // The m = 6 pair covers 12 distinct channels.
  std::set<Edge> all;
  for (const auto& path : rns::round_paths(6, 2)) {
    auto edges = path_edges(path);
    all.insert(edges.begin(), edges.end());
  }
  CHECK(all.size() == 12);
}

TEST_CASE("private numbers sum to zero and decompose into the round picks") {
  PrimeModulus p(7919);
  for (int seed = 0; seed < 25; ++seed) {
    Rng rng(seed);
    int m = 5 + seed % 7;
    int k = 1 + seed % 2;
    if (m == 6 && k > 2) k = 2;
    Transcript tr;
    auto group = make_group(p, m);
    auto result = rns::run_rns(group, k, tr, rng);

    FieldElement sum(0, p);
    for (const auto& r : result.r) sum += r;
    CHECK(sum.is_zero());

    // r_j = sum of the j-th picks, with v0 folded into position 0.
    for (int j = 0; j < m; ++j) {
      FieldElement expect(0, p);
      for (int i = 0; i < k; ++i) expect += result.w[i][j];
      if (j == 0) expect += result.v0;
      CHECK(result.r[j] == expect);
    }

    // v0 cancels the k closing sums.
    FieldElement closing(0, p);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < m; ++j) closing += result.w[i][j];
    CHECK(result.v0 == -closing);

    CHECK(tr.size() == static_cast<std::size_t>(k) * m);
    CHECK(result.edge_guarantee == (m >= 5));
  }
}

TEST_CASE("transcript carries the running prefix sums") {
  PrimeModulus p(257);
  Rng rng(4);
  Transcript tr;
  auto result = rns::run_rns(make_group(p, 5), 2, tr, rng);

  auto paths = rns::round_paths(5, 2);
  std::size_t idx = 0;
  for (int i = 0; i < 2; ++i) {
    FieldElement running(0, p);
    for (int h = 0; h < 5; ++h) {
      const auto& msg = tr.messages()[idx++];
      running += result.w[i][paths[i][h]];
      CHECK(msg.phase == Phase::RnsRound);
      CHECK(msg.round == i + 1);
      CHECK(msg.from == paths[i][h]);
      CHECK(msg.to == paths[i][(h + 1) % 5]);
      CHECK(msg.payload == running);
    }
  }
}

TEST_CASE("each private number is marginally uniform") {
  PrimeModulus p(13);
  const int runs = 20000;
  std::vector<std::vector<std::uint64_t>> counts(5, std::vector<std::uint64_t>(13, 0));
  for (int trial = 0; trial < runs; ++trial) {
    Rng rng(derive_seed(99, trial));
    Transcript tr;
    auto result = rns::run_rns(make_group(p, 5), 2, tr, rng);
    for (int j = 0; j < 5; ++j) ++counts[j][result.r[j].value()];
  }
  for (int j = 0; j < 5; ++j) CHECK(check_uniform(counts[j]).pass);
}
