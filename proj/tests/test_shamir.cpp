#include <algorithm>
#include <set>

#include "doctest.h"
#include "tcss/shamir.hpp"

using namespace tcss;

namespace {

std::vector<FieldElement> make_ids(const PrimeModulus& p, int n) {
  std::vector<FieldElement> ids;
  for (int i = 1; i <= n; ++i) ids.push_back(FieldElement(i, p));
  return ids;
}

}  // namespace

TEST_CASE("share generation matches direct evaluation of f(x) = 2 + 3x mod 7") {
  PrimeModulus p(7);
  Polynomial f({FieldElement(2, p), FieldElement(3, p)});
  CHECK(f.eval(FieldElement(1, p)).value() == 5);
  CHECK(f.eval(FieldElement(2, p)).value() == 1);

  // Inverse direction: those two shares give back the constant term.
  std::vector<ShareEntry> shares{{FieldElement(1, p), FieldElement(5, p)},
                                 {FieldElement(2, p), FieldElement(1, p)}};
  CHECK(reconstruct_classic(shares).value() == 2);
}

TEST_CASE("every t-subset of a deal reconstructs the dealer secret") {
  PrimeModulus p(257);
  Rng rng(11);
  FieldElement secret(99, p);
  auto table = share_generate(secret, make_ids(p, 5), 3, rng);

  const auto& entries = table.entries();
  int checked = 0;
  for (int a = 0; a < 5; ++a)
    for (int b = a + 1; b < 5; ++b)
      for (int c = b + 1; c < 5; ++c) {
        std::vector<ShareEntry> subset{entries[a], entries[b], entries[c]};
        CHECK(reconstruct_classic(subset) == secret);
        ++checked;
      }
  CHECK(checked == 10);  // C(5,3)
}

TEST_CASE("threshold and id preconditions") {
  PrimeModulus p(257);
  Rng rng(1);
  FieldElement secret(5, p);
  CHECK_THROWS_AS(share_generate(secret, make_ids(p, 3), 4, rng), Error);  // t > n
  CHECK_THROWS_AS(share_generate(secret, make_ids(p, 3), 1, rng), Error);  // t < 2

  std::vector<FieldElement> dup{FieldElement(1, p), FieldElement(1, p), FieldElement(2, p)};
  CHECK_THROWS_AS(share_generate(secret, dup, 2, rng), Error);
  std::vector<FieldElement> zero{FieldElement(0, p), FieldElement(2, p)};
  CHECK_THROWS_AS(share_generate(secret, zero, 2, rng), Error);
}

TEST_CASE("lagrange coefficients at zero") {
  PrimeModulus p(7);
  std::vector<FieldElement> pair{FieldElement(1, p), FieldElement(2, p)};
  CHECK(lagrange_coeff_at_zero(pair[0], pair).value() == 2);
  CHECK(lagrange_coeff_at_zero(pair[1], pair).value() == 6);

  CHECK_THROWS_AS(lagrange_coeff_at_zero(FieldElement(4, p), pair), Error);

  // Random degree-2 polynomial over a 3-party group: the weighted share sum
  // is exactly f(0).
  Rng rng(3);
  auto ids = make_ids(p, 3);
  for (int trial = 0; trial < 20; ++trial) {
    Polynomial f({sample_uniform(rng, p), sample_uniform(rng, p), sample_uniform(rng, p)});
    FieldElement acc(0, p);
    for (const auto& id : ids) acc += f.eval(id) * lagrange_coeff_at_zero(id, ids);
    CHECK(acc == f.coeffs()[0]);
  }
}

TEST_CASE("round trip over random deals and subsets") {
  Rng rng(77);
  for (std::uint64_t pv : {7ull, 13ull, 257ull}) {
    PrimeModulus p(pv);
    for (int trial = 0; trial < 20; ++trial) {
      int n = 2 + static_cast<int>(rng.below(5));
      int t = 2 + static_cast<int>(rng.below(n - 1));
      FieldElement secret = sample_uniform(rng, p);
      auto table = share_generate(secret, make_ids(p, n), t, rng);

      // One random t-subset per deal.
      std::vector<ShareEntry> pool = table.entries();
      std::vector<ShareEntry> subset;
      for (int i = 0; i < t; ++i) {
        auto pick = rng.below(pool.size());
        subset.push_back(pool[pick]);
        pool.erase(pool.begin() + pick);
      }
      CHECK(reconstruct_classic(subset) == secret);
    }
  }
}

TEST_CASE("missing-share sweep hits every candidate secret exactly once") {
  // With t-1 fixed shares, the unknown share and the reconstructed secret
  // are in bijection, so t-1 shareholders learn nothing.
  PrimeModulus p(7);
  Rng rng(5);
  auto deal = share_generate_retaining(FieldElement(4, p), make_ids(p, 3), 2, rng);
  FieldElement fixed_share = deal.table.entries()[0].share;

  std::set<std::uint64_t> secrets;
  for (std::uint64_t cand = 0; cand < 7; ++cand) {
    std::vector<ShareEntry> shares{{FieldElement(1, p), fixed_share},
                                   {FieldElement(2, p), FieldElement(cand, p)}};
    secrets.insert(reconstruct_classic(shares).value());
  }
  CHECK(secrets.size() == 7);
}

TEST_CASE("retained dealer polynomial explains every share") {
  PrimeModulus p(257);
  Rng rng(13);
  auto deal = share_generate_retaining(FieldElement(123, p), make_ids(p, 6), 4, rng);
  CHECK(deal.poly.threshold() == 4);
  for (const auto& e : deal.table.entries()) CHECK(deal.poly.eval(e.id) == e.share);
  CHECK(deal.poly.coeffs()[0].value() == 123);
}

TEST_CASE("share lookup and duplicate detection") {
  PrimeModulus p(257);
  Rng rng(2);
  auto table = share_generate(FieldElement(1, p), make_ids(p, 4), 2, rng);
  CHECK(table.share_of(FieldElement(3, p)) == table.entries()[2].share);
  CHECK_THROWS_AS(table.share_of(FieldElement(9, p)), Error);

  std::vector<ShareEntry> dup{{FieldElement(1, p), FieldElement(0, p)},
                              {FieldElement(1, p), FieldElement(1, p)}};
  CHECK_THROWS_AS(reconstruct_classic(dup), Error);
}
