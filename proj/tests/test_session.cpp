#include <set>

#include "doctest.h"
#include "tcss/session.hpp"

using namespace tcss;

namespace {

std::vector<FieldElement> make_ids(const PrimeModulus& p, int n) {
  std::vector<FieldElement> ids;
  for (int i = 1; i <= n; ++i) ids.push_back(FieldElement(i, p));
  return ids;
}

}  // namespace

TEST_CASE("component construction reduces to the Lagrange part when r = 0") {
  PrimeModulus p(7);
  Group group(p, make_ids(p, 2));
  FieldElement c = build_rc(FieldElement(5, p), FieldElement(1, p), group, FieldElement(0, p));
  CHECK(c.value() == 3);  // 5 * 2 mod 7
}

TEST_CASE("component sweeps the field as the mask sweeps it") {
  PrimeModulus p(7);
  Group group(p, make_ids(p, 3));
  std::set<std::uint64_t> values;
  for (std::uint64_t r = 0; r < 7; ++r)
    values.insert(build_rc(FieldElement(4, p), FieldElement(2, p), group, FieldElement(r, p)).value());
  CHECK(values.size() == 7);
}

TEST_CASE("a component reopens to the share given its mask") {
  PrimeModulus p(257);
  Rng rng(8);
  Group group(p, make_ids(p, 5));
  for (int trial = 0; trial < 20; ++trial) {
    FieldElement share = sample_uniform(rng, p);
    FieldElement r = sample_uniform(rng, p);
    FieldElement c = build_rc(share, FieldElement(3, p), group, r);
    FieldElement coeff = lagrange_coeff_at_zero(FieldElement(3, p), group.ids());
    CHECK((c - r) * coeff.inverse() == share);
  }
}

TEST_CASE("reconstruction from components matches the classic route") {
  PrimeModulus p(257);
  Rng rng(15);
  auto ids = make_ids(p, 5);
  FieldElement secret(201, p);
  auto table = share_generate(secret, ids, 3, rng);
  Group group(p, ids);

  auto session = run_session(table, group, 2, rng);
  CHECK(session.secret == secret);

  std::vector<ShareEntry> any3{table.entries()[0], table.entries()[2], table.entries()[4]};
  CHECK(reconstruct_classic(any3) == session.secret);
}

TEST_CASE("incomplete component sets are rejected") {
  PrimeModulus p(257);
  RcSet set(3, p);
  set.set(0, FieldElement(1, p));
  set.set(2, FieldElement(2, p));
  CHECK(!set.complete());
  CHECK_THROWS_AS(reconstruct_from_rcs(set), Error);
  set.set(1, FieldElement(5, p));
  CHECK(reconstruct_from_rcs(set).value() == 8);
}

TEST_CASE("sessions at the threshold boundary and below") {
  PrimeModulus p(7919);
  Rng rng(44);
  auto ids = make_ids(p, 5);
  FieldElement secret(4242, p);
  auto table = share_generate(secret, ids, 3, rng);

  Group exact(p, {ids[0], ids[1], ids[2]});
  CHECK(run_session(table, exact, 1, rng).secret == secret);

  Group small(p, {ids[0], ids[1]});
  CHECK_THROWS_AS(run_session(table, small, 1, rng), Error);
}

TEST_CASE("end-to-end session counts km + m(m-1) messages") {
  PrimeModulus p(7919);
  Rng rng(5);
  auto ids = make_ids(p, 5);
  auto table = share_generate(FieldElement(17, p), ids, 2, rng);
  auto session = run_session(table, Group(p, ids), 2, rng);

  CHECK(session.secret.value() == 17);
  CHECK(session.transcript.count(Phase::RnsRound) == 10);
  CHECK(session.transcript.count(Phase::RcBroadcast) == 20);
  CHECK(session.transcript.size() == 30);
}

TEST_CASE("dropping one component leaves every secret equally plausible") {
  PrimeModulus p(7);
  Rng rng(6);
  auto ids = make_ids(p, 3);
  auto table = share_generate(FieldElement(3, p), ids, 2, rng);
  auto session = run_session(table, Group(p, ids), 1, rng);

  // For every strict nonempty subset of components, sweeping the missing
  // mass over F_p sweeps the recovered value over all of F_p.
  for (int mask = 1; mask < 7; ++mask) {
    FieldElement partial(0, p);
    for (int j = 0; j < 3; ++j)
      if (mask & (1 << j)) partial += session.rcs[j];
    std::set<std::uint64_t> recovered;
    for (std::uint64_t x = 0; x < 7; ++x) recovered.insert((partial + FieldElement(x, p)).value());
    CHECK(recovered.size() == 7);
  }
}

TEST_CASE("an intruder without a share hits the secret at chance rate") {
  PrimeModulus p(257);
  Rng rng(10);
  auto ids = make_ids(p, 5);
  auto table = share_generate(FieldElement(77, p), ids, 2, rng);

  std::vector<FieldElement> honest(ids.begin(), ids.begin() + 4);
  auto summary = simulate_ip_attack(table, honest, FieldElement(9, p), 1, 10000, 2024);

  CHECK(summary.trials == 10000);
  double expected = 10000.0 / 257.0;
  CHECK(std::abs(static_cast<double>(summary.hits) - expected) <= 3.0 * summary.sigma);

  // Control: a legal shareholder in the same seat always recovers it.
  auto control = simulate_ip_attack(table, honest, ids[4], 1, 200, 2024, table.share_of(ids[4]));
  CHECK(control.hits == 200);
}

TEST_CASE("the intruder's recovered value is a bijection of its component") {
  PrimeModulus p(7);
  Rng rng(12);
  auto ids = make_ids(p, 4);
  auto table = share_generate(FieldElement(2, p), ids, 2, rng);

  // One fixed session; the outsider sits at the last position with no share.
  std::vector<FieldElement> session_ids(ids.begin(), ids.begin() + 3);
  session_ids.push_back(FieldElement(6, p));
  Group group(p, session_ids);
  Transcript tr;
  auto rns_result = rns::run_rns(group, 1, tr, rng);

  FieldElement honest_total(0, p);
  for (int j = 0; j < 3; ++j)
    honest_total += build_rc(table.share_of(group.id(j)), group.id(j), group, rns_result.r[j]);

  std::set<std::uint64_t> recovered;
  for (std::uint64_t fake = 0; fake < 7; ++fake)
    recovered.insert((honest_total + FieldElement(fake, p)).value());
  CHECK(recovered.size() == 7);
}
