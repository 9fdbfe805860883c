#include <sstream>

#include "doctest.h"
#include "tcss/session.hpp"
#include "tcss/netsim.hpp"

using namespace tcss;

namespace {

Group make_group(const PrimeModulus& p, int m) {
  std::vector<FieldElement> ids;
  for (int i = 1; i <= m; ++i) ids.push_back(FieldElement(i, p));
  return Group(p, ids);
}

}  // namespace

TEST_CASE("send appends reliably and in order") {
  PrimeModulus p(257);
  Transcript tr;
  tr.send(Phase::RnsRound, 1, 0, 1, FieldElement(42, p));
  tr.send(Phase::RnsRound, 1, 0, 1, FieldElement(43, p));
  REQUIRE(tr.size() == 2);
  CHECK(tr.messages()[0].payload.value() == 42);
  CHECK(tr.messages()[1].payload.value() == 43);
  CHECK_THROWS_AS(tr.send(Phase::RnsRound, 1, 2, 2, FieldElement(1, p)), Error);
}

TEST_CASE("edges canonicalize and the complete graph has m(m-1)/2 of them") {
  CHECK(Edge::between(3, 1) == Edge::between(1, 3));
  CHECK_THROWS_AS(Edge::between(2, 2), Error);

  std::set<Edge> edges;
  int m = 7;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      if (a != b) edges.insert(Edge::between(a, b));
  CHECK(edges.size() == static_cast<std::size_t>(m * (m - 1) / 2));
}

TEST_CASE("eavesdrop filters exactly the cracked channels") {
  PrimeModulus p(257);
  Rng rng(21);
  std::vector<FieldElement> ids;
  for (int i = 1; i <= 5; ++i) ids.push_back(FieldElement(i, p));
  auto table = share_generate(FieldElement(10, p), ids, 2, rng);
  auto session = run_session(table, make_group(p, 5), 2, rng);

  CHECK(eavesdrop(session.transcript, CrackSet()).empty());

  CrackSet all;
  for (int a = 0; a < 5; ++a)
    for (int b = a + 1; b < 5; ++b) all.insert(Edge{a, b});
  CHECK(eavesdrop(session.transcript, all).size() == session.transcript.size());

  // One cracked channel sees exactly the two component deliveries that
  // traverse it, one per endpoint.
  CrackSet one;
  one.insert(Edge{1, 3});
  int rc_seen = 0;
  for (const auto& msg : eavesdrop(session.transcript, one))
    if (msg.phase == Phase::RcBroadcast) ++rc_seen;
  CHECK(rc_seen == 2);
}

TEST_CASE("eavesdrop is a pure filter") {
  PrimeModulus p(257);
  Rng rng(22);
  std::vector<FieldElement> ids;
  for (int i = 1; i <= 4; ++i) ids.push_back(FieldElement(i, p));
  auto table = share_generate(FieldElement(3, p), ids, 2, rng);
  auto session = run_session(table, make_group(p, 4), 1, rng);

  CrackSet some;
  some.insert(Edge{0, 1});
  some.insert(Edge{2, 3});
  std::size_t direct = 0;
  for (const auto& msg : session.transcript.messages())
    if (some.contains(msg.edge())) ++direct;
  CHECK(eavesdrop(session.transcript, some).size() == direct);
}

TEST_CASE("group validation") {
  PrimeModulus p(257);
  CHECK_THROWS_AS(Group(p, {FieldElement(1, p)}), Error);  // too small
  CHECK_THROWS_AS(Group(p, {FieldElement(1, p), FieldElement(1, p)}), Error);
  CHECK_THROWS_AS(Group(p, {FieldElement(0, p), FieldElement(1, p)}), Error);
  auto g = make_group(p, 3);
  CHECK(g.position_of(FieldElement(2, p)) == 1);
  CHECK_THROWS_AS(g.position_of(FieldElement(9, p)), Error);
}

TEST_CASE("transcript serialization round-trips byte for byte") {
  PrimeModulus p(7919);
  Rng rng(33);
  std::vector<FieldElement> ids;
  for (int i = 1; i <= 5; ++i) ids.push_back(FieldElement(i, p));
  auto table = share_generate(FieldElement(77, p), ids, 2, rng);
  auto session = run_session(table, make_group(p, 5), 2, rng);

  std::string text = transcript_to_string(session.params, session.transcript);
  std::istringstream is(text);
  auto [params, transcript] = load_transcript(is);
  CHECK(transcript_to_string(params, transcript) == text);
  CHECK(params.t == 2);
  CHECK(params.k == 2);
  CHECK(params.m() == 5);
  CHECK(params.scheme == "shamir-additive");
}

TEST_CASE("transcript loader rejects malformed input") {
  std::istringstream bad1("nonsense");
  CHECK_THROWS_AS(load_transcript(bad1), Error);
  std::istringstream bad2("tcss-transcript v1\nscheme shamir-additive\np 101\nt 2\nk 1\nids 1 2\nmsg rns 1 0 5 3\n");
  CHECK_THROWS_AS(load_transcript(bad2), Error);  // endpoint outside group
}
