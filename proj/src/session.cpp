#include "tcss/session.hpp"

#include <cmath>
#include <span>

namespace tcss {

void RcSet::set(int position, const FieldElement& c) {
  if (position < 0 || position >= m()) fail(Errc::IdNotInGroup, "component position outside group");
  if (c.modulus() != p_.value()) fail(Errc::ModulusMismatch, "component outside the session field");
  c_[position] = c;
}

bool RcSet::complete() const {
  for (const auto& c : c_)
    if (!c) return false;
  return true;
}

const FieldElement& RcSet::at(int position) const {
  const auto& c = c_.at(position);
  if (!c) fail(Errc::IncompleteRcSet, "position " + std::to_string(position) + " contributed no component");
  return *c;
}

FieldElement build_rc(const FieldElement& share, const FieldElement& owner_id,
                      const Group& group, const FieldElement& r) {
  return share * lagrange_coeff_at_zero(owner_id, group.ids()) + r;
}

FieldElement reconstruct_from_rcs(const RcSet& rcs) {
  if (!rcs.complete())
    fail(Errc::IncompleteRcSet, "reconstruction requires a component from every participant");
  FieldElement acc(0, rcs.modulus());
  for (int j = 0; j < rcs.m(); ++j) acc += rcs.at(j);
  return acc;
}

SessionResult run_session(const ShareTable& table, const Group& group, int k, Rng& rng) {
  const int m = group.m();
  if (m < table.t())
    fail(Errc::GroupTooSmall, "session of " + std::to_string(m) + " participants cannot meet threshold " +
                                  std::to_string(table.t()));
  if (group.modulus() != table.modulus()) fail(Errc::ModulusMismatch, "group and table use different fields");

  Transcript transcript;
  auto rns_result = rns::run_rns(group, k, transcript, rng);

  // Components are built only after every round completed.
  std::vector<FieldElement> rcs;
  rcs.reserve(m);
  for (int j = 0; j < m; ++j)
    rcs.push_back(build_rc(table.share_of(group.id(j)), group.id(j), group, rns_result.r[j]));

  for (int sender = 0; sender < m; ++sender)
    for (int receiver = 0; receiver < m; ++receiver)
      if (receiver != sender) transcript.send(Phase::RcBroadcast, 0, sender, receiver, rcs[sender]);

  RcSet set(m, group.modulus());
  for (int j = 0; j < m; ++j) set.set(j, rcs[j]);
  FieldElement secret = reconstruct_from_rcs(set);

  SessionParams params{group.modulus(), table.t(), k, group.ids(), "shamir-additive"};
  return SessionResult{secret, std::move(transcript), std::move(params), std::move(rns_result), std::move(rcs)};
}

IpAttackSummary simulate_ip_attack(const ShareTable& table, const std::vector<FieldElement>& honest_ids,
                                   const FieldElement& outsider_id, int k, std::uint64_t trials,
                                   std::uint64_t seed, std::optional<FieldElement> outsider_share) {
  const PrimeModulus& p = table.modulus();
  for (const auto& id : honest_ids) table.share_of(id);  // must all be real shareholders
  if (!outsider_share) {
    for (const auto& e : table.entries())
      if (e.id == outsider_id) fail(Errc::DuplicateId, "outsider id collides with a shareholder");
  }

  std::vector<FieldElement> session_ids = honest_ids;
  session_ids.push_back(outsider_id);
  Group group(p, session_ids);
  const int m = group.m();
  const int outsider_pos = m - 1;

  // True secret, for hit counting only.
  std::vector<ShareEntry> all;
  for (const auto& e : table.entries()) all.push_back(e);
  FieldElement secret = reconstruct_classic(std::span<const ShareEntry>(all.data(), table.t()));

  bool keep_histogram = p.value() <= 4096;
  IpAttackSummary summary{trials, 0, 0.0, 1.0 / static_cast<double>(p.value()), 0.0, {}};
  if (keep_histogram) summary.histogram.assign(p.value(), 0);

  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    Rng rng(derive_seed(seed, trial));
    Transcript transcript;
    auto rns_result = rns::run_rns(group, k, transcript, rng);

    FieldElement total(0, p);
    for (int j = 0; j < m - 1; ++j)
      total += build_rc(table.share_of(group.id(j)), group.id(j), group, rns_result.r[j]);

    FieldElement intruder_rc = outsider_share
        ? build_rc(*outsider_share, outsider_id, group, rns_result.r[outsider_pos])
        : sample_uniform(rng, p);
    total += intruder_rc;

    if (total == secret) ++summary.hits;
    if (keep_histogram) ++summary.histogram[total.value()];
  }

  summary.hit_rate = static_cast<double>(summary.hits) / static_cast<double>(trials);
  double q = summary.expected_rate;
  summary.sigma = std::sqrt(static_cast<double>(trials) * q * (1.0 - q));
  return summary;
}

}  // namespace tcss
