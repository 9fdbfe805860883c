#pragma once

#include <optional>
#include <vector>

#include "tcss/rns.hpp"
#include "tcss/shamir.hpp"

namespace tcss {

struct RandomizedComponent {
  int owner;  // ring position
  FieldElement c;
};

/// One randomized component per ring position; reconstruction requires all
/// of them.
class RcSet {
 public:
  RcSet(int m, PrimeModulus p) : p_(p), c_(m) {}

  void set(int position, const FieldElement& c);
  bool complete() const;
  int m() const { return static_cast<int>(c_.size()); }
  const PrimeModulus& modulus() const { return p_; }
  const FieldElement& at(int position) const;

 private:
  PrimeModulus p_;
  std::vector<std::optional<FieldElement>> c_;
};

/// c = share * lagrange(owner, group) + r  (mod p)
FieldElement build_rc(const FieldElement& share, const FieldElement& owner_id,
                      const Group& group, const FieldElement& r);

/// Sum of all m components; equals the dealer's secret for an honest session.
FieldElement reconstruct_from_rcs(const RcSet& rcs);

struct SessionResult {
  FieldElement secret;
  Transcript transcript;
  SessionParams params;
  rns::RnsResult rns;
  std::vector<FieldElement> rcs;  // by position
};

/// Full coupled session: k-round RNS, per-participant component build,
/// m(m-1) private component deliveries, then reconstruction.
SessionResult run_session(const ShareTable& table, const Group& group, int k, Rng& rng);

struct IpAttackSummary {
  std::uint64_t trials;
  std::uint64_t hits;
  double hit_rate;
  double expected_rate;  // 1/p
  double sigma;          // binomial std dev of the hit count
  std::vector<std::uint64_t> histogram;  // recovered-value counts (small p only)
};

/// An outsider without a valid share joins a group of m-1 honest
/// participants; honest components use the full m-party coefficients. When
/// `outsider_share` is given the intruder behaves as a legal shareholder
/// (control case).
IpAttackSummary simulate_ip_attack(const ShareTable& table, const std::vector<FieldElement>& honest_ids,
                                   const FieldElement& outsider_id, int k, std::uint64_t trials,
                                   std::uint64_t seed,
                                   std::optional<FieldElement> outsider_share = std::nullopt);

}  // namespace tcss
