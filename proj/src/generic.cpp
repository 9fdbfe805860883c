#include "tcss/generic.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace tcss::generic {

void IdealScheme::check_group(std::span<const FieldElement>) const {}

namespace {

// ---------------------------------------------------------------------------
// Additive instance: plain Shamir over F_p, components are the Lagrange
// parts, the operator is field addition.

class ShamirAdditive final : public IdealScheme {
 public:
  explicit ShamirAdditive(PrimeModulus p) : p_(p) {}

  std::string name() const override { return "shamir-additive"; }
  PrimeModulus modulus() const override { return p_; }

  FieldElement combine(const FieldElement& a, const FieldElement& b) const override { return a + b; }
  FieldElement identity() const override { return FieldElement(0, p_); }
  FieldElement invert(const FieldElement& a) const override { return -a; }

  FieldElement sample(Rng& rng) const override { return sample_uniform(rng, p_); }
  bool in_carrier(const FieldElement& v) const override { return v.modulus() == p_.value(); }
  std::uint64_t carrier_size() const override { return p_.value(); }
  std::vector<FieldElement> carrier() const override {
    std::vector<FieldElement> all;
    all.reserve(p_.value());
    for (std::uint64_t v = 0; v < p_.value(); ++v) all.push_back(FieldElement(v, p_));
    return all;
  }

  FieldElement component(const FieldElement& share, const Group& group, int position) const override {
    return share * lagrange_coeff_at_zero(group.id(position), group.ids());
  }

  ShareTable share_generate(const FieldElement& secret, std::span<const FieldElement> ids, int t,
                            Rng& rng) const override {
    return tcss::share_generate(secret, ids, t, rng);
  }

  FieldElement sample_secret(Rng& rng) const override { return sample_uniform(rng, p_); }

  std::vector<FieldElement> default_ids(int n) const override {
    std::vector<FieldElement> ids;
    for (int i = 1; i <= n; ++i) ids.push_back(FieldElement(i, p_));
    return ids;
  }

  int max_shareholders() const override {
    return static_cast<int>(std::min<std::uint64_t>(p_.value() - 1, 1 << 20));
  }

 private:
  PrimeModulus p_;
};

// ---------------------------------------------------------------------------
// Multiplicative instance: Shamir in the exponent of the largest prime-order
// subgroup of F_p^*. Shares, components and the secret are subgroup
// elements; the operator is field multiplication; exponent arithmetic lives
// in F_q where q is the subgroup order.
//
// The exponent domain must be a field for the scheme to stay perfect, which
// is why the carrier is the prime-order subgroup rather than all of F_p^*.

std::uint64_t largest_prime_factor(std::uint64_t n) {
  std::uint64_t best = 1;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    while (n % q == 0) {
      best = q;
      n /= q;
    }
  }
  return std::max(best, n > 1 ? n : 1);
}

class ShamirMultiplicative final : public IdealScheme {
 public:
  explicit ShamirMultiplicative(PrimeModulus p) : p_(p), q_(largest_prime_factor(p.value() - 1)) {
    // Any h with h^((p-1)/q) != 1 yields a generator of the order-q subgroup.
    std::uint64_t cofactor = (p_.value() - 1) / q_;
    g_ = 1;
    for (std::uint64_t h = 2; h < p_.value(); ++h) {
      std::uint64_t cand = pow_mod(h, cofactor, p_.value());
      if (cand != 1) {
        g_ = cand;
        break;
      }
    }
    if (g_ == 1 || q_ < 3)
      fail(Errc::InterfaceViolation, "no usable prime-order subgroup in F_p^* for p = " + std::to_string(p_.value()));
  }

  std::string name() const override { return "shamir-multiplicative"; }
  PrimeModulus modulus() const override { return p_; }
  std::uint64_t subgroup_order() const { return q_; }
  std::uint64_t generator() const { return g_; }

  FieldElement combine(const FieldElement& a, const FieldElement& b) const override { return a * b; }
  FieldElement identity() const override { return FieldElement(1, p_); }
  FieldElement invert(const FieldElement& a) const override { return a.inverse(); }

  FieldElement sample(Rng& rng) const override {
    return FieldElement(pow_mod(g_, rng.below(q_), p_.value()), p_);
  }

  bool in_carrier(const FieldElement& v) const override {
    return v.modulus() == p_.value() && !v.is_zero() && pow_mod(v.value(), q_, p_.value()) == 1;
  }

  std::uint64_t carrier_size() const override { return q_; }

  std::vector<FieldElement> carrier() const override {
    std::vector<FieldElement> all;
    all.reserve(q_);
    std::uint64_t v = 1;
    for (std::uint64_t e = 0; e < q_; ++e) {
      all.push_back(FieldElement(v, p_));
      v = mul_mod(v, g_, p_.value());
    }
    return all;
  }

  FieldElement component(const FieldElement& share, const Group& group, int position) const override {
    if (!in_carrier(share)) fail(Errc::InterfaceViolation, "share outside the subgroup carrier");
    return share.pow(exponent_lagrange(group.ids(), position));
  }

  ShareTable share_generate(const FieldElement& secret, std::span<const FieldElement> ids, int t,
                            Rng& rng) const override {
    int n = static_cast<int>(ids.size());
    if (t < 2 || t > n) fail(Errc::BadThreshold, "threshold out of range");
    check_group(ids);
    if (!in_carrier(secret)) fail(Errc::Format, "secret must be a subgroup element");

    // Exponent-side polynomial through dlog(secret).
    std::vector<std::uint64_t> coeffs{dlog(secret.value())};
    for (int i = 1; i < t; ++i) coeffs.push_back(rng.below(q_));

    std::vector<ShareEntry> entries;
    entries.reserve(n);
    for (const auto& id : ids) {
      std::uint64_t x = id.value() % q_;
      std::uint64_t acc = 0;
      for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = (mul_mod(acc, x, q_) + *it) % q_;
      entries.push_back({id, FieldElement(pow_mod(g_, acc, p_.value()), p_)});
    }
    return ShareTable(p_, t, std::move(entries));
  }

  FieldElement sample_secret(Rng& rng) const override { return sample(rng); }

  std::vector<FieldElement> default_ids(int n) const override {
    std::vector<FieldElement> ids;
    for (int i = 1; i <= n; ++i) ids.push_back(FieldElement(i, p_));
    return ids;
  }

  int max_shareholders() const override {
    return static_cast<int>(std::min<std::uint64_t>(q_ - 1, 1 << 20));
  }

  void check_group(std::span<const FieldElement> ids) const override {
    std::unordered_set<std::uint64_t> seen;
    for (const auto& id : ids) {
      std::uint64_t x = id.value() % q_;
      if (x == 0) fail(Errc::ZeroId, "id " + id.hex() + " vanishes in the exponent field");
      if (id.value() >= q_)
        fail(Errc::IdNotInGroup, "id " + id.hex() + " outside the exponent field (q = " + std::to_string(q_) + ")");
      if (!seen.insert(x).second) fail(Errc::DuplicateId, "ids collide in the exponent field");
    }
  }

 private:
  std::uint64_t exponent_lagrange(std::span<const FieldElement> ids, int position) const {
    std::uint64_t uj = ids[position].value() % q_;
    std::uint64_t num = 1, den = 1;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (static_cast<int>(i) == position) continue;
      std::uint64_t ui = ids[i].value() % q_;
      num = mul_mod(num, ui, q_);
      den = mul_mod(den, (ui + q_ - uj) % q_, q_);
    }
    return mul_mod(num, inv_mod(den, q_), q_);
  }

  // Baby-step giant-step in the subgroup; dealer-side only.
  std::uint64_t dlog(std::uint64_t target) const {
    std::uint64_t step = 1;
    while (step * step < q_) ++step;
    std::unordered_map<std::uint64_t, std::uint64_t> baby;
    baby.reserve(step);
    std::uint64_t cur = 1;
    for (std::uint64_t j = 0; j < step; ++j) {
      baby.emplace(cur, j);
      cur = mul_mod(cur, g_, p_.value());
    }
    std::uint64_t giant = inv_mod(pow_mod(g_, step, p_.value()), p_.value());
    cur = target;
    for (std::uint64_t i = 0; i <= step; ++i) {
      auto it = baby.find(cur);
      if (it != baby.end()) return (i * step + it->second) % q_;
      cur = mul_mod(cur, giant, p_.value());
    }
    fail(Errc::Format, "value is not a subgroup element");
  }

  PrimeModulus p_;
  std::uint64_t q_;
  std::uint64_t g_;
};

void violation(const std::string& what) { fail(Errc::InterfaceViolation, what); }

}  // namespace

void validate_scheme(const IdealScheme& scheme, Rng& rng) {
  const PrimeModulus p = scheme.modulus();

  // Operator laws on sampled elements.
  FieldElement e = scheme.identity();
  if (!scheme.in_carrier(e)) violation("identity element outside the carrier");
  for (int trial = 0; trial < 64; ++trial) {
    FieldElement a = scheme.sample(rng), b = scheme.sample(rng), c = scheme.sample(rng);
    if (!scheme.in_carrier(a)) violation("sampled element outside the carrier");
    if (!scheme.in_carrier(scheme.combine(a, b))) violation("carrier not closed under the operator");
    if (scheme.combine(a, b) != scheme.combine(b, a)) violation("operator is not commutative");
    if (scheme.combine(scheme.combine(a, b), c) != scheme.combine(a, scheme.combine(b, c)))
      violation("operator is not associative");
    if (scheme.combine(a, e) != a) violation("identity element does not act neutrally");
    if (scheme.combine(a, scheme.invert(a)) != e) violation("inverse law fails");
  }

  // Fold reconstruction for every admissible group size.
  const int n = std::min(scheme.max_shareholders(), 5);
  const int t = 2;
  if (n < t) violation("scheme cannot host even a 2-of-2 deal");
  auto ids = scheme.default_ids(n);
  for (int trial = 0; trial < 8; ++trial) {
    FieldElement secret = scheme.sample_secret(rng);
    auto table = scheme.share_generate(secret, ids, t, rng);
    for (int m = t; m <= n; ++m) {
      std::vector<FieldElement> group_ids(ids.begin(), ids.begin() + m);
      scheme.check_group(group_ids);
      Group group(p, group_ids);
      FieldElement acc = scheme.identity();
      for (int j = 0; j < m; ++j)
        acc = scheme.combine(acc, scheme.component(table.share_of(group.id(j)), group, j));
      if (acc != secret) violation("component fold does not reconstruct the secret");
    }
  }

  // Bijectivity of the component map in every share argument (perfectness
  // witness): with the other t-1 shares fixed, the candidate share at any
  // seat sweeps the carrier iff the folded value does.
  auto group_ids = scheme.default_ids(t);
  Group group(p, group_ids);
  FieldElement secret = scheme.sample_secret(rng);
  auto table = scheme.share_generate(secret, group_ids, t, rng);
  for (int seat = 0; seat < t; ++seat) {
    FieldElement prefix = scheme.identity();
    for (int j = 0; j < t; ++j)
      if (j != seat)
        prefix = scheme.combine(prefix, scheme.component(table.share_of(group.id(j)), group, j));

    if (scheme.carrier_size() <= (1u << 14)) {
      std::unordered_set<std::uint64_t> images;
      for (const auto& cand : scheme.carrier()) {
        FieldElement folded = scheme.combine(prefix, scheme.component(cand, group, seat));
        if (!images.insert(folded.value()).second)
          violation("component map is not injective in the share argument");
      }
      if (images.size() != scheme.carrier_size())
        violation("component map does not cover the carrier");
    } else {
      std::unordered_set<std::uint64_t> images;
      for (int trial = 0; trial < 128; ++trial) {
        FieldElement cand = scheme.sample(rng);
        images.insert(scheme.combine(prefix, scheme.component(cand, group, seat)).value());
      }
      if (images.size() < 120) violation("component map looks far from injective");
    }
  }
}

std::unique_ptr<IdealScheme> make_scheme(const std::string& name, const PrimeModulus& p) {
  std::unique_ptr<IdealScheme> scheme;
  if (name == "shamir-additive") scheme = std::make_unique<ShamirAdditive>(p);
  else if (name == "shamir-multiplicative") scheme = std::make_unique<ShamirMultiplicative>(p);
  else fail(Errc::Format, "unknown scheme '" + name + "'");

  Rng probe(0x7c55);  // fixed probe seed: registration is deterministic
  validate_scheme(*scheme, probe);
  return scheme;
}

std::vector<std::string> scheme_names() { return {"shamir-additive", "shamir-multiplicative"}; }

std::vector<FieldElement> rns_with_identity(const IdealScheme& scheme, const Group& group, int k,
                                            Transcript& transcript, Rng& rng) {
  const int m = group.m();
  auto paths = rns::round_paths(m, k);

  std::vector<std::vector<FieldElement>> w;
  std::vector<FieldElement> closing;
  for (int i = 0; i < k; ++i) {
    const auto& path = paths[i];
    std::vector<FieldElement> wi(m, scheme.identity());
    FieldElement running = scheme.identity();
    for (int h = 0; h < m; ++h) {
      int at = path[h];
      int next = path[(h + 1) % m];
      wi[at] = scheme.sample(rng);
      running = scheme.combine(running, wi[at]);
      transcript.send(Phase::RnsRound, i + 1, at, next, running);
    }
    closing.push_back(running);
    w.push_back(std::move(wi));
  }

  // Position 0 folds in the inverse of everything it received, which drives
  // the total fold to the identity.
  FieldElement total = scheme.identity();
  for (const auto& s : closing) total = scheme.combine(total, s);
  FieldElement v0 = scheme.invert(total);

  std::vector<FieldElement> r(m, scheme.identity());
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < k; ++i) r[j] = scheme.combine(r[j], w[i][j]);
  r[0] = scheme.combine(r[0], v0);
  return r;
}

FieldElement TightlyCoupled::rcc(const FieldElement& share, const Group& group, int position,
                                 const FieldElement& r) const {
  return scheme->combine(scheme->component(share, group, position), r);
}

FieldElement TightlyCoupled::rcsr(std::span<const FieldElement> rcs) const {
  FieldElement acc = scheme->identity();
  for (const auto& c : rcs) acc = scheme->combine(acc, c);
  return acc;
}

TightlyCoupled convert(const IdealScheme& scheme) { return TightlyCoupled{&scheme}; }

GenericSessionResult run_generic_session(const IdealScheme& scheme, const ShareTable& table,
                                         const Group& group, int k, Rng& rng) {
  const int m = group.m();
  if (m < table.t()) fail(Errc::GroupTooSmall, "fewer participants than the threshold");
  scheme.check_group(group.ids());

  Transcript transcript;
  auto r = rns_with_identity(scheme, group, k, transcript, rng);

  auto ops = convert(scheme);
  std::vector<FieldElement> rcs;
  rcs.reserve(m);
  for (int j = 0; j < m; ++j)
    rcs.push_back(ops.rcc(table.share_of(group.id(j)), group, j, r[j]));

  for (int sender = 0; sender < m; ++sender)
    for (int receiver = 0; receiver < m; ++receiver)
      if (receiver != sender) transcript.send(Phase::RcBroadcast, 0, sender, receiver, rcs[sender]);

  FieldElement secret = ops.rcsr(rcs);
  SessionParams params{group.modulus(), table.t(), k, group.ids(), scheme.name()};
  return GenericSessionResult{secret, std::move(transcript), std::move(params), std::move(r), std::move(rcs)};
}

}  // namespace tcss::generic
