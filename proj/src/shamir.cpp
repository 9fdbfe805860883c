#include "tcss/shamir.hpp"

#include <unordered_set>

namespace tcss {

namespace {

void check_ids(std::span<const FieldElement> ids) {
  std::unordered_set<std::uint64_t> seen;
  for (const auto& id : ids) {
    if (id.is_zero()) fail(Errc::ZeroId, "shareholder id 0 is reserved for the secret");
    if (!seen.insert(id.value()).second)
      fail(Errc::DuplicateId, "duplicate shareholder id " + id.hex());
  }
}

}  // namespace

Polynomial::Polynomial(std::vector<FieldElement> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() < 2) fail(Errc::BadThreshold, "polynomial needs degree >= 1 (t >= 2)");
}

FieldElement Polynomial::eval(const FieldElement& x) const {
  FieldElement acc = coeffs_.back();
  for (auto it = coeffs_.rbegin() + 1; it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

ShareTable::ShareTable(PrimeModulus p, int t, std::vector<ShareEntry> entries)
    : p_(p), t_(t), entries_(std::move(entries)) {
  if (t_ < 2) fail(Errc::BadThreshold, "threshold must be at least 2");
  if (static_cast<int>(entries_.size()) < t_)
    fail(Errc::BadThreshold, "need at least t = " + std::to_string(t_) + " shareholders");
  std::vector<FieldElement> ids;
  ids.reserve(entries_.size());
  for (const auto& e : entries_) ids.push_back(e.id);
  check_ids(ids);
}

std::vector<FieldElement> ShareTable::ids() const {
  std::vector<FieldElement> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.id);
  return out;
}

FieldElement ShareTable::share_of(const FieldElement& id) const {
  for (const auto& e : entries_)
    if (e.id == id) return e.share;
  fail(Errc::IdNotInGroup, "no share issued to id " + id.hex());
}

Deal share_generate_retaining(const FieldElement& secret, std::span<const FieldElement> ids,
                              int t, Rng& rng) {
  int n = static_cast<int>(ids.size());
  if (t < 2 || t > n)
    fail(Errc::BadThreshold, "threshold " + std::to_string(t) + " out of range for n = " + std::to_string(n));
  check_ids(ids);
  PrimeModulus p(secret.modulus());

  std::vector<FieldElement> coeffs;
  coeffs.reserve(t);
  coeffs.push_back(secret);
  for (int i = 1; i < t; ++i) coeffs.push_back(sample_uniform(rng, p));
  Polynomial f(std::move(coeffs));

  std::vector<ShareEntry> entries;
  entries.reserve(n);
  for (const auto& id : ids) entries.push_back({id, f.eval(id)});
  return Deal{ShareTable(p, t, std::move(entries)), std::move(f)};
}

ShareTable share_generate(const FieldElement& secret, std::span<const FieldElement> ids,
                          int t, Rng& rng) {
  return share_generate_retaining(secret, ids, t, rng).table;
}

FieldElement lagrange_coeff_at_zero(const FieldElement& id, std::span<const FieldElement> group_ids) {
  if (group_ids.size() < 2) fail(Errc::GroupTooSmall, "need at least two ids to interpolate");
  check_ids(group_ids);
  bool member = false;
  PrimeModulus p(id.modulus());
  FieldElement num(1, p), den(1, p);
  for (const auto& other : group_ids) {
    if (other == id) {
      member = true;
      continue;
    }
    num *= other;
    den *= other - id;
  }
  if (!member) fail(Errc::IdNotInGroup, "id " + id.hex() + " not in the interpolation group");
  return num * den.inverse();
}

FieldElement reconstruct_classic(std::span<const ShareEntry> shares) {
  if (shares.size() < 2) fail(Errc::GroupTooSmall, "need at least two shares");
  std::vector<FieldElement> ids;
  ids.reserve(shares.size());
  for (const auto& s : shares) ids.push_back(s.id);
  check_ids(ids);
  PrimeModulus p(shares.front().id.modulus());
  FieldElement acc(0, p);
  for (const auto& s : shares) acc += s.share * lagrange_coeff_at_zero(s.id, ids);
  return acc;
}

}  // namespace tcss
