#pragma once

#include <span>
#include <vector>

#include "tcss/field.hpp"

namespace tcss {

/// Dealer polynomial f(x) = a_0 + a_1 x + ... + a_{t-1} x^{t-1};
/// a_0 is the secret.
class Polynomial {
 public:
  explicit Polynomial(std::vector<FieldElement> coeffs);

  int threshold() const { return static_cast<int>(coeffs_.size()); }
  const std::vector<FieldElement>& coeffs() const { return coeffs_; }
  FieldElement eval(const FieldElement& x) const;

 private:
  std::vector<FieldElement> coeffs_;
};

struct ShareEntry {
  FieldElement id;
  FieldElement share;
};

class ShareTable {
 public:
  ShareTable(PrimeModulus p, int t, std::vector<ShareEntry> entries);

  const PrimeModulus& modulus() const { return p_; }
  int t() const { return t_; }
  int n() const { return static_cast<int>(entries_.size()); }
  const std::vector<ShareEntry>& entries() const { return entries_; }
  std::vector<FieldElement> ids() const;
  FieldElement share_of(const FieldElement& id) const;  // IdNotInGroup if absent

 private:
  PrimeModulus p_;
  int t_;
  std::vector<ShareEntry> entries_;
};

ShareTable share_generate(const FieldElement& secret, std::span<const FieldElement> ids,
                          int t, Rng& rng);

/// Test-mode deal that keeps the dealer polynomial for invariant checks.
struct Deal {
  ShareTable table;
  Polynomial poly;
};
Deal share_generate_retaining(const FieldElement& secret, std::span<const FieldElement> ids,
                              int t, Rng& rng);

/// prod_{i in group, i != j} U_i * (U_i - U_j)^{-1}  (mod p)
FieldElement lagrange_coeff_at_zero(const FieldElement& id, std::span<const FieldElement> group_ids);

/// Plain Lagrange reconstruction at x = 0 from at least t shares.
FieldElement reconstruct_classic(std::span<const ShareEntry> shares);

}  // namespace tcss
