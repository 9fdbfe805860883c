#pragma once

#include <memory>
#include <string>

#include "tcss/rns.hpp"
#include "tcss/shamir.hpp"

namespace tcss::generic {

/// An abstract ideal threshold scheme: a per-participant component function
/// eta' together with a combining operator over a carrier subset of F_p.
/// Folding the components of any group of size >= t under the operator
/// yields the secret; eta' is a bijection in the share argument.
class IdealScheme {
 public:
  virtual ~IdealScheme() = default;

  virtual std::string name() const = 0;
  virtual PrimeModulus modulus() const = 0;

  virtual FieldElement combine(const FieldElement& a, const FieldElement& b) const = 0;
  virtual FieldElement identity() const = 0;
  virtual FieldElement invert(const FieldElement& a) const = 0;

  virtual FieldElement sample(Rng& rng) const = 0;  // uniform over the carrier
  virtual bool in_carrier(const FieldElement& v) const = 0;
  virtual std::uint64_t carrier_size() const = 0;
  virtual std::vector<FieldElement> carrier() const = 0;  // enumerable at registration scale

  /// eta'(share, group) for the participant at `position`.
  virtual FieldElement component(const FieldElement& share, const Group& group, int position) const = 0;

  virtual ShareTable share_generate(const FieldElement& secret, std::span<const FieldElement> ids,
                                    int t, Rng& rng) const = 0;
  virtual FieldElement sample_secret(Rng& rng) const = 0;

  /// Ids 1..n, mapped into whatever domain the scheme interpolates over.
  virtual std::vector<FieldElement> default_ids(int n) const = 0;
  virtual int max_shareholders() const = 0;

  /// Some carriers restrict which id sets can interpolate.
  virtual void check_group(std::span<const FieldElement> ids) const;
};

/// Registration-time property tests; throws InterfaceViolation when the
/// scheme is not an ideal fold-reconstructible sharing.
void validate_scheme(const IdealScheme& scheme, Rng& rng);

/// Registry: "shamir-additive" over F_p, or "shamir-multiplicative" over the
/// largest prime-order subgroup of F_p^*.
std::unique_ptr<IdealScheme> make_scheme(const std::string& name, const PrimeModulus& p);
std::vector<std::string> scheme_names();

/// Ring traversals identical to the concrete selection protocol, with sums
/// replaced by the scheme's operator; the fold of all results is the
/// identity element.
std::vector<FieldElement> rns_with_identity(const IdealScheme& scheme, const Group& group, int k,
                                            Transcript& transcript, Rng& rng);

/// The converted tightly-coupled operations.
struct TightlyCoupled {
  const IdealScheme* scheme;

  FieldElement rcc(const FieldElement& share, const Group& group, int position,
                   const FieldElement& r) const;
  FieldElement rcsr(std::span<const FieldElement> rcs) const;
};

TightlyCoupled convert(const IdealScheme& scheme);

struct GenericSessionResult {
  FieldElement secret;
  Transcript transcript;
  SessionParams params;
  std::vector<FieldElement> r;
  std::vector<FieldElement> rcs;
};

GenericSessionResult run_generic_session(const IdealScheme& scheme, const ShareTable& table,
                                         const Group& group, int k, Rng& rng);

}  // namespace tcss::generic
