#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "tcss/error.hpp"

namespace tcss {

// Residues are held in 64 bits with 128-bit intermediates, so moduli up to
// 62 bits keep every operation overflow-free.
inline constexpr int kMaxModulusBits = 62;

class PrimeModulus {
 public:
  explicit PrimeModulus(std::uint64_t p);

  std::uint64_t value() const noexcept { return p_; }
  bool operator==(const PrimeModulus&) const = default;

  // Deterministic Miller-Rabin, exact for all 64-bit inputs.
  static bool is_prime(std::uint64_t n);

 private:
  std::uint64_t p_;
};

/// Element of F_p. Carries its modulus; mixing moduli is rejected.
class FieldElement {
 public:
  FieldElement(std::uint64_t value, const PrimeModulus& p)
      : v_(value % p.value()), p_(p.value()) {}

  std::uint64_t value() const noexcept { return v_; }
  std::uint64_t modulus() const noexcept { return p_; }
  bool is_zero() const noexcept { return v_ == 0; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

  /// Multiplicative inverse by extended Euclid; ZeroInverse on 0.
  FieldElement inverse() const;
  FieldElement pow(std::uint64_t e) const;

  bool operator==(const FieldElement& o) const { return v_ == o.v_ && p_ == o.p_; }
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  std::string hex() const;
  static FieldElement from_hex(std::string_view s, const PrimeModulus& p);

 private:
  struct Raw {};
  FieldElement(std::uint64_t v, std::uint64_t p, Raw) : v_(v), p_(p) {}
  static FieldElement raw(std::uint64_t v, std::uint64_t p) { return FieldElement(v, p, Raw{}); }

  void check_same(const FieldElement& o) const {
    if (p_ != o.p_) fail(Errc::ModulusMismatch, "operands live in different fields");
  }

  std::uint64_t v_;
  std::uint64_t p_;
};

using Fe = FieldElement;

// Raw modular helpers shared with the number-theoretic code.
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m);
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m);  // gcd(a,m)=1 required

// Lowercase hex, no prefix, "0" for zero.
std::string to_hex(std::uint64_t v);
std::uint64_t parse_hex(std::string_view s);

/// Deterministic seeded generator; the only randomness source in the library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform draw in [0, n) by masked rejection (portable across platforms).
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 gen_;
};

FieldElement sample_uniform(Rng& rng, const PrimeModulus& p);

/// Stream seed for independent parallel trials.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace tcss
