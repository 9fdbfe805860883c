#include "tcss/field.hpp"

#include <bit>

namespace tcss {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::ModulusTooLarge: return "ModulusTooLarge";
    case Errc::ModulusMismatch: return "ModulusMismatch";
    case Errc::ZeroInverse: return "ZeroInverse";
    case Errc::BadThreshold: return "BadThreshold";
    case Errc::DuplicateId: return "DuplicateId";
    case Errc::ZeroId: return "ZeroId";
    case Errc::IdNotInGroup: return "IdNotInGroup";
    case Errc::SelfSend: return "SelfSend";
    case Errc::NotCoprime: return "NotCoprime";
    case Errc::GroupTooSmall: return "GroupTooSmall";
    case Errc::RoundCountTooLarge: return "RoundCountTooLarge";
    case Errc::IncompleteRcSet: return "IncompleteRcSet";
    case Errc::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case Errc::InterfaceViolation: return "InterfaceViolation";
    case Errc::Format: return "Format";
  }
  return "Unknown";
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mul_mod(r, a, m);
    a = mul_mod(a, a, m);
    e >>= 1;
  }
  return r;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
  // Iterative extended Euclid; coefficients tracked in signed 128 bits.
  __int128 t = 0, new_t = 1;
  std::uint64_t r = m, new_r = a % m;
  while (new_r != 0) {
    std::uint64_t q = r / new_r;
    __int128 tmp_t = t - static_cast<__int128>(q) * new_t;
    t = new_t;
    new_t = tmp_t;
    std::uint64_t tmp_r = r - q * new_r;
    r = new_r;
    new_r = tmp_r;
  }
  if (r != 1) fail(Errc::ZeroInverse, "no inverse: gcd(" + std::to_string(a % m) + ", " + std::to_string(m) + ") != 1");
  if (t < 0) t += m;
  return static_cast<std::uint64_t>(t);
}

bool PrimeModulus::is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These 12 bases decide primality for every n < 2^64.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

PrimeModulus::PrimeModulus(std::uint64_t p) : p_(p) {
  if (p >> kMaxModulusBits) fail(Errc::ModulusTooLarge, "modulus exceeds " + std::to_string(kMaxModulusBits) + " bits");
  if (!is_prime(p)) fail(Errc::NotPrime, std::to_string(p) + " is not prime");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same(o);
  std::uint64_t s = v_ + o.v_;
  if (s >= p_) s -= p_;
  return raw(s, p_);
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  check_same(o);
  return raw(v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_, p_);
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same(o);
  return raw(mul_mod(v_, o.v_, p_), p_);
}

FieldElement FieldElement::operator-() const {
  return raw(v_ == 0 ? 0 : p_ - v_, p_);
}

FieldElement FieldElement::inverse() const {
  if (v_ == 0) fail(Errc::ZeroInverse, "zero has no multiplicative inverse");
  return raw(inv_mod(v_, p_), p_);
}

FieldElement FieldElement::pow(std::uint64_t e) const {
  return raw(pow_mod(v_, e, p_), p_);
}

std::string FieldElement::hex() const { return to_hex(v_); }

FieldElement FieldElement::from_hex(std::string_view s, const PrimeModulus& p) {
  std::uint64_t v = parse_hex(s);
  if (v >= p.value()) fail(Errc::Format, "value " + std::string(s) + " not reduced mod " + to_hex(p.value()));
  return FieldElement(v, p);
}

std::string to_hex(std::uint64_t v) {
  if (v == 0) return "0";
  static const char* digits = "0123456789abcdef";
  std::string out;
  while (v) {
    out.insert(out.begin(), digits[v & 0xf]);
    v >>= 4;
  }
  return out;
}

std::uint64_t parse_hex(std::string_view s) {
  if (s.empty() || s.size() > 16) fail(Errc::Format, "bad hex literal '" + std::string(s) + "'");
  std::uint64_t v = 0;
  for (char c : s) {
    int d;
    if (c >= '0' && c <= '9') d = c - '0';
    else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
    else fail(Errc::Format, "bad hex digit in '" + std::string(s) + "'");
    v = (v << 4) | static_cast<std::uint64_t>(d);
  }
  return v;
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) fail(Errc::Format, "empty draw range");
  if (n == 1) return 0;
  int bits = std::bit_width(n - 1);
  std::uint64_t mask = bits == 64 ? ~0ull : (1ull << bits) - 1;
  std::uint64_t x;
  do {
    x = gen_() & mask;
  } while (x >= n);
  return x;
}

FieldElement sample_uniform(Rng& rng, const PrimeModulus& p) {
  return FieldElement(rng.below(p.value()), p);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace tcss
