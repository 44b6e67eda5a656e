#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bernoulli {

/// Exact arbitrary-precision integer and rational types (GMP-backed).
using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

inline Int pow_int(Int base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.backend().data(), base.backend().data(), e);
  return r;
}

inline Rat pow_rat(const Rat& base, long e) {
  if (e == 0) return Rat(1);
  Int num = numerator(base), den = denominator(base);
  if (e < 0) {
    if (num == 0) throw std::domain_error("pow_rat: zero base, negative exponent");
    std::swap(num, den);
    e = -e;
  }
  Rat r(pow_int(num, static_cast<unsigned long>(e)),
        pow_int(den, static_cast<unsigned long>(e)));
  return r;
}

inline Rat abs_rat(const Rat& x) { return x < 0 ? Rat(-x) : x; }

inline int sign_of(const Rat& x) { return x < 0 ? -1 : (x > 0 ? 1 : 0); }

/// Parses an exact decimal literal ("0.618", "-3", "1e-3", "2/3") into a rational.
/// Decimals and fractions are exact; no floating-point rounding is involved.
inline Rat parse_exact_decimal(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty numeric literal");
  auto slash = s.find('/');
  if (slash != std::string_view::npos) {
    Rat num = parse_exact_decimal(s.substr(0, slash));
    Rat den = parse_exact_decimal(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return num / den;
  }
  bool neg = false;
  std::size_t i = 0;
  if (s[i] == '+' || s[i] == '-') {
    neg = s[i] == '-';
    ++i;
  }
  Int mantissa = 0;
  long frac_digits = 0, exponent = 0;
  bool seen_digit = false, in_frac = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c >= '0' && c <= '9') {
      mantissa = mantissa * 10 + (c - '0');
      if (in_frac) ++frac_digits;
      seen_digit = true;
    } else if (c == '.') {
      if (in_frac) throw std::invalid_argument("malformed decimal: " + std::string(s));
      in_frac = true;
    } else if (c == 'e' || c == 'E') {
      exponent = std::stol(std::string(s.substr(i + 1)));
      break;
    } else {
      throw std::invalid_argument("malformed decimal: " + std::string(s));
    }
  }
  if (!seen_digit) throw std::invalid_argument("malformed decimal: " + std::string(s));
  Rat r(mantissa);
  long net = exponent - frac_digits;
  if (net > 0)
    r *= Rat(pow_int(10, static_cast<unsigned long>(net)));
  else if (net < 0)
    r /= Rat(pow_int(10, static_cast<unsigned long>(-net)));
  return neg ? Rat(-r) : r;
}

// --- stable hashing (FNV-1a), used for cache keys and hash-map keys ---

inline std::uint64_t fnv1a64(const void* data, std::size_t len,
                             std::uint64_t h = 0xcbf29ce484222325ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::uint64_t fnv1a64(std::string_view s,
                             std::uint64_t h = 0xcbf29ce484222325ull) {
  return fnv1a64(s.data(), s.size(), h);
}

inline std::uint64_t hash_mpz(mpz_srcptr z, std::uint64_t h) {
  long sz = z->_mp_size;
  h = fnv1a64(&sz, sizeof sz, h);
  std::size_t n = static_cast<std::size_t>(sz < 0 ? -sz : sz);
  return fnv1a64(mpz_limbs_read(z), n * sizeof(mp_limb_t), h);
}

inline std::uint64_t hash_rat(const Rat& q, std::uint64_t h = 0xcbf29ce484222325ull) {
  mpq_srcptr p = q.backend().data();
  h = hash_mpz(mpq_numref(p), h);
  return hash_mpz(mpq_denref(p), h);
}

/// Canonical residue-vector key for value-distribution tables.
struct RatVecHash {
  std::size_t operator()(const std::vector<Rat>& v) const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const auto& q : v) h = hash_rat(q, h);
    return static_cast<std::size_t>(h);
  }
};

}  // namespace bernoulli
