#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace symres {

// Exact arbitrary-precision integer. Sector dimensions exceed 64 bits already
// around N ~ 130 particles (C(200,100) ~ 9e58), and the sum rules are exact.
using BigInt = mpz_class;

inline bool fits_uint64(const BigInt& n) { return n.fits_ulong_p(); }

inline std::uint64_t to_uint64(const BigInt& n) {
  if (!n.fits_ulong_p()) throw std::overflow_error("BigInt does not fit in 64 bits");
  return static_cast<std::uint64_t>(n.get_ui());
}

inline double to_double(const BigInt& n) { return n.get_d(); }

// Natural log of a positive integer, exact to double rounding even when the
// value itself overflows double range.
inline double log_of(const BigInt& n) {
  if (n <= 0) throw std::domain_error("log_of requires a positive integer");
  signed long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, n.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * 0.693147180559945309417232121458;
}

// Binomial coefficient with C(n,k) = 0 outside 0 <= k <= n.
inline BigInt binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return BigInt{0};
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

inline BigInt pow2(unsigned long n) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, n);
  return r;
}

}  // namespace symres
