#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "symres/numeric.hpp"

namespace symres {

// Natural log of a positive integer dimension, for arguments far beyond
// double (or even exact-integer) practicality: Psi(D+1) with D ~ 10^300.
struct LogDimension {
  double log_value = 0.0;
};

namespace detail {

// Exact harmonic summation and asymptotic series cross over here. In the
// overlap window [1e5, 1e6] the two agree to better than 12 digits.
inline constexpr std::uint64_t kSeriesCrossover = 1'000'000;

// Psi(x+1) = log x + 1/(2x) - 1/(12x^2) + 1/(120x^4) - 1/(252x^6) + ...
// evaluated from log x; valid (rel. err < 1e-12) for x >= 1e6.
inline double digamma_series_from_log(double log_x) {
  const double u = std::exp(-log_x);  // 1/x, underflows harmlessly for huge x
  const double u2 = u * u;
  return log_x + u * (0.5 - u * (1.0 / 12.0 - u2 * (1.0 / 120.0 - u2 / 252.0)));
}

// Psi'(x+1) = 1/x - 1/(2x^2) + 1/(6x^3) - 1/(30x^5) + 1/(42x^7) - ...
inline double trigamma_series_from_log(double log_x) {
  const double u = std::exp(-log_x);
  const double u2 = u * u;
  return u * (1.0 - u * (0.5 - u * (1.0 / 6.0 - u2 * (1.0 / 30.0 - u2 / 42.0))));
}

}  // namespace detail

// Psi(n+1) = -gamma + H_n. Exact compensated summation up to the crossover,
// asymptotic series beyond; relative error <= 1e-12 everywhere.
inline double digamma_shifted(std::uint64_t n) {
  if (n == 0) return -euler_gamma;
  if (n > detail::kSeriesCrossover)
    return detail::digamma_series_from_log(std::log(static_cast<double>(n)));
  KahanSum h;
  for (std::uint64_t k = 1; k <= n; ++k) h.add(1.0 / static_cast<double>(k));
  return h.value() - euler_gamma;
}

inline double digamma_shifted(LogDimension n) {
  if (n.log_value < 0.0) throw std::domain_error("digamma_shifted: argument below 1");
  if (n.log_value < 14.0) {  // dimension is an exact integer; recover it
    return digamma_shifted(static_cast<std::uint64_t>(std::llround(std::exp(n.log_value))));
  }
  return detail::digamma_series_from_log(n.log_value);
}

// Psi'(n+1) = pi^2/6 - sum_{k<=n} 1/k^2.
inline double trigamma_shifted(std::uint64_t n) {
  if (n == 0) return pi_sq_over_6;
  if (n > detail::kSeriesCrossover)
    return detail::trigamma_series_from_log(std::log(static_cast<double>(n)));
  KahanSum s;
  for (std::uint64_t k = 1; k <= n; ++k) {
    const double x = static_cast<double>(k);
    s.add(1.0 / (x * x));
  }
  return pi_sq_over_6 - s.value();
}

inline double trigamma_shifted(LogDimension n) {
  if (n.log_value < 0.0) throw std::domain_error("trigamma_shifted: argument below 1");
  if (n.log_value < 14.0) {
    return trigamma_shifted(static_cast<std::uint64_t>(std::llround(std::exp(n.log_value))));
  }
  return detail::trigamma_series_from_log(n.log_value);
}

// x*Psi'(x+1) - 1 = -1/(2x) + 1/(6x^2) - 1/(30x^4) + ..., the scaled series
// remainder; cancellation-free building block for the variance at huge x.
inline double trigamma_shifted_scaled_minus_one(double log_x) {
  if (log_x < 14.0) {
    const std::uint64_t n = static_cast<std::uint64_t>(std::llround(std::exp(log_x)));
    return static_cast<double>(n) * trigamma_shifted(n) - 1.0;
  }
  const double u = std::exp(-log_x);
  const double u2 = u * u;
  return -u * (0.5 - u * (1.0 / 6.0 - u2 * (1.0 / 30.0 - u2 / 42.0)));
}

// Psi(x+1) - log x = 1/(2x) - 1/(12x^2) + ...; remainder used when dimensions
// enter only through their logs.
inline double digamma_shifted_minus_log(double log_x) {
  if (log_x < 14.0) {
    const std::uint64_t n = static_cast<std::uint64_t>(std::llround(std::exp(log_x)));
    return digamma_shifted(n) - std::log(static_cast<double>(n));
  }
  const double u = std::exp(-log_x);
  const double u2 = u * u;
  return u * (0.5 - u * (1.0 / 12.0 - u2 * (1.0 / 120.0 - u2 / 252.0)));
}

}  // namespace symres
