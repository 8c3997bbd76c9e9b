#pragma once

#include <cmath>

namespace symres {

// Euler-Mascheroni constant, 30 significant digits.
inline constexpr double euler_gamma = 0.577215664901532860606512090082;
inline constexpr double pi_sq_over_6 = 1.64493406684822643647241516665;

// Kahan-compensated accumulator for long sums of doubles.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - c_;
    const double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

// x log x with the continuous extension 0 log 0 = 0.
inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// log(e^a - e^b) for a > b, stable when the two are close.
inline double log_diff_exp(double a, double b) {
  const double d = b - a;
  return a + (d < -0.693147180559945 ? std::log1p(-std::exp(d)) : std::log(-std::expm1(d)));
}

// log(e^a + e^b).
inline double log_sum_exp(double a, double b) {
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

}  // namespace symres
