#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "symres/bigint.hpp"
#include "symres/numeric.hpp"
#include "symres/special_fn.hpp"
#include "symres/su2_dims.hpp"

namespace symres {

struct EntropyStats {
  double mean = 0.0;      // nats
  double variance = 0.0;  // nats^2
};

namespace detail {

// Dimension as a number that may only be representable through its log.
// Exact dimensions are recoverable below 2^53, which is where the digamma
// sums want integers anyway.
struct DimScalar {
  double log_v = 0.0;
  std::uint64_t exact = 0;
  bool small = false;
};

inline DimScalar make_scalar(const BigInt& n) {
  DimScalar s;
  s.log_v = log_of(n);
  if (fits_uint64(n)) {
    s.exact = to_uint64(n);
    s.small = s.exact < (std::uint64_t{1} << 53);
  }
  return s;
}

inline DimScalar make_scalar(LogDimension n) {
  DimScalar s;
  s.log_v = n.log_value;
  if (n.log_value < 14.0) {
    s.exact = static_cast<std::uint64_t>(std::llround(std::exp(n.log_value)));
    s.small = true;
  }
  return s;
}

inline double psi_remainder(const DimScalar& x) {  // Psi(x+1) - log x
  if (x.small) return digamma_shifted(x.exact) - std::log(static_cast<double>(x.exact));
  return digamma_shifted_minus_log(x.log_v);
}

inline double trig_scaled(const DimScalar& x) {  // x Psi'(x+1) - 1
  if (x.small) return static_cast<double>(x.exact) * trigamma_shifted(x.exact) - 1.0;
  return trigamma_shifted_scaled_minus_one(x.log_v);
}

inline double ratio(const DimScalar& a, const DimScalar& b) {  // a/b
  if (a.small && b.small) return static_cast<double>(a.exact) / static_cast<double>(b.exact);
  return std::exp(a.log_v - b.log_v);
}

inline double ratio_minus1(const DimScalar& a, const DimScalar& b) {  // (a-1)/b
  if (a.small) return (static_cast<double>(a.exact) - 1.0) * std::exp(-b.log_v);
  return std::exp(a.log_v - b.log_v);  // a-1 ~ a beyond 2^53
}

inline double weight_impl(const DimScalar& d, const DimScalar& b, const DimScalar& D) {
  if (d.small && b.small && D.small)
    return static_cast<double>(d.exact) * static_cast<double>(b.exact) / static_cast<double>(D.exact);
  return std::exp(d.log_v + b.log_v - D.log_v);
}

inline double phi_impl(const DimScalar& d, const DimScalar& b, const DimScalar& D) {
  const DimScalar& mn = d.log_v <= b.log_v ? d : b;
  const DimScalar& mx = d.log_v <= b.log_v ? b : d;
  return (D.log_v - mx.log_v) + psi_remainder(D) - psi_remainder(mx) - 0.5 * ratio_minus1(mn, mx);
}

// chi in the cancellation-free form
//   chi = r + (1+r) T(max) - T(D) - (1+T(D))/D - w(w+2)/4,
// with r = min/max, w = (min-1)/max, T(x) = x Psi'(x+1) - 1; algebraically
// identical to (d+b)Psi'(max+1) - (D+1)Psi'(D+1) - (min-1)(d+b+max-1)/(4 max^2).
inline double chi_impl(const DimScalar& d, const DimScalar& b, const DimScalar& D) {
  const DimScalar& mn = d.log_v <= b.log_v ? d : b;
  const DimScalar& mx = d.log_v <= b.log_v ? b : d;
  const double r = ratio(mn, mx);
  const double w = ratio_minus1(mn, mx);
  const double t_mx = trig_scaled(mx);
  const double t_D = trig_scaled(D);
  return r + (1.0 + r) * t_mx - t_D - (1.0 + t_D) * std::exp(-D.log_v) - w * (w + 2.0) / 4.0;
}

}  // namespace detail

// rho_r = d b / D, the probability weight of a sector under the ensemble.
inline double sector_weight(const BigInt& d, const BigInt& b, const BigInt& D) {
  return detail::weight_impl(detail::make_scalar(d), detail::make_scalar(b), detail::make_scalar(D));
}
inline double sector_weight(LogDimension d, LogDimension b, LogDimension D) {
  return detail::weight_impl(detail::make_scalar(d), detail::make_scalar(b), detail::make_scalar(D));
}

// phi_r = Psi(D+1) - Psi(max(d,b)+1) - (min(d,b)-1)/(2 max(d,b)).
inline double sector_phi(const BigInt& d, const BigInt& b, const BigInt& D) {
  return detail::phi_impl(detail::make_scalar(d), detail::make_scalar(b), detail::make_scalar(D));
}
inline double sector_phi(LogDimension d, LogDimension b, LogDimension D) {
  return detail::phi_impl(detail::make_scalar(d), detail::make_scalar(b), detail::make_scalar(D));
}

// chi_r of the variance formula, with the d<->b swap applied when d > b.
inline double sector_chi(const BigInt& d, const BigInt& b, const BigInt& D) {
  return detail::chi_impl(detail::make_scalar(d), detail::make_scalar(b), detail::make_scalar(D));
}
inline double sector_chi(LogDimension d, LogDimension b, LogDimension D) {
  return detail::chi_impl(detail::make_scalar(d), detail::make_scalar(b), detail::make_scalar(D));
}

// <S> = sum_r rho_r phi_r over the decomposition.
inline double average_entropy(const SectorDims& dims) {
  const auto D = detail::make_scalar(dims.total);
  KahanSum acc;
  for (const auto& s : dims.sectors) {
    const auto d = detail::make_scalar(s.d);
    const auto b = detail::make_scalar(s.b);
    acc.add(detail::weight_impl(d, b, D) * detail::phi_impl(d, b, D));
  }
  return acc.value();
}

// (Delta S)^2 = (sum_r rho_r (phi_r^2 + chi_r) - <S>^2) / (D+1). The bracket
// is a difference of nearly equal quantities for large D, so it is summed
// compensated and the division is applied last.
inline double variance_entropy(const SectorDims& dims) {
  const auto D = detail::make_scalar(dims.total);
  KahanSum avg, second;
  for (const auto& s : dims.sectors) {
    const auto d = detail::make_scalar(s.d);
    const auto b = detail::make_scalar(s.b);
    const double rho = detail::weight_impl(d, b, D);
    const double phi = detail::phi_impl(d, b, D);
    avg.add(rho * phi);
    second.add(rho * (phi * phi + detail::chi_impl(d, b, D)));
  }
  const double bracket = second.value() - avg.value() * avg.value();
  double var;
  if (D.small) {
    var = bracket / (static_cast<double>(D.exact) + 1.0);
  } else {
    var = bracket * std::exp(-D.log_v);  // 1/(D+1) ~ 1/D beyond 2^53
  }
  return var > 0.0 ? var : 0.0;
}

struct EntropyBounds {
  double lower = 0.0;
  double upper = 0.0;
};

// Bracketing of <S>: upper = sum rho log min(D/b, D/d), lower subtracts
// sum rho min(d/b, b/d)/2; the gap never exceeds 1/2.
inline EntropyBounds entropy_bounds(const SectorDims& dims) {
  const auto D = detail::make_scalar(dims.total);
  KahanSum up, gap;
  for (const auto& s : dims.sectors) {
    const auto d = detail::make_scalar(s.d);
    const auto b = detail::make_scalar(s.b);
    const auto& mn = d.log_v <= b.log_v ? d : b;
    const auto& mx = d.log_v <= b.log_v ? b : d;
    const double rho = detail::weight_impl(d, b, D);
    up.add(rho * (D.log_v - mx.log_v));
    gap.add(rho * 0.5 * detail::ratio(mn, mx));
  }
  return {up.value() - gap.value(), up.value()};
}

// S_max = log sum_r min(d_r, b_r), attained by the maximally entangled state.
inline double max_entropy(const SectorDims& dims) {
  BigInt s = 0;
  for (const auto& sec : dims.sectors) s += sec.d <= sec.b ? sec.d : sec.b;
  return log_of(s);
}

// Von Neumann entropy of the ensemble-averaged reduced state,
// sum_r (d b / D) log(D / b); an upper bound on <S>.
inline double entropy_of_average(const SectorDims& dims) {
  const auto D = detail::make_scalar(dims.total);
  KahanSum acc;
  for (const auto& s : dims.sectors) {
    const auto d = detail::make_scalar(s.d);
    const auto b = detail::make_scalar(s.b);
    acc.add(detail::weight_impl(d, b, D) * (D.log_v - b.log_v));
  }
  return acc.value();
}

struct PageCurvePoint {
  int n_a = 0;
  double mean = 0.0;
  double std_dev = 0.0;
};

// Typical-entropy Page curve at fixed total spin: one row per subsystem size.
inline std::vector<PageCurvePoint> page_curve(int n, TwiceSpin j, int n_a_first, int n_a_last) {
  std::vector<PageCurvePoint> rows;
  for (int n_a = n_a_first; n_a <= n_a_last; ++n_a) {
    const SectorDims dims = sector_dims(n, n_a, j);
    rows.push_back({n_a, average_entropy(dims), std::sqrt(variance_entropy(dims))});
  }
  return rows;
}

inline std::vector<PageCurvePoint> page_curve(int n, TwiceSpin j) {
  return page_curve(n, j, 1, n - 1);
}

}  // namespace symres
