#pragma once

#include <Eigen/Dense>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "symres/bigint.hpp"
#include "symres/random_states.hpp"
#include "symres/recoupling.hpp"
#include "symres/su2_dims.hpp"

namespace symres {

// U(1) (magnetization-conserving) sector decomposition: the abelian baseline.
// Charges are stored as twice-magnetization integers.
struct U1Sector {
  int twice_m_a = 0;
  BigInt d;
  BigInt b;
};

struct U1SectorDims {
  int n = 0;
  int n_a = 0;
  int twice_m = 0;
  std::vector<U1Sector> sectors;
  BigInt total;
};

inline U1SectorDims u1_sector_dims(int n, int n_a, int twice_m) {
  if (n_a < 1 || n_a > n - 1) throw std::invalid_argument("u1_sector_dims: need 1 <= N_A <= N-1");
  if (std::abs(twice_m) > n || (n + twice_m) % 2 != 0)
    throw std::invalid_argument("u1_sector_dims: invalid magnetization");
  U1SectorDims out{n, n_a, twice_m, {}, BigInt{0}};
  const int nb = n - n_a;
  for (int tma = -n_a; tma <= n_a; tma += 2) {
    U1Sector s{tma, binomial(n_a, (n_a + tma) / 2), binomial(nb, (nb + twice_m - tma) / 2)};
    if (s.d > 0 && s.b > 0) {
      out.total += s.d * s.b;
      out.sectors.push_back(std::move(s));
    }
  }
  if (out.total != binomial(n, (n + twice_m) / 2))
    throw std::logic_error("u1_sector_dims: sum rule violated");
  return out;
}

// View as a generic SectorDims for the typical-entropy formulas. Labels are
// shifted by +N_A to keep them non-negative and strictly increasing.
inline SectorDims to_sector_dims(const U1SectorDims& u1) {
  SectorDims out;
  for (const auto& s : u1.sectors) out.sectors.push_back({TwiceSpin{s.twice_m_a + u1.n_a}, s.d, s.b});
  out.total = u1.total;
  return out;
}

namespace detail {

// twice-magnetization of a configuration: up bits are 0
inline int config_twice_m(std::uint64_t idx, int n) {
  return n - 2 * std::popcount(idx);
}

inline std::vector<std::uint64_t> configs_with_m(int n, int twice_m) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << n); ++idx)
    if (config_twice_m(idx, n) == twice_m) out.push_back(idx);
  return out;
}

}  // namespace detail

// Haar-random state supported on the fixed-m configuration subspace.
inline FullStateVector random_u1_state(int n, int twice_m, RandomStream& rng) {
  if (n < 1 || n > 24) throw std::invalid_argument("random_u1_state: N out of range");
  const auto configs = detail::configs_with_m(n, twice_m);
  if (configs.empty()) throw std::invalid_argument("random_u1_state: empty sector");
  FullStateVector psi{n, Eigen::VectorXcd::Zero(Eigen::Index{1} << n)};
  for (auto idx : configs) psi.amplitudes[static_cast<Eigen::Index>(idx)] = rng.gaussian();
  psi.amplitudes /= psi.amplitudes.norm();
  return psi;
}

struct U1EntropyPair {
  double s_ga = 0.0;
  double s_ka = 0.0;
};

// Both entropies of a fixed-m state: S_GA through the charge-block route and
// S_KA through the plain partial trace. For U(1) they must coincide.
inline U1EntropyPair u1_entropy_pair(const FullStateVector& psi, int n_a) {
  const int n = psi.n;
  if (n_a < 1 || n_a > n - 1) throw std::invalid_argument("u1_entropy_pair: need 1 <= N_A <= N-1");

  // identify the total charge and check the state is confined to it
  const int nb = n - n_a;
  double best_w = -1.0;
  int twice_m = 0;
  std::vector<double> weight(static_cast<std::size_t>(n) + 1, 0.0);
  for (Eigen::Index idx = 0; idx < psi.amplitudes.size(); ++idx)
    weight[static_cast<std::size_t>(std::popcount(static_cast<std::uint64_t>(idx)))] +=
        std::norm(psi.amplitudes[idx]);
  for (int k = 0; k <= n; ++k)
    if (weight[k] > best_w) {
      best_w = weight[k];
      twice_m = n - 2 * k;
    }
  if (std::sqrt(std::max(0.0, psi.amplitudes.squaredNorm() - best_w)) > 1e-10)
    throw std::domain_error("u1_entropy_pair: state is not in a fixed-m sector");

  BlockState blocks{TwiceSpin{0}, {}};
  for (int tma = -n_a; tma <= n_a; tma += 2) {
    const auto rows = detail::configs_with_m(n_a, tma);
    const auto cols = detail::configs_with_m(nb, twice_m - tma);
    if (rows.empty() || cols.empty()) continue;
    Eigen::MatrixXcd m(rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < cols.size(); ++c)
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            psi.amplitudes[static_cast<Eigen::Index>((rows[r] << nb) | cols[c])];
    Block blk{TwiceSpin{tma + n_a}, m.squaredNorm(), std::move(m)};
    if (blk.p < 1e-300) continue;
    blk.chi /= std::sqrt(blk.p);
    blocks.blocks.push_back(std::move(blk));
  }
  return {entropy_GA(blocks), entropy_KA(psi, n_a)};
}

}  // namespace symres
