#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "symres/bigint.hpp"
#include "symres/numeric.hpp"
#include "symres/twice_spin.hpp"

namespace symres {

// dim Inv(H^(j) x (H^(1/2))^xN), the number of independent singlet couplings
// of N spin-1/2 particles with one spin-j. Zero when N+2j is odd or j > N/2.
inline BigInt dim_invariant(int n, TwiceSpin j) {
  const int tj = j.twice;
  if (n < 0 || tj < 0) throw std::invalid_argument("dim_invariant: negative argument");
  if ((n + tj) % 2 != 0 || tj > n) return BigInt{0};
  // (2j+1)/(j+N/2+1) * C(N, N/2+j) = 2(tj+1)/(tj+N+2) * C(N, (N+tj)/2)
  BigInt r = binomial(n, (n + tj) / 2);
  r *= 2 * (tj + 1);
  r /= tj + n + 2;  // exact: ballot-number identity
  return r;
}

// dim Inv(H^(j) x H^(l) x (H^(1/2))^x(N-N_A)), the dimension of the complement
// factor at subsystem spin l. Out-of-range binomials vanish.
inline BigInt dim_complement(int n, int n_a, TwiceSpin j, TwiceSpin l) {
  if (n_a < 0 || n_a > n) throw std::invalid_argument("dim_complement: subsystem count out of range");
  const int nb = n - n_a;
  const int tj = j.twice, tl = l.twice;
  if (tj < 0 || tl < 0) throw std::invalid_argument("dim_complement: negative spin");
  if ((nb + tj + tl) % 2 != 0) return BigInt{0};
  const BigInt t1 = binomial(nb, (nb + tj - tl) / 2);
  const BigInt t2 = binomial(nb, (nb + tj + tl) / 2);
  // t1 - (nb-tj-tl)/(nb+tj+tl+2) * t2, always a non-negative integer
  mpq_class v(t1);
  v -= mpq_class(BigInt{nb - tj - tl} * t2, BigInt{nb + tj + tl + 2});
  v.canonicalize();
  if (v.get_den() != 1) throw std::logic_error("dim_complement: non-integer result");
  BigInt r = v.get_num();
  return r < 0 ? BigInt{0} : r;
}

struct Sector {
  TwiceSpin label;  // subsystem spin l
  BigInt d;         // dim of the subsystem factor
  BigInt b;         // dim of the complement factor
};

struct SectorDims {
  std::vector<Sector> sectors;  // labels strictly increasing, zero sectors pruned
  BigInt total;                 // sum of d*b over sectors
};

// Sector decomposition of the spin-j intertwiner space over the subsystem
// spin l of the first N_A particles.
inline SectorDims sector_dims(int n, int n_a, TwiceSpin j) {
  if (n_a < 1 || n_a > n - 1) throw std::invalid_argument("sector_dims: need 1 <= N_A <= N-1");
  const BigInt total = dim_invariant(n, j);
  if (total == 0) throw std::invalid_argument("sector_dims: empty sector (check parity of N+2j and j <= N/2)");
  SectorDims out;
  for (int tl = n_a % 2; tl <= n_a; tl += 2) {
    Sector s{TwiceSpin{tl}, dim_invariant(n_a, TwiceSpin{tl}), dim_complement(n, n_a, j, TwiceSpin{tl})};
    if (s.d > 0 && s.b > 0) out.sectors.push_back(std::move(s));
  }
  out.total = 0;
  for (const auto& s : out.sectors) out.total += s.d * s.b;
  if (out.total != total) throw std::logic_error("sector_dims: sum rule violated");
  return out;
}

// Independent oracle: exact count of coupling paths. Starting from spin j,
// couples each extra spin, then N sequential spin-1/2, and counts the
// multiplicity of total spin zero. Shares nothing with the closed forms.
inline BigInt dim_oracle_branching(int n, std::span<const TwiceSpin> extra_spins, TwiceSpin j) {
  if (n < 0 || n > 24) throw std::invalid_argument("dim_oracle_branching: N out of [0,24]");
  if (j.twice < 0) throw std::invalid_argument("dim_oracle_branching: negative spin");
  // multiplicity of each intermediate spin value, indexed by twice-spin
  std::vector<BigInt> mult(j.twice + 1, BigInt{0});
  mult[j.twice] = 1;
  auto couple = [](const std::vector<BigInt>& m, int ts) {
    const int hi = static_cast<int>(m.size()) - 1 + ts;
    std::vector<BigInt> next(hi + 1, BigInt{0});
    for (int tk = 0; tk < static_cast<int>(m.size()); ++tk) {
      if (m[tk] == 0) continue;
      for (int tn = std::abs(tk - ts); tn <= tk + ts; tn += 2) next[tn] += m[tk];
    }
    return next;
  };
  for (const auto& e : extra_spins) mult = couple(mult, e.twice);
  for (int i = 0; i < n; ++i) mult = couple(mult, 1);
  return mult.empty() ? BigInt{0} : mult[0];
}

inline BigInt dim_oracle_branching(int n, std::initializer_list<TwiceSpin> extra_spins, TwiceSpin j) {
  return dim_oracle_branching(n, std::span<const TwiceSpin>(extra_spins.begin(), extra_spins.size()), j);
}

// ---- log-domain variants (natural log of the exact dimension) ----
//
// For N beyond a few hundred the exact integers are wasteful; the asymptotics
// module works with these instead. Returns -inf for vanishing dimensions.

inline double log_binomial(int n, double k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

inline double log_dim_invariant(int n, TwiceSpin j) {
  const int tj = j.twice;
  if ((n + tj) % 2 != 0 || tj > n || tj < 0) return -std::numeric_limits<double>::infinity();
  return std::log(2.0 * (tj + 1)) - std::log(static_cast<double>(tj + n + 2)) +
         log_binomial(n, (n + tj) / 2.0);
}

inline double log_dim_complement(int n, int n_a, TwiceSpin j, TwiceSpin l) {
  const int nb = n - n_a;
  const int tj = j.twice, tl = l.twice;
  if ((nb + tj + tl) % 2 != 0) return -std::numeric_limits<double>::infinity();
  const double l1 = log_binomial(nb, (nb + tj - tl) / 2.0);
  const double l2 = log_binomial(nb, (nb + tj + tl) / 2.0);
  const int num = nb - tj - tl;  // sign decides whether the second term adds or subtracts
  const double inf = std::numeric_limits<double>::infinity();
  if (num == 0 || l2 == -inf) return l1;
  const double lt2 = std::log(std::abs(static_cast<double>(num))) -
                     std::log(static_cast<double>(nb + tj + tl + 2)) + l2;
  if (num < 0) return l1 == -inf ? lt2 : log_sum_exp(l1, lt2);
  if (l1 == -inf || lt2 >= l1) return -inf;  // dimension 0
  return log_diff_exp(l1, lt2);
}

}  // namespace symres
