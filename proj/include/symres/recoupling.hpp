#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "symres/numeric.hpp"
#include "symres/random_states.hpp"
#include "symres/su2_dims.hpp"
#include "symres/twice_spin.hpp"

namespace symres {

// State of N spin-1/2 particles in the product basis. Bit layout of the
// amplitude index: particle 1 is the most significant bit, bit value 0 is
// spin up (m = +1/2).
struct FullStateVector {
  int n = 0;
  Eigen::VectorXcd amplitudes;

  double norm() const { return amplitudes.norm(); }
};

// Clebsch-Gordan coefficient <k, m; 1/2, sigma | k_out, m+sigma> for adding
// one spin-1/2, Condon-Shortley phases. Arguments in doubled units; sigma is
// +1 or -1. The two-spin singlet comes out as (|ud> - |du>)/sqrt(2).
inline double cg_add_half(TwiceSpin k, int twice_m, int twice_sigma, TwiceSpin k_out) {
  const int tk = k.twice, tm = twice_m;
  if (twice_sigma != 1 && twice_sigma != -1)
    throw std::invalid_argument("cg_add_half: sigma must be +-1/2");
  if (std::abs(tm) > tk || (tm & 1) != (tk & 1))
    throw std::invalid_argument("cg_add_half: magnetization out of range");
  if (k_out.twice != tk + 1 && k_out.twice != tk - 1)
    throw std::invalid_argument("cg_add_half: k_out must be k +- 1/2");
  const double den = 2.0 * (tk + 1);
  if (k_out.twice == tk + 1) {
    return twice_sigma > 0 ? std::sqrt((tk + tm + 2) / den) : std::sqrt((tk - tm + 2) / den);
  }
  return twice_sigma > 0 ? -std::sqrt((tk - tm) / den) : std::sqrt((tk + tm) / den);
}

// Label of a recoupling basis vector |j, m; k_2, ..., k_{N-1}>, where k_r is
// the total spin of particles 1..r. The spin of the first particle alone is
// always 1/2 and is not stored, leaving N-2 free intermediate labels.
struct RecouplingLabel {
  TwiceSpin j;
  int twice_m = 0;
  std::vector<TwiceSpin> intermediates;

  int particle_count() const { return static_cast<int>(intermediates.size()) + 2; }

  // Full chain k_1..k_N of partial-sum spins, endpoints included.
  std::vector<TwiceSpin> chain() const {
    std::vector<TwiceSpin> c;
    c.reserve(intermediates.size() + 2);
    c.push_back(TwiceSpin{1});
    c.insert(c.end(), intermediates.begin(), intermediates.end());
    c.push_back(j);
    return c;
  }

  void validate() const {
    if (std::abs(twice_m) > j.twice || ((twice_m ^ j.twice) & 1))
      throw std::invalid_argument("recoupling label: m out of range for j");
    const auto c = chain();
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
      if (c[i].twice < 0 || std::abs(c[i + 1].twice - c[i].twice) != 1)
        throw std::invalid_argument("recoupling label: invalid intermediate chain");
    }
  }
};

// All coupling paths of `steps` spin-1/2 additions from spin `from` to spin
// `to`, endpoints included, in lexicographic order. The path count equals the
// corresponding intertwiner dimension.
inline std::vector<std::vector<TwiceSpin>> coupling_paths(TwiceSpin from, int steps, TwiceSpin to) {
  std::vector<std::vector<TwiceSpin>> out;
  std::vector<TwiceSpin> cur{from};
  auto descend = [&](auto&& self, TwiceSpin k, int left) -> void {
    if (std::abs(k.twice - to.twice) > left) return;  // unreachable
    if (left == 0) {
      if (k == to) out.push_back(cur);
      return;
    }
    for (int next : {k.twice - 1, k.twice + 1}) {
      if (next < 0) continue;
      cur.push_back(TwiceSpin{next});
      self(self, TwiceSpin{next}, left - 1);
      cur.pop_back();
    }
  };
  descend(descend, from, steps);
  return out;
}

// Product-basis amplitudes of a recoupling basis vector, built by dynamic
// programming over (prefix length, magnetization).
inline FullStateVector basis_vector(const RecouplingLabel& label) {
  label.validate();
  const int n = label.particle_count();
  if (n > 14) throw std::invalid_argument("basis_vector: N > 14 not supported");
  const auto chain = label.chain();

  // prefix amplitudes keyed by twice-magnetization
  std::map<int, Eigen::VectorXcd> cur;
  cur[1] = Eigen::VectorXcd::Zero(2);
  cur[1][0] = 1.0;
  cur[-1] = Eigen::VectorXcd::Zero(2);
  cur[-1][1] = 1.0;

  for (int r = 1; r < n; ++r) {
    const TwiceSpin k = chain[r - 1], k_next = chain[r];
    std::map<int, Eigen::VectorXcd> next;
    for (int tm = -k_next.twice; tm <= k_next.twice; tm += 2) {
      if (std::abs(label.twice_m - tm) > n - (r + 1)) continue;  // cannot reach target m
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << (r + 1));
      bool nonzero = false;
      for (int sigma : {+1, -1}) {
        const int tm_prev = tm - sigma;
        auto it = cur.find(tm_prev);
        if (it == cur.end()) continue;
        const double c = std::abs(tm_prev) <= k.twice
                             ? cg_add_half(k, tm_prev, sigma, k_next)
                             : 0.0;
        if (c == 0.0) continue;
        nonzero = true;
        const Eigen::Index bit = sigma > 0 ? 0 : 1;
        for (Eigen::Index x = 0; x < it->second.size(); ++x)
          v[x * 2 + bit] += c * it->second[x];
      }
      if (nonzero) next[tm] = std::move(v);
    }
    cur = std::move(next);
  }
  auto it = cur.find(label.twice_m);
  if (it == cur.end()) throw std::logic_error("basis_vector: empty construction");
  return {n, std::move(it->second)};
}

// Schmidt entropy of the bipartition (first N_A particles | rest).
inline double entropy_KA(const FullStateVector& psi, int n_a) {
  const int n = psi.n;
  if (n_a < 1 || n_a > n - 1) throw std::invalid_argument("entropy_KA: need 1 <= N_A <= N-1");
  const Eigen::Index rows = Eigen::Index{1} << n_a;
  const Eigen::Index cols = Eigen::Index{1} << (n - n_a);
  Eigen::Map<const Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      m(psi.amplitudes.data(), rows, cols);
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues();
  KahanSum acc;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] < 1e-15) continue;
    acc.add(-xlogx(sv[i] * sv[i]));
  }
  return acc.value();
}

// Particles listed in `order` (1-based original indices) become particles
// 1, 2, ... of the returned state.
inline FullStateVector reorder_particles(const FullStateVector& psi, const std::vector<int>& order) {
  const int n = psi.n;
  if (static_cast<int>(order.size()) != n)
    throw std::invalid_argument("reorder_particles: order must list all particles");
  FullStateVector out{n, Eigen::VectorXcd::Zero(psi.amplitudes.size())};
  for (Eigen::Index idx = 0; idx < psi.amplitudes.size(); ++idx) {
    Eigen::Index to = 0;
    for (int k = 0; k < n; ++k) {
      const int p = order[k];
      const Eigen::Index bit = (idx >> (n - p)) & 1;
      to |= bit << (n - 1 - k);
    }
    out.amplitudes[to] = psi.amplitudes[idx];
  }
  return out;
}

namespace detail {

struct BlockBasis {
  TwiceSpin l;
  std::vector<std::vector<TwiceSpin>> a_paths;  // chains k_1..k_{N_A}, ending at l
  std::vector<std::vector<TwiceSpin>> b_paths;  // chains k_{N_A}..k_N, from l to j
};

inline std::vector<BlockBasis> block_bases(int n, int n_a, TwiceSpin j) {
  std::vector<BlockBasis> out;
  for (int tl = n_a % 2; tl <= n_a; tl += 2) {
    BlockBasis bb{TwiceSpin{tl},
                  coupling_paths(TwiceSpin{1}, n_a - 1, TwiceSpin{tl}),
                  coupling_paths(TwiceSpin{tl}, n - n_a, j)};
    if (!bb.a_paths.empty() && !bb.b_paths.empty()) out.push_back(std::move(bb));
  }
  return out;
}

inline RecouplingLabel assemble_label(TwiceSpin j, int twice_m,
                                      const std::vector<TwiceSpin>& a_path,
                                      const std::vector<TwiceSpin>& b_path) {
  RecouplingLabel label{j, twice_m, {}};
  // chain = a_path (k_1..k_{N_A}) followed by b_path without its first entry;
  // stored intermediates drop k_1 and k_N.
  label.intermediates.assign(a_path.begin() + 1, a_path.end());
  label.intermediates.insert(label.intermediates.end(), b_path.begin() + 1, b_path.end());
  label.intermediates.pop_back();  // k_N = j lives in the label itself
  return label;
}

}  // namespace detail

// Embeds a symmetry-resolved block state into the 2^N product space:
//   sum_m xi_m sum_l sqrt(p_l) sum_{k_a,h_b} chi^(l)_{k_a h_b} |j,m;k_a,l,h_b>.
// The map is an isometry.
inline FullStateVector embed_block_state(const BlockState& state, const Eigen::VectorXcd& xi,
                                         int n, int n_a) {
  const TwiceSpin j = state.j;
  if (xi.size() != j.twice + 1) throw std::invalid_argument("embed_block_state: xi must have 2j+1 entries");
  const auto bases = detail::block_bases(n, n_a, j);
  if (bases.size() != state.blocks.size())
    throw std::invalid_argument("embed_block_state: block count does not match sector_dims");

  FullStateVector out{n, Eigen::VectorXcd::Zero(Eigen::Index{1} << n)};
  for (Eigen::Index mi = 0; mi < xi.size(); ++mi) {
    if (xi[mi] == std::complex<double>{}) continue;
    const int tm = -j.twice + 2 * static_cast<int>(mi);
    for (std::size_t bi = 0; bi < bases.size(); ++bi) {
      const auto& bb = bases[bi];
      const auto& blk = state.blocks[bi];
      if (blk.label != bb.l) throw std::invalid_argument("embed_block_state: sector labels disagree");
      if (blk.chi.rows() != static_cast<Eigen::Index>(bb.a_paths.size()) ||
          blk.chi.cols() != static_cast<Eigen::Index>(bb.b_paths.size()))
        throw std::invalid_argument("embed_block_state: chi shape does not match sector_dims");
      if (blk.p <= 0.0) continue;
      const double w = std::sqrt(blk.p);
      for (std::size_t a = 0; a < bb.a_paths.size(); ++a)
        for (std::size_t h = 0; h < bb.b_paths.size(); ++h) {
          const auto coeff = xi[mi] * w * blk.chi(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(h));
          if (coeff == std::complex<double>{}) continue;
          const auto v = basis_vector(detail::assemble_label(j, tm, bb.a_paths[a], bb.b_paths[h]));
          out.amplitudes += coeff * v.amplitudes;
        }
    }
  }
  return out;
}

// Projection of a fixed-(j,m) state onto the recoupling blocks of the first
// N_A particles. Throws if the state is not in a single (j,m) sector within
// the tolerance (projector residual 1e-10).
inline BlockState project_symmetry_resolved(const FullStateVector& psi, int n_a, TwiceSpin j,
                                            int* twice_m_out = nullptr) {
  const int n = psi.n;
  const auto bases = detail::block_bases(n, n_a, j);
  double best_w = -1.0;
  int best_tm = 0;
  std::vector<Eigen::MatrixXcd> best_c;
  for (int tm = -j.twice; tm <= j.twice; tm += 2) {
    std::vector<Eigen::MatrixXcd> c;
    double w = 0.0;
    for (const auto& bb : bases) {
      Eigen::MatrixXcd m(bb.a_paths.size(), bb.b_paths.size());
      for (std::size_t a = 0; a < bb.a_paths.size(); ++a)
        for (std::size_t h = 0; h < bb.b_paths.size(); ++h) {
          const auto v = basis_vector(detail::assemble_label(j, tm, bb.a_paths[a], bb.b_paths[h]));
          m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(h)) = v.amplitudes.dot(psi.amplitudes);
        }
      w += m.squaredNorm();
      c.push_back(std::move(m));
    }
    if (w > best_w) {
      best_w = w;
      best_tm = tm;
      best_c = std::move(c);
    }
  }
  // projector residual by explicit subtraction: computing it from the norm
  // difference would floor at sqrt(machine eps)
  Eigen::VectorXcd rem = psi.amplitudes;
  for (std::size_t bi = 0; bi < bases.size(); ++bi) {
    const auto& bb = bases[bi];
    for (std::size_t a = 0; a < bb.a_paths.size(); ++a)
      for (std::size_t h = 0; h < bb.b_paths.size(); ++h) {
        const auto v = basis_vector(detail::assemble_label(j, best_tm, bb.a_paths[a], bb.b_paths[h]));
        rem -= best_c[bi](static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(h)) * v.amplitudes;
      }
  }
  const double residual = rem.norm();
  if (residual > 1e-10)
    throw std::domain_error("state is not symmetry-resolved at the given (j, m): residual " +
                            std::to_string(residual));
  BlockState state{j, {}};
  for (std::size_t bi = 0; bi < bases.size(); ++bi) {
    Block blk{bases[bi].l, best_c[bi].squaredNorm(), std::move(best_c[bi])};
    if (blk.p < 1e-300) {
      blk.p = 0.0;
      blk.chi.setZero();
      blk.chi(0, 0) = 1.0;
    } else {
      blk.chi /= std::sqrt(blk.p);
    }
    state.blocks.push_back(std::move(blk));
  }
  if (twice_m_out) *twice_m_out = best_tm;
  return state;
}

// G-local entropy computed through the full product space; agrees with the
// block-native entropy_GA to 1e-10 for states produced by embed_block_state.
inline double entropy_GA_fullspace(const FullStateVector& psi, int n_a, TwiceSpin j) {
  return entropy_GA(project_symmetry_resolved(psi, n_a, j));
}

namespace detail {

inline Eigen::VectorXcd kron(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  Eigen::VectorXcd out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

inline Eigen::VectorXcd up2() { return Eigen::Vector2cd{1.0, 0.0}; }
inline Eigen::VectorXcd down2() { return Eigen::Vector2cd{0.0, 1.0}; }

inline Eigen::VectorXcd singlet4() {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  v[1] = 1.0 / std::sqrt(2.0);   // |ud>
  v[2] = -1.0 / std::sqrt(2.0);  // |du>
  return v;
}

inline Eigen::VectorXcd triplet4(int tm) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  if (tm == 2) v[0] = 1.0;
  else if (tm == -2) v[3] = 1.0;
  else if (tm == 0) v[1] = v[2] = 1.0 / std::sqrt(2.0);
  else throw std::invalid_argument("triplet magnetization must be -1, 0, +1");
  return v;
}

}  // namespace detail

// Named reference states of the small worked examples: the N=2 singlet and
// triplets, the N=4 scalar pair (psi0, psi1), the N=4 j=1 pair (eta1, eta2),
// and the N=6 j=1 orthonormal pair (psi1, psi2).
inline FullStateVector paper_example_state(std::string_view name) {
  using namespace detail;
  const auto s = singlet4();
  if (name == "singlet") return {2, s};
  if (name == "triplet+") return {2, triplet4(2)};
  if (name == "triplet0") return {2, triplet4(0)};
  if (name == "triplet-") return {2, triplet4(-2)};
  if (name == "psi0_N4") return {4, kron(s, s)};
  if (name == "psi1_N4") {
    // sum_m (-1)^(1-m)/sqrt(3) |t_{+m}> |t_{-m}>
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(16);
    const double c = 1.0 / std::sqrt(3.0);
    v += c * kron(triplet4(2), triplet4(-2));   // m=+1: (-1)^0
    v -= c * kron(triplet4(0), triplet4(0));    // m=0:  (-1)^1
    v += c * kron(triplet4(-2), triplet4(2));   // m=-1: (-1)^2
    return {4, v};
  }
  if (name == "eta1_N4") return {4, kron(s, triplet4(2))};
  if (name == "eta2_N4") {
    Eigen::VectorXcd v = (kron(triplet4(2), triplet4(0)) - kron(triplet4(0), triplet4(2))) / std::sqrt(2.0);
    return {4, v};
  }
  if (name == "psi1_N6") {
    // |s>_{12} |up>_3 |up>_4 |s>_{56}
    return {6, kron(kron(s, kron(up2(), up2())), s)};
  }
  if (name == "psi2_N6") {
    // (3/2 x 1/2 -> j=1, m=+1) coupling of the symmetric spin-3/2 of (1,2,3)
    // with the spin-1/2 of (4,5,6) carried by particle 4 over the (5,6) singlet
    Eigen::VectorXcd d32 = kron(kron(up2(), up2()), up2());  // |3/2, 3/2>
    Eigen::VectorXcd d12 = (kron(kron(up2(), up2()), down2()) + kron(kron(up2(), down2()), up2()) +
                            kron(kron(down2(), up2()), up2())) /
                           std::sqrt(3.0);                   // |3/2, 1/2>
    Eigen::VectorXcd b_plus = kron(up2(), s);
    Eigen::VectorXcd b_minus = kron(down2(), s);
    Eigen::VectorXcd v = std::sqrt(3.0) / 2.0 * kron(d32, b_minus) - 0.5 * kron(d12, b_plus);
    return {6, v};
  }
  throw std::invalid_argument("unknown example state: " + std::string(name));
}

}  // namespace symres
