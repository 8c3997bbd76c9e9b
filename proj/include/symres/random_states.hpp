#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "symres/numeric.hpp"
#include "symres/su2_dims.hpp"
#include "symres/typical_entropy.hpp"
#include "symres/twice_spin.hpp"

namespace symres {

// Counter-based random stream: every sample index gets its own generator
// state derived from (master seed, index), so aggregates are reproducible
// for any degree of parallelism. xoshiro256++ seeded through splitmix64.
class RandomStream {
 public:
  RandomStream(std::uint64_t master_seed, std::uint64_t stream_index) {
    std::uint64_t x = master_seed ^ (stream_index * 0x9E3779B97F4A7C15ULL + 0x2545F4914F6CDD1DULL);
    for (auto& w : s_) w = splitmix(x);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // uniform in (0, 1]
  double uniform() { return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1p-53; }

  // standard complex Gaussian: independent N(0,1) real and imaginary parts
  std::complex<double> gaussian() {
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double t = 6.283185307179586476925286766559 * uniform();
    return {r * std::cos(t), r * std::sin(t)};
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  static std::uint64_t splitmix(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  std::uint64_t s_[4];
};

struct SeededSampler {
  std::uint64_t master_seed = 0;
  std::uint64_t sample_counter = 0;

  RandomStream stream(std::uint64_t index) const { return {master_seed, index}; }
  RandomStream next_stream() { return stream(sample_counter++); }
};

// Symmetry-resolved random state in block form: per-sector probability and a
// unit-Frobenius-norm coefficient matrix chi (rows index the subsystem).
struct Block {
  TwiceSpin label;
  double p = 0.0;
  Eigen::MatrixXcd chi;
};

struct BlockState {
  TwiceSpin j;
  std::vector<Block> blocks;
};

namespace detail {

inline std::size_t checked_size(const BigInt& n) {
  if (!fits_uint64(n) || to_uint64(n) > 50'000'000ULL)
    throw std::invalid_argument("sector dimensions too large to sample explicitly");
  return static_cast<std::size_t>(to_uint64(n));
}

}  // namespace detail

// Haar-uniform unit vector on the invariant space, split into sector blocks.
// Blocks that draw essentially no weight keep p = 0 with a placeholder chi.
inline BlockState sample_block_state(const SectorDims& dims, SeededSampler& sampler,
                                     TwiceSpin j = TwiceSpin{0}) {
  RandomStream rng = sampler.next_stream();
  BlockState state{j, {}};
  std::vector<double> block_norm2;
  double norm2 = 0.0;
  for (const auto& s : dims.sectors) {
    const auto d = detail::checked_size(s.d);
    const auto b = detail::checked_size(s.b);
    Block blk{s.label, 0.0, Eigen::MatrixXcd(d, b)};
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < b; ++c) blk.chi(r, c) = rng.gaussian();
    block_norm2.push_back(blk.chi.squaredNorm());
    norm2 += block_norm2.back();
    state.blocks.push_back(std::move(blk));
  }
  for (std::size_t i = 0; i < state.blocks.size(); ++i) {
    auto& blk = state.blocks[i];
    const double w = block_norm2[i] / norm2;  // a lone block gets exactly 1
    if (w < 1e-300) {
      blk.p = 0.0;
      blk.chi.setZero();
      blk.chi(0, 0) = 1.0;
    } else {
      blk.p = w;
      blk.chi /= std::sqrt(block_norm2[i]);
    }
  }
  return state;
}

// The maximally entangled state |I>: p_l proportional to min(d,b), chi
// diagonal with entries 1/sqrt(min(d,b)).
inline BlockState max_entangled_state(const SectorDims& dims, TwiceSpin j = TwiceSpin{0}) {
  BigInt total = 0;
  for (const auto& s : dims.sectors) total += s.d <= s.b ? s.d : s.b;
  BlockState state{j, {}};
  for (const auto& s : dims.sectors) {
    const auto d = detail::checked_size(s.d);
    const auto b = detail::checked_size(s.b);
    const std::size_t mn = d <= b ? d : b;
    Block blk{s.label, static_cast<double>(mn) / to_double(total), Eigen::MatrixXcd::Zero(d, b)};
    const double amp = 1.0 / std::sqrt(static_cast<double>(mn));
    for (std::size_t i = 0; i < mn; ++i) blk.chi(i, i) = amp;
    state.blocks.push_back(std::move(blk));
  }
  return state;
}

namespace detail {

inline double block_schmidt_entropy(const Eigen::MatrixXcd& chi) {
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(chi).singularValues();
  // chi has unit Frobenius norm; renormalizing the Schmidt spectrum by its
  // computed sum keeps rank-1 blocks at exactly zero entropy
  double total = 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] < 1e-15) continue;  // exact zeros for 0 log 0 continuity
    total += sv[i] * sv[i];
  }
  if (total <= 0.0) return 0.0;
  KahanSum acc;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] < 1e-15) continue;
    acc.add(-xlogx(sv[i] * sv[i] / total));
  }
  return acc.value();
}

}  // namespace detail

// Configurational and number parts of the G-local entropy, Eq. of the
// two-term decomposition: intra-sector entanglement plus sector Shannon.
struct EntropySplit {
  double configurational = 0.0;
  double number = 0.0;
  double total() const { return configurational + number; }
};

inline EntropySplit entropy_decomposition(const BlockState& state) {
  EntropySplit out;
  KahanSum conf, num;
  for (const auto& blk : state.blocks) {
    if (blk.p <= 0.0) continue;
    conf.add(blk.p * detail::block_schmidt_entropy(blk.chi));
    num.add(-xlogx(blk.p));
  }
  out.configurational = conf.value();
  out.number = num.value();
  return out;
}

// S_GA = -sum_l p_l tr(rho_l log rho_l) - sum_l p_l log p_l, with the Schmidt
// spectrum read off the singular values of each chi block.
inline double entropy_GA(const BlockState& state) { return entropy_decomposition(state).total(); }

struct Histogram {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::uint64_t> counts;

  double bin_left(std::size_t k) const {
    return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(counts.size());
  }
  double bin_right(std::size_t k) const {
    return lo + (hi - lo) * static_cast<double>(k + 1) / static_cast<double>(counts.size());
  }
};

struct SampleStats {
  EntropyStats stats;
  Histogram histogram;
  std::uint64_t n_samples = 0;
};

struct EmpiricalOptions {
  int bins = 60;  // matches the granularity of the reference distribution plots
  int threads = 1;
};

// Sample mean/variance of S_GA over independent draws plus a histogram over
// [0, S_max]. Entropies land in a per-index buffer and are reduced in index
// order, so the result is identical for any worker count.
inline SampleStats empirical_stats(const SectorDims& dims, std::uint64_t n_samples,
                                   SeededSampler& sampler, EmpiricalOptions opts = {}) {
  if (n_samples < 1) throw std::invalid_argument("empirical_stats: need at least one sample");
  if (opts.bins < 1 || opts.threads < 1) throw std::invalid_argument("empirical_stats: bad options");
  std::vector<double> entropies(n_samples);
  const std::uint64_t base = sampler.sample_counter;
  const SeededSampler snapshot = sampler;

  auto worker = [&](std::uint64_t first, std::uint64_t last) {
    for (std::uint64_t i = first; i < last; ++i) {
      SeededSampler local = snapshot;
      local.sample_counter = base + i;
      entropies[i] = entropy_GA(sample_block_state(dims, local));
    }
  };
  if (opts.threads == 1) {
    worker(0, n_samples);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (n_samples + opts.threads - 1) / opts.threads;
    for (int t = 0; t < opts.threads; ++t) {
      const std::uint64_t first = t * chunk;
      const std::uint64_t last = std::min<std::uint64_t>(first + chunk, n_samples);
      if (first >= last) break;
      pool.emplace_back(worker, first, last);
    }
    for (auto& th : pool) th.join();
  }
  sampler.sample_counter = base + n_samples;

  KahanSum sum;
  for (double e : entropies) sum.add(e);
  const double mean = sum.value() / static_cast<double>(n_samples);
  KahanSum sq;
  for (double e : entropies) sq.add((e - mean) * (e - mean));
  const double var = n_samples > 1 ? sq.value() / static_cast<double>(n_samples - 1) : 0.0;

  SampleStats out;
  out.n_samples = n_samples;
  out.stats = {mean, var};
  out.histogram.lo = 0.0;
  out.histogram.hi = max_entropy(dims);
  out.histogram.counts.assign(static_cast<std::size_t>(opts.bins), 0);
  const double width = out.histogram.hi - out.histogram.lo;
  for (double e : entropies) {
    std::size_t k = 0;
    if (width > 0.0) {
      const auto raw = static_cast<long long>((e - out.histogram.lo) / width * opts.bins);
      k = static_cast<std::size_t>(std::clamp<long long>(raw, 0, opts.bins - 1));
    }
    ++out.histogram.counts[k];
  }
  return out;
}

// CSV columns: bin_left,bin_right,count
inline void write_histogram_csv(std::ostream& os, const Histogram& h) {
  os << "bin_left,bin_right,count\n";
  char buf[96];
  for (std::size_t k = 0; k < h.counts.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%llu\n", h.bin_left(k), h.bin_right(k),
                  static_cast<unsigned long long>(h.counts[k]));
    os << buf;
  }
}

}  // namespace symres
