#include <catch2/catch_amalgamated.hpp>
#include <Eigen/Dense>
#include <cmath>

#include "symres/random_states.hpp"

using namespace symres;

namespace {

void check_valid(const BlockState& st, const SectorDims& dims) {
  REQUIRE(st.blocks.size() == dims.sectors.size());
  double psum = 0.0;
  for (std::size_t i = 0; i < st.blocks.size(); ++i) {
    const auto& blk = st.blocks[i];
    CHECK(blk.label == dims.sectors[i].label);
    CHECK(blk.chi.rows() == static_cast<Eigen::Index>(to_uint64(dims.sectors[i].d)));
    CHECK(blk.chi.cols() == static_cast<Eigen::Index>(to_uint64(dims.sectors[i].b)));
    if (blk.p > 0.0) CHECK(blk.chi.norm() == Catch::Approx(1.0).margin(1e-12));
    psum += blk.p;
  }
  CHECK(psum == Catch::Approx(1.0).margin(1e-12));
}

Eigen::MatrixXcd random_unitary(Eigen::Index n, RandomStream& rng) {
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = rng.gaussian();
  return Eigen::HouseholderQR<Eigen::MatrixXcd>(g).householderQ();
}

}  // namespace

TEST_CASE("sampling produces valid normalized block states") {
  const SectorDims dims = sector_dims(6, 3, TwiceSpin{2});
  SeededSampler sampler{7, 0};
  for (int i = 0; i < 20; ++i) check_valid(sample_block_state(dims, sampler), dims);
  CHECK(sampler.sample_counter == 20);
}

TEST_CASE("single one-dimensional sector gives a pure phase") {
  const SectorDims dims = sector_dims(4, 1, TwiceSpin{4});
  SeededSampler sampler{3, 0};
  const BlockState st = sample_block_state(dims, sampler);
  REQUIRE(st.blocks.size() == 1);
  CHECK(st.blocks[0].p == Catch::Approx(1.0).margin(1e-14));
  CHECK(std::abs(st.blocks[0].chi(0, 0)) == Catch::Approx(1.0).margin(1e-14));
  CHECK(entropy_GA(st) == Catch::Approx(0.0).margin(1e-14));
}

TEST_CASE("fixed seed reproduces the state exactly") {
  const SectorDims dims = sector_dims(6, 3, TwiceSpin{2});
  SeededSampler a{42, 0}, b{42, 0};
  const BlockState sa = sample_block_state(dims, a);
  const BlockState sb = sample_block_state(dims, b);
  for (std::size_t i = 0; i < sa.blocks.size(); ++i) {
    CHECK(sa.blocks[i].p == sb.blocks[i].p);
    CHECK((sa.blocks[i].chi - sb.blocks[i].chi).norm() == 0.0);
  }
}

TEST_CASE("mean sector weights approach d b / D") {
  const SectorDims dims = sector_dims(6, 3, TwiceSpin{2});
  SeededSampler sampler{11, 0};
  const int n = 20000;
  std::vector<double> mean(dims.sectors.size(), 0.0);
  for (int i = 0; i < n; ++i) {
    const BlockState st = sample_block_state(dims, sampler);
    for (std::size_t k = 0; k < st.blocks.size(); ++k) mean[k] += st.blocks[k].p / n;
  }
  for (std::size_t k = 0; k < dims.sectors.size(); ++k) {
    const double expect = sector_weight(dims.sectors[k].d, dims.sectors[k].b, dims.total);
    // p_l is Beta(db, D-db): var = p(1-p)/(D+1)
    const double sigma = std::sqrt(expect * (1 - expect) / (to_double(dims.total) + 1.0) / n);
    CHECK(std::abs(mean[k] - expect) <= 4.0 * sigma);
  }
}

TEST_CASE("entropy decomposition: parts are non-negative and sum to the total") {
  const SectorDims dims = sector_dims(6, 3, TwiceSpin{2});
  SeededSampler sampler{5, 0};
  for (int i = 0; i < 50; ++i) {
    const BlockState st = sample_block_state(dims, sampler);
    const EntropySplit split = entropy_decomposition(st);
    CHECK(split.configurational >= 0.0);
    CHECK(split.number >= 0.0);
    CHECK(split.total() == Catch::Approx(entropy_GA(st)).margin(1e-12));
  }
}

TEST_CASE("rank-1 blocks carry only number entropy") {
  SectorDims dims;
  dims.sectors = {{TwiceSpin{0}, BigInt{1}, BigInt{1}}, {TwiceSpin{2}, BigInt{1}, BigInt{1}}};
  dims.total = 2;
  BlockState st{TwiceSpin{0}, {}};
  const double p = 0.3;
  st.blocks.push_back({TwiceSpin{0}, 1.0 - p, Eigen::MatrixXcd::Ones(1, 1)});
  st.blocks.push_back({TwiceSpin{2}, p, Eigen::MatrixXcd::Ones(1, 1)});
  const EntropySplit split = entropy_decomposition(st);
  CHECK(split.configurational == Catch::Approx(0.0).margin(1e-14));
  CHECK(split.number == Catch::Approx(-p * std::log(p) - (1 - p) * std::log(1 - p)).margin(1e-13));
}

TEST_CASE("maximally entangled state attains the entropy maximum") {
  for (auto [n, n_a, tj] : {std::tuple{6, 3, 2}, {4, 2, 0}, {8, 3, 4}, {6, 2, 6}}) {
    const SectorDims dims = sector_dims(n, n_a, TwiceSpin{tj});
    const BlockState st = max_entangled_state(dims);
    check_valid(st, dims);
    CHECK(entropy_GA(st) == Catch::Approx(max_entropy(dims)).margin(1e-12));
  }
}

TEST_CASE("entropy is invariant under unitary rotations of a block") {
  const SectorDims dims = sector_dims(6, 3, TwiceSpin{2});
  SeededSampler sampler{19, 0};
  RandomStream rot = sampler.stream(777);
  BlockState st = sample_block_state(dims, sampler);
  const double ref = entropy_GA(st);
  for (auto& blk : st.blocks) {
    blk.chi = random_unitary(blk.chi.rows(), rot) * blk.chi * random_unitary(blk.chi.cols(), rot);
  }
  CHECK(entropy_GA(st) == Catch::Approx(ref).margin(1e-10));
}

TEST_CASE("sampled entropies never exceed the maximum") {
  const SectorDims dims = sector_dims(8, 3, TwiceSpin{2});
  const double cap = max_entropy(dims);
  SeededSampler sampler{23, 0};
  for (int i = 0; i < 200; ++i)
    CHECK(entropy_GA(sample_block_state(dims, sampler)) <= cap + 1e-12);
}

TEST_CASE("empirical statistics agree with the exact formulas") {
  const SectorDims dims = sector_dims(6, 3, TwiceSpin{2});
  SeededSampler sampler{42, 0};
  const SampleStats st = empirical_stats(dims, 20000, sampler);
  const double exact_mean = average_entropy(dims);
  const double exact_var = variance_entropy(dims);
  const double se = std::sqrt(st.stats.variance / 20000.0);
  CHECK(std::abs(st.stats.mean - exact_mean) <= 3.0 * se);
  CHECK(std::abs(st.stats.variance - exact_var) <= 0.1 * exact_var);
  std::uint64_t total = 0;
  for (auto c : st.histogram.counts) total += c;
  CHECK(total == 20000);
}

TEST_CASE("empirical statistics are identical for any worker count") {
  const SectorDims dims = sector_dims(6, 3, TwiceSpin{2});
  SeededSampler s1{42, 0}, s8{42, 0};
  const SampleStats a = empirical_stats(dims, 5000, s1, {60, 1});
  const SampleStats b = empirical_stats(dims, 5000, s8, {60, 8});
  CHECK(a.stats.mean == b.stats.mean);
  CHECK(a.stats.variance == b.stats.variance);
  CHECK(a.histogram.counts == b.histogram.counts);
  CHECK(s1.sample_counter == s8.sample_counter);
}

TEST_CASE("degenerate decomposition gives a point histogram at zero") {
  SectorDims dims;
  dims.sectors = {{TwiceSpin{0}, BigInt{1}, BigInt{1}}};
  dims.total = 1;
  SeededSampler sampler{1, 0};
  const SampleStats st = empirical_stats(dims, 100, sampler);
  CHECK(st.stats.mean == 0.0);  // exact: rank-1 block with p = 1
  CHECK(st.stats.variance == 0.0);
  CHECK(st.histogram.counts[0] == 100);
}
