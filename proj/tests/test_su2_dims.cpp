#include <catch2/catch_amalgamated.hpp>

#include "symres/su2_dims.hpp"

using namespace symres;

TEST_CASE("dim_invariant reference values") {
  CHECK(dim_invariant(6, TwiceSpin{2}) == 9);
  CHECK(dim_invariant(4, TwiceSpin{0}) == 2);
  CHECK(dim_invariant(8, TwiceSpin{8}) == 1);
  CHECK(dim_invariant(5, TwiceSpin{2}) == 0);  // N+2j odd
  CHECK(dim_invariant(0, TwiceSpin{0}) == 1);
  CHECK(dim_invariant(2, TwiceSpin{4}) == 0);  // j > N/2
}

TEST_CASE("dim_complement reference values and reductions") {
  // brute-force coupling-path counts for N=6, N_A=3, j=1
  CHECK(dim_complement(6, 3, TwiceSpin{2}, TwiceSpin{1}) == 3);
  CHECK(dim_complement(6, 3, TwiceSpin{2}, TwiceSpin{3}) == 3);
  // j=0 reduction to dim_invariant on the complement
  for (int n = 2; n <= 10; ++n)
    for (int n_a = 0; n_a <= n; ++n_a)
      for (int tl = 0; tl <= n_a + 2; ++tl)
        CHECK(dim_complement(n, n_a, TwiceSpin{0}, TwiceSpin{tl}) ==
              dim_invariant(n - n_a, TwiceSpin{tl}));
  // l=0 reduction
  for (int n = 2; n <= 10; ++n)
    for (int n_a = 0; n_a <= n; ++n_a)
      for (int tj = 0; tj <= n; ++tj)
        CHECK(dim_complement(n, n_a, TwiceSpin{tj}, TwiceSpin{0}) ==
              dim_invariant(n - n_a, TwiceSpin{tj}));
}

TEST_CASE("completeness: sum over j of (2j+1) D_j = 2^N") {
  for (int n = 0; n <= 20; ++n) {
    BigInt total = 0;
    for (int tj = n % 2; tj <= n; tj += 2) total += (tj + 1) * dim_invariant(n, TwiceSpin{tj});
    CHECK(total == pow2(static_cast<unsigned long>(n)));
  }
}

TEST_CASE("consistency: sector dimensions sum to D_j") {
  for (int n = 2; n <= 16; ++n)
    for (int tj = n % 2; tj <= n; tj += 2) {
      if (dim_invariant(n, TwiceSpin{tj}) == 0) continue;
      for (int n_a = 1; n_a < n; ++n_a) {
        const SectorDims dims = sector_dims(n, n_a, TwiceSpin{tj});
        CHECK(dims.total == dim_invariant(n, TwiceSpin{tj}));
      }
    }
}

TEST_CASE("sector_dims reference decompositions") {
  const SectorDims dims = sector_dims(6, 3, TwiceSpin{2});
  REQUIRE(dims.sectors.size() == 2);
  CHECK(dims.sectors[0].label.twice == 1);
  CHECK(dims.sectors[0].d == 2);
  CHECK(dims.sectors[0].b == 3);
  CHECK(dims.sectors[1].label.twice == 3);
  CHECK(dims.sectors[1].d == 1);
  CHECK(dims.sectors[1].b == 3);
  CHECK(dims.total == 9);

  // N_A = 1: single trivial subsystem sector
  for (int tj = 0; tj <= 10; tj += 2) {
    if (dim_invariant(10, TwiceSpin{tj}) == 0) continue;
    const SectorDims one = sector_dims(10, 1, TwiceSpin{tj});
    REQUIRE(one.sectors.size() == 1);
    CHECK(one.sectors[0].label.twice == 1);
    CHECK(one.sectors[0].d == 1);
    CHECK(one.sectors[0].b == one.total);
  }

  // j = N/2: a single one-dimensional sector
  const SectorDims top = sector_dims(8, 3, TwiceSpin{8});
  REQUIRE(top.sectors.size() == 1);
  CHECK(top.sectors[0].label.twice == 3);
  CHECK(top.sectors[0].d == 1);
  CHECK(top.sectors[0].b == 1);

  CHECK_THROWS_AS(sector_dims(5, 2, TwiceSpin{2}), std::invalid_argument);  // parity
  CHECK_THROWS_AS(sector_dims(6, 0, TwiceSpin{2}), std::invalid_argument);
}

TEST_CASE("branching oracle reference values") {
  CHECK(dim_oracle_branching(6, {}, TwiceSpin{2}) == 9);
  CHECK(dim_oracle_branching(3, {TwiceSpin{2}, TwiceSpin{1}}, TwiceSpin{0}) == 3);
  CHECK(dim_oracle_branching(2, {}, TwiceSpin{0}) == 1);
  CHECK_THROWS_AS(dim_oracle_branching(25, {}, TwiceSpin{0}), std::invalid_argument);
}

TEST_CASE("oracle equivalence of both closed forms") {
  for (int n = 0; n <= 12; ++n) {
    for (int tj = 0; tj <= n; ++tj)
      CHECK(dim_invariant(n, TwiceSpin{tj}) == dim_oracle_branching(n, {}, TwiceSpin{tj}));
    for (int n_a = 0; n_a <= n; ++n_a)
      for (int tj = 0; tj <= n; ++tj)
        for (int tl = 0; tl <= n_a; ++tl)
          CHECK(dim_complement(n, n_a, TwiceSpin{tj}, TwiceSpin{tl}) ==
                dim_oracle_branching(n - n_a, {TwiceSpin{tj}, TwiceSpin{tl}}, TwiceSpin{0}));
  }
}

TEST_CASE("j=0 exchange symmetry of sector dimensions") {
  for (int n = 4; n <= 12; n += 2)
    for (int n_a = 1; n_a < n; ++n_a) {
      const SectorDims a = sector_dims(n, n_a, TwiceSpin{0});
      const SectorDims b = sector_dims(n, n - n_a, TwiceSpin{0});
      REQUIRE(a.sectors.size() == b.sectors.size());
      for (std::size_t i = 0; i < a.sectors.size(); ++i) {
        CHECK(a.sectors[i].label == b.sectors[i].label);
        CHECK(a.sectors[i].d == b.sectors[i].b);
        CHECK(a.sectors[i].b == b.sectors[i].d);
      }
    }
}

TEST_CASE("log-domain dimensions track the exact ones") {
  for (int n = 2; n <= 14; ++n)
    for (int n_a = 1; n_a < n; ++n_a)
      for (int tj = n % 2; tj <= n; tj += 2) {
        const double ld = log_dim_invariant(n, TwiceSpin{tj});
        const BigInt exact = dim_invariant(n, TwiceSpin{tj});
        if (exact == 0) {
          CHECK(std::isinf(ld));
        } else {
          CHECK(ld == Catch::Approx(log_of(exact)).margin(1e-11));
        }
        for (int tl = n_a % 2; tl <= n_a; tl += 2) {
          const double lb = log_dim_complement(n, n_a, TwiceSpin{tj}, TwiceSpin{tl});
          const BigInt eb = dim_complement(n, n_a, TwiceSpin{tj}, TwiceSpin{tl});
          if (eb == 0) {
            CHECK(std::isinf(lb));
          } else {
            CHECK(lb == Catch::Approx(log_of(eb)).margin(1e-11));
          }
        }
      }
  // large-N spot checks against exact integers
  CHECK(log_dim_invariant(400, TwiceSpin{100}) ==
        Catch::Approx(log_of(dim_invariant(400, TwiceSpin{100}))).margin(1e-9));
  CHECK(log_dim_complement(400, 100, TwiceSpin{100}, TwiceSpin{40}) ==
        Catch::Approx(log_of(dim_complement(400, 100, TwiceSpin{100}, TwiceSpin{40}))).margin(1e-9));
}
