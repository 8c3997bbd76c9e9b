#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "symres/special_fn.hpp"

using namespace symres;

TEST_CASE("digamma at small shifted integers") {
  // Psi(n+1) = -gamma + H_n
  CHECK(digamma_shifted(std::uint64_t{0}) == Catch::Approx(-euler_gamma).epsilon(1e-14));
  CHECK(digamma_shifted(std::uint64_t{1}) == Catch::Approx(1.0 - euler_gamma).epsilon(1e-14));
  CHECK(digamma_shifted(std::uint64_t{4}) == Catch::Approx(25.0 / 12.0 - euler_gamma).epsilon(1e-14));
}

TEST_CASE("trigamma at small shifted integers") {
  CHECK(trigamma_shifted(std::uint64_t{0}) == Catch::Approx(pi_sq_over_6).epsilon(1e-14));
  CHECK(trigamma_shifted(std::uint64_t{1}) == Catch::Approx(pi_sq_over_6 - 1.0).epsilon(1e-14));
  CHECK(trigamma_shifted(std::uint64_t{2}) == Catch::Approx(pi_sq_over_6 - 1.25).epsilon(1e-14));
}

TEST_CASE("recurrence Psi(n+2) - Psi(n+1) = 1/(n+1)") {
  for (std::uint64_t n : {0ULL, 1ULL, 7ULL, 100ULL, 99999ULL, 999999ULL, 10000000ULL}) {
    const double lhs = digamma_shifted(n + 1) - digamma_shifted(n);
    CHECK(lhs == Catch::Approx(1.0 / static_cast<double>(n + 1)).margin(1e-13));
  }
}

TEST_CASE("exact summation and asymptotic series agree in the overlap window") {
  for (std::uint64_t n : {100000ULL, 300000ULL, 999999ULL}) {
    const double exact_d = digamma_shifted(n);
    const double series_d = detail::digamma_series_from_log(std::log(static_cast<double>(n)));
    CHECK(series_d == Catch::Approx(exact_d).epsilon(1e-12));
    // pi^2/6 - sum cancellation caps the summed trigamma at ~1e-16 absolute
    const double exact_t = trigamma_shifted(n);
    const double series_t = detail::trigamma_series_from_log(std::log(static_cast<double>(n)));
    CHECK(series_t == Catch::Approx(exact_t).margin(5e-16));
  }
}

TEST_CASE("log-dimension arguments agree with integer arguments") {
  for (std::uint64_t n : {5ULL, 1000ULL, 123456ULL}) {
    const LogDimension ld{std::log(static_cast<double>(n))};
    CHECK(digamma_shifted(ld) == Catch::Approx(digamma_shifted(n)).epsilon(1e-13));
    CHECK(trigamma_shifted(ld) == Catch::Approx(trigamma_shifted(n)).epsilon(1e-13));
  }
  // astronomically large arguments: Psi(x+1) ~ log x
  const LogDimension huge{2772.5};
  CHECK(digamma_shifted(huge) == Catch::Approx(2772.5).epsilon(1e-14));
  CHECK(trigamma_shifted(huge) == Catch::Approx(0.0).margin(1e-300));
  CHECK_THROWS_AS(digamma_shifted(LogDimension{-0.5}), std::domain_error);
  CHECK_THROWS_AS(trigamma_shifted(LogDimension{-0.5}), std::domain_error);
}

TEST_CASE("digamma sandwich log(x)+1/(2x+1) < Psi(x+1) < log(x)+1/(2x)") {
  for (int k = 0; k < 1000; ++k) {
    const auto x = static_cast<std::uint64_t>(std::llround(std::pow(10.0, 6.0 * k / 999.0)));
    const double lx = std::log(static_cast<double>(x));
    const double psi = digamma_shifted(x);
    CHECK(psi > lx + 1.0 / (2.0 * static_cast<double>(x) + 1.0));
    CHECK(psi < lx + 1.0 / (2.0 * static_cast<double>(x)));
  }
}

// The printed companion bound 1/x - 1/(2x^2+1) < Psi'(x+1) < 1/x - 1/(2x^2)
// is false (the upper side fails for every x, the lower side at x=1); the
// alternating-tail sandwich below is the provable version. The slack term
// covers the ~1e-16 absolute cancellation in the summed value, which exceeds
// the sandwich width beyond x ~ 100.
TEST_CASE("trigamma sandwich from the alternating series tail") {
  const double slack = 2e-15;
  for (int k = 0; k < 1000; ++k) {
    const auto xi = static_cast<std::uint64_t>(std::llround(std::pow(10.0, 6.0 * k / 999.0)));
    const double x = static_cast<double>(xi);
    const double t = trigamma_shifted(xi);
    const double base = 1.0 / x - 1.0 / (2.0 * x * x) + 1.0 / (6.0 * x * x * x);
    CHECK(t < base + slack);
    CHECK(t > base - 1.0 / (30.0 * x * x * x * x * x) - slack);
  }
}

TEST_CASE("counterexample to the printed trigamma bound") {
  // Psi'(2) = pi^2/6 - 1 = 0.6449... lies below 1/1 - 1/(2+1) = 2/3.
  CHECK(trigamma_shifted(std::uint64_t{1}) < 1.0 - 1.0 / 3.0);
}
