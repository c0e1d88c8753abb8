#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qtv/qkernel.hpp"

using namespace qtv::qkernel;

TEST_CASE("context fields for small r") {
  auto c5 = make_context(5);
  CHECK(c5.m == 2);
  CHECK(c5.n_r == 2);
  auto c7 = make_context(7);
  CHECK(c7.m == 3);
  CHECK(c7.n_r == 2);
  CHECK(std::abs(c7.A * c7.A - c7.q) < 1e-15);
  CHECK(std::abs(std::pow(c7.A, 14) - 1.0) < 1e-12);
  CHECK_THROWS_AS(make_context(4), ContextError);
  CHECK_THROWS_AS(make_context(1), ContextError);
  CHECK_THROWS_WITH_AS(make_context(8), doctest::Contains("NotOddOrTooSmall"), ContextError);
}

TEST_CASE("n_r is even and makes (n_r, n_r, n_r) admissible") {
  for (int r = 3; r <= 501; r += 2) {
    auto ctx = make_context(r);
    CHECK(ctx.n_r % 2 == 0);
    CHECK(ctx.n_r == (r % 4 == 1 ? (r - 1) / 2 : (r - 3) / 2));
    if (r >= 5) CHECK(is_admissible_triple(ctx, ctx.n_r, ctx.n_r, ctx.n_r));
  }
}

TEST_CASE("quantum integers against the complex-power definition") {
  CHECK(quantum_int(make_context(5), 1) == doctest::Approx(1.0));
  CHECK(quantum_int(make_context(9), 0) == 0.0);
  CHECK(quantum_int(make_context(5), 2) == doctest::Approx(2 * std::cos(2 * std::numbers::pi / 5)));
  for (int r : {5, 7, 13, 31, 101}) {
    auto ctx = make_context(r);
    for (int n = 1; n <= r - 2; ++n) {
      double want = oracle::qint(r, n);
      CHECK(quantum_int(ctx, n) != 0.0);
      CHECK(std::abs(quantum_int(ctx, n) - want) <= 1e-12 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST_CASE("argument reduction is exact for large multiples") {
  CHECK(sin_pi_ratio(0, 7) == 0.0);
  CHECK(sin_pi_ratio(14, 7) == 0.0);
  CHECK(sin_pi_ratio(2 * 1000003 * 7 + 1, 7) == doctest::Approx(std::sin(std::numbers::pi / 7)));
  CHECK(sin_pi_ratio(-3, 7) == doctest::Approx(-std::sin(3 * std::numbers::pi / 7)));
}

TEST_CASE("quantum factorials") {
  auto ctx = make_context(7);
  CHECK(quantum_factorial(ctx, 0).sign == 1);
  CHECK(quantum_factorial(ctx, 0).logmag == 0.0);
  CHECK(quantum_factorial(ctx, 1).logmag == doctest::Approx(0.0));
  double prod = 1;
  for (int k = 1; k <= 4; ++k) prod *= std::sin(2 * std::numbers::pi * k / 7) / std::sin(2 * std::numbers::pi / 7);
  auto f4 = quantum_factorial(ctx, 4);
  CHECK(f4.sign == -1);
  CHECK(f4.to_double() == doctest::Approx(prod));
  CHECK_THROWS_AS(quantum_factorial(ctx, 7), RangeError);
  CHECK_THROWS_AS(quantum_factorial(ctx, -1), RangeError);
  for (int r : {11, 29}) {
    auto c = make_context(r);
    for (int n = 0; n <= r - 2; ++n)
      CHECK(std::abs(quantum_factorial(c, n).to_double() / oracle::qfact(r, n) - 1) < 1e-11);
  }
}

TEST_CASE("double-double factorial table agrees with double") {
  auto a = make_context(201), b = make_context(201, Precision::DoubleDouble);
  for (int n = 0; n <= 199; ++n) {
    CHECK(a.qfact_log[n].sign == b.qfact_log[n].sign);
    CHECK(std::abs(a.qfact_log[n].logmag - b.qfact_log[n].logmag) < 1e-10);
  }
  CHECK(parse_precision("dd") == Precision::DoubleDouble);
  CHECK(parse_precision("double") == Precision::Double);
  CHECK_THROWS(parse_precision("quad"));
}

TEST_CASE("delta values") {
  auto c5 = make_context(5);
  CHECK(delta(c5, 0) == doctest::Approx(1.0));
  CHECK(delta(c5, 4) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(delta(c5, 2) == doctest::Approx(std::sin(6 * std::numbers::pi / 5) / std::sin(2 * std::numbers::pi / 5)));
  for (int r : {7, 15, 33}) {
    auto ctx = make_context(r);
    for (int j = 0; j <= r - 2; ++j) CHECK(delta(ctx, j) == doctest::Approx(oracle::delta(r, j)));
  }
}

TEST_CASE("lambda values") {
  for (int r : {5, 9, 17}) {
    auto ctx = make_context(r);
    for (int n = 0; n <= r - 2; ++n) {
      CHECK(lambda_coeff(ctx, n, 0) == doctest::Approx(1.0));
      for (int a = 0; a <= r - 2; ++a) CHECK(lambda_coeff(ctx, n, a) == doctest::Approx(oracle::lambda(r, n, a)));
    }
    for (int a = 0; a <= r - 2; ++a) CHECK(lambda_coeff(ctx, 0, a) == doctest::Approx(delta(ctx, a)));
  }
  auto c5 = make_context(5);
  CHECK(lambda_coeff(c5, 2, 2) ==
        doctest::Approx(std::sin(2 * std::numbers::pi * 9 / 5) / std::sin(6 * std::numbers::pi / 5)));
}

TEST_CASE("delta times lambda is O(r)") {
  for (int r : {101, 151, 201}) {
    auto ctx = make_context(r);
    double bound = r / (2 * std::numbers::pi) * 1.01;
    for (int j = 0; j <= r - 2; ++j)
      for (int a = 0; a <= r - 2; ++a) REQUIRE(std::abs(delta(ctx, j) * lambda_coeff(ctx, j, a)) <= bound);
  }
}

TEST_CASE("gamma has unit modulus and conjugates under crossing change") {
  auto ctx = make_context(11);
  auto g0 = gamma_coeff(ctx, 0, 0, 0, 1);
  CHECK(g0.logmag == 0.0);
  CHECK(std::abs(g0.to_complex() - 1.0) < 1e-15);
  for (int a = 0; a <= 9; ++a)
    for (int b = 0; b <= 9; ++b)
      for (int c = 0; c <= 9; ++c) {
        if (!is_admissible_triple(ctx, a, b, c)) continue;
        auto p = gamma_coeff(ctx, a, b, c, 1), m = gamma_coeff(ctx, a, b, c, -1);
        CHECK(p.logmag == 0.0);
        CHECK(std::abs(p.to_complex() - std::conj(m.to_complex())) < 1e-12);
        CHECK(std::abs(p.to_complex() - oracle::gamma(11, a, b, c, 1)) < 1e-12);
        CHECK(std::abs(p.to_complex() - gamma_coeff(ctx, b, a, c, 1).to_complex()) < 1e-12);
      }
  CHECK_THROWS_AS(gamma_coeff(ctx, 1, 1, 1, 1), AdmissibilityError);
}

TEST_CASE("admissibility predicates") {
  auto ctx = make_context(7);
  CHECK(is_admissible_triple(ctx, 0, 0, 0));
  CHECK_FALSE(is_admissible_triple(ctx, 2, 2, 5));
  CHECK_FALSE(is_admissible_triple(ctx, 2, 2, 1));
  CHECK_FALSE(is_admissible_triple(ctx, 5, 5, 4));  // sum above 2r-4
  CHECK_FALSE(is_admissible_triple(ctx, 6, 6, 0));  // r-1 is outside the label set
  CHECK(is_admissible_6tuple(ctx, 0, 0, 0, 0, 0, 0));
  CHECK_FALSE(is_admissible_6tuple(ctx, 6, 0, 6, 0, 0, 0));
  for (int r : {9, 11, 21}) {
    auto c = make_context(r);
    int n = c.n_r;
    for (int j1 = 0; j1 <= r - 3; j1 += 2)
      for (int j2 = 0; j2 <= r - 3; j2 += 2) CHECK(is_admissible_6tuple(c, n, n, j1, n, n, j2));
    for (int j = 1; j <= r - 2; j += 2) CHECK_FALSE(is_admissible_triple(c, n, n, j));
  }
}

TEST_CASE("admissibility matches an independent predicate") {
  for (int r : {5, 9, 13}) {
    auto ctx = make_context(r);
    for (int a = -1; a <= r; ++a)
      for (int b = -1; b <= r; ++b)
        for (int c = -1; c <= r; ++c) {
          bool want = oracle::admissible(r, a, b, c) && a <= r - 2 && b <= r - 2 && c <= r - 2;
          CHECK(is_admissible_triple(ctx, a, b, c) == want);
        }
  }
}
