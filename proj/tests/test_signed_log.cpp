#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "qtv/signed_log.hpp"

using namespace qtv::qkernel;

TEST_CASE("signed log round-trips doubles across the exponent range") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> expo(-300.0, 300.0), mant(1.0, 10.0);
  for (int k = 0; k < 2000; ++k) {
    double x = mant(rng) * std::pow(10.0, expo(rng)) * (k % 2 ? -1 : 1);
    auto s = SignedLog::from_double(x);
    CHECK(s.sign == (x > 0 ? 1 : -1));
    // exp(log x) carries the rounding of log x scaled by |log x|
    double eps = std::numeric_limits<double>::epsilon();
    CHECK(std::abs(s.to_double() / x - 1) <= 2 * eps * (std::abs(std::log(std::abs(x))) + 1));
  }
  CHECK(SignedLog::from_double(0.0).is_zero());
  CHECK(SignedLog::zero().to_double() == 0.0);
}

TEST_CASE("multiplication is exact in sign and additive in logmag") {
  SignedLog a{-1, 700.0}, b{-1, 800.0};
  auto p = a * b;
  CHECK(p.sign == 1);
  CHECK(p.logmag == doctest::Approx(1500.0));
  CHECK((a / b).logmag == doctest::Approx(-100.0));
  CHECK(pow(a, 3).sign == -1);
  CHECK(pow(a, 3).logmag == doctest::Approx(2100.0));
  CHECK((a * SignedLog::zero()).is_zero());
  CHECK(a.inverse().logmag == doctest::Approx(-700.0));
}

TEST_CASE("same-sign sums are exact in sign and never tainted") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<SignedLog> xs;
    double ref = 0;
    for (int k = 0; k < 30; ++k) {
      double l = u(rng);
      xs.push_back({-1, l});
      ref += std::exp(l);
    }
    auto r = sum(xs);
    CHECK(r.value.sign == -1);
    CHECK_FALSE(r.tainted);
    CHECK(std::abs(r.value.logmag - std::log(ref)) < 1e-13);
  }
}

TEST_CASE("sums of huge magnitudes stay finite") {
  SignedLogAccumulator acc;
  acc.add({1, 1200.0});
  acc.add({1, 1200.0});
  auto r = acc.result();
  CHECK(r.value.logmag == doctest::Approx(1200.0 + std::log(2.0)));
  CHECK(r.max_logmag == 1200.0);
}

TEST_CASE("cancellation below the taint ratio is flagged") {
  SignedLogAccumulator acc;
  acc.add(SignedLog::from_double(1.0));
  acc.add(SignedLog::from_double(-1.0 + 1e-12));
  CHECK(acc.result().tainted);

  SignedLogAccumulator exact;
  exact.add(SignedLog::from_double(2.0));
  exact.add(SignedLog::from_double(-2.0));
  CHECK(exact.result().tainted);

  SignedLogAccumulator mild;
  mild.add(SignedLog::from_double(1.0));
  mild.add(SignedLog::from_double(-0.5));
  auto r = mild.result();
  CHECK_FALSE(r.tainted);
  CHECK(r.value.to_double() == doctest::Approx(0.5));
}

TEST_CASE("compensated summation recovers small terms next to large ones") {
  SignedLogAccumulator acc;
  acc.add(SignedLog::from_double(1.0));
  for (int k = 0; k < 1000; ++k) acc.add(SignedLog::from_double(1e-16));
  CHECK(acc.result().value.to_double() == doctest::Approx(1.0 + 1e-13).epsilon(1e-15));
}

TEST_CASE("log-polar products wrap phase and conjugate") {
  auto a = LogPolar::make(1.0, 3.0), b = LogPolar::make(2.0, 1.0);
  auto p = a * b;
  CHECK(p.logmag == doctest::Approx(3.0));
  CHECK(std::abs(p.phase - (4.0 - 2 * M_PI)) < 1e-15);
  CHECK(a.conj().phase == doctest::Approx(-3.0));
  CHECK(LogPolar::from_signed_log({-1, 0.0}).real_sign() == -1);
  CHECK(LogPolar::make(0.0, 0.5).real_sign() == 0);
  CHECK((a * LogPolar::zero()).is_zero());
}

TEST_CASE("complex accumulator sums in rectangular form") {
  ComplexAccumulator acc;
  acc.add(LogPolar::make(std::log(3.0), 0.0));
  acc.add(LogPolar::make(std::log(4.0), M_PI / 2));
  auto v = acc.value().to_complex();
  CHECK(v.real() == doctest::Approx(3.0));
  CHECK(v.imag() == doctest::Approx(4.0));
  CHECK_FALSE(acc.tainted());

  ComplexAccumulator cancel;
  cancel.add(LogPolar::make(500.0, 0.3));
  cancel.add(LogPolar::make(500.0, 0.3 + M_PI));
  CHECK(cancel.tainted());
}

TEST_CASE("double-double addition keeps the rounding error") {
  DoubleDouble a{1.0, 0.0};
  auto s = dd_add(a, 1e-20);
  CHECK(s.hi == 1.0);
  CHECK(s.lo == doctest::Approx(1e-20));
  auto z = dd_add(s, dd_neg(s));
  CHECK(z.hi == 0.0);
  CHECK(z.lo == 0.0);
}
