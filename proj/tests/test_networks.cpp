#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qtv/falcomb.hpp"
#include "qtv/networks.hpp"

using namespace qtv;
using networks::Tuple6;

namespace {

std::array<int, 3> random_admissible_triple(const qkernel::RootContext& ctx, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> lab(0, ctx.r - 2);
  while (true) {
    int a = lab(rng), b = lab(rng), c = lab(rng);
    if (qkernel::is_admissible_triple(ctx, a, b, c)) return {a, b, c};
  }
}

Tuple6 random_admissible_tuple(const qkernel::RootContext& ctx, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> lab(0, ctx.r - 2);
  while (true) {
    Tuple6 t{lab(rng), lab(rng), lab(rng), lab(rng), lab(rng), lab(rng)};
    if (networks::is_admissible(ctx, t)) return t;
  }
}

// The 24 tetrahedral symmetries: column permutations and swapping the upper
// and lower entries of two columns.
std::vector<Tuple6> symmetric_images(const Tuple6& t) {
  std::array<std::array<int, 2>, 3> cols{{{t.i, t.l}, {t.j, t.m}, {t.k, t.n}}};
  std::vector<Tuple6> out;
  std::array<int, 3> p{0, 1, 2};
  do {
    for (int flip = 0; flip < 4; ++flip) {
      // flip selects none or one of the three column pairs to swap
      std::array<std::array<int, 2>, 3> c{cols[p[0]], cols[p[1]], cols[p[2]]};
      if (flip > 0) {
        for (int k = 0; k < 3; ++k)
          if (k != flip - 1) std::swap(c[k][0], c[k][1]);
      }
      out.push_back({c[0][0], c[1][0], c[2][0], c[0][1], c[1][1], c[2][1]});
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

TEST_CASE("theta: trivial value, symmetry, and the Kauffman-Lins formula") {
  auto ctx = qkernel::make_context(11);
  CHECK(networks::theta(ctx, 0, 0, 0).sign == 1);
  CHECK(networks::theta(ctx, 0, 0, 0).logmag == doctest::Approx(0.0));
  std::mt19937_64 rng(5);
  for (int k = 0; k < 50; ++k) {
    auto [a, b, c] = random_admissible_triple(ctx, rng);
    auto x = networks::theta(ctx, a, b, c);
    for (auto y : {networks::theta(ctx, b, c, a), networks::theta(ctx, c, a, b), networks::theta(ctx, b, a, c)}) {
      CHECK(x.sign == y.sign);
      CHECK(std::abs(x.logmag - y.logmag) < 1e-12);
    }
    CHECK(std::abs(x.to_double() / oracle::theta(11, a, b, c) - 1) < 1e-10);
  }
  CHECK_THROWS_AS(networks::theta(ctx, 1, 1, 1), qkernel::AdmissibilityError);
}

TEST_CASE("theta(n_r, n_r, 0) equals Delta_{n_r}") {
  for (int r = 5; r <= 51; r += 2) {
    auto ctx = qkernel::make_context(r);
    auto th = networks::theta(ctx, ctx.n_r, ctx.n_r, 0);
    CHECK(th.to_double() == doctest::Approx(qkernel::delta(ctx, ctx.n_r)));
  }
}

TEST_CASE("6j special values") {
  auto ctx = qkernel::make_context(9);
  auto z = networks::six_j(ctx, {0, 0, 0, 0, 0, 0});
  CHECK(z.sign == 1);
  CHECK(z.logmag == doctest::Approx(0.0));
  for (int r = 5; r <= 51; r += 2) {
    auto c = qkernel::make_context(r);
    int n = c.n_r;
    for (int j2 = 0; j2 <= 2 * n && j2 <= r - 3; j2 += 2) {
      auto v = networks::six_j(c, {n, n, 0, n, n, j2});
      CHECK(v.to_double() * qkernel::delta(c, n) == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("6j magnitude matches Tet over square roots of thetas") {
  for (int r : {7, 9, 13}) {
    auto ctx = qkernel::make_context(r);
    std::mt19937_64 rng(r);
    for (int k = 0; k < 200; ++k) {
      auto t = random_admissible_tuple(ctx, rng);
      auto d = networks::six_j_detail(ctx, t);
      auto o = oracle::six_j(r, t.as_array());
      if (d.value.is_zero()) {
        CHECK(std::abs(o) < 1e-9);
        continue;
      }
      CHECK(std::abs(std::log(std::abs(o)) - d.value.logmag) < 1e-9);
      auto tt = networks::tet(ctx, t);
      CHECK(std::abs(std::log(std::abs(oracle::tet(r, t.as_array()))) - tt.logmag) < 1e-9);
    }
  }
}

TEST_CASE("6j sign agrees with the oracle on the strand-pattern families") {
  for (int r : {7, 9, 11, 13}) {
    auto ctx = qkernel::make_context(r);
    for (int a = 0; a <= r - 2; ++a)
      for (int b = 0; b <= r - 2; ++b)
        for (int j = 0; j <= r - 2; ++j)
          for (int jp = 0; jp <= r - 2; ++jp) {
            Tuple6 t{a, b, j, a, b, jp};
            if (!networks::is_admissible(ctx, t)) continue;
            auto d = networks::six_j_detail(ctx, t);
            auto o = oracle::six_j(r, t.as_array());
            if (d.value.is_zero()) continue;
            REQUIRE_FALSE(d.imaginary);
            CHECK(std::abs(o.imag()) < 1e-9 * std::abs(o));
            CHECK((o.real() > 0 ? 1 : -1) == d.value.sign);
          }
  }
}

TEST_CASE("6j is invariant under the tetrahedral symmetries") {
  auto ctx = qkernel::make_context(13);
  std::mt19937_64 rng(13);
  for (int k = 0; k < 200; ++k) {
    auto t = random_admissible_tuple(ctx, rng);
    auto base = networks::six_j_detail(ctx, t);
    auto images = symmetric_images(t);
    CHECK(images.size() == 24);
    for (const auto& u : images) {
      REQUIRE(networks::is_admissible(ctx, u));
      auto d = networks::six_j_detail(ctx, u);
      CHECK(d.imaginary == base.imaginary);
      CHECK(d.value.sign == base.value.sign);
      if (!base.value.is_zero()) CHECK(std::abs(d.value.logmag - base.value.logmag) < 1e-10);
    }
  }
}

TEST_CASE("tet is six_j times the root of the face thetas, and inverts back") {
  auto ctx = qkernel::make_context(15);
  std::mt19937_64 rng(15);
  int checked = 0;
  while (checked < 100) {
    auto t = random_admissible_tuple(ctx, rng);
    networks::SixJDetail d = networks::six_j_detail(ctx, t);
    if (d.value.is_zero()) continue;
    double half = 0;
    int neg = 0;
    for (auto f : t.faces()) {
      auto th = networks::theta(ctx, f[0], f[1], f[2]);
      half += 0.5 * th.logmag;
      neg += th.sign < 0;
    }
    if ((neg + d.imaginary) % 2) {
      CHECK_THROWS_AS(networks::tet(ctx, t), networks::ContractError);
      continue;
    }
    auto T = networks::tet(ctx, t);
    CHECK(std::abs(T.logmag - (d.value.logmag + half)) < 1e-10);
    CHECK(std::abs(T.logmag - half - d.value.logmag) < 1e-10);
    ++checked;
  }
}

TEST_CASE("Tet[n n 0; n n j] equals theta(n, n, j)") {
  for (int r = 5; r <= 51; r += 2) {
    auto ctx = qkernel::make_context(r);
    int n = ctx.n_r;
    for (int j = 0; j <= r - 3 && j <= 2 * n; j += 2) {
      auto T = networks::tet(ctx, {n, n, 0, n, n, j});
      auto th = networks::theta(ctx, n, n, j);
      CHECK(T.sign == th.sign);
      CHECK(std::abs(T.logmag - th.logmag) < 1e-10);
    }
    auto T0 = networks::tet(ctx, {n, n, 0, n, n, 0});
    CHECK(T0.to_double() == doctest::Approx(qkernel::delta(ctx, n)));
  }
}

TEST_CASE("diagonal 6j sign and z-term sign constancy") {
  for (int r = 5; r <= 51; r += 2) {
    auto ctx = qkernel::make_context(r);
    int n = ctx.n_r;
    int want = r % 4 == 3 ? 1 : -1;
    for (int j1 = 0; j1 <= r - 3; j1 += 2)
      for (int j2 = 0; j2 <= r - 3; j2 += 2) {
        auto d = networks::six_j_detail(ctx, {n, n, j1, n, n, j2});
        CHECK(d.value.sign == want);
        if (j1 && j2) CHECK(d.terms_share_sign);
      }
  }
}

TEST_CASE("inadmissible tuples are rejected") {
  auto ctx = qkernel::make_context(9);
  CHECK_THROWS(networks::six_j(ctx, {1, 0, 0, 0, 0, 0}));
  CHECK_FALSE(networks::is_admissible(ctx, {8, 0, 8, 0, 0, 0}));
}

TEST_CASE("memo table holds exactly the admissible tuples in range") {
  auto ctx = qkernel::make_context(11);
  int n = ctx.n_r;
  std::vector<int> evens;
  for (int j = 0; j <= 10; j += 2) evens.push_back(j);
  std::vector<int> all;
  for (int j = 0; j <= 9; ++j) all.push_back(j);
  networks::SixJTable tab(ctx, {std::vector<int>{n}, std::vector<int>{n}, all, std::vector<int>{n}, std::vector<int>{n}, all});
  CHECK(tab.size() == static_cast<std::size_t>(((ctx.r - 3) / 2 + 1) * ((ctx.r - 3) / 2 + 1)));
  CHECK(tab.find({n, n, 1, n, n, 0}) == nullptr);
  std::mt19937_64 rng(1);
  for (int k = 0; k < 100; ++k) {
    int j1 = 2 * std::uniform_int_distribution<int>(0, 4)(rng), j2 = 2 * std::uniform_int_distribution<int>(0, 4)(rng);
    auto* hit = tab.find({n, n, j1, n, n, j2});
    REQUIRE(hit != nullptr);
    auto fresh = networks::six_j_detail(ctx, {n, n, j1, n, n, j2});
    CHECK(hit->value.sign == fresh.value.sign);
    CHECK(hit->value.logmag == fresh.value.logmag);
  }
}

TEST_CASE("6j growth approaches the octahedron volume") {
  double prev = 1e9;
  for (int r : {101, 201, 401, 1001, 2001}) {
    double dev = std::abs(networks::six_j_growth(qkernel::make_context(r)) - falcomb::kV8);
    CHECK(dev < prev);
    prev = dev;
  }
  CHECK(prev < 0.05);
  CHECK(std::abs(falcomb::kV8 - oracle::v8_series()) < 1e-14);
}

TEST_CASE("6j growth bound over every admissible tuple at r = 41") {
  auto ctx = qkernel::make_context(41);
  double worst = -1e9;
  for (int i = 0; i <= 39; ++i)
    for (int j = 0; j <= 39; ++j)
      for (int k = std::abs(i - j); k <= std::min(i + j, 39); k += 2) {
        if (!qkernel::is_admissible_triple(ctx, i, j, k)) continue;
        for (int l = 0; l <= 39; ++l)
          for (int m = 0; m <= 39; ++m) {
            if (!qkernel::is_admissible_triple(ctx, k, l, m)) continue;
            int lo = std::max(std::abs(j - l), std::abs(i - m));
            int hi = std::min({j + l, i + m, 39});
            for (int n = lo; n <= hi; ++n) {
              Tuple6 t{i, j, k, l, m, n};
              if (!networks::is_admissible(ctx, t)) continue;
              auto d = networks::six_j_detail(ctx, t);
              if (!d.value.is_zero()) worst = std::max(worst, 2 * M_PI / 41 * d.value.logmag);
            }
          }
      }
  CHECK(worst <= falcomb::kV8 + 1.0);
}

TEST_CASE("double-double mode agrees with double at moderate r") {
  auto a = qkernel::make_context(301), b = qkernel::make_context(301, qkernel::Precision::DoubleDouble);
  std::mt19937_64 rng(9);
  for (int k = 0; k < 50; ++k) {
    auto t = random_admissible_tuple(a, rng);
    auto x = networks::six_j_detail(a, t), y = networks::six_j_detail(b, t);
    CHECK(x.value.sign == y.value.sign);
    if (!x.value.is_zero() && !x.tainted) CHECK(std::abs(x.value.logmag - y.value.logmag) < 1e-8);
  }
}
