#include "qtv/qkernel.hpp"

#include <cmath>
#include <numbers>

namespace qtv::qkernel {

Precision parse_precision(const std::string& s) {
  if (s == "double") return Precision::Double;
  if (s == "dd" || s == "double-double") return Precision::DoubleDouble;
  throw std::invalid_argument("unknown precision mode '" + s + "'");
}

std::string to_string(Precision p) {
  return p == Precision::Double ? "double" : "double-double";
}

double sin_pi_ratio(std::int64_t p, std::int64_t q) {
  std::int64_t period = 2 * q;
  p %= period;
  if (p < 0) p += period;
  double s = 1.0;
  if (p >= q) {
    p -= q;
    s = -1.0;
  }
  if (2 * p > q) p = q - p;
  return s * std::sin(std::numbers::pi * static_cast<double>(p) / static_cast<double>(q));
}

RootContext make_context(int r, Precision precision) {
  if (r < 3 || r % 2 == 0)
    throw ContextError("NotOddOrTooSmall: r must be odd and >= 3, got " + std::to_string(r));
  RootContext ctx;
  ctx.r = r;
  ctx.m = (r - 1) / 2;
  ctx.n_r = (r % 4 == 1) ? (r - 1) / 2 : (r - 3) / 2;
  ctx.q = std::polar(1.0, 2 * std::numbers::pi / r);
  ctx.A = std::polar(1.0, std::numbers::pi / r);
  ctx.precision = precision;
  ctx.qfact_log.resize(r);
  ctx.qfact_log_lo.assign(r, 0.0);
  ctx.qfact_log[0] = SignedLog::one();
  DoubleDouble acc;
  for (int n = 1; n <= r - 1; ++n) {
    double x = quantum_int(ctx, n);
    acc = dd_add(acc, std::log(std::abs(x)));
    ctx.qfact_log[n] = {ctx.qfact_log[n - 1].sign * (x > 0 ? 1 : -1), acc.hi};
    ctx.qfact_log_lo[n] = acc.lo;
  }
  return ctx;
}

double quantum_int(const RootContext& ctx, int n) {
  return sin_pi_ratio(2 * static_cast<std::int64_t>(n), ctx.r) / sin_pi_ratio(2, ctx.r);
}

SignedLog quantum_factorial(const RootContext& ctx, int n) {
  if (n < 0 || n > ctx.r - 1)
    throw RangeError("quantum factorial index " + std::to_string(n) + " outside 0.." +
                     std::to_string(ctx.r - 1));
  return ctx.qfact_log[n];
}

double delta(const RootContext& ctx, int j) {
  double s = (j % 2 == 0) ? 1.0 : -1.0;
  return s * quantum_int(ctx, j + 1);
}

double lambda_coeff(const RootContext& ctx, int n, int a) {
  std::int64_t n1 = n + 1;
  std::int64_t a1 = a + 1;
  double s = (a % 2 == 0) ? 1.0 : -1.0;
  return s * sin_pi_ratio(2 * n1 * a1, ctx.r) / sin_pi_ratio(2 * n1, ctx.r);
}

LogPolar gamma_coeff(const RootContext& ctx, int a, int b, int c, int crossing_sign) {
  if (!is_admissible_triple(ctx, a, b, c))
    throw AdmissibilityError("gamma: inadmissible triple");
  std::int64_t i = (b + c - a) / 2;
  std::int64_t j = (a + c - b) / 2;
  std::int64_t k = (a + b - c) / 2;
  // (-1)^k A^(ij - k(i+j+k+2)) = exp(i*pi*(ij - k(i+j+k+2) + k r) / r)
  std::int64_t period = 2 * static_cast<std::int64_t>(ctx.r);
  std::int64_t e = i * j - k * (i + j + k + 2) + k * ctx.r;
  e %= period;
  if (e < 0) e += period;
  double phase = std::numbers::pi * static_cast<double>(e) / ctx.r;
  if (crossing_sign < 0) phase = -phase;
  return LogPolar::make(0.0, phase);
}

bool is_admissible_triple(const RootContext& ctx, int a, int b, int c) {
  int top = ctx.r - 2;
  if (a < 0 || b < 0 || c < 0 || a > top || b > top || c > top) return false;
  int s = a + b + c;
  if (s % 2 != 0) return false;
  if (a > b + c || b > a + c || c > a + b) return false;
  return s <= 2 * ctx.r - 4;
}

bool is_admissible_6tuple(const RootContext& ctx, int i, int j, int k, int l, int m, int n) {
  return is_admissible_triple(ctx, i, j, k) && is_admissible_triple(ctx, j, l, n) &&
         is_admissible_triple(ctx, i, m, n) && is_admissible_triple(ctx, k, l, m);
}

}  // namespace qtv::qkernel
