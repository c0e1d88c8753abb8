#include "qtv/networks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qtv::networks {

using qkernel::DoubleDouble;
using qkernel::Precision;

std::array<int, 4> Tuple6::T() const {
  return {(i + j + k) / 2, (i + m + n) / 2, (j + l + n) / 2, (k + l + m) / 2};
}

std::array<int, 3> Tuple6::Q() const {
  return {(i + j + l + m) / 2, (i + k + l + n) / 2, (j + k + m + n) / 2};
}

std::array<std::array<int, 3>, 4> Tuple6::faces() const {
  return {{{i, j, k}, {j, l, n}, {i, m, n}, {k, l, m}}};
}

std::size_t Tuple6Hash::operator()(const Tuple6& t) const {
  std::size_t h = 1469598103934665603ull;
  for (int v : t.as_array()) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

bool is_admissible(const RootContext& ctx, const Tuple6& t) {
  return qkernel::is_admissible_6tuple(ctx, t.i, t.j, t.k, t.l, t.m, t.n);
}

SignedLog theta(const RootContext& ctx, int a, int b, int c) {
  if (!qkernel::is_admissible_triple(ctx, a, b, c))
    throw qkernel::AdmissibilityError("theta: inadmissible triple");
  ThetaArgs t{a, b, c};
  int s = (a + b + c) / 2;
  const auto& f = ctx.qfact_log;
  SignedLog v = f[s + 1] * f[t.x()] * f[t.y()] * f[t.z()] / (f[a] * f[b] * f[c]);
  return (s % 2 == 0) ? v : -v;
}

namespace {

// Square root of [s-a]![s-b]![s-c]!/[s+1]! as half log magnitude plus a flag
// for a negative radicand.
struct HalfDelta {
  double half_log;
  bool negative;
};

HalfDelta half_delta(const RootContext& ctx, int a, int b, int c) {
  int s = (a + b + c) / 2;
  const auto& f = ctx.qfact_log;
  SignedLog x = f[s - a] * f[s - b] * f[s - c] / f[s + 1];
  return {0.5 * x.logmag, x.sign < 0};
}

}  // namespace

SixJDetail six_j_detail(const RootContext& ctx, const Tuple6& t) {
  if (!is_admissible(ctx, t)) throw qkernel::AdmissibilityError("six_j: inadmissible tuple");
  SixJDetail out;
  auto T = t.T();
  auto Q = t.Q();
  int zlo = *std::max_element(T.begin(), T.end());
  int zhi = std::min(*std::min_element(Q.begin(), Q.end()), ctx.r - 2);
  if (zlo > zhi) return out;

  const auto& f = ctx.qfact_log;
  const auto& flo = ctx.qfact_log_lo;
  bool dd = ctx.precision == Precision::DoubleDouble;
  int nterms = zhi - zlo + 1;
  std::vector<DoubleDouble> logs(nterms);
  std::vector<int> signs(nterms);
  double top = -std::numeric_limits<double>::infinity();
  for (int z = zlo; z <= zhi; ++z) {
    DoubleDouble lg{f[z + 1].logmag, dd ? flo[z + 1] : 0.0};
    int sg = (z % 2 == 0 ? 1 : -1) * f[z + 1].sign;
    for (int x : T) {
      lg = qkernel::dd_add(lg, DoubleDouble{-f[z - x].logmag, dd ? -flo[z - x] : 0.0});
      sg *= f[z - x].sign;
    }
    for (int x : Q) {
      lg = qkernel::dd_add(lg, DoubleDouble{-f[x - z].logmag, dd ? -flo[x - z] : 0.0});
      sg *= f[x - z].sign;
    }
    logs[z - zlo] = lg;
    signs[z - zlo] = sg;
    top = std::max(top, lg.hi);
  }

  double s = 0.0, comp = 0.0;
  bool pos = false, neg = false;
  for (int k = 0; k < nterms; ++k) {
    DoubleDouble d = qkernel::dd_add(logs[k], -top);
    double e = std::exp(d.hi);
    if (dd) e *= 1.0 + d.lo;
    double x = signs[k] * e;
    (signs[k] > 0 ? pos : neg) = true;
    double tt = s + x;
    if (std::abs(s) >= std::abs(x))
      comp += (s - tt) + x;
    else
      comp += (x - tt) + s;
    s = tt;
  }
  s += comp;
  out.term_count = nterms;
  out.terms_share_sign = !(pos && neg);
  if (s == 0.0) {
    out.tainted = true;
    return out;
  }
  out.tainted = (pos && neg) && std::abs(s) < qkernel::SignedLogAccumulator::kTaintRatio;

  double prefix_log = 0.0;
  int quarter_turns = t.i + t.j + t.k + t.l + t.m + t.n;
  for (const auto& face : {std::array<int, 3>{t.i, t.j, t.k}, {t.i, t.m, t.n}, {t.l, t.j, t.n}, {t.l, t.m, t.k}}) {
    HalfDelta h = half_delta(ctx, face[0], face[1], face[2]);
    prefix_log += h.half_log;
    if (h.negative) ++quarter_turns;
  }
  int q4 = quarter_turns % 4;
  out.imaginary = (q4 % 2) != 0;
  int sign = (s > 0 ? 1 : -1) * (q4 >= 2 ? -1 : 1);
  out.value = {sign, prefix_log + top + std::log(std::abs(s))};
  return out;
}

SignedLog six_j(const RootContext& ctx, const Tuple6& t) {
  SixJDetail d = six_j_detail(ctx, t);
  if (d.imaginary && !d.value.is_zero())
    throw ContractError("six_j: odd imaginary parity on a value required to be real");
  return d.value;
}

SignedLog tet(const RootContext& ctx, const Tuple6& t) {
  SixJDetail d = six_j_detail(ctx, t);
  if (d.value.is_zero()) return SignedLog::zero();
  // one square root per face, sqrt(x) = i sqrt(|x|) for x < 0
  double half = 0.0;
  int quarter_turns = d.imaginary ? 1 : 0;
  for (const auto& f : t.faces()) {
    SignedLog th = theta(ctx, f[0], f[1], f[2]);
    half += 0.5 * th.logmag;
    if (th.sign < 0) ++quarter_turns;
  }
  if (quarter_turns % 2) throw ContractError("tet: odd imaginary parity");
  int sign = d.value.sign * (quarter_turns % 4 == 2 ? -1 : 1);
  return {sign, d.value.logmag + half};
}

SixJTable::SixJTable(const RootContext& ctx, const std::array<std::vector<int>, 6>& ranges) {
  std::array<int, 6> a{};
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == 6) {
      Tuple6 t = Tuple6::from_array(a);
      if (is_admissible(ctx, t)) table_.emplace(t, six_j_detail(ctx, t));
      return;
    }
    for (int v : ranges[pos]) {
      a[pos] = v;
      self(self, pos + 1);
    }
  };
  rec(rec, 0);
}

const SixJDetail* SixJTable::find(const Tuple6& t) const {
  auto it = table_.find(t);
  return it == table_.end() ? nullptr : &it->second;
}

double six_j_growth(const RootContext& ctx) {
  int h = (ctx.r - 1) / 2;
  int e = (h % 2 == 0) ? h : (ctx.r - 3) / 2;
  SixJDetail d = six_j_detail(ctx, {e, e, e, e, e, e});
  return 2 * std::numbers::pi / ctx.r * d.value.logmag;
}

double six_j_growth_mixed(const RootContext& ctx) {
  int h = (ctx.r - 1) / 2;
  int e = (h % 2 == 0) ? h : (ctx.r - 3) / 2;
  SixJDetail d = six_j_detail(ctx, {h, h, e, h, h, e});
  return 2 * std::numbers::pi / ctx.r * d.value.logmag;
}

}  // namespace qtv::networks
