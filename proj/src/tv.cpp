#include "qtv/tv.hpp"

#include <Eigen/Dense>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "qtv/falcomb.hpp"

namespace qtv::tv {

using qkernel::SignedLogAccumulator;

double eta_prime_sq(const RootContext& ctx) {
  double s = qkernel::sin_pi_ratio(2, ctx.r);
  return 4.0 * s * s / ctx.r;
}

double target_volume(int c) { return 2.0 * (c - 1) * falcomb::kV8; }

namespace {

struct Partial {
  SignedLogAccumulator sum;
  SignedLogAccumulator err;
  std::size_t tainted = 0;
};

// Odometer over {0..m-1}^k.
bool advance(std::vector<int>& v, const std::vector<int>& positions, int m) {
  for (int p : positions) {
    if (++v[p] < m) return true;
    v[p] = 0;
  }
  return false;
}

void sweep_strands(const EvaluationPlan& plan, const RootContext& ctx, std::size_t index, Partial& out) {
  int m = ctx.m;
  std::vector<int> strand(plan.s);
  std::size_t k = index;
  for (int i = 0; i < plan.s; ++i) {
    strand[i] = static_cast<int>(k % m);
    k /= m;
  }
  jones::JonesEvaluator ev(plan, ctx);
  ev.set_strands(strand);
  std::vector<int> circle(plan.c, 0);
  const auto& order = ev.slot_order();
  const double eps = std::numeric_limits<double>::epsilon();
  do {
    auto J = ev.evaluate(circle);
    if (!J.modulus.is_zero()) out.sum.add({1, 2 * J.modulus.logmag});
    if (J.tainted) {
      ++out.tainted;
      double ldelta = std::log(std::max(J.term_count, 1.0) * eps) + J.max_term_logmag;
      out.err.add({1, ldelta + std::log(2.0) + (J.modulus.is_zero() ? ldelta : std::max(J.modulus.logmag, ldelta))});
    }
  } while (advance(circle, order, m));
}

}  // namespace

TVResult turaev_viro(const EvaluationPlan& plan, const RootContext& ctx, const TVOptions& opts) {
  std::size_t n_strand = 1;
  for (int i = 0; i < plan.s; ++i) n_strand *= static_cast<std::size_t>(ctx.m);
  std::vector<Partial> parts(n_strand);
  int workers = opts.workers > 0 ? opts.workers : static_cast<int>(std::thread::hardware_concurrency());
  if (opts.deterministic || workers < 1) workers = 1;
  workers = static_cast<int>(std::min<std::size_t>(workers, n_strand));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n_strand; i = next++) sweep_strands(plan, ctx, i, parts[i]);
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  SignedLogAccumulator total, err;
  TVResult res;
  for (const auto& p : parts) {
    auto s = p.sum.result();
    if (!s.value.is_zero()) total.add(s.value);
    auto e = p.err.result();
    if (!e.value.is_zero()) err.add(e.value);
    res.tainted_jones += p.tainted;
  }
  std::size_t n_circle = 1;
  for (int l = 0; l < plan.c; ++l) n_circle *= static_cast<std::size_t>(ctx.m);
  res.colourings = n_strand * n_circle;
  SignedLog sum = total.result().value;
  int n = plan.c + plan.s;
  SignedLog prefactor{1, (n - 1) * std::log(2.0) + std::log(eta_prime_sq(ctx))};
  res.value = prefactor * sum;
  SignedLog e = err.result().value;
  if (!e.is_zero() && !sum.is_zero()) {
    res.relative_error_bound = std::exp(e.logmag - sum.logmag);
    res.tainted = res.relative_error_bound > SignedLogAccumulator::kTaintRatio;
  }
  return res;
}

Fit fit_growth(const GrowthSeries& series) {
  std::vector<const GrowthEntry*> use;
  for (const auto& e : series.entries)
    if (!e.tainted && !e.unverified) use.push_back(&e);
  if (use.size() < 4) throw FitError("fit needs at least 4 untainted entries");
  Eigen::MatrixXd X(use.size(), 3);
  Eigen::VectorXd y(use.size());
  for (std::size_t k = 0; k < use.size(); ++k) {
    double r = use[k]->r;
    X(k, 0) = 1.0;
    X(k, 1) = std::log(r) / r;
    X(k, 2) = 1.0 / r;
    y(k) = use[k]->value;
  }
  Eigen::Vector3d beta = X.colPivHouseholderQr().solve(y);
  return {beta(0), beta(1), beta(2), (X * beta - y).norm()};
}

namespace {

void attach_fit(GrowthSeries& s) {
  std::size_t ok = 0;
  for (const auto& e : s.entries) ok += (!e.tainted && !e.unverified);
  if (ok >= 4) s.fit = fit_growth(s);
}

}  // namespace

GrowthSeries tv_growth_series(const EvaluationPlan& plan, const std::vector<int>& r_list, const TVOptions& opts,
                              Precision precision) {
  GrowthSeries s;
  s.target = target_volume(plan.c);
  s.upper_bound_only = !plan.flat();
  for (int r : r_list) {
    auto ctx = qkernel::make_context(r, precision);
    auto tv = turaev_viro(plan, ctx, opts);
    s.entries.push_back({r, 2 * std::numbers::pi / r * tv.value.logmag, tv.tainted, false});
  }
  attach_fit(s);
  return s;
}

double diagonal_growth(const EvaluationPlan& plan, const RootContext& ctx) {
  jones::Colouring col{std::vector<int>(plan.c, ctx.n_r), std::vector<int>(plan.s, ctx.n_r)};
  auto N = jones::evaluate_N(plan, ctx, col, std::vector<int>(plan.c, ctx.n_r));
  return 2 * std::numbers::pi / ctx.r * 2 * N.logmag;
}

GrowthSeries diagonal_growth_series(const EvaluationPlan& plan, const std::vector<int>& r_list, Precision precision) {
  GrowthSeries s;
  s.target = target_volume(plan.c);
  s.upper_bound_only = !plan.flat();
  for (int r : r_list) {
    auto ctx = qkernel::make_context(r, precision);
    s.entries.push_back({r, diagonal_growth(plan, ctx), false, false});
  }
  attach_fit(s);
  return s;
}

double cj_growth(const EvaluationPlan& plan, int m, bool full, Precision precision) {
  auto ctx = qkernel::make_context(2 * m + 1, precision);
  jones::Colouring col{std::vector<int>(plan.c, m), std::vector<int>(plan.s, m)};
  double logmag;
  if (full) {
    logmag = jones::coloured_jones_modulus(plan, ctx, col).modulus.logmag;
  } else {
    int j = (m % 2 == 0) ? m : m - 1;
    logmag = jones::evaluate_N(plan, ctx, col, std::vector<int>(plan.c, j)).logmag;
  }
  return 4 * std::numbers::pi / ctx.r * logmag;
}

GrowthSeries cj_growth_series(const EvaluationPlan& plan, const std::vector<int>& m_list, int full_max_m,
                              Precision precision) {
  GrowthSeries s;
  s.target = target_volume(plan.c);
  s.upper_bound_only = !plan.flat();
  for (int m : m_list) {
    bool full = m <= full_max_m;
    GrowthEntry e{2 * m + 1, 0.0, false, m % 2 != 0};
    if (full) {
      auto ctx = qkernel::make_context(2 * m + 1, precision);
      jones::Colouring col{std::vector<int>(plan.c, m), std::vector<int>(plan.s, m)};
      auto J = jones::coloured_jones_modulus(plan, ctx, col);
      e.value = 4 * std::numbers::pi / ctx.r * J.modulus.logmag;
      e.tainted = J.tainted;
    } else {
      e.value = cj_growth(plan, m, false, precision);
    }
    s.entries.push_back(e);
  }
  attach_fit(s);
  return s;
}

UpperBoundCheck upper_bound_check(const GrowthSeries& series, int n, int c) {
  UpperBoundCheck u;
  for (const auto& e : series.entries) {
    double excess = e.value - series.target;
    if (excess > 0) u.C = std::max(u.C, excess * e.r / std::log(static_cast<double>(e.r)));
  }
  u.C_allowed = 2 * std::numbers::pi * (n + 4 * c);
  u.holds = u.C <= u.C_allowed;
  return u;
}

}  // namespace qtv::tv
