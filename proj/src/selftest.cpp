#include "qtv/selftest.hpp"

#include <cmath>
#include <random>

#include "qtv/link_script.hpp"
#include "qtv/networks.hpp"
#include "qtv/tv.hpp"

namespace qtv::selftest {

using jones::Colouring;
using networks::Tuple6;
using qkernel::SignedLog;

void Check::record(bool ok, const std::string& what) {
  ++checked;
  if (ok) return;
  ++failed;
  pass = false;
  if (first_failure.empty()) first_failure = what;
}

namespace {

int expected_sign(int r) { return r % 4 == 3 ? 1 : -1; }

std::string at(int r, int a, int b = -1) {
  std::string s = "r=" + std::to_string(r) + " j=" + std::to_string(a);
  if (b >= 0) s += " j'=" + std::to_string(b);
  return s;
}

std::vector<int> diagonal_labels(const RootContext& ctx) {
  std::vector<int> out;
  for (int j = 0; j <= 2 * ctx.n_r; j += 2)
    if (qkernel::is_admissible_triple(ctx, ctx.n_r, ctx.n_r, j)) out.push_back(j);
  return out;
}

bool close_logmag(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

bool same_modulus(const jones::JonesResult& a, const jones::JonesResult& b, double tol) {
  auto zero_like = [](const jones::JonesResult& x) { return x.tainted || x.modulus.is_zero(); };
  if (zero_like(a) || zero_like(b)) return zero_like(a) && zero_like(b);
  return close_logmag(a.modulus.logmag, b.modulus.logmag, tol);
}

Check delta_lambda_signs(const std::vector<int>& r_list, const LambdaFn& lambda) {
  Check c{"delta-lambda signs"};
  for (int r : r_list) {
    auto ctx = qkernel::make_context(r);
    for (int j : diagonal_labels(ctx)) {
      int d = 2 * j <= r - 3 ? 1 : -1;
      double dv = qkernel::delta(ctx, j);
      c.record((dv > 0 ? 1 : -1) == d, "delta sign at " + at(r, j));
      double lv = lambda(ctx, j, ctx.n_r);
      int want = (r % 4 == 3) ? d : -d;
      c.record(lv != 0 && (lv > 0 ? 1 : -1) == want, "lambda sign at " + at(r, j));
    }
  }
  return c;
}

Check six_j_signs(const std::vector<int>& r_list) {
  Check c{"6j signs"};
  for (int r : r_list) {
    auto ctx = qkernel::make_context(r);
    int n = ctx.n_r;
    auto labels = diagonal_labels(ctx);
    for (int j1 : labels)
      for (int j2 : labels) {
        auto d = networks::six_j_detail(ctx, {n, n, j1, n, n, j2});
        c.record(!d.imaginary && d.value.sign == expected_sign(r), "6j sign at " + at(r, j1, j2));
        if (j1 != 0 && j2 != 0) c.record(d.terms_share_sign, "mixed z-terms at " + at(r, j1, j2));
      }
  }
  return c;
}

Check n_signs(const std::vector<falcomb::FALDescriptor>& links, const std::vector<int>& r_list) {
  Check c{"N signs"};
  for (const auto& fal : links) {
    auto plan = jones::compile_plan(fal);
    for (int r : r_list) {
      auto ctx = qkernel::make_context(r);
      Colouring col{std::vector<int>(plan.c, ctx.n_r), std::vector<int>(plan.s, ctx.n_r)};
      auto labels = diagonal_labels(ctx);
      std::vector<int> idx(plan.c, 0), jvec(plan.c);
      while (true) {
        for (int l = 0; l < plan.c; ++l) jvec[l] = labels[idx[l]];
        auto N = jones::evaluate_N(plan, ctx, col, jvec);
        c.record(!N.is_zero() && N.real_sign() == expected_sign(r), "N sign at r=" + std::to_string(r) + " c=" +
                                                                        std::to_string(plan.c));
        int l = 0;
        while (l < plan.c && ++idx[l] == static_cast<int>(labels.size())) idx[l++] = 0;
        if (l == plan.c) break;
      }
    }
  }
  return c;
}

namespace {

// Random colouring with a jvec that makes every factor admissible.
bool random_labels(const jones::EvaluationPlan& plan, const RootContext& ctx, std::mt19937_64& rng, int max_label,
                   Colouring& col, std::vector<int>& jvec) {
  std::uniform_int_distribution<int> lab(0, max_label);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    col.circle.assign(plan.c, 0);
    col.strand.assign(plan.s, 0);
    for (auto& a : col.circle) a = lab(rng);
    for (auto& i : col.strand) i = lab(rng);
    jvec.assign(plan.c, 0);
    bool ok = true;
    for (int l = 0; l < plan.c && ok; ++l) {
      auto rg = jones::slot_range(plan, ctx, col.strand, l);
      if (rg.empty()) {
        ok = false;
        break;
      }
      jvec[l] = rg[std::uniform_int_distribution<std::size_t>(0, rg.size() - 1)(rng)];
    }
    if (ok && !jones::evaluate_N(plan, ctx, col, jvec).is_zero()) return true;
  }
  return false;
}

}  // namespace

Check theta_cancellation(const std::vector<falcomb::FALDescriptor>& links, int r, int samples, std::uint64_t seed,
                         const jones::ThetaFn& theta_fn) {
  Check c{"theta cancellation"};
  std::mt19937_64 rng(seed);
  auto ctx = qkernel::make_context(r);
  for (int a = 0; a <= r - 2; ++a) {
    SignedLog th = theta_fn(ctx, a, a, 0);
    double d = qkernel::delta(ctx, a);
    c.record(th.sign == (d > 0 ? 1 : -1) && close_logmag(th.logmag, std::log(std::abs(d)), 1e-10),
             "theta(a,a,0) != Delta_a at a=" + std::to_string(a));
  }
  for (int a = 0; a <= r - 2; ++a)
    for (int b = 0; b <= r - 2; ++b)
      for (int e = std::abs(a - b); e <= std::min(a + b, r - 2); e += 2) {
        if (!qkernel::is_admissible_triple(ctx, a, b, e)) continue;
        SignedLog x = theta_fn(ctx, a, b, e), y = theta_fn(ctx, b, e, a);
        c.record(x.sign == y.sign && close_logmag(x.logmag, y.logmag, 1e-10), "theta not symmetric");
      }
  for (const auto& fal : links) {
    auto plan = jones::compile_plan(fal, true);
    c.record(jones::theta_ledger_balanced(plan), "ledger does not cancel as a multiset");
    Colouring col;
    std::vector<int> jvec;
    for (int k = 0; k < samples; ++k) {
      if (!random_labels(plan, ctx, rng, r - 2, col, jvec)) {
        c.record(false, "no admissible labels found");
        break;
      }
      auto audit = jones::theta_audit(plan, ctx, col, jvec, theta_fn);
      c.record(audit.real && audit.residual.sign == 1 && close_logmag(audit.residual.logmag, 0.0, 1e-10),
               "theta residual " + std::to_string(audit.residual.logmag) + " at c=" + std::to_string(plan.c));
    }
  }
  return c;
}

Check pop_invariance(const std::vector<falcomb::FALDescriptor>& links, int r, int samples, std::uint64_t seed) {
  Check c{"pop-order invariance"};
  std::mt19937_64 rng(seed);
  auto ctx = qkernel::make_context(r);
  for (const auto& fal : links) {
    auto variants = jones::plan_variants(fal);
    if (variants.empty()) {
      c.record(false, "no plan variants");
      continue;
    }
    std::uniform_int_distribution<int> lab(0, r - 2);
    for (int k = 0; k < samples; ++k) {
      Colouring col{std::vector<int>(fal.c), std::vector<int>(fal.s)};
      for (auto& a : col.circle) a = lab(rng);
      for (auto& i : col.strand) i = lab(rng);
      auto ref = jones::coloured_jones_modulus(variants[0], ctx, col);
      for (std::size_t v = 1; v < variants.size(); ++v) {
        auto got = jones::coloured_jones_modulus(variants[v], ctx, col);
        c.record(same_modulus(ref, got), "variant " + std::to_string(v) + " disagrees at c=" + std::to_string(fal.c));
      }
    }
  }
  return c;
}

Check route_agreement(const std::vector<falcomb::FALDescriptor>& links, const std::vector<int>& r_list) {
  Check c{"evaluation routes"};
  for (const auto& fal : links) {
    auto plan = jones::compile_plan(fal);
    for (int r : r_list) {
      auto ctx = qkernel::make_context(r);
      qkernel::SignedLogAccumulator acc;
      std::vector<int> all(plan.c + plan.s, 0);
      while (true) {
        Colouring col{std::vector<int>(all.begin(), all.begin() + plan.c),
                      std::vector<int>(all.begin() + plan.c, all.end())};
        auto a = jones::coloured_jones_modulus(plan, ctx, col);
        auto b = jones::coloured_jones_nested(plan, ctx, col);
        bool ok = (a.modulus.is_zero() && b.modulus.is_zero()) ||
                  (!a.modulus.is_zero() && !b.modulus.is_zero() && close_logmag(a.modulus.logmag, b.modulus.logmag, 1e-9));
        c.record(ok, "tree and nested sums differ at r=" + std::to_string(r));
        if (!b.modulus.is_zero()) acc.add({1, 2 * b.modulus.logmag});
        std::size_t k = 0;
        while (k < all.size() && ++all[k] == ctx.m) all[k++] = 0;
        if (k == all.size()) break;
      }
      double pre = (plan.c + plan.s - 1) * std::log(2.0) + std::log(tv::eta_prime_sq(ctx));
      auto tvr = tv::turaev_viro(plan, ctx, {1, true});
      c.record(close_logmag(tvr.value.logmag, pre + acc.result().value.logmag, 1e-10),
               "TV disagrees with the plain sum at r=" + std::to_string(r));
    }
  }
  return c;
}

std::vector<Check> run_all(const Hooks& hooks) {
  std::vector<int> sign_rs;
  for (int r = 5; r <= 51; r += 2) sign_rs.push_back(r);
  auto borromean = falcomb::fal_from_text(*falcomb::builtin_script("borromean"));
  auto short_scripts = falcomb::enumerate_descriptors(1, false);
  std::vector<falcomb::FALDescriptor> builtins;
  for (const auto& name : falcomb::builtin_names()) builtins.push_back(falcomb::fal_from_text(*falcomb::builtin_script(name)));
  auto audit_links = builtins;
  audit_links.insert(audit_links.end(), short_scripts.begin(), short_scripts.end());

  std::vector<Check> out;
  out.push_back(delta_lambda_signs(sign_rs, hooks.lambda));
  out.push_back(six_j_signs(sign_rs));
  out.push_back(n_signs({borromean, short_scripts.back()}, {5, 7, 9, 11, 13, 15, 17, 19, 21}));
  out.push_back(theta_cancellation(audit_links, 9, 10, 1, hooks.theta));
  out.push_back(pop_invariance(falcomb::enumerate_descriptors(2, false), 9, 3, 2));
  out.push_back(route_agreement({borromean, builtins[1]}, {5, 7}));
  return out;
}

}  // namespace qtv::selftest
