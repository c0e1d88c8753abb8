#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "qtv/jones.hpp"
#include "qtv/qkernel.hpp"

namespace qtv::tv {

using jones::EvaluationPlan;
using qkernel::Precision;
using qkernel::RootContext;
using qkernel::SignedLog;

double eta_prime_sq(const RootContext& ctx);
double target_volume(int c);

struct TVOptions {
  int workers = 0;  // 0: hardware concurrency
  // Partial sums are always merged in colouring order; this additionally runs
  // the sweep on a single thread.
  bool deterministic = false;
};

struct TVResult {
  SignedLog value;
  bool tainted = false;
  std::size_t colourings = 0;
  std::size_t tainted_jones = 0;
  double relative_error_bound = 0.0;
};

// Sum over Jones-Wenzl labels 0..m-1 on every component.
TVResult turaev_viro(const EvaluationPlan& plan, const RootContext& ctx, const TVOptions& opts = {});

struct GrowthEntry {
  int r;
  double value;
  bool tainted = false;
  bool unverified = false;
};

struct Fit {
  double V_est;
  double coef_logr;
  double coef_inv;
  double residual_norm;
};

struct FitError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct GrowthSeries {
  std::vector<GrowthEntry> entries;
  double target = 0.0;
  std::optional<Fit> fit;
  bool upper_bound_only = false;  // twisted links: no lower-bound verdict
};

// Least squares of value against V + a log(r)/r + b/r over untainted,
// verified entries.
Fit fit_growth(const GrowthSeries& series);

GrowthSeries tv_growth_series(const EvaluationPlan& plan, const std::vector<int>& r_list, const TVOptions& opts = {},
                              Precision precision = Precision::Double);

// (2pi/r) * 2 log|N| at all colours and all summation labels n_r.
double diagonal_growth(const EvaluationPlan& plan, const RootContext& ctx);
GrowthSeries diagonal_growth_series(const EvaluationPlan& plan, const std::vector<int>& r_list,
                                    Precision precision = Precision::Double);

// (4pi/(2m+1)) log|J| at r = 2m+1 with every colour m. full selects the whole
// sum; otherwise the single diagonal term stands in for it.
double cj_growth(const EvaluationPlan& plan, int m, bool full, Precision precision = Precision::Double);
GrowthSeries cj_growth_series(const EvaluationPlan& plan, const std::vector<int>& m_list, int full_max_m = 50,
                              Precision precision = Precision::Double);

struct UpperBoundCheck {
  double C = 0.0;        // smallest C with value <= target + C log r / r on the series
  double C_allowed = 0;  // 2 pi (n + 4c): degree of the polynomial prefactors
  bool holds = false;
};

UpperBoundCheck upper_bound_check(const GrowthSeries& series, int n, int c);

}  // namespace qtv::tv
