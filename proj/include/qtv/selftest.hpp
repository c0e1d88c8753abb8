#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qtv/falcomb.hpp"
#include "qtv/jones.hpp"
#include "qtv/qkernel.hpp"

namespace qtv::selftest {

using qkernel::RootContext;

struct Check {
  explicit Check(std::string n = {}) : name(std::move(n)) {}

  std::string name;
  bool pass = true;
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::string first_failure;

  void record(bool ok, const std::string& what);
};

using LambdaFn = std::function<double(const RootContext&, int, int)>;

// Sign of Delta_j and lambda_{j,n_r} over every even j with (n_r, n_r, j)
// admissible: Delta_j > 0 exactly when j <= (r-3)/2, and lambda carries the
// sign of Delta_j when r = 3 mod 4, the opposite sign when r = 1 mod 4.
Check delta_lambda_signs(const std::vector<int>& r_list, const LambdaFn& lambda = qkernel::lambda_coeff);

// 6j(n_r, n_r, j1; n_r, n_r, j2) is positive for r = 3 mod 4 and negative for
// r = 1 mod 4, and its z-sum terms share one sign.
Check six_j_signs(const std::vector<int>& r_list);

// N at all colours n_r has the sign of the diagonal 6j for every admissible
// jvec, on flat descriptors.
Check n_signs(const std::vector<falcomb::FALDescriptor>& links, const std::vector<int>& r_list);

// The ledger thetas multiply to 1 at random admissible labels, the ledger
// cancels as an exponent multiset, and theta is anchored by theta(a,a,0) =
// Delta_a and its symmetry.
Check theta_cancellation(const std::vector<falcomb::FALDescriptor>& links, int r, int samples, std::uint64_t seed,
                         const jones::ThetaFn& theta_fn = networks::theta);

// Equal to tol in logmag. A sum that cancelled below the taint ratio only
// resolves zero, so it agrees with another tainted sum or an exact zero and
// with nothing else.
bool same_modulus(const jones::JonesResult& a, const jones::JonesResult& b, double tol = 1e-9);

// Every plan variant gives the same |J| on random colourings.
Check pop_invariance(const std::vector<falcomb::FALDescriptor>& links, int r, int samples, std::uint64_t seed);

// Tree elimination agrees with nested loops, and TV agrees with a plain sum of
// nested |J|^2.
Check route_agreement(const std::vector<falcomb::FALDescriptor>& links, const std::vector<int>& r_list);

struct Hooks {
  LambdaFn lambda = qkernel::lambda_coeff;
  jones::ThetaFn theta = networks::theta;
};

std::vector<Check> run_all(const Hooks& hooks = {});

}  // namespace qtv::selftest
