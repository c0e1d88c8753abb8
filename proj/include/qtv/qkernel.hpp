#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qtv/signed_log.hpp"

namespace qtv::qkernel {

enum class Precision { Double, DoubleDouble };

Precision parse_precision(const std::string& s);
std::string to_string(Precision p);

struct ContextError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RangeError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

struct AdmissibilityError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RootContext {
  int r = 0;
  int m = 0;
  int n_r = 0;
  std::complex<double> q;
  std::complex<double> A;
  Precision precision = Precision::Double;
  // [n]! for 0 <= n <= r-1; the low words carry the compensation term of the
  // running log sum for the double-double mode.
  std::vector<SignedLog> qfact_log;
  std::vector<double> qfact_log_lo;
};

RootContext make_context(int r, Precision precision = Precision::Double);

// sin(pi * p / q) with p reduced modulo 2q in integer arithmetic.
double sin_pi_ratio(std::int64_t p, std::int64_t q);

double quantum_int(const RootContext& ctx, int n);
SignedLog quantum_factorial(const RootContext& ctx, int n);
double delta(const RootContext& ctx, int j);
double lambda_coeff(const RootContext& ctx, int n, int a);
LogPolar gamma_coeff(const RootContext& ctx, int a, int b, int c, int crossing_sign);

bool is_admissible_triple(const RootContext& ctx, int a, int b, int c);
bool is_admissible_6tuple(const RootContext& ctx, int i, int j, int k, int l, int m, int n);

}  // namespace qtv::qkernel
