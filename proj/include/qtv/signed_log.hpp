#pragma once

#include <complex>
#include <limits>
#include <span>

namespace qtv::qkernel {

// Real number as exact sign plus natural log of the magnitude.
struct SignedLog {
  int sign = 0;
  double logmag = 0.0;

  static SignedLog zero() { return {}; }
  static SignedLog one() { return {1, 0.0}; }
  static SignedLog from_double(double x);
  static SignedLog from_log(int sign, double logmag);

  bool is_zero() const { return sign == 0; }
  double to_double() const;
  SignedLog inverse() const;
  SignedLog abs() const { return sign == 0 ? zero() : SignedLog{1, logmag}; }
};

SignedLog operator*(SignedLog a, SignedLog b);
SignedLog operator/(SignedLog a, SignedLog b);
SignedLog operator-(SignedLog a);
SignedLog pow(SignedLog a, int k);

struct SumResult {
  SignedLog value;
  bool tainted = false;
  double max_logmag = -std::numeric_limits<double>::infinity();
};

// Online max-shifted Neumaier summation. The running sum is rescaled whenever
// a larger term arrives, so no terms are stored.
class SignedLogAccumulator {
 public:
  void add(SignedLog x);
  SumResult result() const;
  static constexpr double kTaintRatio = 1e-9;

 private:
  double max_ = -std::numeric_limits<double>::infinity();
  double sum_ = 0.0;
  double comp_ = 0.0;
  bool pos_ = false;
  bool neg_ = false;
};

SumResult sum(std::span<const SignedLog> terms);

// exp(logmag + i*phase); logmag = -inf encodes zero.
struct LogPolar {
  double logmag = -std::numeric_limits<double>::infinity();
  double phase = 0.0;

  static LogPolar zero() { return {}; }
  static LogPolar one() { return {0.0, 0.0}; }
  static LogPolar from_signed_log(SignedLog x);
  static LogPolar make(double logmag, double phase);

  bool is_zero() const { return logmag == -std::numeric_limits<double>::infinity(); }
  LogPolar conj() const { return make(logmag, -phase); }
  std::complex<double> to_complex() const;
  // Sign when the phase is 0 or pi to within tol; 0 otherwise.
  int real_sign(double tol = 1e-9) const;
};

LogPolar operator*(LogPolar a, LogPolar b);
double wrap_phase(double phase);

// Complex sum with max-magnitude scaling; taint when the modulus of the result
// drops below kTaintRatio times the largest term.
class ComplexAccumulator {
 public:
  void add(double logmag, std::complex<double> unit);
  void add(LogPolar x) { add(x.logmag, std::polar(1.0, x.phase)); }
  double logmag() const;
  std::complex<double> unit() const;
  double max_logmag() const { return max_; }
  bool tainted() const;
  LogPolar value() const;

 private:
  void rescale(double new_max);
  double max_ = -std::numeric_limits<double>::infinity();
  double re_ = 0, re_c_ = 0, im_ = 0, im_c_ = 0;
};

// Two-term unevaluated sum used by the double-double precision mode.
struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;
};

DoubleDouble dd_add(DoubleDouble a, DoubleDouble b);
DoubleDouble dd_add(DoubleDouble a, double b);
DoubleDouble dd_neg(DoubleDouble a);

}  // namespace qtv::qkernel
