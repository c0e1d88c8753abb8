#include "qtv/signed_log.hpp"

#include <cmath>
#include <numbers>

namespace qtv::qkernel {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void neumaier(double& s, double& c, double x) {
  double t = s + x;
  if (std::abs(s) >= std::abs(x))
    c += (s - t) + x;
  else
    c += (x - t) + s;
  s = t;
}

}  // namespace

SignedLog SignedLog::from_double(double x) {
  if (x == 0.0 || std::isnan(x)) return zero();
  return {x > 0 ? 1 : -1, std::log(std::abs(x))};
}

SignedLog SignedLog::from_log(int sign, double logmag) {
  if (sign == 0 || logmag == kNegInf) return zero();
  return {sign > 0 ? 1 : -1, logmag};
}

double SignedLog::to_double() const {
  if (sign == 0) return 0.0;
  return sign * std::exp(logmag);
}

SignedLog SignedLog::inverse() const {
  if (sign == 0) return {0, std::numeric_limits<double>::infinity()};
  return {sign, -logmag};
}

SignedLog operator*(SignedLog a, SignedLog b) {
  if (a.sign == 0 || b.sign == 0) return SignedLog::zero();
  return {a.sign * b.sign, a.logmag + b.logmag};
}

SignedLog operator/(SignedLog a, SignedLog b) { return a * b.inverse(); }

SignedLog operator-(SignedLog a) { return {-a.sign, a.logmag}; }

SignedLog pow(SignedLog a, int k) {
  if (k == 0) return SignedLog::one();
  if (a.sign == 0) return SignedLog::zero();
  return {(k % 2 != 0) ? a.sign : 1, a.logmag * k};
}

void SignedLogAccumulator::add(SignedLog x) {
  if (x.sign == 0) return;
  (x.sign > 0 ? pos_ : neg_) = true;
  if (x.logmag > max_) {
    if (max_ != kNegInf) {
      double f = std::exp(max_ - x.logmag);
      sum_ *= f;
      comp_ *= f;
    }
    max_ = x.logmag;
  }
  neumaier(sum_, comp_, x.sign * std::exp(x.logmag - max_));
}

SumResult SignedLogAccumulator::result() const {
  SumResult r;
  r.max_logmag = max_;
  double s = sum_ + comp_;
  if (max_ == kNegInf || s == 0.0) {
    r.value = SignedLog::zero();
    r.tainted = pos_ && neg_;
    return r;
  }
  r.value = {s > 0 ? 1 : -1, max_ + std::log(std::abs(s))};
  r.tainted = pos_ && neg_ && std::abs(s) < kTaintRatio;
  return r;
}

SumResult sum(std::span<const SignedLog> terms) {
  SignedLogAccumulator acc;
  for (const auto& t : terms) acc.add(t);
  return acc.result();
}

double wrap_phase(double phase) {
  constexpr double two_pi = 2 * std::numbers::pi;
  double p = std::remainder(phase, two_pi);
  if (p <= -std::numbers::pi) p += two_pi;
  return p;
}

LogPolar LogPolar::make(double logmag, double phase) {
  if (logmag == kNegInf) return zero();
  return {logmag, wrap_phase(phase)};
}

LogPolar LogPolar::from_signed_log(SignedLog x) {
  if (x.sign == 0) return zero();
  return {x.logmag, x.sign > 0 ? 0.0 : std::numbers::pi};
}

std::complex<double> LogPolar::to_complex() const {
  if (is_zero()) return {0.0, 0.0};
  return std::polar(std::exp(logmag), phase);
}

int LogPolar::real_sign(double tol) const {
  if (is_zero()) return 0;
  if (std::abs(phase) <= tol) return 1;
  if (std::numbers::pi - std::abs(phase) <= tol) return -1;
  return 0;
}

LogPolar operator*(LogPolar a, LogPolar b) {
  if (a.is_zero() || b.is_zero()) return LogPolar::zero();
  return LogPolar::make(a.logmag + b.logmag, a.phase + b.phase);
}

void ComplexAccumulator::rescale(double new_max) {
  if (max_ != kNegInf) {
    double f = std::exp(max_ - new_max);
    re_ *= f;
    re_c_ *= f;
    im_ *= f;
    im_c_ *= f;
  }
  max_ = new_max;
}

void ComplexAccumulator::add(double logmag, std::complex<double> unit) {
  if (logmag == kNegInf || unit == std::complex<double>{}) return;
  if (logmag > max_) rescale(logmag);
  double s = std::exp(logmag - max_);
  neumaier(re_, re_c_, s * unit.real());
  neumaier(im_, im_c_, s * unit.imag());
}

double ComplexAccumulator::logmag() const {
  double m = std::hypot(re_ + re_c_, im_ + im_c_);
  if (max_ == kNegInf || m == 0.0) return kNegInf;
  return max_ + std::log(m);
}

std::complex<double> ComplexAccumulator::unit() const {
  std::complex<double> z{re_ + re_c_, im_ + im_c_};
  double m = std::abs(z);
  return m == 0.0 ? std::complex<double>{} : z / m;
}

bool ComplexAccumulator::tainted() const {
  if (max_ == kNegInf) return false;
  return std::hypot(re_ + re_c_, im_ + im_c_) < SignedLogAccumulator::kTaintRatio;
}

LogPolar ComplexAccumulator::value() const {
  double lm = logmag();
  if (lm == kNegInf) return LogPolar::zero();
  return LogPolar::make(lm, std::arg(unit()));
}

DoubleDouble dd_add(DoubleDouble a, double b) {
  double s = a.hi + b;
  double bb = s - a.hi;
  double err = (a.hi - (s - bb)) + (b - bb);
  err += a.lo;
  double hi = s + err;
  return {hi, err - (hi - s)};
}

DoubleDouble dd_add(DoubleDouble a, DoubleDouble b) {
  DoubleDouble s = dd_add(a, b.hi);
  return dd_add(s, b.lo);
}

DoubleDouble dd_neg(DoubleDouble a) { return {-a.hi, -a.lo}; }

}  // namespace qtv::qkernel
