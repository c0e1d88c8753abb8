#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "qtv/qkernel.hpp"

namespace qtv::networks {

using qkernel::RootContext;
using qkernel::SignedLog;

// Columns (i,l), (j,m), (k,n); faces (i,j,k), (j,l,n), (i,m,n), (k,l,m).
struct Tuple6 {
  int i = 0, j = 0, k = 0, l = 0, m = 0, n = 0;

  std::array<int, 6> as_array() const { return {i, j, k, l, m, n}; }
  static Tuple6 from_array(const std::array<int, 6>& a) { return {a[0], a[1], a[2], a[3], a[4], a[5]}; }
  std::array<int, 4> T() const;
  std::array<int, 3> Q() const;
  std::array<std::array<int, 3>, 4> faces() const;
  bool operator==(const Tuple6&) const = default;
};

struct Tuple6Hash {
  std::size_t operator()(const Tuple6& t) const;
};

struct ThetaArgs {
  int a, b, c;
  int x() const { return (a + b - c) / 2; }
  int y() const { return (b + c - a) / 2; }
  int z() const { return (c + a - b) / 2; }
};

struct ContractError : std::logic_error {
  using std::logic_error::logic_error;
};

bool is_admissible(const RootContext& ctx, const Tuple6& t);

SignedLog theta(const RootContext& ctx, int a, int b, int c);

struct SixJDetail {
  SignedLog value;        // real coefficient; the symbol is value * (imaginary ? i : 1)
  bool imaginary = false;
  int term_count = 0;
  bool terms_share_sign = true;
  bool tainted = false;
};

SixJDetail six_j_detail(const RootContext& ctx, const Tuple6& t);
// Throws ContractError when the symbol is purely imaginary.
SignedLog six_j(const RootContext& ctx, const Tuple6& t);
// six_j times the square root of the product of the four face thetas.
SignedLog tet(const RootContext& ctx, const Tuple6& t);

class SixJTable {
 public:
  SixJTable(const RootContext& ctx, const std::array<std::vector<int>, 6>& ranges);
  const SixJDetail* find(const Tuple6& t) const;
  std::size_t size() const { return table_.size(); }

 private:
  std::unordered_map<Tuple6, SixJDetail, Tuple6Hash> table_;
};

// Growth of the diagonal symbol with all six labels equal to the even choice
// among (r-1)/2 and (r-3)/2.
double six_j_growth(const RootContext& ctx);
// Diagonal mixing labels (r-1)/2 and the even choice; reported, not asserted.
double six_j_growth_mixed(const RootContext& ctx);

}  // namespace qtv::networks
