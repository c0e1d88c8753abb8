#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "qtv/falcomb.hpp"
#include "qtv/networks.hpp"
#include "qtv/qkernel.hpp"

namespace qtv::jones {

using qkernel::LogPolar;
using qkernel::RootContext;
using qkernel::SignedLog;

struct PlanError : std::logic_error {
  using std::logic_error::logic_error;
};

// A label position: either a summation slot or a strand component.
struct Entry {
  bool slot = false;
  int index = 0;
  bool operator==(const Entry&) const = default;
};

// One 6j factor, in the order (strand, strand, head; strand, strand, base).
struct SixJFactor {
  std::array<Entry, 6> entries;
  std::array<int, 6> nerve_edges;
  int head_slot;
  int base_slot;
};

struct ThetaRecord {
  std::array<Entry, 3> args;
  std::array<int, 3> face;  // sorted nerve edge ids of the triangle it sits on
  int twice_exponent;       // -1 or +1: a half power of theta
};

struct EvaluationPlan {
  int c = 0;
  int s = 0;
  std::vector<int> slot_edge;
  std::vector<std::array<int, 2>> circle_pairs;
  std::map<int, int> twists;  // slot -> crossing sign
  std::vector<SixJFactor> sixj_factors;
  std::vector<int> pop_centers;
  std::optional<std::vector<ThetaRecord>> theta_ledger;

  bool flat() const { return twists.empty(); }
};

// Circle colours a_1..a_c and strand colours i_1..i_s, as Jones-Wenzl labels.
struct Colouring {
  std::vector<int> circle;
  std::vector<int> strand;
};

EvaluationPlan compile_plan(const falcomb::FALDescriptor& fal, bool verify_theta = false);
EvaluationPlan compile_plan_with_pops(const falcomb::FALDescriptor& fal, const std::vector<int>& pop_centers,
                                      bool verify_theta = false);
// Every valid pop order, up to limit plans.
std::vector<EvaluationPlan> plan_variants(const falcomb::FALDescriptor& fal, std::size_t limit = 10000);

std::vector<int> slot_range(const EvaluationPlan& plan, const RootContext& ctx, const std::vector<int>& strand, int slot);

LogPolar evaluate_N(const EvaluationPlan& plan, const RootContext& ctx, const Colouring& col, const std::vector<int>& jvec);

struct JonesResult {
  SignedLog modulus;
  LogPolar value;
  double max_term_logmag = -std::numeric_limits<double>::infinity();
  double term_count = 0;
  bool tainted = false;
};

// Sum over all admissible jvec by elimination along the slot-sharing tree.
JonesResult coloured_jones_modulus(const EvaluationPlan& plan, const RootContext& ctx, const Colouring& col);
// Same sum by plain nested loops over evaluate_N.
JonesResult coloured_jones_nested(const EvaluationPlan& plan, const RootContext& ctx, const Colouring& col);

// Reusable evaluator: fix the strand colours once, then sweep circle colours.
// Messages are cached per subtree, so sweeping with the root slot innermost
// costs O(R) per colouring instead of O(c R^2).
class JonesEvaluator {
 public:
  JonesEvaluator(const EvaluationPlan& plan, const RootContext& ctx);
  void set_strands(const std::vector<int>& strand);
  JonesResult evaluate(const std::vector<int>& circle);
  // Slots ordered root first; sweeping circle colours with later slots in
  // outer loops maximises cache hits.
  const std::vector<int>& slot_order() const { return order_; }

 private:
  struct Cell {
    double L;
    std::complex<double> z;
  };
  struct Message {
    std::vector<double> L;
    std::vector<std::complex<double>> z;
    std::vector<double> maxL;
    std::vector<int> key;
    bool valid = false;
  };
  void node_weight(int u, const std::vector<int>& circle, std::vector<double>& L, std::vector<std::complex<double>>& z,
                   std::vector<double>& maxL);

  const EvaluationPlan& plan_;
  const RootContext& ctx_;
  int root_ = 0;
  std::vector<int> order_;
  std::vector<int> parent_, parent_factor_;
  std::vector<std::vector<int>> children_;
  std::vector<std::vector<int>> subtree_;
  std::vector<int> strand_;
  std::vector<std::vector<int>> range_;
  std::vector<std::vector<Cell>> psi_;  // per factor, row-major parent x child
  std::vector<Message> msg_;
  std::unordered_map<networks::Tuple6, networks::SixJDetail, networks::Tuple6Hash> memo_;
};

using ThetaFn = std::function<SignedLog(const RootContext&, int, int, int)>;

struct ThetaAudit {
  SignedLog residual;
  bool real = true;
};

ThetaAudit theta_audit(const EvaluationPlan& plan, const RootContext& ctx, const Colouring& col,
                       const std::vector<int>& jvec, const ThetaFn& theta_fn = networks::theta);
bool theta_ledger_balanced(const EvaluationPlan& plan);

// Labels of each 6j position for a colouring and jvec.
networks::Tuple6 factor_tuple(const SixJFactor& f, const Colouring& col, const std::vector<int>& jvec);

}  // namespace qtv::jones
