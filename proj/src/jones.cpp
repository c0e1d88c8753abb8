#include "qtv/jones.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <set>

namespace qtv::jones {

using falcomb::FALDescriptor;
using falcomb::Nerve;
using networks::Tuple6;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

using Tri = std::array<int, 3>;

struct Pop {
  std::array<int, 3> removed;  // indices into the current triangle list
  int A, B, C;
};

// A degree-3 vertex x can be popped when exactly one spoke xC is red and the
// opposite link edge AB is red; A -> B -> C runs counterclockwise.
std::optional<Pop> try_pop(const std::vector<Tri>& cur, int x, const FALDescriptor& fal) {
  std::vector<int> idx;
  for (int k = 0; k < static_cast<int>(cur.size()); ++k)
    if (cur[k][0] == x || cur[k][1] == x || cur[k][2] == x) idx.push_back(k);
  if (idx.size() != 3 || cur.size() <= 4) return std::nullopt;
  std::map<int, int> nxt;
  for (int k : idx) {
    Tri t = cur[k];
    while (t[0] != x) std::rotate(t.begin(), t.begin() + 1, t.end());
    nxt[t[1]] = t[2];
  }
  if (nxt.size() != 3) return std::nullopt;
  std::array<int, 3> cyc;
  cyc[0] = nxt.begin()->first;
  cyc[1] = nxt.at(cyc[0]);
  cyc[2] = nxt.at(cyc[1]);
  if (nxt.at(cyc[2]) != cyc[0]) return std::nullopt;
  const Nerve& N = fal.nerve;
  int red_spokes = 0, k_red = -1;
  for (int k = 0; k < 3; ++k) {
    if (fal.dimer.is_red(N.edge_id(x, cyc[k]))) {
      ++red_spokes;
      k_red = k;
    }
  }
  if (red_spokes != 1) return std::nullopt;
  Pop p;
  p.C = cyc[k_red];
  p.A = cyc[(k_red + 1) % 3];
  p.B = cyc[(k_red + 2) % 3];
  if (!fal.dimer.is_red(N.edge_id(p.A, p.B))) return std::nullopt;
  p.removed = {idx[0], idx[1], idx[2]};
  return p;
}

std::vector<Tri> live_triangles(const Nerve& N) {
  std::vector<Tri> cur;
  for (int t : N.live_triangles()) cur.push_back(N.triangles[t]);
  return cur;
}

void apply_pop(std::vector<Tri>& cur, const Pop& p) {
  std::array<int, 3> r = p.removed;
  std::sort(r.begin(), r.end(), std::greater<>());
  for (int k : r) cur.erase(cur.begin() + k);
  cur.push_back({p.A, p.B, p.C});
}

std::array<int, 3> sorted3(std::array<int, 3> a) {
  std::sort(a.begin(), a.end());
  return a;
}

std::vector<int> centers_in_order(const Nerve& N) {
  std::vector<int> out;
  for (auto it = N.script.rbegin(); it != N.script.rend(); ++it) out.push_back(it->center);
  return out;
}

}  // namespace

EvaluationPlan compile_plan(const FALDescriptor& fal, bool verify_theta) {
  return compile_plan_with_pops(fal, centers_in_order(fal.nerve), verify_theta);
}

EvaluationPlan compile_plan_with_pops(const FALDescriptor& fal, const std::vector<int>& pop_centers,
                                      bool verify_theta) {
  const Nerve& N = fal.nerve;
  auto tr = falcomb::trace_strands(fal);
  EvaluationPlan plan;
  plan.c = fal.c;
  plan.s = tr.s;
  plan.slot_edge = tr.slot_edge;
  plan.circle_pairs = tr.incidence;
  plan.pop_centers = pop_centers;
  std::map<int, int> slot_of;
  for (int k = 0; k < static_cast<int>(tr.slot_edge.size()); ++k) slot_of[tr.slot_edge[k]] = k;
  for (auto [e, sign] : fal.twists) plan.twists[slot_of.at(e)] = sign;

  auto entry = [&](int e) {
    return fal.dimer.is_red(e) ? Entry{true, slot_of.at(e)} : Entry{false, tr.component[e]};
  };
  std::vector<ThetaRecord> ledger;
  auto record = [&](std::array<int, 3> edges, int twice) {
    if (verify_theta) ledger.push_back({{entry(edges[0]), entry(edges[1]), entry(edges[2])}, sorted3(edges), twice});
  };
  auto eid = [&](int u, int v) { return N.edge_id(u, v); };

  for (int d : plan.slot_edge) {
    for (int t : N.edge_triangles(d)) {
      auto te = N.triangle_edges(t);
      int k = static_cast<int>(std::find(te.begin(), te.end(), d) - te.begin());
      record({te[(k + 1) % 3], te[(k + 2) % 3], d}, -1);
    }
  }

  std::vector<Tri> cur = live_triangles(N);
  for (int x : pop_centers) {
    auto p = try_pop(cur, x, fal);
    if (!p) throw PlanError("vertex " + std::to_string(x) + " cannot be popped in head/base position");
    int A = p->A, B = p->B, C = p->C;
    std::array<int, 6> e{eid(x, A), eid(x, B), eid(A, B), eid(B, C), eid(C, A), eid(x, C)};
    SixJFactor f;
    for (int k = 0; k < 6; ++k) f.entries[k] = entry(e[k]);
    f.nerve_edges = e;
    f.head_slot = slot_of.at(e[2]);
    f.base_slot = slot_of.at(e[5]);
    plan.sixj_factors.push_back(f);
    record({e[0], e[1], e[2]}, 1);
    record({e[1], e[3], e[5]}, 1);
    record({e[0], e[4], e[5]}, 1);
    record({e[2], e[3], e[4]}, -1);
    apply_pop(cur, *p);
  }

  if (cur.size() != 4) throw PlanError("pops did not reduce the nerve to a tetrahedron");
  std::set<int> edges;
  for (const auto& t : cur)
    for (auto [u, v] : {std::pair{t[0], t[1]}, {t[1], t[2]}, {t[2], t[0]}}) edges.insert(eid(u, v));
  std::vector<int> red;
  for (int e : edges)
    if (fal.dimer.is_red(e)) red.push_back(e);
  if (red.size() != 2) throw PlanError("final tetrahedron does not carry two red edges");
  int a = N.edges[red[0]][0], b = N.edges[red[0]][1];
  int c = N.edges[red[1]][0], d = N.edges[red[1]][1];
  std::array<int, 6> e{eid(c, a), eid(b, c), eid(a, b), eid(b, d), eid(a, d), eid(c, d)};
  SixJFactor f;
  for (int k = 0; k < 6; ++k) f.entries[k] = entry(e[k]);
  f.nerve_edges = e;
  f.head_slot = slot_of.at(e[2]);
  f.base_slot = slot_of.at(e[5]);
  plan.sixj_factors.push_back(f);
  record({e[0], e[1], e[2]}, 1);
  record({e[1], e[3], e[5]}, 1);
  record({e[0], e[4], e[5]}, 1);
  record({e[2], e[3], e[4]}, 1);

  if (static_cast<int>(plan.sixj_factors.size()) != plan.c - 1) throw PlanError("wrong number of 6j factors");
  if (verify_theta) plan.theta_ledger = std::move(ledger);
  return plan;
}

std::vector<EvaluationPlan> plan_variants(const FALDescriptor& fal, std::size_t limit) {
  std::vector<std::vector<int>> orders;
  std::vector<int> seq;
  auto rec = [&](auto&& self, std::vector<Tri>& cur) -> void {
    if (orders.size() >= limit) return;
    if (cur.size() == 4) {
      orders.push_back(seq);
      return;
    }
    std::set<int> verts;
    for (const auto& t : cur) verts.insert(t.begin(), t.end());
    for (int x : verts) {
      auto p = try_pop(cur, x, fal);
      if (!p) continue;
      std::vector<Tri> next = cur;
      apply_pop(next, *p);
      seq.push_back(x);
      self(self, next);
      seq.pop_back();
    }
  };
  std::vector<Tri> cur = live_triangles(fal.nerve);
  rec(rec, cur);
  std::vector<EvaluationPlan> out;
  for (const auto& o : orders) out.push_back(compile_plan_with_pops(fal, o));
  return out;
}

std::vector<int> slot_range(const EvaluationPlan& plan, const RootContext& ctx, const std::vector<int>& strand, int slot) {
  int p = strand.at(plan.circle_pairs[slot][0]);
  int q = strand.at(plan.circle_pairs[slot][1]);
  std::vector<int> out;
  for (int j = std::abs(p - q); j <= p + q; j += 2)
    if (qkernel::is_admissible_triple(ctx, p, q, j)) out.push_back(j);
  return out;
}

Tuple6 factor_tuple(const SixJFactor& f, const Colouring& col, const std::vector<int>& jvec) {
  std::array<int, 6> a{};
  for (int k = 0; k < 6; ++k) a[k] = f.entries[k].slot ? jvec.at(f.entries[k].index) : col.strand.at(f.entries[k].index);
  return Tuple6::from_array(a);
}

namespace {

LogPolar sixj_polar(const networks::SixJDetail& d) {
  if (d.value.is_zero()) return LogPolar::zero();
  double phase = (d.value.sign < 0 ? std::numbers::pi : 0.0) + (d.imaginary ? std::numbers::pi / 2 : 0.0);
  return LogPolar::make(d.value.logmag, phase);
}

LogPolar circle_factor(const EvaluationPlan& plan, const RootContext& ctx, const Colouring& col, int l, int j) {
  double v = qkernel::delta(ctx, j) * qkernel::lambda_coeff(ctx, j, col.circle.at(l));
  LogPolar f = LogPolar::from_signed_log(SignedLog::from_double(v));
  auto it = plan.twists.find(l);
  if (it != plan.twists.end()) {
    int p = col.strand.at(plan.circle_pairs[l][0]);
    int q = col.strand.at(plan.circle_pairs[l][1]);
    f = f * qkernel::gamma_coeff(ctx, p, q, j, it->second);
  }
  return f;
}

}  // namespace

LogPolar evaluate_N(const EvaluationPlan& plan, const RootContext& ctx, const Colouring& col, const std::vector<int>& jvec) {
  LogPolar acc = LogPolar::one();
  for (int l = 0; l < plan.c; ++l) {
    int p = col.strand.at(plan.circle_pairs[l][0]);
    int q = col.strand.at(plan.circle_pairs[l][1]);
    if (!qkernel::is_admissible_triple(ctx, p, q, jvec.at(l))) return LogPolar::zero();
    acc = acc * circle_factor(plan, ctx, col, l, jvec[l]);
  }
  for (const auto& f : plan.sixj_factors) {
    Tuple6 t = factor_tuple(f, col, jvec);
    if (!networks::is_admissible(ctx, t)) return LogPolar::zero();
    acc = acc * sixj_polar(networks::six_j_detail(ctx, t));
  }
  return acc;
}

namespace {

JonesResult finish(const qkernel::ComplexAccumulator& acc, double max_term, double count) {
  JonesResult r;
  r.value = acc.value();
  r.modulus = r.value.is_zero() ? SignedLog::zero() : SignedLog{1, r.value.logmag};
  r.max_term_logmag = max_term;
  r.term_count = count;
  if (max_term != kNegInf) {
    double rel = r.value.is_zero() ? kNegInf : r.value.logmag - max_term;
    r.tainted = rel < std::log(qkernel::SignedLogAccumulator::kTaintRatio);
  }
  return r;
}

}  // namespace

JonesResult coloured_jones_nested(const EvaluationPlan& plan, const RootContext& ctx, const Colouring& col) {
  std::vector<std::vector<int>> ranges;
  double count = 1;
  for (int l = 0; l < plan.c; ++l) {
    ranges.push_back(slot_range(plan, ctx, col.strand, l));
    count *= static_cast<double>(ranges.back().size());
  }
  qkernel::ComplexAccumulator acc;
  double mx = kNegInf;
  std::vector<int> jvec(plan.c);
  auto rec = [&](auto&& self, int l) -> void {
    if (l == plan.c) {
      LogPolar n = evaluate_N(plan, ctx, col, jvec);
      if (n.is_zero()) return;
      acc.add(n);
      mx = std::max(mx, n.logmag);
      return;
    }
    for (int j : ranges[l]) {
      jvec[l] = j;
      self(self, l + 1);
    }
  };
  rec(rec, 0);
  return finish(acc, mx, count);
}

JonesResult coloured_jones_modulus(const EvaluationPlan& plan, const RootContext& ctx, const Colouring& col) {
  JonesEvaluator ev(plan, ctx);
  ev.set_strands(col.strand);
  return ev.evaluate(col.circle);
}

JonesEvaluator::JonesEvaluator(const EvaluationPlan& plan, const RootContext& ctx) : plan_(plan), ctx_(ctx) {
  int c = plan.c;
  std::vector<std::vector<std::pair<int, int>>> adj(c);
  for (int f = 0; f < static_cast<int>(plan.sixj_factors.size()); ++f) {
    int a = plan.sixj_factors[f].head_slot, b = plan.sixj_factors[f].base_slot;
    adj[a].push_back({b, f});
    adj[b].push_back({a, f});
  }
  root_ = plan.sixj_factors.empty() ? 0 : plan.sixj_factors.back().head_slot;
  parent_.assign(c, -1);
  parent_factor_.assign(c, -1);
  children_.assign(c, {});
  std::vector<bool> seen(c, false);
  std::deque<int> queue{root_};
  seen[root_] = true;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    order_.push_back(u);
    for (auto [v, f] : adj[u]) {
      if (seen[v]) continue;
      seen[v] = true;
      parent_[v] = u;
      parent_factor_[v] = f;
      children_[u].push_back(v);
      queue.push_back(v);
    }
  }
  if (static_cast<int>(order_.size()) != c || static_cast<int>(plan.sixj_factors.size()) != c - 1)
    throw PlanError("slot-sharing graph is not a tree");
  subtree_.assign(c, {});
  for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
    int u = *it;
    subtree_[u].push_back(u);
    for (int ch : children_[u]) subtree_[u].insert(subtree_[u].end(), subtree_[ch].begin(), subtree_[ch].end());
  }
  msg_.assign(c, {});
}

void JonesEvaluator::set_strands(const std::vector<int>& strand) {
  strand_ = strand;
  int c = plan_.c;
  range_.assign(c, {});
  for (int l = 0; l < c; ++l) range_[l] = slot_range(plan_, ctx_, strand, l);
  psi_.assign(plan_.sixj_factors.size(), {});
  Colouring col{{}, strand};
  std::vector<int> jvec(c, 0);
  for (int u : order_) {
    if (u == root_) continue;
    int f = parent_factor_[u], p = parent_[u];
    const auto& fac = plan_.sixj_factors[f];
    auto& cells = psi_[f];
    cells.resize(range_[p].size() * range_[u].size());
    for (std::size_t ip = 0; ip < range_[p].size(); ++ip) {
      for (std::size_t iu = 0; iu < range_[u].size(); ++iu) {
        jvec[p] = range_[p][ip];
        jvec[u] = range_[u][iu];
        Tuple6 t = factor_tuple(fac, col, jvec);
        Cell cell{kNegInf, {0.0, 0.0}};
        if (networks::is_admissible(ctx_, t)) {
          auto it = memo_.find(t);
          if (it == memo_.end()) it = memo_.emplace(t, networks::six_j_detail(ctx_, t)).first;
          const auto& d = it->second;
          if (!d.value.is_zero()) {
            cell.L = d.value.logmag;
            double s = d.value.sign;
            cell.z = d.imaginary ? std::complex<double>{0.0, s} : std::complex<double>{s, 0.0};
          }
        }
        cells[ip * range_[u].size() + iu] = cell;
      }
    }
  }
  for (auto& m : msg_) m.valid = false;
}

void JonesEvaluator::node_weight(int u, const std::vector<int>& circle, std::vector<double>& L,
                                 std::vector<std::complex<double>>& z, std::vector<double>& maxL) {
  const auto& rg = range_[u];
  L.assign(rg.size(), kNegInf);
  z.assign(rg.size(), {0.0, 0.0});
  maxL.assign(rg.size(), kNegInf);
  Colouring col{circle, strand_};
  for (std::size_t k = 0; k < rg.size(); ++k) {
    LogPolar f = circle_factor(plan_, ctx_, col, u, rg[k]);
    if (f.is_zero()) continue;
    double l = f.logmag;
    std::complex<double> w = std::polar(1.0, f.phase);
    double mx = l;
    for (int ch : children_[u]) {
      const auto& m = msg_[ch];
      l += m.L[k];
      w *= m.z[k];
      mx += m.maxL[k];
    }
    if (l == kNegInf || std::isnan(l)) continue;
    L[k] = l;
    z[k] = w;
    maxL[k] = mx;
  }
}

JonesResult JonesEvaluator::evaluate(const std::vector<int>& circle) {
  if (static_cast<int>(circle.size()) != plan_.c) throw std::invalid_argument("circle colouring has wrong length");
  std::vector<double> L, maxL;
  std::vector<std::complex<double>> z;
  for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
    int u = *it;
    if (u == root_) continue;
    std::vector<int> key;
    for (int v : subtree_[u]) key.push_back(circle[v]);
    auto& m = msg_[u];
    if (m.valid && m.key == key) continue;
    node_weight(u, circle, L, z, maxL);
    int p = parent_[u];
    const auto& cells = psi_[parent_factor_[u]];
    std::size_t ru = range_[u].size(), rp = range_[p].size();
    m.L.assign(rp, kNegInf);
    m.z.assign(rp, {0.0, 0.0});
    m.maxL.assign(rp, kNegInf);
    for (std::size_t ip = 0; ip < rp; ++ip) {
      qkernel::ComplexAccumulator acc;
      double mx = kNegInf;
      for (std::size_t iu = 0; iu < ru; ++iu) {
        const Cell& c = cells[ip * ru + iu];
        if (c.L == kNegInf || L[iu] == kNegInf) continue;
        acc.add(c.L + L[iu], c.z * z[iu]);
        mx = std::max(mx, c.L + maxL[iu]);
      }
      m.L[ip] = acc.logmag();
      m.z[ip] = acc.unit();
      m.maxL[ip] = mx;
    }
    m.key = std::move(key);
    m.valid = true;
  }
  node_weight(root_, circle, L, z, maxL);
  qkernel::ComplexAccumulator acc;
  double mx = kNegInf;
  for (std::size_t k = 0; k < L.size(); ++k) {
    if (L[k] == kNegInf) continue;
    acc.add(L[k], z[k]);
    mx = std::max(mx, maxL[k]);
  }
  double count = 1;
  for (const auto& rg : range_) count *= static_cast<double>(rg.size());
  return finish(acc, mx, count);
}

ThetaAudit theta_audit(const EvaluationPlan& plan, const RootContext& ctx, const Colouring& col,
                       const std::vector<int>& jvec, const ThetaFn& theta_fn) {
  if (!plan.theta_ledger) throw PlanError("plan compiled without a theta ledger");
  double logmag = 0.0;
  int quarter_turns = 0;
  for (const auto& rec : *plan.theta_ledger) {
    std::array<int, 3> v{};
    for (int k = 0; k < 3; ++k) v[k] = rec.args[k].slot ? jvec.at(rec.args[k].index) : col.strand.at(rec.args[k].index);
    SignedLog th = theta_fn(ctx, v[0], v[1], v[2]);
    if (th.is_zero()) throw PlanError("vanishing theta in the ledger");
    logmag += 0.5 * rec.twice_exponent * th.logmag;
    if (th.sign < 0) quarter_turns += rec.twice_exponent;
  }
  int q = ((quarter_turns % 4) + 4) % 4;
  ThetaAudit out;
  out.real = (q % 2) == 0;
  out.residual = {q == 2 ? -1 : 1, logmag};
  return out;
}

bool theta_ledger_balanced(const EvaluationPlan& plan) {
  if (!plan.theta_ledger) return false;
  std::map<std::array<int, 3>, int> total;
  for (const auto& rec : *plan.theta_ledger) total[rec.face] += rec.twice_exponent;
  return std::all_of(total.begin(), total.end(), [](const auto& kv) { return kv.second == 0; });
}

}  // namespace qtv::jones
