#include "qtv/falcomb.hpp"

#include <algorithm>
#include <tuple>

namespace qtv::falcomb {

namespace {

std::pair<int, int> key(int u, int v) { return u < v ? std::pair{u, v} : std::pair{v, u}; }

int add_edge(Nerve& n, int u, int v) {
  auto k = key(u, v);
  int id = static_cast<int>(n.edges.size());
  n.edges.push_back({k.first, k.second});
  n.edge_index.emplace(k, id);
  return id;
}

std::vector<std::array<int, 2>> edge_table(const Nerve& nerve) {
  std::vector<std::array<int, 2>> out(nerve.edges.size(), {-1, -1});
  for (int t : nerve.live_triangles()) {
    for (int e : nerve.triangle_edges(t)) {
      if (out[e][0] < 0)
        out[e][0] = t;
      else
        out[e][1] = t;
    }
  }
  return out;
}

}  // namespace

int Nerve::edge_id(int u, int v) const {
  auto it = edge_index.find(key(u, v));
  if (it == edge_index.end())
    throw NerveError("no edge between vertices " + std::to_string(u) + " and " + std::to_string(v));
  return it->second;
}

std::optional<int> Nerve::find_edge(int u, int v) const {
  auto it = edge_index.find(key(u, v));
  if (it == edge_index.end()) return std::nullopt;
  return it->second;
}

std::array<int, 3> Nerve::triangle_edges(int t) const {
  const auto& [a, b, c] = triangles.at(t);
  return {edge_id(a, b), edge_id(b, c), edge_id(c, a)};
}

std::vector<int> Nerve::live_triangles() const {
  std::vector<int> out;
  for (int t = 0; t < static_cast<int>(triangles.size()); ++t)
    if (alive[t]) out.push_back(t);
  return out;
}

int Nerve::triangle_count() const {
  return static_cast<int>(std::count(alive.begin(), alive.end(), true));
}

std::array<int, 2> Nerve::edge_triangles(int e) const {
  std::array<int, 2> out{-1, -1};
  int k = 0;
  for (int t : live_triangles()) {
    auto te = triangle_edges(t);
    if (std::find(te.begin(), te.end(), e) != te.end() && k < 2) out[k++] = t;
  }
  return out;
}

Nerve k4_nerve() {
  Nerve n;
  n.n_vertices = 4;
  for (auto [u, v] : {std::pair{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}) add_edge(n, u, v);
  n.triangles = {{0, 1, 2}, {0, 3, 1}, {1, 3, 2}, {0, 2, 3}};
  n.alive.assign(4, true);
  return n;
}

Nerve central_subdivision(const Nerve& nerve, int t) {
  if (!nerve.has_triangle(t))
    throw NerveError("triangle " + std::to_string(t) + " is not present");
  Nerve n = nerve;
  auto [a, b, c] = n.triangles[t];
  int x = n.n_vertices++;
  SubdivisionStep step;
  step.triangle = t;
  step.corners = {a, b, c};
  step.center = x;
  step.spokes = {add_edge(n, x, a), add_edge(n, x, b), add_edge(n, x, c)};
  n.alive[t] = false;
  int first = static_cast<int>(n.triangles.size());
  n.triangles.push_back({a, b, x});
  n.triangles.push_back({b, c, x});
  n.triangles.push_back({c, a, x});
  n.alive.insert(n.alive.end(), 3, true);
  step.children = {first, first + 1, first + 2};
  n.script.push_back(step);
  return n;
}

std::vector<std::string> nerve_violations(const Nerve& nerve) {
  std::vector<std::string> out;
  std::vector<int> uses(nerve.edges.size(), 0);
  for (int t : nerve.live_triangles()) {
    auto [a, b, c] = nerve.triangles[t];
    if (a == b || b == c || a == c) {
      out.push_back("triangle " + std::to_string(t) + " has repeated vertices");
      continue;
    }
    for (auto [u, v] : {std::pair{a, b}, {b, c}, {c, a}}) {
      auto e = nerve.find_edge(u, v);
      if (!e)
        out.push_back("triangle " + std::to_string(t) + " uses a missing edge");
      else
        ++uses[*e];
    }
  }
  for (std::size_t e = 0; e < uses.size(); ++e) {
    if (uses[e] != 2)
      out.push_back("edge " + std::to_string(e) + " lies in " + std::to_string(uses[e]) + " triangles");
    if (nerve.edges[e][0] == nerve.edges[e][1]) out.push_back("edge " + std::to_string(e) + " is a loop");
  }
  int chi = nerve.n_vertices - nerve.edge_count() + nerve.triangle_count();
  if (chi != 2) out.push_back("Euler characteristic is " + std::to_string(chi));
  return out;
}

std::vector<int> Dimer::red_edges() const {
  std::vector<int> out;
  for (int e = 0; e < static_cast<int>(red.size()); ++e)
    if (red[e]) out.push_back(e);
  return out;
}

bool is_valid_dimer(const Nerve& nerve, const Dimer& dimer) {
  if (dimer.red.size() != nerve.edges.size()) return false;
  for (int t : nerve.live_triangles()) {
    int k = 0;
    for (int e : nerve.triangle_edges(t)) k += dimer.red[e] ? 1 : 0;
    if (k != 1) return false;
  }
  return true;
}

Dimer k4_dimer(const Nerve& k4, int e1, int e2) {
  int ne = k4.edge_count();
  if (e1 < 0 || e1 >= ne || e2 < 0 || e2 >= ne)
    throw DimerError("dimer edge id out of range");
  Dimer d;
  d.red.assign(ne, false);
  d.red[e1] = true;
  d.red[e2] = true;
  if (e1 == e2 || !is_valid_dimer(k4, d))
    throw DimerError("edges " + std::to_string(e1) + " and " + std::to_string(e2) +
                     " do not form a dimer");
  return d;
}

std::vector<int> dimer_extensions(const Nerve& nerve, const Dimer& old_dimer) {
  if (nerve.script.empty()) throw DimerError("nerve has no subdivision to extend across");
  const auto& step = nerve.script.back();
  std::vector<int> out;
  for (int mask = 0; mask < 8; ++mask) {
    Dimer d = old_dimer;
    d.red.resize(nerve.edges.size(), false);
    for (int k = 0; k < 3; ++k) d.red[step.spokes[k]] = (mask >> k) & 1;
    if (is_valid_dimer(nerve, d)) out.push_back(mask);
  }
  return out;
}

Dimer extend_dimer(const Nerve& nerve, const Dimer& old_dimer, std::optional<int> spoke) {
  auto masks = dimer_extensions(nerve, old_dimer);
  int chosen = -1;
  if (spoke) {
    if (*spoke < 0 || *spoke > 2) throw DimerError("spoke index must be 0, 1 or 2");
    if (std::find(masks.begin(), masks.end(), 1 << *spoke) != masks.end()) chosen = 1 << *spoke;
    if (chosen < 0) throw DimerError("spoke " + std::to_string(*spoke) + " does not extend the dimer");
  } else {
    for (int k = 0; k < 3 && chosen < 0; ++k)
      if (std::find(masks.begin(), masks.end(), 1 << k) != masks.end()) chosen = 1 << k;
    if (chosen < 0) throw DimerError("no valid dimer extension");
  }
  Dimer d = old_dimer;
  d.red.resize(nerve.edges.size(), false);
  for (int k = 0; k < 3; ++k) d.red[nerve.script.back().spokes[k]] = (chosen >> k) & 1;
  return d;
}

FALDescriptor make_descriptor(Nerve nerve, Dimer dimer, std::map<int, int> twists) {
  auto v = nerve_violations(nerve);
  if (!v.empty()) throw NerveError("invalid nerve: " + v.front());
  if (!is_valid_dimer(nerve, dimer)) throw DimerError("red edges do not form a dimer");
  for (auto [e, sign] : twists) {
    if (!dimer.is_red(e)) throw DimerError("twist on edge " + std::to_string(e) + " which is not red");
    if (sign != 1 && sign != -1) throw DimerError("twist sign must be +1 or -1");
  }
  FALDescriptor fal;
  fal.nerve = std::move(nerve);
  fal.dimer = std::move(dimer);
  fal.twists = std::move(twists);
  fal.c = static_cast<int>(fal.dimer.red_edges().size());
  fal.s = trace_strands(fal).s;
  return fal;
}

StrandTrace trace_strands(const Nerve& nerve, const Dimer& dimer, const std::map<int, int>& twists) {
  auto e2t = edge_table(nerve);
  auto rot = [&](int t, int e, int step) {
    auto te = nerve.triangle_edges(t);
    int k = static_cast<int>(std::find(te.begin(), te.end(), e) - te.begin());
    return te[(k + step) % 3];
  };
  auto succ = [&](int t, int e) { return rot(t, e, 1); };
  auto pred = [&](int t, int e) { return rot(t, e, 2); };

  std::map<std::pair<int, int>, std::pair<int, int>> link;
  auto join = [&](std::pair<int, int> x, std::pair<int, int> y) {
    link[x] = y;
    link[y] = x;
  };
  StrandTrace out;
  out.slot_edge = dimer.red_edges();
  for (int d : out.slot_edge) {
    int v = e2t[d][0], w = e2t[d][1];
    if (twists.count(d)) {
      join({v, succ(v, d)}, {w, succ(w, d)});
      join({v, pred(v, d)}, {w, pred(w, d)});
    } else {
      join({v, succ(v, d)}, {w, pred(w, d)});
      join({v, pred(v, d)}, {w, succ(w, d)});
    }
  }

  out.component.assign(nerve.edges.size(), -1);
  for (int e0 = 0; e0 < nerve.edge_count(); ++e0) {
    if (dimer.is_red(e0) || out.component[e0] >= 0) continue;
    int e = e0, t = e2t[e0][0];
    while (out.component[e] < 0) {
      out.component[e] = out.s;
      int t2 = e2t[e][0] == t ? e2t[e][1] : e2t[e][0];
      std::tie(t, e) = link.at({t2, e});
    }
    ++out.s;
  }

  for (int d : out.slot_edge) {
    int v = e2t[d][0];
    int a = out.component[succ(v, d)], b = out.component[pred(v, d)];
    out.incidence.push_back({std::min(a, b), std::max(a, b)});
  }
  return out;
}

TrivalentNetwork dual_network(const FALDescriptor& fal) {
  const Nerve& nerve = fal.nerve;
  auto trace = trace_strands(fal);
  auto e2t = edge_table(nerve);
  TrivalentNetwork net;
  net.vertices = nerve.live_triangles();
  std::map<int, int> slot_of;
  for (int k = 0; k < static_cast<int>(trace.slot_edge.size()); ++k) slot_of[trace.slot_edge[k]] = k;
  for (int e = 0; e < nerve.edge_count(); ++e) {
    NetworkEdge ne{e, e2t[e][0], e2t[e][1], fal.dimer.is_red(e), -1, -1};
    if (ne.dimer)
      ne.slot = slot_of[e];
    else
      ne.component = trace.component[e];
    net.edges.push_back(ne);
  }
  for (int t : net.vertices) net.rotation[t] = nerve.triangle_edges(t);
  for (auto it = nerve.script.rbegin(); it != nerve.script.rend(); ++it)
    net.pop_script.push_back({it->center, it->triangle});
  return net;
}

double fal_volume(const FALDescriptor& fal) { return 2.0 * (fal.c - 1) * kV8; }

namespace {

void grow(const Nerve& nerve, const Dimer& dimer, int depth, int max_depth, bool with_twists,
          std::vector<FALDescriptor>& out) {
  if (with_twists) {
    auto red = dimer.red_edges();
    for (unsigned mask = 0; mask < (1u << red.size()); ++mask) {
      std::map<int, int> tw;
      for (std::size_t k = 0; k < red.size(); ++k)
        if (mask >> k & 1u) tw[red[k]] = 1;
      out.push_back(make_descriptor(nerve, dimer, tw));
    }
  } else {
    out.push_back(make_descriptor(nerve, dimer));
  }
  if (depth == max_depth) return;
  for (int t : nerve.live_triangles()) {
    Nerve next = central_subdivision(nerve, t);
    for (int mask : dimer_extensions(next, dimer)) {
      for (int k = 0; k < 3; ++k)
        if (mask == (1 << k)) grow(next, extend_dimer(next, dimer, k), depth + 1, max_depth, with_twists, out);
    }
  }
}

}  // namespace

std::vector<FALDescriptor> enumerate_descriptors(int max_subdivisions, bool with_twists) {
  std::vector<FALDescriptor> out;
  Nerve k4 = k4_nerve();
  for (auto [a, b] : {std::pair{0, 5}, {1, 4}, {2, 3}})
    grow(k4, k4_dimer(k4, a, b), 0, max_subdivisions, with_twists, out);
  return out;
}

}  // namespace qtv::falcomb
