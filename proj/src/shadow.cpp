#include "qtv/shadow.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

namespace qtv::shadow {

namespace {

constexpr std::array<D3, 6> kAll{D3::e, D3::r1, D3::r2, D3::s0, D3::s1, D3::s2};

}  // namespace

std::array<int, 3> permutation(D3 g) {
  switch (g) {
    case D3::e: return {0, 1, 2};
    case D3::r1: return {1, 2, 0};
    case D3::r2: return {2, 0, 1};
    case D3::s0: return {0, 2, 1};
    case D3::s1: return {2, 1, 0};
    case D3::s2: return {1, 0, 2};
  }
  return {0, 1, 2};
}

D3 compose(D3 a, D3 b) {
  auto pa = permutation(a), pb = permutation(b);
  std::array<int, 3> p{pa[pb[0]], pa[pb[1]], pa[pb[2]]};
  for (D3 g : kAll)
    if (permutation(g) == p) return g;
  return D3::e;
}

D3 inverse(D3 g) {
  for (D3 h : kAll)
    if (compose(g, h) == D3::e) return h;
  return D3::e;
}

std::string to_string(D3 g) {
  static const char* names[] = {"e", "r1", "r2", "s0", "s1", "s2"};
  return names[static_cast<int>(g)];
}

std::optional<D3> parse_d3(const std::string& s) {
  for (D3 g : kAll)
    if (to_string(g) == s) return g;
  return std::nullopt;
}

int GluingGraph::degree(int v) const {
  int d = 0;
  for (const auto& e : edges) d += (e.u == v) + (e.v == v);
  return d;
}

GluingGraph borromean_basic_graph(bool twist_first, bool twist_second) {
  GluingGraph g;
  g.n_vertices = 1;
  g.edges.push_back({0, 0, twist_first ? D3::s0 : D3::e, true, -1});
  g.edges.push_back({0, 0, twist_second ? D3::s0 : D3::e, true, -1});
  return g;
}

GluingGraph graph_move(const GluingGraph& g, int e, bool loop_twist, std::optional<int> attach) {
  if (e < 0 || e >= static_cast<int>(g.edges.size())) throw GraphError("graph move on a missing edge");
  const GluingEdge old = g.edges[e];
  if (!old.crossing_circle) throw GraphError("graph move on an edge that is not a crossing circle");
  int v2 = attach.value_or(std::min(old.u, old.v));
  if (v2 != old.u && v2 != old.v) throw GraphError("attachment vertex is not an end of the edge");
  int v3 = (v2 == old.u) ? old.v : old.u;
  GluingGraph out = g;
  out.edges.erase(out.edges.begin() + e);
  int v1 = out.n_vertices++;
  out.edges.push_back({v1, v2, D3::e, false, -1});
  out.edges.push_back({v1, v3, old.label, true, old.red_edge});
  out.edges.push_back({v1, v1, loop_twist ? D3::s0 : D3::e, true, -1});
  return out;
}

GluingGraph fal_to_gluing_graph(const falcomb::FALDescriptor& fal) {
  const auto& nerve = fal.nerve;
  auto red = fal.dimer.red_edges();
  std::vector<int> k4_red;
  for (int e : red)
    if (e < 6) k4_red.push_back(e);
  if (k4_red.size() != 2) throw GraphError("descriptor does not carry a dimer on its K4 base");

  GluingGraph g = borromean_basic_graph(fal.twists.count(k4_red[0]) > 0, fal.twists.count(k4_red[1]) > 0);
  g.edges[0].red_edge = k4_red[0];
  g.edges[1].red_edge = k4_red[1];

  std::map<int, int> block_of;
  for (int t = 0; t < 4; ++t) block_of[t] = 0;
  for (const auto& step : nerve.script) {
    int e = -1;
    for (int x : nerve.triangle_edges(step.triangle))
      if (fal.dimer.is_red(x)) e = x;
    int new_red = -1;
    for (int x : step.spokes)
      if (fal.dimer.is_red(x)) new_red = x;
    auto it = std::find_if(g.edges.begin(), g.edges.end(), [&](const GluingEdge& ge) { return ge.red_edge == e; });
    if (e < 0 || new_red < 0 || it == g.edges.end())
      throw GraphError("subdivision step without a matching crossing-circle edge");
    int attach = block_of.at(step.triangle);
    if (it->u != attach && it->v != attach)
      throw std::logic_error("crossing-circle edge does not touch the block of the subdivided triangle");
    g = graph_move(g, static_cast<int>(it - g.edges.begin()), fal.twists.count(new_red) > 0, attach);
    g.edges.back().red_edge = new_red;
    for (int ch : step.children) block_of[ch] = g.n_vertices - 1;
  }
  return g;
}

double shadow_volume(const GluingGraph& g) { return 2.0 * g.n_vertices * falcomb::kV8; }

std::vector<std::string> validate(const GluingGraph& g) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    const auto& e = g.edges[k];
    std::string id = "edge " + std::to_string(k);
    if (e.u < 0 || e.u >= g.n_vertices || e.v < 0 || e.v >= g.n_vertices) out.push_back(id + " has an end outside the vertex set");
    if (!e.label) out.push_back(id + " is unlabelled");
    if (e.u == e.v && !e.crossing_circle) out.push_back(id + " is a loop that is not a crossing circle");
    if (!e.crossing_circle && e.label && *e.label != D3::e) out.push_back(id + " is an attachment edge with a non-identity label");
  }
  for (int v = 0; v < g.n_vertices; ++v) {
    int d = g.degree(v);
    if (d != 4) out.push_back("vertex " + std::to_string(v) + " has degree " + std::to_string(d));
  }
  if (g.edges.size() != 2 * static_cast<std::size_t>(g.n_vertices))
    out.push_back("edge count " + std::to_string(g.edges.size()) + " is not twice the vertex count");
  return out;
}

std::string to_text(const GluingGraph& g) {
  std::vector<std::tuple<int, int, std::string, int, int>> rows;
  for (const auto& e : g.edges)
    rows.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v), e.label ? to_string(*e.label) : "?",
                      e.crossing_circle ? 1 : 0, e.red_edge);
  std::sort(rows.begin(), rows.end());
  std::ostringstream os;
  os << "vertices " << g.n_vertices << "\n";
  for (const auto& [u, v, lab, cc, red] : rows) {
    os << "edge " << u << " " << v << " " << lab << " " << (cc ? "crossing-circle" : "attachment");
    if (red >= 0) os << " red=" << red;
    os << "\n";
  }
  return os.str();
}

std::string canonical_key(const GluingGraph& g) {
  std::vector<int> perm(g.n_vertices);
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  bool first = true;
  do {
    std::vector<std::tuple<int, int, int, int>> rows;
    for (const auto& e : g.edges) {
      int a = perm[e.u], b = perm[e.v];
      rows.emplace_back(std::min(a, b), std::max(a, b), e.label ? static_cast<int>(*e.label) : -1, e.crossing_circle);
    }
    std::sort(rows.begin(), rows.end());
    std::ostringstream os;
    os << g.n_vertices << ':';
    for (const auto& [a, b, l, c] : rows) os << a << ',' << b << ',' << l << ',' << c << ';';
    std::string k = os.str();
    if (first || k < best) best = k;
    first = false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<std::set<std::string>> reachable_keys(int max_moves) {
  std::vector<std::set<std::string>> keys(max_moves + 1);
  std::vector<GluingGraph> frontier;
  for (auto [a, b] : {std::pair{false, false}, {true, false}, {false, true}, {true, true}}) {
    GluingGraph g = borromean_basic_graph(a, b);
    if (keys[0].insert(canonical_key(g)).second) frontier.push_back(g);
  }
  for (int k = 1; k <= max_moves; ++k) {
    std::vector<GluingGraph> next;
    for (const auto& g : frontier) {
      for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
        if (!g.edges[e].crossing_circle) continue;
        std::set<int> ends{g.edges[e].u, g.edges[e].v};
        for (int attach : ends) {
          for (bool tw : {false, true}) {
            GluingGraph h = graph_move(g, e, tw, attach);
            if (keys[k].insert(canonical_key(h)).second) next.push_back(std::move(h));
          }
        }
      }
    }
    frontier = std::move(next);
  }
  return keys;
}

}  // namespace qtv::shadow
