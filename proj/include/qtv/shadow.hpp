#pragma once

#include <array>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "qtv/falcomb.hpp"

namespace qtv::shadow {

// Symmetries of a triangle: identity, two rotations, three reflections.
// s0 is the reflection used for a half-twist.
enum class D3 { e, r1, r2, s0, s1, s2 };

std::array<int, 3> permutation(D3 g);
D3 compose(D3 a, D3 b);  // a after b
D3 inverse(D3 g);
std::string to_string(D3 g);
std::optional<D3> parse_d3(const std::string& s);
inline bool is_reflection(D3 g) { return g == D3::s0 || g == D3::s1 || g == D3::s2; }

struct GraphError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct GluingEdge {
  int u, v;
  std::optional<D3> label;
  bool crossing_circle = false;
  int red_edge = -1;  // red nerve edge this crossing-circle edge stands for
};

struct GluingGraph {
  int n_vertices = 0;
  std::vector<GluingEdge> edges;

  int degree(int v) const;
};

GluingGraph borromean_basic_graph(bool twist_first, bool twist_second);

// Replaces edge e by a new vertex v1 joined to both ends of e plus a loop.
// v1 joins `attach` (default: the lower-indexed end) by an identity edge that
// is not a crossing circle; it joins the other end by an edge carrying e's
// label and flag. The loop is a crossing circle labelled s0 when twisted.
// The three new edges are appended in that order.
GluingGraph graph_move(const GluingGraph& g, int e, bool loop_twist, std::optional<int> attach = std::nullopt);

GluingGraph fal_to_gluing_graph(const falcomb::FALDescriptor& fal);

double shadow_volume(const GluingGraph& g);

std::vector<std::string> validate(const GluingGraph& g);

// Deterministic adjacency listing.
std::string to_text(const GluingGraph& g);

// Isomorphism-invariant key over vertex relabellings (labels and flags kept,
// red-edge tags dropped). Brute force; meant for small graphs.
std::string canonical_key(const GluingGraph& g);

// Canonical keys of every graph reachable from a Borromean basic graph by at
// most max_moves graph moves, indexed by number of moves.
std::vector<std::set<std::string>> reachable_keys(int max_moves);

}  // namespace qtv::shadow
