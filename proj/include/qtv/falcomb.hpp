#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qtv::falcomb {

// Volume of the regular ideal octahedron, 8 * Lobachevsky(pi/4).
inline constexpr double kV8 = 3.66386237670887606;

struct NerveError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DimerError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SubdivisionStep {
  int triangle;                 // retired triangle id
  std::array<int, 3> corners;   // its corners (a, b, c), counterclockwise
  int center;                   // new vertex x
  std::array<int, 3> spokes;    // edge ids x-a, x-b, x-c
  std::array<int, 3> children;  // triangle ids (a,b,x), (b,c,x), (c,a,x)
};

// Triangulation of the sphere grown from K4 by central subdivisions. Triangle
// ids are never reused: subdividing retires the old id and appends three.
struct Nerve {
  int n_vertices = 0;
  std::vector<std::array<int, 3>> triangles;
  std::vector<bool> alive;
  std::vector<std::array<int, 2>> edges;
  std::map<std::pair<int, int>, int> edge_index;
  std::vector<SubdivisionStep> script;

  int edge_id(int u, int v) const;
  std::optional<int> find_edge(int u, int v) const;
  // Edge ids (ab, bc, ca) of a triangle (a, b, c).
  std::array<int, 3> triangle_edges(int t) const;
  std::vector<int> live_triangles() const;
  int triangle_count() const;
  int edge_count() const { return static_cast<int>(edges.size()); }
  bool has_triangle(int t) const { return t >= 0 && t < static_cast<int>(triangles.size()) && alive[t]; }
  // The two live triangles containing an edge, lower id first.
  std::array<int, 2> edge_triangles(int e) const;
};

Nerve k4_nerve();
Nerve central_subdivision(const Nerve& nerve, int t);
std::vector<std::string> nerve_violations(const Nerve& nerve);

struct Dimer {
  std::vector<bool> red;  // indexed by edge id

  bool is_red(int e) const { return e >= 0 && e < static_cast<int>(red.size()) && red[e]; }
  std::vector<int> red_edges() const;
};

bool is_valid_dimer(const Nerve& nerve, const Dimer& dimer);
Dimer k4_dimer(const Nerve& k4, int e1, int e2);
// All extensions of old_dimer across the latest subdivision, as subsets of
// the three spokes (bit k set = spoke k red).
std::vector<int> dimer_extensions(const Nerve& nerve, const Dimer& old_dimer);
// Extends across the latest subdivision. spoke picks the red spoke; without it
// the lowest-index legal spoke is used.
Dimer extend_dimer(const Nerve& nerve, const Dimer& old_dimer, std::optional<int> spoke = std::nullopt);

struct FALDescriptor {
  Nerve nerve;
  Dimer dimer;
  std::map<int, int> twists;  // red edge id -> crossing sign
  int c = 0;
  int s = 0;

  int n() const { return c + s; }
  int octahedra() const { return c - 1; }
  bool flat() const { return twists.empty(); }
};

// Validates the dimer and twist map and fills c and s.
FALDescriptor make_descriptor(Nerve nerve, Dimer dimer, std::map<int, int> twists = {});

struct StrandTrace {
  int s = 0;
  std::vector<int> component;                  // by edge id; -1 on red edges
  std::vector<int> slot_edge;                  // red edge of each slot, ascending
  std::vector<std::array<int, 2>> incidence;   // strand components through each slot
};

StrandTrace trace_strands(const Nerve& nerve, const Dimer& dimer, const std::map<int, int>& twists);
inline StrandTrace trace_strands(const FALDescriptor& fal) {
  return trace_strands(fal.nerve, fal.dimer, fal.twists);
}

struct NetworkEdge {
  int nerve_edge;
  int v, w;  // dual vertices (triangle ids)
  bool dimer;
  int slot;       // dimer edges
  int component;  // strand edges
};

struct PopStep {
  int center;
  int triangle;  // the triangle restored by the pop
};

struct TrivalentNetwork {
  std::vector<int> vertices;
  std::vector<NetworkEdge> edges;
  std::map<int, std::array<int, 3>> rotation;  // dual vertex -> incident network edge indices
  std::vector<PopStep> pop_script;
};

TrivalentNetwork dual_network(const FALDescriptor& fal);

double fal_volume(const FALDescriptor& fal);

// Every descriptor reachable by up to max_subdivisions subdivisions from each
// K4 dimer, over every legal dimer extension. With twists, every subset of the
// red edges is additionally given a positive half-twist.
std::vector<FALDescriptor> enumerate_descriptors(int max_subdivisions, bool with_twists = false);

}  // namespace qtv::falcomb
