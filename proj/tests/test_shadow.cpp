#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "qtv/falcomb.hpp"
#include "qtv/link_script.hpp"
#include "qtv/shadow.hpp"

using namespace qtv::shadow;
namespace fc = qtv::falcomb;

namespace {

const std::array<D3, 6> all_d3{D3::e, D3::r1, D3::r2, D3::s0, D3::s1, D3::s2};

}  // namespace

TEST_CASE("D3 is a group acting by permutations") {
  for (D3 a : all_d3) {
    CHECK(compose(a, D3::e) == a);
    CHECK(compose(D3::e, a) == a);
    CHECK(compose(a, inverse(a)) == D3::e);
    CHECK(parse_d3(to_string(a)) == a);
    auto p = permutation(a);
    for (D3 b : all_d3) {
      auto q = permutation(b), pq = permutation(compose(a, b));
      for (int k = 0; k < 3; ++k) CHECK(pq[k] == p[q[k]]);
      for (D3 c : all_d3) CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
    }
    if (is_reflection(a)) CHECK(compose(a, a) == D3::e);
  }
  CHECK(compose(D3::r1, D3::r1) == D3::r2);
  CHECK_FALSE(parse_d3("r3").has_value());
  CHECK(compose(D3::s0, D3::s1) != compose(D3::s1, D3::s0));
}

TEST_CASE("Borromean basic graphs") {
  for (bool a : {false, true})
    for (bool b : {false, true}) {
      auto g = borromean_basic_graph(a, b);
      CHECK(g.n_vertices == 1);
      CHECK(g.edges.size() == 2);
      CHECK(g.degree(0) == 4);
      CHECK(g.edges[0].label == (a ? D3::s0 : D3::e));
      CHECK(g.edges[1].label == (b ? D3::s0 : D3::e));
      CHECK(validate(g).empty());
    }
}

TEST_CASE("graph move") {
  auto g = graph_move(borromean_basic_graph(false, true), 1, true);
  CHECK(g.n_vertices == 2);
  REQUIRE(g.edges.size() == 4);
  CHECK(validate(g).empty());
  CHECK(g.edges[1].u == 1);
  CHECK(g.edges[1].v == 0);
  CHECK_FALSE(g.edges[1].crossing_circle);
  CHECK(g.edges[1].label == D3::e);
  CHECK(g.edges[2].label == D3::s0);
  CHECK(g.edges[2].crossing_circle);
  CHECK(g.edges[3].u == 1);
  CHECK(g.edges[3].v == 1);
  CHECK(g.edges[3].label == D3::s0);
  int cc = 0;
  for (const auto& e : g.edges) cc += e.crossing_circle;
  CHECK(cc == 3);

  CHECK_THROWS_AS(graph_move(g, 1, false), GraphError);
  CHECK_THROWS_AS(graph_move(g, 9, false), GraphError);
  CHECK_THROWS_AS(graph_move(g, 3, false, 0), GraphError);

  GluingGraph h = g;
  for (int k = 0; k < 5; ++k) {
    h = graph_move(h, static_cast<int>(h.edges.size()) - 1, k % 2 == 0);
    CHECK(validate(h).empty());
    CHECK(h.edges.size() == 2 * static_cast<std::size_t>(h.n_vertices));
  }
}

TEST_CASE("validate reports broken graphs") {
  GluingGraph g = borromean_basic_graph(false, false);
  g.edges[0].label.reset();
  CHECK_FALSE(validate(g).empty());
  g = borromean_basic_graph(false, false);
  g.edges[0].crossing_circle = false;
  CHECK_FALSE(validate(g).empty());
  g = graph_move(borromean_basic_graph(false, false), 0, false);
  g.edges[1].label = D3::r1;
  CHECK_FALSE(validate(g).empty());
  g.edges.pop_back();
  CHECK(validate(g).size() >= 2);
  g = borromean_basic_graph(false, false);
  g.edges[1].v = 3;
  CHECK_FALSE(validate(g).empty());
}

TEST_CASE("descriptor to gluing graph") {
  for (const auto& fal : fc::enumerate_descriptors(3, true)) {
    auto g = fal_to_gluing_graph(fal);
    CHECK(validate(g).empty());
    CHECK(g.n_vertices == fal.c - 1);
    CHECK(shadow_volume(g) == doctest::Approx(fc::fal_volume(fal)).epsilon(1e-12));
    int cc = 0, twisted = 0;
    for (const auto& e : g.edges) {
      cc += e.crossing_circle;
      twisted += e.label == D3::s0;
      if (e.crossing_circle) CHECK(fal.dimer.is_red(e.red_edge));
      if (e.crossing_circle) CHECK((e.label == D3::s0) == (fal.twists.count(e.red_edge) > 0));
    }
    CHECK(cc == fal.c);
    CHECK(twisted == static_cast<int>(fal.twists.size()));
  }
}

TEST_CASE("text form is deterministic and canonical keys are invariant") {
  auto fal = fc::fal_from_text("dimer 0 5\nsubdivide 1\nsubdivide 6\ntwist 5 +\n");
  auto g = fal_to_gluing_graph(fal);
  CHECK(to_text(g) == to_text(fal_to_gluing_graph(fal)));
  CHECK(to_text(g).rfind("vertices 3\n", 0) == 0);

  // relabel vertices by reversing
  GluingGraph h = g;
  for (auto& e : h.edges) {
    e.u = g.n_vertices - 1 - e.u;
    e.v = g.n_vertices - 1 - e.v;
  }
  std::reverse(h.edges.begin(), h.edges.end());
  CHECK(canonical_key(h) == canonical_key(g));
  CHECK(oracle::isomorphic(g, h));

  GluingGraph k = g;
  for (auto& e : k.edges)
    if (e.crossing_circle && e.label == D3::e) {
      e.label = D3::s0;
      break;
    }
  CHECK(canonical_key(k) != canonical_key(g));
  CHECK_FALSE(oracle::isomorphic(g, k));
}

TEST_CASE("reachable keys grow with the number of moves") {
  auto keys = reachable_keys(2);
  REQUIRE(keys.size() == 3);
  CHECK(keys[0].size() == 3);  // the two one-twist graphs coincide
  CHECK(keys[1].size() > 0);
  for (const auto& fal : fc::enumerate_descriptors(2, true)) {
    int moves = static_cast<int>(fal.nerve.script.size());
    CHECK(keys[moves].count(canonical_key(fal_to_gluing_graph(fal))) == 1);
  }
}
