#include <doctest.h>

#include <algorithm>
#include <random>

#include "broomkit/broom.hpp"
#include "broomkit/generate.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace broomkit;
using testing::complete;
using testing::cycle;

namespace {

const std::vector<Arc> kSubdivided{{0, 1}, {1, 2}, {2, 3}, {2, 4}, {0, 5}, {5, 6}, {5, 7}};

std::vector<BroomSpec> stars(const Digraph& g) {
  std::vector<BroomSpec> out;
  for (Vertex r : g.live_vertices()) {
    BroomSpec s{r, {}};
    for (Vertex v : g.out(r)) s.arcs.emplace_back(r, v);
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST_CASE("validate_broom on the reference shapes") {
  auto star = validate_broom(std::vector<Arc>{{0, 1}, {0, 2}}, 0, 1, 2);
  REQUIRE(star);
  CHECK(star.broom->ell == 1);
  CHECK(star.broom->leaves == VertexSet{1, 2});

  std::vector<Arc> binary{{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}};
  auto bin = validate_broom(binary, 0, 2, 2);
  REQUIRE(bin);
  CHECK(bin.broom->ell == 2);

  auto sub = validate_broom(kSubdivided, 0, 1, 2);
  REQUIRE(sub);
  CHECK(sub.broom->ell == 2);
  CHECK(sub.broom->subdivision == VertexSet{1});
  CHECK(sub.broom->leaves == VertexSet{3, 4, 6, 7});
  CHECK(oracle::is_broom_by_enumeration(kSubdivided, 0, 1, 2));
}

TEST_CASE("validate_broom violations") {
  CHECK(validate_broom(std::vector<Arc>{}, 0, 1, 2).violation == BroomViolation::height_zero);
  CHECK(validate_broom(std::vector<Arc>{{0, 1}, {1, 0}}, 0, 1, 1).violation == BroomViolation::not_arborescence);
  CHECK(validate_broom(std::vector<Arc>{{0, 1}, {0, 2}, {0, 3}}, 0, 1, 2).violation == BroomViolation::wrong_degree);
  auto lopsided = validate_broom(std::vector<Arc>{{0, 1}, {0, 2}, {1, 3}, {1, 4}}, 0, 2, 2);
  CHECK_FALSE(lopsided);
  // subdivided arcs are only legal at ell = k + 1
  auto early = validate_broom(std::vector<Arc>{{0, 1}, {1, 2}, {1, 3}, {0, 4}}, 0, 2, 1);
  CHECK_FALSE(early);
  CHECK_FALSE(validate_broom(kSubdivided, 0, 2, 2));
}

TEST_CASE("validator matches the shape enumerator on small hand cases") {
  for (int k = 1; k <= 2; ++k)
    for (int d = 1; d <= 3; ++d)
      for (int ell = 1; ell <= k + 1; ++ell) {
        auto b = gen_broom(k, d, ell, {}, static_cast<std::uint64_t>(k * 100 + d * 10 + ell));
        CHECK(oracle::is_broom_by_enumeration(b.arcs, b.root, k, d));
        CHECK(validate_broom(b.arcs, b.root, k, d));
      }
}

TEST_CASE("broom digraph on the complete digraph") {
  auto k3 = complete(3);
  auto ok = validate_broom_digraph(k3, {0, 1, 2}, stars(k3), 4, 2);
  REQUIRE(ok);
  CHECK(ok.value->roots == VertexSet{0, 1, 2});

  auto missing = stars(k3);
  missing[0].arcs.pop_back();
  auto bad = validate_broom_digraph(k3, {0, 1, 2}, missing, 1, 2);
  CHECK_FALSE(bad);

  auto partial = stars(k3);
  auto one = validate_broom_digraph(k3, {0, 1, 2}, std::vector<BroomSpec>(partial.begin(), partial.begin() + 2), 1, 2);
  CHECK(one.clause == DigraphClause::missing_broom);
}

TEST_CASE("brooms sharing an internal vertex are rejected") {
  // roots 0,1 ; both brooms go through 2 to the leaves
  std::vector<Arc> arcs{{0, 2}, {1, 2}, {2, 0}, {2, 1}};
  auto g = Digraph::build(3, arcs);
  std::vector<BroomSpec> specs{{0, {{0, 2}, {2, 1}}}, {1, {{1, 2}, {2, 0}}}};
  auto check = validate_broom_digraph(g, {0, 1}, specs, 1, 1);
  CHECK_FALSE(check);
  CHECK(check.clause == DigraphClause::not_internally_disjoint);
  CHECK(std::find(check.witnesses.begin(), check.witnesses.end(), 2) != check.witnesses.end());
}

TEST_CASE("leaves outside R and internals in R are rejected") {
  auto g = Digraph::build(3, {{0, 1}, {1, 0}, {1, 2}});
  std::vector<BroomSpec> specs{{0, {{0, 1}}}, {1, {{1, 0}}}};
  CHECK_FALSE(validate_broom_digraph(g, {0, 1}, specs, 1, 1));
}

TEST_CASE("from_out_regular and trim_out_regular") {
  auto b = from_out_regular(complete(3), 5);
  CHECK(b.k == 5);
  CHECK(b.d == 2);
  CHECK(b.roots == VertexSet{0, 1, 2});

  auto c = from_out_regular(cycle(6), 1);
  CHECK(c.d == 1);

  auto uneven = Digraph::build(3, {{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}});
  CHECK_THROWS_AS(from_out_regular(uneven, 1), GraphError);

  auto t = trim_out_regular(complete(4), 2);
  CHECK(t.arcs() == std::vector<Arc>{{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}, {3, 0}, {3, 1}});
  auto k4 = complete(4);
  CHECK(trim_out_regular(k4, 3) == k4);
  CHECK_THROWS_AS(trim_out_regular(cycle(3), 2), GraphError);
}

TEST_CASE("source paths") {
  auto b = from_out_regular(complete(3), 1);
  CHECK(source_path(b, 1) == Walk{1});

  const auto bd = testing::subdivided_example();
  CHECK(source_path(bd, 2) == Walk{0, 1, 2});
  CHECK(source_path(bd, 5) == Walk{0, 5});

  // BFS from R in the reversed digraph reaches 2 along a unique path of length 2
  std::vector<Arc> rev;
  for (auto [u, v] : bd.graph.arcs()) rev.emplace_back(v, u);
  auto reversed = Digraph::build(bd.graph.n(), rev);
  CHECK(distance_to_set(reversed, std::vector<Vertex>{2})[0] == 2);
  CHECK(bd.graph.in_degree(2) == 1);
  CHECK(bd.graph.in_degree(1) == 1);

  CHECK(lemma_high_degree_check(bd, 0));
  CHECK(lemma_high_degree_check(bd, 5));
  CHECK(bd.graph.out_degree(5) == 2);
  CHECK_FALSE(lemma_high_degree_check(bd, 1));
}

TEST_CASE("vertices near the roots have out-degree d on generated broom digraphs") {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const int k = 1 + static_cast<int>(seed % 3);
    const int d = 1 + static_cast<int>(seed % 4);
    auto b = gen_broom_digraph(k, d, 90, {}, seed);
    auto dist = distance_to_set(b.graph, b.roots);
    for (Vertex v : b.graph.live_vertices()) {
      const bool near = dist[static_cast<std::size_t>(v)] >= 0 && dist[static_cast<std::size_t>(v)] <= k;
      CHECK(lemma_high_degree_check(b, v) == near);
      if (near) {
        CHECK(b.graph.out_degree(v) == d);
        ++checked;
      }
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("prune_degree keeps a valid broom digraph") {
  auto b = gen_broom_digraph(2, 4, 80, {}, 11);
  for (int target = 1; target <= 4; ++target) {
    auto p = prune_degree(b, target);
    CHECK(p.d == target);
    auto again = validate_broom_digraph(p.graph, p.roots, p.certificate().brooms, p.k, p.d);
    CHECK(again);
  }
  CHECK_THROWS_AS(prune_degree(b, 5), GraphError);
}
