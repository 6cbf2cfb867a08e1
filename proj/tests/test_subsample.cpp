#include <doctest.h>

#include <cmath>

#include "broomkit/cleanup.hpp"
#include "broomkit/generate.hpp"
#include "broomkit/restructure.hpp"
#include "broomkit/subsample.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace broomkit;

TEST_CASE("parameter validation") {
  SubsampleParams p;
  CHECK_NOTHROW(p.validate());
  p.p_keep = 0.0;
  CHECK_THROWS(p.validate());
  p.p_keep = 1.5;
  CHECK_THROWS(p.validate());
  p = {};
  p.broom_target = 0;
  CHECK_THROWS(p.validate());
  p = {};
  p.outdeg_floor = -1;
  CHECK_THROWS(p.validate());
}

TEST_CASE("keeping every arc gives H = D in zero rounds") {
  auto b = from_out_regular(testing::complete(4), 1);
  SubsampleParams p;
  p.outdeg_floor = 2;
  auto s = sample_good_subdigraph(b, p);
  CHECK(s.success);
  CHECK(s.rounds == 0);
  CHECK(s.kept == b.graph);
  CHECK(s.low_in_roots.empty());

  p.outdeg_floor = 3;
  auto f = sample_good_subdigraph(b, p);
  CHECK_FALSE(f.success);
  CHECK_FALSE(f.failure.empty());
}

TEST_CASE("floor zero succeeds once every full vertex keeps an arc") {
  auto b = from_out_regular(gen_out_regular(200, 6, 4), 1);
  SubsampleParams p;
  p.p_keep = 0.5;
  p.outdeg_floor = 0;
  p.seed = 9;
  auto s = sample_good_subdigraph(b, p);
  REQUIRE(s.success);
  for (Vertex u : s.full_degree) CHECK(s.kept.out_degree(u) >= 1);
}

TEST_CASE("resampled samples satisfy the literal degree recount") {
  auto b = from_out_regular(gen_out_regular(400, 16, 1), 2);
  SubsampleParams p;
  p.p_keep = 0.25;
  p.outdeg_floor = 1;
  p.indeg_root_threshold = 16.0;
  p.seed = 5;
  auto s = sample_good_subdigraph(b, p);
  REQUIRE(s.success);
  CHECK(s.violated_low_out.empty());
  CHECK(s.violated_high_in.empty());
  for (Vertex u : s.full_degree) CHECK(s.kept.out_degree(u) > p.outdeg_floor);
  for (Vertex w : s.low_in_roots) CHECK(s.kept.in_degree(w) <= 1);
  for (auto [u, v] : s.kept.arcs()) CHECK(b.graph.has_arc(u, v));
  // fixed seed, same run
  auto again = sample_good_subdigraph(b, p);
  CHECK(again.kept == s.kept);
  CHECK(again.rounds == s.rounds);
}

TEST_CASE("lovasz_trick degenerates to star brooms on the complete digraph") {
  auto b = from_out_regular(testing::complete(5), 1);
  SubsampleParams p;
  p.broom_target = 2;
  auto r = lovasz_trick(b, p);
  REQUIRE(r);
  CHECK(r.value->roots == VertexSet{0, 1, 2, 3, 4});
  CHECK(r.value->d == 2);
  CHECK(r.degenerate_roots == 5);
  for (const auto& br : r.value->brooms) CHECK(br.ell == 1);
  CHECK(validate_broom_digraph(r.value->graph, r.value->roots, r.value->certificate().brooms, r.value->k,
                               r.value->d));
}

TEST_CASE("lovasz_trick fails on a 3-cycle") {
  auto b = from_out_regular(testing::cycle(3), 1);
  auto r = lovasz_trick(b, SubsampleParams{});
  CHECK_FALSE(r);
  CHECK(r.failed_step == "roots");
}

TEST_CASE("lovasz_trick on a moderately sized instance") {
  auto b = from_out_regular(gen_out_regular(600, 24, 2), 2);
  SubsampleParams p;
  p.p_keep = 0.25;
  p.outdeg_floor = 2;
  p.indeg_root_threshold = std::pow(24.0, 0.1);
  p.broom_target = 2;
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    p.seed = seed;
    auto r = lovasz_trick(b, p);
    if (!r) {
      CHECK(r.failed_step != "assemble");
      continue;
    }
    ++ok;
    const auto& v = *r.value;
    CHECK(validate_broom_digraph(v.graph, v.roots, v.certificate().brooms, v.k, v.d));
    for (auto rep : r.in_degrees) CHECK(rep.original_in_degree >= p.indeg_root_threshold);
    for (auto [x, y] : v.graph.arcs()) CHECK(b.graph.has_arc(x, y));
  }
  CHECK(ok >= 1);
}

TEST_CASE("local lemma product") {
  CHECK(local_lemma_product(64) > 1.0);
  CHECK(local_lemma_product(1 << 30) < local_lemma_product(64));
}

TEST_CASE("clean_up strict mode rejects desk-scale degrees") {
  auto b = from_out_regular(testing::complete(4), 2);
  b.d = 1'000'000;
  auto r = clean_up(b, CleanupMode::strict, SubsampleParams{});
  CHECK_FALSE(r);
  CHECK(r.failure.find("10^104") != std::string::npos);
  CHECK(strict_exponent(2) == 104.0);
}

TEST_CASE("clean_up parametric mode yields a k-typed broom digraph") {
  auto b = from_out_regular(testing::complete(6), 2);
  SubsampleParams p;
  p.broom_target = 4;
  auto r = clean_up(b, CleanupMode::parametric, p);
  REQUIRE(r);
  CHECK(is_typed(*r.value, 2));
  CHECK(testing::typed_by_walks(*r.value, 2, oracle::walk_endpoints));
  CHECK(r.typed_degree == 2);
  CHECK(r.in_degrees.size() == r.value->roots.size());

  auto one = clean_up(b, CleanupMode::parametric, p, 1);
  REQUIRE(one);
  CHECK(one.value->d == 1);
  for (const auto& br : one.value->brooms)
    for (auto [u, v] : br.arcs) CHECK(one.value->graph.out_degree(u) == 1);
  CHECK(validate_broom_digraph(one.value->graph, one.value->roots, one.value->certificate().brooms, 2, 1));

  auto over = clean_up(b, CleanupMode::parametric, p, 3);
  CHECK_FALSE(over);
}
