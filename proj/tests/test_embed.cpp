#include <doctest.h>

#include <algorithm>
#include <set>

#include "broomkit/embed.hpp"
#include "broomkit/generate.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace broomkit;
using testing::complete;
using testing::cycle;
using testing::tree;

namespace {

bool has_case(const ConstructiveResult& r, EmbedCase c) {
  return std::any_of(r.trace.begin(), r.trace.end(), [&](const LevelTrace& t) { return t.which == c; });
}

ConstructiveResult run_favorable(const Digraph& t, std::uint64_t seed = 0) {
  FavorableParams fp;
  fp.seed = seed;
  auto inst = gen_favorable(t, fp);
  auto r = constructive_embed(inst.digraph, t, inst.params);
  if (r) {
    CHECK(r.proper.proper);
    CHECK(embedding_error(inst.digraph.graph, t, *r.embedding).empty());
    std::set<Vertex> roots(inst.digraph.roots.begin(), inst.digraph.roots.end());
    CHECK(oracle::proper_by_rederivation(inst.digraph.graph, roots, t, r.embedding->map));
  }
  return r;
}

}  // namespace

TEST_CASE("max-grounded core") {
  auto sink = tree(3, {{0, 2}, {1, 2}});
  auto p = max_grounded_core(sink);
  CHECK(p.steps.empty());
  CHECK(p.core == sink);

  auto path = tree(3, {{0, 1}, {1, 2}});
  CHECK(max_grounded_core(path).steps.empty());

  auto low = tree(4, {{0, 2}, {1, 2}, {2, 3}});
  auto q = max_grounded_core(low);
  REQUIRE(q.steps.size() == 1);
  CHECK(q.steps[0].leaf == 3);
  CHECK(q.steps[0].neighbor == 2);
  CHECK(q.steps[0].direction == PeelDirection::out_of_neighbor);
  CHECK_FALSE(q.core.alive(3));
  CHECK(grounded_profile(q.core).max_grounded);

  CHECK_THROWS_AS(max_grounded_core(tree(5, {{0, 1}, {3, 1}, {1, 2}, {4, 2}})), GraphError);
}

TEST_CASE("extend_by_peels") {
  auto host = gen_out_regular(30, 3, 1);
  auto sink = tree(3, {{0, 2}, {1, 2}});
  Embedding e(3);
  e[0] = 0;
  e[1] = 1;
  e[2] = 2;
  CHECK(extend_by_peels(host, sink, max_grounded_core(sink), e) == e);

  auto arc = tree(2, {{0, 1}});
  PeelSequence one;
  one.steps.push_back({1, 0, PeelDirection::out_of_neighbor});
  std::vector<Vertex> gone{1};
  one.core = delete_vertices(arc, gone);
  Embedding seed(2);
  seed[0] = 7;
  auto full = extend_by_peels(host, arc, one, seed);
  CHECK(full[0] == 7);
  CHECK(full[1] == host.out(7).front());

  // three peels into a 6-out-regular host, validated arc by arc
  auto chain = tree(6, {{0, 2}, {1, 2}, {2, 3}, {3, 4}, {4, 5}});
  auto peels = max_grounded_core(chain);
  REQUIRE(peels.steps.size() == 3);
  for (std::uint64_t s = 0; s < 200; ++s) {
    auto g = gen_out_regular(50, 6, s);
    auto core = brute_embed(g, peels.core, BruteOptions{.guard = 0, .force = true, .proper_in = nullptr});
    REQUIRE(core);
    auto ext = extend_by_peels(g, chain, peels, *core.embedding);
    CHECK(embedding_error(g, chain, ext).empty());
  }

  auto thin = gen_out_regular(30, 2, 0);
  CHECK_THROWS_AS(extend_by_peels(thin, chain, peels, Embedding(6)), GraphError);
}

TEST_CASE("check_proper reference cases") {
  auto bd = testing::subdivided_example();
  auto single = Digraph(1);
  Embedding e1(1);
  e1[0] = 3;
  CHECK(check_proper(bd, single, e1).proper);

  auto arc = tree(2, {{0, 1}});
  Embedding e2(2);
  e2[0] = 1;
  e2[1] = 2;
  auto bad = check_proper(bd, arc, e2);
  CHECK_FALSE(bad.proper);
  REQUIRE_FALSE(bad.violations.empty());
  CHECK(bad.violations.front().clause == ProperClause::root_condition);
  CHECK(bad.violations.front().tree_vertex == 1);

  auto sink = tree(3, {{0, 2}, {1, 2}});
  Embedding e3(3);
  e3[0] = 3;
  e3[1] = 4;
  e3[2] = 0;
  CHECK(check_proper(bd, sink, e3).proper);

  auto host = testing::overlap_host();
  auto t = testing::overlap_tree();
  Embedding e4(5);
  e4.map = testing::overlap_map();
  CHECK(embedding_error(host.graph, t, e4).empty());
  auto ov = check_proper(host, t, e4);
  CHECK_FALSE(ov.proper);
  bool named = false;
  for (const auto& v : ov.violations)
    if (v.clause == ProperClause::paths_overlap && v.witness == 2) named = true;
  CHECK(named);
  std::set<Vertex> roots(host.roots.begin(), host.roots.end());
  CHECK_FALSE(oracle::proper_by_rederivation(host.graph, roots, t, e4.map));

  Embedding broken(3);
  broken[0] = 3;
  broken[1] = 3;
  broken[2] = 0;
  auto inj = check_proper(bd, sink, broken);
  CHECK_FALSE(inj.proper);
  CHECK(inj.violations.front().clause == ProperClause::embedding);
}

TEST_CASE("brute_embed reference cases") {
  auto sink = tree(3, {{0, 2}, {1, 2}});
  auto found = brute_embed(complete(3), sink);
  REQUIRE(found);
  CHECK(embedding_error(complete(3), sink, *found.embedding).empty());
  auto none = brute_embed(cycle(3), sink);
  CHECK_FALSE(none);
  CHECK(none.stats.complete);
  CHECK(brute_embed(cycle(3), tree(3, {{0, 1}, {1, 2}})));

  CHECK_THROWS_AS(brute_embed(complete(15), sink), GraphError);
  CHECK(brute_embed(complete(15), sink, BruteOptions{.guard = 14, .force = true, .proper_in = nullptr}));
}

TEST_CASE("brute_embed restricted to proper copies") {
  auto bd = testing::subdivided_example();
  auto sink = tree(3, {{0, 2}, {1, 2}});
  BruteOptions opt;
  opt.proper_in = &bd;
  auto r = brute_embed(bd.graph, sink, opt);
  REQUIRE(r);
  CHECK(check_proper(bd, sink, *r.embedding).proper);
}

TEST_CASE("heuristic_embed agrees with brute force on tiny cases") {
  auto k6 = complete(6);
  for (Vertex order = 1; order <= 3; ++order)
    for (const auto& t : enumerate_grounded_trees(order)) {
      auto h = heuristic_embed(k6, t);
      REQUIRE(h);
      CHECK(embedding_error(k6, t, *h.embedding).empty());
      CHECK(brute_embed(k6, t));
    }
  CHECK(heuristic_embed(cycle(4), Digraph(1)));

  auto star_in = tree(3, {{0, 2}, {1, 2}});
  auto r = heuristic_embed(cycle(5), star_in);
  CHECK_FALSE(r);
  CHECK(r.stats.complete);
}

TEST_CASE("constructive embedder: single vertex maps to the smallest root") {
  auto b = from_out_regular(gen_out_regular(20, 3, 2), 1);
  auto r = constructive_embed(b, Digraph(1), ConstructiveParams{});
  REQUIRE(r);
  CHECK((*r.embedding)[0] == 0);
  CHECK(r.proper.proper);
}

TEST_CASE("constructive embedder covers every insertion case") {
  auto sink = run_favorable(tree(3, {{0, 2}, {1, 2}}));
  REQUIRE(sink);
  CHECK(has_case(sink, EmbedCase::in_leaf_root));

  auto chain = run_favorable(tree(3, {{0, 1}, {1, 2}}));
  REQUIRE(chain);
  CHECK(has_case(chain, EmbedCase::in_leaf_internal));

  auto fork = run_favorable(tree(3, {{0, 1}, {0, 2}}));
  REQUIRE(fork);
  REQUIRE(has_case(fork, EmbedCase::out_leaf));
  for (const auto& lv : fork.trace)
    if (lv.which == EmbedCase::out_leaf) CHECK(lv.ell1 == lv.ell2);

  auto mixed = run_favorable(tree(4, {{0, 1}, {1, 2}, {0, 3}}));
  REQUIRE(mixed);
  CHECK(has_case(mixed, EmbedCase::out_leaf));
  CHECK(has_case(mixed, EmbedCase::in_leaf_internal));
}

TEST_CASE("constructive embedder strict mode refuses desk-scale inputs") {
  auto t = tree(3, {{0, 2}, {1, 2}});
  auto inst = gen_favorable(t);
  ConstructiveParams strict = inst.params;
  strict.mode = CleanupMode::strict;
  auto r = constructive_embed(inst.digraph, t, strict);
  CHECK_FALSE(r);
  CHECK(r.failed_case == "strict");
  CHECK(r.failure.find("k >= |V(T)| = 3") != std::string::npos);

  auto big = from_out_regular(gen_out_regular(40, 4, 0), 3);
  auto s = constructive_embed(big, t, strict);
  CHECK_FALSE(s);
  CHECK(s.failure.find("10^4852224") != std::string::npos);
  CHECK(constructive_exponent(3, 3) == doctest::Approx(4852224.0));

  CHECK_THROWS_AS(constructive_embed(big, tree(4, {{0, 2}, {1, 2}, {2, 3}}), ConstructiveParams{}), GraphError);
}
