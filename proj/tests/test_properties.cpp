#include <doctest.h>

#include <random>

#include "broomkit/cleanup.hpp"
#include "broomkit/generate.hpp"
#include "broomkit/json_io.hpp"
#include "broomkit/kernels.hpp"
#include "broomkit/restructure.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace broomkit;

namespace {

bool revalidates(const BroomDigraph& b) {
  return static_cast<bool>(validate_broom_digraph(b.graph, b.roots, b.certificate().brooms, b.k, b.d));
}

bool lemma_21(const BroomDigraph& b) {
  auto dist = distance_to_set(b.graph, b.roots);
  for (Vertex v : b.graph.live_vertices()) {
    const int dv = dist[static_cast<std::size_t>(v)];
    if (dv >= 0 && dv <= b.k && b.graph.out_degree(v) != b.d) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("every generated broom validates and matches the shape enumerator") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    const int k = static_cast<int>(rng() % 3);
    const int d = 1 + static_cast<int>(rng() % 3);
    const int ell = 1 + static_cast<int>(rng() % static_cast<unsigned>(k + 1));
    auto b = gen_broom(k, d, ell, {}, rng());
    REQUIRE(validate_broom(b.arcs, b.root, k, d));
    CHECK(oracle::is_broom_by_enumeration(b.arcs, b.root, k, d));
  }
}

TEST_CASE("every generated broom digraph validates and satisfies the near-root degree property") {
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const int k = 1 + static_cast<int>(s % 3);
    const int d = 1 + static_cast<int>((s / 3) % 3);
    auto b = gen_broom_digraph(k, d, 90, {}, s);
    CHECK(revalidates(b));
    CHECK(lemma_21(b));
  }
}

TEST_CASE("pipeline outputs keep the near-root degree property") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    auto b = gen_broom_digraph(2, 8, 600, {}, s);
    auto typed = make_typed(b, 2);
    CHECK(lemma_21(typed));
    CHECK(lemma_21(prune_degree(typed, 1)));
    auto out = from_out_regular(gen_out_regular(300, 6, s), 2);
    SubsampleParams p;
    p.broom_target = 3;
    auto c = clean_up(out, CleanupMode::parametric, p);
    REQUIRE(c);
    CHECK(revalidates(*c.value));
    CHECK(lemma_21(*c.value));
    CHECK(scan_high_degree(*c.value).violations.empty());
  }
}

TEST_CASE("fixed seeds give byte-identical generator output") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    CHECK(digraph_json(gen_out_regular(500, 5, s)).dump() == digraph_json(gen_out_regular(500, 5, s)).dump());
    CHECK(bundle_json(gen_broom_digraph(2, 3, 40, {}, s)).dump() ==
          bundle_json(gen_broom_digraph(2, 3, 40, {}, s)).dump());
    CHECK(broom_json(gen_broom(2, 3, 3, {}, s)).dump() == broom_json(gen_broom(2, 3, 3, {}, s)).dump());
    CHECK(digraph_json(gen_grounded_tree(7, s)).dump() == digraph_json(gen_grounded_tree(7, s)).dump());
  }
}

TEST_CASE("random grounded trees and larger ones agree with the relaxation oracle") {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 2000; ++i) {
    const Vertex n = 8 + static_cast<Vertex>(rng() % 20);
    std::vector<Arc> arcs;
    for (Vertex v = 1; v < n; ++v) {
      const Vertex u = static_cast<Vertex>(rng() % v);
      arcs.push_back(rng() & 1 ? Arc{u, v} : Arc{v, u});
    }
    auto t = Digraph::build(n, arcs);
    const bool want = oracle::grounded_by_relaxation(n, arcs);
    CHECK(grounded_profile(t).grounded == want);
    CHECK(brute_grounded(t) == want);
  }
}

TEST_CASE("extract_broom output is a sub-broom with leaves among the input leaves") {
  std::mt19937_64 rng(5);
  int done = 0;
  for (int i = 0; i < 200; ++i) {
    const int k = 1 + static_cast<int>(rng() % 3);
    const int d = 1 + static_cast<int>(rng() % 4);
    // random arborescence meeting the degree preconditions: every non-leaf gets d..d+2 children
    std::vector<Arc> arcs;
    Vertex next = 1;
    std::vector<std::pair<Vertex, int>> frontier{{0, 0}};
    const int height = 1 + static_cast<int>(rng() % 4);
    while (!frontier.empty()) {
      auto [u, depth] = frontier.back();
      frontier.pop_back();
      if (depth == height || (depth > 0 && rng() % 4 == 0)) continue;
      const int kids = d + static_cast<int>(rng() % 3);
      for (int c = 0; c < kids; ++c) {
        arcs.emplace_back(u, next);
        frontier.emplace_back(next++, depth + 1);
      }
    }
    std::sort(arcs.begin(), arcs.end());
    auto t = OutTree::from_arcs(arcs, 0);
    REQUIRE(t);
    auto r = extract_broom(*t, k, d);
    REQUIRE(r);
    const int q = (d + k - 1) / k;
    CHECK(validate_broom(r.broom->arcs, 0, k - 1, q));
    for (Vertex l : r.broom->leaves) CHECK(t->is_leaf(l));
    for (auto a : r.broom->arcs) CHECK(std::binary_search(arcs.begin(), arcs.end(), a));
    ++done;
  }
  CHECK(done == 200);
}

TEST_CASE("remaining generator models pass their validators under fuzzing") {
  std::vector<Digraph> patterns;
  for (Vertex n = 1; n <= 4; ++n)
    for (auto& t : enumerate_grounded_trees(n, true)) patterns.push_back(t);
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const Vertex n = 2 + static_cast<Vertex>(s % 50);
    const int d = static_cast<int>(s % static_cast<std::uint64_t>(n));
    auto g = gen_out_regular(n, d, s);
    bool regular = true;
    for (Vertex v = 0; v < n; ++v) regular = regular && g.out_degree(v) == d;
    CHECK(regular);

    auto t = gen_grounded_tree(1 + static_cast<Vertex>(s % 12), s, s % 2 == 0);
    CHECK(is_oriented_tree(t));
    CHECK(brute_grounded(t));
    if (s % 2 == 0) CHECK(grounded_profile(t).max_grounded);

    FavorableParams fp;
    fp.seed = s;
    auto inst = gen_favorable(patterns[s % patterns.size()], fp);
    CHECK(revalidates(inst.digraph));
  }
}
