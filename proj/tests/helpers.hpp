#pragma once

#include <vector>

#include "broomkit/digraph.hpp"

namespace testing {

using broomkit::Arc;
using broomkit::Digraph;
using broomkit::Vertex;

inline Digraph complete(Vertex n) {
  std::vector<Arc> arcs;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (u != v) arcs.emplace_back(u, v);
  return Digraph::build(n, arcs);
}

inline Digraph cycle(Vertex n) {
  std::vector<Arc> arcs;
  for (Vertex u = 0; u < n; ++u) arcs.emplace_back(u, (u + 1) % n);
  return Digraph::build(n, arcs);
}

inline Digraph tree(Vertex n, std::vector<Arc> arcs) { return Digraph::build(n, arcs); }

}  // namespace testing

#include "broomkit/broom.hpp"

namespace testing {

/// Root 0 carries the 8-vertex subdivided (1,2)-broom with leaves 3,4,6,7;
/// each leaf root has the out-star {0, partner}.
inline broomkit::BroomDigraph subdivided_example() {
  using namespace broomkit;
  const std::vector<Arc> sub{{0, 1}, {1, 2}, {2, 3}, {2, 4}, {0, 5}, {5, 6}, {5, 7}};
  std::vector<Arc> arcs = sub;
  std::vector<BroomSpec> specs{{0, sub}};
  const std::vector<Arc> partner{{3, 4}, {4, 3}, {6, 7}, {7, 6}};
  for (auto [l, p] : partner) {
    arcs.emplace_back(l, 0);
    arcs.emplace_back(l, p);
    specs.push_back({l, {{l, 0}, {l, p}}});
  }
  auto check = validate_broom_digraph(Digraph::build(8, arcs), {0, 3, 4, 6, 7}, specs, 1, 2);
  if (!check) throw std::logic_error("subdivided example failed to validate");
  return *check.value;
}

/// Every vertex has a t-type, by explicit walk enumeration.
template <class WalkFn>
bool typed_by_walks(const broomkit::BroomDigraph& b, int t, WalkFn&& endpoints) {
  for (Vertex v : b.graph.live_vertices())
    for (int i = 1; i <= t; ++i) {
      std::size_t inside = 0, total = 0;
      for (Vertex w : endpoints(b.graph, v, i)) {
        ++total;
        inside += b.is_root[static_cast<std::size_t>(w)] ? 1 : 0;
      }
      if (inside != 0 && inside != total) return false;
    }
  return true;
}

}  // namespace testing

namespace testing {

/// Host and tree where the source paths of tree vertices 0 and 4 both run
/// through root 2. Returns the broom digraph; the tree is overlap_tree().
inline broomkit::BroomDigraph overlap_host() {
  using namespace broomkit;
  std::vector<BroomSpec> specs{
      {0, {{0, 1}, {0, 2}}},
      {1, {{1, 0}, {1, 5}}},
      {2, {{2, 3}, {2, 4}, {3, 0}, {3, 1}, {4, 5}, {4, 6}}},
      {5, {{5, 0}, {5, 6}}},
      {6, {{6, 0}, {6, 1}}},
  };
  std::vector<Arc> arcs;
  for (auto& s : specs) arcs.insert(arcs.end(), s.arcs.begin(), s.arcs.end());
  auto check = validate_broom_digraph(Digraph::build(7, arcs), {0, 1, 2, 5, 6}, specs, 1, 2);
  if (!check) throw std::logic_error("overlap example failed to validate");
  return *check.value;
}

inline Digraph overlap_tree() { return Digraph::build(5, {{0, 1}, {2, 1}, {2, 3}, {4, 3}}); }

inline std::vector<Vertex> overlap_map() { return {3, 0, 1, 5, 4}; }

}  // namespace testing
