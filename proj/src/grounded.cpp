#include "broomkit/grounded.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace broomkit {

namespace {

struct DisjointSets {
  std::vector<Vertex> parent;
  explicit DisjointSets(Vertex n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  Vertex find(Vertex x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      auto& p = parent[static_cast<std::size_t>(x)];
      p = parent[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }
  bool unite(Vertex a, Vertex b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    return true;
  }
};

}  // namespace

ForestReport is_oriented_forest(const Digraph& d) {
  ForestReport report;
  DisjointSets sets(d.n());
  bool acyclic = true;
  for (const auto& [u, v] : d.arcs())
    if (!sets.unite(u, v)) acyclic = false;
  report.is_forest = acyclic;
  std::vector<int> slot(static_cast<std::size_t>(d.n()), -1);
  for (Vertex v = 0; v < d.n(); ++v) {
    if (!d.alive(v)) continue;
    const Vertex rep = sets.find(v);
    auto& s = slot[static_cast<std::size_t>(rep)];
    if (s < 0) {
      s = static_cast<int>(report.components.size());
      report.components.emplace_back();
    }
    report.components[static_cast<std::size_t>(s)].push_back(v);
  }
  return report;
}

bool is_oriented_tree(const Digraph& d) {
  if (d.live_count() == 0) return false;
  const auto report = is_oriented_forest(d);
  return report.is_forest && report.components.size() == 1;
}

HeightFunction height_function(const Digraph& tree) {
  if (!is_oriented_tree(tree)) throw GraphError("input is not an oriented tree");
  HeightFunction h(static_cast<std::size_t>(tree.n()), 0);
  std::vector<char> seen(static_cast<std::size_t>(tree.n()), 0);
  const Vertex start = tree.live_vertices().front();
  std::deque<Vertex> queue{start};
  seen[static_cast<std::size_t>(start)] = 1;
  while (!queue.empty()) {
    const Vertex u = queue.front();
    queue.pop_front();
    for (Vertex w : tree.out(u))
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        h[static_cast<std::size_t>(w)] = h[static_cast<std::size_t>(u)] + 1;
        queue.push_back(w);
      }
    for (Vertex w : tree.in(u))
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        h[static_cast<std::size_t>(w)] = h[static_cast<std::size_t>(u)] - 1;
        queue.push_back(w);
      }
  }
  int top = h[static_cast<std::size_t>(start)];
  for (Vertex v = 0; v < tree.n(); ++v)
    if (tree.alive(v)) top = std::max(top, h[static_cast<std::size_t>(v)]);
  for (Vertex v = 0; v < tree.n(); ++v)
    h[static_cast<std::size_t>(v)] = tree.alive(v) ? h[static_cast<std::size_t>(v)] - top : 0;
  return h;
}

GroundedProfile grounded_profile(const Digraph& tree) {
  GroundedProfile p;
  p.height = height_function(tree);
  for (Vertex v = 0; v < tree.n(); ++v) {
    if (!tree.alive(v)) continue;
    if (tree.in_degree(v) >= 2) p.in_branching.push_back(v);
    if (tree.in_degree(v) == 0) p.sources.push_back(v);
  }
  p.grounded = true;
  p.max_grounded = true;
  for (Vertex g : p.in_branching) {
    const int hg = p.height[static_cast<std::size_t>(g)];
    if (hg != p.height[static_cast<std::size_t>(p.in_branching.front())]) p.grounded = false;
    if (hg != 0) p.max_grounded = false;
  }
  p.max_grounded = p.max_grounded && p.grounded;
  return p;
}

bool brute_grounded(const Digraph& tree) {
  const auto arcs = tree.arcs();
  const auto live = tree.live_vertices();
  if (live.empty()) return false;

  // signed arc count along the unique undirected path from `live.front()`
  const auto signed_distance = [&](Vertex target) {
    std::vector<std::pair<Vertex, int>> stack{{live.front(), 0}};
    std::vector<char> seen(static_cast<std::size_t>(tree.n()), 0);
    while (!stack.empty()) {
      auto [x, hx] = stack.back();
      stack.pop_back();
      if (x == target) return hx;
      seen[static_cast<std::size_t>(x)] = 1;
      for (const auto& [a, b] : arcs) {
        if (a == x && !seen[static_cast<std::size_t>(b)]) stack.emplace_back(b, hx + 1);
        if (b == x && !seen[static_cast<std::size_t>(a)]) stack.emplace_back(a, hx - 1);
      }
    }
    throw GraphError("input is not connected");
  };

  std::vector<int> indegree(static_cast<std::size_t>(tree.n()), 0);
  for (const auto& arc : arcs) ++indegree[static_cast<std::size_t>(arc.second)];

  bool have = false;
  int common = 0;
  for (Vertex v : live) {
    if (indegree[static_cast<std::size_t>(v)] < 2) continue;
    const int hv = signed_distance(v);
    if (have && hv != common) return false;
    have = true;
    common = hv;
  }
  return true;
}

}  // namespace broomkit
