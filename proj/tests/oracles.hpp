#pragma once

// Slow, deliberately naive re-derivations used as ground truth. None of these
// call into the library code they check beyond the plain Digraph container.

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "broomkit/digraph.hpp"

namespace oracle {

using broomkit::Arc;
using broomkit::Digraph;
using broomkit::Vertex;

// ---- rooted-tree shapes -----------------------------------------------------

inline std::string wrap(std::vector<std::string> kids) {
  std::sort(kids.begin(), kids.end());
  std::string s = "(";
  for (auto& k : kids) s += k;
  return s + ")";
}

inline std::string balanced_shape(int d, int height) {
  if (height == 0) return "()";
  return wrap(std::vector<std::string>(static_cast<std::size_t>(d), balanced_shape(d, height - 1)));
}

/// Canonical string of the out-arborescence given by `arcs` hanging from
/// `root`, or nullopt when the arcs are not an out-arborescence at `root`.
inline std::optional<std::string> arborescence_shape(const std::vector<Arc>& arcs, Vertex root) {
  std::map<Vertex, std::vector<Vertex>> kids;
  std::map<Vertex, int> indeg;
  std::set<Vertex> verts{root};
  for (auto [u, v] : arcs) {
    kids[u].push_back(v);
    ++indeg[v];
    verts.insert(u);
    verts.insert(v);
  }
  if (indeg.count(root)) return std::nullopt;
  for (Vertex v : verts)
    if (v != root && indeg[v] != 1) return std::nullopt;
  std::set<Vertex> reached;
  std::function<std::string(Vertex)> enc = [&](Vertex v) {
    reached.insert(v);
    std::vector<std::string> parts;
    for (Vertex c : kids[v]) parts.push_back(enc(c));
    return wrap(parts);
  };
  // in-degrees are all <= 1 and the root has none, so the walk below is finite
  // unless a cycle avoids the root; cycles leave vertices unreached.
  std::function<bool(Vertex, int)> acyclic = [&](Vertex v, int depth) {
    if (depth > static_cast<int>(verts.size())) return false;
    for (Vertex c : kids[v])
      if (!acyclic(c, depth + 1)) return false;
    return true;
  };
  if (!acyclic(root, 0)) return std::nullopt;
  auto s = enc(root);
  if (reached.size() != verts.size()) return std::nullopt;
  return s;
}

/// Every legal (k,d)-broom shape with exactly `size` vertices.
inline std::set<std::string> broom_shapes(int k, int d, int size) {
  std::set<std::string> out;
  for (int ell = 1; ell <= k; ++ell) {
    auto s = balanced_shape(d, ell);
    if (static_cast<int>(std::count(s.begin(), s.end(), '(')) == size) out.insert(s);
  }
  const auto below = balanced_shape(d, k);
  const int below_size = static_cast<int>(std::count(below.begin(), below.end(), '('));
  const int spare = size - 1 - d * below_size;
  if (spare < 0) return out;
  // multisets of d subdivision counts summing to `spare`
  std::vector<int> counts;
  std::function<void(int, int)> rec = [&](int left, int cap) {
    if (static_cast<int>(counts.size()) == d) {
      if (left != 0) return;
      std::vector<std::string> arms;
      for (int c : counts) {
        std::string arm = below;
        for (int i = 0; i < c; ++i) arm = "(" + arm + ")";
        arms.push_back(arm);
      }
      out.insert(wrap(arms));
      return;
    }
    for (int c = std::min(left, cap); c >= 0; --c) {
      counts.push_back(c);
      rec(left - c, c);
      counts.pop_back();
    }
  };
  rec(spare, spare);
  return out;
}

/// True when the arcs form some (k,d)-broom at `root`, by shape enumeration.
inline bool is_broom_by_enumeration(const std::vector<Arc>& arcs, Vertex root, int k, int d) {
  const auto shape = arborescence_shape(arcs, root);
  if (!shape) return false;
  const int size = static_cast<int>(std::count(shape->begin(), shape->end(), '('));
  return broom_shapes(k, d, size).count(*shape) > 0;
}

// ---- walks and paths ----------------------------------------------------------

/// Endpoints of all walks of length exactly i, by explicit DFS over walks.
inline std::set<Vertex> walk_endpoints(const Digraph& g, Vertex v, int i) {
  std::set<Vertex> out;
  std::function<void(Vertex, int)> rec = [&](Vertex x, int left) {
    if (left == 0) {
      out.insert(x);
      return;
    }
    for (Vertex y : g.out(x)) rec(y, left - 1);
  };
  rec(v, i);
  return out;
}

/// All simple directed paths from v into `targets`, shortest ones only.
inline std::vector<std::vector<Vertex>> all_shortest_paths(const Digraph& g, Vertex v, const std::set<Vertex>& targets) {
  std::vector<std::vector<Vertex>> all;
  std::vector<Vertex> path{v};
  std::vector<char> on(static_cast<std::size_t>(g.n()), 0);
  on[static_cast<std::size_t>(v)] = 1;
  std::function<void(Vertex)> rec = [&](Vertex x) {
    if (targets.count(x)) {
      all.push_back(path);
      return;
    }
    for (Vertex y : g.out(x))
      if (!on[static_cast<std::size_t>(y)]) {
        on[static_cast<std::size_t>(y)] = 1;
        path.push_back(y);
        rec(y);
        path.pop_back();
        on[static_cast<std::size_t>(y)] = 0;
      }
  };
  rec(v);
  if (all.empty()) return all;
  std::size_t best = all.front().size();
  for (auto& p : all) best = std::min(best, p.size());
  std::vector<std::vector<Vertex>> shortest;
  for (auto& p : all)
    if (p.size() == best) shortest.push_back(p);
  return shortest;
}

// ---- trees --------------------------------------------------------------------

/// Unrooted canonical form of an oriented tree given as an arc list on 0..n-1.
inline std::string oriented_tree_form(int n, const std::vector<Arc>& arcs) {
  std::vector<std::vector<std::pair<Vertex, char>>> nb(static_cast<std::size_t>(n));
  for (auto [u, v] : arcs) {
    nb[static_cast<std::size_t>(u)].push_back({v, 'o'});
    nb[static_cast<std::size_t>(v)].push_back({u, 'i'});
  }
  std::function<std::string(Vertex, Vertex)> enc = [&](Vertex x, Vertex from) {
    std::vector<std::string> parts;
    for (auto [y, dir] : nb[static_cast<std::size_t>(x)])
      if (y != from) parts.push_back(std::string(1, dir) + enc(y, x));
    return wrap(parts);
  };
  std::string best;
  for (Vertex r = 0; r < n; ++r) {
    auto s = enc(r, -1);
    if (best.empty() || s < best) best = s;
  }
  return best;
}

/// All labelled trees (Pruefer codes) times all orientations, as arc lists.
inline void for_each_labelled_oriented_tree(int n, const std::function<void(const std::vector<Arc>&)>& fn) {
  if (n == 1) {
    fn({});
    return;
  }
  std::vector<std::pair<Vertex, Vertex>> edges;
  const auto decode = [&](const std::vector<Vertex>& code) {
    edges.clear();
    std::vector<int> deg(static_cast<std::size_t>(n), 1);
    for (Vertex c : code) ++deg[static_cast<std::size_t>(c)];
    for (Vertex c : code)
      for (Vertex x = 0; x < n; ++x)
        if (deg[static_cast<std::size_t>(x)] == 1) {
          edges.emplace_back(x, c);
          --deg[static_cast<std::size_t>(x)];
          --deg[static_cast<std::size_t>(c)];
          break;
        }
    std::vector<Vertex> last;
    for (Vertex x = 0; x < n; ++x)
      if (deg[static_cast<std::size_t>(x)] == 1) last.push_back(x);
    edges.emplace_back(last[0], last[1]);
  };
  std::vector<Vertex> code(static_cast<std::size_t>(n - 2), 0);
  for (;;) {
    decode(code);
    for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
      std::vector<Arc> arcs;
      for (int i = 0; i < n - 1; ++i) {
        auto [a, b] = edges[static_cast<std::size_t>(i)];
        arcs.push_back((mask >> i) & 1 ? Arc{b, a} : Arc{a, b});
      }
      fn(arcs);
    }
    int i = 0;
    while (i < n - 2 && ++code[static_cast<std::size_t>(i)] == n) code[static_cast<std::size_t>(i++)] = 0;
    if (i == n - 2) break;
  }
}

/// Groundedness straight from the definition on a raw arc list: heights by
/// relaxation until stable, in-degrees by counting.
inline bool grounded_by_relaxation(int n, const std::vector<Arc>& arcs) {
  std::vector<std::optional<int>> h(static_cast<std::size_t>(n));
  h[0] = 0;
  for (bool changed = true; changed;) {
    changed = false;
    for (auto [u, v] : arcs) {
      auto& hu = h[static_cast<std::size_t>(u)];
      auto& hv = h[static_cast<std::size_t>(v)];
      if (hu && !hv) {
        hv = *hu + 1;
        changed = true;
      } else if (hv && !hu) {
        hu = *hv - 1;
        changed = true;
      }
    }
  }
  std::vector<int> indeg(static_cast<std::size_t>(n), 0);
  for (auto [u, v] : arcs) ++indeg[static_cast<std::size_t>(v)];
  std::optional<int> common;
  for (int x = 0; x < n; ++x)
    if (indeg[static_cast<std::size_t>(x)] >= 2) {
      if (common && *common != *h[static_cast<std::size_t>(x)]) return false;
      common = *h[static_cast<std::size_t>(x)];
    }
  return true;
}

// ---- proper copies --------------------------------------------------------------

/// Re-derives the proper-copy verdict: heights by relaxation over the tree's
/// arc list, sources by counting, and P_D(u) by walking in-arcs backwards in
/// the host until a root is reached (internal broom vertices have exactly one
/// in-arc). `map[x]` is the image of tree vertex x (live tree vertices only).
inline bool proper_by_rederivation(const Digraph& host, const std::set<Vertex>& roots, const Digraph& tree,
                                   const std::vector<Vertex>& map) {
  const auto live = tree.live_vertices();
  const auto arcs = tree.arcs();
  std::set<Vertex> images;
  for (Vertex x : live) {
    const Vertex y = map[static_cast<std::size_t>(x)];
    if (y < 0 || y >= host.n() || !host.alive(y) || !images.insert(y).second) return false;
  }
  for (auto [a, b] : arcs)
    if (!host.has_arc(map[static_cast<std::size_t>(a)], map[static_cast<std::size_t>(b)])) return false;

  std::map<Vertex, int> h{{live.front(), 0}};
  for (bool changed = true; changed;) {
    changed = false;
    for (auto [u, v] : arcs) {
      if (h.count(u) && !h.count(v)) {
        h[v] = h[u] + 1;
        changed = true;
      } else if (h.count(v) && !h.count(u)) {
        h[u] = h[v] - 1;
        changed = true;
      }
    }
  }
  int top = h.begin()->second;
  for (auto& [x, hx] : h) top = std::max(top, hx);
  for (Vertex x : live)
    if (h[x] == top && !roots.count(map[static_cast<std::size_t>(x)])) return false;

  std::map<Vertex, int> indeg;
  for (auto [u, v] : arcs) ++indeg[v];
  std::set<Vertex> non_source_images;
  std::vector<Vertex> sources;
  for (Vertex x : live) {
    if (indeg[x] == 0)
      sources.push_back(x);
    else
      non_source_images.insert(map[static_cast<std::size_t>(x)]);
  }
  std::set<Vertex> used;
  for (Vertex x : sources) {
    Vertex y = map[static_cast<std::size_t>(x)];
    std::vector<Vertex> path{y};
    while (!roots.count(y)) {
      const auto in = host.in(y);
      if (in.size() != 1) return false;
      y = in.front();
      path.push_back(y);
      if (path.size() > static_cast<std::size_t>(host.n())) return false;
    }
    for (Vertex w : path) {
      if (non_source_images.count(w) || !used.insert(w).second) return false;
    }
  }
  return true;
}

}  // namespace oracle
