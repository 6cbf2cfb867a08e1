#include "broomkit/broom.hpp"

#include <algorithm>
#include <stdexcept>

namespace broomkit {

const char* to_string(BroomViolation v) {
  switch (v) {
    case BroomViolation::none: return "none";
    case BroomViolation::not_arborescence: return "not an out-arborescence";
    case BroomViolation::height_zero: return "height zero";
    case BroomViolation::unbalanced: return "unbalanced";
    case BroomViolation::wrong_degree: return "wrong degree";
    case BroomViolation::illegal_subdivision: return "illegal subdivision position";
  }
  return "?";
}

const char* to_string(DigraphClause c) {
  switch (c) {
    case DigraphClause::none: return "none";
    case DigraphClause::empty_root_set: return "empty root set";
    case DigraphClause::root_out_of_range: return "root not a live vertex";
    case DigraphClause::missing_broom: return "root without broom";
    case DigraphClause::duplicate_broom: return "two brooms for one root";
    case DigraphClause::stray_broom: return "broom rooted outside the root set";
    case DigraphClause::bad_broom: return "broom fails validation";
    case DigraphClause::leaf_outside_roots: return "broom leaf outside the root set";
    case DigraphClause::internal_in_roots: return "internal broom vertex in the root set";
    case DigraphClause::not_internally_disjoint: return "brooms not internally disjoint";
    case DigraphClause::arc_not_in_digraph: return "broom arc missing from digraph";
    case DigraphClause::arc_not_covered: return "union of brooms differs from digraph";
    case DigraphClause::vertex_not_covered: return "vertex in no broom";
  }
  return "?";
}

namespace {

BroomCheck reject(BroomViolation v, std::string detail) {
  BroomCheck c;
  c.violation = v;
  c.detail = std::move(detail);
  return c;
}

// Checks that the subtree at x is balanced of height `height` with every
// non-leaf of out-degree d. Returns none on success.
std::pair<BroomViolation, Vertex> check_perfect(const OutTree& t, Vertex x, int height, int d) {
  const int base = t.depth(x);
  std::vector<Vertex> stack{x};
  while (!stack.empty()) {
    const Vertex u = stack.back();
    stack.pop_back();
    if (t.is_leaf(u)) {
      if (t.depth(u) - base != height) return {BroomViolation::unbalanced, u};
      continue;
    }
    if (t.out_degree(u) != d) {
      const bool chain = t.out_degree(u) == 1;
      return {chain ? BroomViolation::illegal_subdivision : BroomViolation::wrong_degree, u};
    }
    for (Vertex c : t.children(u)) stack.push_back(c);
  }
  return {BroomViolation::none, -1};
}

}  // namespace

BroomCheck validate_broom(std::span<const Arc> arcs, Vertex root, int k, int d) {
  std::string why;
  const auto tree = OutTree::from_arcs(arcs, root, &why);
  if (!tree) return reject(BroomViolation::not_arborescence, why);
  if (tree->size() == 1) return reject(BroomViolation::height_zero, "bare root");
  if (k < 0 || d < 1) return reject(BroomViolation::wrong_degree, "parameters out of range");

  const auto leaves = tree->leaves();
  const int first_depth = tree->depth(leaves.front());
  const bool uniform = std::all_of(leaves.begin(), leaves.end(),
                                   [&](Vertex l) { return tree->depth(l) == first_depth; });

  Broom b;
  b.root = root;
  b.k = k;
  b.d = d;
  b.arcs = tree->arcs();
  b.leaves = leaves;

  if (uniform && first_depth <= k) {
    const auto [bad, at] = check_perfect(*tree, root, first_depth, d);
    if (bad != BroomViolation::none)
      return reject(bad == BroomViolation::illegal_subdivision ? BroomViolation::wrong_degree : bad,
                    "vertex " + std::to_string(at));
    b.ell = first_depth;
    return {std::move(b), BroomViolation::none, {}};
  }

  // ell = k + 1: strip the out-degree-1 chain hanging below each root arc,
  // then demand a perfect d-ary tree of height k underneath.
  if (tree->out_degree(root) != d)
    return reject(BroomViolation::wrong_degree, "root out-degree " + std::to_string(tree->out_degree(root)));
  for (Vertex c : tree->children(root)) {
    Vertex x = c;
    while (tree->out_degree(x) == 1 && tree->subtree_height(x) > k) {
      b.subdivision.push_back(x);
      x = tree->children(x).front();
    }
    if (tree->subtree_height(x) < k)
      return reject(BroomViolation::unbalanced, "branch through " + std::to_string(c) + " too short");
    const auto [bad, at] = check_perfect(*tree, x, k, d);
    if (bad != BroomViolation::none) {
      if (!uniform && bad == BroomViolation::wrong_degree && tree->subtree_height(x) != k)
        return reject(BroomViolation::unbalanced, "vertex " + std::to_string(at));
      return reject(bad, "vertex " + std::to_string(at));
    }
  }
  std::sort(b.subdivision.begin(), b.subdivision.end());
  b.ell = k + 1;
  return {std::move(b), BroomViolation::none, {}};
}

BroomCheck validate_broom(const Digraph& candidate, Vertex root, int k, int d) {
  const auto arcs = candidate.arcs();
  if (root < 0 || root >= candidate.n() || !candidate.alive(root))
    return reject(BroomViolation::not_arborescence, "root is not a vertex");
  for (Vertex v = 0; v < candidate.n(); ++v)
    if (candidate.alive(v) && v != root && candidate.in_degree(v) == 0)
      return reject(BroomViolation::not_arborescence, "vertex " + std::to_string(v) + " is not reachable from the root");
  return validate_broom(arcs, root, k, d);
}

const Broom& BroomDigraph::broom_of(Vertex r) const {
  const auto it = std::lower_bound(roots.begin(), roots.end(), r);
  if (it == roots.end() || *it != r) throw GraphError("vertex " + std::to_string(r) + " is not a root");
  return brooms[static_cast<std::size_t>(it - roots.begin())];
}

Certificate BroomDigraph::certificate() const {
  Certificate c;
  c.roots = roots;
  for (const auto& b : brooms) c.brooms.push_back({b.root, b.arcs});
  return c;
}

BroomDigraphCheck validate_broom_digraph(const Digraph& d, const VertexSet& roots_in,
                                         std::span<const BroomSpec> specs, int k, int deg) {
  BroomDigraphCheck out;
  const auto fail = [&](DigraphClause c, std::vector<Vertex> w, std::string detail = {}) {
    out.clause = c;
    out.witnesses = std::move(w);
    out.detail = std::move(detail);
    return out;
  };

  VertexSet roots = roots_in;
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  if (roots.empty()) return fail(DigraphClause::empty_root_set, {});
  for (Vertex r : roots)
    if (r < 0 || r >= d.n() || !d.alive(r)) return fail(DigraphClause::root_out_of_range, {r});

  const auto n = static_cast<std::size_t>(d.n());
  BroomDigraph bd;
  bd.k = k;
  bd.d = deg;
  bd.roots = roots;
  bd.is_root = membership(d.n(), roots);
  bd.owner.assign(n, -1);
  bd.broom_parent.assign(n, -1);

  std::vector<int> slot(n, -1);
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const Vertex r = specs[i].root;
    if (r < 0 || r >= d.n() || !bd.is_root[static_cast<std::size_t>(r)])
      return fail(DigraphClause::stray_broom, {r});
    if (slot[static_cast<std::size_t>(r)] >= 0) return fail(DigraphClause::duplicate_broom, {r});
    slot[static_cast<std::size_t>(r)] = static_cast<int>(i);
  }
  for (Vertex r : roots)
    if (slot[static_cast<std::size_t>(r)] < 0) return fail(DigraphClause::missing_broom, {r});

  std::vector<Arc> covered;
  covered.reserve(d.arc_count());
  bd.brooms.reserve(roots.size());
  for (Vertex r : roots) {
    const auto& spec = specs[static_cast<std::size_t>(slot[static_cast<std::size_t>(r)])];
    auto check = validate_broom(spec.arcs, r, k, deg);
    if (!check)
      return fail(DigraphClause::bad_broom, {r}, std::string(to_string(check.violation)) + ": " + check.detail);
    Broom& b = *check.broom;
    for (Vertex l : b.leaves)
      if (!bd.is_root[static_cast<std::size_t>(l)]) return fail(DigraphClause::leaf_outside_roots, {r, l});
    bd.owner[static_cast<std::size_t>(r)] = r;
    for (const auto& [u, v] : b.arcs) {
      if (v < 0 || static_cast<std::size_t>(v) >= n) return fail(DigraphClause::arc_not_in_digraph, {u, v});
      if (!d.has_arc(u, v)) return fail(DigraphClause::arc_not_in_digraph, {u, v});
      covered.emplace_back(u, v);
    }
    for (const auto& [u, v] : b.arcs) {
      if (bd.is_root[static_cast<std::size_t>(v)]) continue;  // leaf
      auto& own = bd.owner[static_cast<std::size_t>(v)];
      if (own >= 0 && own != r) return fail(DigraphClause::not_internally_disjoint, {v, own, r});
      own = r;
      bd.broom_parent[static_cast<std::size_t>(v)] = u;
    }
    // leaves are already known to be roots, so an internal root shows up as a
    // tail other than r
    for (const auto& [u, v] : b.arcs)
      if (u != r && bd.is_root[static_cast<std::size_t>(u)]) return fail(DigraphClause::internal_in_roots, {r, u});
    bd.brooms.push_back(std::move(b));
  }

  std::sort(covered.begin(), covered.end());
  if (std::adjacent_find(covered.begin(), covered.end()) != covered.end()) {
    const auto it = std::adjacent_find(covered.begin(), covered.end());
    return fail(DigraphClause::not_internally_disjoint, {it->first, it->second}, "arc claimed twice");
  }
  if (covered.size() != d.arc_count()) {
    for (const auto& arc : d.arcs())
      if (!std::binary_search(covered.begin(), covered.end(), arc))
        return fail(DigraphClause::arc_not_covered, {arc.first, arc.second});
  }
  for (Vertex v = 0; v < d.n(); ++v)
    if (d.alive(v) && bd.owner[static_cast<std::size_t>(v)] < 0 && !bd.is_root[static_cast<std::size_t>(v)])
      return fail(DigraphClause::vertex_not_covered, {v});

  bd.graph = d;
  out.value = std::move(bd);
  return out;
}

BroomDigraph assemble_broom_digraph(Vertex n, VertexSet roots, std::vector<BroomSpec> brooms, int k, int deg) {
  DigraphBuilder builder(n, false);
  for (Vertex r : roots) builder.set_alive(r);
  for (const auto& b : brooms)
    for (const auto& [u, v] : b.arcs) builder.add_arc(u, v);
  const Digraph d = std::move(builder).finish();
  auto check = validate_broom_digraph(d, roots, brooms, k, deg);
  if (!check) {
    std::string w;
    for (Vertex x : check.witnesses) w += " " + std::to_string(x);
    throw std::logic_error(std::string("assembled broom digraph is invalid: ") + to_string(check.clause) + w +
                           (check.detail.empty() ? "" : " (" + check.detail + ")"));
  }
  return std::move(*check.value);
}

BroomDigraph from_out_regular(const Digraph& d, int k) {
  if (k < 1) throw GraphError("k must be at least 1");
  const auto live = d.live_vertices();
  if (live.empty()) throw GraphError("empty digraph");
  const int deg = d.out_degree(live.front());
  if (deg < 1) throw GraphError("vertex " + std::to_string(live.front()) + " has out-degree 0");
  std::vector<BroomSpec> brooms;
  brooms.reserve(live.size());
  for (Vertex v : live) {
    if (d.out_degree(v) != deg)
      throw GraphError("not out-regular: vertex " + std::to_string(v) + " has out-degree " +
                       std::to_string(d.out_degree(v)) + ", expected " + std::to_string(deg));
    BroomSpec s{v, {}};
    for (Vertex w : d.out(v)) s.arcs.emplace_back(v, w);
    brooms.push_back(std::move(s));
  }
  auto check = validate_broom_digraph(d, live, brooms, k, deg);
  if (!check) throw std::logic_error("out-regular digraph failed broom validation");
  return std::move(*check.value);
}

Digraph trim_out_regular(const Digraph& d, int deg) {
  if (deg < 1) throw GraphError("target out-degree must be positive");
  DigraphBuilder b(d.n(), false);
  for (Vertex v = 0; v < d.n(); ++v) {
    if (!d.alive(v)) continue;
    b.set_alive(v);
    if (d.out_degree(v) < deg)
      throw GraphError("vertex " + std::to_string(v) + " has out-degree " + std::to_string(d.out_degree(v)) +
                       " < " + std::to_string(deg));
    for (Vertex w : d.out(v).first(static_cast<std::size_t>(deg))) b.add_arc(v, w);
  }
  return std::move(b).finish();
}

Walk source_path(const BroomDigraph& b, Vertex u) {
  if (u < 0 || u >= b.graph.n() || b.owner[static_cast<std::size_t>(u)] < 0)
    throw GraphError("vertex " + std::to_string(u) + " is neither a root nor an internal broom vertex");
  Walk path{u};
  for (Vertex x = u; !b.is_root[static_cast<std::size_t>(x)];) {
    x = b.broom_parent[static_cast<std::size_t>(x)];
    path.push_back(x);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

bool lemma_high_degree_check(const BroomDigraph& b, Vertex v) {
  if (b.is_root[static_cast<std::size_t>(v)]) return true;
  std::vector<Vertex> frontier{v};
  std::vector<char> seen(static_cast<std::size_t>(b.graph.n()), 0);
  seen[static_cast<std::size_t>(v)] = 1;
  for (int step = 1; step <= b.k && !frontier.empty(); ++step) {
    std::vector<Vertex> next;
    for (Vertex u : frontier)
      for (Vertex w : b.graph.out(u)) {
        if (b.is_root[static_cast<std::size_t>(w)]) return true;
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          next.push_back(w);
        }
      }
    frontier = std::move(next);
  }
  return false;
}

std::vector<Arc> prune_out_tree(const OutTree& t, const VertexSet& untouched, int target) {
  std::vector<Arc> arcs;
  std::vector<Vertex> stack{t.root()};
  while (!stack.empty()) {
    const Vertex u = stack.back();
    stack.pop_back();
    auto kids = t.children(u);
    const bool keep_all = std::binary_search(untouched.begin(), untouched.end(), u);
    const auto take = keep_all ? kids.size() : std::min(kids.size(), static_cast<std::size_t>(target));
    for (Vertex c : kids.first(take)) {
      arcs.emplace_back(u, c);
      stack.push_back(c);
    }
  }
  std::sort(arcs.begin(), arcs.end());
  return arcs;
}

BroomDigraph prune_degree(const BroomDigraph& b, int target) {
  if (target < 1 || target > b.d)
    throw GraphError("prune target " + std::to_string(target) + " outside [1, " + std::to_string(b.d) + "]");
  if (target == b.d) return b;
  std::vector<BroomSpec> specs;
  specs.reserve(b.brooms.size());
  for (const auto& broom : b.brooms) {
    const auto tree = OutTree::from_arcs(broom.arcs, broom.root);
    specs.push_back({broom.root, prune_out_tree(*tree, broom.subdivision, target)});
  }
  return assemble_broom_digraph(b.graph.n(), b.roots, std::move(specs), b.k, target);
}

}  // namespace broomkit
