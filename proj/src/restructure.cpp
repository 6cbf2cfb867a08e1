#include "broomkit/restructure.hpp"

#include <algorithm>
#include <stdexcept>

#include "broomkit/kernels.hpp"

namespace broomkit {

namespace {

int ceil_div(int a, int b) { return (a + b - 1) / b; }

std::size_t slot_of(const VertexSet& vs, Vertex v) {
  const auto it = std::lower_bound(vs.begin(), vs.end(), v);
  if (it == vs.end() || *it != v) throw GraphError("vertex " + std::to_string(v) + " has no label");
  return static_cast<std::size_t>(it - vs.begin());
}

}  // namespace

int LevelLabels::phi_of(Vertex v) const { return phi[slot_of(vertices, v)]; }
int LevelLabels::selector_of(Vertex v) const { return selector[slot_of(vertices, v)]; }

LevelLabels level_labels(const OutTree& t, int k) {
  if (k < 1) throw GraphError("k must be at least 1");
  LevelLabels labels;
  labels.vertices = t.vertices();
  labels.phi.assign(labels.vertices.size(), 0);
  labels.selector.assign(labels.vertices.size(), -1);
  std::vector<int> count(static_cast<std::size_t>(k));
  const auto& order = t.order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Vertex u = *it;
    if (t.is_leaf(u)) continue;
    std::fill(count.begin(), count.end(), 0);
    for (Vertex c : t.children(u)) ++count[static_cast<std::size_t>(labels.phi_of(c))];
    const int need = ceil_div(t.out_degree(u), k);
    int sel = 0;
    while (count[static_cast<std::size_t>(sel)] < need) ++sel;  // pigeonhole: some level has >= need
    const auto s = slot_of(labels.vertices, u);
    labels.selector[s] = sel;
    labels.phi[s] = std::min(sel + 1, k - 1);
  }
  return labels;
}

ExtractResult extract_broom(const OutTree& t, int k, int d) {
  ExtractResult out;
  if (k < 1 || d < 1) {
    out.failure = "k and d must be positive";
    return out;
  }
  const Vertex r = t.root();
  if (t.out_degree(r) < d) {
    out.failure = "root " + std::to_string(r) + " has out-degree " + std::to_string(t.out_degree(r)) + " < " +
                  std::to_string(d);
    out.witness = {r};
    return out;
  }

  // nearest leaf below each vertex
  std::vector<int> to_leaf(t.size(), 0);
  std::vector<Vertex> via(t.size(), -1);
  const auto vs = t.vertices();
  const auto& order = t.order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Vertex u = *it;
    if (t.is_leaf(u)) continue;
    const auto su = slot_of(vs, u);
    to_leaf[su] = -1;
    for (Vertex c : t.children(u)) {
      const int dc = to_leaf[slot_of(vs, c)] + 1;
      if (to_leaf[su] < 0 || dc < to_leaf[su]) {
        to_leaf[su] = dc;
        via[su] = c;
      }
    }
  }
  for (Vertex u : order) {
    if (t.is_leaf(u) || u == r) continue;
    if (to_leaf[slot_of(vs, u)] <= k - 1 && t.out_degree(u) < d) {
      out.failure = "vertex " + std::to_string(u) + " is within " + std::to_string(k - 1) +
                    " of a leaf but has out-degree " + std::to_string(t.out_degree(u)) + " < " + std::to_string(d);
      out.witness = t.path_from_root(u);
      for (Vertex x = u; !t.is_leaf(x);) {
        x = via[slot_of(vs, x)];
        out.witness.push_back(x);
      }
      return out;
    }
  }

  const auto labels = level_labels(t, k);
  const int q = ceil_div(d, k);
  const auto h_children = [&](Vertex u) {
    std::vector<Vertex> kept;
    const int sel = labels.selector_of(u);
    for (Vertex c : t.children(u))
      if (labels.phi_of(c) == sel) kept.push_back(c);
    return kept;
  };

  std::vector<Arc> arcs;
  std::string bug;
  // balanced height-phi(u) tree below u, out-degree exactly q
  const auto grow_balanced = [&](Vertex u) {
    std::vector<Vertex> stack{u};
    while (!stack.empty() && bug.empty()) {
      const Vertex x = stack.back();
      stack.pop_back();
      if (t.is_leaf(x)) continue;
      const auto kids = h_children(x);
      if (static_cast<int>(kids.size()) < q) {
        bug = "vertex " + std::to_string(x) + " keeps " + std::to_string(kids.size()) + " < " + std::to_string(q) +
              " children in the level subgraph";
        return;
      }
      for (int i = 0; i < q; ++i) {
        arcs.emplace_back(x, kids[static_cast<std::size_t>(i)]);
        stack.push_back(kids[static_cast<std::size_t>(i)]);
      }
    }
  };

  if (labels.selector_of(r) <= k - 2) {
    grow_balanced(r);
  } else {
    const auto firsts = h_children(r);
    if (static_cast<int>(firsts.size()) < q) {
      bug = "root keeps only " + std::to_string(firsts.size()) + " children in the level subgraph";
    } else {
      for (int i = 0; i < q && bug.empty(); ++i) {
        Vertex x = firsts[static_cast<std::size_t>(i)];
        arcs.emplace_back(r, x);
        // descend while the next vertex on the path still sits at level k-1
        while (!t.is_leaf(x) && labels.selector_of(x) == k - 1) {
          const Vertex y = h_children(x).front();
          arcs.emplace_back(x, y);
          x = y;
        }
        grow_balanced(x);
      }
    }
  }
  if (!bug.empty()) {
    out.failure = bug;
    out.bug = true;
    return out;
  }
  auto check = validate_broom(arcs, r, k - 1, q);
  if (!check) {
    out.failure = std::string("extracted tree is not a broom: ") + to_string(check.violation) + " " + check.detail;
    out.bug = true;
    return out;
  }
  out.broom = std::move(check.broom);
  return out;
}

MonochromaticResult monochromatic_prune(const OutTree& t, const LeafColoring& coloring, int colors) {
  if (colors < 1) throw GraphError("need at least one colour");
  const auto vs = t.vertices();
  std::vector<int> color(vs.size(), -1);
  std::size_t leaf_count = 0;
  for (Vertex l : t.leaves()) {
    const auto it = coloring.find(l);
    if (it == coloring.end()) throw GraphError("leaf " + std::to_string(l) + " is uncoloured");
    if (it->second < 0 || it->second >= colors)
      throw GraphError("leaf " + std::to_string(l) + " has colour outside [0, C)");
    color[slot_of(vs, l)] = it->second;
    ++leaf_count;
  }
  if (coloring.size() != leaf_count) throw GraphError("colouring covers non-leaf vertices");

  std::vector<int> count(static_cast<std::size_t>(colors));
  const auto& order = t.order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Vertex u = *it;
    if (t.is_leaf(u)) continue;
    std::fill(count.begin(), count.end(), 0);
    for (Vertex c : t.children(u)) ++count[static_cast<std::size_t>(color[slot_of(vs, c)])];
    int pick = 0;
    while (static_cast<long long>(count[static_cast<std::size_t>(pick)]) * colors < t.out_degree(u)) ++pick;
    color[slot_of(vs, u)] = pick;
  }

  MonochromaticResult out;
  out.color = color[slot_of(vs, t.root())];
  std::vector<Vertex> stack{t.root()};
  while (!stack.empty()) {
    const Vertex u = stack.back();
    stack.pop_back();
    for (Vertex c : t.children(u))
      if (color[slot_of(vs, c)] == out.color) {
        out.arcs.emplace_back(u, c);
        stack.push_back(c);
      }
  }
  std::sort(out.arcs.begin(), out.arcs.end());
  return out;
}

Broom monochromatic_broom(const Broom& b, const LeafColoring& coloring, int colors) {
  const auto tree = OutTree::from_arcs(b.arcs, b.root);
  if (!tree) throw GraphError("broom arcs do not form an out-arborescence");
  const auto mono = monochromatic_prune(*tree, coloring, colors);
  const auto sub = OutTree::from_arcs(mono.arcs, b.root);
  const int target = ceil_div(b.d, colors);
  const auto arcs = prune_out_tree(*sub, b.subdivision, target);
  auto check = validate_broom(arcs, b.root, b.k, target);
  if (!check)
    throw std::logic_error(std::string("monochromatic pruning left a non-broom: ") + to_string(check.violation) +
                           " " + check.detail);
  return std::move(*check.broom);
}

std::int64_t TypeWord::code() const {
  std::int64_t c = 0;
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) c |= std::int64_t{1} << i;
  return c;
}

std::string TypeWord::str() const {
  std::string s;
  for (auto b : bits) s += b ? '1' : '0';
  return s;
}

std::optional<TypeWord> compute_type(const BroomDigraph& b, Vertex v, int t) {
  if (t < 0) throw GraphError("type length must be non-negative");
  TypeWord w;
  VertexSet frontier{v};
  for (int i = 1; i <= t; ++i) {
    frontier = walks_of_length(b.graph, v, i);
    std::size_t inside = 0;
    for (Vertex u : frontier) inside += b.is_root[static_cast<std::size_t>(u)] ? 1 : 0;
    if (inside != 0 && inside != frontier.size()) return std::nullopt;
    w.bits.push_back(!frontier.empty() && inside == frontier.size() ? 1 : 0);
  }
  return w;
}

int typed_degree(int d, int t) {
  if (t < 0) throw GraphError("type length must be non-negative");
  const int shift = t * (t - 1) / 2;
  if (shift >= 31) return 1;
  return ceil_div(d, 1 << shift);
}

bool is_typed(const BroomDigraph& b, int t) {
  const auto codes = type_codes(b, t);
  for (Vertex v = 0; v < b.graph.n(); ++v)
    if (b.graph.alive(v) && codes[static_cast<std::size_t>(v)] < 0) return false;
  return true;
}

BroomDigraph make_typed(const BroomDigraph& b, int t) {
  if (t < 0 || t > b.k)
    throw GraphError("type length " + std::to_string(t) + " outside [0, k=" + std::to_string(b.k) + "]");
  if (t > 62) throw GraphError("type length too large");
  BroomDigraph current = b;
  for (int s = 1; s <= t; ++s) {
    const auto codes = type_codes(current, s - 1);
    const int colors = 1 << (s - 1);
    std::vector<BroomSpec> specs(current.brooms.size());
    std::string bug;
#pragma omp parallel for schedule(dynamic, 16)
    for (std::size_t i = 0; i < current.brooms.size(); ++i) {
      const Broom& broom = current.brooms[i];
      LeafColoring coloring;
      bool ok = true;
      for (Vertex l : broom.leaves) {
        const auto c = codes[static_cast<std::size_t>(l)];
        if (c < 0) ok = false;
        coloring.emplace(l, static_cast<int>(std::max<std::int64_t>(c, 0)));
      }
      if (!ok) {
#pragma omp critical
        bug = "leaf of broom " + std::to_string(broom.root) + " has no " + std::to_string(s - 1) + "-type";
        continue;
      }
      specs[i] = {broom.root, monochromatic_broom(broom, coloring, colors).arcs};
    }
    if (!bug.empty()) throw std::logic_error(bug);
    current = assemble_broom_digraph(current.graph.n(), current.roots, std::move(specs), current.k,
                                     ceil_div(current.d, colors));
  }
  if (!is_typed(current, t)) throw std::logic_error("typing pass left a vertex without a type");
  return current;
}

}  // namespace broomkit
