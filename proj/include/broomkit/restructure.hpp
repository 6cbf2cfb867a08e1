#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "broomkit/broom.hpp"
#include "broomkit/out_tree.hpp"

namespace broomkit {

/// Level labels of an out-arborescence for a fixed k: `phi` in [0, k-1] on
/// every vertex, `selector` (the child level picked at u) on non-leaves, -1 on
/// leaves. Both vectors are parallel to `vertices` (sorted ids).
struct LevelLabels {
  VertexSet vertices;
  std::vector<int> phi;
  std::vector<int> selector;

  int phi_of(Vertex v) const;
  int selector_of(Vertex v) const;
};

/// Labels assigned leaves-first (reverse BFS order): a leaf gets 0; a non-leaf u
/// gets selector(u) = smallest c with at least ceil(deg(u)/k) children at
/// level c, and phi(u) = min(selector(u) + 1, k - 1).
LevelLabels level_labels(const OutTree& t, int k);

struct ExtractResult {
  std::optional<Broom> broom;
  std::string failure;
  Walk witness;       // root-to-leaf path through the offending vertex
  bool bug = false;   // a step the construction guarantees did not hold
  explicit operator bool() const { return broom.has_value(); }
};

/// Finds a (k-1, ceil(d/k))-broom rooted at the tree root whose leaves are
/// leaves of t. Requires deg(root) >= d and deg >= d on every non-leaf within
/// distance k-1 of a leaf below it.
ExtractResult extract_broom(const OutTree& t, int k, int d);

using LeafColoring = std::unordered_map<Vertex, int>;

struct MonochromaticResult {
  std::vector<Arc> arcs;  // sub-arborescence rooted at the tree root
  int color = 0;          // common colour of its leaves
};

/// Sub-arborescence with monochromatic leaves in which every kept vertex
/// keeps at least deg(u)/C of its children. Colours lie in [0, C); the
/// smallest admissible colour wins at every vertex.
MonochromaticResult monochromatic_prune(const OutTree& t, const LeafColoring& coloring, int colors);

/// (k, ceil(d/C))-broom inside b whose leaves all share one colour.
Broom monochromatic_broom(const Broom& b, const LeafColoring& coloring, int colors);

/// a_1..a_t; bit i is set when every vertex reached by a walk of length i
/// lies in R and clear when none does (or nothing is reached).
struct TypeWord {
  std::vector<std::uint8_t> bits;

  std::size_t length() const { return bits.size(); }
  std::int64_t code() const;
  bool operator==(const TypeWord&) const = default;
  std::string str() const;
};

std::optional<TypeWord> compute_type(const BroomDigraph& b, Vertex v, int t);

/// t-typed (k, ceil(d / 2^(t(t-1)/2)))-broom subdigraph with the same root set.
BroomDigraph make_typed(const BroomDigraph& b, int t);

bool is_typed(const BroomDigraph& b, int t);

/// ceil(d / 2^(t(t-1)/2)) without overflow for the t this library accepts.
int typed_degree(int d, int t);

}  // namespace broomkit
