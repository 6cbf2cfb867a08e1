#pragma once

#include <vector>

#include "broomkit/digraph.hpp"

namespace broomkit {

/// h(v) = h(u) + 1 along every arc; indexed by vertex id, meaningless on dead ids.
using HeightFunction = std::vector<int>;

struct ForestReport {
  bool is_forest = false;
  std::vector<VertexSet> components;  // weak components over live vertices
};

struct GroundedProfile {
  bool grounded = false;
  bool max_grounded = false;
  VertexSet in_branching;  // in-degree >= 2
  VertexSet sources;       // in-degree 0
  HeightFunction height;   // normalised so the maximum is 0
};

ForestReport is_oriented_forest(const Digraph& d);

/// True when the live part of d is a single oriented tree.
bool is_oriented_tree(const Digraph& d);

/// Unique height function of an oriented tree with max h = 0. Throws GraphError
/// on non-trees.
HeightFunction height_function(const Digraph& tree);

GroundedProfile grounded_profile(const Digraph& tree);

/// Independent check of groundedness straight from the definition: heights come
/// from signed arc counts along undirected tree paths, in-degrees from a raw
/// scan of the arc list.
bool brute_grounded(const Digraph& tree);

}  // namespace broomkit
