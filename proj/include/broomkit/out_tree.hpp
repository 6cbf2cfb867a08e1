#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "broomkit/digraph.hpp"

namespace broomkit {

/// Out-arborescence over global vertex ids, stored with a local index.
/// Children are kept in ascending id order and `order()` is BFS order from
/// the root with smallest-id tie-breaks.
class OutTree {
 public:
  /// Fails (with a reason) unless the arcs form an out-arborescence rooted at
  /// `root`: root in-degree 0, every other vertex in-degree 1, all reachable.
  static std::optional<OutTree> from_arcs(std::span<const Arc> arcs, Vertex root, std::string* why = nullptr);

  Vertex root() const { return root_; }
  std::size_t size() const { return ids_.size(); }
  const std::vector<Vertex>& order() const { return order_; }
  bool contains(Vertex v) const { return index(v) >= 0; }

  std::span<const Vertex> children(Vertex v) const { return children_[checked(v)]; }
  int out_degree(Vertex v) const { return static_cast<int>(children_[checked(v)].size()); }
  Vertex parent(Vertex v) const { return parent_[checked(v)]; }
  int depth(Vertex v) const { return depth_[checked(v)]; }
  bool is_leaf(Vertex v) const { return children_[checked(v)].empty(); }

  /// Length of the longest downward path from v.
  int subtree_height(Vertex v) const { return below_[checked(v)]; }
  int height() const { return below_[checked(root_)]; }

  VertexSet vertices() const { return ids_; }
  VertexSet leaves() const;
  std::vector<Arc> arcs() const;

  /// Root-to-v path inside the tree.
  Walk path_from_root(Vertex v) const;

 private:
  int index(Vertex v) const;
  std::size_t checked(Vertex v) const;

  Vertex root_ = -1;
  std::vector<Vertex> ids_;  // sorted
  std::vector<std::vector<Vertex>> children_;
  std::vector<Vertex> parent_;
  std::vector<int> depth_;
  std::vector<int> below_;
  std::vector<Vertex> order_;
};

}  // namespace broomkit
