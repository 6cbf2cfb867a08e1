#include "broomkit/out_tree.hpp"

#include <algorithm>

namespace broomkit {

namespace {

void fail(std::string* why, std::string msg) {
  if (why) *why = std::move(msg);
}

}  // namespace

std::optional<OutTree> OutTree::from_arcs(std::span<const Arc> arcs, Vertex root, std::string* why) {
  OutTree t;
  t.root_ = root;
  t.ids_.push_back(root);
  for (const auto& [u, v] : arcs) {
    if (u == v) {
      fail(why, "self-loop at " + std::to_string(u));
      return std::nullopt;
    }
    t.ids_.push_back(u);
    t.ids_.push_back(v);
  }
  std::sort(t.ids_.begin(), t.ids_.end());
  t.ids_.erase(std::unique(t.ids_.begin(), t.ids_.end()), t.ids_.end());

  const std::size_t n = t.ids_.size();
  t.children_.assign(n, {});
  t.parent_.assign(n, -1);
  t.depth_.assign(n, -1);
  t.below_.assign(n, 0);

  std::vector<int> indeg(n, 0);
  for (const auto& [u, v] : arcs) {
    const auto iu = static_cast<std::size_t>(t.index(u));
    const auto iv = static_cast<std::size_t>(t.index(v));
    if (++indeg[iv] > 1) {
      fail(why, "vertex " + std::to_string(v) + " has more than one in-arc");
      return std::nullopt;
    }
    t.children_[iu].push_back(v);
    t.parent_[iv] = u;
  }
  if (indeg[static_cast<std::size_t>(t.index(root))] != 0) {
    fail(why, "root " + std::to_string(root) + " has an in-arc");
    return std::nullopt;
  }
  for (auto& c : t.children_) std::sort(c.begin(), c.end());

  t.order_.reserve(n);
  t.order_.push_back(root);
  t.depth_[static_cast<std::size_t>(t.index(root))] = 0;
  for (std::size_t head = 0; head < t.order_.size(); ++head) {
    const Vertex u = t.order_[head];
    const int du = t.depth_[static_cast<std::size_t>(t.index(u))];
    for (Vertex c : t.children_[static_cast<std::size_t>(t.index(u))]) {
      auto& dc = t.depth_[static_cast<std::size_t>(t.index(c))];
      if (dc >= 0) {
        fail(why, "cycle through " + std::to_string(c));
        return std::nullopt;
      }
      dc = du + 1;
      t.order_.push_back(c);
    }
  }
  if (t.order_.size() != n) {
    for (Vertex v : t.ids_)
      if (t.depth_[static_cast<std::size_t>(t.index(v))] < 0) {
        fail(why, "vertex " + std::to_string(v) + " is not reachable from the root");
        break;
      }
    return std::nullopt;
  }
  for (auto it = t.order_.rbegin(); it != t.order_.rend(); ++it) {
    const auto iv = static_cast<std::size_t>(t.index(*it));
    const Vertex p = t.parent_[iv];
    if (p >= 0) {
      auto& bp = t.below_[static_cast<std::size_t>(t.index(p))];
      bp = std::max(bp, t.below_[iv] + 1);
    }
  }
  return t;
}

int OutTree::index(Vertex v) const {
  const auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
  if (it == ids_.end() || *it != v) return -1;
  return static_cast<int>(it - ids_.begin());
}

std::size_t OutTree::checked(Vertex v) const {
  const int i = index(v);
  if (i < 0) throw GraphError("vertex " + std::to_string(v) + " is not in the tree");
  return static_cast<std::size_t>(i);
}

VertexSet OutTree::leaves() const {
  VertexSet out;
  for (std::size_t i = 0; i < ids_.size(); ++i)
    if (children_[i].empty()) out.push_back(ids_[i]);
  return out;
}

std::vector<Arc> OutTree::arcs() const {
  std::vector<Arc> out;
  out.reserve(ids_.size());
  for (std::size_t i = 0; i < ids_.size(); ++i)
    for (Vertex c : children_[i]) out.emplace_back(ids_[i], c);
  return out;
}

Walk OutTree::path_from_root(Vertex v) const {
  Walk path;
  for (Vertex x = v; x >= 0; x = parent(x)) path.push_back(x);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace broomkit
