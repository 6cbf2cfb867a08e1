#include "broomkit/digraph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace broomkit {

namespace {

void sort_unique(std::vector<Vertex>& xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
}

}  // namespace

Digraph::Digraph(Vertex n)
    : alive_(static_cast<std::size_t>(n), 1),
      out_(static_cast<std::size_t>(n)),
      in_(static_cast<std::size_t>(n)),
      live_(n) {
  if (n < 0) throw GraphError("negative vertex count");
}

Digraph Digraph::build(Vertex n, std::span<const Arc> arcs) {
  DigraphBuilder b(n);
  for (const auto& [u, v] : arcs) b.add_arc(u, v);
  return std::move(b).finish();
}

VertexSet Digraph::live_vertices() const {
  VertexSet out;
  out.reserve(static_cast<std::size_t>(live_));
  for (Vertex v = 0; v < n(); ++v)
    if (alive(v)) out.push_back(v);
  return out;
}

bool Digraph::has_arc(Vertex u, Vertex v) const {
  if (u < 0 || u >= n() || v < 0 || v >= n()) return false;
  const auto& a = out_[static_cast<std::size_t>(u)];
  return std::binary_search(a.begin(), a.end(), v);
}

std::vector<Arc> Digraph::arcs() const {
  std::vector<Arc> out;
  out.reserve(arcs_);
  for (Vertex u = 0; u < n(); ++u)
    for (Vertex v : this->out(u)) out.emplace_back(u, v);
  return out;
}

int Digraph::min_out_degree() const {
  int best = -1;
  for (Vertex v = 0; v < n(); ++v)
    if (alive(v) && (best < 0 || out_degree(v) < best)) best = out_degree(v);
  return std::max(best, 0);
}

int Digraph::min_in_degree() const {
  int best = -1;
  for (Vertex v = 0; v < n(); ++v)
    if (alive(v) && (best < 0 || in_degree(v) < best)) best = in_degree(v);
  return std::max(best, 0);
}

DigraphBuilder::DigraphBuilder(Vertex n, bool all_alive) : g_(n) {
  if (!all_alive) {
    std::fill(g_.alive_.begin(), g_.alive_.end(), 0);
    g_.live_ = 0;
  }
}

void DigraphBuilder::set_alive(Vertex v, bool alive) {
  if (v < 0 || v >= g_.n()) throw GraphError("vertex out of range: " + std::to_string(v));
  g_.alive_[static_cast<std::size_t>(v)] = alive ? 1 : 0;
}

void DigraphBuilder::add_arc(Vertex u, Vertex v) {
  if (u < 0 || u >= g_.n() || v < 0 || v >= g_.n())
    throw GraphError("arc (" + std::to_string(u) + "," + std::to_string(v) + ") has an out-of-range endpoint");
  if (u == v) throw GraphError("self-loop at vertex " + std::to_string(u));
  g_.out_[static_cast<std::size_t>(u)].push_back(v);
  g_.alive_[static_cast<std::size_t>(u)] = 1;
  g_.alive_[static_cast<std::size_t>(v)] = 1;
}

Digraph DigraphBuilder::finish() && {
  g_.arcs_ = 0;
  for (auto& adj : g_.in_) adj.clear();
  for (Vertex u = 0; u < g_.n(); ++u) {
    auto& adj = g_.out_[static_cast<std::size_t>(u)];
    sort_unique(adj);
    g_.arcs_ += adj.size();
    for (Vertex v : adj) g_.in_[static_cast<std::size_t>(v)].push_back(u);
  }
  // tails were visited in ascending order, so in-lists are already sorted
  g_.live_ = static_cast<Vertex>(std::count(g_.alive_.begin(), g_.alive_.end(), 1));
  return std::move(g_);
}

std::vector<char> membership(Vertex n, std::span<const Vertex> xs) {
  std::vector<char> mask(static_cast<std::size_t>(n), 0);
  for (Vertex x : xs)
    if (x >= 0 && x < n) mask[static_cast<std::size_t>(x)] = 1;
  return mask;
}

Digraph delete_vertices(const Digraph& d, std::span<const Vertex> xs) {
  const auto gone = membership(d.n(), xs);
  DigraphBuilder b(d.n(), false);
  for (Vertex v = 0; v < d.n(); ++v)
    if (d.alive(v) && !gone[static_cast<std::size_t>(v)]) b.set_alive(v);
  for (Vertex u = 0; u < d.n(); ++u) {
    if (gone[static_cast<std::size_t>(u)]) continue;
    for (Vertex v : d.out(u))
      if (!gone[static_cast<std::size_t>(v)]) b.add_arc(u, v);
  }
  return std::move(b).finish();
}

Digraph delete_arcs(const Digraph& d, std::span<const Arc> arcs) {
  std::vector<Arc> drop(arcs.begin(), arcs.end());
  std::sort(drop.begin(), drop.end());
  DigraphBuilder b(d.n(), false);
  for (Vertex v = 0; v < d.n(); ++v)
    if (d.alive(v)) b.set_alive(v);
  for (Vertex u = 0; u < d.n(); ++u)
    for (Vertex v : d.out(u))
      if (!std::binary_search(drop.begin(), drop.end(), Arc{u, v})) b.add_arc(u, v);
  return std::move(b).finish();
}

Digraph induced(const Digraph& d, std::span<const Vertex> xs) {
  auto keep = membership(d.n(), xs);
  for (Vertex v = 0; v < d.n(); ++v)
    if (!d.alive(v)) keep[static_cast<std::size_t>(v)] = 0;
  DigraphBuilder b(d.n(), false);
  for (Vertex v = 0; v < d.n(); ++v)
    if (keep[static_cast<std::size_t>(v)]) b.set_alive(v);
  for (Vertex u = 0; u < d.n(); ++u) {
    if (!keep[static_cast<std::size_t>(u)]) continue;
    for (Vertex v : d.out(u))
      if (keep[static_cast<std::size_t>(v)]) b.add_arc(u, v);
  }
  return std::move(b).finish();
}

std::optional<Walk> shortest_path_to_set(const Digraph& d, Vertex v, std::span<const Vertex> target) {
  if (v < 0 || v >= d.n()) throw GraphError("vertex out of range: " + std::to_string(v));
  const auto goal = membership(d.n(), target);
  if (goal[static_cast<std::size_t>(v)]) return Walk{v};
  std::vector<Vertex> parent(static_cast<std::size_t>(d.n()), -1);
  std::deque<Vertex> queue{v};
  parent[static_cast<std::size_t>(v)] = v;
  while (!queue.empty()) {
    const Vertex u = queue.front();
    queue.pop_front();
    for (Vertex w : d.out(u)) {
      if (parent[static_cast<std::size_t>(w)] >= 0) continue;
      parent[static_cast<std::size_t>(w)] = u;
      if (goal[static_cast<std::size_t>(w)]) {
        Walk path{w};
        for (Vertex x = w; x != v;) {
          x = parent[static_cast<std::size_t>(x)];
          path.push_back(x);
        }
        std::reverse(path.begin(), path.end());
        return path;
      }
      queue.push_back(w);
    }
  }
  return std::nullopt;
}

VertexSet walks_of_length(const Digraph& d, Vertex v, int i) {
  if (i < 0) throw GraphError("walk length must be non-negative");
  VertexSet frontier{v};
  std::vector<char> seen(static_cast<std::size_t>(d.n()), 0);
  for (int step = 0; step < i && !frontier.empty(); ++step) {
    VertexSet next;
    for (Vertex u : frontier)
      for (Vertex w : d.out(u))
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          next.push_back(w);
        }
    for (Vertex w : next) seen[static_cast<std::size_t>(w)] = 0;
    std::sort(next.begin(), next.end());
    frontier = std::move(next);
  }
  return frontier;
}

std::vector<int> distance_to_set(const Digraph& d, std::span<const Vertex> target) {
  std::vector<int> dist(static_cast<std::size_t>(d.n()), -1);
  std::deque<Vertex> queue;
  for (Vertex r : target) {
    if (dist[static_cast<std::size_t>(r)] == 0) continue;
    dist[static_cast<std::size_t>(r)] = 0;
    queue.push_back(r);
  }
  while (!queue.empty()) {
    const Vertex u = queue.front();
    queue.pop_front();
    for (Vertex w : d.in(u))
      if (dist[static_cast<std::size_t>(w)] < 0) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
        queue.push_back(w);
      }
  }
  return dist;
}

bool is_walk(const Digraph& d, const Walk& w) {
  if (w.empty()) return false;
  for (Vertex v : w)
    if (v < 0 || v >= d.n() || !d.alive(v)) return false;
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (!d.has_arc(w[i], w[i + 1])) return false;
  return true;
}

bool is_path(const Digraph& d, const Walk& w) {
  if (!is_walk(d, w)) return false;
  std::vector<Vertex> sorted = w;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

std::string to_dot(const Digraph& d, std::span<const Vertex> roots) {
  const auto is_root = membership(d.n(), roots);
  std::ostringstream os;
  os << "digraph D {\n";
  for (Vertex v = 0; v < d.n(); ++v) {
    if (!d.alive(v)) continue;
    if (is_root[static_cast<std::size_t>(v)])
      os << "  " << v << " [shape=doublecircle];\n";
    else if (d.out_degree(v) == 0 && d.in_degree(v) == 0)
      os << "  " << v << ";\n";
  }
  for (const auto& [u, v] : d.arcs()) os << "  " << u << " -> " << v << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace broomkit
