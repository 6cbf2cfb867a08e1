#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace broomkit {

using Vertex = std::int32_t;
using Arc = std::pair<Vertex, Vertex>;

/// Sorted, duplicate-free list of vertex identifiers.
using VertexSet = std::vector<Vertex>;

/// Vertex sequence (v_0, ..., v_m); its length is the number of arcs, m.
using Walk = std::vector<Vertex>;

inline std::size_t walk_length(const Walk& w) { return w.empty() ? 0 : w.size() - 1; }

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Simple digraph on the identifiers 0..n-1.
///
/// Deleted vertices stay in the identifier space as isolated tombstones, so a
/// vertex keeps its identity across every subdigraph derived from the same
/// host. Adjacency lists are sorted ascending and every traversal in the
/// library iterates them in that order: ties break toward the smallest id.
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(Vertex n);

  /// Rejects self-loops and out-of-range endpoints; duplicate arcs are dropped.
  static Digraph build(Vertex n, std::span<const Arc> arcs);
  static Digraph build(Vertex n, std::initializer_list<Arc> arcs) {
    return build(n, std::span<const Arc>(arcs.begin(), arcs.size()));
  }

  Vertex n() const { return static_cast<Vertex>(out_.size()); }
  bool alive(Vertex v) const { return alive_[static_cast<std::size_t>(v)] != 0; }
  Vertex live_count() const { return live_; }
  VertexSet live_vertices() const;

  std::span<const Vertex> out(Vertex v) const { return out_[static_cast<std::size_t>(v)]; }
  std::span<const Vertex> in(Vertex v) const { return in_[static_cast<std::size_t>(v)]; }
  int out_degree(Vertex v) const { return static_cast<int>(out_[static_cast<std::size_t>(v)].size()); }
  int in_degree(Vertex v) const { return static_cast<int>(in_[static_cast<std::size_t>(v)].size()); }
  bool has_arc(Vertex u, Vertex v) const;
  std::size_t arc_count() const { return arcs_; }
  std::vector<Arc> arcs() const;

  /// Minimum out-degree over live vertices (0 for an empty digraph).
  int min_out_degree() const;
  int min_in_degree() const;

  bool operator==(const Digraph& other) const {
    return alive_ == other.alive_ && out_ == other.out_;
  }

 private:
  friend class DigraphBuilder;
  std::vector<char> alive_;
  std::vector<std::vector<Vertex>> out_;
  std::vector<std::vector<Vertex>> in_;
  std::size_t arcs_ = 0;
  Vertex live_ = 0;
};

/// Incremental construction of a Digraph over a fixed identifier space.
/// Arcs may be added in any order; finish() sorts and deduplicates.
class DigraphBuilder {
 public:
  explicit DigraphBuilder(Vertex n, bool all_alive = true);
  void set_alive(Vertex v, bool alive = true);
  void add_arc(Vertex u, Vertex v);
  Digraph finish() &&;

 private:
  Digraph g_;
};

Digraph delete_vertices(const Digraph& d, std::span<const Vertex> xs);
Digraph delete_arcs(const Digraph& d, std::span<const Arc> arcs);
Digraph induced(const Digraph& d, std::span<const Vertex> xs);

/// BFS-shortest directed path from v into the set marked by `in_target`.
/// Out-neighbours are expanded in ascending order and the first target
/// reached wins, so equal-length alternatives resolve toward smaller ids.
std::optional<Walk> shortest_path_to_set(const Digraph& d, Vertex v, std::span<const Vertex> target);

/// Endpoints of all walks of length exactly i starting at v.
VertexSet walks_of_length(const Digraph& d, Vertex v, int i);

/// Directed distance from every vertex to the nearest member of `target`
/// (-1 if unreachable). Multi-source BFS along in-arcs.
std::vector<int> distance_to_set(const Digraph& d, std::span<const Vertex> target);

/// Dense membership mask of length d.n().
std::vector<char> membership(Vertex n, std::span<const Vertex> xs);

bool is_walk(const Digraph& d, const Walk& w);
bool is_path(const Digraph& d, const Walk& w);

std::string to_dot(const Digraph& d, std::span<const Vertex> roots = {});

}  // namespace broomkit
