#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "broomkit/digraph.hpp"
#include "broomkit/out_tree.hpp"

namespace broomkit {

/// Certified (k,d)-broom. `ell` is the inferred shape class: a balanced
/// out-arborescence of height ell <= k with all non-leaves of out-degree d,
/// or (ell == k+1) such a tree of height k+1 whose root arcs were subdivided.
struct Broom {
  Vertex root = -1;
  int k = 0;
  int d = 0;
  int ell = 0;
  std::vector<Arc> arcs;     // sorted
  VertexSet subdivision;     // out-degree-1 vertices on subdivided root arcs
  VertexSet leaves;
};

enum class BroomViolation {
  none,
  not_arborescence,
  height_zero,
  unbalanced,
  wrong_degree,
  illegal_subdivision,
};

const char* to_string(BroomViolation v);

struct BroomCheck {
  std::optional<Broom> broom;
  BroomViolation violation = BroomViolation::none;
  std::string detail;
  explicit operator bool() const { return broom.has_value(); }
};

BroomCheck validate_broom(std::span<const Arc> arcs, Vertex root, int k, int d);
BroomCheck validate_broom(const Digraph& candidate, Vertex root, int k, int d);

/// One entry of a broom-digraph certificate: the arcs of T_r.
struct BroomSpec {
  Vertex root = -1;
  std::vector<Arc> arcs;
};

struct Certificate {
  VertexSet roots;
  std::vector<BroomSpec> brooms;
};

/// A digraph together with a validated broom decomposition. Construct only
/// through validate_broom_digraph (or helpers that call it).
struct BroomDigraph {
  Digraph graph;
  VertexSet roots;
  int k = 0;
  int d = 0;
  std::vector<Broom> brooms;          // parallel to `roots`
  std::vector<char> is_root;          // dense mask over graph.n()
  std::vector<Vertex> owner;          // root of the broom holding v as root/internal; -1 otherwise
  std::vector<Vertex> broom_parent;   // parent of v inside its owner broom; -1 for roots

  const Broom& broom_of(Vertex r) const;
  Certificate certificate() const;
};

enum class DigraphClause {
  none,
  empty_root_set,
  root_out_of_range,
  missing_broom,
  duplicate_broom,
  stray_broom,
  bad_broom,
  leaf_outside_roots,
  internal_in_roots,
  not_internally_disjoint,
  arc_not_in_digraph,
  arc_not_covered,
  vertex_not_covered,
};

const char* to_string(DigraphClause c);

struct BroomDigraphCheck {
  std::optional<BroomDigraph> value;
  DigraphClause clause = DigraphClause::none;
  std::vector<Vertex> witnesses;
  std::string detail;
  explicit operator bool() const { return value.has_value(); }
};

BroomDigraphCheck validate_broom_digraph(const Digraph& d, const VertexSet& roots,
                                         std::span<const BroomSpec> brooms, int k, int deg);

/// Builds the union digraph over ids 0..n-1 and validates it. Throws
/// std::logic_error when the pieces do not form a broom digraph.
BroomDigraph assemble_broom_digraph(Vertex n, VertexSet roots, std::vector<BroomSpec> brooms, int k, int deg);

/// R = V(D) with height-1 out-stars; requires a d-out-regular input with d >= 1.
BroomDigraph from_out_regular(const Digraph& d, int k);

/// Keeps the d smallest-id out-neighbours of every vertex.
Digraph trim_out_regular(const Digraph& d, int deg);

/// Root-to-u path inside the broom holding u as root or internal vertex.
Walk source_path(const BroomDigraph& b, Vertex u);

/// True when some directed path of length <= k leads from v into R.
bool lemma_high_degree_check(const BroomDigraph& b, Vertex v);

/// Keeps the `target` smallest-id children of every vertex reachable from the
/// root, except vertices in `untouched`, which keep all of theirs.
std::vector<Arc> prune_out_tree(const OutTree& t, const VertexSet& untouched, int target);

/// Prunes every broom so each vertex of out-degree d keeps its `target`
/// smallest-id children; subdivision vertices are untouched. Vertices that
/// fall out of every broom become tombstones.
BroomDigraph prune_degree(const BroomDigraph& b, int target);

}  // namespace broomkit
