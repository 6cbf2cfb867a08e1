#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "broomkit/broom.hpp"
#include "broomkit/cleanup.hpp"
#include "broomkit/grounded.hpp"

namespace broomkit {

/// Injective map from tree vertices to host vertices, indexed by tree id;
/// -1 on tree ids that are dead or not placed yet.
struct Embedding {
  std::vector<Vertex> map;

  Embedding() = default;
  explicit Embedding(Vertex tree_n) : map(static_cast<std::size_t>(tree_n), -1) {}
  Vertex operator[](Vertex x) const { return map[static_cast<std::size_t>(x)]; }
  Vertex& operator[](Vertex x) { return map[static_cast<std::size_t>(x)]; }
  bool operator==(const Embedding&) const = default;
};

/// Empty string when every live tree vertex is mapped injectively onto live
/// host vertices and every tree arc lands on a host arc; otherwise the first
/// problem found.
std::string embedding_error(const Digraph& host, const Digraph& tree, const Embedding& e);

enum class PeelDirection : std::uint8_t { out_of_neighbor, into_neighbor };

struct PeelStep {
  Vertex leaf = -1;
  Vertex neighbor = -1;
  PeelDirection direction = PeelDirection::out_of_neighbor;
};

struct PeelSequence {
  std::vector<PeelStep> steps;  // in removal order
  Digraph core;                 // the tree with peeled leaves as tombstones
};

/// Removes highest vertices (smallest id first) until the rest is
/// max-grounded. Throws GraphError on trees that are not grounded.
PeelSequence max_grounded_core(const Digraph& tree);

/// Restores the peeled leaves in reverse order, each on the smallest unused
/// out-neighbour of its neighbour's image. Needs min out-degree >= |V(T)|.
Embedding extend_by_peels(const Digraph& host, const Digraph& tree, const PeelSequence& peels, Embedding core);

enum class ProperClause : std::uint8_t { embedding, root_condition, paths_overlap, path_meets_copy };

const char* to_string(ProperClause c);

struct ProperViolation {
  ProperClause clause = ProperClause::embedding;
  Vertex tree_vertex = -1;  // the source (or height-0 vertex) concerned
  Vertex other = -1;        // second tree vertex for overlaps, -1 otherwise
  Vertex witness = -1;      // host vertex where the clause breaks
  std::string detail;
};

struct ProperCheck {
  bool proper = false;
  std::vector<ProperViolation> violations;
  std::vector<std::pair<Vertex, Walk>> source_paths;  // (tree source, P_D of its image)
  explicit operator bool() const { return proper; }
};

/// Checks the two proper-copy clauses literally: height-0 vertices land in R,
/// and the source paths of Z(F) are pairwise disjoint and miss V(F) \ Z(F).
/// Every violation is reported, not only the first.
ProperCheck check_proper(const BroomDigraph& b, const Digraph& tree, const Embedding& e);

struct BruteOptions {
  Vertex guard = 14;          // live host vertices allowed without `force`
  bool force = false;
  const BroomDigraph* proper_in = nullptr;  // when set, only proper copies count
};

struct SearchStats {
  std::int64_t nodes = 0;
  int restarts = 0;
  bool exhausted = false;  // budget ran out before the search finished
  bool complete = false;   // the search space was fully explored
};

struct EmbedResult {
  std::optional<Embedding> embedding;
  SearchStats stats;
  explicit operator bool() const { return embedding.has_value(); }
};

/// Plain backtracking in degree-descending tree order with ascending host
/// candidates; returns the first solution in that order.
EmbedResult brute_embed(const Digraph& host, const Digraph& tree, const BruteOptions& options = {});

struct HeuristicOptions {
  std::int64_t node_budget = 2'000'000;
  int restarts = 8;
  std::int64_t first_restart_nodes = 2'000;
  std::uint64_t seed = 0;
};

/// Randomised-restart search that seats in-branching vertices on high
/// in-degree hosts first, followed by an exhaustive pass with whatever budget
/// is left. Works on the max-grounded core when the host has enough
/// out-degree and restores peeled leaves afterwards. A returned embedding is
/// always validated; absence only means nothing was found within budget,
/// unless stats.complete is set.
EmbedResult heuristic_embed(const Digraph& host, const Digraph& tree, const HeuristicOptions& options = {});

struct LevelSchedule {
  SubsampleParams subsample;
  int target_degree = 0;
};

struct ConstructiveParams {
  CleanupMode mode = CleanupMode::parametric;
  std::vector<LevelSchedule> schedule;  // entry i drives the clean-up at depth i; the last entry repeats
};

enum class EmbedCase : std::uint8_t { base, in_leaf_internal, in_leaf_root, out_leaf };

const char* to_string(EmbedCase c);

struct LevelTrace {
  int tree_size = 0;
  Vertex leaf = -1;
  Vertex neighbor = -1;
  Vertex split = -1;   // s
  Vertex target = -1;  // v
  int ell1 = 0;
  int ell2 = 0;
  EmbedCase which = EmbedCase::base;
  Vertex image = -1;   // host vertex chosen for the leaf
  std::size_t roots = 0;
  int degree = 0;
};

struct ConstructiveResult {
  std::optional<Embedding> embedding;
  ProperCheck proper;
  std::vector<LevelTrace> trace;  // outermost level first
  int failed_size = 0;
  std::string failed_case;
  std::string failure;
  explicit operator bool() const { return embedding.has_value(); }
};

/// log10 of the smallest d the strict mode accepts: 13 k^3 (8k)^|V(T)|.
double constructive_exponent(int k, int tree_order);

/// Peels a leaf of minimum height, recurses on T - l inside the cleaned-up
/// digraph and puts the leaf back by the case that applies. Every level's
/// result goes through check_proper before it is returned.
ConstructiveResult constructive_embed(const BroomDigraph& b, const Digraph& tree, const ConstructiveParams& params);

}  // namespace broomkit
