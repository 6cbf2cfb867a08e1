#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "broomkit/broom.hpp"
#include "broomkit/embed.hpp"
#include "broomkit/kernels.hpp"

namespace broomkit {

/// splitmix64 of (seed, index): the per-job seed used by every parallel
/// generator and experiment, independent of thread scheduling.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Every vertex picks d distinct out-neighbours uniformly among the others.
/// Vertex v draws from its own derived stream, so serial and parallel runs
/// agree byte for byte.
Digraph gen_out_regular(Vertex n, int d, std::uint64_t seed, Exec exec = Exec::parallel);

/// Broom numbered in DFS preorder from 0. For ell = k + 1, `subdivisions[i]`
/// extra vertices go on the i-th root arc; an empty profile draws 0..2 per arc
/// from the seed.
Broom gen_broom(int k, int d, int ell, std::span<const int> subdivisions = {}, std::uint64_t seed = 0);

/// Roots are 0..n_roots-1, internal vertices get fresh ids after them. Each
/// broom draws its ell from `mix` and its leaves as a uniform sample of the
/// other roots. The default mix is every ell in 1..k+1 with d^ell < n_roots.
BroomDigraph gen_broom_digraph(int k, int d, Vertex n_roots, std::span<const int> mix, std::uint64_t seed);

/// Random labelled tree (Pruefer) with random orientations, resampled until
/// grounded (and max-grounded when asked). After 10^4 rejections it falls back
/// to an out-arborescence, which is always max-grounded.
Digraph gen_grounded_tree(Vertex order, std::uint64_t seed, bool max_grounded_only = false);

/// Canonical string of an oriented tree, equal for isomorphic trees.
std::string tree_canonical_form(const Digraph& tree);

/// All oriented trees on `order` vertices up to isomorphism (order <= 8).
std::vector<Digraph> enumerate_oriented_trees(Vertex order);

/// The grounded ones among them (order <= 7).
std::vector<Digraph> enumerate_grounded_trees(Vertex order, bool max_grounded_only = false);

struct FavorableParams {
  int height = 0;      // uniform broom height; 0 picks 2 when T reaches height -2, else 1
  int k = 0;           // 0 picks 1
  int d = 0;           // 0 picks max(2, |V(T)|)
  Vertex n_roots = 0;  // 0 picks the smallest pool that fits: d^height + 1
  std::uint64_t seed = 0;
};

struct FavorableInstance {
  BroomDigraph digraph;
  ConstructiveParams params;
  std::vector<std::pair<std::string, std::string>> manifest;
};

/// Broom digraph on which the constructive embedder's runtime claims hold
/// for T. Every broom has the same height, leaves are spread evenly so
/// each root has in-degree d^height, and the clean-up schedule is precomputed
/// level by level. Fails with GraphError when the degree schedule runs dry.
FavorableInstance gen_favorable(const Digraph& tree, const FavorableParams& params = {});

struct DkConfig {
  Vertex order = 3;               // tree order (the k of d_k)
  std::vector<int> degrees{1, 2, 3, 4};
  Vertex n = 200;
  int trials = 10;
  std::int64_t node_budget = 200'000;
  std::uint64_t seed = 0;
};

struct DkCell {
  std::size_t tree = 0;
  int d = 0;
  int trials = 0;
  int found = 0;
  int unresolved = 0;   // budget ran out: neither found nor refuted
  int absent = 0;       // exhaustive search completed without a copy
  std::int64_t nodes = 0;
};

struct DkEstimate {
  Vertex order = 0;
  std::vector<Digraph> trees;
  std::vector<DkCell> cells;               // tree-major, degree-minor
  std::vector<int> all_found_from;         // per tree: smallest d with every trial found, -1 if none
  std::vector<std::string> monotonicity;   // soft-check notes: success rate dropping as d grows
  int lower_observation = -1;  // largest d with some tree not found in every trial
  int upper_observation = -1;  // smallest d from which every tree was always found
};

DkEstimate estimate_dk(const DkConfig& config);

std::string dk_csv(const DkEstimate& e);

}  // namespace broomkit
