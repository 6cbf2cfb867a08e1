#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "broomkit/broom.hpp"

namespace broomkit {

struct SubsampleParams {
  double p_keep = 1.0;               // keep probability of each arc leaving a full-degree vertex
  int outdeg_floor = 0;              // bad event: kept out-degree <= floor
  double indeg_root_threshold = 1.0; // roots below this in-degree must keep <= 1 in-arc
  int broom_target = 1;              // out-degree of the brooms built on the sample
  std::int64_t resample_cap = 1'000'000;
  std::uint64_t seed = 0;

  void validate() const;
};

enum class EventKind : std::uint8_t { low_out_degree, high_in_degree };

struct ResampleStep {
  Vertex vertex = -1;
  EventKind kind = EventKind::low_out_degree;
  int resampled = 0;        // arc variables redrawn
  std::size_t open_after = 0;
};

struct SubsampleState {
  Digraph kept;              // H
  VertexSet full_degree;     // U: out-degree exactly d
  VertexSet low_in_roots;    // W: roots with in-degree below the threshold
  VertexSet violated_low_out;
  VertexSet violated_high_in;
  std::int64_t rounds = 0;
  std::size_t initial_violations = 0;
  std::vector<ResampleStep> log;
  std::vector<std::string> warnings;
  bool success = false;
  std::string failure;
};

/// Samples H and resamples locally until no vertex of U keeps <= floor
/// out-arcs and no vertex of W keeps >= 2 in-arcs, or the round cap is hit.
/// The violated event with the smallest vertex id is fixed first; only the
/// arc variables defining that event are redrawn.
SubsampleState sample_good_subdigraph(const BroomDigraph& b, const SubsampleParams& params);

struct RootReport {
  Vertex root = -1;
  int original_in_degree = 0;
};

struct LovaszResult {
  std::optional<BroomDigraph> value;
  std::string failed_step;   // sample | roots | disjointness | extract | extend | assemble
  std::string failure;
  SubsampleState sample;
  std::vector<RootReport> in_degrees;
  std::size_t degenerate_roots = 0;  // roots whose pruned reach is the root alone
  std::vector<std::string> notes;
  explicit operator bool() const { return value.has_value(); }
};

/// Turns a good sample into a (k, broom_target)-broom digraph whose roots
/// are the vertices of in-degree >= 2 in H.
LovaszResult lovasz_trick(const BroomDigraph& b, const SubsampleParams& params);

/// e * p * d for the sufficient local-lemma condition with the probability
/// bounds exp(-d^(1/3)/8) and d^(-17/15).
double local_lemma_product(int d);

}  // namespace broomkit
