#pragma once

#include <cstdint>
#include <vector>

#include "broomkit/broom.hpp"

// Per-vertex sweeps over a whole broom digraph. Each kernel has a serial
// reference path and an OpenMP path; both must return identical results.

namespace broomkit {

enum class Exec { serial, parallel };

/// t-type of every vertex encoded as sum a_i << (i-1); -1 when the vertex has
/// no t-type, and also on dead ids.
std::vector<std::int64_t> type_codes(const BroomDigraph& b, int t, Exec exec = Exec::parallel);

struct HighDegreeScan {
  std::size_t near_roots = 0;     // vertices with a path of length <= k into R
  std::vector<Vertex> violations; // near-root vertices whose out-degree is not d
};

/// Runs lemma_high_degree_check on every live vertex and records each vertex
/// it accepts whose out-degree differs from the broom parameter d.
HighDegreeScan scan_high_degree(const BroomDigraph& b, Exec exec = Exec::parallel);

/// Threads the parallel path will use (1 when built without OpenMP).
int worker_count();

}  // namespace broomkit
