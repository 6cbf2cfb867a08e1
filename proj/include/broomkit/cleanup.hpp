#pragma once

#include <optional>
#include <string>
#include <vector>

#include "broomkit/subsample.hpp"

namespace broomkit {

enum class CleanupMode { strict, parametric };

struct CleanupResult {
  std::optional<BroomDigraph> value;  // k-typed, root set inside the input root set
  std::string failure;
  LovaszResult subsample;
  std::vector<RootReport> in_degrees;  // in-degree of each surviving root in the input digraph
  int typed_degree = 0;                // broom parameter right after typing
  explicit operator bool() const { return value.has_value(); }
};

/// Smallest N with 10^N the strict-mode lower bound on d, i.e. 13 k^3.
double strict_exponent(int k);

/// Subsample, type to t = k, then prune to `target_degree` (0 keeps the typed
/// degree). Strict mode refuses every d below 10^(13 k^3) before doing anything.
CleanupResult clean_up(const BroomDigraph& b, CleanupMode mode, const SubsampleParams& params,
                       int target_degree = 0);

}  // namespace broomkit
