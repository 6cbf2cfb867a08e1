#include "broomkit/cleanup.hpp"

#include <cmath>
#include <stdexcept>

#include "broomkit/restructure.hpp"

namespace broomkit {

double strict_exponent(int k) { return 13.0 * k * k * k; }

CleanupResult clean_up(const BroomDigraph& b, CleanupMode mode, const SubsampleParams& params, int target_degree) {
  CleanupResult out;
  if (mode == CleanupMode::strict) {
    const double need = strict_exponent(b.k);
    if (std::log10(static_cast<double>(b.d)) < need) {
      out.failure = "strict mode requires d >= 10^" + std::to_string(static_cast<long long>(need)) + " for k = " +
                    std::to_string(b.k) + ", got d = " + std::to_string(b.d);
      return out;
    }
  }
  out.subsample = lovasz_trick(b, params);
  if (!out.subsample) {
    out.failure = "subsample failed at step '" + out.subsample.failed_step + "': " + out.subsample.failure;
    return out;
  }
  BroomDigraph typed = make_typed(*out.subsample.value, b.k);
  out.typed_degree = typed.d;
  if (target_degree > 0) {
    if (target_degree > typed.d) {
      out.failure = "target degree " + std::to_string(target_degree) + " exceeds the typed broom degree " +
                    std::to_string(typed.d);
      return out;
    }
    typed = prune_degree(typed, target_degree);
    if (!is_typed(typed, b.k)) throw std::logic_error("degree pruning broke k-typedness");
  }
  for (Vertex r : typed.roots) out.in_degrees.push_back({r, b.graph.in_degree(r)});
  out.value = std::move(typed);
  return out;
}

}  // namespace broomkit
