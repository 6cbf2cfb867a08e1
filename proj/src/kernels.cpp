#include "broomkit/kernels.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace broomkit {

namespace {

// Reusable visit marks; a bump of `stamp` clears them in O(1).
struct Marks {
  std::vector<std::uint32_t> seen;
  std::uint32_t stamp = 0;
  explicit Marks(Vertex n) : seen(static_cast<std::size_t>(n), 0) {}
  void next() {
    if (++stamp == 0) {
      std::fill(seen.begin(), seen.end(), 0);
      stamp = 1;
    }
  }
  bool visit(Vertex v) {
    auto& s = seen[static_cast<std::size_t>(v)];
    if (s == stamp) return false;
    s = stamp;
    return true;
  }
};

std::int64_t type_code_of(const BroomDigraph& b, Vertex v, int t, Marks& marks, std::vector<Vertex>& frontier,
                          std::vector<Vertex>& next) {
  std::int64_t code = 0;
  frontier.assign(1, v);
  for (int i = 1; i <= t; ++i) {
    marks.next();
    next.clear();
    std::size_t in_roots = 0;
    for (Vertex u : frontier)
      for (Vertex w : b.graph.out(u))
        if (marks.visit(w)) {
          next.push_back(w);
          in_roots += b.is_root[static_cast<std::size_t>(w)] ? 1 : 0;
        }
    if (in_roots != 0 && in_roots != next.size()) return -1;
    if (!next.empty() && in_roots == next.size()) code |= std::int64_t{1} << (i - 1);
    frontier.swap(next);
  }
  return code;
}

bool near_root(const BroomDigraph& b, Vertex v, Marks& marks, std::vector<Vertex>& frontier,
               std::vector<Vertex>& next) {
  if (b.is_root[static_cast<std::size_t>(v)]) return true;
  marks.next();
  marks.visit(v);
  frontier.assign(1, v);
  for (int step = 1; step <= b.k && !frontier.empty(); ++step) {
    next.clear();
    for (Vertex u : frontier)
      for (Vertex w : b.graph.out(u)) {
        if (b.is_root[static_cast<std::size_t>(w)]) return true;
        if (marks.visit(w)) next.push_back(w);
      }
    frontier.swap(next);
  }
  return false;
}

}  // namespace

int worker_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<std::int64_t> type_codes(const BroomDigraph& b, int t, Exec exec) {
  const Vertex n = b.graph.n();
  std::vector<std::int64_t> codes(static_cast<std::size_t>(n), -1);
  if (exec == Exec::serial) {
    Marks marks(n);
    std::vector<Vertex> frontier, next;
    for (Vertex v = 0; v < n; ++v)
      if (b.graph.alive(v)) codes[static_cast<std::size_t>(v)] = type_code_of(b, v, t, marks, frontier, next);
    return codes;
  }
#pragma omp parallel
  {
    Marks marks(n);
    std::vector<Vertex> frontier, next;
#pragma omp for schedule(dynamic, 64)
    for (Vertex v = 0; v < n; ++v)
      if (b.graph.alive(v)) codes[static_cast<std::size_t>(v)] = type_code_of(b, v, t, marks, frontier, next);
  }
  return codes;
}

HighDegreeScan scan_high_degree(const BroomDigraph& b, Exec exec) {
  const Vertex n = b.graph.n();
  std::vector<char> near(static_cast<std::size_t>(n), 0);
  if (exec == Exec::serial) {
    Marks marks(n);
    std::vector<Vertex> frontier, next;
    for (Vertex v = 0; v < n; ++v)
      if (b.graph.alive(v)) near[static_cast<std::size_t>(v)] = near_root(b, v, marks, frontier, next) ? 1 : 0;
  } else {
#pragma omp parallel
    {
      Marks marks(n);
      std::vector<Vertex> frontier, next;
#pragma omp for schedule(dynamic, 64)
      for (Vertex v = 0; v < n; ++v)
        if (b.graph.alive(v)) near[static_cast<std::size_t>(v)] = near_root(b, v, marks, frontier, next) ? 1 : 0;
    }
  }
  HighDegreeScan scan;
  for (Vertex v = 0; v < n; ++v) {
    if (!near[static_cast<std::size_t>(v)]) continue;
    ++scan.near_roots;
    if (b.graph.out_degree(v) != b.d) scan.violations.push_back(v);
  }
  return scan;
}

}  // namespace broomkit
