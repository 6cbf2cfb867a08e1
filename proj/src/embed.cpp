#include "broomkit/embed.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace broomkit {

namespace {

std::size_t at(Vertex v) { return static_cast<std::size_t>(v); }

VertexSet undirected_neighbors(const Digraph& t, Vertex x) {
  VertexSet nb(t.out(x).begin(), t.out(x).end());
  nb.insert(nb.end(), t.in(x).begin(), t.in(x).end());
  std::sort(nb.begin(), nb.end());
  return nb;
}

}  // namespace

std::string embedding_error(const Digraph& host, const Digraph& tree, const Embedding& e) {
  if (e.map.size() != static_cast<std::size_t>(tree.n())) return "map size differs from the tree's id space";
  std::vector<Vertex> by_image(static_cast<std::size_t>(host.n()), -1);
  for (Vertex x = 0; x < tree.n(); ++x) {
    if (!tree.alive(x)) continue;
    const Vertex y = e[x];
    if (y < 0 || y >= host.n() || !host.alive(y))
      return "tree vertex " + std::to_string(x) + " maps to " + std::to_string(y) + ", not a live host vertex";
    if (by_image[at(y)] >= 0)
      return "tree vertices " + std::to_string(by_image[at(y)]) + " and " + std::to_string(x) +
             " share the image " + std::to_string(y);
    by_image[at(y)] = x;
  }
  for (const auto& [a, b] : tree.arcs())
    if (!host.has_arc(e[a], e[b]))
      return "tree arc (" + std::to_string(a) + "," + std::to_string(b) + ") maps to the non-arc (" +
             std::to_string(e[a]) + "," + std::to_string(e[b]) + ")";
  return {};
}

PeelSequence max_grounded_core(const Digraph& tree) {
  if (!grounded_profile(tree).grounded) throw GraphError("tree is not grounded");
  PeelSequence seq;
  Digraph current = tree;
  for (;;) {
    const auto profile = grounded_profile(current);
    if (profile.max_grounded) break;
    Vertex top = -1;
    for (Vertex v = 0; v < current.n() && top < 0; ++v)
      if (current.alive(v) && profile.height[at(v)] == 0) top = v;
    if (current.out_degree(top) != 0 || current.in_degree(top) != 1)
      throw std::logic_error("highest vertex " + std::to_string(top) + " is not an in-leaf");
    seq.steps.push_back({top, current.in(top).front(), PeelDirection::out_of_neighbor});
    const Vertex gone[] = {top};
    current = delete_vertices(current, gone);
  }
  seq.core = std::move(current);
  return seq;
}

Embedding extend_by_peels(const Digraph& host, const Digraph& tree, const PeelSequence& peels, Embedding core) {
  if (host.min_out_degree() < tree.live_count())
    throw GraphError("host minimum out-degree " + std::to_string(host.min_out_degree()) + " is below |V(T)| = " +
                     std::to_string(tree.live_count()));
  std::vector<char> used(static_cast<std::size_t>(host.n()), 0);
  for (Vertex y : core.map)
    if (y >= 0) used[at(y)] = 1;
  for (auto it = peels.steps.rbegin(); it != peels.steps.rend(); ++it) {
    const Vertex image = core[it->neighbor];
    const auto options = it->direction == PeelDirection::out_of_neighbor ? host.out(image) : host.in(image);
    const auto pick = std::find_if(options.begin(), options.end(), [&](Vertex w) { return !used[at(w)]; });
    if (pick == options.end())
      throw std::logic_error("no free neighbour of " + std::to_string(image) + " for peeled leaf " +
                             std::to_string(it->leaf));
    core[it->leaf] = *pick;
    used[at(*pick)] = 1;
  }
  return core;
}

const char* to_string(ProperClause c) {
  switch (c) {
    case ProperClause::embedding: return "embedding";
    case ProperClause::root_condition: return "root_condition";
    case ProperClause::paths_overlap: return "paths_overlap";
    case ProperClause::path_meets_copy: return "path_meets_copy";
  }
  return "?";
}

ProperCheck check_proper(const BroomDigraph& b, const Digraph& tree, const Embedding& e) {
  ProperCheck pc;
  if (auto err = embedding_error(b.graph, tree, e); !err.empty()) {
    pc.violations.push_back({ProperClause::embedding, -1, -1, -1, std::move(err)});
    return pc;
  }
  const auto h = height_function(tree);
  std::vector<Vertex> preimage(static_cast<std::size_t>(b.graph.n()), -1);
  for (Vertex x = 0; x < tree.n(); ++x)
    if (tree.alive(x)) preimage[at(e[x])] = x;

  for (Vertex x = 0; x < tree.n(); ++x)
    if (tree.alive(x) && h[at(x)] == 0 && !b.is_root[at(e[x])])
      pc.violations.push_back({ProperClause::root_condition, x, -1, e[x],
                               "height-0 vertex " + std::to_string(x) + " sits on non-root " + std::to_string(e[x])});

  std::vector<Vertex> claimed(static_cast<std::size_t>(b.graph.n()), -1);
  std::map<std::pair<Vertex, Vertex>, bool> reported;
  for (Vertex x = 0; x < tree.n(); ++x) {
    if (!tree.alive(x) || tree.in_degree(x) != 0) continue;
    Walk path = source_path(b, e[x]);
    for (Vertex w : path) {
      const Vertex y = preimage[at(w)];
      if (y >= 0 && tree.in_degree(y) != 0)
        pc.violations.push_back({ProperClause::path_meets_copy, x, y, w,
                                 "source path of " + std::to_string(x) + " passes through the image of " +
                                     std::to_string(y)});
      Vertex& c = claimed[at(w)];
      if (c >= 0 && c != x && !reported[{c, x}]) {
        reported[{c, x}] = true;
        pc.violations.push_back({ProperClause::paths_overlap, c, x, w,
                                 "source paths of " + std::to_string(c) + " and " + std::to_string(x) + " share " +
                                     std::to_string(w)});
      }
      if (c < 0) c = x;
    }
    pc.source_paths.emplace_back(x, std::move(path));
  }
  pc.proper = pc.violations.empty();
  return pc;
}

EmbedResult brute_embed(const Digraph& host, const Digraph& tree, const BruteOptions& options) {
  if (host.live_count() > options.guard && !options.force)
    throw GraphError("host has " + std::to_string(host.live_count()) + " live vertices, above the guard of " +
                     std::to_string(options.guard));
  if (tree.live_count() == 0) throw GraphError("empty pattern");
  auto order = tree.live_vertices();
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    return tree.out_degree(a) + tree.in_degree(a) > tree.out_degree(b) + tree.in_degree(b);
  });
  const auto candidates = host.live_vertices();
  EmbedResult result;
  Embedding e(tree.n());
  std::vector<char> used(static_cast<std::size_t>(host.n()), 0);

  std::function<bool(std::size_t)> place = [&](std::size_t i) -> bool {
    if (i == order.size())
      return options.proper_in == nullptr || check_proper(*options.proper_in, tree, e).proper;
    const Vertex x = order[i];
    for (Vertex c : candidates) {
      if (used[at(c)] || host.out_degree(c) < tree.out_degree(x) || host.in_degree(c) < tree.in_degree(x)) continue;
      bool fits = true;
      for (Vertex y : tree.out(x))
        if (e[y] >= 0 && !host.has_arc(c, e[y])) fits = false;
      for (Vertex y : tree.in(x))
        if (e[y] >= 0 && !host.has_arc(e[y], c)) fits = false;
      if (!fits) continue;
      ++result.stats.nodes;
      e[x] = c;
      used[at(c)] = 1;
      if (place(i + 1)) return true;
      used[at(c)] = 0;
      e[x] = -1;
    }
    return false;
  };
  if (place(0)) result.embedding = e;
  result.stats.complete = true;
  return result;
}

namespace {

// Depth-first search over a BFS order of a tree pattern: each vertex after
// the first is adjacent to its already placed BFS parent, so candidates come
// straight from the parent's image.
class TreeSearch {
 public:
  TreeSearch(const Digraph& host, const Digraph& pattern) : host_(host), pattern_(pattern) {
    const auto live = pattern.live_vertices();
    Vertex start = live.front();
    int best = -1;
    for (Vertex x : live) {
      const int score = pattern.in_degree(x) >= 2 ? 1000 + pattern.in_degree(x)
                                                  : pattern.in_degree(x) + pattern.out_degree(x);
      if (score > best) {
        best = score;
        start = x;
      }
    }
    parent_.assign(static_cast<std::size_t>(pattern.n()), -1);
    forward_.assign(static_cast<std::size_t>(pattern.n()), 0);
    std::vector<char> seen(static_cast<std::size_t>(pattern.n()), 0);
    std::deque<Vertex> queue{start};
    seen[at(start)] = 1;
    while (!queue.empty()) {
      const Vertex x = queue.front();
      queue.pop_front();
      order_.push_back(x);
      for (Vertex y : undirected_neighbors(pattern, x))
        if (!seen[at(y)]) {
          seen[at(y)] = 1;
          parent_[at(y)] = x;
          forward_[at(y)] = pattern.has_arc(x, y) ? 1 : 0;
          queue.push_back(y);
        }
    }
    roots_ = host.live_vertices();
    ranked_ = pattern.in_degree(start) >= 2;
    if (ranked_)
      std::stable_sort(roots_.begin(), roots_.end(),
                       [&](Vertex a, Vertex b) { return host.in_degree(a) > host.in_degree(b); });
  }

  // true: found; false: finished or out of nodes (see `aborted`)
  bool run(std::int64_t limit, std::mt19937_64* rng) {
    limit_ = limit;
    nodes_ = 0;
    aborted_ = false;
    rng_ = rng;
    e_ = Embedding(pattern_.n());
    used_.assign(static_cast<std::size_t>(host_.n()), 0);
    return place(0);
  }

  const Embedding& embedding() const { return e_; }
  std::int64_t nodes() const { return nodes_; }
  bool aborted() const { return aborted_; }

 private:
  bool fits(Vertex x, Vertex c) const {
    return !used_[at(c)] && host_.out_degree(c) >= pattern_.out_degree(x) &&
           host_.in_degree(c) >= pattern_.in_degree(x);
  }

  bool place(std::size_t i) {
    if (i == order_.size()) return true;
    const Vertex x = order_[i];
    std::vector<Vertex> options;
    if (i == 0) {
      options = roots_;
    } else {
      const Vertex image = e_[parent_[at(x)]];
      const auto span = forward_[at(x)] ? host_.out(image) : host_.in(image);
      options.assign(span.begin(), span.end());
    }
    if (rng_ != nullptr && (i > 0 || !ranked_)) std::shuffle(options.begin(), options.end(), *rng_);
    for (Vertex c : options) {
      if (!fits(x, c)) continue;
      if (++nodes_ > limit_) {
        aborted_ = true;
        return false;
      }
      e_[x] = c;
      used_[at(c)] = 1;
      if (place(i + 1)) return true;
      used_[at(c)] = 0;
      e_[x] = -1;
      if (aborted_) return false;
    }
    return false;
  }

  const Digraph& host_;
  const Digraph& pattern_;
  std::vector<Vertex> order_;
  std::vector<Vertex> parent_;
  std::vector<char> forward_;
  std::vector<Vertex> roots_;
  bool ranked_ = false;  // roots_ sorted by host in-degree; kept in that order
  Embedding e_;
  std::vector<char> used_;
  std::int64_t limit_ = 0;
  std::int64_t nodes_ = 0;
  bool aborted_ = false;
  std::mt19937_64* rng_ = nullptr;
};

}  // namespace

EmbedResult heuristic_embed(const Digraph& host, const Digraph& tree, const HeuristicOptions& options) {
  if (!is_oriented_tree(tree)) throw GraphError("pattern is not an oriented tree");
  EmbedResult result;
  if (host.live_count() == 0) {
    result.stats.complete = true;
    return result;
  }
  std::optional<PeelSequence> peels;
  if (grounded_profile(tree).grounded && host.min_out_degree() >= tree.live_count())
    peels = max_grounded_core(tree);
  const Digraph& pattern = peels ? peels->core : tree;

  TreeSearch search(host, pattern);
  std::mt19937_64 rng(options.seed);
  std::int64_t left = options.node_budget;
  std::int64_t slice = std::max<std::int64_t>(1, options.first_restart_nodes);
  bool found = false;
  for (int r = 0; r < options.restarts && left > 0 && !found; ++r, slice *= 2) {
    found = search.run(std::min(slice, left), &rng);
    left -= search.nodes();
    ++result.stats.restarts;
    if (!found && !search.aborted()) {
      result.stats.complete = true;
      break;
    }
  }
  if (!found && !result.stats.complete && left > 0) {
    found = search.run(left, nullptr);
    left -= search.nodes();
    result.stats.complete = !found && !search.aborted();
  }
  result.stats.nodes = options.node_budget - std::max<std::int64_t>(left, 0);
  if (!found) {
    result.stats.exhausted = !result.stats.complete;
    return result;
  }
  Embedding e = search.embedding();
  if (peels) e = extend_by_peels(host, tree, *peels, std::move(e));
  if (auto err = embedding_error(host, tree, e); !err.empty())
    throw std::logic_error("heuristic search produced an invalid embedding: " + err);
  result.embedding = std::move(e);
  return result;
}

const char* to_string(EmbedCase c) {
  switch (c) {
    case EmbedCase::base: return "base";
    case EmbedCase::in_leaf_internal: return "case1";
    case EmbedCase::in_leaf_root: return "case2";
    case EmbedCase::out_leaf: return "case3";
  }
  return "?";
}

double constructive_exponent(int k, int tree_order) {
  return 13.0 * k * k * k * std::pow(8.0 * k, tree_order);
}

namespace {

std::string power_of_ten(double exponent) {
  std::ostringstream os;
  if (exponent < 1e15)
    os << "10^" << static_cast<long long>(std::ceil(exponent));
  else
    os << "10^(" << exponent << ")";
  return os.str();
}

struct Recursion {
  const ConstructiveParams& params;
  ConstructiveResult& out;

  bool fail(int size, const char* which, std::string claim) {
    out.failed_size = size;
    out.failed_case = which;
    out.failure = std::move(claim);
    return false;
  }

  LevelSchedule schedule_at(std::size_t depth) const {
    if (params.schedule.empty()) {
      LevelSchedule s;
      s.subsample.indeg_root_threshold = 2.0;
      return s;
    }
    return params.schedule[std::min(depth, params.schedule.size() - 1)];
  }

  // union of source paths of the images of the live tree vertices
  static std::vector<char> occupied(const BroomDigraph& b, const Digraph& tree, const Embedding& e) {
    std::vector<char> mark(static_cast<std::size_t>(b.graph.n()), 0);
    for (Vertex x = 0; x < tree.n(); ++x)
      if (tree.alive(x))
        for (Vertex w : source_path(b, e[x])) mark[at(w)] = 1;
    return mark;
  }

  bool run(const BroomDigraph& d, const Digraph& tree, std::size_t depth, Embedding& e) {
    const int m = tree.live_count();
    LevelTrace trace;
    trace.tree_size = m;
    trace.roots = d.roots.size();
    trace.degree = d.d;
    const auto h = height_function(tree);

    if (m == 1) {
      const Vertex x = tree.live_vertices().front();
      e = Embedding(tree.n());
      e[x] = d.roots.front();
      trace.which = EmbedCase::base;
      trace.leaf = x;
      trace.image = e[x];
      out.trace.push_back(trace);
      if (!check_proper(d, tree, e)) return fail(m, "base", "single vertex on a root is not proper");
      return true;
    }

    Vertex l = -1;
    for (Vertex x = 0; x < tree.n(); ++x)
      if (tree.alive(x) && tree.out_degree(x) + tree.in_degree(x) == 1 && (l < 0 || h[at(x)] < h[at(l)])) l = x;
    trace.leaf = l;

    // undirected BFS from l to the nearest other height-0 vertex
    std::vector<Vertex> back(static_cast<std::size_t>(tree.n()), -1);
    std::vector<char> seen(static_cast<std::size_t>(tree.n()), 0);
    std::deque<Vertex> queue{l};
    seen[at(l)] = 1;
    Vertex v = -1;
    while (!queue.empty() && v < 0) {
      const Vertex x = queue.front();
      queue.pop_front();
      for (Vertex y : undirected_neighbors(tree, x)) {
        if (seen[at(y)]) continue;
        seen[at(y)] = 1;
        back[at(y)] = x;
        if (h[at(y)] == 0) {
          v = y;
          break;
        }
        queue.push_back(y);
      }
    }
    if (v < 0) return fail(m, "split", "no other height-0 vertex besides the chosen leaf");
    Walk path{v};  // v ... l
    while (path.back() != l) path.push_back(back[at(path.back())]);
    const auto s_it = std::min_element(path.begin(), path.end(), [&](Vertex a, Vertex b) { return h[at(a)] < h[at(b)]; });
    const Vertex s = *s_it;
    for (auto it = s_it; it != path.begin(); --it)
      if (!tree.has_arc(*it, *(it - 1))) return fail(m, "split", "segment from s to v is not directed away from s");
    for (auto it = s_it; it + 1 != path.end(); ++it)
      if (!tree.has_arc(*it, *(it + 1))) return fail(m, "split", "segment from s to l is not directed away from s");
    const int ell1 = h[at(v)] - h[at(s)];
    const int ell2 = h[at(l)] - h[at(s)];
    if (!(ell1 >= ell2 && ell2 >= 0)) return fail(m, "split", "segment lengths violate l1 >= l2 >= 0");
    trace.split = s;
    trace.target = v;
    trace.ell1 = ell1;
    trace.ell2 = ell2;
    const Vertex u = undirected_neighbors(tree, l).front();
    trace.neighbor = u;

    const auto sched = schedule_at(depth);
    const auto cleaned = clean_up(d, params.mode, sched.subsample, sched.target_degree);
    if (!cleaned) return fail(m, "clean-up", cleaned.failure);
    const BroomDigraph& inner = *cleaned.value;

    const Vertex drop[] = {l};
    const Digraph smaller = delete_vertices(tree, drop);
    if (!run(inner, smaller, depth + 1, e)) return false;

    for (Vertex x = 0; x < smaller.n(); ++x) {
      if (!smaller.alive(x)) continue;
      const Walk outer = source_path(d, e[x]);
      const Walk nested = source_path(inner, e[x]);
      if (outer.size() > nested.size() || !std::equal(outer.rbegin(), outer.rend(), nested.rbegin()))
        return fail(m, "containment", "P_D(" + std::to_string(e[x]) + ") is not a suffix of its cleaned-up path");
    }

    Vertex z = -1;
    if (tree.has_arc(l, u)) {
      if (!inner.is_root[at(e[u])]) {
        trace.which = EmbedCase::in_leaf_internal;
        z = inner.broom_parent[at(e[u])];
        if (z < 0) return fail(m, "case1", "image of u has no broom parent");
        for (Vertex x = 0; x < smaller.n(); ++x)
          if (smaller.alive(x) && e[x] == z) return fail(m, "case1", "broom parent of the image of u is on the copy");
      } else {
        trace.which = EmbedCase::in_leaf_root;
        const auto taken = occupied(d, smaller, e);
        for (Vertex c : d.graph.in(e[u])) {
          const Walk p = source_path(d, c);
          if (std::none_of(p.begin(), p.end(), [&](Vertex w) { return taken[at(w)] != 0; })) {
            z = c;
            break;
          }
        }
        if (z < 0) return fail(m, "case2", "no in-neighbour of the image of u has a free source path");
      }
    } else {
      trace.which = EmbedCase::out_leaf;
      for (Vertex w : walks_of_length(inner.graph, e[s], ell1))
        if (!inner.is_root[at(w)])
          return fail(m, "case3", "a walk of length " + std::to_string(ell1) + " from the image of s ends at " +
                                      std::to_string(w) + " outside R'");
      const auto to_roots = shortest_path_to_set(inner.graph, e[u], inner.roots);
      if (!to_roots || static_cast<int>(walk_length(*to_roots)) > inner.k)
        return fail(m, "case3", "image of u is farther than k from R'");
      const auto taken = occupied(inner, smaller, e);
      for (Vertex c : inner.graph.out(e[u]))
        if (!taken[at(c)]) {
          z = c;
          break;
        }
      if (z < 0) return fail(m, "case3", "every out-neighbour of the image of u lies on a source path");
      if (h[at(l)] == 0 && !inner.is_root[at(z)])
        return fail(m, "case3", "height-0 leaf landed outside R' although l1 = l2");
    }
    e[l] = z;
    trace.image = z;
    out.trace.push_back(trace);
    const auto pc = check_proper(d, tree, e);
    if (!pc) {
      std::string why = "extended copy is not proper:";
      for (const auto& viol : pc.violations) why += " [" + std::string(to_string(viol.clause)) + "] " + viol.detail;
      return fail(m, to_string(trace.which), why);
    }
    return true;
  }
};

}  // namespace

ConstructiveResult constructive_embed(const BroomDigraph& b, const Digraph& tree, const ConstructiveParams& params) {
  if (!is_oriented_tree(tree)) throw GraphError("pattern is not an oriented tree");
  if (!grounded_profile(tree).max_grounded) throw GraphError("tree is not max-grounded");
  ConstructiveResult out;
  const int m = tree.live_count();
  if (params.mode == CleanupMode::strict) {
    if (b.k < m) {
      out.failed_case = "strict";
      out.failure = "strict mode requires k >= |V(T)| = " + std::to_string(m) + ", got k = " + std::to_string(b.k);
      return out;
    }
    const double need = constructive_exponent(b.k, m);
    if (std::log10(static_cast<double>(b.d)) < need) {
      out.failed_case = "strict";
      out.failure = "strict mode requires d >= " + power_of_ten(need) + ", got d = " + std::to_string(b.d);
      return out;
    }
  }
  Embedding e;
  Recursion rec{params, out};
  if (rec.run(b, tree, 0, e)) {
    out.proper = check_proper(b, tree, e);
    if (!out.proper) throw std::logic_error("constructive embedding returned an improper copy");
    out.embedding = std::move(e);
  }
  std::reverse(out.trace.begin(), out.trace.end());
  return out;
}

}  // namespace broomkit
