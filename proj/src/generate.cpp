#include "broomkit/generate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "broomkit/grounded.hpp"
#include "broomkit/restructure.hpp"

namespace broomkit {

namespace {

std::size_t at(Vertex v) { return static_cast<std::size_t>(v); }

// Floyd's algorithm: `count` distinct values from [0, range), in draw order.
std::vector<Vertex> sample_distinct(Vertex range, int count, std::mt19937_64& rng) {
  std::vector<Vertex> picked;
  picked.reserve(static_cast<std::size_t>(count));
  std::unordered_set<Vertex> in;
  in.reserve(static_cast<std::size_t>(count) * 2);
  for (Vertex j = range - count; j < range; ++j) {
    const Vertex t = std::uniform_int_distribution<Vertex>(0, j)(rng);
    const Vertex pick = in.count(t) ? j : t;
    in.insert(pick);
    picked.push_back(pick);
  }
  return picked;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Digraph gen_out_regular(Vertex n, int d, std::uint64_t seed, Exec exec) {
  if (n < 1) throw GraphError("need at least one vertex");
  if (d < 0 || d >= n) throw GraphError("out-degree " + std::to_string(d) + " needs d < n = " + std::to_string(n));
  std::vector<std::vector<Vertex>> outs(at(n));
  const auto draw = [&](Vertex v) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(v)));
    auto picked = sample_distinct(n - 1, d, rng);
    for (auto& w : picked) w = w < v ? w : w + 1;
    outs[at(v)] = std::move(picked);
  };
  if (exec == Exec::serial) {
    for (Vertex v = 0; v < n; ++v) draw(v);
  } else {
#pragma omp parallel for schedule(static)
    for (Vertex v = 0; v < n; ++v) draw(v);
  }
  DigraphBuilder builder(n);
  for (Vertex v = 0; v < n; ++v)
    for (Vertex w : outs[at(v)]) builder.add_arc(v, w);
  return std::move(builder).finish();
}

Broom gen_broom(int k, int d, int ell, std::span<const int> subdivisions, std::uint64_t seed) {
  if (k < 0 || d < 1) throw GraphError("need k >= 0 and d >= 1");
  if (ell < 1 || ell > k + 1) throw GraphError("ell must lie in [1, k+1]");
  std::vector<int> profile(subdivisions.begin(), subdivisions.end());
  if (ell <= k) {
    if (std::any_of(profile.begin(), profile.end(), [](int s) { return s != 0; }))
      throw GraphError("subdivisions are only allowed when ell = k + 1");
  } else if (profile.empty()) {
    std::mt19937_64 rng(seed);
    for (int i = 0; i < d; ++i) profile.push_back(std::uniform_int_distribution<int>(0, 2)(rng));
  } else if (static_cast<int>(profile.size()) != d) {
    throw GraphError("subdivision profile needs one entry per root arc");
  }

  std::vector<Arc> arcs;
  Vertex next = 1;
  std::function<void(Vertex, int)> balanced = [&](Vertex v, int height) {
    if (height == 0) return;
    for (int i = 0; i < d; ++i) {
      const Vertex c = next++;
      arcs.emplace_back(v, c);
      balanced(c, height - 1);
    }
  };
  if (ell <= k) {
    balanced(0, ell);
  } else {
    for (int i = 0; i < d; ++i) {
      if (profile[static_cast<std::size_t>(i)] < 0) throw GraphError("negative subdivision count");
      Vertex prev = 0;
      for (int j = 0; j < profile[static_cast<std::size_t>(i)]; ++j) {
        arcs.emplace_back(prev, next);
        prev = next++;
      }
      const Vertex c = next++;
      arcs.emplace_back(prev, c);
      balanced(c, k);
    }
  }
  auto check = validate_broom(arcs, 0, k, d);
  if (!check) throw std::logic_error(std::string("generated broom failed validation: ") + to_string(check.violation));
  return std::move(*check.broom);
}

BroomDigraph gen_broom_digraph(int k, int d, Vertex n_roots, std::span<const int> mix, std::uint64_t seed) {
  if (n_roots < 2) throw GraphError("need at least two roots");
  std::vector<int> ells(mix.begin(), mix.end());
  if (ells.empty()) {
    // default mix: every height whose d^ell leaves fit among the other roots
    std::int64_t leaves = 1;
    for (int e = 1; e <= k + 1; ++e) {
      leaves *= d;
      if (leaves > n_roots - 1) break;
      ells.push_back(e);
    }
    if (ells.empty()) throw GraphError("even height-1 brooms need more than " + std::to_string(n_roots) + " roots");
  }
  for (int e : ells)
    if (e < 1 || e > k + 1) throw GraphError("height " + std::to_string(e) + " outside [1, k+1]");

  std::vector<BroomSpec> specs;
  specs.reserve(at(n_roots));
  Vertex next = n_roots;
  VertexSet roots(at(n_roots));
  std::iota(roots.begin(), roots.end(), 0);
  for (Vertex r = 0; r < n_roots; ++r) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    const int ell = ells[std::uniform_int_distribution<std::size_t>(0, ells.size() - 1)(rng)];
    const Broom shape = gen_broom(k, d, ell, {}, rng());
    if (static_cast<Vertex>(shape.leaves.size()) > n_roots - 1)
      throw GraphError("a broom with " + std::to_string(shape.leaves.size()) + " leaves needs more than " +
                       std::to_string(n_roots) + " roots");
    auto picks = sample_distinct(n_roots - 1, static_cast<int>(shape.leaves.size()), rng);
    std::vector<Vertex> relabel(shape.arcs.size() + 1, -1);
    relabel[0] = r;
    for (std::size_t i = 0; i < shape.leaves.size(); ++i) {
      const Vertex w = picks[i];
      relabel[at(shape.leaves[i])] = w < r ? w : w + 1;
    }
    for (auto& x : relabel)
      if (x < 0) x = next++;
    BroomSpec spec{r, {}};
    for (const auto& [a, b] : shape.arcs) spec.arcs.emplace_back(relabel[at(a)], relabel[at(b)]);
    specs.push_back(std::move(spec));
  }
  return assemble_broom_digraph(next, roots, std::move(specs), k, d);
}

Digraph gen_grounded_tree(Vertex order, std::uint64_t seed, bool max_grounded_only) {
  if (order < 1) throw GraphError("tree order must be positive");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  for (int attempt = 0; attempt < 10'000; ++attempt) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    if (order == 2) edges.emplace_back(0, 1);
    if (order > 2) {
      std::vector<Vertex> code(at(order - 2));
      for (auto& c : code) c = std::uniform_int_distribution<Vertex>(0, order - 1)(rng);
      std::vector<int> degree(at(order), 1);
      for (Vertex c : code) ++degree[at(c)];
      for (Vertex c : code)
        for (Vertex x = 0; x < order; ++x)
          if (degree[at(x)] == 1) {
            edges.emplace_back(x, c);
            --degree[at(x)];
            --degree[at(c)];
            break;
          }
      Vertex a = -1;
      for (Vertex x = 0; x < order; ++x)
        if (degree[at(x)] == 1) {
          if (a < 0) {
            a = x;
          } else {
            edges.emplace_back(a, x);
            break;
          }
        }
    }
    std::vector<Arc> arcs;
    for (auto [a, b] : edges) arcs.push_back(coin(rng) ? Arc{a, b} : Arc{b, a});
    Digraph t = Digraph::build(order, arcs);
    const auto profile = grounded_profile(t);
    if (profile.grounded && (!max_grounded_only || profile.max_grounded)) return t;
  }
  std::vector<Arc> arcs;
  for (Vertex x = 1; x < order; ++x) arcs.emplace_back(std::uniform_int_distribution<Vertex>(0, x - 1)(rng), x);
  return Digraph::build(order, arcs);
}

std::string tree_canonical_form(const Digraph& tree) {
  std::function<std::string(Vertex, Vertex)> encode = [&](Vertex v, Vertex from) {
    std::vector<std::string> parts;
    for (Vertex c : tree.out(v))
      if (c != from) parts.push_back("o" + encode(c, v));
    for (Vertex c : tree.in(v))
      if (c != from) parts.push_back("i" + encode(c, v));
    std::sort(parts.begin(), parts.end());
    std::string s = "(";
    for (const auto& p : parts) s += p;
    return s + ")";
  };
  std::string best;
  for (Vertex v : tree.live_vertices()) {
    auto s = encode(v, -1);
    if (best.empty() || s < best) best = std::move(s);
  }
  return best;
}

std::vector<Digraph> enumerate_oriented_trees(Vertex order) {
  if (order < 1 || order > 8) throw GraphError("enumeration supports orders 1..8");
  std::vector<std::vector<Arc>> level{{}};
  for (Vertex m = 1; m < order; ++m) {
    std::set<std::string> seen;
    std::vector<std::vector<Arc>> next;
    for (const auto& arcs : level)
      for (Vertex v = 0; v < m; ++v)
        for (int dir = 0; dir < 2; ++dir) {
          auto grown = arcs;
          grown.push_back(dir == 0 ? Arc{v, m} : Arc{m, v});
          if (seen.insert(tree_canonical_form(Digraph::build(m + 1, grown))).second) next.push_back(std::move(grown));
        }
    level = std::move(next);
  }
  std::vector<Digraph> out;
  out.reserve(level.size());
  for (const auto& arcs : level) out.push_back(Digraph::build(order, arcs));
  return out;
}

std::vector<Digraph> enumerate_grounded_trees(Vertex order, bool max_grounded_only) {
  if (order > 7) throw GraphError("grounded enumeration supports orders up to 7");
  std::vector<Digraph> out;
  for (auto& t : enumerate_oriented_trees(order)) {
    const auto p = grounded_profile(t);
    if (p.grounded && (!max_grounded_only || p.max_grounded)) out.push_back(std::move(t));
  }
  return out;
}

FavorableInstance gen_favorable(const Digraph& tree, const FavorableParams& params) {
  if (!is_oriented_tree(tree)) throw GraphError("pattern is not an oriented tree");
  const auto profile = grounded_profile(tree);
  if (!profile.max_grounded) throw GraphError("tree is not max-grounded");
  const int m = tree.live_count();
  int min_h = 0;
  for (Vertex x : tree.live_vertices()) min_h = std::min(min_h, profile.height[at(x)]);

  FavorableInstance inst;
  const int height = params.height > 0 ? params.height : (min_h <= -2 ? 2 : 1);
  const int k = params.k > 0 ? params.k : 1;
  const int d = params.d > 0 ? params.d : std::max(2, m);
  if (height > k + 1) throw GraphError("height " + std::to_string(height) + " exceeds k + 1");
  std::int64_t leaves = 1;
  for (int i = 0; i < height; ++i) {
    leaves *= d;
    if (leaves > 10'000'000) throw GraphError("brooms would have more than 10^7 leaves");
  }
  const Vertex n_roots = params.n_roots > 0 ? params.n_roots : static_cast<Vertex>(leaves + 1);
  if (n_roots < leaves + 1)
    throw GraphError("root pool of " + std::to_string(n_roots) + " cannot host " + std::to_string(leaves) +
                     " distinct leaves per broom");

  const std::vector<int> flat(height == k + 1 ? static_cast<std::size_t>(d) : 0, 0);
  const Broom shape = gen_broom(k, d, height, flat);
  const auto internal = static_cast<std::int64_t>(shape.arcs.size() + 1 - shape.leaves.size() - 1);
  if (n_roots * (1 + internal) > 5'000'000) throw GraphError("instance would exceed 5 * 10^6 vertices");

  std::vector<Vertex> perm(at(n_roots));
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(params.seed);
  std::shuffle(perm.begin(), perm.end(), rng);

  Vertex next = n_roots;
  std::vector<BroomSpec> specs;
  specs.reserve(at(n_roots));
  for (Vertex slot = 0; slot < n_roots; ++slot) {
    std::vector<Vertex> relabel(shape.arcs.size() + 1, -1);
    relabel[0] = perm[at(slot)];
    for (std::size_t j = 0; j < shape.leaves.size(); ++j)
      relabel[at(shape.leaves[j])] = perm[at((slot + 1 + static_cast<Vertex>(j)) % n_roots)];
    for (auto& x : relabel)
      if (x < 0) x = next++;
    BroomSpec spec{perm[at(slot)], {}};
    for (const auto& [a, b] : shape.arcs) spec.arcs.emplace_back(relabel[at(a)], relabel[at(b)]);
    specs.push_back(std::move(spec));
  }
  VertexSet roots(at(n_roots));
  std::iota(roots.begin(), roots.end(), 0);
  inst.digraph = assemble_broom_digraph(next, roots, std::move(specs), k, d);

  std::string degrees = std::to_string(d);
  int level_d = d;
  for (int level = 0; level + 1 < m; ++level) {
    const int target = height == 1 ? level_d : (level_d + k - 1) / k;
    if (target < 1) throw GraphError("degree schedule runs dry at level " + std::to_string(level));
    LevelSchedule s;
    s.subsample.p_keep = 1.0;
    s.subsample.outdeg_floor = 0;
    s.subsample.indeg_root_threshold = 2.0;
    s.subsample.broom_target = target;
    s.subsample.seed = derive_seed(params.seed, static_cast<std::uint64_t>(level));
    inst.params.schedule.push_back(s);
    level_d = typed_degree(target, k);
    degrees += "," + std::to_string(level_d);
  }
  inst.manifest = {
      {"uniform_height", std::to_string(height)},
      {"k", std::to_string(k)},
      {"d", std::to_string(d)},
      {"n_roots", std::to_string(n_roots)},
      {"root_in_degree", std::to_string(leaves)},
      {"levels", std::to_string(m - 1)},
      {"degree_schedule", degrees},
      {"clean_up", "p_keep=1 outdeg_floor=0 indeg_root_threshold=2"},
      {"internal_images_possible", height >= 2 ? "yes" : "no"},
  };
  return inst;
}

DkEstimate estimate_dk(const DkConfig& config) {
  if (config.order < 1 || config.order > 5) throw GraphError("estimate_dk supports tree orders 1..5");
  if (config.trials < 1) throw GraphError("need at least one trial");
  auto degrees = config.degrees;
  std::sort(degrees.begin(), degrees.end());
  degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
  for (int d : degrees)
    if (d < 0 || d >= config.n) throw GraphError("degree " + std::to_string(d) + " must lie in [0, n)");

  DkEstimate est;
  est.order = config.order;
  est.trees = enumerate_grounded_trees(config.order);
  for (std::size_t t = 0; t < est.trees.size(); ++t)
    for (int d : degrees) est.cells.push_back({t, d, config.trials, 0, 0, 0, 0});

  enum Outcome : char { found, unresolved, absent };
  const std::size_t jobs = est.cells.size() * static_cast<std::size_t>(config.trials);
  std::vector<char> outcome(jobs);
  std::vector<std::int64_t> nodes(jobs);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t j = 0; j < jobs; ++j) {
    const std::size_t c = j / static_cast<std::size_t>(config.trials);
    const std::uint64_t s = derive_seed(derive_seed(config.seed, c), j % static_cast<std::size_t>(config.trials));
    const auto& cell = est.cells[c];
    const Digraph host = gen_out_regular(config.n, cell.d, s, Exec::serial);
    HeuristicOptions opt;
    opt.node_budget = config.node_budget;
    opt.seed = s;
    const auto r = heuristic_embed(host, est.trees[cell.tree], opt);
    outcome[j] = r ? found : (r.stats.complete ? absent : unresolved);
    nodes[j] = r.stats.nodes;
  }
  for (std::size_t j = 0; j < jobs; ++j) {
    auto& cell = est.cells[j / static_cast<std::size_t>(config.trials)];
    cell.found += outcome[j] == found;
    cell.unresolved += outcome[j] == unresolved;
    cell.absent += outcome[j] == absent;
    cell.nodes += nodes[j];
  }

  const std::size_t per_tree = degrees.size();
  for (std::size_t t = 0; t < est.trees.size(); ++t) {
    int first = -1;
    double last_rate = -1;
    for (std::size_t i = 0; i < per_tree; ++i) {
      const auto& cell = est.cells[t * per_tree + i];
      if (first < 0 && cell.found == cell.trials) first = cell.d;
      const double rate = static_cast<double>(cell.found) / cell.trials;
      if (rate < last_rate)
        est.monotonicity.push_back("tree " + std::to_string(t) + ": success rate drops to " + std::to_string(rate) +
                                   " at d = " + std::to_string(cell.d));
      last_rate = rate;
    }
    est.all_found_from.push_back(first);
  }
  for (std::size_t i = 0; i < per_tree; ++i) {
    bool everywhere = true;
    for (std::size_t t = 0; t < est.trees.size(); ++t)
      for (std::size_t j = i; j < per_tree; ++j) {
        const auto& cell = est.cells[t * per_tree + j];
        everywhere = everywhere && cell.found == cell.trials;
      }
    bool someone_missed = false;
    for (std::size_t t = 0; t < est.trees.size(); ++t) {
      const auto& cell = est.cells[t * per_tree + i];
      someone_missed = someone_missed || cell.found < cell.trials;
    }
    if (everywhere && est.upper_observation < 0) est.upper_observation = degrees[i];
    if (someone_missed) est.lower_observation = degrees[i];
  }
  return est;
}

std::string dk_csv(const DkEstimate& e) {
  std::ostringstream os;
  os << "tree,canonical,d,trials,found,absent,unresolved,nodes\n";
  for (const auto& c : e.cells)
    os << c.tree << ',' << tree_canonical_form(e.trees[c.tree]) << ',' << c.d << ',' << c.trials << ',' << c.found
       << ',' << c.absent << ',' << c.unresolved << ',' << c.nodes << '\n';
  return os.str();
}

}  // namespace broomkit
