#include "broomkit/subsample.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "broomkit/restructure.hpp"

namespace broomkit {

void SubsampleParams::validate() const {
  if (!(p_keep > 0.0 && p_keep <= 1.0)) throw GraphError("p_keep must lie in (0, 1]");
  if (outdeg_floor < 0) throw GraphError("outdeg_floor must be non-negative");
  if (!(indeg_root_threshold > 0.0)) throw GraphError("indeg_root_threshold must be positive");
  if (broom_target < 1) throw GraphError("broom_target must be positive");
  if (resample_cap < 1) throw GraphError("resample_cap must be at least 1");
}

double local_lemma_product(int d) {
  const double dd = d;
  const double p = std::max(std::exp(-std::cbrt(dd) / 8.0), std::pow(dd, -17.0 / 15.0));
  return std::exp(1.0) * p * dd;
}

namespace {

class Sampler {
 public:
  Sampler(const BroomDigraph& b, const SubsampleParams& p)
      : b_(b), d_(b.graph), p_(p), rng_(p.seed), coin_(p.p_keep) {
    const auto n = static_cast<std::size_t>(d_.n());
    offset_.assign(n + 1, 0);
    for (Vertex u = 0; u < d_.n(); ++u)
      offset_[static_cast<std::size_t>(u) + 1] = offset_[static_cast<std::size_t>(u)] + d_.out(u).size();
    keep_.assign(offset_.back(), 0);
    in_full_.assign(n, 0);
    in_low_.assign(n, 0);
    out_kept_.assign(n, 0);
    in_kept_.assign(n, 0);
    for (Vertex u = 0; u < d_.n(); ++u)
      if (d_.alive(u) && d_.out_degree(u) == b.d) in_full_[static_cast<std::size_t>(u)] = 1;
    for (Vertex r : b.roots)
      if (d_.in_degree(r) < p.indeg_root_threshold) in_low_[static_cast<std::size_t>(r)] = 1;
  }

  bool full(Vertex u) const { return in_full_[static_cast<std::size_t>(u)] != 0; }
  bool low(Vertex w) const { return in_low_[static_cast<std::size_t>(w)] != 0; }

  std::string load_check() const {
    for (Vertex r : b_.roots)
      for (Vertex x : d_.in(r))
        if (!full(x))
          return "arc (" + std::to_string(x) + "," + std::to_string(r) + ") enters the root set from a vertex of out-degree " +
                 std::to_string(d_.out_degree(x)) + " != d";
    for (Vertex u = 0; u < d_.n(); ++u)
      if (full(u) && d_.out_degree(u) <= p_.outdeg_floor)
        return "vertex " + std::to_string(u) + " has out-degree " + std::to_string(d_.out_degree(u)) +
               " <= outdeg_floor; its event can never be avoided";
    if (p_.p_keep >= 1.0)
      for (Vertex w : b_.roots)
        if (low(w) && d_.in_degree(w) >= 2)
          return "root " + std::to_string(w) + " keeps all " + std::to_string(d_.in_degree(w)) +
                 " in-arcs at p_keep = 1";
    return {};
  }

  void sample_all() {
    for (Vertex u = 0; u < d_.n(); ++u)
      for (std::size_t i = 0; i < d_.out(u).size(); ++i) set(u, i, full(u) ? coin_(rng_) : true);
  }

  bool low_out_violated(Vertex u) const {
    return full(u) && out_kept_[static_cast<std::size_t>(u)] <= p_.outdeg_floor;
  }
  bool high_in_violated(Vertex w) const { return low(w) && in_kept_[static_cast<std::size_t>(w)] >= 2; }

  void refresh(Vertex v) {
    toggle({v, 0}, low_out_violated(v));
    toggle({v, 1}, high_in_violated(v));
  }

  void refresh_all() {
    for (Vertex v = 0; v < d_.n(); ++v) refresh(v);
  }

  // redraws the variables of the smallest open event; returns the number redrawn
  ResampleStep fix_one() {
    const auto [v, kind] = *open_.begin();
    ResampleStep step{v, kind == 0 ? EventKind::low_out_degree : EventKind::high_in_degree, 0, 0};
    std::vector<Vertex> touched{v};
    if (kind == 0) {
      const auto outs = d_.out(v);
      for (std::size_t i = 0; i < outs.size(); ++i) {
        set(v, i, coin_(rng_));
        touched.push_back(outs[i]);
        ++step.resampled;
      }
    } else {
      for (Vertex x : d_.in(v)) {
        if (!full(x)) continue;
        const auto outs = d_.out(x);
        const auto i = static_cast<std::size_t>(std::lower_bound(outs.begin(), outs.end(), v) - outs.begin());
        set(x, i, coin_(rng_));
        touched.push_back(x);
        ++step.resampled;
      }
    }
    for (Vertex t : touched) refresh(t);
    step.open_after = open_.size();
    return step;
  }

  std::size_t open_count() const { return open_.size(); }

  void finish(SubsampleState& s) const {
    DigraphBuilder builder(d_.n(), false);
    for (Vertex v = 0; v < d_.n(); ++v)
      if (d_.alive(v)) builder.set_alive(v);
    for (Vertex u = 0; u < d_.n(); ++u) {
      const auto outs = d_.out(u);
      for (std::size_t i = 0; i < outs.size(); ++i)
        if (keep_[offset_[static_cast<std::size_t>(u)] + i]) builder.add_arc(u, outs[i]);
    }
    s.kept = std::move(builder).finish();
    for (Vertex v = 0; v < d_.n(); ++v) {
      if (full(v)) s.full_degree.push_back(v);
      if (low(v)) s.low_in_roots.push_back(v);
    }
    for (const auto& [v, kind] : open_) (kind == 0 ? s.violated_low_out : s.violated_high_in).push_back(v);
  }

 private:
  void set(Vertex u, std::size_t i, bool value) {
    auto& slot = keep_[offset_[static_cast<std::size_t>(u)] + i];
    const Vertex w = d_.out(u)[i];
    if (slot) {
      --out_kept_[static_cast<std::size_t>(u)];
      --in_kept_[static_cast<std::size_t>(w)];
    }
    slot = value ? 1 : 0;
    if (slot) {
      ++out_kept_[static_cast<std::size_t>(u)];
      ++in_kept_[static_cast<std::size_t>(w)];
    }
  }

  void toggle(std::pair<Vertex, int> event, bool on) {
    if (on)
      open_.insert(event);
    else
      open_.erase(event);
  }

  const BroomDigraph& b_;
  const Digraph& d_;
  const SubsampleParams& p_;
  std::mt19937_64 rng_;
  std::bernoulli_distribution coin_;
  std::vector<std::size_t> offset_;
  std::vector<char> keep_;
  std::vector<char> in_full_;
  std::vector<char> in_low_;
  std::vector<int> out_kept_;
  std::vector<int> in_kept_;
  std::set<std::pair<Vertex, int>> open_;  // (vertex, 0 = low out-degree / 1 = high in-degree)
};

}  // namespace

SubsampleState sample_good_subdigraph(const BroomDigraph& b, const SubsampleParams& params) {
  params.validate();
  SubsampleState state;
  const double product = local_lemma_product(b.d);
  if (product > 1.0) {
    std::ostringstream os;
    os << "local lemma condition e*p*d <= 1 fails at d = " << b.d << " (e*p*d = " << product
       << "); correctness rests on direct validation";
    state.warnings.push_back(os.str());
  }

  Sampler sampler(b, params);
  if (auto why = sampler.load_check(); !why.empty()) {
    state.failure = why;
    sampler.finish(state);
    return state;
  }
  sampler.sample_all();
  sampler.refresh_all();
  state.initial_violations = sampler.open_count();
  while (sampler.open_count() > 0 && state.rounds < params.resample_cap) {
    state.log.push_back(sampler.fix_one());
    ++state.rounds;
  }
  sampler.finish(state);
  state.success = sampler.open_count() == 0;
  if (!state.success)
    state.failure = "resample cap of " + std::to_string(params.resample_cap) + " rounds reached with " +
                    std::to_string(sampler.open_count()) + " open events";
  return state;
}

namespace {

struct RootBuild {
  std::vector<Arc> arcs;
  bool degenerate = false;
  std::string step;
  std::string failure;
  std::vector<std::string> notes;
};

RootBuild build_root(const BroomDigraph& b, const Digraph& h, const std::vector<char>& is_new_root,
                     const std::vector<Vertex>& owner, Vertex r, const SubsampleParams& params) {
  RootBuild out;
  const auto new_root = [&](Vertex v) { return is_new_root[static_cast<std::size_t>(v)] != 0; };
  const auto tree_children = [&](Vertex u) {
    std::vector<Vertex> kids;
    for (Vertex w : h.out(u))
      if (!new_root(w)) kids.push_back(w);
    return kids;
  };

  // S_r: grow from r through D_r, never expanding a vertex of L_r
  std::vector<Arc> s_arcs;
  VertexSet s_leaves;
  std::vector<Vertex> stack{r};
  while (!stack.empty()) {
    const Vertex u = stack.back();
    stack.pop_back();
    if (owner[static_cast<std::size_t>(u)] != r) {
      out.step = "disjointness";
      out.failure = "vertex " + std::to_string(u) + " reached from two roots";
      return out;
    }
    const auto kids = tree_children(u);
    const bool in_l = 2 * static_cast<int>(kids.size()) <= h.out_degree(u);
    if (in_l) {
      s_leaves.push_back(u);
      continue;
    }
    for (Vertex c : kids) {
      s_arcs.emplace_back(u, c);
      stack.push_back(c);
    }
  }
  std::sort(s_leaves.begin(), s_leaves.end());
  for (Vertex l : s_leaves) {
    const auto outs = h.out(l);
    if (std::none_of(outs.begin(), outs.end(), [&](Vertex w) { return b.is_root[static_cast<std::size_t>(w)] != 0; }))
      out.notes.push_back("leaf " + std::to_string(l) + " of the pruned reach of " + std::to_string(r) +
                          " has no out-neighbour in the old root set");
  }

  std::vector<Arc> core;  // B_r
  VertexSet core_leaves;
  const int target = params.broom_target;
  if (s_arcs.empty()) {
    out.degenerate = true;
    core_leaves = {r};
  } else {
    const auto s_tree = OutTree::from_arcs(s_arcs, r);
    if (!s_tree) {
      out.step = "extract";
      out.failure = "pruned reach of root " + std::to_string(r) + " is not an out-arborescence";
      return out;
    }
    // largest degree the extraction can be asked for: the minimum over the
    // root and every non-leaf within k-1 of a leaf below it
    std::vector<int> to_leaf(s_tree->size(), 0);
    const auto vs = s_tree->vertices();
    const auto idx = [&](Vertex v) {
      return static_cast<std::size_t>(std::lower_bound(vs.begin(), vs.end(), v) - vs.begin());
    };
    const auto& order = s_tree->order();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      if (s_tree->is_leaf(*it)) continue;
      int best = -1;
      for (Vertex c : s_tree->children(*it)) {
        const int dc = to_leaf[idx(c)] + 1;
        best = best < 0 ? dc : std::min(best, dc);
      }
      to_leaf[idx(*it)] = best;
    }
    int need_deg = s_tree->out_degree(r);
    Vertex tight = r;
    for (Vertex u : order)
      if (!s_tree->is_leaf(u) && u != r && to_leaf[idx(u)] <= b.k - 1 && s_tree->out_degree(u) < need_deg) {
        need_deg = s_tree->out_degree(u);
        tight = u;
      }
    if ((need_deg + b.k - 1) / b.k < target) {
      out.step = "extract";
      out.failure = "vertex " + std::to_string(tight) + " below root " + std::to_string(r) + " keeps out-degree " +
                    std::to_string(need_deg) + ", too small for broom target " + std::to_string(target) +
                    " at k = " + std::to_string(b.k);
      return out;
    }
    auto extracted = extract_broom(*s_tree, b.k, need_deg);
    if (!extracted) {
      out.step = "extract";
      out.failure = "root " + std::to_string(r) + ": " + extracted.failure;
      return out;
    }
    const auto broom_tree = OutTree::from_arcs(extracted.broom->arcs, r);
    core = prune_out_tree(*broom_tree, extracted.broom->subdivision, target);
    core_leaves = OutTree::from_arcs(core, r)->leaves();
  }

  // hang `target` fresh new roots under every leaf of B_r
  std::vector<Vertex> used;
  for (Vertex l : core_leaves) {
    int taken = 0;
    for (Vertex w : h.out(l)) {
      if (taken == target) break;
      if (w == r || !new_root(w)) continue;
      if (std::find(used.begin(), used.end(), w) != used.end()) continue;
      used.push_back(w);
      core.emplace_back(l, w);
      ++taken;
    }
    if (taken < target) {
      out.step = "extend";
      out.failure = "leaf " + std::to_string(l) + " of root " + std::to_string(r) + " finds only " +
                    std::to_string(taken) + " unused new roots among its out-neighbours, needs " +
                    std::to_string(target);
      return out;
    }
  }
  std::sort(core.begin(), core.end());
  out.arcs = std::move(core);
  return out;
}

}  // namespace

LovaszResult lovasz_trick(const BroomDigraph& b, const SubsampleParams& params) {
  LovaszResult result;
  result.sample = sample_good_subdigraph(b, params);
  if (!result.sample.success) {
    result.failed_step = "sample";
    result.failure = result.sample.failure;
    return result;
  }
  const Digraph& h = result.sample.kept;
  const auto n = static_cast<std::size_t>(h.n());

  VertexSet new_roots;
  for (Vertex v = 0; v < h.n(); ++v)
    if (h.alive(v) && h.in_degree(v) >= 2) new_roots.push_back(v);
  if (new_roots.empty()) {
    result.failed_step = "roots";
    result.failure = "no high-in-degree roots: every vertex keeps at most one in-arc";
    return result;
  }
  const auto is_new_root = membership(h.n(), new_roots);
  const auto low = membership(h.n(), result.sample.low_in_roots);
  for (Vertex r : new_roots)
    if (!b.is_root[static_cast<std::size_t>(r)] || low[static_cast<std::size_t>(r)]) {
      result.failed_step = "roots";
      result.failure = "new root " + std::to_string(r) + " lies outside R \\ W";
      return result;
    }

  // U_r: reach of r in H minus the other new roots
  std::vector<Vertex> owner(n, -1);
  for (Vertex r : new_roots) {
    std::vector<Vertex> stack{r};
    owner[static_cast<std::size_t>(r)] = r;
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      for (Vertex w : h.out(u)) {
        if (is_new_root[static_cast<std::size_t>(w)]) continue;
        auto& o = owner[static_cast<std::size_t>(w)];
        if (o == r) continue;
        if (o >= 0) {
          result.failed_step = "disjointness";
          result.failure = "vertex " + std::to_string(w) + " is reached from roots " + std::to_string(o) + " and " +
                           std::to_string(r);
          return result;
        }
        o = r;
        stack.push_back(w);
      }
    }
  }

  std::vector<RootBuild> builds(new_roots.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::size_t i = 0; i < new_roots.size(); ++i)
    builds[i] = build_root(b, h, is_new_root, owner, new_roots[i], params);

  std::vector<BroomSpec> specs;
  specs.reserve(new_roots.size());
  for (std::size_t i = 0; i < new_roots.size(); ++i) {
    auto& build = builds[i];
    for (auto& note : build.notes) result.notes.push_back(std::move(note));
    if (!build.failure.empty()) {
      result.failed_step = build.step;
      result.failure = build.failure;
      return result;
    }
    result.degenerate_roots += build.degenerate ? 1 : 0;
    specs.push_back({new_roots[i], std::move(build.arcs)});
  }

  try {
    result.value = assemble_broom_digraph(h.n(), new_roots, std::move(specs), b.k, params.broom_target);
  } catch (const std::logic_error& e) {
    result.failed_step = "assemble";
    result.failure = e.what();
    return result;
  }
  for (Vertex r : new_roots) result.in_degrees.push_back({r, b.graph.in_degree(r)});
  return result;
}

}  // namespace broomkit
