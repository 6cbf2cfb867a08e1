#include "broomkit/json_io.hpp"

namespace broomkit {

Json digraph_json(const Digraph& d, const VertexSet* roots) {
  Json j;
  j["n"] = d.n();
  Json arcs = Json::array();
  for (const auto& [u, v] : d.arcs()) arcs.push_back({u, v});
  j["arcs"] = std::move(arcs);
  if (roots != nullptr) j["roots"] = *roots;
  if (d.live_count() != d.n()) {
    Json dead = Json::array();
    for (Vertex v = 0; v < d.n(); ++v)
      if (!d.alive(v)) dead.push_back(v);
    j["dead"] = std::move(dead);
  }
  return j;
}

Digraph digraph_from_json(const Json& j) {
  if (!j.contains("n") || !j.contains("arcs")) throw GraphError("digraph JSON needs \"n\" and \"arcs\"");
  const Vertex n = j.at("n").get<Vertex>();
  if (n < 0) throw GraphError("negative vertex count");
  DigraphBuilder builder(n);
  if (j.contains("dead"))
    for (Vertex v : j.at("dead").get<std::vector<Vertex>>()) {
      if (v < 0 || v >= n) throw GraphError("dead id out of range");
      builder.set_alive(v, false);
    }
  for (const auto& a : j.at("arcs")) {
    if (!a.is_array() || a.size() != 2) throw GraphError("arcs must be [u, v] pairs");
    builder.add_arc(a[0].get<Vertex>(), a[1].get<Vertex>());
  }
  return std::move(builder).finish();
}

std::optional<VertexSet> roots_from_json(const Json& j) {
  if (!j.contains("roots")) return std::nullopt;
  auto r = j.at("roots").get<VertexSet>();
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

Json certificate_json(const BroomDigraph& b) {
  Json j;
  j["roots"] = b.roots;
  j["k"] = b.k;
  j["d"] = b.d;
  Json brooms = Json::array();
  for (const auto& br : b.brooms) {
    Json arcs = Json::array();
    for (const auto& [u, v] : br.arcs) arcs.push_back({u, v});
    brooms.push_back({{"root", br.root}, {"arcs", std::move(arcs)}});
  }
  j["brooms"] = std::move(brooms);
  return j;
}

Certificate certificate_from_json(const Json& j) {
  Certificate c;
  c.roots = roots_from_json(j).value_or(VertexSet{});
  for (const auto& b : j.at("brooms")) {
    BroomSpec s;
    s.root = b.at("root").get<Vertex>();
    for (const auto& a : b.at("arcs")) s.arcs.emplace_back(a.at(0).get<Vertex>(), a.at(1).get<Vertex>());
    c.brooms.push_back(std::move(s));
  }
  return c;
}

Json bundle_json(const BroomDigraph& b) {
  return {{"digraph", digraph_json(b.graph, &b.roots)}, {"certificate", certificate_json(b)}};
}

BroomDigraph broom_digraph_from_json(const Json& digraph, const Json* certificate, int k, int d) {
  const Json* g = &digraph;
  if (digraph.contains("digraph")) {
    g = &digraph.at("digraph");
    if (certificate == nullptr && digraph.contains("certificate")) certificate = &digraph.at("certificate");
  }
  if (certificate == nullptr) throw GraphError("a broom digraph needs a certificate");
  if (certificate->contains("certificate")) certificate = &certificate->at("certificate");
  const Digraph graph = digraph_from_json(*g);
  const Certificate cert = certificate_from_json(*certificate);
  VertexSet roots = cert.roots;
  if (roots.empty()) roots = roots_from_json(*g).value_or(VertexSet{});
  if (k < 0) k = certificate->value("k", -1);
  if (d < 0) d = certificate->value("d", -1);
  if (k < 0 || d < 1) throw GraphError("broom parameters k and d are missing");
  auto check = validate_broom_digraph(graph, roots, cert.brooms, k, d);
  if (!check) {
    std::string w;
    for (Vertex x : check.witnesses) w += " " + std::to_string(x);
    throw GraphError(std::string("certificate rejected: ") + to_string(check.clause) + w +
                     (check.detail.empty() ? "" : " (" + check.detail + ")"));
  }
  return std::move(*check.value);
}

Json broom_json(const Broom& b) {
  Json arcs = Json::array();
  for (const auto& [u, v] : b.arcs) arcs.push_back({u, v});
  return {{"root", b.root}, {"k", b.k},           {"d", b.d},          {"ell", b.ell},
          {"arcs", arcs},   {"subdivision", b.subdivision}, {"leaves", b.leaves}};
}

Json profile_json(const Digraph& tree, const GroundedProfile& p) {
  Json h = Json::object();
  for (Vertex v : tree.live_vertices()) h[std::to_string(v)] = p.height[static_cast<std::size_t>(v)];
  return {{"oriented_tree", true}, {"grounded", p.grounded}, {"max_grounded", p.max_grounded},
          {"G", p.in_branching},   {"Z", p.sources},         {"h", h}};
}

Json embedding_json(const Digraph& tree, const Embedding& e, const ProperCheck* proper) {
  Json map = Json::object();
  for (Vertex x : tree.live_vertices()) map[std::to_string(x)] = e[x];
  Json j{{"map", map}};
  if (proper != nullptr) {
    j["proper"] = proper->proper;
    Json paths = Json::object();
    for (const auto& [x, p] : proper->source_paths) paths[std::to_string(x)] = p;
    j["source_paths"] = paths;
    Json viol = Json::array();
    for (const auto& v : proper->violations)
      viol.push_back({{"clause", to_string(v.clause)}, {"tree_vertex", v.tree_vertex}, {"other", v.other},
                      {"witness", v.witness}, {"detail", v.detail}});
    j["violations"] = viol;
  }
  return j;
}

Json subsample_params_json(const SubsampleParams& p) {
  return {{"p_keep", p.p_keep},
          {"outdeg_floor", p.outdeg_floor},
          {"indeg_root_threshold", p.indeg_root_threshold},
          {"broom_target", p.broom_target},
          {"resample_cap", p.resample_cap},
          {"seed", p.seed}};
}

SubsampleParams subsample_params_from_json(const Json& j, SubsampleParams p) {
  p.p_keep = j.value("p_keep", p.p_keep);
  p.outdeg_floor = j.value("outdeg_floor", p.outdeg_floor);
  p.indeg_root_threshold = j.value("indeg_root_threshold", p.indeg_root_threshold);
  p.broom_target = j.value("broom_target", p.broom_target);
  p.resample_cap = j.value("resample_cap", p.resample_cap);
  p.seed = j.value("seed", p.seed);
  return p;
}

Json schedule_json(const std::vector<LevelSchedule>& s) {
  Json j = Json::array();
  for (const auto& level : s) {
    Json e = subsample_params_json(level.subsample);
    e["target_degree"] = level.target_degree;
    j.push_back(std::move(e));
  }
  return j;
}

std::vector<LevelSchedule> schedule_from_json(const Json& j) {
  const Json& list = j.contains("schedule") ? j.at("schedule") : j;
  std::vector<LevelSchedule> out;
  for (const auto& e : list) {
    LevelSchedule s;
    s.subsample = subsample_params_from_json(e);
    s.target_degree = e.value("target_degree", 0);
    out.push_back(s);
  }
  return out;
}

Json dk_json(const DkEstimate& e) {
  Json trees = Json::array();
  for (std::size_t t = 0; t < e.trees.size(); ++t) {
    Json arcs = Json::array();
    for (const auto& [u, v] : e.trees[t].arcs()) arcs.push_back({u, v});
    trees.push_back({{"index", t},
                     {"canonical", tree_canonical_form(e.trees[t])},
                     {"arcs", arcs},
                     {"all_found_from", e.all_found_from[t] < 0 ? Json("unresolved") : Json(e.all_found_from[t])}});
  }
  Json cells = Json::array();
  for (const auto& c : e.cells)
    cells.push_back({{"tree", c.tree},   {"d", c.d},         {"trials", c.trials},         {"found", c.found},
                     {"absent", c.absent}, {"unresolved", c.unresolved}, {"nodes", c.nodes}});
  return {{"order", e.order},
          {"trees", trees},
          {"cells", cells},
          {"monotonicity_notes", e.monotonicity},
          {"lower_observation", e.lower_observation},
          {"upper_observation", e.upper_observation}};
}

DkConfig dk_config_from_json(const Json& j) {
  DkConfig c;
  c.order = j.value("order", j.value("k", c.order));
  if (j.contains("degrees")) c.degrees = j.at("degrees").get<std::vector<int>>();
  if (j.contains("d_range")) {
    const auto r = j.at("d_range").get<std::vector<int>>();
    if (r.size() != 2) throw GraphError("d_range must be [lo, hi]");
    c.degrees.clear();
    for (int d = r[0]; d <= r[1]; ++d) c.degrees.push_back(d);
  }
  c.n = j.value("n", c.n);
  c.trials = j.value("trials", c.trials);
  c.node_budget = j.value("budget", j.value("node_budget", c.node_budget));
  c.seed = j.value("seed", c.seed);
  return c;
}

}  // namespace broomkit
