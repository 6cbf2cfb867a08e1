#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "broomkit/cleanup.hpp"
#include "broomkit/embed.hpp"
#include "broomkit/generate.hpp"
#include "broomkit/json_io.hpp"
#include "broomkit/restructure.hpp"
#include "broomkit/subsample.hpp"

using namespace broomkit;

namespace {

Json read_json(const std::string& path) {
  if (path == "-") return Json::parse(std::cin);
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open " + path);
  return Json::parse(in);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw GraphError("cannot write " + path);
  out << text;
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

std::uint64_t default_seed() {
  if (const char* s = std::getenv("BROOMKIT_SEED")) return std::strtoull(s, nullptr, 10);
  return 0;
}

Digraph plain_digraph(const Json& j) { return digraph_from_json(j.contains("digraph") ? j.at("digraph") : j); }

struct BroomInput {
  std::string digraph;
  std::string certificate;
  int k = -1;
  int d = -1;

  void attach(CLI::App* app) {
    app->add_option("--digraph", digraph, "digraph or bundle JSON ('-' for stdin)")->required();
    app->add_option("--certificate", certificate, "certificate JSON when --digraph holds only the digraph");
    app->add_option("--k", k, "broom parameter k (default: from the certificate)");
    app->add_option("--d", d, "broom degree d (default: from the certificate)");
  }

  BroomDigraph load() const {
    const Json g = read_json(digraph);
    if (certificate.empty()) return broom_digraph_from_json(g, nullptr, k, d);
    const Json c = read_json(certificate);
    return broom_digraph_from_json(g, &c, k, d);
  }
};

struct SubsampleFlags {
  SubsampleParams p;
  void attach(CLI::App* app) {
    app->add_option("--p-keep", p.p_keep, "keep probability for arcs leaving full-degree vertices");
    app->add_option("--outdeg-floor", p.outdeg_floor, "bad event: kept out-degree <= floor");
    app->add_option("--indeg-threshold", p.indeg_root_threshold, "roots below this in-degree keep <= 1 in-arc");
    app->add_option("--broom-target", p.broom_target, "out-degree of the rebuilt brooms");
    app->add_option("--cap", p.resample_cap, "maximum resampling rounds");
  }
};

Json sample_report(const SubsampleState& s) {
  return {{"success", s.success},
          {"rounds", s.rounds},
          {"initial_violations", s.initial_violations},
          {"U", s.full_degree.size()},
          {"W", s.low_in_roots.size()},
          {"violated_low_out", s.violated_low_out},
          {"violated_high_in", s.violated_high_in},
          {"warnings", s.warnings},
          {"failure", s.failure}};
}

Json in_degree_report(const std::vector<RootReport>& r) {
  Json j = Json::array();
  for (const auto& x : r) j.push_back({{"root", x.root}, {"original_in_degree", x.original_in_degree}});
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"broomkit: grounded trees, broom digraphs and proper-copy embeddings"};
  app.require_subcommand(1);
  std::uint64_t seed = default_seed();
  int status = 0;

  // recognize
  auto* recognize = app.add_subcommand("recognize", "classify an oriented tree (grounded / max-grounded)");
  std::string tree_path;
  recognize->add_option("--tree", tree_path, "tree JSON")->required();
  recognize->callback([&] {
    const Digraph t = plain_digraph(read_json(tree_path));
    if (!is_oriented_tree(t)) {
      emit({{"oriented_tree", false}});
      status = 1;
      return;
    }
    emit(profile_json(t, grounded_profile(t)));
  });

  // validate-broom
  auto* vbroom = app.add_subcommand("validate-broom", "check that a digraph is a (k,d)-broom");
  std::string vb_path;
  Vertex vb_root = 0;
  int vb_k = 1, vb_d = 1;
  vbroom->add_option("--digraph", vb_path, "candidate JSON")->required();
  vbroom->add_option("--root", vb_root, "root vertex")->required();
  vbroom->add_option("--k", vb_k)->required();
  vbroom->add_option("--d", vb_d)->required();
  vbroom->callback([&] {
    const auto check = validate_broom(plain_digraph(read_json(vb_path)), vb_root, vb_k, vb_d);
    Json j{{"valid", bool(check)}, {"violation", to_string(check.violation)}, {"detail", check.detail}};
    if (check) j["broom"] = broom_json(*check.broom);
    emit(j);
    status = check ? 0 : 1;
  });

  // validate-broom-digraph
  auto* vbd = app.add_subcommand("validate-broom-digraph", "check a broom-digraph certificate");
  BroomInput vbd_in;
  vbd_in.attach(vbd);
  vbd->callback([&] {
    try {
      const auto b = vbd_in.load();
      emit({{"valid", true}, {"roots", b.roots.size()}, {"k", b.k}, {"d", b.d}});
    } catch (const GraphError& e) {
      emit({{"valid", false}, {"reason", e.what()}});
      status = 1;
    }
  });

  // from-out-regular
  auto* for_cmd = app.add_subcommand("from-out-regular", "all vertices as roots with out-stars");
  std::string for_path;
  int for_k = 1;
  for_cmd->add_option("--digraph", for_path)->required();
  for_cmd->add_option("--k", for_k, "broom parameter k")->required();
  for_cmd->callback([&] { emit(bundle_json(from_out_regular(plain_digraph(read_json(for_path)), for_k))); });

  // trim
  auto* trim = app.add_subcommand("trim", "keep the d smallest-id out-neighbours of every vertex");
  std::string trim_path;
  int trim_d = 1;
  trim->add_option("--digraph", trim_path)->required();
  trim->add_option("--d", trim_d)->required();
  trim->callback([&] { emit(digraph_json(trim_out_regular(plain_digraph(read_json(trim_path)), trim_d))); });

  // prune-broom (broom extraction from a degree-rich out-arborescence)
  auto* prune = app.add_subcommand("prune-broom", "extract a (k-1, ceil(d/k))-broom from an out-arborescence");
  std::string prune_path;
  Vertex prune_root = 0;
  int prune_k = 2, prune_d = 2;
  prune->add_option("--digraph", prune_path, "out-arborescence JSON")->required();
  prune->add_option("--root", prune_root);
  prune->add_option("--k", prune_k)->required();
  prune->add_option("--d", prune_d)->required();
  prune->callback([&] {
    const Digraph g = plain_digraph(read_json(prune_path));
    const auto arcs = g.arcs();
    std::string why;
    const auto tree = OutTree::from_arcs(arcs, prune_root, &why);
    if (!tree) throw GraphError("not an out-arborescence: " + why);
    const auto r = extract_broom(*tree, prune_k, prune_d);
    Json j{{"ok", bool(r)}, {"failure", r.failure}, {"witness", r.witness}, {"bug", r.bug}};
    if (r) j["broom"] = broom_json(*r.broom);
    emit(j);
    status = r ? 0 : 1;
  });

  // make-typed
  auto* typed = app.add_subcommand("make-typed", "t-typed sub-broom-digraph with the same roots");
  BroomInput typed_in;
  typed_in.attach(typed);
  int typed_t = 0;
  typed->add_option("--t", typed_t, "type length")->required();
  typed->callback([&] { emit(bundle_json(make_typed(typed_in.load(), typed_t))); });

  // subsample
  auto* sub = app.add_subcommand("subsample", "local-resampling subsample and broom rebuild");
  BroomInput sub_in;
  sub_in.attach(sub);
  SubsampleFlags sub_flags;
  sub_flags.attach(sub);
  sub->add_option("--seed", seed, "RNG seed (default: $BROOMKIT_SEED or 0)");
  sub->callback([&] {
    sub_flags.p.seed = seed;
    const auto r = lovasz_trick(sub_in.load(), sub_flags.p);
    Json j{{"ok", bool(r)},
           {"failed_step", r.failed_step},
           {"failure", r.failure},
           {"sample", sample_report(r.sample)},
           {"in_degrees", in_degree_report(r.in_degrees)},
           {"degenerate_roots", r.degenerate_roots},
           {"notes", r.notes}};
    if (r) j["result"] = bundle_json(*r.value);
    emit(j);
    status = r ? 0 : 1;
  });

  // clean-up
  auto* clean = app.add_subcommand("clean-up", "subsample, type and prune a broom digraph");
  BroomInput clean_in;
  clean_in.attach(clean);
  SubsampleFlags clean_flags;
  clean_flags.attach(clean);
  std::string clean_mode = "parametric";
  int clean_target = 0;
  clean->add_option("--mode", clean_mode)->check(CLI::IsMember({"strict", "parametric"}));
  clean->add_option("--target-degree", clean_target, "final broom degree (0 keeps the typed degree)");
  clean->add_option("--seed", seed, "RNG seed (default: $BROOMKIT_SEED or 0)");
  clean->callback([&] {
    clean_flags.p.seed = seed;
    const auto mode = clean_mode == "strict" ? CleanupMode::strict : CleanupMode::parametric;
    const auto r = clean_up(clean_in.load(), mode, clean_flags.p, clean_target);
    Json j{{"ok", bool(r)}, {"failure", r.failure}, {"in_degrees", in_degree_report(r.in_degrees)},
           {"typed_degree", r.typed_degree}};
    if (r) j["result"] = bundle_json(*r.value);
    emit(j);
    status = r ? 0 : 1;
  });

  // embed
  auto* embed = app.add_subcommand("embed", "embed a tree by brute force, heuristic search or the construction");
  std::string embed_mode = "heuristic", embed_tree, embed_digraph, embed_cert, embed_schedule;
  std::int64_t embed_budget = 2'000'000;
  bool embed_force = false;
  embed->add_option("--mode", embed_mode)->check(CLI::IsMember({"brute", "heuristic", "constructive", "strict"}));
  embed->add_option("--tree", embed_tree)->required();
  embed->add_option("--digraph", embed_digraph)->required();
  embed->add_option("--certificate", embed_cert, "certificate (needed for constructive mode and proper checks)");
  embed->add_option("--schedule", embed_schedule, "per-level clean-up schedule JSON (default: the digraph file's \"schedule\")");
  embed->add_option("--budget", embed_budget, "node budget for heuristic search");
  embed->add_flag("--force", embed_force, "lift the brute-force size guard");
  embed->add_option("--seed", seed, "RNG seed (default: $BROOMKIT_SEED or 0)");
  embed->callback([&] {
    const Digraph tree = plain_digraph(read_json(embed_tree));
    const Json g = read_json(embed_digraph);
    std::optional<BroomDigraph> b;
    if (!embed_cert.empty()) {
      const Json c = read_json(embed_cert);
      b = broom_digraph_from_json(g, &c, -1, -1);
    } else if (g.contains("certificate")) {
      b = broom_digraph_from_json(g, nullptr, -1, -1);
    }
    const Digraph host = b ? b->graph : plain_digraph(g);
    Json out;
    if (embed_mode == "constructive" || embed_mode == "strict") {
      if (!b) throw GraphError("constructive mode needs a broom-digraph certificate");
      ConstructiveParams params;
      params.mode = embed_mode == "strict" ? CleanupMode::strict : CleanupMode::parametric;
      if (!embed_schedule.empty())
        params.schedule = schedule_from_json(read_json(embed_schedule));
      else if (g.contains("schedule"))
        params.schedule = schedule_from_json(g.at("schedule"));
      const auto r = constructive_embed(*b, tree, params);
      out = r ? embedding_json(tree, *r.embedding, &r.proper) : Json{{"map", nullptr}, {"proper", false}};
      out["failure"] = r.failure;
      out["failed_case"] = r.failed_case;
      Json trace = Json::array();
      for (const auto& t : r.trace)
        trace.push_back({{"size", t.tree_size}, {"leaf", t.leaf}, {"case", to_string(t.which)}, {"image", t.image},
                         {"ell1", t.ell1}, {"ell2", t.ell2}, {"roots", t.roots}, {"degree", t.degree}});
      out["trace"] = trace;
      status = r ? 0 : 1;
    } else {
      EmbedResult r;
      if (embed_mode == "brute") {
        BruteOptions opt;
        opt.force = embed_force;
        r = brute_embed(host, tree, opt);
      } else {
        HeuristicOptions opt;
        opt.node_budget = embed_budget;
        opt.seed = seed;
        r = heuristic_embed(host, tree, opt);
      }
      if (r) {
        std::optional<ProperCheck> pc;
        if (b) pc = check_proper(*b, tree, *r.embedding);
        out = embedding_json(tree, *r.embedding, pc ? &*pc : nullptr);
      } else {
        out = {{"map", nullptr}, {"verdict", r.stats.complete ? "absent" : "unresolved"}};
      }
      out["nodes"] = r.stats.nodes;
      status = r ? 0 : 1;
    }
    emit(out);
  });

  // gen
  auto* gen = app.add_subcommand("gen", "generate random instances");
  std::string gen_model = "out_regular", gen_tree;
  Vertex gen_n = 10, gen_roots = 20;
  int gen_k = 1, gen_d = 2, gen_ell = 1, gen_height = 0;
  std::vector<int> gen_subdiv, gen_mix;
  bool gen_maxg = false;
  gen->add_option("--model", gen_model)
      ->check(CLI::IsMember({"out_regular", "broom", "broom_digraph", "grounded_tree", "favorable"}));
  gen->add_option("--n", gen_n, "vertex count / tree order");
  gen->add_option("--k", gen_k);
  gen->add_option("--d", gen_d);
  gen->add_option("--ell", gen_ell);
  gen->add_option("--subdivisions", gen_subdiv);
  gen->add_option("--roots", gen_roots, "number of roots (broom_digraph, favorable)");
  gen->add_option("--mix", gen_mix, "allowed broom heights (broom_digraph)");
  gen->add_option("--height", gen_height, "uniform broom height (favorable)");
  gen->add_option("--tree", gen_tree, "tree JSON (favorable)");
  gen->add_flag("--max-grounded", gen_maxg);
  gen->add_option("--seed", seed, "RNG seed (default: $BROOMKIT_SEED or 0)");
  gen->callback([&] {
    if (gen_model == "out_regular") {
      emit(digraph_json(gen_out_regular(gen_n, gen_d, seed)));
    } else if (gen_model == "broom") {
      const auto b = gen_broom(gen_k, gen_d, gen_ell, gen_subdiv, seed);
      Json j = digraph_json(Digraph::build(static_cast<Vertex>(b.arcs.size() + 1), b.arcs));
      j["roots"] = {0};
      j["broom"] = broom_json(b);
      emit(j);
    } else if (gen_model == "broom_digraph") {
      emit(bundle_json(gen_broom_digraph(gen_k, gen_d, gen_roots, gen_mix, seed)));
    } else if (gen_model == "grounded_tree") {
      emit(digraph_json(gen_grounded_tree(gen_n, seed, gen_maxg)));
    } else {
      if (gen_tree.empty()) throw GraphError("favorable instances need --tree");
      FavorableParams fp;
      fp.height = gen_height;
      fp.k = gen->count("--k") ? gen_k : 0;
      fp.d = gen->count("--d") ? gen_d : 0;
      fp.n_roots = gen->count("--roots") ? gen_roots : 0;
      fp.seed = seed;
      const auto inst = gen_favorable(plain_digraph(read_json(gen_tree)), fp);
      Json j = bundle_json(inst.digraph);
      j["schedule"] = schedule_json(inst.params.schedule);
      Json manifest = Json::object();
      for (const auto& [key, value] : inst.manifest) manifest[key] = value;
      j["manifest"] = manifest;
      emit(j);
    }
  });

  // estimate-dk
  auto* dk = app.add_subcommand("estimate-dk", "probe d_k with heuristic search on random out-regular digraphs");
  std::string dk_config, dk_csv_path, dk_json_path;
  dk->add_option("--config", dk_config, "experiment grid JSON")->required();
  dk->add_option("--csv", dk_csv_path, "CSV output path");
  dk->add_option("--json", dk_json_path, "JSON output path (default: stdout)");
  dk->callback([&] {
    Json cfg = read_json(dk_config);
    if (!cfg.contains("seed")) cfg["seed"] = seed;
    const auto est = estimate_dk(dk_config_from_json(cfg));
    if (!dk_csv_path.empty()) write_text(dk_csv_path, dk_csv(est));
    write_text(dk_json_path, dk_json(est).dump(2) + "\n");
  });

  // dot
  auto* dot = app.add_subcommand("dot", "Graphviz rendering; roots drawn as double circles");
  std::string dot_path;
  dot->add_option("--digraph", dot_path)->required();
  dot->callback([&] {
    const Json j = read_json(dot_path);
    const Json& g = j.contains("digraph") ? j.at("digraph") : j;
    const auto roots = roots_from_json(g).value_or(VertexSet{});
    std::cout << to_dot(digraph_from_json(g), roots);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return status;
}
