#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "broomkit/broom.hpp"
#include "broomkit/embed.hpp"
#include "broomkit/generate.hpp"
#include "broomkit/grounded.hpp"

namespace broomkit {

using Json = nlohmann::json;

/// {"n", "arcs", "roots"?, "dead"?}; "dead" lists tombstoned ids.
Json digraph_json(const Digraph& d, const VertexSet* roots = nullptr);
Digraph digraph_from_json(const Json& j);
std::optional<VertexSet> roots_from_json(const Json& j);

/// {"roots", "brooms": [{"root", "arcs"}], "k", "d"}
Json certificate_json(const BroomDigraph& b);
Certificate certificate_from_json(const Json& j);

/// {"digraph": ..., "certificate": ...}
Json bundle_json(const BroomDigraph& b);

/// Reads a bundle, or a digraph plus a separate certificate; k and d fall back
/// to the certificate's fields when negative. Throws GraphError when the
/// pieces do not validate.
BroomDigraph broom_digraph_from_json(const Json& digraph, const Json* certificate, int k, int d);

Json broom_json(const Broom& b);
Json profile_json(const Digraph& tree, const GroundedProfile& p);
Json embedding_json(const Digraph& tree, const Embedding& e, const ProperCheck* proper);
Json subsample_params_json(const SubsampleParams& p);
SubsampleParams subsample_params_from_json(const Json& j, SubsampleParams base = {});
Json schedule_json(const std::vector<LevelSchedule>& s);
std::vector<LevelSchedule> schedule_from_json(const Json& j);
Json dk_json(const DkEstimate& e);
DkConfig dk_config_from_json(const Json& j);

}  // namespace broomkit
