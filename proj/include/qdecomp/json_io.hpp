#ifndef QDECOMP_JSON_IO_HPP
#define QDECOMP_JSON_IO_HPP

#include <string>

#include "json.hpp"
#include "qdecomp/automorphism.hpp"
#include "qdecomp/verify.hpp"

namespace qdecomp {

using json = nlohmann::json;

json graph_to_json(const Graph& g);
std::shared_ptr<const Graph> graph_from_json(const json& j);

/// Hypercube hosts serialize edges as [low_mask, dir]; everything else as
/// [id_a, id_b].
json edge_set_to_json(const EdgeSet& s);

json decomposition_to_json(const Decomposition& d);

struct DecompositionLoad {
  std::optional<Decomposition> decomposition;
  VerifyReport issues;  // foreign/duplicate edges found while loading
};

/// Parses a decomposition file. Structural JSON errors throw; edges that do
/// not exist in the host come back as ForeignEdge failures instead.
DecompositionLoad decomposition_from_json(const json& j);

json automorphism_to_json(const Automorphism& a);
Automorphism automorphism_from_json(const json& j, int dim);

}  // namespace qdecomp

#endif  // QDECOMP_JSON_IO_HPP
