#include "qdecomp/json_io.hpp"

#include <stdexcept>

namespace qdecomp {

json graph_to_json(const Graph& g) {
  json j;
  switch (g.kind()) {
    case Graph::Kind::Hypercube:
      j["type"] = "hypercube";
      j["dim"] = g.dim();
      break;
    case Graph::Kind::Cycle:
      j["type"] = "cycle";
      j["length"] = g.cycle_length();
      break;
    case Graph::Kind::Product:
      j["type"] = "product";
      j["left"] = graph_to_json(*g.left());
      j["right"] = graph_to_json(*g.right());
      break;
    case Graph::Kind::Generic: {
      j["type"] = "generic";
      j["vertices"] = g.vertex_count();
      json edges = json::array();
      for (EdgeId e = 0; e < g.edge_count(); ++e) {
        auto [a, b] = g.endpoints(e);
        edges.push_back({a, b});
      }
      j["edges"] = std::move(edges);
      break;
    }
  }
  return j;
}

std::shared_ptr<const Graph> graph_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "hypercube") return Graph::hypercube(j.at("dim").get<int>());
  if (type == "cycle") return Graph::cycle(j.at("length").get<int>());
  if (type == "product")
    return Graph::product(graph_from_json(j.at("left")), graph_from_json(j.at("right")));
  if (type == "generic") {
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (const auto& e : j.at("edges"))
      edges.push_back({e.at(0).get<VertexId>(), e.at(1).get<VertexId>()});
    return Graph::generic(j.at("vertices").get<VertexId>(), std::move(edges));
  }
  throw std::invalid_argument("unknown graph type: " + type);
}

json edge_set_to_json(const EdgeSet& s) {
  json out = json::array();
  if (s.host()->is_hypercube()) {
    for (const Edge& e : s.cube_edges()) out.push_back({e.low.mask, e.dir});
  } else {
    for (auto [a, b] : s.endpoint_pairs()) out.push_back({a, b});
  }
  return out;
}

json decomposition_to_json(const Decomposition& d) {
  json j;
  j["host"] = graph_to_json(*d.host);
  j["shape"] = d.shape.label();
  j["provenance"] = d.provenance;
  json pieces = json::array();
  for (const auto& p : d.pieces) pieces.push_back(edge_set_to_json(p));
  j["pieces"] = std::move(pieces);
  return j;
}

DecompositionLoad decomposition_from_json(const json& j) {
  DecompositionLoad out;
  auto host = graph_from_json(j.at("host"));
  auto shape = PieceShape::parse(j.at("shape").get<std::string>());
  if (!shape) throw std::invalid_argument("unknown shape label");

  Decomposition d;
  d.host = host;
  d.shape = *shape;
  if (j.contains("provenance")) d.provenance = j.at("provenance").get<std::string>();

  const bool cube = host->is_hypercube();
  int index = 0;
  for (const auto& piece : j.at("pieces")) {
    std::vector<EdgeId> ids;
    bool good = true;
    for (const auto& entry : piece) {
      std::optional<EdgeId> e;
      if (cube) {
        Mask low = entry.at(0).get<Mask>();
        int dir = entry.at(1).get<int>();
        if (dir >= 1 && dir <= host->dim() && (low & ~full_mask(host->dim())) == 0 &&
            !mask_has(low, dir))
          e = host->id_of(Edge{Vertex{low, host->dim()}, dir});
      } else {
        e = host->find_edge(entry.at(0).get<VertexId>(), entry.at(1).get<VertexId>());
      }
      if (!e) {
        out.issues.add(index, FailureReason::ForeignEdge,
                       "entry " + entry.dump() + " is not an edge of the host");
        good = false;
        continue;
      }
      ids.push_back(*e);
    }
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
      out.issues.add(index, FailureReason::Overlap, "piece repeats an edge");
      good = false;
    }
    if (good) d.pieces.push_back(EdgeSet(host, std::move(ids)));
    ++index;
  }
  if (out.issues.ok) out.decomposition = std::move(d);
  return out;
}

json automorphism_to_json(const Automorphism& a) {
  json j;
  json comp = json::array();
  for (int i = 1; i <= a.dim(); ++i)
    if (mask_has(a.comp(), i)) comp.push_back(i);
  j["comp"] = std::move(comp);
  j["perm"] = a.perm_one_line();
  return j;
}

Automorphism automorphism_from_json(const json& j, int dim) {
  Mask comp = 0;
  for (const auto& c : j.at("comp")) comp |= dir_bit(c.get<int>());
  std::vector<int> perm = j.at("perm").get<std::vector<int>>();
  return Automorphism::normal_form(dim, comp, perm);
}

}  // namespace qdecomp
