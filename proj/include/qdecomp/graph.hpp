#ifndef QDECOMP_GRAPH_HPP
#define QDECOMP_GRAPH_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "qdecomp/cube.hpp"

namespace qdecomp {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

/// A finite simple graph with a fixed canonical edge numbering.
///
/// Hypercubes and cycles are stored implicitly (ids are arithmetic);
/// Cartesian products keep their factor structure so that the copies of a
/// factor's edge set can be extracted without re-deriving it.
class Graph {
 public:
  enum class Kind { Generic, Hypercube, Cycle, Product };

  /// Q_n. Instances are cached, so repeated calls share one object.
  static std::shared_ptr<const Graph> hypercube(int n);
  /// The cycle graph C_m, m >= 3. Edge i joins vertices i and (i+1) mod m.
  static std::shared_ptr<const Graph> cycle(int m);
  static std::shared_ptr<const Graph> generic(
      VertexId vertex_count, std::vector<std::pair<VertexId, VertexId>> edges);
  /// Cartesian product; vertex (a, b) has id a * |V(right)| + b.
  static std::shared_ptr<const Graph> product(std::shared_ptr<const Graph> left,
                                              std::shared_ptr<const Graph> right);

  Kind kind() const { return kind_; }
  bool is_hypercube() const { return kind_ == Kind::Hypercube; }
  int dim() const;           // Hypercube only
  int cycle_length() const;  // Cycle only

  std::uint64_t vertex_count() const { return vertex_count_; }
  std::uint64_t edge_count() const { return edge_count_; }

  std::pair<VertexId, VertexId> endpoints(EdgeId e) const;
  std::optional<EdgeId> find_edge(VertexId a, VertexId b) const;
  std::vector<VertexId> neighbours(VertexId v) const;
  std::uint32_t degree(VertexId v) const;

  // Hypercube view.
  EdgeId id_of(const Edge& e) const;
  Edge cube_edge(EdgeId e) const;
  Vertex vertex(VertexId v) const;

  // Product view.
  const std::shared_ptr<const Graph>& left() const;
  const std::shared_ptr<const Graph>& right() const;
  VertexId pair_id(VertexId a, VertexId b) const;
  std::pair<VertexId, VertexId> split_id(VertexId v) const;
  /// Edge id of the copy of left-factor edge e in the fiber over right-vertex b.
  EdgeId left_copy(EdgeId e, VertexId b) const;
  /// Edge id of the copy of right-factor edge e in the fiber over left-vertex a.
  EdgeId right_copy(EdgeId e, VertexId a) const;

 private:
  Graph() = default;

  Kind kind_ = Kind::Generic;
  std::uint64_t vertex_count_ = 0;
  std::uint64_t edge_count_ = 0;
  int dim_ = 0;  // hypercube dimension or cycle length

  // Generic storage.
  std::vector<std::pair<VertexId, VertexId>> edges_;
  std::vector<std::vector<VertexId>> adjacency_;

  // Product storage.
  std::shared_ptr<const Graph> left_;
  std::shared_ptr<const Graph> right_;
};

/// A subset of the edges of a host graph, kept sorted by edge id.
class EdgeSet {
 public:
  EdgeSet() = default;
  EdgeSet(std::shared_ptr<const Graph> host, std::vector<EdgeId> ids);
  static EdgeSet from_cube_edges(std::shared_ptr<const Graph> host,
                                 const std::vector<Edge>& edges);

  const std::shared_ptr<const Graph>& host() const { return host_; }
  const std::vector<EdgeId>& ids() const { return ids_; }
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  bool contains(EdgeId e) const;

  std::vector<Edge> cube_edges() const;
  std::vector<std::pair<VertexId, VertexId>> endpoint_pairs() const;

  friend bool operator==(const EdgeSet& a, const EdgeSet& b) {
    return a.host_ == b.host_ && a.ids_ == b.ids_;
  }

 private:
  std::shared_ptr<const Graph> host_;
  std::vector<EdgeId> ids_;
};

/// Attempts to relabel g's vertices with Q_n masks so that adjacency becomes
/// exactly "masks differ in one bit". Returns the labels indexed by VertexId,
/// or nullopt if g is not isomorphic to Q_n.
std::optional<std::vector<Mask>> hypercube_relabeling(const Graph& g, int n);

/// For a product whose factors are (possibly nested products of) hypercubes:
/// the concatenation labels (a, b) -> a | (b << dim(left)).
std::vector<Mask> concat_relabeling(const Graph& product);

/// Total hypercube dimension of a product of hypercubes.
int flattened_dim(const Graph& g);

/// Carries an edge set through a vertex relabeling into another graph.
/// Every mapped endpoint pair must be an edge of the target.
EdgeSet transport(const EdgeSet& s, const std::vector<VertexId>& vertex_map,
                  std::shared_ptr<const Graph> target);

}  // namespace qdecomp

#endif  // QDECOMP_GRAPH_HPP
