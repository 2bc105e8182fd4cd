#include "qdecomp/graph.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <queue>
#include <stdexcept>

namespace qdecomp {

namespace {

// Edge ids of Q_n pack (dir, low) arithmetically: the bit at position dir-1
// of `low` is always zero, so it is squeezed out.
Mask squeeze(Mask low, int dir) {
  return (low & (dir_bit(dir) - 1)) | ((low >> dir) << (dir - 1));
}

Mask unsqueeze(Mask c, int dir) {
  return (c & (dir_bit(dir) - 1)) | ((c >> (dir - 1)) << dir);
}

}  // namespace

std::shared_ptr<const Graph> Graph::hypercube(int n) {
  if (n < 1 || n > kMaxGraphDim)
    throw std::invalid_argument("hypercube dimension out of supported range");
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const Graph>> cache;
  std::scoped_lock lock(mu);
  auto& slot = cache[n];
  if (!slot) {
    auto g = std::shared_ptr<Graph>(new Graph());
    g->kind_ = Kind::Hypercube;
    g->dim_ = n;
    g->vertex_count_ = std::uint64_t{1} << n;
    g->edge_count_ = std::uint64_t(n) << (n - 1);
    slot = g;
  }
  return slot;
}

std::shared_ptr<const Graph> Graph::cycle(int m) {
  if (m < 3 || m > (1 << kMaxGraphDim))
    throw std::invalid_argument("cycle length out of supported range");
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const Graph>> cache;
  std::scoped_lock lock(mu);
  auto& slot = cache[m];
  if (!slot) {
    auto g = std::shared_ptr<Graph>(new Graph());
    g->kind_ = Kind::Cycle;
    g->dim_ = m;
    g->vertex_count_ = m;
    g->edge_count_ = m;
    slot = g;
  }
  return slot;
}

std::shared_ptr<const Graph> Graph::generic(
    VertexId vertex_count, std::vector<std::pair<VertexId, VertexId>> edges) {
  if (vertex_count == 0) throw std::invalid_argument("graph needs at least one vertex");
  for (auto& [a, b] : edges) {
    if (a == b) throw std::invalid_argument("loops are not allowed");
    if (a >= vertex_count || b >= vertex_count)
      throw std::invalid_argument("edge endpoint out of range");
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw std::invalid_argument("duplicate edge");

  auto g = std::shared_ptr<Graph>(new Graph());
  g->kind_ = Kind::Generic;
  g->vertex_count_ = vertex_count;
  g->edge_count_ = edges.size();
  g->adjacency_.resize(vertex_count);
  for (EdgeId i = 0; i < edges.size(); ++i) {
    g->adjacency_[edges[i].first].push_back(edges[i].second);
    g->adjacency_[edges[i].second].push_back(edges[i].first);
  }
  g->edges_ = std::move(edges);
  return g;
}

std::shared_ptr<const Graph> Graph::product(std::shared_ptr<const Graph> left,
                                            std::shared_ptr<const Graph> right) {
  if (!left || !right) throw std::invalid_argument("product of null graphs");
  std::uint64_t nv = left->vertex_count() * right->vertex_count();
  std::uint64_t ne = right->vertex_count() * left->edge_count() +
                     left->vertex_count() * right->edge_count();
  if (nv > (std::uint64_t{1} << 26) || ne > (std::uint64_t{1} << 30))
    throw std::invalid_argument("product graph too large");
  auto g = std::shared_ptr<Graph>(new Graph());
  g->kind_ = Kind::Product;
  g->vertex_count_ = nv;
  g->edge_count_ = ne;
  g->left_ = std::move(left);
  g->right_ = std::move(right);
  return g;
}

int Graph::dim() const {
  if (kind_ != Kind::Hypercube) throw std::logic_error("dim(): not a hypercube");
  return dim_;
}

int Graph::cycle_length() const {
  if (kind_ != Kind::Cycle) throw std::logic_error("cycle_length(): not a cycle");
  return dim_;
}

std::pair<VertexId, VertexId> Graph::endpoints(EdgeId e) const {
  if (e >= edge_count_) throw std::out_of_range("edge id out of range");
  switch (kind_) {
    case Kind::Hypercube: {
      const std::uint64_t per_dir = std::uint64_t{1} << (dim_ - 1);
      int dir = static_cast<int>(e / per_dir) + 1;
      Mask low = unsqueeze(static_cast<Mask>(e % per_dir), dir);
      return {low, low | dir_bit(dir)};
    }
    case Kind::Cycle: {
      VertexId a = e;
      VertexId b = (e + 1) % static_cast<VertexId>(dim_);
      return {std::min(a, b), std::max(a, b)};
    }
    case Kind::Product: {
      const std::uint64_t block1 = right_->vertex_count() * left_->edge_count();
      if (e < block1) {
        VertexId b = static_cast<VertexId>(e / left_->edge_count());
        auto [u, v] = left_->endpoints(static_cast<EdgeId>(e % left_->edge_count()));
        return {pair_id(u, b), pair_id(v, b)};
      }
      std::uint64_t f = e - block1;
      VertexId a = static_cast<VertexId>(f / right_->edge_count());
      auto [u, v] = right_->endpoints(static_cast<EdgeId>(f % right_->edge_count()));
      return {pair_id(a, u), pair_id(a, v)};
    }
    case Kind::Generic:
      return edges_[e];
  }
  throw std::logic_error("unreachable");
}

std::optional<EdgeId> Graph::find_edge(VertexId a, VertexId b) const {
  if (a == b || a >= vertex_count_ || b >= vertex_count_) return std::nullopt;
  switch (kind_) {
    case Kind::Hypercube: {
      Mask d = a ^ b;
      if (std::popcount(d) != 1) return std::nullopt;
      int dir = std::countr_zero(d) + 1;
      Mask low = a & ~d;
      return static_cast<EdgeId>((std::uint64_t(dir - 1) << (dim_ - 1)) +
                                 squeeze(low, dir));
    }
    case Kind::Cycle: {
      VertexId m = static_cast<VertexId>(dim_);
      if ((a + 1) % m == b) return a;
      if ((b + 1) % m == a) return b;
      return std::nullopt;
    }
    case Kind::Product: {
      auto [al, ar] = split_id(a);
      auto [bl, br] = split_id(b);
      if (ar == br) {
        auto e = left_->find_edge(al, bl);
        if (!e) return std::nullopt;
        return left_copy(*e, ar);
      }
      if (al == bl) {
        auto e = right_->find_edge(ar, br);
        if (!e) return std::nullopt;
        return right_copy(*e, al);
      }
      return std::nullopt;
    }
    case Kind::Generic: {
      auto key = std::make_pair(std::min(a, b), std::max(a, b));
      auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
      if (it != edges_.end() && *it == key)
        return static_cast<EdgeId>(it - edges_.begin());
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::vector<VertexId> Graph::neighbours(VertexId v) const {
  if (v >= vertex_count_) throw std::out_of_range("vertex id out of range");
  switch (kind_) {
    case Kind::Hypercube: {
      std::vector<VertexId> out;
      out.reserve(dim_);
      for (int d = 1; d <= dim_; ++d) out.push_back(v ^ dir_bit(d));
      return out;
    }
    case Kind::Cycle: {
      VertexId m = static_cast<VertexId>(dim_);
      return {(v + 1) % m, (v + m - 1) % m};
    }
    case Kind::Product: {
      auto [a, b] = split_id(v);
      std::vector<VertexId> out;
      for (VertexId u : left_->neighbours(a)) out.push_back(pair_id(u, b));
      for (VertexId u : right_->neighbours(b)) out.push_back(pair_id(a, u));
      return out;
    }
    case Kind::Generic:
      return adjacency_[v];
  }
  throw std::logic_error("unreachable");
}

std::uint32_t Graph::degree(VertexId v) const {
  if (v >= vertex_count_) throw std::out_of_range("vertex id out of range");
  switch (kind_) {
    case Kind::Hypercube:
      return static_cast<std::uint32_t>(dim_);
    case Kind::Cycle:
      return 2;
    case Kind::Product: {
      auto [a, b] = split_id(v);
      return left_->degree(a) + right_->degree(b);
    }
    case Kind::Generic:
      return static_cast<std::uint32_t>(adjacency_[v].size());
  }
  throw std::logic_error("unreachable");
}

EdgeId Graph::id_of(const Edge& e) const {
  if (kind_ != Kind::Hypercube) throw std::logic_error("id_of(): not a hypercube");
  if (e.low.dim != dim_ || e.dir < 1 || e.dir > dim_ ||
      (e.low.mask & ~full_mask(dim_)) != 0 || mask_has(e.low.mask, e.dir))
    throw std::invalid_argument("edge does not belong to this hypercube");
  return static_cast<EdgeId>((std::uint64_t(e.dir - 1) << (dim_ - 1)) +
                             squeeze(e.low.mask, e.dir));
}

Edge Graph::cube_edge(EdgeId e) const {
  if (kind_ != Kind::Hypercube) throw std::logic_error("cube_edge(): not a hypercube");
  if (e >= edge_count_) throw std::out_of_range("edge id out of range");
  const std::uint64_t per_dir = std::uint64_t{1} << (dim_ - 1);
  int dir = static_cast<int>(e / per_dir) + 1;
  Mask low = unsqueeze(static_cast<Mask>(e % per_dir), dir);
  return Edge{Vertex{low, dim_}, dir};
}

Vertex Graph::vertex(VertexId v) const {
  if (kind_ != Kind::Hypercube) throw std::logic_error("vertex(): not a hypercube");
  if (v >= vertex_count_) throw std::out_of_range("vertex id out of range");
  return Vertex{v, dim_};
}

const std::shared_ptr<const Graph>& Graph::left() const {
  if (kind_ != Kind::Product) throw std::logic_error("left(): not a product");
  return left_;
}

const std::shared_ptr<const Graph>& Graph::right() const {
  if (kind_ != Kind::Product) throw std::logic_error("right(): not a product");
  return right_;
}

VertexId Graph::pair_id(VertexId a, VertexId b) const {
  if (kind_ != Kind::Product) throw std::logic_error("pair_id(): not a product");
  return static_cast<VertexId>(a * right_->vertex_count() + b);
}

std::pair<VertexId, VertexId> Graph::split_id(VertexId v) const {
  if (kind_ != Kind::Product) throw std::logic_error("split_id(): not a product");
  auto nb = static_cast<VertexId>(right_->vertex_count());
  return {v / nb, v % nb};
}

EdgeId Graph::left_copy(EdgeId e, VertexId b) const {
  if (kind_ != Kind::Product) throw std::logic_error("left_copy(): not a product");
  return static_cast<EdgeId>(std::uint64_t(b) * left_->edge_count() + e);
}

EdgeId Graph::right_copy(EdgeId e, VertexId a) const {
  if (kind_ != Kind::Product) throw std::logic_error("right_copy(): not a product");
  return static_cast<EdgeId>(right_->vertex_count() * left_->edge_count() +
                             std::uint64_t(a) * right_->edge_count() + e);
}

EdgeSet::EdgeSet(std::shared_ptr<const Graph> host, std::vector<EdgeId> ids)
    : host_(std::move(host)), ids_(std::move(ids)) {
  if (!host_) throw std::invalid_argument("edge set without a host graph");
  std::sort(ids_.begin(), ids_.end());
  if (std::adjacent_find(ids_.begin(), ids_.end()) != ids_.end())
    throw std::invalid_argument("duplicate edge in edge set");
  if (!ids_.empty() && ids_.back() >= host_->edge_count())
    throw std::invalid_argument("edge id outside the host graph");
}

EdgeSet EdgeSet::from_cube_edges(std::shared_ptr<const Graph> host,
                                 const std::vector<Edge>& edges) {
  std::vector<EdgeId> ids;
  ids.reserve(edges.size());
  for (const Edge& e : edges) ids.push_back(host->id_of(e));
  return EdgeSet(std::move(host), std::move(ids));
}

bool EdgeSet::contains(EdgeId e) const {
  return std::binary_search(ids_.begin(), ids_.end(), e);
}

std::vector<Edge> EdgeSet::cube_edges() const {
  std::vector<Edge> out;
  out.reserve(ids_.size());
  for (EdgeId e : ids_) out.push_back(host_->cube_edge(e));
  return out;
}

std::vector<std::pair<VertexId, VertexId>> EdgeSet::endpoint_pairs() const {
  std::vector<std::pair<VertexId, VertexId>> out;
  out.reserve(ids_.size());
  for (EdgeId e : ids_) out.push_back(host_->endpoints(e));
  return out;
}

std::optional<std::vector<Mask>> hypercube_relabeling(const Graph& g, int n) {
  if (n < 1 || n > kMaxGraphDim) return std::nullopt;
  if (g.vertex_count() != (std::uint64_t{1} << n)) return std::nullopt;
  if (g.edge_count() != (std::uint64_t(n) << (n - 1))) return std::nullopt;

  const VertexId count = VertexId{1} << n;
  const Mask unset = ~Mask{0};
  std::vector<Mask> label(count, unset);
  std::vector<int> level(count, -1);

  // BFS levels from vertex 0.
  std::vector<VertexId> order;
  order.reserve(count);
  std::queue<VertexId> q;
  q.push(0);
  level[0] = 0;
  while (!q.empty()) {
    VertexId v = q.front();
    q.pop();
    order.push_back(v);
    if (g.degree(v) != static_cast<std::uint32_t>(n)) return std::nullopt;
    for (VertexId u : g.neighbours(v)) {
      if (level[u] < 0) {
        level[u] = level[v] + 1;
        q.push(u);
      }
    }
  }
  if (order.size() != count) return std::nullopt;  // disconnected

  // Root gets the empty mask, its neighbours the unit masks; deeper vertices
  // are forced as the union of any two labelled lower neighbours.
  label[0] = 0;
  int unit = 0;
  for (VertexId u : g.neighbours(0)) label[u] = dir_bit(++unit);
  for (VertexId v : order) {
    if (level[v] < 2) continue;
    Mask acc = 0;
    int below = 0;
    for (VertexId u : g.neighbours(v)) {
      if (level[u] != level[v] - 1) continue;
      if (label[u] == unset) return std::nullopt;
      acc |= label[u];
      ++below;
    }
    if (below < 2 || std::popcount(acc) != level[v]) return std::nullopt;
    label[v] = acc;
  }

  // The labelling must be a bijection and must turn every edge into a
  // one-bit flip; with the edge counts equal this certifies the isomorphism.
  std::vector<bool> seen(count, false);
  for (VertexId v = 0; v < count; ++v) {
    if (label[v] == unset || label[v] >= count || seen[label[v]]) return std::nullopt;
    seen[label[v]] = true;
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto [a, b] = g.endpoints(e);
    if (std::popcount(label[a] ^ label[b]) != 1) return std::nullopt;
  }
  return label;
}

int flattened_dim(const Graph& g) {
  switch (g.kind()) {
    case Graph::Kind::Hypercube:
      return g.dim();
    case Graph::Kind::Product:
      return flattened_dim(*g.left()) + flattened_dim(*g.right());
    default:
      throw std::invalid_argument("not a product of hypercubes");
  }
}

EdgeSet transport(const EdgeSet& s, const std::vector<VertexId>& vertex_map,
                  std::shared_ptr<const Graph> target) {
  if (vertex_map.size() != s.host()->vertex_count())
    throw std::invalid_argument("vertex map does not cover the source graph");
  std::vector<EdgeId> ids;
  ids.reserve(s.size());
  for (EdgeId e : s.ids()) {
    auto [a, b] = s.host()->endpoints(e);
    auto mapped = target->find_edge(vertex_map[a], vertex_map[b]);
    if (!mapped) throw std::logic_error("transport(): image pair is not a target edge");
    ids.push_back(*mapped);
  }
  return EdgeSet(std::move(target), std::move(ids));
}

std::vector<Mask> concat_relabeling(const Graph& product) {
  if (product.kind() != Graph::Kind::Product)
    throw std::invalid_argument("concat_relabeling(): not a product");
  int dl = flattened_dim(*product.left());
  int dr = flattened_dim(*product.right());
  if (dl + dr > kMaxGraphDim) throw std::invalid_argument("flattened dimension too large");

  auto labels_of = [](const Graph& g, auto&& self) -> std::vector<Mask> {
    if (g.kind() == Graph::Kind::Hypercube) {
      std::vector<Mask> l(g.vertex_count());
      for (VertexId v = 0; v < g.vertex_count(); ++v) l[v] = v;
      return l;
    }
    auto ll = self(*g.left(), self);
    auto rl = self(*g.right(), self);
    int shift = flattened_dim(*g.left());
    std::vector<Mask> l(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      auto [a, b] = g.split_id(v);
      l[v] = ll[a] | (rl[b] << shift);
    }
    return l;
  };
  return labels_of(product, labels_of);
}

}  // namespace qdecomp
