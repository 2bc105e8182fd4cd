#include "qdecomp/verify.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qdecomp {

PieceShape PieceShape::path(int k) {
  if (k < 1) throw std::invalid_argument("path shape needs k >= 1");
  return PieceShape{ShapeKind::Path, k, {}};
}

PieceShape PieceShape::cycle(int k) {
  if (k < 3) throw std::invalid_argument("cycle shape needs k >= 3");
  return PieceShape{ShapeKind::Cycle, k, {}};
}

PieceShape PieceShape::tree() { return PieceShape{ShapeKind::Tree, 0, {}}; }

PieceShape PieceShape::tree_like(const EdgeSet& reference) {
  return PieceShape{ShapeKind::Tree, static_cast<int>(reference.size()),
                    tree_canonical_code(reference)};
}

PieceShape PieceShape::subcube(int k) {
  if (k < 1) throw std::invalid_argument("subcube shape needs k >= 1");
  return PieceShape{ShapeKind::Subcube, k, {}};
}

PieceShape PieceShape::any() { return PieceShape{}; }

std::uint64_t PieceShape::edge_count() const {
  switch (kind) {
    case ShapeKind::Path:
    case ShapeKind::Cycle:
      return static_cast<std::uint64_t>(size);
    case ShapeKind::Subcube:
      return std::uint64_t(size) << (size - 1);
    case ShapeKind::Tree:
      return static_cast<std::uint64_t>(size);  // 0 when unconstrained
    case ShapeKind::Any:
      return 0;
  }
  return 0;
}

std::string PieceShape::label() const {
  switch (kind) {
    case ShapeKind::Path:
      return "P" + std::to_string(size);
    case ShapeKind::Cycle:
      return "C" + std::to_string(size);
    case ShapeKind::Subcube:
      return "Q" + std::to_string(size);
    case ShapeKind::Tree:
      return tree_code.empty() ? "tree" : "tree:" + tree_code;
    case ShapeKind::Any:
      return "any";
  }
  return "any";
}

std::optional<PieceShape> PieceShape::parse(const std::string& text) {
  if (text == "any") return any();
  if (text == "tree") return tree();
  if (text.rfind("tree:", 0) == 0) {
    std::string code = text.substr(5);
    try {
      auto edges = parse_tree_code(code);
      PieceShape s;
      s.kind = ShapeKind::Tree;
      s.size = static_cast<int>(edges.size());
      s.tree_code = code;
      return s;
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  if (text.size() < 2) return std::nullopt;
  int k = 0;
  auto [p, ec] = std::from_chars(text.data() + 1, text.data() + text.size(), k);
  if (ec != std::errc{} || p != text.data() + text.size() || k < 1) return std::nullopt;
  switch (text[0]) {
    case 'P':
      return path(k);
    case 'C':
      return k >= 3 ? std::optional(cycle(k)) : std::nullopt;
    case 'Q':
      return subcube(k);
    default:
      return std::nullopt;
  }
}

std::string PieceClass::describe() const {
  switch (kind) {
    case ShapeKind::Path:
      return "P" + std::to_string(edges);
    case ShapeKind::Cycle:
      return "C" + std::to_string(edges);
    case ShapeKind::Tree:
      return "tree(" + std::to_string(edges) + " edges)";
    default:
      return "unstructured(" + std::to_string(edges) + " edges)";
  }
}

namespace {

// Compressed view of an edge set: local vertex indices, degrees, adjacency.
struct LocalSubgraph {
  std::vector<VertexId> verts;  // sorted global ids
  std::vector<std::pair<int, int>> edges;
  std::vector<int> degree;

  int index_of(VertexId v) const {
    auto it = std::lower_bound(verts.begin(), verts.end(), v);
    return static_cast<int>(it - verts.begin());
  }
};

LocalSubgraph compress(const EdgeSet& s) {
  LocalSubgraph g;
  auto pairs = s.endpoint_pairs();
  g.verts.reserve(pairs.size() * 2);
  for (auto& [a, b] : pairs) {
    g.verts.push_back(a);
    g.verts.push_back(b);
  }
  std::sort(g.verts.begin(), g.verts.end());
  g.verts.erase(std::unique(g.verts.begin(), g.verts.end()), g.verts.end());
  g.degree.assign(g.verts.size(), 0);
  g.edges.reserve(pairs.size());
  for (auto& [a, b] : pairs) {
    int ia = g.index_of(a), ib = g.index_of(b);
    g.edges.push_back({ia, ib});
    ++g.degree[ia];
    ++g.degree[ib];
  }
  return g;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

bool is_connected(const LocalSubgraph& g) {
  if (g.verts.empty()) return false;
  UnionFind uf(static_cast<int>(g.verts.size()));
  int components = static_cast<int>(g.verts.size());
  for (auto& [a, b] : g.edges)
    if (uf.unite(a, b)) --components;
  return components == 1;
}

}  // namespace

PieceClass classify_piece(const EdgeSet& s) {
  if (s.empty()) throw std::invalid_argument("classify_piece(): empty edge set");
  LocalSubgraph g = compress(s);
  const int ne = static_cast<int>(g.edges.size());
  const int nv = static_cast<int>(g.verts.size());
  PieceClass out;
  out.edges = ne;
  if (!is_connected(g)) {
    out.kind = ShapeKind::Any;
    return out;
  }
  int deg1 = 0, deg2 = 0;
  for (int d : g.degree) {
    if (d == 1) ++deg1;
    if (d == 2) ++deg2;
  }
  if (nv == ne + 1 && deg1 == 2 && deg2 == nv - 2) {
    out.kind = ShapeKind::Path;
  } else if (nv == ne && deg2 == nv) {
    out.kind = ShapeKind::Cycle;
  } else if (nv == ne + 1) {
    out.kind = ShapeKind::Tree;
  } else {
    out.kind = ShapeKind::Any;
  }
  return out;
}

bool matches_shape(const EdgeSet& s, const PieceShape& shape) {
  if (shape.kind == ShapeKind::Any) return true;
  if (s.empty()) return false;
  switch (shape.kind) {
    case ShapeKind::Path: {
      PieceClass c = classify_piece(s);
      return c.kind == ShapeKind::Path && c.edges == shape.size;
    }
    case ShapeKind::Cycle: {
      PieceClass c = classify_piece(s);
      return c.kind == ShapeKind::Cycle && c.edges == shape.size;
    }
    case ShapeKind::Tree: {
      PieceClass c = classify_piece(s);
      if (c.kind != ShapeKind::Path && c.kind != ShapeKind::Tree) return false;
      if (shape.tree_code.empty()) return true;
      return tree_canonical_code(s) == shape.tree_code;
    }
    case ShapeKind::Subcube: {
      const int k = shape.size;
      if (s.size() != (std::uint64_t(k) << (k - 1))) return false;
      LocalSubgraph g = compress(s);
      if (g.verts.size() != (std::size_t{1} << k)) return false;
      std::vector<std::pair<VertexId, VertexId>> edges;
      edges.reserve(g.edges.size());
      for (auto& [a, b] : g.edges)
        edges.push_back({static_cast<VertexId>(a), static_cast<VertexId>(b)});
      auto sub = Graph::generic(static_cast<VertexId>(g.verts.size()), std::move(edges));
      return hypercube_relabeling(*sub, k).has_value();
    }
    case ShapeKind::Any:
      return true;
  }
  return false;
}

const char* to_string(FailureReason r) {
  switch (r) {
    case FailureReason::Overlap:
      return "overlap";
    case FailureReason::MissingEdges:
      return "missing edges";
    case FailureReason::ForeignEdge:
      return "foreign edge";
    case FailureReason::WrongShape:
      return "wrong shape";
    case FailureReason::Cardinality:
      return "cardinality";
  }
  return "?";
}

void VerifyReport::add(int piece, FailureReason reason, std::string detail) {
  ok = false;
  failures.push_back(VerifyFailure{piece, reason, std::move(detail)});
}

std::string VerifyReport::summary() const {
  if (ok) return "OK";
  std::ostringstream out;
  out << failures.size() << " failure(s):";
  for (const auto& f : failures) {
    out << "\n  ";
    if (f.piece >= 0) out << "piece " << f.piece << ": ";
    out << to_string(f.reason);
    if (!f.detail.empty()) out << " (" << f.detail << ")";
  }
  return out.str();
}

namespace {

std::string edge_name(const Graph& host, EdgeId e) {
  if (host.is_hypercube()) {
    Edge ce = host.cube_edge(e);
    return to_string(ce) + " dir " + std::to_string(ce.dir);
  }
  auto [a, b] = host.endpoints(e);
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

// Disjointness + coverage pass shared by both verification entry points.
void check_cover(const Decomposition& d, VerifyReport& r) {
  const auto& host = *d.host;
  std::vector<std::uint16_t> count(host.edge_count(), 0);
  std::vector<std::int32_t> owner(host.edge_count(), -1);
  for (std::size_t i = 0; i < d.pieces.size(); ++i) {
    const EdgeSet& p = d.pieces[i];
    if (p.host() != d.host) {
      r.add(static_cast<int>(i), FailureReason::ForeignEdge,
            "piece was built on a different host graph");
      continue;
    }
    for (EdgeId e : p.ids()) {
      if (count[e] == 0) {
        owner[e] = static_cast<std::int32_t>(i);
        count[e] = 1;
      } else {
        if (count[e] < 0xffff) ++count[e];
        r.add(static_cast<int>(i), FailureReason::Overlap,
              "edge " + edge_name(host, e) + " already covered by piece " +
                  std::to_string(owner[e]));
      }
    }
  }
  std::uint64_t missing = 0;
  std::string first_missing;
  for (EdgeId e = 0; e < host.edge_count(); ++e) {
    if (count[e] == 0) {
      if (missing == 0) first_missing = edge_name(host, e);
      ++missing;
    }
  }
  if (missing > 0)
    r.add(-1, FailureReason::MissingEdges,
          std::to_string(missing) + " host edge(s) uncovered, first " + first_missing);
}

std::vector<char> shape_kernel_serial(const Decomposition& d) {
  std::vector<char> okflags(d.pieces.size(), 1);
  for (std::size_t i = 0; i < d.pieces.size(); ++i)
    okflags[i] = d.pieces[i].host() == d.host && matches_shape(d.pieces[i], d.shape);
  return okflags;
}

std::vector<char> shape_kernel_parallel(const Decomposition& d) {
  std::vector<char> okflags(d.pieces.size(), 1);
  const long long n = static_cast<long long>(d.pieces.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (long long i = 0; i < n; ++i) {
    auto idx = static_cast<std::size_t>(i);
    okflags[idx] = d.pieces[idx].host() == d.host && matches_shape(d.pieces[idx], d.shape);
  }
  return okflags;
}

void add_shape_failures(const Decomposition& d, const std::vector<char>& okflags,
                        VerifyReport& r) {
  for (std::size_t i = 0; i < d.pieces.size(); ++i) {
    if (okflags[i]) continue;
    if (d.pieces[i].host() != d.host) continue;  // already reported as foreign
    std::string detail;
    if (d.pieces[i].empty())
      detail = "empty piece";
    else
      detail = "classified " + classify_piece(d.pieces[i]).describe() + ", expected " +
               d.shape.label();
    r.add(static_cast<int>(i), FailureReason::WrongShape, std::move(detail));
  }
}

VerifyReport verify_partition_impl(const Decomposition& d, bool parallel) {
  if (!d.host) throw std::invalid_argument("decomposition without a host graph");
  VerifyReport r;
  check_cover(d, r);
  auto okflags = parallel ? shape_kernel_parallel(d) : shape_kernel_serial(d);
  // Empty pieces match no concrete shape, and are vacuous even under "any".
  for (std::size_t i = 0; i < d.pieces.size(); ++i)
    if (d.pieces[i].empty()) okflags[i] = 0;
  add_shape_failures(d, okflags, r);
  return r;
}

}  // namespace

VerifyReport verify_partition(const Decomposition& d, VerifyOptions opts) {
  return verify_partition_impl(d, opts.parallel);
}

VerifyReport verify_partition_serial(const Decomposition& d) {
  return verify_partition_impl(d, false);
}

VerifyReport verify_fundamental(const EdgeSet& base, const Subgroup& g, VerifyOptions opts) {
  const auto& host = base.host();
  if (!host || !host->is_hypercube())
    throw std::invalid_argument("verify_fundamental(): host is not a hypercube");
  if (host->dim() != g.dim()) throw std::invalid_argument("dimension mismatch");

  VerifyReport r;
  const std::uint64_t needed = host->edge_count();
  const std::uint64_t got = std::uint64_t(base.size()) * g.order();
  if (got != needed)
    r.add(-1, FailureReason::Cardinality,
          "|base| * |G| = " + std::to_string(base.size()) + " * " + std::to_string(g.order()) +
              " = " + std::to_string(got) + ", |E| = " + std::to_string(needed));

  auto translates = orbit_translates(g, base, opts.parallel);
  std::vector<std::int32_t> owner(host->edge_count(), -1);
  for (std::size_t i = 0; i < translates.size(); ++i) {
    for (EdgeId e : translates[i].ids()) {
      if (owner[e] < 0) {
        owner[e] = static_cast<std::int32_t>(i);
      } else {
        r.add(static_cast<int>(i), FailureReason::Overlap,
              "translate " + std::to_string(i) + " meets translate " +
                  std::to_string(owner[e]) + " at edge " + edge_name(*host, e));
      }
    }
  }
  std::uint64_t missing = 0;
  std::string first_missing;
  for (EdgeId e = 0; e < host->edge_count(); ++e) {
    if (owner[e] < 0) {
      if (missing == 0) first_missing = edge_name(*host, e);
      ++missing;
    }
  }
  if (missing > 0)
    r.add(-1, FailureReason::MissingEdges,
          std::to_string(missing) + " host edge(s) uncovered, first " + first_missing);
  return r;
}

Decomposition orbit_decomposition(const EdgeSet& base, const Subgroup& g, PieceShape shape,
                                  std::string provenance, VerifyOptions opts) {
  VerifyReport fund = verify_fundamental(base, g, opts);
  if (!fund.ok)
    throw std::logic_error("orbit_decomposition(): base is not fundamental: " + fund.summary());
  Decomposition d;
  d.host = base.host();
  d.shape = std::move(shape);
  d.pieces = orbit_translates(g, base, opts.parallel);
  d.provenance = std::move(provenance);
  VerifyReport part = verify_partition(d, opts);
  if (!part.ok)
    throw std::logic_error("orbit_decomposition(): verification failed: " + part.summary());
  return d;
}

namespace {

struct TreeView {
  int n = 0;
  std::vector<std::vector<int>> adj;
};

TreeView tree_view(const std::vector<std::pair<VertexId, VertexId>>& pairs) {
  std::vector<VertexId> verts;
  verts.reserve(pairs.size() * 2);
  for (auto& [a, b] : pairs) {
    verts.push_back(a);
    verts.push_back(b);
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  auto index_of = [&](VertexId v) {
    return static_cast<int>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
  };
  TreeView t;
  t.n = static_cast<int>(verts.size());
  if (t.n != static_cast<int>(pairs.size()) + 1)
    throw std::invalid_argument("input not a tree");
  t.adj.resize(t.n);
  UnionFind uf(t.n);
  for (auto& [a, b] : pairs) {
    int ia = index_of(a), ib = index_of(b);
    if (!uf.unite(ia, ib)) throw std::invalid_argument("input not a tree");
    t.adj[ia].push_back(ib);
    t.adj[ib].push_back(ia);
  }
  return t;
}

// Subtree-size centroids: one or two vertices minimizing the largest
// component left after their removal.
std::vector<int> centroids(const TreeView& t) {
  const int n = t.n;
  if (n == 1) return {0};
  std::vector<int> size(n, 1), best(n, 0), order, parent(n, -1);
  order.reserve(n);
  order.push_back(0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    int v = order[i];
    for (int u : t.adj[v])
      if (u != parent[v]) {
        parent[u] = v;
        order.push_back(u);
      }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int v = *it;
    for (int u : t.adj[v])
      if (u != parent[v]) {
        size[v] += size[u];
        best[v] = std::max(best[v], size[u]);
      }
    best[v] = std::max(best[v], n - size[v]);
  }
  int opt = n;
  for (int v = 0; v < n; ++v) opt = std::min(opt, best[v]);
  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if (best[v] == opt) out.push_back(v);
  return out;
}

std::string encode_rooted(const TreeView& t, int root) {
  // Iterative post-order with sorted child encodings.
  std::vector<int> parent(t.n, -2), order;
  order.reserve(t.n);
  parent[root] = -1;
  order.push_back(root);
  for (std::size_t i = 0; i < order.size(); ++i) {
    int v = order[i];
    for (int u : t.adj[v])
      if (parent[u] == -2) {
        parent[u] = v;
        order.push_back(u);
      }
  }
  std::vector<std::string> code(t.n);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int v = *it;
    std::vector<std::string> kids;
    for (int u : t.adj[v])
      if (parent[u] == v) kids.push_back(std::move(code[u]));
    std::sort(kids.begin(), kids.end());
    std::string s = "(";
    for (auto& k : kids) s += k;
    s += ")";
    code[v] = std::move(s);
  }
  return code[root];
}

}  // namespace

std::string tree_code_from_pairs(const std::vector<std::pair<VertexId, VertexId>>& edges) {
  if (edges.empty()) throw std::invalid_argument("input not a tree");
  TreeView t = tree_view(edges);
  std::string best;
  for (int c : centroids(t)) {
    std::string code = encode_rooted(t, c);
    if (best.empty() || code < best) best = std::move(code);
  }
  return best;
}

std::string tree_canonical_code(const EdgeSet& s) {
  return tree_code_from_pairs(s.endpoint_pairs());
}

std::vector<std::pair<int, int>> parse_tree_code(const std::string& code) {
  std::vector<std::pair<int, int>> edges;
  std::vector<int> stack;
  int next = 0;
  for (char c : code) {
    if (c == '(') {
      int id = next++;
      if (!stack.empty()) edges.push_back({stack.back(), id});
      stack.push_back(id);
    } else if (c == ')') {
      if (stack.empty()) throw std::invalid_argument("unbalanced tree code");
      stack.pop_back();
    } else {
      throw std::invalid_argument("tree code must consist of parentheses");
    }
  }
  if (!stack.empty() || next == 0) throw std::invalid_argument("unbalanced tree code");
  return edges;
}

bool tree_isomorphic(const EdgeSet& a, const EdgeSet& b) {
  return tree_canonical_code(a) == tree_canonical_code(b);
}

}  // namespace qdecomp
