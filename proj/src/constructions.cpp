#include "qdecomp/constructions.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace qdecomp {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

void self_check(bool cond, const std::string& msg) {
  if (!cond) throw std::logic_error(msg);
}

void self_check_report(const VerifyReport& r, const std::string& what) {
  if (!r.ok) throw std::logic_error(what + ": " + r.summary());
}

bool is_pow2(int x) { return x >= 1 && (x & (x - 1)) == 0; }

}  // namespace

void LabeledTree::validate() const {
  const int k = edge_count();
  require(k >= 1, "labeled tree needs at least one edge");
  std::vector<int> verts;
  verts.reserve(2 * edges.size());
  Mask labels_seen = 0;
  for (const auto& e : edges) {
    require(e.u != e.v, "labeled tree has a loop");
    require(e.label >= 1 && e.label <= k, "edge label out of {1..k}");
    require(!mask_has(labels_seen, e.label), "duplicate edge label");
    labels_seen |= dir_bit(e.label);
    verts.push_back(e.u);
    verts.push_back(e.v);
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  require(static_cast<int>(verts.size()) == k + 1, "labeled tree is not acyclic/connected");
  require(std::binary_search(verts.begin(), verts.end(), root), "root is not a tree vertex");
  // k edges over k+1 vertices can still hide a repeated pair plus a
  // disconnected part; union-find settles it.
  std::vector<int> parent(verts.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto index_of = [&](int v) {
    return static_cast<int>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
  };
  for (const auto& e : edges) {
    int a = find(index_of(e.u));
    int b = find(index_of(e.v));
    require(a != b, "labeled tree contains a cycle");
    parent[a] = b;
  }
}

LabeledTree LabeledTree::parse(const std::string& edge_spec, const std::string& label_spec) {
  LabeledTree t;
  std::stringstream es(edge_spec);
  std::string item;
  bool first = true;
  while (std::getline(es, item, ',')) {
    auto colon = item.find(':');
    require(colon != std::string::npos, "edge spec entries look like u:v");
    int u = std::stoi(item.substr(0, colon));
    int v = std::stoi(item.substr(colon + 1));
    if (first) {
      t.root = u;
      first = false;
    }
    t.edges.push_back({u, v, static_cast<int>(t.edges.size()) + 1});
  }
  if (!label_spec.empty()) {
    std::stringstream ls(label_spec);
    std::size_t i = 0;
    while (std::getline(ls, item, ',')) {
      require(i < t.edges.size(), "more labels than edges");
      t.edges[i++].label = std::stoi(item);
    }
    require(i == t.edges.size(), "fewer labels than edges");
  }
  t.validate();
  return t;
}

LabeledTree LabeledTree::path(int k) {
  require(k >= 1, "path needs k >= 1");
  LabeledTree t;
  for (int i = 0; i < k; ++i) t.edges.push_back({i, i + 1, i + 1});
  t.root = 0;
  return t;
}

LabeledTree LabeledTree::star(int k) {
  require(k >= 1, "star needs k >= 1");
  LabeledTree t;
  for (int i = 0; i < k; ++i) t.edges.push_back({0, i + 1, i + 1});
  t.root = 0;
  return t;
}

LabeledTree LabeledTree::from_code(const std::string& tree_code) {
  auto pairs = parse_tree_code(tree_code);
  LabeledTree t;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    t.edges.push_back({pairs[i].first, pairs[i].second, static_cast<int>(i) + 1});
  t.root = 0;
  t.validate();
  return t;
}

Walk DirectionCycle::to_walk() const { return Walk{Vertex{0, dim}, dirs}; }

void DirectionCycle::validate() const {
  require(dim >= 1 && dim <= kMaxDim, "direction cycle dimension out of range");
  WalkTrace t = trace_walk(to_walk());
  require(t.simple_cycle, "direction sequence does not close into a simple cycle");
}

bool DirectionCycle::is_hamiltonian() const {
  if (dirs.size() != (std::size_t{1} << dim)) return false;
  WalkTrace t = trace_walk(to_walk());
  return t.simple_cycle;
}

EdgeSet DirectionCycle::edge_set() const {
  WalkTrace t = trace_walk(to_walk());
  return EdgeSet::from_cube_edges(Graph::hypercube(dim), t.edges);
}

EdgeSet embed_labeled_tree(const LabeledTree& t, int n) {
  t.validate();
  const int k = t.edge_count();
  require(k <= n, "tree has more edges than the target dimension");
  auto host = Graph::hypercube(n);

  // Masks accumulate the labels along the root path.
  std::map<int, Mask> mask;
  mask[t.root] = 0;
  std::vector<Edge> edges;
  std::vector<bool> placed(t.edges.size(), false);
  std::size_t done = 0;
  while (done < t.edges.size()) {
    bool progress = false;
    for (std::size_t i = 0; i < t.edges.size(); ++i) {
      if (placed[i]) continue;
      const auto& e = t.edges[i];
      auto iu = mask.find(e.u);
      auto iv = mask.find(e.v);
      if (iu == mask.end() && iv == mask.end()) continue;
      int known = iu != mask.end() ? e.u : e.v;
      int fresh = iu != mask.end() ? e.v : e.u;
      mask[fresh] = mask[known] ^ dir_bit(e.label);
      edges.push_back(edge_from(Vertex{mask[known], n}, e.label));
      placed[i] = true;
      ++done;
      progress = true;
    }
    self_check(progress, "embed_labeled_tree(): tree traversal stalled");
  }
  return EdgeSet::from_cube_edges(host, edges);
}

OrbitDecomposition tree_fundamental_decomposition(const LabeledTree& t) {
  const int k = t.edge_count();
  EdgeSet base = embed_labeled_tree(t, k);
  Subgroup group = Subgroup::even_complements(k);
  Decomposition d = orbit_decomposition(base, group, PieceShape::tree_like(base),
                                        "tree-orbit(k=" + std::to_string(k) + ")");
  return OrbitDecomposition{std::move(base), std::move(group), std::move(d)};
}

DoubleRun double_run_cycle(int n) {
  require(n >= 2 && n % 2 == 0, "double-run cycle needs an even n >= 2");
  require(n <= kMaxGraphDim, "dimension out of supported range");
  DirectionCycle c;
  c.dim = n;
  c.dirs.reserve(2 * n);
  for (int pass = 0; pass < 2; ++pass)
    for (int d = 1; d <= n; ++d) c.dirs.push_back(d);
  c.validate();

  Subgroup group = Subgroup::even_complements(n, n);
  EdgeSet base = c.edge_set();
  Decomposition d = orbit_decomposition(base, group, PieceShape::cycle(2 * n),
                                        "double-run-cycle(n=" + std::to_string(n) + ")");
  return DoubleRun{std::move(c), OrbitDecomposition{std::move(base), std::move(group), std::move(d)}};
}

namespace {

// The five 4-edge walks generating the 20-edge base of Q_5.
std::vector<Walk> q5_base_walks() {
  auto walk = [](const char* start, std::vector<int> dirs) {
    return Walk{parse_vertex(start), std::move(dirs)};
  };
  return {
      walk("00000", {2, 5, 1, 5}),  // A
      walk("10100", {2, 5, 1, 5}),  // B
      walk("10000", {2, 3, 1, 3}),  // C
      walk("01000", {1, 4, 3, 4}),  // D
      walk("00100", {2, 4, 3, 4}),  // E
  };
}

// Independent description of the same base: a gutted 3-cube plus two edge
// pairs in the neighbouring layers plus two 4-edge matchings.
std::vector<Edge> q5_base_by_regions() {
  std::vector<Edge> out;
  // Layer x4=x5=0 without the 2-cube x2=0.
  for (int d = 1; d <= 3; ++d) {
    for (Mask m = 0; m < 8; ++m) {
      if (mask_has(m, d)) continue;
      bool in_deleted = !mask_has(m, 2) && d != 2;  // x2 = 0 face, directions 1 and 3
      if (in_deleted) continue;
      out.push_back(Edge{Vertex{m, 5}, d});
    }
  }
  auto edge = [](const char* a, const char* b) {
    return make_edge(parse_vertex(a), parse_vertex(b));
  };
  // Two direction-3 edges in layer x4=1, x5=0.
  out.push_back(edge("01010", "01110"));
  out.push_back(edge("11010", "11110"));
  // Two direction-1 edges in layer x4=0, x5=1.
  out.push_back(edge("01101", "11101"));
  out.push_back(edge("01001", "11001"));
  // Matchings from the x2=1 face of the base layer upward in directions 4, 5.
  for (Mask free = 0; free < 4; ++free) {
    Mask low = dir_bit(2) | ((free & 1) ? dir_bit(1) : 0) | ((free & 2) ? dir_bit(3) : 0);
    out.push_back(Edge{Vertex{low, 5}, 4});
    out.push_back(Edge{Vertex{low, 5}, 5});
  }
  return out;
}

}  // namespace

P4Q5 p4_decomposition_q5() {
  auto host = Graph::hypercube(5);
  P4Q5 out;
  out.base_paths = q5_base_walks();

  std::vector<EdgeSet> path_sets;
  std::vector<Edge> all_edges;
  for (const Walk& w : out.base_paths) {
    WalkTrace t = trace_walk(w);
    self_check(t.shape == WalkShape::Path && t.edges.size() == 4,
               "q5 base walk is not a 4-edge path");
    path_sets.push_back(EdgeSet::from_cube_edges(host, t.edges));
    all_edges.insert(all_edges.end(), t.edges.begin(), t.edges.end());
  }
  out.base = EdgeSet::from_cube_edges(host, all_edges);  // throws if paths overlap
  self_check(out.base.size() == 20, "q5 base does not have 20 edges");
  self_check(out.base == EdgeSet::from_cube_edges(host, q5_base_by_regions()),
             "q5 base does not match its region description");

  out.group = Subgroup::generate({Automorphism::parse_text("s{2,4}", 5),
                                  Automorphism::parse_text("s{2,5}", 5)});
  self_check(out.group.order() == 4, "q5 translation group should have order 4");

  out.translates = orbit_decomposition(out.base, out.group, PieceShape::any(), "q5-base-orbit");

  Decomposition paths;
  paths.host = host;
  paths.shape = PieceShape::path(4);
  paths.provenance = "p4-of-q5";
  for (const auto& g : out.group.elements())
    for (const auto& p : path_sets) paths.pieces.push_back(translate_edge_set(g, p));
  self_check_report(verify_partition(paths), "p4_decomposition_q5");
  out.paths = std::move(paths);
  return out;
}

Decomposition lift_p4(int k) {
  require(k >= 1, "lift needs k >= 1");
  require(k <= 512, "lift size out of supported range");
  auto q3 = Graph::hypercube(3);
  auto ring = Graph::cycle(4 * k);
  auto host = Graph::product(q3, ring);
  auto q5 = Graph::hypercube(5);

  P4Q5 base = p4_decomposition_q5();
  std::vector<int> color(q5->edge_count(), -1);
  for (std::size_t i = 0; i < base.paths.pieces.size(); ++i)
    for (EdgeId e : base.paths.pieces[i].ids()) color[e] = static_cast<int>(i);

  // Cyclic Gray order of the four (x4, x5) layers: 00, 10, 11, 01.
  const Mask layer[4] = {0, dir_bit(4), dir_bit(4) | dir_bit(5), dir_bit(5)};

  std::vector<std::vector<EdgeId>> by_color(base.paths.pieces.size());
  for (EdgeId e = 0; e < host->edge_count(); ++e) {
    auto [u, v] = host->endpoints(e);
    auto [yu, ju] = host->split_id(u);
    auto [yv, jv] = host->split_id(v);
    VertexId a = yu | layer[ju % 4];
    VertexId b = yv | layer[jv % 4];
    auto q5e = q5->find_edge(a, b);
    self_check(q5e.has_value(), "lift: image pair is not a Q_5 edge");
    by_color[color[*q5e]].push_back(e);
  }

  Decomposition d;
  d.host = host;
  d.shape = PieceShape::path(4);
  d.provenance = "p4-lift(k=" + std::to_string(k) + ")";
  for (auto& klass : by_color) {
    self_check(klass.size() == 4 * static_cast<std::size_t>(k),
               "lift: color class of unexpected size");
    // Split the class into connected components.
    std::unordered_map<VertexId, VertexId> parent;
    std::function<VertexId(VertexId)> find = [&](VertexId x) {
      auto it = parent.find(x);
      if (it == parent.end() || it->second == x) return x;
      return it->second = find(it->second);
    };
    auto unite = [&](VertexId x, VertexId y) {
      x = find(x);
      y = find(y);
      if (x != y) parent[x] = y;
    };
    for (EdgeId e : klass) {
      auto [a, b] = host->endpoints(e);
      parent.emplace(a, a);
      parent.emplace(b, b);
      unite(a, b);
    }
    std::map<VertexId, std::vector<EdgeId>> comp;  // keyed by root for determinism
    for (EdgeId e : klass) comp[find(host->endpoints(e).first)].push_back(e);
    for (auto& [root_id, ids] : comp) d.pieces.push_back(EdgeSet(host, ids));
  }
  self_check(d.pieces.size() == 20 * static_cast<std::size_t>(k),
             "lift: expected 20k pieces");
  self_check_report(verify_partition(d), "lift_p4");
  return d;
}

namespace {

// E(C x C) inside Q_{2n} under coordinate pairing: both block copies of
// every cycle edge, taken across all fibers.
std::vector<EdgeId> cartesian_square_edges(const DirectionCycle& c) {
  const int n = c.dim;
  auto host = Graph::hypercube(2 * n);
  std::vector<EdgeId> ids;
  const auto cycle_edges = c.edge_set().cube_edges();
  const Mask fibers = full_mask(n);
  ids.reserve(2ull * cycle_edges.size() * (fibers + 1ull));
  for (const Edge& e : cycle_edges) {
    for (Mask y = 0;; ++y) {
      ids.push_back(host->id_of(Edge{Vertex{e.low.mask | (y << n), 2 * n}, e.dir}));
      ids.push_back(host->id_of(Edge{Vertex{y | (e.low.mask << n), 2 * n}, e.dir + n}));
      if (y == fibers) break;
    }
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace

std::pair<DirectionCycle, DirectionCycle> ringel_double(const DirectionCycle& c) {
  require(c.dim >= 1 && c.dim <= 12, "doubling supported up to dimension 12");
  require(c.is_hamiltonian(), "input is not a Hamiltonian cycle witness");
  const int n = c.dim;
  const int m = static_cast<int>(c.dirs.size());

  // Row r runs through m-1 consecutive directions starting at index 2-r
  // (1-based, cyclic), then crosses into the other factor.
  auto build = [&](bool shifted) {
    DirectionCycle out;
    out.dim = 2 * n;
    out.dirs.reserve(static_cast<std::size_t>(m) * m);
    for (int r = 1; r <= m; ++r) {
      for (int t = 0; t < m - 1; ++t) {
        int idx = ((2 - r + t) % m + m) % m;  // 0-based index of c_{2-r+t}
        idx = idx == 0 ? m - 1 : idx - 1;
        out.dirs.push_back(c.dirs[idx] + (shifted ? n : 0));
      }
      out.dirs.push_back(c.dirs[r - 1] + (shifted ? 0 : n));
    }
    return out;
  };
  DirectionCycle phi = build(false);
  DirectionCycle gamma = build(true);

  self_check(phi.is_hamiltonian(), "doubled cycle phi is not Hamiltonian");
  self_check(gamma.is_hamiltonian(), "doubled cycle gamma is not Hamiltonian");
  EdgeSet ephi = phi.edge_set();
  EdgeSet egamma = gamma.edge_set();
  std::vector<EdgeId> joint;
  joint.reserve(ephi.size() + egamma.size());
  std::merge(ephi.ids().begin(), ephi.ids().end(), egamma.ids().begin(), egamma.ids().end(),
             std::back_inserter(joint));
  self_check(std::adjacent_find(joint.begin(), joint.end()) == joint.end(),
             "doubled cycles are not edge-disjoint");
  self_check(joint == cartesian_square_edges(c),
             "doubled cycles do not cover the Cartesian square");
  return {std::move(phi), std::move(gamma)};
}

std::vector<DirectionCycle> ringel_cycles(int k) {
  require(k >= 1 && k <= 4, "supported for 1 <= k <= 4");
  std::vector<DirectionCycle> cycles;
  cycles.push_back(DirectionCycle{2, {1, 2, 1, 2}});
  cycles.front().validate();
  for (int step = 2; step <= k; ++step) {
    std::vector<DirectionCycle> next;
    next.reserve(cycles.size() * 2);
    std::vector<DirectionCycle> gammas;
    for (const auto& c : cycles) {
      auto [phi, gamma] = ringel_double(c);
      next.push_back(std::move(phi));
      gammas.push_back(std::move(gamma));
    }
    next.insert(next.end(), std::make_move_iterator(gammas.begin()),
                std::make_move_iterator(gammas.end()));
    cycles = std::move(next);
  }
  return cycles;
}

Decomposition ringel_hamiltonian_decomposition(int k) {
  auto cycles = ringel_cycles(k);
  const int n = 1 << k;
  Decomposition d;
  d.host = Graph::hypercube(n);
  d.shape = PieceShape::cycle(1 << n);
  d.provenance = "ringel-hamiltonian(k=" + std::to_string(k) + ")";
  for (const auto& c : cycles) d.pieces.push_back(c.edge_set());
  self_check_report(verify_partition(d), "ringel_hamiltonian_decomposition");
  return d;
}

FundamentalHamiltonian fundamental_hamiltonian(int k) {
  require(k >= 1 && k <= 4, "supported for 1 <= k <= 4");
  DirectionCycle cycle{2, {1, 2, 1, 2}};
  cycle.validate();
  Subgroup group = Subgroup::trivial(2);
  for (int step = 2; step <= k; ++step) {
    const int n = cycle.dim;
    auto [phi, gamma] = ringel_double(cycle);
    (void)gamma;
    std::vector<Automorphism> elems;
    elems.reserve(2 * group.order());
    Automorphism swap_halves = half_swap_automorphism(n);
    for (const auto& f : group.elements()) {
      Automorphism paired = product_automorphism(f, f);
      elems.push_back(paired);
      elems.push_back(compose(swap_halves, paired));
    }
    group = Subgroup::from_elements(2 * n, std::move(elems));
    cycle = std::move(phi);
  }
  self_check(group.order() == (std::size_t{1} << (k - 1)),
             "fundamental Hamiltonian group has wrong order");
  self_check_report(verify_fundamental(cycle.edge_set(), group), "fundamental_hamiltonian");
  return FundamentalHamiltonian{std::move(cycle), std::move(group)};
}

Decomposition subcube_decomposition(int k, int n) {
  require(k >= 1 && n >= 1, "dimensions must be positive");
  require(n <= kMaxGraphDim, "dimension out of supported range");
  require(n % k == 0, "k must divide n");
  auto host = Graph::hypercube(n);

  // Q_n = Q_{n-k} x Q_k: one Q_k fiber per low-part vertex, then the
  // decomposition of Q_{n-k} copied into every high-part fiber.
  std::function<std::vector<std::vector<Edge>>(int)> build = [&](int dim) {
    std::vector<std::vector<Edge>> pieces;
    if (dim == k) {
      std::vector<Edge> all;
      for (int d = 1; d <= k; ++d)
        for (Mask m = 0; m < (Mask{1} << k); ++m)
          if (!mask_has(m, d)) all.push_back(Edge{Vertex{m, dim}, d});
      pieces.push_back(std::move(all));
      return pieces;
    }
    const int low = dim - k;
    for (Mask x = 0; x < (Mask{1} << low); ++x) {
      std::vector<Edge> fiber;
      for (int d = low + 1; d <= dim; ++d)
        for (Mask t = 0; t < (Mask{1} << k); ++t) {
          if (mask_has(t, d - low)) continue;
          fiber.push_back(Edge{Vertex{x | (t << low), dim}, d});
        }
      pieces.push_back(std::move(fiber));
    }
    for (Mask y = 0; y < (Mask{1} << k); ++y)
      for (auto& piece : build(low)) {
        std::vector<Edge> shifted;
        shifted.reserve(piece.size());
        for (const Edge& e : piece)
          shifted.push_back(Edge{Vertex{e.low.mask | (y << low), dim}, e.dir});
        pieces.push_back(std::move(shifted));
      }
    return pieces;
  };

  Decomposition d;
  d.host = host;
  d.shape = PieceShape::subcube(k);
  d.provenance = "subcube(" + std::to_string(k) + "|" + std::to_string(n) + ")";
  for (auto& piece : build(n)) d.pieces.push_back(EdgeSet::from_cube_edges(host, piece));
  self_check_report(verify_partition(d), "subcube_decomposition");
  return d;
}

Decomposition product_combine(const Decomposition& d1, const Decomposition& d2) {
  require(d1.host && d2.host, "decompositions need host graphs");
  require(d1.shape == d2.shape, "piece shapes differ");
  VerifyReport r1 = verify_partition(d1);
  require(r1.ok, "first input is not verified: " + r1.summary());
  VerifyReport r2 = verify_partition(d2);
  require(r2.ok, "second input is not verified: " + r2.summary());

  auto host = Graph::product(d1.host, d2.host);
  Decomposition out;
  out.host = host;
  out.shape = d1.shape;
  out.provenance = "product(" + d1.provenance + ", " + d2.provenance + ")";
  for (VertexId a = 0; a < d1.host->vertex_count(); ++a)
    for (const auto& piece : d2.pieces) {
      std::vector<EdgeId> ids;
      ids.reserve(piece.size());
      for (EdgeId e : piece.ids()) ids.push_back(host->right_copy(e, a));
      out.pieces.push_back(EdgeSet(host, std::move(ids)));
    }
  for (VertexId b = 0; b < d2.host->vertex_count(); ++b)
    for (const auto& piece : d1.pieces) {
      std::vector<EdgeId> ids;
      ids.reserve(piece.size());
      for (EdgeId e : piece.ids()) ids.push_back(host->left_copy(e, b));
      out.pieces.push_back(EdgeSet(host, std::move(ids)));
    }
  self_check_report(verify_partition(out), "product_combine");
  return out;
}

std::vector<EdgeSet> cycle_into_paths(const EdgeSet& cycle, int q) {
  PieceClass c = classify_piece(cycle);
  require(c.kind == ShapeKind::Cycle, "input is not a cycle edge set");
  const int m = c.edges;
  require(q >= 1 && q < m && m % q == 0, "q must divide the cycle length properly");

  // Recover the cyclic edge order, starting from the lowest edge id.
  const auto& host = cycle.host();
  std::unordered_map<VertexId, std::pair<EdgeId, EdgeId>> incident;
  incident.reserve(2 * cycle.size());
  for (EdgeId e : cycle.ids()) {
    auto [a, b] = host->endpoints(e);
    for (VertexId v : {a, b}) {
      auto [it, fresh] = incident.try_emplace(v, std::pair<EdgeId, EdgeId>{e, e});
      if (!fresh) it->second.second = e;
    }
  }
  EdgeId first = cycle.ids().front();
  auto [fa, fb] = host->endpoints(first);
  VertexId at = std::min(fa, fb);
  std::vector<EdgeId> ordered;
  ordered.reserve(m);
  EdgeId cur = first;
  for (int i = 0; i < m; ++i) {
    ordered.push_back(cur);
    auto [a, b] = host->endpoints(cur);
    at = (a == at) ? b : a;
    auto [e1, e2] = incident.at(at);
    cur = (e1 == cur) ? e2 : e1;
  }

  std::vector<EdgeSet> out;
  out.reserve(m / q);
  for (int i = 0; i < m / q; ++i) {
    std::vector<EdgeId> arc(ordered.begin() + std::ptrdiff_t(i) * q,
                            ordered.begin() + std::ptrdiff_t(i + 1) * q);
    EdgeSet piece(host, std::move(arc));
    PieceClass pc = classify_piece(piece);
    self_check(pc.kind == ShapeKind::Path && pc.edges == q,
               "cycle_into_paths(): arc is not a q-edge path");
    out.push_back(std::move(piece));
  }
  return out;
}

Decomposition refine_subcubes(const Decomposition& outer, const Decomposition& inner) {
  require(outer.shape.kind == ShapeKind::Subcube, "outer pieces must be subcubes");
  const int k = outer.shape.size;
  require(inner.host->is_hypercube() && inner.host->dim() == k,
          "inner decomposition must live on Q_k");
  require(outer.host->is_hypercube(), "outer host must be a hypercube");
  auto host = outer.host;
  const int n = host->dim();

  Decomposition out;
  out.host = host;
  out.shape = inner.shape;
  out.provenance = inner.provenance + " through " + outer.provenance;
  for (const auto& cube_piece : outer.pieces) {
    // The subcube is base + span of its direction set.
    std::vector<int> dirs;
    Mask base = full_mask(n);
    for (const Edge& e : cube_piece.cube_edges()) {
      if (!std::binary_search(dirs.begin(), dirs.end(), e.dir)) {
        dirs.insert(std::upper_bound(dirs.begin(), dirs.end(), e.dir), e.dir);
      }
      base &= e.low.mask;
    }
    self_check(static_cast<int>(dirs.size()) == k, "subcube piece with wrong direction span");
    auto spread = [&](Mask m) {
      Mask out_mask = 0;
      for (int i = 0; i < k; ++i)
        if (m & (Mask{1} << i)) out_mask |= dir_bit(dirs[static_cast<std::size_t>(i)]);
      return out_mask;
    };
    for (const auto& piece : inner.pieces) {
      std::vector<Edge> mapped;
      mapped.reserve(piece.size());
      for (const Edge& e : piece.cube_edges())
        mapped.push_back(
            Edge{Vertex{base | spread(e.low.mask), n}, dirs[static_cast<std::size_t>(e.dir - 1)]});
      out.pieces.push_back(EdgeSet::from_cube_edges(host, mapped));
    }
  }
  self_check_report(verify_partition(out), "refine_subcubes");
  return out;
}

Decomposition flatten_to_hypercube(const Decomposition& d) {
  auto labels = concat_relabeling(*d.host);
  auto target = Graph::hypercube(flattened_dim(*d.host));
  Decomposition out;
  out.host = target;
  out.shape = d.shape;
  out.provenance = d.provenance + " flattened";
  out.pieces.reserve(d.pieces.size());
  for (const auto& piece : d.pieces) out.pieces.push_back(transport(piece, labels, target));
  self_check_report(verify_partition(out), "flatten_to_hypercube");
  return out;
}

P4Q7Pipeline p4_q7_pipeline() {
  auto q7 = Graph::hypercube(7);
  auto cycles = ringel_cycles(2);
  const DirectionCycle& spanning = cycles[0];  // becomes the C_16 factor
  const DirectionCycle& spare = cycles[1];

  P4Q7Pipeline out;
  // The spare 16-cycle sits in every fiber over coordinates 5..7.
  for (Mask z = 0; z < 8; ++z) {
    std::vector<Edge> lifted;
    for (const Edge& e : spare.edge_set().cube_edges())
      lifted.push_back(Edge{Vertex{e.low.mask | (z << 4), 7}, e.dir});
    out.spare_cycles.push_back(EdgeSet::from_cube_edges(q7, lifted));
  }

  // The rest of Q_7 is the spanning cycle times Q_3, which the lift handles.
  out.lift = lift_p4(4);
  const auto& lift_host = out.lift.host;
  WalkTrace walk = trace_walk(spanning.to_walk());
  std::vector<VertexId> vmap(lift_host->vertex_count());
  for (VertexId y = 0; y < 8; ++y)
    for (VertexId j = 0; j < 16; ++j)
      vmap[lift_host->pair_id(y, j)] = walk.vertices[j].mask | (y << 4);

  Decomposition d;
  d.host = q7;
  d.shape = PieceShape::path(4);
  d.provenance = "p4-q7-pipeline";
  for (const auto& cyc : out.spare_cycles)
    for (auto& piece : cycle_into_paths(cyc, 4)) d.pieces.push_back(std::move(piece));
  for (const auto& piece : out.lift.pieces) d.pieces.push_back(transport(piece, vmap, q7));
  self_check(d.pieces.size() == 112, "q7 pipeline should produce 112 pieces");
  self_check_report(verify_partition(d), "p4_q7_pipeline");
  out.decomp = std::move(d);
  return out;
}

Decomposition p4_decomposition(int n) {
  require(n >= 4, "P4 decompositions start at n = 4");
  require(n <= 16, "supported up to n = 16");
  if (n % 2 == 0) {
    DoubleRun run = double_run_cycle(n);
    Decomposition d;
    d.host = run.orbit.decomp.host;
    d.shape = PieceShape::path(4);
    d.provenance = "p4-double-run(n=" + std::to_string(n) + ")";
    for (const auto& cyc : run.orbit.decomp.pieces)
      for (auto& piece : cycle_into_paths(cyc, 4)) d.pieces.push_back(std::move(piece));
    self_check_report(verify_partition(d), "p4_decomposition(even)");
    return d;
  }
  if (n == 5) return p4_decomposition_q5().paths;
  if (n == 7) return p4_q7_pipeline().decomp;
  Decomposition even_part = p4_decomposition(n - 5);
  Decomposition q5_part = p4_decomposition_q5().paths;
  Decomposition prod = product_combine(even_part, q5_part);
  Decomposition d = flatten_to_hypercube(prod);
  d.provenance = "p4-product(Q" + std::to_string(n - 5) + " x Q5)";
  return d;
}

std::optional<Decomposition> pow2_path_decomposition(int j, int n,
                                                     const HamiltonianFallback& fallback) {
  require(n >= 2 && n % 2 == 0, "n must be even");
  require(j >= 1 && j < n, "need 1 <= j < n");
  std::vector<DirectionCycle> cycles;
  if (is_pow2(n) && n <= 16) {
    cycles = ringel_cycles(std::countr_zero(static_cast<unsigned>(n)));
  } else if (fallback) {
    auto found = fallback(n);
    if (!found) return std::nullopt;
    cycles = std::move(*found);
  } else {
    return std::nullopt;
  }
  const int q = 1 << j;
  Decomposition d;
  d.host = Graph::hypercube(n);
  d.shape = PieceShape::path(q);
  d.provenance = "p" + std::to_string(q) + "-hamiltonian-cut(n=" + std::to_string(n) + ")";
  for (const auto& c : cycles) {
    self_check(c.dim == n && c.is_hamiltonian(), "bad Hamiltonian cycle");
    for (auto& piece : cycle_into_paths(c.edge_set(), q)) d.pieces.push_back(std::move(piece));
  }
  self_check_report(verify_partition(d), "pow2_path_decomposition");
  return d;
}

Decomposition pow2_cycle_decomposition(int m, int n) {
  require(is_pow2(m) && is_pow2(n), "m and n must be powers of two");
  require(m >= 2, "the cycle factor needs m >= 2");
  require(m <= n, "m must not exceed n");
  require(n <= 16, "supported up to n = 16");
  FundamentalHamiltonian fh = fundamental_hamiltonian(std::countr_zero(static_cast<unsigned>(m)));
  Decomposition inner = orbit_decomposition(fh.cycle.edge_set(), fh.group,
                                            PieceShape::cycle(1 << m),
                                            "fundamental-hamiltonian(Q" + std::to_string(m) + ")");
  if (m == n) return inner;
  Decomposition outer = subcube_decomposition(m, n);
  return refine_subcubes(outer, inner);
}

std::vector<Fixture> builtin_fundamental_sets() {
  auto q3 = Graph::hypercube(3);
  auto star2 = [&](const char* leaf1, const char* leaf2) {
    return EdgeSet::from_cube_edges(
        q3, {make_edge(parse_vertex("000"), parse_vertex(leaf1)),
             make_edge(parse_vertex("000"), parse_vertex(leaf2))});
  };
  std::vector<Fixture> out;
  out.push_back({"2-star{100,010}", star2("100", "010"),
                 Subgroup::generate({Automorphism::parse_text("s{1}.r(1 2 3)", 3)})});
  out.push_back({"2-star{100,001}", star2("100", "001"),
                 Subgroup::generate({Automorphism::parse_text("s{1}.r(1 3 2)", 3)})});
  out.push_back(
      {"3-star+pendant",
       EdgeSet::from_cube_edges(q3, {make_edge(parse_vertex("000"), parse_vertex("100")),
                                     make_edge(parse_vertex("000"), parse_vertex("010")),
                                     make_edge(parse_vertex("000"), parse_vertex("001")),
                                     make_edge(parse_vertex("001"), parse_vertex("101"))}),
       Subgroup::generate({Automorphism::parse_text("s{2,3}.r(1 2 3)", 3)})});
  P4Q5 q5 = p4_decomposition_q5();
  out.push_back({"q5-20-edge-base", q5.base, q5.group});
  return out;
}

}  // namespace qdecomp
