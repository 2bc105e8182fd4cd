#include "qdecomp/search.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qdecomp {

const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Possible:
      return "POSSIBLE";
    case SearchStatus::Impossible:
      return "IMPOSSIBLE";
    case SearchStatus::Unknown:
      return "UNKNOWN";
  }
  return "?";
}

namespace {

struct Bits {
  std::vector<std::uint64_t> w;

  explicit Bits(std::size_t nbits) : w((nbits + 63) / 64, 0) {}
  void set(std::size_t i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void clear(std::size_t i) { w[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const { return (w[i >> 6] >> (i & 63)) & 1; }

  bool intersects(const Bits& o) const {
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i] & o.w[i]) return true;
    return false;
  }
  void merge(const Bits& o) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] |= o.w[i];
  }
  void remove(const Bits& o) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] &= ~o.w[i];
  }
  friend bool operator<(const Bits& a, const Bits& b) { return a.w < b.w; }
};

// All embeddings of the piece, each as a sorted edge-id list.
std::vector<std::vector<EdgeId>> enumerate_placements(const Graph& g, const PieceShape& piece) {
  std::set<std::vector<EdgeId>> found;
  const auto nv = static_cast<VertexId>(g.vertex_count());

  auto record = [&](std::vector<EdgeId> ids) {
    std::sort(ids.begin(), ids.end());
    found.insert(std::move(ids));
  };

  switch (piece.kind) {
    case ShapeKind::Path: {
      const int k = piece.size;
      std::vector<VertexId> walk;
      std::vector<EdgeId> eids;
      std::vector<char> visited(nv, 0);
      auto dfs = [&](auto&& self, VertexId v) -> void {
        if (static_cast<int>(eids.size()) == k) {
          record(eids);
          return;
        }
        for (VertexId u : g.neighbours(v)) {
          if (visited[u]) continue;
          EdgeId e = *g.find_edge(v, u);
          visited[u] = 1;
          eids.push_back(e);
          self(self, u);
          eids.pop_back();
          visited[u] = 0;
        }
      };
      for (VertexId v = 0; v < nv; ++v) {
        visited[v] = 1;
        dfs(dfs, v);
        visited[v] = 0;
      }
      break;
    }
    case ShapeKind::Cycle: {
      const int k = piece.size;
      std::vector<EdgeId> eids;
      std::vector<char> visited(nv, 0);
      VertexId root = 0;
      auto dfs = [&](auto&& self, VertexId v) -> void {
        if (static_cast<int>(eids.size()) == k - 1) {
          if (auto e = g.find_edge(v, root)) {
            eids.push_back(*e);
            record(eids);
            eids.pop_back();
          }
          return;
        }
        for (VertexId u : g.neighbours(v)) {
          if (visited[u] || u <= root) continue;  // the root is the cycle minimum
          EdgeId e = *g.find_edge(v, u);
          visited[u] = 1;
          eids.push_back(e);
          self(self, u);
          eids.pop_back();
          visited[u] = 0;
        }
      };
      for (root = 0; root < nv; ++root) {
        visited[root] = 1;
        dfs(dfs, root);
        visited[root] = 0;
      }
      break;
    }
    case ShapeKind::Tree: {
      if (piece.tree_code.empty())
        throw std::invalid_argument("tree piece needs a concrete shape for search");
      auto tree_edges = parse_tree_code(piece.tree_code);  // (parent, child), preorder
      const int tn = static_cast<int>(tree_edges.size()) + 1;
      std::vector<VertexId> image(tn, 0);
      std::vector<char> used(nv, 0);
      std::vector<EdgeId> eids;
      auto dfs = [&](auto&& self, std::size_t ei) -> void {
        if (ei == tree_edges.size()) {
          record(eids);
          return;
        }
        auto [p, c] = tree_edges[ei];
        for (VertexId u : g.neighbours(image[static_cast<std::size_t>(p)])) {
          if (used[u]) continue;
          EdgeId e = *g.find_edge(image[static_cast<std::size_t>(p)], u);
          image[static_cast<std::size_t>(c)] = u;
          used[u] = 1;
          eids.push_back(e);
          self(self, ei + 1);
          eids.pop_back();
          used[u] = 0;
        }
      };
      for (VertexId v = 0; v < nv; ++v) {
        image[0] = v;
        used[v] = 1;
        dfs(dfs, 0);
        used[v] = 0;
      }
      break;
    }
    case ShapeKind::Subcube: {
      if (!g.is_hypercube())
        throw std::invalid_argument("subcube search supported on hypercube hosts only");
      const int n = g.dim();
      const int k = piece.size;
      if (k > n) break;
      std::vector<int> dirs(static_cast<std::size_t>(k));
      auto choose = [&](auto&& self, int next, int depth) -> void {
        if (depth == k) {
          Mask span = 0;
          for (int d : dirs) span |= dir_bit(d);
          for (Mask base = 0; base < (Mask{1} << n); ++base) {
            if (base & span) continue;
            std::vector<EdgeId> ids;
            for (int d : dirs)
              for (Mask t = 0; t < (Mask{1} << n); ++t) {
                if ((t & ~span) || mask_has(t, d)) continue;
                ids.push_back(g.id_of(Edge{Vertex{base | t, n}, d}));
              }
            record(std::move(ids));
          }
          return;
        }
        for (int d = next; d <= n; ++d) {
          dirs[static_cast<std::size_t>(depth)] = d;
          self(self, d + 1, depth + 1);
        }
      };
      choose(choose, 1, 0);
      break;
    }
    case ShapeKind::Any:
      throw std::invalid_argument("search needs a concrete piece shape");
  }
  return {found.begin(), found.end()};
}

// Edge-id permutations induced by the even-complement subgroup, used to
// canonicalize failed cover states.
std::vector<std::vector<EdgeId>> even_edge_permutations(const Graph& g) {
  std::vector<std::vector<EdgeId>> perms;
  if (!g.is_hypercube()) return perms;
  const int n = g.dim();
  if (n > 8) return perms;  // the memo pays off only on small cubes
  Subgroup grp = Subgroup::even_complements(n);
  for (const auto& f : grp.elements()) {
    if (f.is_identity()) continue;
    std::vector<EdgeId> p(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) p[e] = g.id_of(f.apply(g.cube_edge(e)));
    perms.push_back(std::move(p));
  }
  return perms;
}

struct CoverSearch {
  const Graph& g;
  std::vector<std::vector<EdgeId>> placements;
  std::vector<Bits> placement_bits;
  std::vector<std::vector<std::uint32_t>> by_edge;
  std::vector<std::vector<EdgeId>> sym_perms;
  std::set<std::vector<std::uint64_t>> failed;
  std::uint64_t nodes = 0;
  std::uint64_t budget = 0;
  std::uint64_t piece_size = 0;
  std::uint64_t uncovered = 0;
  bool aborted = false;
  static constexpr std::size_t kFailedCap = 1u << 20;

  explicit CoverSearch(const Graph& graph) : g(graph) {}

  std::vector<std::uint64_t> canonical(const Bits& covered) const {
    std::vector<std::uint64_t> best = covered.w;
    Bits tmp(g.edge_count());
    for (const auto& perm : sym_perms) {
      std::fill(tmp.w.begin(), tmp.w.end(), 0);
      for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (covered.test(e)) tmp.set(perm[e]);
      if (tmp.w < best) best = tmp.w;
    }
    return best;
  }

  bool dfs(Bits& covered, std::size_t scan_from, std::vector<std::uint32_t>& chosen) {
    if (++nodes > budget) {
      aborted = true;
      return false;
    }
    // Every placement covers exactly piece_size edges, so the residue of the
    // uncovered count is invariant down any branch.
    if (uncovered % piece_size != 0) return false;
    // Lowest uncovered edge.
    std::size_t e = scan_from;
    while (e < g.edge_count() && covered.test(e)) ++e;
    if (e >= g.edge_count()) return true;

    if (!sym_perms.empty()) {
      auto canon = canonical(covered);
      if (failed.count(canon)) return false;
    }
    for (std::uint32_t p : by_edge[e]) {
      if (placement_bits[p].intersects(covered)) continue;
      covered.merge(placement_bits[p]);
      uncovered -= piece_size;
      chosen.push_back(p);
      if (dfs(covered, e + 1, chosen)) return true;
      chosen.pop_back();
      uncovered += piece_size;
      covered.remove(placement_bits[p]);
      if (aborted) return false;
    }
    if (!sym_perms.empty() && failed.size() < kFailedCap) failed.insert(canonical(covered));
    return false;
  }
};

}  // namespace

SearchResult find_decomposition(std::shared_ptr<const Graph> g, const PieceShape& piece,
                                const SearchConfig& cfg) {
  if (!g) throw std::invalid_argument("no host graph");
  if (g->edge_count() > 256)
    throw std::invalid_argument("graph too large for exhaustive search (more than 256 edges)");

  CoverSearch search(*g);
  search.placements = enumerate_placements(*g, piece);
  search.budget = cfg.node_budget;
  search.piece_size =
      search.placements.empty() ? 1 : search.placements.front().size();
  search.uncovered = g->edge_count();
  if (cfg.symmetry_pruning) search.sym_perms = even_edge_permutations(*g);

  search.placement_bits.reserve(search.placements.size());
  search.by_edge.assign(g->edge_count(), {});
  for (std::uint32_t i = 0; i < search.placements.size(); ++i) {
    Bits b(g->edge_count());
    for (EdgeId e : search.placements[i]) b.set(e);
    search.placement_bits.push_back(std::move(b));
    for (EdgeId e : search.placements[i]) search.by_edge[e].push_back(i);
  }

  Bits covered(g->edge_count());
  std::vector<std::uint32_t> chosen;
  bool solved = search.dfs(covered, 0, chosen);

  SearchResult res;
  res.nodes = search.nodes;
  res.placements = search.placements.size();
  if (solved) {
    Decomposition d;
    d.host = g;
    d.shape = piece;
    d.provenance = "exact-cover-search";
    for (std::uint32_t p : chosen)
      d.pieces.push_back(EdgeSet(g, search.placements[p]));
    VerifyReport r = verify_partition(d);
    if (!r.ok) throw std::logic_error("search witness failed verification: " + r.summary());
    res.status = SearchStatus::Possible;
    res.witness = std::move(d);
  } else if (search.aborted) {
    res.status = SearchStatus::Unknown;
  } else {
    res.status = SearchStatus::Impossible;
  }
  return res;
}

namespace {

// ---- Hamiltonian decomposition search for Q_6 ----

struct HamState {
  const Graph& g;
  int n;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  bool aborted = false;

  explicit HamState(const Graph& graph, std::uint64_t b) : g(graph), n(graph.dim()), budget(b) {}
};

// Direction cycle of the image of a vertex walk under an automorphism,
// rotated to start at the empty vertex.
DirectionCycle image_cycle(const std::vector<int>& dirs, const std::vector<Mask>& verts,
                           const Automorphism& f) {
  const std::size_t m = dirs.size();
  std::size_t start = m;
  for (std::size_t i = 0; i < m; ++i)
    if (f.apply(verts[i]) == 0) {
      start = i;
      break;
    }
  if (start == m) throw std::logic_error("image cycle misses the empty vertex");
  DirectionCycle out;
  out.dim = f.dim();
  out.dirs.reserve(m);
  for (std::size_t t = 0; t < m; ++t) out.dirs.push_back(f.perm(dirs[(start + t) % m]));
  out.validate();
  return out;
}

// Searches for a Hamiltonian cycle C with C, g(C), g^2(C) pairwise disjoint,
// for an order-3 automorphism g. Success gives all three translates.
std::optional<std::vector<DirectionCycle>> rotational_seed_search(HamState& st,
                                                                  const Automorphism& rot) {
  const int n = st.n;
  const std::size_t nv = std::size_t{1} << n;
  Automorphism rot2 = compose(rot, rot);

  std::vector<EdgeId> g1(st.g.edge_count()), g2(st.g.edge_count());
  for (EdgeId e = 0; e < st.g.edge_count(); ++e) {
    g1[e] = st.g.id_of(rot.apply(st.g.cube_edge(e)));
    g2[e] = st.g.id_of(rot2.apply(st.g.cube_edge(e)));
  }

  std::vector<std::uint8_t> banned(st.g.edge_count(), 0);
  std::vector<char> visited(nv, 0);
  std::vector<int> dirs;
  std::vector<Mask> verts;
  dirs.reserve(nv);
  verts.reserve(nv);
  visited[0] = 1;
  verts.push_back(0);

  auto dfs = [&](auto&& self, Mask v) -> bool {
    if (++st.nodes > st.budget) {
      st.aborted = true;
      return false;
    }
    if (dirs.size() == nv - 1) {
      // closing requires the last vertex to neighbour the empty vertex
      if (std::popcount(v) != 1) return false;
      EdgeId e = *st.g.find_edge(v, 0);
      if (banned[e] || g1[e] == e || g2[e] == e) return false;
      dirs.push_back(std::countr_zero(v) + 1);
      verts.push_back(0);
      return true;
    }
    for (int d = 1; d <= n; ++d) {
      Mask u = v ^ dir_bit(d);
      if (visited[u]) continue;
      EdgeId e = *st.g.find_edge(v, u);
      if (banned[e] || g1[e] == e || g2[e] == e) continue;
      visited[u] = 1;
      ++banned[g1[e]];
      ++banned[g2[e]];
      dirs.push_back(d);
      verts.push_back(u);
      if (self(self, u)) return true;
      verts.pop_back();
      dirs.pop_back();
      --banned[g2[e]];
      --banned[g1[e]];
      visited[u] = 0;
      if (st.aborted) return false;
    }
    return false;
  };

  // Adding an edge bans its two images; by the group structure an edge is
  // banned exactly when one of its images is already on the cycle, so the
  // closing edge only needs the same membership checks.
  if (!dfs(dfs, 0)) return std::nullopt;

  DirectionCycle c{n, dirs};
  c.validate();
  std::vector<DirectionCycle> out;
  out.push_back(c);
  out.push_back(image_cycle(dirs, verts, rot));
  out.push_back(image_cycle(dirs, verts, rot2));
  return out;
}

// Order-3 automorphisms of Q_n usable as cycle rotations: theta^3 = id with
// no fixed coordinate (a fixed direction d would need all three translates
// to reuse C's direction-d edges, forcing 3 | 2^(n-1)), together with any
// complement set satisfying A xor theta(A) xor theta^2(A) = 0.
std::vector<Automorphism> order3_automorphisms(int n) {
  std::vector<Automorphism> out;
  std::vector<int> one_line(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) one_line[static_cast<std::size_t>(i)] = i + 1;
  do {
    Automorphism theta = Automorphism::coordinate_permutation(one_line);
    if (theta.is_identity()) continue;
    Automorphism theta3 = compose(theta, compose(theta, theta));
    if (!theta3.is_identity()) continue;
    bool fixed_point = false;
    for (int i = 1; i <= n; ++i)
      if (theta.perm(i) == i) fixed_point = true;
    if (fixed_point) continue;
    for (Mask a = 0; a < (Mask{1} << n); ++a) {
      Mask t1 = 0, t2 = 0;
      Mask rest = a;
      while (rest) {
        int i = std::countr_zero(rest) + 1;
        t1 |= dir_bit(theta.perm(i));
        t2 |= dir_bit(theta.perm(theta.perm(i)));
        rest &= rest - 1;
      }
      if ((a ^ t1 ^ t2) != 0) continue;
      out.push_back(Automorphism::normal_form(n, a, one_line));
    }
  } while (std::next_permutation(one_line.begin(), one_line.end()));
  return out;
}

// Gray-code Hamiltonian cycle of Q_n.
DirectionCycle gray_cycle(int n) {
  DirectionCycle c;
  c.dim = n;
  const std::uint64_t m = std::uint64_t{1} << n;
  for (std::uint64_t i = 1; i < m; ++i)
    c.dirs.push_back(std::countr_zero(i) + 1);
  c.dirs.push_back(n);
  c.validate();
  return c;
}

// Phase B: fix the Gray cycle, enumerate Hamiltonian cycles of the rest, and
// hope the remainder closes into a third one.
std::optional<std::vector<DirectionCycle>> two_stage_search(HamState& st) {
  const int n = st.n;
  const std::size_t nv = std::size_t{1} << n;
  DirectionCycle h1 = gray_cycle(n);
  EdgeSet e1 = h1.edge_set();

  std::vector<char> removed(st.g.edge_count(), 0);
  for (EdgeId e : e1.ids()) removed[e] = 1;

  std::vector<char> visited(nv, 0);
  std::vector<int> dirs;
  std::vector<char> used(st.g.edge_count(), 0);
  visited[0] = 1;

  auto remainder_is_cycle = [&]() {
    // Walk the 2-regular leftover from vertex 0 and count its length.
    std::vector<int> third;
    Mask v = 0;
    EdgeId prev = static_cast<EdgeId>(-1);
    for (std::size_t step = 0; step < nv; ++step) {
      bool moved = false;
      for (int d = 1; d <= n; ++d) {
        Mask u = v ^ dir_bit(d);
        EdgeId e = *st.g.find_edge(v, u);
        if (removed[e] || used[e] || e == prev) continue;
        third.push_back(d);
        prev = e;
        v = u;
        moved = true;
        break;
      }
      if (!moved) return std::optional<DirectionCycle>{};
    }
    if (v != 0) return std::optional<DirectionCycle>{};
    DirectionCycle c{n, third};
    WalkTrace t = trace_walk(c.to_walk());
    if (!t.simple_cycle || t.edges.size() != nv) return std::optional<DirectionCycle>{};
    return std::optional<DirectionCycle>{c};
  };

  auto dfs = [&](auto&& self, Mask v) -> std::optional<DirectionCycle> {
    if (++st.nodes > st.budget) {
      st.aborted = true;
      return std::nullopt;
    }
    if (dirs.size() == nv - 1) {
      auto closing = st.g.find_edge(v, 0);
      if (std::popcount(v) != 1) return std::nullopt;
      EdgeId e = *closing;
      if (removed[e] || used[e]) return std::nullopt;
      used[e] = 1;
      dirs.push_back(std::countr_zero(v) + 1);
      if (auto third = remainder_is_cycle()) return third;
      dirs.pop_back();
      used[e] = 0;
      return std::nullopt;
    }
    for (int d = 1; d <= n; ++d) {
      Mask u = v ^ dir_bit(d);
      if (u >= nv || visited[u]) continue;
      EdgeId e = *st.g.find_edge(v, u);
      if (removed[e] || used[e]) continue;
      visited[u] = 1;
      used[e] = 1;
      dirs.push_back(d);
      auto got = self(self, u);
      if (got) return got;
      dirs.pop_back();
      used[e] = 0;
      visited[u] = 0;
      if (st.aborted) return std::nullopt;
    }
    return std::nullopt;
  };

  auto third = dfs(dfs, 0);
  if (!third) return std::nullopt;
  DirectionCycle h2{n, dirs};
  h2.validate();
  return std::vector<DirectionCycle>{h1, h2, *third};
}

void check_hamiltonian_triple(const std::vector<DirectionCycle>& cycles, int n) {
  Decomposition d;
  d.host = Graph::hypercube(n);
  d.shape = PieceShape::cycle(1 << n);
  d.provenance = "hamiltonian-search(n=" + std::to_string(n) + ")";
  for (const auto& c : cycles) {
    if (!c.is_hamiltonian()) throw std::logic_error("search produced a non-Hamiltonian cycle");
    d.pieces.push_back(c.edge_set());
  }
  VerifyReport r = verify_partition(d);
  if (!r.ok) throw std::logic_error("Hamiltonian search result broken: " + r.summary());
}

}  // namespace

std::optional<std::vector<DirectionCycle>> find_hamiltonian_decomposition(
    int n, const SearchConfig& cfg) {
  if (n < 2 || n % 2 != 0 || n > 6)
    throw std::invalid_argument("supported for even n <= 6");
  if (n == 2) {
    DirectionCycle c{2, {1, 2, 1, 2}};
    c.validate();
    return std::vector<DirectionCycle>{c};
  }
  if (n == 4) return ringel_cycles(2);

  auto g = Graph::hypercube(6);
  HamState st(*g, cfg.node_budget);
  // Rotational seeding: a single constrained cycle yields all three.
  const std::uint64_t per_seed = std::max<std::uint64_t>(cfg.node_budget / 256, 20'000);
  for (const auto& rot : order3_automorphisms(6)) {
    HamState seed_state(*g, std::min<std::uint64_t>(per_seed, st.budget - std::min(st.budget, st.nodes)));
    auto found = rotational_seed_search(seed_state, rot);
    st.nodes += seed_state.nodes;
    if (found) {
      check_hamiltonian_triple(*found, 6);
      return found;
    }
    if (st.nodes >= st.budget) return std::nullopt;
  }
  // Generic two-stage backtracking on what is left of the budget.
  HamState rest(*g, st.budget - st.nodes);
  auto found = two_stage_search(rest);
  if (found) {
    check_hamiltonian_triple(*found, 6);
    return found;
  }
  return std::nullopt;
}

std::string CertificationReport::summary() const {
  std::ostringstream out;
  out << (ok ? "all negative certificates hold" : "CERTIFICATION FAILED");
  for (const auto& e : entries)
    out << "\n  " << e.name << ": " << to_string(e.status) << " (" << e.nodes << " nodes)";
  return out.str();
}

CertificationReport certify_negative(const SearchConfig& cfg) {
  auto q3 = Graph::hypercube(3);
  CertificationReport rep;
  rep.ok = true;
  auto run = [&](const std::string& name, const PieceShape& piece) {
    SearchResult r = find_decomposition(q3, piece, cfg);
    rep.entries.push_back({name, r.status, r.nodes});
    if (r.status != SearchStatus::Impossible) rep.ok = false;
  };
  run("P4 in Q3", PieceShape::path(4));
  run("P6 in Q3", PieceShape::path(6));
  PieceShape star4;
  star4.kind = ShapeKind::Tree;
  star4.size = 4;
  star4.tree_code = "(()()()())";
  run("4-star in Q3", star4);
  return rep;
}

}  // namespace qdecomp
