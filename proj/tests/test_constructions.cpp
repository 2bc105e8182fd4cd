#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <map>
#include <numeric>
#include <set>

#include "doctest.h"
#include "qdecomp/constructions.hpp"

using namespace qdecomp;

namespace {

// Exhaustive generator of unlabeled trees with k edges, represented by their
// canonical codes: grow every tree with k-1 edges by one leaf in all ways.
std::set<std::string> all_tree_codes(int k) {
  std::set<std::string> cur = {tree_code_from_pairs({{0, 1}})};
  for (int step = 2; step <= k; ++step) {
    std::set<std::string> next;
    for (const std::string& code : cur) {
      auto edges = parse_tree_code(code);
      int nv = static_cast<int>(edges.size()) + 1;
      for (int attach = 0; attach < nv; ++attach) {
        std::vector<std::pair<VertexId, VertexId>> grown;
        for (auto [a, b] : edges)
          grown.push_back({static_cast<VertexId>(a), static_cast<VertexId>(b)});
        grown.push_back({static_cast<VertexId>(attach), static_cast<VertexId>(nv)});
        next.insert(tree_code_from_pairs(grown));
      }
    }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace

TEST_CASE("labeled trees") {
  LabeledTree t = LabeledTree::parse("1:2,1:3,3:4");
  CHECK(t.edge_count() == 3);
  CHECK(t.root == 1);
  CHECK_NOTHROW(t.validate());
  CHECK_THROWS(LabeledTree::parse("1:2,3:4"));        // disconnected
  CHECK_THROWS(LabeledTree::parse("1:2,2:3,3:1"));    // cycle
  CHECK_THROWS(LabeledTree::parse("1:2,1:3", "1,1"));  // duplicate labels
  CHECK(LabeledTree::path(4).edge_count() == 4);
  CHECK(LabeledTree::star(3).edge_count() == 3);
  CHECK(LabeledTree::from_code("(()())").edge_count() == 2);
}

TEST_CASE("embedding labeled trees") {
  auto q3 = Graph::hypercube(3);
  // the 2-edge path with labels 1, 2 from an end
  EdgeSet p = embed_labeled_tree(LabeledTree::path(2), 3);
  CHECK(p == EdgeSet::from_cube_edges(
                 q3, {make_edge(parse_vertex("000"), parse_vertex("100")),
                      make_edge(parse_vertex("100"), parse_vertex("110"))}));

  // a 3-star plus pendant, labelled 1..4; same abstract shape as the worked
  // 4-edge tree of Q_3 even though that one reuses direction 1
  LabeledTree spider;
  spider.edges = {{0, 1, 1}, {0, 2, 2}, {0, 3, 3}, {3, 4, 4}};
  spider.root = 0;
  EdgeSet e = embed_labeled_tree(spider, 4);
  EdgeSet worked = EdgeSet::from_cube_edges(
      q3, {make_edge(parse_vertex("000"), parse_vertex("100")),
           make_edge(parse_vertex("000"), parse_vertex("010")),
           make_edge(parse_vertex("000"), parse_vertex("001")),
           make_edge(parse_vertex("001"), parse_vertex("101"))});
  CHECK(tree_isomorphic(e, worked));

  // reusing a direction label violates the labelled-tree contract
  LabeledTree reused;
  reused.edges = {{0, 1, 1}, {0, 2, 2}, {0, 3, 3}, {3, 4, 1}};
  reused.root = 0;
  CHECK_THROWS(embed_labeled_tree(reused, 4));

  CHECK(embed_labeled_tree(LabeledTree::path(1), 1) ==
        EdgeSet(Graph::hypercube(1), {0}));
  CHECK_THROWS(embed_labeled_tree(LabeledTree::path(4), 3));
}

TEST_CASE("tree fundamental decompositions") {
  auto two = tree_fundamental_decomposition(LabeledTree::path(2));
  CHECK(two.decomp.pieces.size() == 2);
  CHECK(two.decomp.host->edge_count() == 4);

  auto three = tree_fundamental_decomposition(LabeledTree::path(3));
  CHECK(three.decomp.pieces.size() == 4);
  CHECK(three.group.order() == 4);

  LabeledTree spider;
  spider.edges = {{0, 1, 1}, {0, 2, 2}, {0, 3, 3}, {3, 4, 4}};
  spider.root = 0;
  auto four = tree_fundamental_decomposition(spider);
  CHECK(four.decomp.pieces.size() == 8);
  CHECK(four.decomp.host->edge_count() == 32);
}

TEST_CASE("every tree with up to 6 edges is fundamental") {
  const std::map<int, std::size_t> known_counts = {{1, 1}, {2, 1}, {3, 2},
                                                   {4, 3}, {5, 6}, {6, 11}};
  for (auto [k, count] : known_counts) {
    auto codes = all_tree_codes(k);
    CHECK(codes.size() == count);
    for (const std::string& code : codes) {
      CAPTURE(code);
      auto od = tree_fundamental_decomposition(LabeledTree::from_code(code));
      CHECK(od.decomp.pieces.size() == (std::size_t{1} << (k - 1)));
      CHECK(verify_fundamental(od.base, od.group).ok);
    }
  }
}

TEST_CASE("double-run cycles") {
  DoubleRun four = double_run_cycle(4);
  CHECK(four.cycle.dirs == std::vector<int>{1, 2, 3, 4, 1, 2, 3, 4});
  CHECK(four.orbit.group.order() == 4);
  CHECK(four.orbit.decomp.pieces.size() == 4);
  CHECK(four.orbit.decomp.host->edge_count() == 32);

  DoubleRun two = double_run_cycle(2);
  CHECK(two.orbit.group.order() == 1);
  CHECK(two.orbit.decomp.pieces.size() == 1);
  CHECK(two.orbit.decomp.pieces[0].size() == 4);

  DoubleRun six = double_run_cycle(6);
  CHECK(six.cycle.dirs.size() == 12);
  CHECK(six.orbit.group.order() == 16);
  CHECK(six.orbit.decomp.pieces.size() == 16);
  CHECK(six.orbit.decomp.host->edge_count() == 192);

  CHECK_THROWS(double_run_cycle(3));
}

TEST_CASE("the explicit Q_5 base") {
  P4Q5 q5 = p4_decomposition_q5();
  CHECK(q5.base.size() == 20);
  CHECK(q5.group.order() == 4);
  CHECK(q5.translates.pieces.size() == 4);
  CHECK(q5.paths.pieces.size() == 20);
  CHECK(verify_partition(q5.paths).ok);
  CHECK(verify_fundamental(q5.base, q5.group).ok);

  // walk-tracing oracle for path A's second edge
  WalkTrace a = trace_walk(q5.base_paths[0]);
  Edge second = make_edge(a.vertices[1], a.vertices[2]);
  CHECK(second == make_edge(parse_vertex("01000"), parse_vertex("01001")));

  // every piece is one of the five path shapes translated
  for (const auto& piece : q5.paths.pieces) {
    PieceClass c = classify_piece(piece);
    CHECK(c.kind == ShapeKind::Path);
    CHECK(c.edges == 4);
  }
}

TEST_CASE("lift of the path coloring") {
  for (int k = 1; k <= 3; ++k) {
    CAPTURE(k);
    Decomposition d = lift_p4(k);
    CHECK(d.pieces.size() == 20 * static_cast<std::size_t>(k));
    CHECK(d.host->edge_count() == 80 * static_cast<std::uint64_t>(k));
    CHECK(verify_partition(d).ok);
    // pieces come color-major: each color class holds k paths of 4 edges
    for (std::size_t color = 0; color < 20; ++color) {
      std::size_t total = 0;
      for (int i = 0; i < k; ++i)
        total += d.pieces[color * static_cast<std::size_t>(k) + static_cast<std::size_t>(i)].size();
      CHECK(total == static_cast<std::size_t>(4 * k));
    }
  }
  // k = 1 lives on a graph isomorphic to Q_5
  CHECK(hypercube_relabeling(*lift_p4(1).host, 5).has_value());
}

TEST_CASE("doubling the square cycle gives the known Q_4 pair") {
  DirectionCycle c{2, {1, 2, 1, 2}};
  auto [phi, gamma] = ringel_double(c);
  CHECK(phi.dirs == std::vector<int>{1, 2, 1, 3, 2, 1, 2, 4, 1, 2, 1, 3, 2, 1, 2, 4});
  CHECK(gamma.dirs == std::vector<int>{3, 4, 3, 1, 4, 3, 4, 2, 3, 4, 3, 1, 4, 3, 4, 2});
  CHECK(phi.is_hamiltonian());
  CHECK(gamma.is_hamiltonian());
  CHECK(phi.edge_set().size() + gamma.edge_set().size() == 32);

  // the half swap carries phi onto gamma
  EdgeSet swapped = translate_edge_set(half_swap_automorphism(2), phi.edge_set());
  CHECK(swapped == gamma.edge_set());

  DirectionCycle bad{2, {1, 2, 2, 1}};
  CHECK_THROWS(ringel_double(bad));
}

TEST_CASE("doubling covers the Cartesian square for both Q_4 cycles") {
  for (const auto& c : ringel_cycles(2)) {
    auto [phi, gamma] = ringel_double(c);  // self-checking
    CHECK(phi.edge_set().size() == 256);
    CHECK(gamma.edge_set().size() == 256);
    EdgeSet swapped = translate_edge_set(half_swap_automorphism(4), phi.edge_set());
    CHECK(swapped == gamma.edge_set());
  }
}

TEST_CASE("Hamiltonian decompositions of Q_2, Q_4, Q_8") {
  Decomposition d1 = ringel_hamiltonian_decomposition(1);
  CHECK(d1.pieces.size() == 1);
  CHECK(d1.pieces[0].size() == 4);

  Decomposition d2 = ringel_hamiltonian_decomposition(2);
  CHECK(d2.pieces.size() == 2);
  CHECK(d2.host->edge_count() == 32);

  Decomposition d3 = ringel_hamiltonian_decomposition(3);
  CHECK(d3.pieces.size() == 4);
  CHECK(d3.host->edge_count() == 1024);
  for (const auto& p : d3.pieces) CHECK(p.size() == 256);

  CHECK_THROWS(ringel_cycles(5));
}

TEST_CASE("fundamental Hamiltonian cycles") {
  auto f1 = fundamental_hamiltonian(1);
  CHECK(f1.group.order() == 1);
  CHECK(f1.cycle.dirs.size() == 4);

  auto f2 = fundamental_hamiltonian(2);
  CHECK(f2.group.order() == 2);
  CHECK(f2.cycle.dirs.size() == 16);
  CHECK(verify_fundamental(f2.cycle.edge_set(), f2.group).ok);

  auto f3 = fundamental_hamiltonian(3);
  CHECK(f3.group.order() == 4);
  CHECK(f3.cycle.dirs.size() == 256);
  CHECK(verify_fundamental(f3.cycle.edge_set(), f3.group).ok);
}

TEST_CASE("subcube decompositions") {
  Decomposition d24 = subcube_decomposition(2, 4);
  CHECK(d24.pieces.size() == 8);
  for (const auto& p : d24.pieces) CHECK(p.size() == 4);

  CHECK(subcube_decomposition(3, 3).pieces.size() == 1);
  CHECK(subcube_decomposition(1, 3).pieces.size() == 12);
  CHECK(subcube_decomposition(2, 6).pieces.size() == 48);
  CHECK_THROWS(subcube_decomposition(2, 5));
}

TEST_CASE("product combiner") {
  // single edges in both factors give the matching-style square split
  Decomposition d1;
  d1.host = Graph::hypercube(1);
  d1.shape = PieceShape::path(1);
  d1.pieces = {EdgeSet(d1.host, {0})};
  d1.provenance = "edge";
  Decomposition prod = product_combine(d1, d1);
  CHECK(prod.pieces.size() == 4);
  CHECK(prod.host->edge_count() == 4);

  Decomposition q24 = subcube_decomposition(2, 4);
  Decomposition q22 = subcube_decomposition(2, 2);
  Decomposition big = product_combine(q24, q22);
  CHECK(big.pieces.size() == 16 * 1 + 4 * 8);
  CHECK(big.host->edge_count() == 192);
  Decomposition flat = flatten_to_hypercube(big);
  CHECK(flat.host->is_hypercube());
  CHECK(flat.host->dim() == 6);
  CHECK(verify_partition(flat).ok);

  Decomposition broken = q24;
  broken.pieces.pop_back();
  CHECK_THROWS(product_combine(broken, q22));
}

TEST_CASE("cutting cycles into paths") {
  DoubleRun run = double_run_cycle(4);  // 8-cycles
  auto arcs = cycle_into_paths(run.orbit.base, 4);
  CHECK(arcs.size() == 2);
  for (const auto& a : arcs) {
    PieceClass c = classify_piece(a);
    CHECK(c.kind == ShapeKind::Path);
    CHECK(c.edges == 4);
  }
  auto f2 = fundamental_hamiltonian(2);
  CHECK(cycle_into_paths(f2.cycle.edge_set(), 4).size() == 4);
  CHECK_THROWS(cycle_into_paths(run.orbit.base, 3));
  CHECK_THROWS(cycle_into_paths(run.orbit.base, 8));

  // double-run pieces cut to P_6 in Q_6 (k = 3 divides n = 6)
  DoubleRun six = double_run_cycle(6);
  auto p6 = cycle_into_paths(six.orbit.base, 6);
  CHECK(p6.size() == 2);
}

TEST_CASE("P4 piece counts across dimensions") {
  for (int n = 4; n <= 12; ++n) {
    CAPTURE(n);
    Decomposition d = p4_decomposition(n);
    CHECK(d.host->dim() == n);
    CHECK(d.pieces.size() == (std::uint64_t(n) << (n - 1)) / 4);
    CHECK(verify_partition(d).ok);
  }
  CHECK_THROWS(p4_decomposition(3));
  CHECK_THROWS(p4_decomposition(17));
}

TEST_CASE("the Q_7 pipeline exposes its structure") {
  P4Q7Pipeline pipe = p4_q7_pipeline();
  CHECK(pipe.spare_cycles.size() == 8);
  for (const auto& c : pipe.spare_cycles) {
    PieceClass cls = classify_piece(c);
    CHECK(cls.kind == ShapeKind::Cycle);
    CHECK(cls.edges == 16);
  }
  CHECK(pipe.lift.pieces.size() == 80);
  CHECK(pipe.decomp.pieces.size() == 112);
  CHECK(pipe.decomp.host->edge_count() == 448);
}

TEST_CASE("power-of-two path decompositions") {
  auto d24 = pow2_path_decomposition(2, 4);
  REQUIRE(d24.has_value());
  CHECK(d24->pieces.size() == 8);

  auto d38 = pow2_path_decomposition(3, 8);
  REQUIRE(d38.has_value());
  CHECK(d38->pieces.size() == 128);

  auto d14 = pow2_path_decomposition(1, 4);
  REQUIRE(d14.has_value());
  CHECK(d14->pieces.size() == 16);

  CHECK(!pow2_path_decomposition(2, 6).has_value());   // needs the fallback
  CHECK(!pow2_path_decomposition(3, 10).has_value());  // no constructive route
  CHECK_THROWS(pow2_path_decomposition(4, 4));
  CHECK_THROWS(pow2_path_decomposition(1, 5));
}

TEST_CASE("power-of-two cycle decompositions") {
  Decomposition d = pow2_cycle_decomposition(2, 4);
  CHECK(d.pieces.size() == 8);
  CHECK(d.shape == PieceShape::cycle(4));

  Decomposition same = pow2_cycle_decomposition(4, 4);
  CHECK(same.pieces.size() == 2);
  CHECK(same.shape == PieceShape::cycle(16));

  Decomposition tiny = pow2_cycle_decomposition(2, 2);
  CHECK(tiny.pieces.size() == 1);

  CHECK_THROWS(pow2_cycle_decomposition(3, 8));
  CHECK_THROWS(pow2_cycle_decomposition(8, 4));
}

TEST_CASE("fixtures all verify") {
  auto fixtures = builtin_fundamental_sets();
  REQUIRE(fixtures.size() == 4);
  for (const auto& fx : fixtures) {
    CAPTURE(fx.name);
    CHECK(verify_fundamental(fx.base, fx.group).ok);
  }
  // the 3-translate tree orbit covers Q_3
  const Fixture& ex4 = fixtures[2];
  CHECK(ex4.group.order() == 3);
  CHECK(ex4.base.size() * ex4.group.order() == 12);
  // the Q_5 base yields 4 pieces
  CHECK(fixtures[3].group.order() == 4);
}

TEST_CASE("translating a fundamental base permutes its orbit") {
  for (const auto& fx : builtin_fundamental_sets()) {
    auto pieces = orbit_translates(fx.group, fx.base);
    std::set<std::vector<EdgeId>> orbit_set;
    for (const auto& p : pieces) orbit_set.insert(p.ids());
    for (const auto& g : fx.group.elements()) {
      EdgeSet moved = translate_edge_set(g, fx.base);
      auto moved_pieces = orbit_translates(fx.group, moved);
      std::set<std::vector<EdgeId>> moved_set;
      for (const auto& p : moved_pieces) moved_set.insert(p.ids());
      CHECK(moved_set == orbit_set);
    }
  }
}
