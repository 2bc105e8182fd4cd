#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "qdecomp/automorphism.hpp"

using namespace qdecomp;

namespace {

Automorphism random_automorphism(std::mt19937& rng, int n) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i + 1;
  std::shuffle(perm.begin(), perm.end(), rng);
  return Automorphism::normal_form(n, static_cast<Mask>(rng()) & full_mask(n), perm);
}

}  // namespace

TEST_CASE("normal form composition matches the worked cyclic group") {
  auto g = Automorphism::parse_text("s{1}.r(1 2 3)", 3);
  auto g2 = compose(g, g);
  CHECK(g2 == Automorphism::parse_text("s{1,2}.r(1 3 2)", 3));
  CHECK(compose(Automorphism::identity(3), g) == g);
  CHECK(compose(g, Automorphism::identity(3)) == g);
}

TEST_CASE("composition verified pointwise on Q_3") {
  auto f = Automorphism::parse_text("s{3}.r(1 3 2)", 3);
  auto g = Automorphism::parse_text("s{1}.r(1 2 3)", 3);
  // oracle: apply g then f to every vertex
  bool pointwise_identity = true;
  for (Mask x = 0; x < 8; ++x)
    if (f.apply(g.apply(x)) != x) pointwise_identity = false;
  CHECK(pointwise_identity);
  CHECK(compose(f, g).is_identity());
}

TEST_CASE("vertex and edge application") {
  CHECK(Automorphism::parse_text("s{1,2,3}", 3).apply(parse_vertex("000")) ==
        parse_vertex("111"));
  CHECK(Automorphism::parse_text("r(1 2 3)", 3).apply(parse_vertex("100")) ==
        parse_vertex("010"));
  // sigma_{2,4} on a direction-2 edge, re-canonicalized
  auto s24 = Automorphism::parse_text("s{2,4}", 5);
  Edge e = make_edge(parse_vertex("00000"), parse_vertex("01000"));
  Edge image = s24.apply(e);
  // oracle: apply to both endpoints and rebuild
  Edge expect = make_edge(s24.apply(parse_vertex("00000")), s24.apply(parse_vertex("01000")));
  CHECK(image == expect);
  CHECK(image == make_edge(parse_vertex("00010"), parse_vertex("01010")));
  CHECK(image.dir == 2);
  CHECK_THROWS(s24.apply(parse_vertex("000")));
}

TEST_CASE("subgroup closure") {
  auto g = Subgroup::generate({Automorphism::parse_text("s{1}.r(1 2 3)", 3)});
  CHECK(g.order() == 6);
  std::vector<Automorphism> expected = {
      Automorphism::identity(3),
      Automorphism::parse_text("s{1,2,3}", 3),
      Automorphism::parse_text("s{1}.r(1 2 3)", 3),
      Automorphism::parse_text("s{1,2}.r(1 3 2)", 3),
      Automorphism::parse_text("s{3}.r(1 3 2)", 3),
      Automorphism::parse_text("s{2,3}.r(1 2 3)", 3),
  };
  for (const auto& e : expected) CHECK(g.contains(e));

  CHECK(Subgroup::generate({Automorphism::identity(4)}).order() == 1);

  auto translations = Subgroup::generate(
      {Automorphism::parse_text("s{2,4}", 5), Automorphism::parse_text("s{2,5}", 5)});
  CHECK(translations.order() == 4);
  CHECK(translations.contains(Automorphism::parse_text("s{4,5}", 5)));
  CHECK(translations.contains(Automorphism::identity(5)));

  CHECK_THROWS(Subgroup::generate({Automorphism::parse_text("r(1 2)", 8)}, 1));
}

TEST_CASE("even complement subgroups") {
  auto g = Subgroup::even_complements(4, 4);
  CHECK(g.order() == 4);
  CHECK(g.contains(Automorphism::identity(4)));
  CHECK(g.contains(Automorphism::parse_text("s{1,2}", 4)));
  CHECK(g.contains(Automorphism::parse_text("s{1,3}", 4)));
  CHECK(g.contains(Automorphism::parse_text("s{2,3}", 4)));

  auto q2 = Subgroup::even_complements(2);
  CHECK(q2.order() == 2);
  CHECK(q2.contains(Automorphism::parse_text("s{1,2}", 2)));

  // oracle: count the even subsets of a 5-set directly
  int even = 0;
  for (Mask a = 0; a < 32; ++a)
    if (std::popcount(a) % 2 == 0) ++even;
  CHECK(Subgroup::even_complements(5).order() == static_cast<std::size_t>(even));
  CHECK(even == 16);
}

TEST_CASE("translates and orbits") {
  auto q3 = Graph::hypercube(3);
  EdgeSet star = EdgeSet::from_cube_edges(
      q3, {edge_from(parse_vertex("000"), 1), edge_from(parse_vertex("000"), 2)});
  auto g = Subgroup::generate({Automorphism::parse_text("s{1}.r(1 2 3)", 3)});
  auto orbit = orbit_translates(g, star);
  REQUIRE(orbit.size() == 6);
  std::set<EdgeId> all;
  for (const auto& t : orbit) {
    CHECK(t.size() == 2);
    for (EdgeId e : t.ids()) CHECK(all.insert(e).second);
  }
  CHECK(all.size() == 12);  // the six translates partition E(Q_3)
  CHECK(translate_edge_set(Automorphism::identity(3), star) == star);
  // parallel orbit kernel agrees with the serial reference
  CHECK(orbit_translates(g, star, true) == orbit_translates_serial(g, star));
}

TEST_CASE("product automorphisms") {
  auto id2 = Automorphism::identity(2);
  CHECK(product_automorphism(id2, id2) == Automorphism::identity(4));

  auto s1 = Automorphism::parse_text("s{1}", 2);
  auto s13 = product_automorphism(s1, s1);
  // oracle: act blockwise on all 16 vertices of Q_4
  for (Mask x = 0; x < 16; ++x) {
    Mask lo = x & 0b11, hi = (x >> 2) & 0b11;
    Mask expect = (s1.apply(lo)) | (s1.apply(hi) << 2);
    CHECK(s13.apply(x) == expect);
  }
  CHECK(s13 == Automorphism::parse_text("s{1,3}", 4));

  auto s12 = Automorphism::parse_text("s{1,2}", 4);
  CHECK(product_automorphism(s12, s12) == Automorphism::parse_text("s{1,2,5,6}", 8));
}

TEST_CASE("half swap") {
  CHECK(half_swap_automorphism(1) == Automorphism::parse_text("r(1 2)", 2));
  auto h2 = half_swap_automorphism(2);
  CHECK(h2.perm(1) == 3);
  CHECK(h2.perm(2) == 4);
  CHECK(h2.perm(3) == 1);
  CHECK(h2.perm(4) == 2);
  CHECK(h2.apply(parse_vertex("1100")) == parse_vertex("0011"));
}

TEST_CASE("composition is a homomorphism on vertices") {
  std::mt19937 rng(7771);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + static_cast<int>(rng() % 5);
    auto f = random_automorphism(rng, n);
    auto g = random_automorphism(rng, n);
    auto fg = compose(f, g);
    for (Mask x = 0; x < (Mask{1} << n); ++x) CHECK(fg.apply(x) == f.apply(g.apply(x)));
  }
}

TEST_CASE("automorphisms preserve adjacency") {
  std::mt19937 rng(5150);
  for (int n = 2; n <= 6; ++n) {
    auto host = Graph::hypercube(n);
    auto f = random_automorphism(rng, n);
    for (EdgeId e = 0; e < host->edge_count(); ++e) {
      Edge image = f.apply(host->cube_edge(e));
      CHECK(adjacent(image.low, image.high()));
      CHECK_NOTHROW(host->id_of(image));
    }
  }
}

TEST_CASE("swap identity") {
  std::mt19937 rng(31337);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + static_cast<int>(rng() % 7);
    auto rho = random_automorphism(rng, n);
    auto theta_only = Automorphism::normal_form(n, 0, rho.perm_one_line());
    Mask a = static_cast<Mask>(rng()) & full_mask(n);
    auto sigma = Automorphism::complementation(n, a);
    // rho_theta . sigma_A = sigma_{theta(A)} . rho_theta
    auto lhs = compose(theta_only, sigma);
    Mask theta_a = 0;
    for (int i = 1; i <= n; ++i)
      if (mask_has(a, i)) theta_a |= dir_bit(theta_only.perm(i));
    auto rhs = compose(Automorphism::complementation(n, theta_a), theta_only);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("inverses and group axioms") {
  std::mt19937 rng(2222);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 2 + static_cast<int>(rng() % 6);
    auto f = random_automorphism(rng, n);
    CHECK(compose(f, f.inverse()).is_identity());
    CHECK(compose(f.inverse(), f).is_identity());
  }
  // closure table check on a fixture group
  auto g = Subgroup::generate({Automorphism::parse_text("s{2,3}.r(1 2 3)", 3)});
  CHECK(g.order() == 3);
  for (const auto& a : g.elements()) {
    CHECK(g.contains(a.inverse()));
    for (const auto& b : g.elements()) CHECK(g.contains(compose(a, b)));
  }
  CHECK_NOTHROW(Subgroup::from_elements(3, g.elements()));
  // dropping the identity breaks the axioms
  std::vector<Automorphism> broken(g.elements().begin() + 1, g.elements().end());
  CHECK_THROWS(Subgroup::from_elements(3, broken));
}

TEST_CASE("the normal form is unique") {
  // distinct (comp, perm) pairs act differently on some vertex
  const int n = 3;
  std::vector<Automorphism> all;
  std::vector<int> one_line = {1, 2, 3};
  do {
    for (Mask a = 0; a < 8; ++a) all.push_back(Automorphism::normal_form(n, a, one_line));
  } while (std::next_permutation(one_line.begin(), one_line.end()));
  REQUIRE(all.size() == 48);
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      bool same_map = true;
      for (Mask x = 0; x < 8 && same_map; ++x)
        if (all[i].apply(x) != all[j].apply(x)) same_map = false;
      CHECK(!same_map);
    }
}

TEST_CASE("text form round trips") {
  std::mt19937 rng(909);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 1 + static_cast<int>(rng() % 8);
    auto f = random_automorphism(rng, n);
    CHECK(Automorphism::parse_text(f.to_text(), n) == f);
  }
  CHECK(Automorphism::parse_text("id", 5).is_identity());
  CHECK(Automorphism::parse_text("s{2,4}.r(1 3 2)", 5).comp() == (dir_bit(2) | dir_bit(4)));
  CHECK_THROWS(Automorphism::parse_text("s{9}", 3));
  CHECK_THROWS(Automorphism::parse_text("r(1 2)(2 3)", 3));
}
