#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>

#include "doctest.h"
#include "qdecomp/obstructions.hpp"

using namespace qdecomp;

namespace {

// Brute-force oracle for the degree-array feasibility question: place the
// rows explicitly over the columns, one arrangement at a time.
bool brute_degree_array(int k, int n, int copies) {
  const int cols = 1 << n;
  if (k - 1 + 2 > cols) return false;  // a row does not even fit
  std::vector<int> row;
  for (int i = 0; i < k - 1; ++i) row.push_back(2);
  row.push_back(1);
  row.push_back(1);
  while (static_cast<int>(row.size()) < cols) row.push_back(0);
  std::sort(row.begin(), row.end());

  std::vector<int> sums(static_cast<std::size_t>(cols), 0);
  std::function<bool(int)> place = [&](int r) {
    if (r == copies) {
      for (int s : sums)
        if (s != n) return false;
      return true;
    }
    std::vector<int> arrangement = row;
    do {
      bool fits = true;
      for (int c = 0; c < cols; ++c)
        if (sums[static_cast<std::size_t>(c)] + arrangement[static_cast<std::size_t>(c)] > n) {
          fits = false;
          break;
        }
      if (fits) {
        for (int c = 0; c < cols; ++c) sums[static_cast<std::size_t>(c)] += arrangement[static_cast<std::size_t>(c)];
        if (place(r + 1)) return true;
        for (int c = 0; c < cols; ++c) sums[static_cast<std::size_t>(c)] -= arrangement[static_cast<std::size_t>(c)];
      }
    } while (std::next_permutation(arrangement.begin(), arrangement.end()));
    return false;
  };
  return place(0);
}

}  // namespace

TEST_CASE("edge count rule") {
  CHECK(check_edge_count(5, 3).is_impossible());
  CHECK(check_edge_count(4, 5).is_unknown());
  CHECK(check_edge_count(7, 7).is_unknown());  // 7 | 448
  CHECK(check_edge_count(3, 3).is_unknown());
  CHECK_THROWS(check_edge_count(0, 3));
}

TEST_CASE("odd path rule") {
  CHECK(check_odd_path(3, 4).is_impossible());
  CHECK(check_odd_path(3, 6).is_unknown());
  CHECK(check_odd_path(5, 7).is_impossible());
  CHECK(check_odd_path(4, 7).is_unknown());  // rule not applicable to even k
}

TEST_CASE("odd dimension path bound") {
  CHECK(check_path_odd_dim(8, 7).is_impossible());
  CHECK(check_path_odd_dim(4, 7).is_unknown());
  CHECK(check_path_odd_dim(6, 5).is_impossible());
  CHECK(check_path_odd_dim(100, 6).is_unknown());  // even n says nothing
}

TEST_CASE("regular divisor rule") {
  CHECK(check_regular_divisor(2, 5).is_impossible());
  CHECK(check_regular_divisor(3, 9).is_unknown());
  CHECK(check_regular_divisor(2, 3).is_impossible());
}

TEST_CASE("path counting rule") {
  Verdict k3 = check_p2k_counting(3);
  CHECK(k3.is_impossible());
  CHECK(k3.detail.find("112") != std::string::npos);
  CHECK(k3.detail.find("128") != std::string::npos);
  CHECK(check_p2k_counting(2).is_unknown());
  CHECK(check_p2k_counting(4).is_impossible());
  // closed form: impossible exactly when 2k+1 < 2^k
  for (int k = 1; k <= 20; ++k) {
    bool expect_impossible = (2 * k + 1) < (1 << k);
    CHECK(check_p2k_counting(k).is_impossible() == expect_impossible);
  }
}

TEST_CASE("degree array rule") {
  CHECK(check_degree_sequence(PieceShape::path(6), 3).is_impossible());
  CHECK(check_degree_sequence(PieceShape::path(4), 3).is_impossible());
  CHECK(check_degree_sequence(PieceShape::path(3), 3).is_unknown());
  // regimes where the rule abstains
  CHECK(check_degree_sequence(PieceShape::path(4), 6).is_unknown());   // 48 copies
  CHECK(check_degree_sequence(PieceShape::cycle(4), 3).is_unknown());  // not a path
  // a feasible two-copy case: P_2 in Q_1 is immediate
  CHECK(check_degree_sequence(PieceShape::path(1), 1).is_unknown());
}

TEST_CASE("degree array rule agrees with brute-force placement") {
  for (int n : {2, 3}) {
    const int total = n << (n - 1);
    for (int k = 1; k <= total; ++k) {
      if (total % k != 0) continue;
      int copies = total / k;
      if (copies > 4) continue;
      CAPTURE(n);
      CAPTURE(k);
      bool brute = brute_degree_array(k, n, copies);
      Verdict v = check_degree_sequence(PieceShape::path(k), n);
      CHECK(v.is_impossible() == !brute);
    }
  }
}

TEST_CASE("dispatcher verdicts") {
  Verdict p4q3 = check_all(PieceShape::path(4), 3);
  CHECK(p4q3.is_impossible());
  CHECK(p4q3.rule == "degree-sequence");

  Verdict p6q3 = check_all(PieceShape::path(6), 3);
  CHECK(p6q3.is_impossible());
  CHECK(p6q3.rule == "degree-sequence");

  Verdict p8q7 = check_all(PieceShape::path(8), 7);
  CHECK(p8q7.is_impossible());
  CHECK(p8q7.rule == "path-counting");

  Verdict p4q7 = check_all(PieceShape::path(4), 7);
  REQUIRE(p4q7.is_possible());
  CHECK(p4q7.witness->pieces.size() == 112);

  Verdict q2q7 = check_all(PieceShape::subcube(2), 7);
  CHECK(q2q7.is_impossible());
  CHECK(q2q7.rule == "regular-divisor");
}

TEST_CASE("dispatcher finds tree, cycle and subcube witnesses") {
  PieceShape tree;
  tree.kind = ShapeKind::Tree;
  tree.size = 3;
  tree.tree_code = "(()()())";  // the 3-star
  Verdict t = check_all(tree, 6);
  REQUIRE(t.is_possible());
  CHECK(verify_partition(*t.witness).ok);

  Verdict c8q4 = check_all(PieceShape::cycle(8), 4);
  REQUIRE(c8q4.is_possible());
  CHECK(c8q4.witness->pieces.size() == 4);

  Verdict c4q6 = check_all(PieceShape::cycle(4), 6);
  REQUIRE(c4q6.is_possible());
  CHECK(c4q6.witness->pieces.size() == 48);

  Verdict c16q4 = check_all(PieceShape::cycle(16), 4);
  REQUIRE(c16q4.is_possible());
  CHECK(c16q4.witness->pieces.size() == 2);

  Verdict q3q9 = check_all(PieceShape::subcube(3), 9);
  REQUIRE(q3q9.is_possible());
  CHECK(verify_partition(*q3q9.witness).ok);

  Verdict cmq3 = check_all(PieceShape::cycle(4), 3);
  CHECK(cmq3.is_impossible());
  CHECK(cmq3.rule == "regular-divisor");

  CHECK(check_all(PieceShape::cycle(6), 6).is_unknown());
  CHECK(check_all(PieceShape::any(), 5).is_unknown());
}

TEST_CASE("possible verdicts always carry verified witnesses") {
  std::vector<std::pair<PieceShape, int>> instances = {
      {PieceShape::path(2), 4},  {PieceShape::path(3), 3},  {PieceShape::path(4), 5},
      {PieceShape::path(4), 6},  {PieceShape::path(6), 6},  {PieceShape::path(8), 8},
      {PieceShape::cycle(8), 4}, {PieceShape::subcube(2), 6}};
  for (const auto& [piece, n] : instances) {
    CAPTURE(piece.label());
    CAPTURE(n);
    Verdict v = check_all(piece, n);
    REQUIRE(v.is_possible());
    CHECK(verify_partition(*v.witness).ok);
    CHECK(v.witness->shape == piece);
  }
}
