#ifndef QDECOMP_CONSTRUCTIONS_HPP
#define QDECOMP_CONSTRUCTIONS_HPP

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qdecomp/verify.hpp"

namespace qdecomp {

/// A tree whose k edges carry distinct direction labels from {1..k}, with a
/// designated root. Vertex ids are arbitrary non-negative integers.
struct LabeledTree {
  struct LabeledEdge {
    int u = 0;
    int v = 0;
    int label = 0;
  };
  std::vector<LabeledEdge> edges;
  int root = 0;

  int edge_count() const { return static_cast<int>(edges.size()); }
  void validate() const;

  /// "1:2,1:3,3:4" plus an optional label list "1,2,3"; labels default to
  /// the edge order. The root is the first vertex mentioned.
  static LabeledTree parse(const std::string& edge_spec, const std::string& label_spec = "");
  static LabeledTree path(int k);
  static LabeledTree star(int k);
  /// From a parenthesis tree code, labelling edges in preorder.
  static LabeledTree from_code(const std::string& tree_code);
};

/// A direction sequence from the empty vertex whose walk closes into a
/// simple cycle.
struct DirectionCycle {
  int dim = 0;
  std::vector<int> dirs;

  Walk to_walk() const;
  void validate() const;
  bool is_hamiltonian() const;
  EdgeSet edge_set() const;
};

/// A fundamental set together with its subgroup and the verified orbit.
struct OrbitDecomposition {
  EdgeSet base;
  Subgroup group;
  Decomposition decomp;
};

/// Embeds a labeled tree into Q_n (k <= n): the root goes to the empty
/// vertex and the edge labelled i becomes a direction-i edge.
EdgeSet embed_labeled_tree(const LabeledTree& t, int n);

/// Embeds t into Q_k (k = edge count) and verifies that the embedding is a
/// fundamental set under the even-complement subgroup of order 2^(k-1).
OrbitDecomposition tree_fundamental_decomposition(const LabeledTree& t);

struct DoubleRun {
  DirectionCycle cycle;
  OrbitDecomposition orbit;
};

/// The 2n-cycle with direction sequence (1..n)(1..n), fundamental for Q_n
/// under the even complements of {1..n-1}. n must be even.
DoubleRun double_run_cycle(int n);

struct P4Q5 {
  EdgeSet base;                  // the 20-edge fundamental subgraph of Q_5
  Subgroup group;                // {id, s{2,4}, s{2,5}, s{4,5}}
  std::vector<Walk> base_paths;  // the five defining 4-edge walks
  Decomposition translates;      // 4 translates of the base
  Decomposition paths;           // 20 verified P4 pieces
};

/// The explicit P4 decomposition of Q_5: five 4-edge paths whose union is a
/// fundamental set of 20 edges.
P4Q5 p4_decomposition_q5();

/// Pulls the Q_5 path coloring back onto Q_3 x C_{4k} along the layer map
/// and splits every color class into its 4-edge path components.
Decomposition lift_p4(int k);

/// Doubles a Hamiltonian direction cycle of Q_n into two edge-disjoint
/// Hamiltonian cycles of Q_{2n} that together cover E(C x C).
std::pair<DirectionCycle, DirectionCycle> ringel_double(const DirectionCycle& c);

/// The 2^(k-1) Hamiltonian cycles of Q_{2^k} obtained by repeated doubling
/// from the 4-cycle (1,2,1,2).
std::vector<DirectionCycle> ringel_cycles(int k);
Decomposition ringel_hamiltonian_decomposition(int k);

struct FundamentalHamiltonian {
  DirectionCycle cycle;
  Subgroup group;  // order 2^(k-1)
};

/// A Hamiltonian cycle of Q_{2^k} that is a fundamental set, with its
/// subgroup built from paired automorphisms and the half swap.
FundamentalHamiltonian fundamental_hamiltonian(int k);

/// Q_n partitioned into copies of Q_k (k | n) along repeated product splits.
Decomposition subcube_decomposition(int k, int n);

/// H-decompositions of both factors combined into one of the product.
Decomposition product_combine(const Decomposition& d1, const Decomposition& d2);

/// Cuts a cycle edge set into m/q consecutive q-edge paths (q | m, q < m).
std::vector<EdgeSet> cycle_into_paths(const EdgeSet& cycle, int q);

/// Replaces every subcube piece of `outer` by the image of `inner`
/// (a decomposition of Q_k) under that subcube's coordinate embedding.
Decomposition refine_subcubes(const Decomposition& outer, const Decomposition& inner);

/// Rebuilds a decomposition of a product of hypercubes as a decomposition of
/// the hypercube of the summed dimension, via coordinate concatenation.
Decomposition flatten_to_hypercube(const Decomposition& d);

struct P4Q7Pipeline {
  std::vector<EdgeSet> spare_cycles;  // eight spare 16-cycles in Q_7
  Decomposition lift;                 // P4 pieces of Q_3 x C_16
  Decomposition decomp;               // the assembled 112-piece decomposition
};

/// Q_7 route: one Hamiltonian cycle of Q_4 spans a C_16 x Q_3 subproduct
/// that the lift decomposes; the spare cycles are cut directly.
P4Q7Pipeline p4_q7_pipeline();

/// P4 decomposition of Q_n for any n >= 4 (dispatching on parity).
Decomposition p4_decomposition(int n);

using HamiltonianFallback =
    std::function<std::optional<std::vector<DirectionCycle>>(int)>;

/// P_{2^j} decomposition of Q_n (n even, j < n) by cutting a Hamiltonian
/// decomposition. Constructive for n in {2,4,8,16}; for n = 6 a fallback
/// provider may supply the Hamiltonian decomposition. Returns nullopt when
/// no constructive route is available.
std::optional<Decomposition> pow2_path_decomposition(
    int j, int n, const HamiltonianFallback& fallback = nullptr);

/// Cycles of length 2^m partitioning Q_n, for m and n powers of two with
/// m <= n: the fundamental Hamiltonian decomposition of Q_m pushed through
/// the subcube decomposition of Q_n.
Decomposition pow2_cycle_decomposition(int m, int n);

struct Fixture {
  std::string name;
  EdgeSet base;
  Subgroup group;
};

/// The worked fundamental sets: the two 2-stars of Q_3 with their order-6
/// cyclic groups, the 4-edge tree of Q_3 with its order-3 group, and the
/// 20-edge base of Q_5.
std::vector<Fixture> builtin_fundamental_sets();

}  // namespace qdecomp

#endif  // QDECOMP_CONSTRUCTIONS_HPP
