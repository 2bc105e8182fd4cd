#ifndef QDECOMP_OBSTRUCTIONS_HPP
#define QDECOMP_OBSTRUCTIONS_HPP

#include <cstdint>
#include <memory>
#include <string>

#include "qdecomp/constructions.hpp"
#include "qdecomp/verify.hpp"

namespace qdecomp {

/// Outcome of asking whether a piece shape can decompose Q_n. Impossible
/// verdicts carry the rule that fired; Possible verdicts carry a verified
/// witness.
struct Verdict {
  enum class Kind { Possible, Impossible, Unknown };
  Kind kind = Kind::Unknown;
  std::shared_ptr<const Decomposition> witness;
  std::string rule;
  std::string detail;

  static Verdict possible(Decomposition d);
  static Verdict impossible(std::string rule, std::string detail);
  static Verdict unknown(std::string detail = "");

  bool is_possible() const { return kind == Kind::Possible; }
  bool is_impossible() const { return kind == Kind::Impossible; }
  bool is_unknown() const { return kind == Kind::Unknown; }
  std::string describe() const;
};

/// Impossible unless the piece size divides n * 2^(n-1).
Verdict check_edge_count(std::uint64_t piece_edges, int n);

/// For odd k: P_k dividing Q_n forces k | n. Unknown for even k.
Verdict check_odd_path(int k, int n);

/// For odd n: P_k dividing Q_n forces k <= n.
Verdict check_path_odd_dim(int k, int n);

/// A k-regular piece dividing an n-regular graph forces k | n.
Verdict check_regular_divisor(int h_degree, int n);

/// P_{2^k} cannot divide Q_{2k+1} once (2k+1) * 2^(k+1) < 2^(2k+1): the path
/// rows supply too few positive entries to give every column one.
Verdict check_p2k_counting(int k);

/// Exact feasibility of the c x 2^n degree array whose rows are permutations
/// of the path degree sequence and whose columns sum to n. Applies to path
/// pieces with at most 4 copies and at most 32 columns.
Verdict check_degree_sequence(const PieceShape& piece, int n);

/// Runs every applicable rule in a fixed order; the first Impossible wins.
/// If a registered construction covers the instance, returns Possible with
/// the built (and verified) witness.
Verdict check_all(const PieceShape& piece, int n);

}  // namespace qdecomp

#endif  // QDECOMP_OBSTRUCTIONS_HPP
