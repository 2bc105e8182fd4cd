#ifndef QDECOMP_VERIFY_HPP
#define QDECOMP_VERIFY_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qdecomp/automorphism.hpp"
#include "qdecomp/graph.hpp"

namespace qdecomp {

enum class ShapeKind { Path, Cycle, Tree, Subcube, Any };

/// The declared shape of every piece of a decomposition.
struct PieceShape {
  ShapeKind kind = ShapeKind::Any;
  int size = 0;           // edge count for Path/Cycle, dimension for Subcube
  std::string tree_code;  // canonical tree encoding; empty = any tree

  static PieceShape path(int k);
  static PieceShape cycle(int k);
  static PieceShape tree();
  static PieceShape tree_like(const EdgeSet& reference);
  static PieceShape subcube(int k);
  static PieceShape any();

  /// Number of edges a piece of this shape must have (0 = unconstrained).
  std::uint64_t edge_count() const;

  /// "P4", "C16", "Q2", "tree", "tree:<code>", "any"
  std::string label() const;
  static std::optional<PieceShape> parse(const std::string& text);

  friend bool operator==(const PieceShape&, const PieceShape&) = default;
};

/// Structural classification of an edge set.
struct PieceClass {
  ShapeKind kind = ShapeKind::Any;  // Path, Cycle, Tree or Any
  int edges = 0;
  std::string describe() const;
};

PieceClass classify_piece(const EdgeSet& s);
bool matches_shape(const EdgeSet& s, const PieceShape& shape);

struct Decomposition {
  std::shared_ptr<const Graph> host;
  PieceShape shape;
  std::vector<EdgeSet> pieces;
  std::string provenance;
};

enum class FailureReason { Overlap, MissingEdges, ForeignEdge, WrongShape, Cardinality };
const char* to_string(FailureReason r);

struct VerifyFailure {
  int piece = -1;  // -1 for host-level failures
  FailureReason reason = FailureReason::MissingEdges;
  std::string detail;
};

struct VerifyReport {
  bool ok = true;
  std::vector<VerifyFailure> failures;

  void add(int piece, FailureReason reason, std::string detail);
  std::string summary() const;
};

struct VerifyOptions {
  bool parallel = false;  // OpenMP piece checks; the report is identical either way
};

/// Checks that the pieces are pairwise disjoint, cover every host edge, and
/// match the declared shape. Never mutates its input; all failures are
/// collected rather than failing fast.
VerifyReport verify_partition(const Decomposition& d, VerifyOptions opts = {});
/// Plain-loop reference implementation of the same checks.
VerifyReport verify_partition_serial(const Decomposition& d);

/// Checks that `base` is a fundamental set for its host under g: pairwise
/// disjoint translates, |base|*|g| = |E|, and full coverage.
VerifyReport verify_fundamental(const EdgeSet& base, const Subgroup& g,
                                VerifyOptions opts = {});

/// Builds the orbit decomposition of a verified fundamental set; throws
/// std::logic_error with the report if verification fails.
Decomposition orbit_decomposition(const EdgeSet& base, const Subgroup& g,
                                  PieceShape shape, std::string provenance,
                                  VerifyOptions opts = {});

/// Canonical rooted-tree encoding (rooted at the centroid, children ordered
/// by their encodings). Throws if the edge set is not a tree.
std::string tree_canonical_code(const EdgeSet& s);
std::string tree_code_from_pairs(const std::vector<std::pair<VertexId, VertexId>>& edges);
/// Rebuilds a tree from its code as edges over vertices 0..k in preorder.
std::vector<std::pair<int, int>> parse_tree_code(const std::string& code);
bool tree_isomorphic(const EdgeSet& a, const EdgeSet& b);

}  // namespace qdecomp

#endif  // QDECOMP_VERIFY_HPP
