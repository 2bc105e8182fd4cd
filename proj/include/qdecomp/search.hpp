#ifndef QDECOMP_SEARCH_HPP
#define QDECOMP_SEARCH_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qdecomp/constructions.hpp"
#include "qdecomp/verify.hpp"

namespace qdecomp {

struct SearchConfig {
  std::uint64_t node_budget = 10'000'000;
  /// Memoize failed cover states up to even-complement translation
  /// (hypercube hosts). Sound either way; with the budget unlimited and
  /// pruning off the search is plainly complete.
  bool symmetry_pruning = true;
};

enum class SearchStatus { Possible, Impossible, Unknown };
const char* to_string(SearchStatus s);

struct SearchResult {
  SearchStatus status = SearchStatus::Unknown;
  std::optional<Decomposition> witness;  // Possible only
  std::uint64_t nodes = 0;
  std::uint64_t placements = 0;
};

/// Exhaustive exact cover by copies of the piece, always branching on the
/// lowest-indexed uncovered edge. Impossible means a proof of non-existence;
/// Unknown means the node budget ran out.
SearchResult find_decomposition(std::shared_ptr<const Graph> g, const PieceShape& piece,
                                const SearchConfig& cfg = {});

/// Hamiltonian decompositions of Q_n for even n <= 6. n = 2 and 4 are built
/// directly; n = 6 runs a backtracking search seeded with order-3 rotations.
std::optional<std::vector<DirectionCycle>> find_hamiltonian_decomposition(
    int n, const SearchConfig& cfg = {});

struct NegativeEntry {
  std::string name;
  SearchStatus status = SearchStatus::Unknown;
  std::uint64_t nodes = 0;
};

struct CertificationReport {
  bool ok = false;
  std::vector<NegativeEntry> entries;
  std::string summary() const;
};

/// Certifies the non-decomposable gallery: P_4 and P_6 in Q_3 by exhaustion,
/// the 4-star in Q_3 by placement absence.
CertificationReport certify_negative(const SearchConfig& cfg = {});

}  // namespace qdecomp

#endif  // QDECOMP_SEARCH_HPP
