#include "qdecomp/obstructions.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <sstream>

namespace qdecomp {

Verdict Verdict::possible(Decomposition d) {
  Verdict v;
  v.kind = Kind::Possible;
  v.witness = std::make_shared<const Decomposition>(std::move(d));
  return v;
}

Verdict Verdict::impossible(std::string rule, std::string detail) {
  Verdict v;
  v.kind = Kind::Impossible;
  v.rule = std::move(rule);
  v.detail = std::move(detail);
  return v;
}

Verdict Verdict::unknown(std::string detail) {
  Verdict v;
  v.kind = Kind::Unknown;
  v.detail = std::move(detail);
  return v;
}

std::string Verdict::describe() const {
  switch (kind) {
    case Kind::Possible:
      return "POSSIBLE: " + std::to_string(witness->pieces.size()) + " pieces via " +
             witness->provenance;
    case Kind::Impossible:
      return "IMPOSSIBLE [" + rule + "]: " + detail;
    case Kind::Unknown:
      return detail.empty() ? "UNKNOWN" : "UNKNOWN: " + detail;
  }
  return "?";
}

namespace {

std::uint64_t cube_edges(int n) { return std::uint64_t(n) << (n - 1); }

bool is_pow2(std::uint64_t x) { return x >= 1 && (x & (x - 1)) == 0; }

}  // namespace

Verdict check_edge_count(std::uint64_t piece_edges, int n) {
  if (piece_edges < 1 || n < 1) throw std::invalid_argument("bad arguments");
  std::uint64_t total = cube_edges(n);
  if (total % piece_edges != 0)
    return Verdict::impossible(
        "edge-count", std::to_string(piece_edges) + " does not divide |E(Q_" +
                          std::to_string(n) + ")| = " + std::to_string(total));
  return Verdict::unknown(std::to_string(piece_edges) + " divides " + std::to_string(total));
}

Verdict check_odd_path(int k, int n) {
  if (k % 2 == 0) return Verdict::unknown("rule applies to odd path lengths only");
  if (n % k != 0)
    return Verdict::impossible("odd-path", "k = " + std::to_string(k) +
                                               " is odd and does not divide n = " +
                                               std::to_string(n));
  return Verdict::unknown();
}

Verdict check_path_odd_dim(int k, int n) {
  if (n % 2 == 1 && k > n)
    return Verdict::impossible("path-odd-dim", "n = " + std::to_string(n) +
                                                   " is odd and k = " + std::to_string(k) +
                                                   " exceeds it");
  return Verdict::unknown();
}

Verdict check_regular_divisor(int h_degree, int n) {
  if (h_degree < 1) throw std::invalid_argument("piece degree must be positive");
  if (n % h_degree != 0)
    return Verdict::impossible("regular-divisor",
                               "piece degree " + std::to_string(h_degree) +
                                   " does not divide host degree " + std::to_string(n));
  return Verdict::unknown();
}

Verdict check_p2k_counting(int k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  // (2k+1)*2^k rows carry two 1s each; 2^(2k+1) columns need one nonzero each.
  std::uint64_t ones = std::uint64_t(2 * k + 1) << (k + 1);
  std::uint64_t columns = std::uint64_t{1} << (2 * k + 1);
  if (ones < columns)
    return Verdict::impossible(
        "path-counting", "(2k+1)*2^(k+1) = " + std::to_string(ones) + " < " +
                             std::to_string(columns) + " = 2^(2k+1), so some vertex of Q_" +
                             std::to_string(2 * k + 1) + " misses every P_" +
                             std::to_string(1 << k));
  return Verdict::unknown("(2k+1)*2^(k+1) = " + std::to_string(ones) +
                          " >= " + std::to_string(columns));
}

namespace {

// Exact feasibility of the degree array: `rows` rows still to place, each a
// permutation of {2 x (k-1), 1 x 2, 0 x rest}; the state counts columns by
// their residual sum. Columns with equal residuals are interchangeable.
class DegreeArrayFeasibility {
 public:
  DegreeArrayFeasibility(int k, int n, int rows)
      : k_(k), n_(n), columns_(1 << n), rows_(rows) {}

  bool feasible() {
    std::vector<int> counts(static_cast<std::size_t>(n_) + 1, 0);
    counts[static_cast<std::size_t>(n_)] = columns_;
    return place(rows_, counts);
  }

 private:
  using Counts = std::vector<int>;

  std::uint64_t key(const Counts& c) const {
    std::uint64_t k = 0;
    for (int x : c) k = k * (static_cast<std::uint64_t>(columns_) + 1) + static_cast<std::uint64_t>(x);
    return k;
  }

  bool place(int rows_left, const Counts& counts) {
    std::uint64_t residual = 0;
    int positive = 0;
    int max_res = 0;
    for (int r = 0; r <= n_; ++r) {
      residual += std::uint64_t(r) * counts[static_cast<std::size_t>(r)];
      if (r > 0 && counts[static_cast<std::size_t>(r)] > 0) {
        positive += counts[static_cast<std::size_t>(r)];
        max_res = r;
      }
    }
    if (rows_left == 0) return residual == 0;
    // Row sums are fixed, entries are at most 2, and a row touches at most
    // k+1 columns; all three are hard counting bounds.
    if (residual != std::uint64_t(rows_left) * 2 * k_) return false;
    if (max_res > 2 * rows_left) return false;
    if (positive > rows_left * (k_ + 1)) return false;

    auto memo_key = std::make_pair(rows_left, key(counts));
    auto it = memo_.find(memo_key);
    if (it != memo_.end()) return it->second;

    bool ok = distribute(rows_left, counts, Counts(static_cast<std::size_t>(n_) + 1, 0), n_,
                         k_ - 1, 2);
    memo_.emplace(memo_key, ok);
    return ok;
  }

  // Chooses how many 2s and 1s of the current row land in each residual
  // class. The new class counts accumulate separately so a column can take
  // at most one entry per row.
  bool distribute(int rows_left, const Counts& counts, Counts acc, int klass, int twos,
                  int ones) {
    if (klass == 0) {
      if (twos != 0 || ones != 0) return false;
      acc[0] += counts[0];  // untouched exhausted columns
      return place(rows_left - 1, acc);
    }
    int avail = counts[static_cast<std::size_t>(klass)];
    int max_twos = klass >= 2 ? std::min(twos, avail) : 0;
    for (int a = 0; a <= max_twos; ++a) {
      for (int b = 0; b <= std::min(ones, avail - a); ++b) {
        Counts next = acc;
        if (a > 0) next[static_cast<std::size_t>(klass - 2)] += a;
        next[static_cast<std::size_t>(klass - 1)] += b;
        next[static_cast<std::size_t>(klass)] += avail - a - b;
        if (distribute(rows_left, counts, std::move(next), klass - 1, twos - a, ones - b))
          return true;
      }
    }
    return false;
  }

  int k_;
  int n_;
  int columns_;
  int rows_;
  std::map<std::pair<int, std::uint64_t>, bool> memo_;
};

}  // namespace

Verdict check_degree_sequence(const PieceShape& piece, int n) {
  if (piece.kind != ShapeKind::Path)
    return Verdict::unknown("degree-array rule applies to path pieces");
  const int k = piece.size;
  std::uint64_t total = cube_edges(n);
  if (total % static_cast<std::uint64_t>(k) != 0)
    return Verdict::unknown("copy count is not integral");
  std::uint64_t copies = total / static_cast<std::uint64_t>(k);
  if (copies > 4 || (std::uint64_t{1} << n) > 32)
    return Verdict::unknown("outside the small degree-array regime");

  DegreeArrayFeasibility f(k, n, static_cast<int>(copies));
  if (!f.feasible())
    return Verdict::impossible(
        "degree-sequence",
        "no " + std::to_string(copies) + " x " + std::to_string(1 << n) +
            " array of P_" + std::to_string(k) +
            " degree rows has all column sums " + std::to_string(n));
  return Verdict::unknown("degree array is feasible");
}

namespace {

// Scale guard for witness construction inside the dispatcher.
bool witness_in_reach(int n) { return n <= 16; }

std::optional<Decomposition> path_witness(int k, int n) {
  if (!witness_in_reach(n)) return std::nullopt;
  std::uint64_t total = cube_edges(n);
  if (total % static_cast<std::uint64_t>(k) != 0) return std::nullopt;
  if (n % k == 0) {
    // Any tree on k edges is fundamental in Q_k; push P_k through subcubes.
    OrbitDecomposition tree = tree_fundamental_decomposition(LabeledTree::path(k));
    Decomposition inner = tree.decomp;
    inner.shape = PieceShape::path(k);
    VerifyReport r = verify_partition(inner);
    if (!r.ok) throw std::logic_error("path orbit failed shape check: " + r.summary());
    if (k == n) return inner;
    return refine_subcubes(subcube_decomposition(k, n), inner);
  }
  if (k == 4 && n >= 4) return p4_decomposition(n);
  if (k % 2 == 0 && n % 2 == 0 && n % (k / 2) == 0 && k / 2 < n) {
    // Cut the double-run 2n-cycle translates into 2k'-edge arcs.
    DoubleRun run = double_run_cycle(n);
    Decomposition d;
    d.host = run.orbit.decomp.host;
    d.shape = PieceShape::path(k);
    d.provenance = "double-run-cut(P" + std::to_string(k) + ")";
    for (const auto& cyc : run.orbit.decomp.pieces)
      for (auto& piece : cycle_into_paths(cyc, k)) d.pieces.push_back(std::move(piece));
    VerifyReport r = verify_partition(d);
    if (!r.ok) throw std::logic_error("double-run cut failed: " + r.summary());
    return d;
  }
  if (is_pow2(static_cast<std::uint64_t>(k)) && n % 2 == 0 && is_pow2(static_cast<std::uint64_t>(n)) && k < (1 << n)) {
    int j = std::countr_zero(static_cast<unsigned>(k));
    if (j < n)
      if (auto d = pow2_path_decomposition(j, n)) return d;
  }
  return std::nullopt;
}

std::optional<Decomposition> cycle_witness(int len, int n) {
  if (!witness_in_reach(n)) return std::nullopt;
  if (n % 2 != 0) return std::nullopt;
  if (len == 2 * n) return double_run_cycle(n).orbit.decomp;
  if (len % 2 == 0) {
    int kp = len / 2;
    if (kp >= 2 && kp % 2 == 0 && kp < n && n % kp == 0) {
      Decomposition inner = double_run_cycle(kp).orbit.decomp;
      return refine_subcubes(subcube_decomposition(kp, n), inner);
    }
  }
  if (is_pow2(static_cast<std::uint64_t>(len)) && is_pow2(static_cast<std::uint64_t>(n))) {
    int m = std::countr_zero(static_cast<unsigned>(len));
    if (m >= 2 && is_pow2(static_cast<std::uint64_t>(m)) && m <= n)
      return pow2_cycle_decomposition(m, n);
  }
  return std::nullopt;
}

}  // namespace

Verdict check_all(const PieceShape& piece, int n) {
  if (n < 1 || n > kMaxGraphDim) throw std::invalid_argument("dimension out of range");
  switch (piece.kind) {
    case ShapeKind::Path: {
      const int k = piece.size;
      if (auto v = check_edge_count(static_cast<std::uint64_t>(k), n); v.is_impossible()) return v;
      if (auto v = check_odd_path(k, n); v.is_impossible()) return v;
      if (is_pow2(static_cast<std::uint64_t>(k))) {
        int kexp = std::countr_zero(static_cast<unsigned>(k));
        if (n == 2 * kexp + 1)
          if (auto v = check_p2k_counting(kexp); v.is_impossible()) return v;
      }
      if (auto v = check_degree_sequence(piece, n); v.is_impossible()) return v;
      if (auto v = check_path_odd_dim(k, n); v.is_impossible()) return v;
      if (auto d = path_witness(k, n)) return Verdict::possible(std::move(*d));
      return Verdict::unknown("no rule fired and no registered construction applies");
    }
    case ShapeKind::Cycle: {
      const int len = piece.size;
      if (auto v = check_edge_count(static_cast<std::uint64_t>(len), n); v.is_impossible())
        return v;
      if (auto v = check_regular_divisor(2, n); v.is_impossible()) return v;
      if (auto d = cycle_witness(len, n)) return Verdict::possible(std::move(*d));
      return Verdict::unknown("no rule fired and no registered construction applies");
    }
    case ShapeKind::Subcube: {
      const int k = piece.size;
      if (auto v = check_edge_count(piece.edge_count(), n); v.is_impossible()) return v;
      if (auto v = check_regular_divisor(k, n); v.is_impossible()) return v;
      if (witness_in_reach(n) && n % k == 0)
        return Verdict::possible(subcube_decomposition(k, n));
      return Verdict::unknown("no rule fired and no registered construction applies");
    }
    case ShapeKind::Tree: {
      if (piece.size < 1) return Verdict::unknown("tree shape without a known size");
      const int k = piece.size;
      if (auto v = check_edge_count(static_cast<std::uint64_t>(k), n); v.is_impossible()) return v;
      if (!piece.tree_code.empty() && n % k == 0 && witness_in_reach(n)) {
        OrbitDecomposition tree =
            tree_fundamental_decomposition(LabeledTree::from_code(piece.tree_code));
        Decomposition d = tree.decomp;
        if (k < n) d = refine_subcubes(subcube_decomposition(k, n), d);
        return Verdict::possible(std::move(d));
      }
      return Verdict::unknown("no rule fired and no registered construction applies");
    }
    case ShapeKind::Any:
      return Verdict::unknown("no concrete piece shape given");
  }
  return Verdict::unknown();
}

}  // namespace qdecomp
