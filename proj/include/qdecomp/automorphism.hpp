#ifndef QDECOMP_AUTOMORPHISM_HPP
#define QDECOMP_AUTOMORPHISM_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qdecomp/graph.hpp"

namespace qdecomp {

/// A hypercube automorphism in the normal form "permute coordinates, then
/// complement": x -> theta(x) XOR A. Equality of the (comp, perm) pair is
/// equality of the map.
class Automorphism {
 public:
  Automorphism() = default;

  static Automorphism identity(int n);
  /// sigma_A: complement the coordinates in `comp`.
  static Automorphism complementation(int n, Mask comp);
  /// rho_theta from one-line notation: one_line[i-1] = theta(i).
  static Automorphism coordinate_permutation(const std::vector<int>& one_line);
  static Automorphism normal_form(int n, Mask comp, const std::vector<int>& one_line);

  int dim() const { return dim_; }
  Mask comp() const { return comp_; }
  /// theta(dir)
  int perm(int dir) const { return perm_[dir - 1] + 1; }
  std::vector<int> perm_one_line() const;
  bool is_identity() const;
  bool perm_is_identity() const;

  Mask apply(Mask m) const;
  Vertex apply(const Vertex& v) const;
  Edge apply(const Edge& e) const;

  Automorphism inverse() const;

  friend bool operator==(const Automorphism& a, const Automorphism& b) {
    if (a.dim_ != b.dim_ || a.comp_ != b.comp_) return false;
    for (int i = 0; i < a.dim_; ++i)
      if (a.perm_[i] != b.perm_[i]) return false;
    return true;
  }

  /// Deterministic group-element order: complement set compared as a sorted
  /// element list, then the permutation in one-line notation.
  static bool canonical_less(const Automorphism& a, const Automorphism& b);

  /// Text form "s{2,4}.r(1 3 2)": complement set, then permutation cycles.
  std::string to_text() const;
  static Automorphism parse_text(const std::string& text, int dim);

 private:
  int dim_ = 0;
  Mask comp_ = 0;
  std::array<std::uint8_t, kMaxDim> perm_{};  // perm_[i] = theta(i+1) - 1
};

/// f after g (g is applied first), reduced to normal form.
Automorphism compose(const Automorphism& f, const Automorphism& g);

/// The automorphism of Q_{2n} acting as f1 on coordinates 1..n and f2 on
/// n+1..2n.
Automorphism product_automorphism(const Automorphism& f1, const Automorphism& f2);

/// rho_theta on Q_{2n} with theta(i) = i + n (mod 2n): swaps the two halves.
Automorphism half_swap_automorphism(int n);

/// A finite subgroup of Aut(Q_n), stored in canonical element order.
class Subgroup {
 public:
  static Subgroup trivial(int n);
  /// Breadth-first closure of the generators under composition.
  static Subgroup generate(const std::vector<Automorphism>& generators,
                           std::size_t bound = std::size_t{1} << 20);
  /// All sigma_A with |A| even, A drawn from {1..n} minus the excluded
  /// coordinate if given. Order 2^(n-1), or 2^(n-2) with an exclusion.
  static Subgroup even_complements(int n, std::optional<int> exclude = std::nullopt);
  /// Wraps an explicit element list, checking the group axioms.
  static Subgroup from_elements(int n, std::vector<Automorphism> elements);

  int dim() const { return dim_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Automorphism>& elements() const { return elements_; }
  bool contains(const Automorphism& a) const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.dim_ == b.dim_ && a.elements_ == b.elements_;
  }

 private:
  int dim_ = 0;
  std::vector<Automorphism> elements_;
};

/// Image of an edge set under an automorphism (hypercube hosts only).
EdgeSet translate_edge_set(const Automorphism& f, const EdgeSet& s);

/// Translates of s by every group element, in group-element order.
std::vector<EdgeSet> orbit_translates(const Subgroup& g, const EdgeSet& s,
                                      bool parallel = false);
std::vector<EdgeSet> orbit_translates_serial(const Subgroup& g, const EdgeSet& s);

}  // namespace qdecomp

#endif  // QDECOMP_AUTOMORPHISM_HPP
