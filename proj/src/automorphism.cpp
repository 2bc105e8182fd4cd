#include "qdecomp/automorphism.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qdecomp {

namespace {

// Lexicographic comparison of two coordinate sets written as ascending
// element lists ({1,3} -> [1,3]).
int compare_element_lists(Mask a, Mask b) {
  while (a != 0 || b != 0) {
    if (a == 0) return -1;
    if (b == 0) return 1;
    int ea = std::countr_zero(a);
    int eb = std::countr_zero(b);
    if (ea != eb) return ea < eb ? -1 : 1;
    a &= a - 1;
    b &= b - 1;
  }
  return 0;
}

}  // namespace

Automorphism Automorphism::identity(int n) {
  if (n < 1 || n > kMaxDim) throw std::invalid_argument("automorphism dimension out of range");
  Automorphism a;
  a.dim_ = n;
  for (int i = 0; i < n; ++i) a.perm_[i] = static_cast<std::uint8_t>(i);
  return a;
}

Automorphism Automorphism::complementation(int n, Mask comp) {
  Automorphism a = identity(n);
  if ((comp & ~full_mask(n)) != 0)
    throw std::invalid_argument("complement set uses coordinates above the dimension");
  a.comp_ = comp;
  return a;
}

Automorphism Automorphism::coordinate_permutation(const std::vector<int>& one_line) {
  return normal_form(static_cast<int>(one_line.size()), 0, one_line);
}

Automorphism Automorphism::normal_form(int n, Mask comp, const std::vector<int>& one_line) {
  Automorphism a = complementation(n, comp);
  if (static_cast<int>(one_line.size()) != n)
    throw std::invalid_argument("one-line permutation of wrong length");
  Mask seen = 0;
  for (int i = 0; i < n; ++i) {
    int image = one_line[i];
    if (image < 1 || image > n || mask_has(seen, image))
      throw std::invalid_argument("not a permutation of 1..n");
    seen |= dir_bit(image);
    a.perm_[i] = static_cast<std::uint8_t>(image - 1);
  }
  return a;
}

std::vector<int> Automorphism::perm_one_line() const {
  std::vector<int> out(dim_);
  for (int i = 0; i < dim_; ++i) out[i] = perm_[i] + 1;
  return out;
}

bool Automorphism::perm_is_identity() const {
  for (int i = 0; i < dim_; ++i)
    if (perm_[i] != i) return false;
  return true;
}

bool Automorphism::is_identity() const { return comp_ == 0 && perm_is_identity(); }

Mask Automorphism::apply(Mask m) const {
  Mask out = 0;
  Mask rest = m;
  while (rest) {
    int i = std::countr_zero(rest);
    out |= Mask{1} << perm_[i];
    rest &= rest - 1;
  }
  return out ^ comp_;
}

Vertex Automorphism::apply(const Vertex& v) const {
  if (v.dim != dim_) throw std::invalid_argument("dimension mismatch");
  return Vertex{apply(v.mask), dim_};
}

Edge Automorphism::apply(const Edge& e) const {
  if (e.low.dim != dim_) throw std::invalid_argument("dimension mismatch");
  int new_dir = perm(e.dir);
  Mask image = apply(e.low.mask);
  return Edge{Vertex{image & ~dir_bit(new_dir), dim_}, new_dir};
}

Automorphism Automorphism::inverse() const {
  Automorphism inv;
  inv.dim_ = dim_;
  for (int i = 0; i < dim_; ++i) inv.perm_[perm_[i]] = static_cast<std::uint8_t>(i);
  Mask c = 0;
  Mask rest = comp_;
  while (rest) {
    int i = std::countr_zero(rest);
    c |= Mask{1} << inv.perm_[i];
    rest &= rest - 1;
  }
  inv.comp_ = c;
  return inv;
}

bool Automorphism::canonical_less(const Automorphism& a, const Automorphism& b) {
  if (a.dim_ != b.dim_) return a.dim_ < b.dim_;
  int c = compare_element_lists(a.comp_, b.comp_);
  if (c != 0) return c < 0;
  for (int i = 0; i < a.dim_; ++i)
    if (a.perm_[i] != b.perm_[i]) return a.perm_[i] < b.perm_[i];
  return false;
}

Automorphism compose(const Automorphism& f, const Automorphism& g) {
  if (f.dim() != g.dim()) throw std::invalid_argument("dimension mismatch");
  const int n = f.dim();
  // (sigma_A rho_theta)(sigma_B rho_pi) = sigma_{A xor theta(B)} rho_{theta pi}
  Mask theta_b = 0;
  Mask rest = g.comp();
  while (rest) {
    int i = std::countr_zero(rest);
    theta_b |= dir_bit(f.perm(i + 1));
    rest &= rest - 1;
  }
  std::vector<int> one_line(n);
  for (int i = 1; i <= n; ++i) one_line[i - 1] = f.perm(g.perm(i));
  return Automorphism::normal_form(n, f.comp() ^ theta_b, one_line);
}

Automorphism product_automorphism(const Automorphism& f1, const Automorphism& f2) {
  if (f1.dim() != f2.dim()) throw std::invalid_argument("dimension mismatch");
  const int n = f1.dim();
  if (2 * n > kMaxDim) throw std::invalid_argument("product dimension out of range");
  std::vector<int> one_line(2 * n);
  for (int i = 1; i <= n; ++i) {
    one_line[i - 1] = f1.perm(i);
    one_line[n + i - 1] = f2.perm(i) + n;
  }
  Mask comp = f1.comp() | (f2.comp() << n);
  return Automorphism::normal_form(2 * n, comp, one_line);
}

Automorphism half_swap_automorphism(int n) {
  if (n < 1 || 2 * n > kMaxDim) throw std::invalid_argument("dimension out of range");
  std::vector<int> one_line(2 * n);
  for (int i = 1; i <= n; ++i) {
    one_line[i - 1] = i + n;
    one_line[n + i - 1] = i;
  }
  return Automorphism::normal_form(2 * n, 0, one_line);
}

std::string Automorphism::to_text() const {
  std::ostringstream out;
  out << "s{";
  bool first = true;
  for (int i = 1; i <= dim_; ++i) {
    if (!mask_has(comp_, i)) continue;
    if (!first) out << ",";
    out << i;
    first = false;
  }
  out << "}.r";
  if (perm_is_identity()) {
    out << "()";
    return out.str();
  }
  std::array<bool, kMaxDim> done{};
  for (int i = 1; i <= dim_; ++i) {
    if (done[i - 1] || perm(i) == i) continue;
    out << "(";
    int j = i;
    bool inner_first = true;
    do {
      if (!inner_first) out << " ";
      out << j;
      done[j - 1] = true;
      j = perm(j);
      inner_first = false;
    } while (j != i);
    out << ")";
  }
  return out.str();
}

Automorphism Automorphism::parse_text(const std::string& text, int dim) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)) || c == ' ') s.push_back(c);
  if (s == "id") return identity(dim);

  Mask comp = 0;
  std::vector<int> one_line(dim);
  for (int i = 0; i < dim; ++i) one_line[i] = i + 1;

  std::size_t pos = 0;
  auto parse_int = [&]() {
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) throw std::invalid_argument("expected a coordinate number");
    int v = std::stoi(s.substr(start, pos - start));
    if (v < 1 || v > dim) throw std::invalid_argument("coordinate out of range");
    return v;
  };

  while (pos < s.size()) {
    if (s[pos] == '.' || s[pos] == ' ') {
      ++pos;
    } else if (s[pos] == 's') {
      ++pos;
      if (pos >= s.size() || s[pos] != '{') throw std::invalid_argument("expected '{'");
      ++pos;
      while (pos < s.size() && s[pos] != '}') {
        if (s[pos] == ',' || s[pos] == ' ') {
          ++pos;
          continue;
        }
        comp |= dir_bit(parse_int());
      }
      if (pos >= s.size()) throw std::invalid_argument("unterminated complement set");
      ++pos;
    } else if (s[pos] == 'r') {
      ++pos;
      while (pos < s.size() && s[pos] == '(') {
        ++pos;
        std::vector<int> cyc;
        while (pos < s.size() && s[pos] != ')') {
          if (s[pos] == ' ' || s[pos] == ',') {
            ++pos;
            continue;
          }
          cyc.push_back(parse_int());
        }
        if (pos >= s.size()) throw std::invalid_argument("unterminated cycle");
        ++pos;
        for (std::size_t i = 0; i < cyc.size(); ++i)
          one_line[cyc[i] - 1] = cyc[(i + 1) % cyc.size()];
      }
    } else {
      throw std::invalid_argument("unexpected character in automorphism text");
    }
  }
  return normal_form(dim, comp, one_line);
}

Subgroup Subgroup::trivial(int n) {
  Subgroup g;
  g.dim_ = n;
  g.elements_ = {Automorphism::identity(n)};
  return g;
}

Subgroup Subgroup::generate(const std::vector<Automorphism>& generators, std::size_t bound) {
  if (generators.empty()) throw std::invalid_argument("no generators");
  const int n = generators.front().dim();
  for (const auto& g : generators)
    if (g.dim() != n) throw std::invalid_argument("generators of mixed dimension");

  std::set<Automorphism, bool (*)(const Automorphism&, const Automorphism&)> seen(
      &Automorphism::canonical_less);
  std::vector<Automorphism> todo;
  seen.insert(Automorphism::identity(n));
  todo.push_back(Automorphism::identity(n));
  while (!todo.empty()) {
    Automorphism cur = todo.back();
    todo.pop_back();
    for (const auto& g : generators) {
      Automorphism next = compose(cur, g);
      if (seen.insert(next).second) {
        if (seen.size() > bound) throw std::runtime_error("subgroup closure bound exceeded");
        todo.push_back(next);
      }
    }
  }
  Subgroup out;
  out.dim_ = n;
  out.elements_.assign(seen.begin(), seen.end());
  return out;
}

Subgroup Subgroup::even_complements(int n, std::optional<int> exclude) {
  if (n < 1 || n > kMaxDim) throw std::invalid_argument("dimension out of range");
  Mask allowed = full_mask(n);
  if (exclude) {
    if (*exclude < 1 || *exclude > n) throw std::invalid_argument("excluded coordinate out of range");
    allowed &= ~dir_bit(*exclude);
  }
  std::vector<Automorphism> elems;
  // iterate subsets of the allowed mask
  Mask sub = 0;
  while (true) {
    if (std::popcount(sub) % 2 == 0) elems.push_back(Automorphism::complementation(n, sub));
    if (sub == allowed) break;
    sub = (sub - allowed) & allowed;
  }
  std::sort(elems.begin(), elems.end(), &Automorphism::canonical_less);
  Subgroup out;
  out.dim_ = n;
  out.elements_ = std::move(elems);
  return out;
}

Subgroup Subgroup::from_elements(int n, std::vector<Automorphism> elements) {
  for (const auto& e : elements)
    if (e.dim() != n) throw std::invalid_argument("element of wrong dimension");
  std::sort(elements.begin(), elements.end(), &Automorphism::canonical_less);
  for (std::size_t i = 0; i + 1 < elements.size(); ++i)
    if (elements[i] == elements[i + 1]) throw std::invalid_argument("duplicate element");

  auto member = [&](const Automorphism& a) {
    auto it = std::lower_bound(elements.begin(), elements.end(), a, &Automorphism::canonical_less);
    return it != elements.end() && *it == a;
  };
  if (!member(Automorphism::identity(n)))
    throw std::invalid_argument("element list lacks the identity");
  for (const auto& a : elements) {
    if (!member(a.inverse())) throw std::invalid_argument("element list not closed under inverse");
    for (const auto& b : elements)
      if (!member(compose(a, b))) throw std::invalid_argument("element list not closed");
  }
  Subgroup out;
  out.dim_ = n;
  out.elements_ = std::move(elements);
  return out;
}

bool Subgroup::contains(const Automorphism& a) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), a, &Automorphism::canonical_less);
  return it != elements_.end() && *it == a;
}

EdgeSet translate_edge_set(const Automorphism& f, const EdgeSet& s) {
  const auto& host = s.host();
  if (!host->is_hypercube())
    throw std::invalid_argument("translate_edge_set(): host is not a hypercube");
  if (host->dim() != f.dim()) throw std::invalid_argument("dimension mismatch");
  std::vector<EdgeId> ids;
  ids.reserve(s.size());
  for (EdgeId e : s.ids()) ids.push_back(host->id_of(f.apply(host->cube_edge(e))));
  return EdgeSet(host, std::move(ids));
}

std::vector<EdgeSet> orbit_translates_serial(const Subgroup& g, const EdgeSet& s) {
  std::vector<EdgeSet> out;
  out.reserve(g.order());
  for (const auto& f : g.elements()) out.push_back(translate_edge_set(f, s));
  return out;
}

std::vector<EdgeSet> orbit_translates(const Subgroup& g, const EdgeSet& s, bool parallel) {
  if (!parallel) return orbit_translates_serial(g, s);
  std::vector<EdgeSet> out(g.order());
  const auto& elems = g.elements();
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (long long i = 0; i < static_cast<long long>(elems.size()); ++i)
    out[static_cast<std::size_t>(i)] = translate_edge_set(elems[static_cast<std::size_t>(i)], s);
  return out;
}

}  // namespace qdecomp
