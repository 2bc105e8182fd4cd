#include "qdecomp/cube.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <unordered_set>

namespace qdecomp {

Vertex make_vertex(int dim, Mask mask) {
  if (dim < 1 || dim > kMaxDim)
    throw std::invalid_argument("vertex dimension out of range");
  if ((mask & ~full_mask(dim)) != 0)
    throw std::invalid_argument("vertex mask uses coordinates above the dimension");
  return Vertex{mask, dim};
}

Vertex parse_vertex(const std::string& bits) {
  if (bits.empty() || bits.size() > kMaxDim)
    throw std::invalid_argument("bad vertex string length");
  Mask m = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1')
      m |= Mask{1} << i;
    else if (bits[i] != '0')
      throw std::invalid_argument("vertex string must be 0/1 characters");
  }
  return Vertex{m, static_cast<int>(bits.size())};
}

std::string to_string(const Vertex& v) {
  std::string s(static_cast<std::size_t>(v.dim), '0');
  for (int i = 0; i < v.dim; ++i)
    if ((v.mask >> i) & 1u) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

bool adjacent(const Vertex& a, const Vertex& b) {
  return a.dim == b.dim && std::popcount(a.mask ^ b.mask) == 1;
}

Edge make_edge(const Vertex& a, const Vertex& b) {
  if (a.dim != b.dim) throw std::invalid_argument("edge endpoints of unequal dimension");
  Mask d = a.mask ^ b.mask;
  if (std::popcount(d) != 1)
    throw std::invalid_argument("edge endpoints must differ in exactly one coordinate");
  int dir = std::countr_zero(d) + 1;
  return Edge{Vertex{a.mask & ~d, a.dim}, dir};
}

Edge edge_from(const Vertex& v, int dir) {
  if (dir < 1 || dir > v.dim) throw std::invalid_argument("edge direction out of range");
  return Edge{Vertex{v.mask & ~dir_bit(dir), v.dim}, dir};
}

std::string to_string(const Edge& e) {
  return "<" + to_string(e.low) + "," + to_string(e.high()) + ">";
}

namespace {

bool all_distinct(const std::vector<Vertex>& vs, std::size_t count) {
  if (count == 0) return true;
  int dim = vs.front().dim;
  if (dim <= kMaxGraphDim) {
    std::vector<bool> seen(std::size_t{1} << dim, false);
    for (std::size_t i = 0; i < count; ++i) {
      if (seen[vs[i].mask]) return false;
      seen[vs[i].mask] = true;
    }
    return true;
  }
  std::unordered_set<Mask> seen;
  seen.reserve(count * 2);
  for (std::size_t i = 0; i < count; ++i)
    if (!seen.insert(vs[i].mask).second) return false;
  return true;
}

}  // namespace

WalkTrace trace_walk(const Walk& w) {
  const int dim = w.start.dim;
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("walk dimension out of range");
  WalkTrace t;
  t.vertices.reserve(w.dirs.size() + 1);
  t.vertices.push_back(w.start);
  std::vector<Edge> raw;
  raw.reserve(w.dirs.size());
  Mask cur = w.start.mask;
  for (int d : w.dirs) {
    if (d < 1 || d > dim) throw std::invalid_argument("walk direction out of range");
    raw.push_back(edge_from(Vertex{cur, dim}, d));
    cur ^= dir_bit(d);
    t.vertices.push_back(Vertex{cur, dim});
  }

  std::sort(raw.begin(), raw.end());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (i + 1 < raw.size() && raw[i] == raw[i + 1]) {
      if (t.duplicate_edges.empty() || t.duplicate_edges.back() != raw[i])
        t.duplicate_edges.push_back(raw[i]);
    }
  }
  t.edges = raw;
  t.edges.erase(std::unique(t.edges.begin(), t.edges.end()), t.edges.end());

  t.closed = !w.dirs.empty() && t.vertices.front() == t.vertices.back();
  t.edges_distinct = t.duplicate_edges.empty();
  t.vertices_distinct = all_distinct(t.vertices, t.vertices.size());
  t.simple_cycle =
      t.closed && t.edges_distinct && all_distinct(t.vertices, t.vertices.size() - 1);

  if (!w.dirs.empty() && t.vertices_distinct)
    t.shape = WalkShape::Path;
  else if (t.closed && t.edges_distinct)
    t.shape = WalkShape::Cycle;
  else
    t.shape = WalkShape::Neither;
  return t;
}

}  // namespace qdecomp
