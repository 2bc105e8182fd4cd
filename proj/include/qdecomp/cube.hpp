#ifndef QDECOMP_CUBE_HPP
#define QDECOMP_CUBE_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace qdecomp {

/// Subset-of-coordinates mask: coordinate i (1-based) lives in bit i-1.
using Mask = std::uint32_t;

/// Cap for explicit vertex/edge enumeration.
inline constexpr int kMaxGraphDim = 24;
/// Direction-sequence work (walks, automorphisms) goes a little further.
inline constexpr int kMaxDim = 32;

constexpr Mask dir_bit(int dir) { return Mask{1} << (dir - 1); }
constexpr bool mask_has(Mask m, int dir) { return (m >> (dir - 1)) & Mask{1}; }
constexpr Mask full_mask(int n) {
  return n >= 32 ? ~Mask{0} : (Mask{1} << n) - Mask{1};
}

/// A vertex of Q_n: a subset of {1..n}.
struct Vertex {
  Mask mask = 0;
  int dim = 0;

  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

Vertex make_vertex(int dim, Mask mask);

/// Parses "01010"-style coordinate strings, x_1 first.
Vertex parse_vertex(const std::string& bits);
std::string to_string(const Vertex& v);

bool adjacent(const Vertex& a, const Vertex& b);

/// An edge of Q_n in canonical form: the endpoint with coordinate `dir`
/// clear, together with the flipped coordinate. Equality is (low, dir).
struct Edge {
  Vertex low;
  int dir = 0;

  Vertex high() const { return Vertex{low.mask ^ dir_bit(dir), low.dim}; }
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Canonicalizes an edge from two endpoints differing in one coordinate.
Edge make_edge(const Vertex& a, const Vertex& b);
/// The edge incident to v in direction dir.
Edge edge_from(const Vertex& v, int dir);
std::string to_string(const Edge& e);

/// A walk: start vertex plus a sequence of edge directions.
struct Walk {
  Vertex start;
  std::vector<int> dirs;
};

enum class WalkShape { Path, Cycle, Neither };

struct WalkTrace {
  std::vector<Vertex> vertices;  // dirs.size() + 1 entries
  std::vector<Edge> edges;       // distinct induced edges, sorted
  std::vector<Edge> duplicate_edges;
  WalkShape shape = WalkShape::Neither;
  bool closed = false;
  bool vertices_distinct = false;
  bool edges_distinct = false;
  /// closed, edges distinct, and all vertices but the repeated start distinct
  bool simple_cycle = false;
};

/// Traces a walk and classifies it. "Path" requires all vertices distinct;
/// "cycle" requires a closed walk with all edges distinct.
WalkTrace trace_walk(const Walk& w);

}  // namespace qdecomp

#endif  // QDECOMP_CUBE_HPP
