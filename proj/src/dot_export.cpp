#include "qdecomp/dot_export.hpp"

#include <array>
#include <sstream>
#include <stdexcept>

namespace qdecomp {

namespace {

constexpr std::array<const char*, 20> kPalette = {
    "#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#46f0f0", "#f032e6",
    "#bcf60c", "#fabebe", "#008080", "#e6beff", "#9a6324", "#fffac8", "#800000",
    "#aaffc3", "#808000", "#ffd8b1", "#000075", "#808080", "#ffe119"};

std::string vertex_label(const Graph& g, VertexId v) {
  if (g.is_hypercube()) return to_string(g.vertex(v));
  return std::to_string(v);
}

void check_size(const Graph& g) {
  if (g.edge_count() > (1u << 14))
    throw std::invalid_argument("graph too large for DOT export");
}

}  // namespace

std::string graph_to_dot(const Graph& g) {
  check_size(g);
  std::ostringstream out;
  out << "graph {\n  node [shape=circle fontsize=10];\n";
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    out << "  v" << v << " [label=\"" << vertex_label(g, v) << "\"];\n";
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto [a, b] = g.endpoints(e);
    out << "  v" << a << " -- v" << b << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string decomposition_to_dot(const Decomposition& d) {
  check_size(*d.host);
  const Graph& g = *d.host;
  std::vector<int> piece_of(g.edge_count(), -1);
  for (std::size_t i = 0; i < d.pieces.size(); ++i)
    for (EdgeId e : d.pieces[i].ids()) piece_of[e] = static_cast<int>(i);

  std::ostringstream out;
  out << "graph {\n  node [shape=circle fontsize=10];\n";
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    out << "  v" << v << " [label=\"" << vertex_label(g, v) << "\"];\n";
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto [a, b] = g.endpoints(e);
    out << "  v" << a << " -- v" << b;
    if (piece_of[e] >= 0) {
      out << " [color=\"" << kPalette[static_cast<std::size_t>(piece_of[e]) % kPalette.size()]
          << "\" penwidth=2 tooltip=\"piece " << piece_of[e] << "\"]";
    } else {
      out << " [style=dashed]";
    }
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace qdecomp
