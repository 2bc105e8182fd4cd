#ifndef QDECOMP_DOT_EXPORT_HPP
#define QDECOMP_DOT_EXPORT_HPP

#include <string>

#include "qdecomp/verify.hpp"

namespace qdecomp {

/// Graphviz rendering with one color per piece (cycled from a palette).
/// Hypercube vertices are labelled with their coordinate strings.
std::string decomposition_to_dot(const Decomposition& d);

std::string graph_to_dot(const Graph& g);

}  // namespace qdecomp

#endif  // QDECOMP_DOT_EXPORT_HPP
