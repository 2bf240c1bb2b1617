#pragma once

#include "turanlab/hypergraph.hpp"

namespace turanlab::named {

Hypergraph empty(int n);

/// K_t^R: every subset of [t] whose size lies in R.
Hypergraph complete(int t, const EdgeTypeSet& sizes);

/// Two-vertex chain: edges {0} and {0,1}.
Hypergraph chain();

/// K_t^*: the 1-edge {0} plus the complete 2-graph on t vertices.
Hypergraph k_star(int t);

/// Turan graph T(n, parts): complete balanced multipartite 2-graph. Vertex v
/// lies in part v mod parts.
Hypergraph turan_graph(int n, int parts);

} // namespace turanlab::named
