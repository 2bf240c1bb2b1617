#include "turanlab/named.hpp"

#include "turanlab/errors.hpp"

namespace turanlab::named {

namespace {

void subsets_of_size(int n, int r, int start, Edge& current, std::vector<Edge>& out) {
    if (static_cast<int>(current.size()) == r) {
        out.push_back(current);
        return;
    }
    for (int v = start; v <= n - (r - static_cast<int>(current.size())); ++v) {
        current.push_back(v);
        subsets_of_size(n, r, v + 1, current, out);
        current.pop_back();
    }
}

} // namespace

Hypergraph empty(int n) { return Hypergraph(n); }

Hypergraph complete(int t, const EdgeTypeSet& sizes) {
    std::vector<Edge> edges;
    for (int r : sizes.sizes()) {
        Edge current;
        subsets_of_size(t, r, 0, current, edges);
    }
    return Hypergraph(t, std::move(edges));
}

Hypergraph chain() { return Hypergraph(2, {{0}, {0, 1}}); }

Hypergraph k_star(int t) {
    if (t < 2)
        throw ValidationError("K_t^* needs t >= 2");
    std::vector<Edge> edges{{0}};
    for (int i = 0; i < t; ++i)
        for (int j = i + 1; j < t; ++j)
            edges.push_back({i, j});
    return Hypergraph(t, std::move(edges));
}

Hypergraph turan_graph(int n, int parts) {
    if (parts < 1)
        throw ValidationError("Turan graph needs at least one part");
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (i % parts != j % parts)
                edges.push_back({i, j});
    return Hypergraph(n, std::move(edges));
}

} // namespace turanlab::named
