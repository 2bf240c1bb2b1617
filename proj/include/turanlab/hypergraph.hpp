#pragma once

#include "turanlab/rational.hpp"

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace turanlab {

/// Largest edge cardinality accepted anywhere; also the vertex bound for
/// canonical labeling and embedding counts.
inline constexpr int kMaxEdgeSize = 16;
inline constexpr int kMaxCanonicalVertices = 16;

using Edge = std::vector<int>;
using VertexMask = std::uint64_t;

/// The set R of allowed edge cardinalities.
class EdgeTypeSet {
  public:
    EdgeTypeSet(std::initializer_list<int> sizes);
    explicit EdgeTypeSet(std::vector<int> sizes);

    const std::vector<int>& sizes() const noexcept { return sizes_; }
    bool contains(int r) const noexcept;
    int max() const noexcept { return sizes_.back(); }
    std::size_t size() const noexcept { return sizes_.size(); }

    bool operator==(const EdgeTypeSet&) const = default;

  private:
    std::vector<int> sizes_;
};

/// A simple hypergraph on vertices 0..n-1. Edges are kept sorted (each edge
/// ascending; the edge list ordered by size, then lexicographically).
class Hypergraph {
  public:
    Hypergraph() = default;
    explicit Hypergraph(int n, std::vector<Edge> edges = {});

    static Hypergraph from_masks(int n, std::span<const VertexMask> masks);

    int n() const noexcept { return n_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    /// R(H): the distinct edge sizes, ascending.
    std::vector<int> edge_sizes() const;
    std::size_t count_of_size(int r) const;
    bool has_edge(const Edge& e) const;

    /// Edges as bitmasks; requires n <= 64.
    std::vector<VertexMask> masks() const;

    bool operator==(const Hypergraph&) const = default;

  private:
    int n_ = 0;
    std::vector<Edge> edges_;
};

/// Hypergraph pattern: edges are multisets given by per-vertex multiplicities.
class Pattern {
  public:
    using Multiplicities = std::vector<int>;

    Pattern() = default;
    Pattern(int n, std::vector<Multiplicities> edges);

    static Pattern from_hypergraph(const Hypergraph& h);

    int n() const noexcept { return n_; }
    const std::vector<Multiplicities>& edges() const noexcept { return edges_; }

    /// True when every multiplicity is 0 or 1.
    bool is_simple() const noexcept;
    std::optional<Hypergraph> as_hypergraph() const;

    bool operator==(const Pattern&) const = default;

  private:
    int n_ = 0;
    std::vector<Multiplicities> edges_;
};

/// Point of the standard simplex S_n.
class SimplexPoint {
  public:
    static constexpr double kSumTolerance = 1e-12;

    explicit SimplexPoint(std::vector<double> weights);

    static SimplexPoint uniform(int n);
    static SimplexPoint vertex(int n, int i);

    const std::vector<double>& weights() const noexcept { return weights_; }
    std::size_t dimension() const noexcept { return weights_.size(); }
    double operator[](std::size_t i) const { return weights_[i]; }
    std::vector<int> support() const;

  private:
    std::vector<double> weights_;
};

/// Exact point of S_n; the entries sum to exactly 1.
class RationalPoint {
  public:
    explicit RationalPoint(std::vector<Rational> weights);

    const std::vector<Rational>& weights() const noexcept { return weights_; }
    std::size_t dimension() const noexcept { return weights_.size(); }
    std::vector<int> support() const;
    SimplexPoint to_simplex_point() const;

  private:
    std::vector<Rational> weights_;
};

// --- operations -------------------------------------------------------------

/// Lubell value h_n(H) = sum over edges of 1 / C(n, |e|).
Rational lubell(const Hypergraph& h);

/// G[S] with the vertices of S relabeled 0..|S|-1 in ascending order.
Hypergraph induced_subgraph(const Hypergraph& g, std::span<const int> subset);

/// H(s): vertex i becomes a class of s_i clones (classes laid out
/// consecutively in vertex order); each edge becomes all transversals.
Hypergraph blow_up(const Hypergraph& h, std::span<const int> sizes);

/// P(s): class i of size s_i; an edge with multiplicities k contributes
/// C(V_1, k_1) x ... x C(V_n, k_n).
Hypergraph realize(const Pattern& p, std::span<const int> sizes);

Hypergraph relabel(const Hypergraph& g, std::span<const int> permutation);

/// Injective map phi from V(H) into V(G) sending every edge of H onto an
/// edge of G, if one exists. Both graphs must have at most 64 vertices.
std::optional<std::vector<int>> find_subgraph(const Hypergraph& g, const Hypergraph& h);
bool contains_subgraph(const Hypergraph& g, const Hypergraph& h);

/// As `find_subgraph`, but G[phi(V(H))] must equal phi(H) exactly.
std::optional<std::vector<int>> find_induced(const Hypergraph& g, const Hypergraph& h);
bool contains_induced(const Hypergraph& g, const Hypergraph& h);

/// Number of injections V(H) -> V(G) mapping edges onto edges.
std::uint64_t count_injections(const Hypergraph& g, const Hypergraph& h);

/// Number of distinct copies of H in G (injections modulo Aut(H)).
std::uint64_t count_embeddings(const Hypergraph& g, const Hypergraph& h);

/// Isomorphism-invariant byte string; equal iff isomorphic. n <= 16.
std::string canonical_form(const Hypergraph& g);

/// Relabeling of g whose edge set realizes `canonical_form(g)`.
Hypergraph canonical_graph(const Hypergraph& g);

bool are_isomorphic(const Hypergraph& a, const Hypergraph& b);

} // namespace turanlab
