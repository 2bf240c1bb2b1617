#pragma once

#include "turanlab/hypergraph.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace turanlab {

/// Hard vertex cap for exhaustive enumeration.
inline constexpr int kMaxEnumerationVertices = 8;

enum class ContainmentMode { subgraph, induced };

const char* to_string(ContainmentMode mode) noexcept;
ContainmentMode parse_containment_mode(const std::string& text);

/// A finite forbidden family over an ambient edge-type set. Members are
/// deduplicated up to isomorphism and stored in canonical form (members too
/// large to canonicalize are kept as given, dropping exact duplicates).
class ForbiddenFamily {
  public:
    ForbiddenFamily(ContainmentMode mode, std::vector<Hypergraph> members, EdgeTypeSet ambient);

    ContainmentMode mode() const noexcept { return mode_; }
    const std::vector<Hypergraph>& members() const noexcept { return members_; }
    const EdgeTypeSet& ambient() const noexcept { return ambient_; }

    /// Largest edge size used by any member, or 0 for the empty family.
    int max_member_edge_size() const noexcept;

    /// Whether g contains no member (in the family's containment mode).
    bool admits(const Hypergraph& g) const;

  private:
    ContainmentMode mode_;
    std::vector<Hypergraph> members_;
    EdgeTypeSet ambient_;
};

struct DensityRecord {
    int n = 0;
    Rational pi_n = 0;
    /// Canonical representatives of every F-free graph attaining pi_n
    /// (only the best found when not exhaustive).
    std::vector<Hypergraph> extremal;
    std::uint64_t graphs_enumerated = 0;
    double elapsed = 0;
    /// False for candidate-list and heuristic runs: pi_n is then only a
    /// lower bound on the true maximum.
    bool exhaustive = true;
};

struct DensityBound {
    std::vector<DensityRecord> records;

    bool is_non_increasing() const;
};

struct SearchConfig {
    int threads = 1;
    /// Refuse inputs whose estimated class count 2^M / n! exceeds this.
    double max_classes = 2e6;
};

struct HeuristicConfig {
    int restarts = 16;
    /// Local-search moves per restart (remove an edge, greedily refill).
    int steps = 200;
    std::uint64_t seed = 0;
    int threads = 1;
};

/// Number of possible edges on n vertices with sizes in R.
std::uint64_t possible_edge_count(int n, const EdgeTypeSet& r);

/// Throws UnsupportedSize when exhaustive enumeration on (n, R) is refused.
void check_enumeration_size(int n, const EdgeTypeSet& r, const SearchConfig& config = {});

/// Calls visit once per isomorphism class of R-graphs on n vertices, passing
/// the class representative with the lexicographically largest edge code.
/// Returns the number of classes.
std::uint64_t enumerate_graphs(int n, const EdgeTypeSet& r,
                               const std::function<void(const Hypergraph&)>& visit,
                               const SearchConfig& config = {});
std::vector<Hypergraph> enumerate_graphs(int n, const EdgeTypeSet& r, const SearchConfig& config = {});

/// Exact max Lubell value over F-free R-graphs on n vertices (R = ambient).
/// Throws MathError when no graph on n vertices is F-free.
DensityRecord pi_n(const ForbiddenFamily& family, int n, const SearchConfig& config = {});

/// Best F-free graph among the supplied candidates; non-exhaustive.
DensityRecord pi_n_candidates(const ForbiddenFamily& family, int n,
                              const std::vector<Hypergraph>& candidates);

/// Randomized greedy construction plus local search; non-exhaustive.
DensityRecord pi_n_heuristic(const ForbiddenFamily& family, int n, const HeuristicConfig& config = {});

/// Records for n from max(max_member_edge_size, 1) (or the ambient maximum
/// for an empty family) up to n_max. Throws MathError if the sequence is
/// not non-increasing.
DensityBound density_sequence(const ForbiddenFamily& family, int n_max, const SearchConfig& config = {});

/// Edge-set union of two graphs on the same vertex set with disjoint
/// edge-size sets.
Hypergraph disjoint_type_union(const Hypergraph& g1, const Hypergraph& g2);

} // namespace turanlab
