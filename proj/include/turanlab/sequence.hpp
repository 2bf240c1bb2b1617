#pragma once

#include "turanlab/hypergraph.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace turanlab {

/// Largest member a generator will build.
inline constexpr int kMaxMemberVertices = 2000;

enum class GeneratorKind { blowup, turan, union_of, constant, complete };
const char* to_string(GeneratorKind k) noexcept;

/// A rule producing the i-th member of a graph sequence. Member i has
/// start + step * i vertices.
class SequenceGenerator {
  public:
    /// Blow-up of h with class sizes from largest-remainder rounding of
    /// n * proportions (ties to the lower index).
    static SequenceGenerator blowup(Hypergraph h, std::vector<Rational> proportions, int start, int step);
    /// Turan graphs T(n, parts): the K_{parts+1}^{2}-free extremal graphs.
    static SequenceGenerator turan(int parts, int start, int step);
    /// Edge union of two generators with disjoint edge-size sets and equal
    /// vertex schedules.
    static SequenceGenerator union_of(SequenceGenerator a, SequenceGenerator b);
    /// A fixed graph padded with isolated vertices.
    static SequenceGenerator constant(Hypergraph h, int start, int step);
    static SequenceGenerator complete(EdgeTypeSet sizes, int start, int step);

    GeneratorKind kind() const noexcept { return kind_; }
    int start() const noexcept { return start_; }
    int step() const noexcept { return step_; }
    int vertices(int i) const;

    /// Throws UnsupportedSize beyond kMaxMemberVertices.
    Hypergraph member(int i) const;

    // Parameters, meaningful for the matching kind only.
    const Hypergraph& base() const noexcept { return base_; }
    const std::vector<Rational>& proportions() const noexcept { return proportions_; }
    int parts() const noexcept { return parts_; }
    const EdgeTypeSet& sizes() const noexcept { return sizes_; }
    const SequenceGenerator& left() const { return *left_; }
    const SequenceGenerator& right() const { return *right_; }

    /// Edge sizes members may use, ascending.
    std::vector<int> declared_sizes() const;

  private:
    SequenceGenerator() = default;

    GeneratorKind kind_ = GeneratorKind::constant;
    int start_ = 1;
    int step_ = 1;
    Hypergraph base_;
    std::vector<Rational> proportions_;
    int parts_ = 0;
    EdgeTypeSet sizes_{1};
    std::shared_ptr<const SequenceGenerator> left_, right_;
};

/// Largest-remainder rounding of n * x; entries differ from n * x_i by < 1.
std::vector<int> round_proportions(int n, const std::vector<Rational>& x);

struct DensityEstimate {
    std::vector<int> vertices;
    std::vector<Rational> lubell;
    Rational last;
    /// lubell[last] - lubell[last - 1]; absent with a single member.
    std::optional<Rational> last_difference;
};

/// Lubell values of members 0..i_max. Reports data and trend only.
DensityEstimate density_estimate(const SequenceGenerator& gen, int i_max);

struct SigmaConfig {
    int threads = 1;
    std::uint64_t seed = 0;
    std::uint64_t samples = 1'000'000;
    /// Sample even when the exhaustive scan is within limits.
    bool force_sampled = false;
};

struct UpperDensityReport {
    int t = 0;
    Rational sigma;
    int member = -1;
    std::vector<int> subset;
    /// (member index, Lubell value) for every scanned member.
    std::vector<std::pair<int, Rational>> h_values;
    /// False when any member was sampled; sigma is then a lower bound.
    bool exhaustive = true;
    std::uint64_t subsets_evaluated = 0;
};

/// Whether a member on n vertices is scanned exhaustively for t: t <= 8,
/// n <= 60 and C(n, t) <= C(40, 6).
bool sigma_exhaustive(int n, int t);

/// max over members i in [i_first, i_last] with n_i >= t of the best Lubell
/// value of an induced t-vertex subgraph. Ties resolve to the lowest member
/// index, then the lexicographically smallest subset.
UpperDensityReport sigma_t(const SequenceGenerator& gen, int t, int i_first, int i_last,
                           const SigmaConfig& config = {});

/// sigma_t of a single graph.
UpperDensityReport sigma_t(const Hypergraph& g, int t, const SigmaConfig& config = {});

} // namespace turanlab
