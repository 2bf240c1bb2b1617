#pragma once

#include "turanlab/hypergraph.hpp"
#include "turanlab/polynomial.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace turanlab {

struct OptimizerConfig {
    int restarts = 32;
    int max_iters = 10000;
    double tol = 1e-12;
    std::uint64_t seed = 0;
    bool rational_certificate = true;
    int threads = 1;
    std::int64_t max_denominator = 1'000'000;
};

struct LagrangianResult {
    double value = 0;
    SimplexPoint maximizer = SimplexPoint::uniform(1);
    std::vector<int> support;
    /// Exact lambda(P, r) at the rationalized maximizer r.
    std::optional<Rational> certified_lower_bound;
    std::optional<RationalPoint> certificate_point;
    double stationarity_residual = 0;
    /// Vertex classes that were forced to share a weight.
    std::vector<std::vector<int>> classes;
    int starts = 0;
    int converged_starts = 0;

    /// Whether the exact certificate agrees with the numerical value to 1e-9.
    bool certificate_matches() const;
};

/// Coarsest partition into equivalent vertices: i ~ j when, in every edge-size
/// layer, the link of i and the link of j (both computed without i and j)
/// coincide.
std::vector<std::vector<int>> equivalence_classes(const Hypergraph& h);

/// Pattern analogue: i ~ j when swapping their multiplicities preserves the
/// edge set and neither vertex ever appears with multiplicity above 1. The
/// second condition is what keeps equal weights within a class lossless.
std::vector<std::vector<int>> equivalence_classes(const Pattern& p);

/// KKT residual of x as a candidate maximizer on the simplex: the spread of
/// the partial derivatives on supp(x), or the excess of an off-support
/// partial over them, whichever is larger.
double stationarity_residual(const Pattern& p, const SimplexPoint& x);

/// Global maximum of the polynomial form over the simplex.
///
/// Equivalent vertices are merged into one variable (their common weight),
/// candidate supports of the quotient are enumerated (those in which every
/// pair of variables shares a term inside the support, plus the full
/// support), and each support face is searched by projected-gradient ascent
/// with Armijo backtracking from the face barycenter and `restarts` seeded
/// Dirichlet starts, followed by a Newton polish of the on-support KKT
/// system. Results do not depend on `threads`.
///
/// Throws OptimizerFailure when no start converges within `max_iters`, or
/// when the reported maximizer fails the KKT check at 1e-7.
LagrangianResult maximize(const Pattern& p, const OptimizerConfig& config = {});
LagrangianResult maximize(const Hypergraph& h, const OptimizerConfig& config = {});

/// Exact lambda(P, x) at a rational simplex point.
Rational certify_at(const Pattern& p, const RationalPoint& x);
Rational certify_at(const Hypergraph& h, const RationalPoint& x);

/// Rounds x to denominators <= max_denominator and renormalizes exactly.
RationalPoint rationalize(const SimplexPoint& x, std::int64_t max_denominator);

} // namespace turanlab
