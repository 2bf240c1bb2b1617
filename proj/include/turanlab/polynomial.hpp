#pragma once

#include "turanlab/hypergraph.hpp"

#include <span>
#include <utility>
#include <vector>

namespace turanlab {

/// coefficient * prod x_v^k over the listed (v, k) pairs, k >= 1.
struct Term {
    BigInt coefficient;
    std::vector<std::pair<int, int>> powers;
};

/// lambda(P, x): each pattern edge e = (k_1..k_n) contributes the multinomial
/// C(|e|; k_1..k_n) times prod x_i^{k_i}. A simple edge therefore carries |e|!.
class PolynomialForm {
  public:
    explicit PolynomialForm(const Pattern& p);
    explicit PolynomialForm(const Hypergraph& h);

    int n() const noexcept { return n_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }

    // Evaluation is defined on all of R^n, not only on the simplex; finite
    // difference checks step off the simplex.
    double evaluate(std::span<const double> x) const;
    Rational evaluate(std::span<const Rational> x) const;
    std::vector<double> gradient(std::span<const double> x) const;
    /// Row-major n x n Hessian.
    std::vector<double> hessian(std::span<const double> x) const;

  private:
    void check_dimension(std::size_t d) const;

    int n_;
    std::vector<Term> terms_;
    std::vector<double> coefficients_;
};

double evaluate(const Pattern& p, const SimplexPoint& x);
std::vector<double> gradient(const Pattern& p, const SimplexPoint& x);

} // namespace turanlab
