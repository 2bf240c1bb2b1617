#include "turanlab/polynomial.hpp"

#include "turanlab/errors.hpp"

#include <cmath>

namespace turanlab {

namespace {

BigInt factorial(int k) {
    BigInt f = 1;
    for (int i = 2; i <= k; ++i)
        f *= i;
    return f;
}

} // namespace

PolynomialForm::PolynomialForm(const Pattern& p) : n_(p.n()) {
    terms_.reserve(p.edges().size());
    for (const auto& k : p.edges()) {
        Term t;
        int size = 0;
        BigInt denom = 1;
        for (int i = 0; i < n_; ++i) {
            const int ki = k[static_cast<std::size_t>(i)];
            if (ki == 0)
                continue;
            size += ki;
            denom *= factorial(ki);
            t.powers.emplace_back(i, ki);
        }
        t.coefficient = factorial(size) / denom;
        coefficients_.push_back(t.coefficient.convert_to<double>());
        terms_.push_back(std::move(t));
    }
}

PolynomialForm::PolynomialForm(const Hypergraph& h) : PolynomialForm(Pattern::from_hypergraph(h)) {}

void PolynomialForm::check_dimension(std::size_t d) const {
    if (static_cast<int>(d) != n_)
        throw ValidationError("point dimension " + std::to_string(d) +
                              " does not match pattern vertex count " + std::to_string(n_));
}

double PolynomialForm::evaluate(std::span<const double> x) const {
    check_dimension(x.size());
    double total = 0;
    for (std::size_t t = 0; t < terms_.size(); ++t) {
        double prod = coefficients_[t];
        for (auto [v, k] : terms_[t].powers)
            prod *= std::pow(x[static_cast<std::size_t>(v)], k);
        total += prod;
    }
    return total;
}

Rational PolynomialForm::evaluate(std::span<const Rational> x) const {
    check_dimension(x.size());
    Rational total = 0;
    for (const auto& term : terms_) {
        Rational prod = Rational(term.coefficient);
        for (auto [v, k] : term.powers)
            for (int j = 0; j < k; ++j)
                prod *= x[static_cast<std::size_t>(v)];
        total += prod;
    }
    return total;
}

std::vector<double> PolynomialForm::gradient(std::span<const double> x) const {
    check_dimension(x.size());
    std::vector<double> g(x.size(), 0.0);
    for (std::size_t t = 0; t < terms_.size(); ++t) {
        const auto& powers = terms_[t].powers;
        for (std::size_t a = 0; a < powers.size(); ++a) {
            const auto [va, ka] = powers[a];
            double prod = coefficients_[t] * ka * std::pow(x[static_cast<std::size_t>(va)], ka - 1);
            for (std::size_t b = 0; b < powers.size(); ++b)
                if (b != a)
                    prod *= std::pow(x[static_cast<std::size_t>(powers[b].first)], powers[b].second);
            g[static_cast<std::size_t>(va)] += prod;
        }
    }
    return g;
}

std::vector<double> PolynomialForm::hessian(std::span<const double> x) const {
    check_dimension(x.size());
    const std::size_t n = x.size();
    std::vector<double> h(n * n, 0.0);
    auto pw = [&](int v, int k) { return k <= 0 ? 1.0 : std::pow(x[static_cast<std::size_t>(v)], k); };
    for (std::size_t t = 0; t < terms_.size(); ++t) {
        const auto& powers = terms_[t].powers;
        for (std::size_t a = 0; a < powers.size(); ++a) {
            for (std::size_t b = a; b < powers.size(); ++b) {
                const auto [va, ka] = powers[a];
                const auto [vb, kb] = powers[b];
                double prod = coefficients_[t];
                if (a == b) {
                    if (ka < 2)
                        continue;
                    prod *= ka * (ka - 1) * pw(va, ka - 2);
                } else {
                    prod *= ka * pw(va, ka - 1) * kb * pw(vb, kb - 1);
                }
                for (std::size_t c = 0; c < powers.size(); ++c)
                    if (c != a && c != b)
                        prod *= pw(powers[c].first, powers[c].second);
                h[static_cast<std::size_t>(va) * n + static_cast<std::size_t>(vb)] += prod;
                if (a != b)
                    h[static_cast<std::size_t>(vb) * n + static_cast<std::size_t>(va)] += prod;
            }
        }
    }
    return h;
}

double evaluate(const Pattern& p, const SimplexPoint& x) {
    return PolynomialForm(p).evaluate(x.weights());
}

std::vector<double> gradient(const Pattern& p, const SimplexPoint& x) {
    return PolynomialForm(p).gradient(x.weights());
}

} // namespace turanlab
