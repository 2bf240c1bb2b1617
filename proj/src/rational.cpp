#include "turanlab/rational.hpp"

#include "turanlab/errors.hpp"

#include <cctype>
#include <cmath>
#include <limits>

namespace turanlab {

std::string to_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

namespace {

bool is_integer_literal(std::string_view s) {
    if (s.empty())
        return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size())
        return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            return false;
    return true;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

} // namespace

Rational parse_rational(std::string_view text) {
    const std::string_view s = trim(text);
    const auto slash = s.find('/');
    const std::string_view num = s.substr(0, slash);
    const std::string_view den =
        slash == std::string_view::npos ? std::string_view{"1"} : s.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-')
        throw ValidationError("not an exact rational (expected p/q): '" +
                              std::string(text) + "'");
    BigInt p(std::string(num[0] == '+' ? num.substr(1) : num));
    BigInt q(std::string(den[0] == '+' ? den.substr(1) : den));
    if (q == 0)
        throw ValidationError("zero denominator in '" + std::string(text) + "'");
    return Rational(p, q);
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

BigInt binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n)
        return 0;
    k = std::min(k, n - k);
    BigInt acc = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        acc *= n - k + i;
        acc /= i;
    }
    return acc;
}

Rational approximate(double value, std::int64_t max_denominator) {
    if (!std::isfinite(value))
        throw ValidationError("cannot rationalize a non-finite value");
    const bool negative = value < 0;
    double x = std::fabs(value);

    // Convergents h/k of the continued fraction of x.
    std::int64_t h_prev = 1, h = static_cast<std::int64_t>(std::floor(x));
    std::int64_t k_prev = 0, k = 1;
    double frac = x - std::floor(x);
    while (frac > 1e-15) {
        const double inv = 1.0 / frac;
        const double a_real = std::floor(inv);
        if (a_real > static_cast<double>(std::numeric_limits<std::int32_t>::max()))
            break;
        const auto a = static_cast<std::int64_t>(a_real);
        const std::int64_t k_next = a * k + k_prev;
        if (k_next > max_denominator) {
            // Largest semiconvergent that still fits.
            const std::int64_t m = (max_denominator - k_prev) / k;
            const std::int64_t hs = m * h + h_prev, ks = m * k + k_prev;
            if (m > 0 && std::fabs(static_cast<double>(hs) / static_cast<double>(ks) - x) <
                             std::fabs(static_cast<double>(h) / static_cast<double>(k) - x)) {
                h = hs;
                k = ks;
            }
            break;
        }
        const std::int64_t h_next = a * h + h_prev;
        h_prev = h;
        k_prev = k;
        h = h_next;
        k = k_next;
        frac = inv - a_real;
    }
    Rational r(h, k);
    return negative ? Rational(-r) : r;
}

} // namespace turanlab
