#pragma once

// Brute-force reference implementations used only by the tests. None of
// these share code paths with the library algorithms they check.

#include "turanlab/hypergraph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using turanlab::Edge;
using turanlab::Hypergraph;
using turanlab::Rational;

inline std::set<Edge> edge_set(const Hypergraph& g) {
    return {g.edges().begin(), g.edges().end()};
}

inline std::set<Edge> image(const Hypergraph& h, const std::vector<int>& phi) {
    std::set<Edge> out;
    for (const auto& e : h.edges()) {
        Edge m;
        for (int v : e)
            m.push_back(phi[static_cast<std::size_t>(v)]);
        std::sort(m.begin(), m.end());
        out.insert(m);
    }
    return out;
}

/// Calls visit(phi) for every injection V(H) -> V(G).
inline void for_each_injection(int hn, int gn, const std::function<void(const std::vector<int>&)>& visit) {
    std::vector<int> phi(static_cast<std::size_t>(hn));
    std::vector<bool> used(static_cast<std::size_t>(gn), false);
    std::function<void(int)> rec = [&](int pos) {
        if (pos == hn) {
            visit(phi);
            return;
        }
        for (int v = 0; v < gn; ++v) {
            if (used[static_cast<std::size_t>(v)])
                continue;
            used[static_cast<std::size_t>(v)] = true;
            phi[static_cast<std::size_t>(pos)] = v;
            rec(pos + 1);
            used[static_cast<std::size_t>(v)] = false;
        }
    };
    rec(0);
}

inline bool contains(const Hypergraph& g, const Hypergraph& h, bool induced) {
    if (h.n() > g.n())
        return false;
    const auto ge = edge_set(g);
    bool found = false;
    for_each_injection(h.n(), g.n(), [&](const std::vector<int>& phi) {
        if (found)
            return;
        const auto img = image(h, phi);
        for (const auto& e : img)
            if (!ge.count(e))
                return;
        if (induced) {
            std::vector<bool> in(static_cast<std::size_t>(g.n()), false);
            for (int v : phi)
                in[static_cast<std::size_t>(v)] = true;
            for (const auto& e : ge) {
                const bool inside = std::all_of(e.begin(), e.end(), [&](int v) { return in[static_cast<std::size_t>(v)]; });
                if (inside && !img.count(e))
                    return;
            }
        }
        found = true;
    });
    return found;
}

/// Distinct (vertex image, edge image) copies of H in G.
inline std::size_t copies(const Hypergraph& g, const Hypergraph& h) {
    const auto ge = edge_set(g);
    std::set<std::pair<std::set<int>, std::set<Edge>>> seen;
    for_each_injection(h.n(), g.n(), [&](const std::vector<int>& phi) {
        const auto img = image(h, phi);
        for (const auto& e : img)
            if (!ge.count(e))
                return;
        seen.insert({std::set<int>(phi.begin(), phi.end()), img});
    });
    return seen.size();
}

inline bool isomorphic(const Hypergraph& a, const Hypergraph& b) {
    if (a.n() != b.n() || a.edge_count() != b.edge_count())
        return false;
    const auto be = edge_set(b);
    std::vector<int> perm(static_cast<std::size_t>(a.n()));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        if (image(a, perm) == be)
            return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

inline Rational lubell(int n, const std::vector<Edge>& edges) {
    Rational total = 0;
    for (const auto& e : edges) {
        // 1 / C(n, r) via the falling-factorial product.
        Rational inv = 1;
        for (std::size_t i = 0; i < e.size(); ++i)
            inv *= Rational(static_cast<long long>(i + 1), static_cast<long long>(n - static_cast<int>(i)));
        total += inv;
    }
    return total;
}

/// All subsets of 0..n-1 whose size lies in `sizes`.
inline std::vector<Edge> possible_edges(int n, const std::vector<int>& sizes) {
    std::vector<Edge> out;
    for (unsigned m = 1; m < (1u << n); ++m) {
        Edge e;
        for (int v = 0; v < n; ++v)
            if (m >> v & 1)
                e.push_back(v);
        if (std::find(sizes.begin(), sizes.end(), static_cast<int>(e.size())) != sizes.end())
            out.push_back(e);
    }
    return out;
}

/// max h_n over all labeled F-free R-graphs on n vertices (2^M graphs).
inline Rational pi_n(const std::vector<Hypergraph>& family, int n, const std::vector<int>& sizes, bool induced) {
    const auto pool = possible_edges(n, sizes);
    Rational best = -1;
    for (unsigned long long s = 0; s < (1ull << pool.size()); ++s) {
        std::vector<Edge> edges;
        for (std::size_t i = 0; i < pool.size(); ++i)
            if (s >> i & 1)
                edges.push_back(pool[i]);
        Hypergraph g(n, edges);
        bool free = true;
        for (const auto& f : family)
            if (contains(g, f, induced)) {
                free = false;
                break;
            }
        if (free)
            best = std::max(best, lubell(n, edges));
    }
    return best;
}

inline Hypergraph random_graph(std::mt19937_64& rng, int n, const std::vector<int>& sizes, double p) {
    std::bernoulli_distribution keep(p);
    std::vector<Edge> edges;
    for (const auto& e : possible_edges(n, sizes))
        if (keep(rng))
            edges.push_back(e);
    return Hypergraph(n, edges);
}

inline std::vector<int> random_permutation(std::mt19937_64& rng, int n) {
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

/// Grid search of f over the simplex in dimension 2 or 3 with the given step,
/// followed by a shrinking local grid refinement down to `fine`.
template <class F>
double simplex_grid_max(int dim, F&& f, double step, double fine) {
    auto eval = [&](double a, double b) {
        if (a < 0 || b < 0 || a + b > 1 + 1e-15)
            return -1e300;
        if (dim == 2)
            return f(std::vector<double>{a, 1 - a});
        return f(std::vector<double>{a, b, std::max(0.0, 1 - a - b)});
    };
    double best = -1e300, ba = 0, bb = 0;
    const int steps = static_cast<int>(std::round(1.0 / step));
    for (int i = 0; i <= steps; ++i)
        for (int j = 0; j <= (dim == 2 ? 0 : steps - i); ++j) {
            const double a = i * step, b = dim == 2 ? 0.0 : j * step;
            const double v = eval(a, b);
            if (v > best) {
                best = v;
                ba = a;
                bb = b;
            }
        }
    for (double h = step / 2; h >= fine; h /= 2) {
        bool improved = true;
        while (improved) {
            improved = false;
            for (int da = -1; da <= 1; ++da)
                for (int db = (dim == 2 ? 0 : -1); db <= (dim == 2 ? 0 : 1); ++db) {
                    const double v = eval(ba + da * h, bb + db * h);
                    if (v > best) {
                        best = v;
                        ba += da * h;
                        bb += db * h;
                        improved = true;
                    }
                }
        }
    }
    return best;
}

} // namespace oracle
