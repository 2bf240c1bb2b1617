#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "../support/oracles.hpp"
#include "turanlab/errors.hpp"
#include "turanlab/hypergraph.hpp"
#include "turanlab/named.hpp"

#include <set>

using namespace turanlab;

namespace {

const EdgeTypeSet k12{1, 2};
const EdgeTypeSet k2{2};

Hypergraph path3() { return Hypergraph(3, {{0, 1}, {1, 2}}); }

} // namespace

TEST_CASE("edge type set invariants") {
    CHECK(EdgeTypeSet({2, 1}).sizes() == std::vector<int>{1, 2});
    CHECK_THROWS_AS(EdgeTypeSet(std::vector<int>{}), ValidationError);
    CHECK_THROWS_AS(EdgeTypeSet({0, 1}), ValidationError);
    CHECK_THROWS_AS(EdgeTypeSet({2, 2}), ValidationError);
    CHECK_THROWS_AS(EdgeTypeSet({17}), ValidationError);
}

TEST_CASE("hypergraph validation") {
    CHECK_THROWS_AS(Hypergraph(2, {{0, 2}}), ValidationError);
    CHECK_THROWS_AS(Hypergraph(2, {{0, 1}, {1, 0}}), ValidationError);
    CHECK_THROWS_AS(Hypergraph(2, {{}}), ValidationError);
    CHECK_THROWS_AS(Hypergraph(2, {{1, 1}}), ValidationError);
    const Hypergraph g(3, {{1, 2}, {0}, {0, 1}});
    CHECK(g.edges() == std::vector<Edge>{{0}, {0, 1}, {1, 2}});
    CHECK(g.edge_sizes() == std::vector<int>{1, 2});
    CHECK(g.has_edge({2, 1}));
    CHECK_FALSE(g.has_edge({0, 2}));
}

TEST_CASE("pattern validation and embedding of hypergraphs") {
    CHECK_THROWS_AS(Pattern(2, {{0, 0}}), ValidationError);
    CHECK_THROWS_AS(Pattern(2, {{1}}), ValidationError);
    CHECK_THROWS_AS(Pattern(2, {{1, 1}, {1, 1}}), ValidationError);
    const auto p = Pattern::from_hypergraph(named::chain());
    CHECK(p.is_simple());
    CHECK(*p.as_hypergraph() == named::chain());
    CHECK_FALSE(Pattern(1, {{2}}).as_hypergraph().has_value());
}

TEST_CASE("simplex points") {
    CHECK_THROWS_AS(SimplexPoint({0.5, 0.6}), ValidationError);
    CHECK_THROWS_AS(SimplexPoint({1.5, -0.5}), ValidationError);
    CHECK(SimplexPoint({0.25, 0.0, 0.75}).support() == std::vector<int>{0, 2});
    CHECK_THROWS_AS(RationalPoint({Rational(1, 3), Rational(1, 3)}), ValidationError);
    CHECK(RationalPoint({Rational(1, 3), Rational(2, 3)}).support().size() == 2);
}

TEST_CASE("lubell examples") {
    CHECK(lubell(named::complete(2, k12)) == 2);
    CHECK(lubell(named::empty(5)) == 0);
    // 1/C(3,1) + 2/C(3,2)
    const Hypergraph g(3, {{0}, {0, 1}, {1, 2}});
    CHECK(lubell(g) == oracle::lubell(3, g.edges()));
    CHECK(lubell(g) == 1);
}

TEST_CASE("lubell is additive over edge-size layers") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        const auto g = oracle::random_graph(rng, 5, {1, 2, 3}, 0.5);
        Rational layered = 0;
        for (int r : g.edge_sizes())
            layered += Rational(BigInt(g.count_of_size(r)), binomial(g.n(), r));
        CHECK(lubell(g) == layered);
        CHECK(lubell(g) == oracle::lubell(g.n(), g.edges()));
        CHECK(lubell(g) <= static_cast<int>(g.edge_sizes().size()));
    }
}

TEST_CASE("induced subgraph examples") {
    const auto k3 = named::complete(3, k2);
    const std::vector<int> s01{0, 1};
    CHECK(induced_subgraph(k3, s01) == named::complete(2, k2));
    const std::vector<int> all{0, 1, 2};
    CHECK(induced_subgraph(path3(), all) == path3());
    const Hypergraph g(3, {{0}, {1, 2}});
    const std::vector<int> s02{0, 2};
    CHECK(induced_subgraph(g, s02) == Hypergraph(2, {{0}}));
    CHECK_THROWS_AS(induced_subgraph(g, std::vector<int>{}), ValidationError);
    CHECK_THROWS_AS(induced_subgraph(g, std::vector<int>{3}), ValidationError);
}

TEST_CASE("blow-up examples") {
    const std::vector<int> s22{2, 2};
    const auto b = blow_up(named::complete(2, k2), s22);
    CHECK(b.n() == 4);
    CHECK(b.edge_count() == 4);
    CHECK(oracle::isomorphic(b, Hypergraph(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}})));

    const std::vector<int> s23{2, 3};
    const auto c = blow_up(named::chain(), s23);
    CHECK(c.count_of_size(1) == 2);
    CHECK(c.count_of_size(2) == 6);

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const auto g = oracle::random_graph(rng, 4, {1, 2, 3}, 0.5);
        const std::vector<int> ones(4, 1);
        CHECK(blow_up(g, ones) == g);
    }

    const std::vector<int> s10{1, 0};
    CHECK(blow_up(named::chain(), s10) == Hypergraph(1, {{0}}));
    CHECK_THROWS_AS(blow_up(named::chain(), std::vector<int>{1}), ValidationError);
}

TEST_CASE("realization examples") {
    const std::vector<int> s4{4};
    CHECK(realize(Pattern(1, {{2}}), s4).edge_count() == 6);
    const std::vector<int> s10{1, 0};
    CHECK(realize(Pattern(2, {{1, 1}}), s10).edge_count() == 0);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const auto g = oracle::random_graph(rng, 3, {1, 2}, 0.6);
        const std::vector<int> s{2, 1, 3};
        CHECK(realize(Pattern::from_hypergraph(g), s) == blow_up(g, s));
    }
    // {1 v0, 2 v1} on classes (2, 3): 2 * C(3,2) edges of size 3.
    const std::vector<int> s23{2, 3};
    const auto r = realize(Pattern(2, {{1, 2}}), s23);
    CHECK(r.edge_count() == 6);
    CHECK(r.count_of_size(3) == 6);
}

TEST_CASE("subgraph containment examples") {
    const auto k3 = named::complete(3, k2);
    CHECK(contains_subgraph(k3, named::complete(2, k2)));
    CHECK_FALSE(contains_subgraph(path3(), k3));
    const std::vector<int> s22{2, 2};
    const auto host = blow_up(named::complete(2, k12), s22);
    CHECK(contains_subgraph(host, named::complete(2, k12)));
    CHECK(oracle::contains(host, named::complete(2, k12), false));

    const auto w = find_subgraph(host, named::complete(2, k12));
    REQUIRE(w.has_value());
    const auto pattern = named::complete(2, k12);
    for (const auto& e : pattern.edges()) {
        Edge img;
        for (int v : e)
            img.push_back((*w)[static_cast<std::size_t>(v)]);
        CHECK(host.has_edge(img));
    }
}

TEST_CASE("induced containment examples") {
    CHECK_FALSE(contains_induced(named::complete(3, k2), named::empty(2)));
    const auto w = find_induced(path3(), named::empty(2));
    REQUIRE(w.has_value());
    CHECK(std::set<int>(w->begin(), w->end()) == std::set<int>{0, 2});
    CHECK_FALSE(contains_induced(named::complete(2, k12), Hypergraph(2, {{0, 1}})));
    CHECK_FALSE(oracle::contains(named::complete(2, k12), Hypergraph(2, {{0, 1}}), true));
}

TEST_CASE("containment agrees with exhaustive injection oracle") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 150; ++trial) {
        const auto g = oracle::random_graph(rng, 5, {1, 2, 3}, 0.45);
        const int hn = 1 + static_cast<int>(rng() % 4);
        const auto h = oracle::random_graph(rng, hn, {1, 2, 3}, 0.4);
        CHECK(contains_subgraph(g, h) == oracle::contains(g, h, false));
        CHECK(contains_induced(g, h) == oracle::contains(g, h, true));
    }
}

TEST_CASE("induced subgraphs are contained induced") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        const auto g = oracle::random_graph(rng, 6, {1, 2}, 0.5);
        std::vector<int> s;
        for (int v = 0; v < 6; ++v)
            if (rng() % 2)
                s.push_back(v);
        if (s.empty())
            s.push_back(0);
        CHECK(contains_induced(g, induced_subgraph(g, s)));
    }
}

TEST_CASE("count embeddings examples") {
    CHECK(count_embeddings(named::complete(4, k2), named::complete(2, k2)) == 6);
    CHECK(count_embeddings(named::complete(4, k2), named::complete(3, k2)) == 4);
    CHECK(count_embeddings(named::complete(2, k12), named::chain()) == 2);
    CHECK(oracle::copies(named::complete(2, k12), named::chain()) == 2);
    CHECK_THROWS_AS(count_embeddings(named::empty(17), named::empty(1)), UnsupportedSize);

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        const auto g = oracle::random_graph(rng, 5, {1, 2}, 0.6);
        const auto h = oracle::random_graph(rng, 3, {1, 2}, 0.5);
        CHECK(count_embeddings(g, h) == oracle::copies(g, h));
    }
}

TEST_CASE("canonical form separates the 11 graphs on 4 vertices") {
    const auto pool = oracle::possible_edges(4, {2});
    std::set<std::string> forms;
    std::vector<Hypergraph> reps;
    for (unsigned s = 0; s < (1u << pool.size()); ++s) {
        std::vector<Edge> edges;
        for (std::size_t i = 0; i < pool.size(); ++i)
            if (s >> i & 1)
                edges.push_back(pool[i]);
        Hypergraph g(4, edges);
        if (forms.insert(canonical_form(g)).second)
            reps.push_back(g);
    }
    CHECK(forms.size() == 11);
    // Representatives pairwise non-isomorphic by the permutation oracle.
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = i + 1; j < reps.size(); ++j)
            CHECK_FALSE(oracle::isomorphic(reps[i], reps[j]));
}

TEST_CASE("canonical form examples and invariance") {
    CHECK(canonical_form(named::complete(3, k2)) != canonical_form(path3()));
    CHECK_THROWS_AS(canonical_form(named::empty(17)), UnsupportedSize);

    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 8);
        const auto g = oracle::random_graph(rng, n, {1, 2, 3}, n > 7 ? 0.15 : 0.35);
        const auto perm = oracle::random_permutation(rng, n);
        const auto h = relabel(g, perm);
        CHECK(canonical_form(g) == canonical_form(h));
        CHECK(canonical_graph(g) == canonical_graph(h));
    }
    // Symmetric graphs on the full 16-vertex bound stay fast.
    CHECK(canonical_form(named::empty(16)) == canonical_form(named::empty(16)));
    CHECK(canonical_form(named::turan_graph(16, 4)) ==
          canonical_form(relabel(named::turan_graph(16, 4),
                                 oracle::random_permutation(rng, 16))));
}

TEST_CASE("canonical form agrees with the permutation oracle on {1,2}-graphs") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 60; ++trial) {
        const auto a = oracle::random_graph(rng, 5, {1, 2}, 0.5);
        const auto b = oracle::random_graph(rng, 5, {1, 2}, 0.5);
        CHECK(are_isomorphic(a, b) == oracle::isomorphic(a, b));
    }
}
