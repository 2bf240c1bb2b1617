#include "turanlab/turan.hpp"

#include "turanlab/errors.hpp"
#include "turanlab/parallel.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>

namespace turanlab {

const char* to_string(ContainmentMode mode) noexcept {
    return mode == ContainmentMode::subgraph ? "subgraph" : "induced";
}

ContainmentMode parse_containment_mode(const std::string& text) {
    if (text == "subgraph")
        return ContainmentMode::subgraph;
    if (text == "induced")
        return ContainmentMode::induced;
    throw ValidationError("unknown containment mode '" + text + "' (expected subgraph or induced)");
}

ForbiddenFamily::ForbiddenFamily(ContainmentMode mode, std::vector<Hypergraph> members, EdgeTypeSet ambient)
    : mode_(mode), ambient_(std::move(ambient)) {
    std::vector<std::string> keys;
    for (auto& m : members) {
        for (int r : m.edge_sizes())
            if (!ambient_.contains(r))
                throw ValidationError("family member uses edge size " + std::to_string(r) +
                                      " outside the ambient set");
        if (m.n() > kMaxCanonicalVertices) {
            // Too large to canonicalize; only exact duplicates are dropped.
            if (std::find(members_.begin(), members_.end(), m) == members_.end())
                members_.push_back(std::move(m));
            continue;
        }
        auto key = canonical_form(m);
        if (std::find(keys.begin(), keys.end(), key) != keys.end())
            continue;
        keys.push_back(std::move(key));
        members_.push_back(canonical_graph(m));
    }
}

int ForbiddenFamily::max_member_edge_size() const noexcept {
    int out = 0;
    for (const auto& m : members_)
        for (const auto& e : m.edges())
            out = std::max(out, static_cast<int>(e.size()));
    return out;
}

bool ForbiddenFamily::admits(const Hypergraph& g) const {
    for (const auto& m : members_) {
        if (m.n() > g.n())
            continue;
        const bool found = mode_ == ContainmentMode::subgraph ? contains_subgraph(g, m) : contains_induced(g, m);
        if (found)
            return false;
    }
    return true;
}

bool DensityBound::is_non_increasing() const {
    for (std::size_t i = 1; i < records.size(); ++i)
        if (records[i].pi_n > records[i - 1].pi_n)
            return false;
    return true;
}

std::uint64_t possible_edge_count(int n, const EdgeTypeSet& r) {
    std::uint64_t total = 0;
    for (int k : r.sizes())
        if (k <= n)
            total += binomial(n, k).convert_to<std::uint64_t>();
    return total;
}

void check_enumeration_size(int n, const EdgeTypeSet& r, const SearchConfig& config) {
    if (n < 1)
        throw ValidationError("vertex count must be >= 1");
    if (n > kMaxEnumerationVertices)
        throw UnsupportedSize("exhaustive enumeration supports at most " +
                              std::to_string(kMaxEnumerationVertices) + " vertices");
    double factorial = 1;
    for (int i = 2; i <= n; ++i)
        factorial *= i;
    const double estimate = std::ldexp(1.0, static_cast<int>(possible_edge_count(n, r))) / factorial;
    if (estimate > config.max_classes)
        throw UnsupportedSize("about " + std::to_string(static_cast<long long>(estimate)) +
                              " isomorphism classes on " + std::to_string(n) +
                              " vertices; exceeds the enumeration limit");
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// A labeled graph on at most 8 vertices, edges as masks. The code of a graph
// is its indicator string over allowed masks taken in increasing integer
// order; class representatives are the graphs with the largest code.
struct Node {
    std::array<std::uint64_t, 4> bits{};
    std::vector<VertexMask> masks; // increasing
    int last = -1;                 // index of the largest mask in positions
    std::int64_t score = 0;

    bool has(unsigned m) const noexcept { return bits[m >> 6] >> (m & 63) & 1; }
};

class Orderly {
  public:
    Orderly(int n, const EdgeTypeSet& r) : n_(n) {
        allowed_.assign(std::size_t{1} << n, false);
        weight_.assign(static_cast<std::size_t>(n) + 1, 0);
        // Lubell numerators over the common denominator lcm_r C(n, r).
        std::int64_t lcm = 1;
        for (int k : r.sizes())
            if (k <= n)
                lcm = std::lcm(lcm, binomial(n, k).convert_to<std::int64_t>());
        denominator_ = lcm;
        for (int k : r.sizes())
            if (k <= n)
                weight_[static_cast<std::size_t>(k)] = lcm / binomial(n, k).convert_to<std::int64_t>();
        for (unsigned m = 1; m < (1u << n); ++m)
            if (r.contains(std::popcount(m))) {
                allowed_[m] = true;
                positions_.push_back(m);
            }
    }

    int n() const noexcept { return n_; }
    std::int64_t denominator() const noexcept { return denominator_; }

    template <class Emit>
    void for_each_child(const Node& g, Emit&& emit) const {
        for (auto p = static_cast<std::size_t>(g.last + 1); p < positions_.size(); ++p) {
            Node child = g;
            const unsigned m = positions_[p];
            child.bits[m >> 6] |= std::uint64_t{1} << (m & 63);
            child.masks.push_back(m);
            child.last = static_cast<int>(p);
            child.score += weight_[static_cast<std::size_t>(std::popcount(m))];
            if (is_canonical(child))
                emit(std::move(child));
        }
    }

    bool is_canonical(const Node& g) const {
        std::array<std::uint16_t, 256> img{};
        return !exceeded(g, 0, 0, img);
    }

  private:
    // Assigns graph vertices to labels 0, 1, ... in turn. With labels
    // 0..j-1 fixed the relabeled code is fixed on all masks below 2^j, so
    // each level compares the block [2^j, 2^(j+1)) and either finds a
    // larger code, prunes a smaller one, or descends.
    bool exceeded(const Node& g, int j, unsigned used, std::array<std::uint16_t, 256>& img) const {
        if (j == n_)
            return false;
        const unsigned lo = 1u << j;
        for (int v = 0; v < n_; ++v) {
            if (used >> v & 1)
                continue;
            int cmp = 0;
            for (unsigned r = 0; r < lo; ++r) {
                const unsigned m = lo + r;
                img[m] = static_cast<std::uint16_t>(img[r] | (1u << v));
                if (!allowed_[m])
                    continue;
                const bool mine = g.has(img[m]), theirs = g.has(m);
                if (mine != theirs) {
                    cmp = mine ? 1 : -1;
                    break;
                }
            }
            if (cmp > 0)
                return true;
            if (cmp == 0 && exceeded(g, j + 1, used | (1u << v), img))
                return true;
        }
        return false;
    }

    int n_;
    std::vector<bool> allowed_;
    std::vector<unsigned> positions_;
    std::vector<std::int64_t> weight_;
    std::int64_t denominator_ = 1;
};

template <class Visit>
void descend(const Orderly& o, const Node& g, Visit& visit) {
    o.for_each_child(g, [&](Node&& child) {
        if (visit(child))
            descend(o, child, visit);
    });
}

// Runs visit(acc, node) over the orderly tree; visit returns whether to
// descend. Accumulators are per task and merged in task order.
template <class Acc, class Visit, class Merge>
Acc traverse(const Orderly& o, int threads, Visit&& visit, Merge&& merge) {
    Acc head;
    std::vector<Node> frontier;
    {
        Node root;
        if (visit(head, root))
            frontier.push_back(root);
    }
    const std::size_t target = threads > 1 ? static_cast<std::size_t>(threads) * 16 : 1;
    while (!frontier.empty() && frontier.size() < target) {
        std::vector<Node> next;
        for (const auto& g : frontier)
            o.for_each_child(g, [&](Node&& child) {
                if (visit(head, child))
                    next.push_back(std::move(child));
            });
        if (next.empty()) {
            frontier.clear();
            break;
        }
        frontier = std::move(next);
    }
    std::vector<Acc> parts(frontier.size());
    parallel_for(frontier.size(), threads, [&](std::size_t i) {
        auto bound = [&](const Node& g) { return visit(parts[i], g); };
        descend(o, frontier[i], bound);
    });
    for (auto& part : parts)
        merge(head, std::move(part));
    return head;
}

Hypergraph to_graph(int n, const Node& g) {
    return Hypergraph::from_masks(n, g.masks);
}

void sort_witnesses(std::vector<Hypergraph>& graphs) {
    std::vector<std::pair<std::string, Hypergraph>> keyed;
    for (auto& g : graphs) {
        if (g.n() <= kMaxCanonicalVertices) {
            auto c = canonical_graph(g);
            keyed.emplace_back(canonical_form(c), std::move(c));
        } else {
            keyed.emplace_back(std::string{}, std::move(g));
        }
    }
    std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    graphs.clear();
    for (std::size_t i = 0; i < keyed.size(); ++i) {
        if (i > 0 && !keyed[i].first.empty() && keyed[i].first == keyed[i - 1].first)
            continue;
        graphs.push_back(std::move(keyed[i].second));
    }
}

void check_ambient_graph(const Hypergraph& g, int n, const EdgeTypeSet& ambient) {
    if (g.n() != n)
        throw ValidationError("candidate has " + std::to_string(g.n()) + " vertices, expected " + std::to_string(n));
    for (int r : g.edge_sizes())
        if (!ambient.contains(r))
            throw ValidationError("candidate uses edge size " + std::to_string(r) + " outside the ambient set");
}

std::vector<Edge> all_edges(int n, const EdgeTypeSet& r) {
    std::vector<Edge> out;
    for (int k : r.sizes()) {
        if (k > n)
            continue;
        Edge e(static_cast<std::size_t>(k));
        std::iota(e.begin(), e.end(), 0);
        while (true) {
            out.push_back(e);
            int i = k - 1;
            while (i >= 0 && e[static_cast<std::size_t>(i)] == n - k + i)
                --i;
            if (i < 0)
                break;
            ++e[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                e[static_cast<std::size_t>(j)] = e[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return out;
}

} // namespace

std::uint64_t enumerate_graphs(int n, const EdgeTypeSet& r, const std::function<void(const Hypergraph&)>& visit,
                               const SearchConfig& config) {
    check_enumeration_size(n, r, config);
    const Orderly o(n, r);
    std::uint64_t count = 0;
    auto step = [&](const Node& g) {
        ++count;
        visit(to_graph(n, g));
        return true;
    };
    Node root;
    step(root);
    descend(o, root, step);
    return count;
}

std::vector<Hypergraph> enumerate_graphs(int n, const EdgeTypeSet& r, const SearchConfig& config) {
    std::vector<Hypergraph> out;
    enumerate_graphs(n, r, [&](const Hypergraph& g) { out.push_back(g); }, config);
    return out;
}

DensityRecord pi_n(const ForbiddenFamily& family, int n, const SearchConfig& config) {
    check_enumeration_size(n, family.ambient(), config);
    const auto start = Clock::now();
    const Orderly o(n, family.ambient());
    const bool monotone = family.mode() == ContainmentMode::subgraph;

    struct Acc {
        std::uint64_t count = 0;
        std::int64_t best = -1;
        std::vector<Hypergraph> witnesses;
    };
    auto visit = [&](Acc& acc, const Node& g) {
        ++acc.count;
        auto graph = to_graph(n, g);
        if (!family.admits(graph))
            return !monotone; // every supergraph contains the same copy
        if (g.score > acc.best) {
            acc.best = g.score;
            acc.witnesses.clear();
        }
        if (g.score == acc.best)
            acc.witnesses.push_back(std::move(graph));
        return true;
    };
    auto merge = [](Acc& into, Acc&& part) {
        into.count += part.count;
        if (part.best > into.best) {
            into.best = part.best;
            into.witnesses = std::move(part.witnesses);
        } else if (part.best == into.best) {
            for (auto& w : part.witnesses)
                into.witnesses.push_back(std::move(w));
        }
    };
    auto acc = traverse<Acc>(o, config.threads, visit, merge);
    if (acc.best < 0)
        throw MathError("no F-free graph on " + std::to_string(n) + " vertices");

    DensityRecord out;
    out.n = n;
    out.pi_n = Rational(acc.best, o.denominator());
    out.extremal = std::move(acc.witnesses);
    sort_witnesses(out.extremal);
    out.graphs_enumerated = acc.count;
    out.elapsed = seconds_since(start);
    return out;
}

DensityRecord pi_n_candidates(const ForbiddenFamily& family, int n, const std::vector<Hypergraph>& candidates) {
    const auto start = Clock::now();
    DensityRecord out;
    out.n = n;
    out.exhaustive = false;
    bool found = false;
    for (const auto& g : candidates) {
        check_ambient_graph(g, n, family.ambient());
        ++out.graphs_enumerated;
        if (!family.admits(g))
            continue;
        const auto value = lubell(g);
        if (!found || value > out.pi_n) {
            out.pi_n = value;
            out.extremal.clear();
            found = true;
        }
        if (value == out.pi_n)
            out.extremal.push_back(g);
    }
    if (!found)
        throw MathError("no candidate is F-free");
    sort_witnesses(out.extremal);
    out.elapsed = seconds_since(start);
    return out;
}

DensityRecord pi_n_heuristic(const ForbiddenFamily& family, int n, const HeuristicConfig& config) {
    if (n < 1)
        throw ValidationError("vertex count must be >= 1");
    if (n > 64)
        throw UnsupportedSize("heuristic search supports at most 64 vertices");
    if (config.restarts < 1 || config.steps < 0)
        throw ValidationError("restarts must be >= 1 and steps >= 0");
    const auto pool = all_edges(n, family.ambient());
    if (pool.size() > 200000)
        throw UnsupportedSize("too many possible edges for heuristic search");
    const auto start = Clock::now();

    std::vector<Rational> weight(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i)
        weight[i] = Rational(BigInt(1), binomial(n, static_cast<std::int64_t>(pool[i].size())));

    struct Run {
        Rational value = -1;
        std::vector<Hypergraph> best;
        std::uint64_t evaluated = 0;
    };
    std::vector<Run> runs(static_cast<std::size_t>(config.restarts));

    parallel_for(runs.size(), config.threads, [&](std::size_t run_index) {
        std::mt19937_64 rng(mix_seed(config.seed, run_index));
        Run& run = runs[run_index];
        std::vector<char> in(pool.size(), 0);
        auto build = [&] {
            std::vector<Edge> edges;
            for (std::size_t i = 0; i < pool.size(); ++i)
                if (in[i])
                    edges.push_back(pool[i]);
            return Hypergraph(n, std::move(edges));
        };
        auto value_of = [&] {
            Rational v = 0;
            for (std::size_t i = 0; i < pool.size(); ++i)
                if (in[i])
                    v += weight[i];
            return v;
        };
        std::vector<std::size_t> order(pool.size());
        std::iota(order.begin(), order.end(), 0);
        // Adds edges in random order while the graph stays admissible. In
        // induced mode an inadmissible graph may still gain edges, since
        // adding one can destroy an induced copy.
        auto fill = [&](std::size_t skip) {
            std::shuffle(order.begin(), order.end(), rng);
            bool ok = family.admits(build());
            ++run.evaluated;
            for (std::size_t i : order) {
                if (in[i] || i == skip)
                    continue;
                in[i] = 1;
                const bool next_ok = family.admits(build());
                ++run.evaluated;
                if (next_ok || (!ok && family.mode() == ContainmentMode::induced))
                    ok = next_ok;
                else
                    in[i] = 0;
            }
            return ok;
        };
        auto record = [&](bool ok) {
            if (!ok)
                return;
            const auto v = value_of();
            if (v > run.value) {
                run.value = v;
                run.best.clear();
            }
            if (v == run.value)
                run.best.push_back(build());
        };

        bool ok = fill(pool.size());
        record(ok);
        std::uniform_int_distribution<std::size_t> pick(0, pool.empty() ? 0 : pool.size() - 1);
        for (int step = 0; step < config.steps && !pool.empty(); ++step) {
            std::vector<std::size_t> present;
            for (std::size_t i = 0; i < pool.size(); ++i)
                if (in[i])
                    present.push_back(i);
            if (present.empty())
                break;
            const std::size_t drop = present[pick(rng) % present.size()];
            const auto saved = in;
            const auto before = ok ? value_of() : Rational(-1);
            in[drop] = 0;
            const bool now_ok = fill(drop);
            if (now_ok && value_of() >= before) {
                ok = now_ok;
                record(ok);
            } else {
                in = saved;
            }
        }
    });

    DensityRecord out;
    out.n = n;
    out.exhaustive = false;
    Rational best = -1;
    for (auto& run : runs) {
        out.graphs_enumerated += run.evaluated;
        if (run.value > best) {
            best = run.value;
            out.extremal.clear();
        }
        if (run.value == best)
            for (auto& g : run.best)
                out.extremal.push_back(std::move(g));
    }
    if (best < 0)
        throw MathError("heuristic search found no F-free graph on " + std::to_string(n) + " vertices");
    out.pi_n = best;
    sort_witnesses(out.extremal);
    out.elapsed = seconds_since(start);
    return out;
}

DensityBound density_sequence(const ForbiddenFamily& family, int n_max, const SearchConfig& config) {
    int n0 = family.members().empty() ? family.ambient().max() : family.max_member_edge_size();
    n0 = std::max(n0, 1);
    if (n_max < n0)
        throw ValidationError("n_max must be at least " + std::to_string(n0));
    check_enumeration_size(n_max, family.ambient(), config);
    DensityBound out;
    for (int n = n0; n <= n_max; ++n)
        out.records.push_back(pi_n(family, n, config));
    if (!out.is_non_increasing())
        throw MathError("computed pi_n sequence is not non-increasing");
    return out;
}

Hypergraph disjoint_type_union(const Hypergraph& g1, const Hypergraph& g2) {
    if (g1.n() != g2.n())
        throw ValidationError("graphs must share a vertex set");
    const auto r1 = g1.edge_sizes(), r2 = g2.edge_sizes();
    for (int r : r1)
        if (std::find(r2.begin(), r2.end(), r) != r2.end())
            throw ValidationError("edge-size sets overlap at " + std::to_string(r));
    auto edges = g1.edges();
    edges.insert(edges.end(), g2.edges().begin(), g2.edges().end());
    return Hypergraph(g1.n(), std::move(edges));
}

} // namespace turanlab
