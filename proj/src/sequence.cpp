#include "turanlab/sequence.hpp"

#include "turanlab/errors.hpp"
#include "turanlab/named.hpp"
#include "turanlab/parallel.hpp"
#include "turanlab/turan.hpp"

#include <boost/container_hash/hash.hpp>

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <unordered_set>

namespace turanlab {

const char* to_string(GeneratorKind k) noexcept {
    switch (k) {
    case GeneratorKind::blowup:
        return "blowup";
    case GeneratorKind::turan:
        return "turan";
    case GeneratorKind::union_of:
        return "union";
    case GeneratorKind::constant:
        return "constant";
    case GeneratorKind::complete:
        return "complete";
    }
    return "?";
}

namespace {

void check_schedule(int start, int step) {
    if (start < 1)
        throw ValidationError("generator start must be >= 1");
    if (step < 1)
        throw ValidationError("generator step must be >= 1 (vertex counts strictly increase)");
}

} // namespace

std::vector<int> round_proportions(int n, const std::vector<Rational>& x) {
    if (n < 0)
        throw ValidationError("vertex count must be non-negative");
    Rational sum = 0;
    for (const auto& v : x) {
        if (v < 0)
            throw ValidationError("proportions must be non-negative");
        sum += v;
    }
    if (x.empty() || sum != 1)
        throw ValidationError("proportions must sum to 1");
    std::vector<int> out(x.size());
    std::vector<Rational> frac(x.size());
    int assigned = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const Rational scaled = x[i] * n;
        const BigInt whole = numerator(scaled) / denominator(scaled);
        out[i] = whole.convert_to<int>();
        frac[i] = scaled - Rational(whole);
        assigned += out[i];
    }
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return frac[a] > frac[b]; });
    for (int r = 0; r < n - assigned; ++r)
        ++out[order[static_cast<std::size_t>(r)]];
    return out;
}

SequenceGenerator SequenceGenerator::blowup(Hypergraph h, std::vector<Rational> proportions, int start, int step) {
    check_schedule(start, step);
    if (static_cast<int>(proportions.size()) != h.n())
        throw ValidationError("need one proportion per vertex of the base graph");
    round_proportions(0, proportions); // validates
    SequenceGenerator g;
    g.kind_ = GeneratorKind::blowup;
    g.base_ = std::move(h);
    g.proportions_ = std::move(proportions);
    g.start_ = start;
    g.step_ = step;
    return g;
}

SequenceGenerator SequenceGenerator::turan(int parts, int start, int step) {
    check_schedule(start, step);
    if (parts < 1)
        throw ValidationError("Turan generator needs parts >= 1");
    SequenceGenerator g;
    g.kind_ = GeneratorKind::turan;
    g.parts_ = parts;
    g.start_ = start;
    g.step_ = step;
    return g;
}

SequenceGenerator SequenceGenerator::union_of(SequenceGenerator a, SequenceGenerator b) {
    if (a.start() != b.start() || a.step() != b.step())
        throw ValidationError("union generators must share start and step");
    const auto ra = a.declared_sizes(), rb = b.declared_sizes();
    for (int r : ra)
        if (std::find(rb.begin(), rb.end(), r) != rb.end())
            throw ValidationError("union generators must use disjoint edge sizes (both use " + std::to_string(r) + ")");
    SequenceGenerator g;
    g.kind_ = GeneratorKind::union_of;
    g.start_ = a.start();
    g.step_ = a.step();
    g.left_ = std::make_shared<const SequenceGenerator>(std::move(a));
    g.right_ = std::make_shared<const SequenceGenerator>(std::move(b));
    return g;
}

SequenceGenerator SequenceGenerator::constant(Hypergraph h, int start, int step) {
    check_schedule(start, step);
    if (start < h.n())
        throw ValidationError("constant generator must start at >= " + std::to_string(h.n()) + " vertices");
    SequenceGenerator g;
    g.kind_ = GeneratorKind::constant;
    g.base_ = std::move(h);
    g.start_ = start;
    g.step_ = step;
    return g;
}

SequenceGenerator SequenceGenerator::complete(EdgeTypeSet sizes, int start, int step) {
    check_schedule(start, step);
    SequenceGenerator g;
    g.kind_ = GeneratorKind::complete;
    g.sizes_ = std::move(sizes);
    g.start_ = start;
    g.step_ = step;
    return g;
}

int SequenceGenerator::vertices(int i) const {
    if (i < 0)
        throw ValidationError("member index must be non-negative");
    const long long n = start_ + static_cast<long long>(step_) * i;
    if (n > kMaxMemberVertices)
        throw UnsupportedSize("member " + std::to_string(i) + " would have " + std::to_string(n) +
                              " vertices; the limit is " + std::to_string(kMaxMemberVertices));
    return static_cast<int>(n);
}

Hypergraph SequenceGenerator::member(int i) const {
    const int n = vertices(i);
    switch (kind_) {
    case GeneratorKind::blowup: {
        const auto sizes = round_proportions(n, proportions_);
        return blow_up(base_, sizes);
    }
    case GeneratorKind::turan:
        return named::turan_graph(n, parts_);
    case GeneratorKind::union_of:
        return disjoint_type_union(left_->member(i), right_->member(i));
    case GeneratorKind::constant:
        return Hypergraph(n, base_.edges());
    case GeneratorKind::complete:
        return named::complete(n, sizes_);
    }
    throw ValidationError("unknown generator kind");
}

std::vector<int> SequenceGenerator::declared_sizes() const {
    switch (kind_) {
    case GeneratorKind::blowup:
    case GeneratorKind::constant:
        return base_.edge_sizes();
    case GeneratorKind::turan:
        return {2};
    case GeneratorKind::complete:
        return sizes_.sizes();
    case GeneratorKind::union_of: {
        auto out = left_->declared_sizes();
        const auto more = right_->declared_sizes();
        out.insert(out.end(), more.begin(), more.end());
        std::sort(out.begin(), out.end());
        return out;
    }
    }
    return {};
}

DensityEstimate density_estimate(const SequenceGenerator& gen, int i_max) {
    if (i_max < 0)
        throw ValidationError("i_max must be >= 0");
    gen.vertices(i_max); // fail early past the size limit
    DensityEstimate out;
    for (int i = 0; i <= i_max; ++i) {
        out.vertices.push_back(gen.vertices(i));
        out.lubell.push_back(lubell(gen.member(i)));
    }
    out.last = out.lubell.back();
    if (out.lubell.size() >= 2)
        out.last_difference = out.lubell.back() - out.lubell[out.lubell.size() - 2];
    return out;
}

bool sigma_exhaustive(int n, int t) {
    return t <= 8 && n <= 60 && binomial(n, t) <= binomial(40, 6);
}

namespace {

// Lubell value of an induced t-subgraph as an integer over the common
// denominator lcm_r C(t, r).
struct Scale {
    std::int64_t denominator = 1;
    std::vector<std::int64_t> weight; // by edge size

    Scale(const std::vector<int>& sizes, int t) : weight(static_cast<std::size_t>(t) + 1, 0) {
        for (int r : sizes)
            if (r <= t)
                denominator = std::lcm(denominator, binomial(t, r).convert_to<std::int64_t>());
        for (int r : sizes)
            if (r <= t)
                weight[static_cast<std::size_t>(r)] = denominator / binomial(t, r).convert_to<std::int64_t>();
    }
};

struct Best {
    std::int64_t score = -1;
    std::vector<int> subset;
};

// Depth-first scan of t-subsets of a graph on <= 60 vertices in
// lexicographic order, updating the score one vertex at a time.
class SubsetScanner {
  public:
    SubsetScanner(const Hypergraph& g, int t, const Scale& scale)
        : n_(g.n()), t_(t), scale_(scale), adj_(static_cast<std::size_t>(g.n()), 0),
          higher_(static_cast<std::size_t>(g.n())) {
        for (const auto& e : g.edges()) {
            const int r = static_cast<int>(e.size());
            if (r > t)
                continue;
            const int top = e.back();
            if (r == 1) {
                loops_ |= VertexMask{1} << top;
            } else if (r == 2) {
                adj_[static_cast<std::size_t>(e[1])] |= VertexMask{1} << e[0];
            } else {
                VertexMask others = 0;
                for (std::size_t k = 0; k + 1 < e.size(); ++k)
                    others |= VertexMask{1} << e[k];
                higher_[static_cast<std::size_t>(top)].emplace_back(others, r);
            }
        }
        for (int r : g.edge_sizes())
            if (r <= t)
                ceiling_ += scale_.denominator;
    }

    std::int64_t ceiling() const noexcept { return ceiling_; }

    void scan_from(int lead, Best& best, std::uint64_t& evaluated) const {
        std::vector<int> chosen{lead};
        descend(lead + 1, VertexMask{1} << lead, gain(lead, 0), chosen, best, evaluated);
    }

  private:
    std::int64_t gain(int v, VertexMask inside) const {
        std::int64_t g = 0;
        const auto& w = scale_.weight;
        if (loops_ >> v & 1)
            g += w[1];
        if (t_ >= 2)
            g += std::popcount(adj_[static_cast<std::size_t>(v)] & inside) * w[2];
        for (const auto& [others, r] : higher_[static_cast<std::size_t>(v)])
            if ((others & inside) == others)
                g += w[static_cast<std::size_t>(r)];
        return g;
    }

    void descend(int next, VertexMask inside, std::int64_t score, std::vector<int>& chosen, Best& best,
                 std::uint64_t& evaluated) const {
        if (static_cast<int>(chosen.size()) == t_) {
            ++evaluated;
            if (score > best.score) {
                best.score = score;
                best.subset = chosen;
            }
            return;
        }
        const int need = t_ - static_cast<int>(chosen.size());
        for (int v = next; v <= n_ - need; ++v) {
            if (best.score == ceiling_)
                return; // nothing later can beat the maximum possible value
            chosen.push_back(v);
            descend(v + 1, inside | (VertexMask{1} << v), score + gain(v, inside), chosen, best, evaluated);
            chosen.pop_back();
        }
    }

    int n_, t_;
    const Scale& scale_;
    VertexMask loops_ = 0;
    std::vector<VertexMask> adj_;
    std::vector<std::vector<std::pair<VertexMask, int>>> higher_;
    std::int64_t ceiling_ = 0;
};

struct EdgeHash {
    std::size_t operator()(const Edge& e) const noexcept { return boost::hash_range(e.begin(), e.end()); }
};

// Scores random t-subsets by looking up every r-subset of the sample.
class SubsetSampler {
  public:
    SubsetSampler(const Hypergraph& g, int t, const Scale& scale) : n_(g.n()), t_(t), scale_(scale) {
        std::uint64_t lookups = 0;
        for (int r : g.edge_sizes())
            if (r <= t) {
                sizes_.push_back(r);
                lookups += binomial(t, r).convert_to<std::uint64_t>();
            }
        if (lookups > 100000)
            throw UnsupportedSize("t = " + std::to_string(t) + " is too large for sampled evaluation");
        for (const auto& e : g.edges())
            if (static_cast<int>(e.size()) <= t)
                edges_.insert(e);
    }

    void run(std::uint64_t seed, std::uint64_t samples, Best& best, std::uint64_t& evaluated) const {
        std::mt19937_64 rng(seed);
        std::vector<int> pick;
        pick.reserve(static_cast<std::size_t>(t_));
        for (std::uint64_t s = 0; s < samples; ++s) {
            // Floyd's algorithm: uniform t-subset of 0..n-1.
            pick.clear();
            for (int j = n_ - t_; j < n_; ++j) {
                const int r = std::uniform_int_distribution<int>(0, j)(rng);
                pick.push_back(std::find(pick.begin(), pick.end(), r) == pick.end() ? r : j);
            }
            std::sort(pick.begin(), pick.end());
            const auto score = evaluate(pick);
            ++evaluated;
            if (score > best.score || (score == best.score && pick < best.subset)) {
                best.score = score;
                best.subset = pick;
            }
        }
    }

  private:
    std::int64_t evaluate(const std::vector<int>& subset) const {
        std::int64_t score = 0;
        Edge e;
        for (int r : sizes_) {
            std::vector<int> idx(static_cast<std::size_t>(r));
            std::iota(idx.begin(), idx.end(), 0);
            while (true) {
                e.clear();
                for (int k : idx)
                    e.push_back(subset[static_cast<std::size_t>(k)]);
                if (edges_.count(e))
                    score += scale_.weight[static_cast<std::size_t>(r)];
                int i = r - 1;
                while (i >= 0 && idx[static_cast<std::size_t>(i)] == t_ - r + i)
                    --i;
                if (i < 0)
                    break;
                ++idx[static_cast<std::size_t>(i)];
                for (int j = i + 1; j < r; ++j)
                    idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
            }
        }
        return score;
    }

    int n_, t_;
    const Scale& scale_;
    std::vector<int> sizes_;
    std::unordered_set<Edge, EdgeHash> edges_;
};

constexpr std::uint64_t kSampleChunks = 64;

struct MemberScan {
    int index;
    Hypergraph graph;
    Scale scale;
    bool exhaustive;
    std::optional<SubsetScanner> scanner;
    std::optional<SubsetSampler> sampler;
};

struct Task {
    std::size_t member;
    int part; // leading vertex or sample chunk
};

UpperDensityReport scan_members(std::vector<std::pair<int, Hypergraph>> graphs, int t, const SigmaConfig& config) {
    if (t < 1)
        throw ValidationError("t must be >= 1");
    std::vector<MemberScan> members;
    members.reserve(graphs.size());
    UpperDensityReport out;
    out.t = t;
    for (auto& [index, g] : graphs) {
        out.h_values.emplace_back(index, lubell(g));
        if (g.n() < t)
            continue;
        const bool exhaustive = !config.force_sampled && sigma_exhaustive(g.n(), t);
        auto sizes = g.edge_sizes();
        members.push_back(MemberScan{index, std::move(g), Scale(sizes, t), exhaustive, std::nullopt, std::nullopt});
    }
    if (members.empty())
        throw ValidationError("no member has at least t = " + std::to_string(t) + " vertices");

    std::vector<Task> tasks;
    for (std::size_t m = 0; m < members.size(); ++m) {
        auto& ms = members[m];
        if (ms.exhaustive) {
            ms.scanner.emplace(ms.graph, t, ms.scale);
            for (int lead = 0; lead <= ms.graph.n() - t; ++lead)
                tasks.push_back({m, lead});
        } else {
            out.exhaustive = false;
            ms.sampler.emplace(ms.graph, t, ms.scale);
            for (std::uint64_t c = 0; c < kSampleChunks; ++c)
                tasks.push_back({m, static_cast<int>(c)});
        }
    }

    std::vector<Best> results(tasks.size());
    std::vector<std::uint64_t> evaluated(tasks.size(), 0);
    parallel_for(tasks.size(), config.threads, [&](std::size_t i) {
        const auto& ms = members[tasks[i].member];
        if (ms.exhaustive) {
            ms.scanner->scan_from(tasks[i].part, results[i], evaluated[i]);
        } else {
            const auto c = static_cast<std::uint64_t>(tasks[i].part);
            const std::uint64_t share = config.samples / kSampleChunks + (c < config.samples % kSampleChunks ? 1 : 0);
            const auto seed = mix_seed(mix_seed(config.seed, static_cast<std::uint64_t>(ms.index)), c);
            ms.sampler->run(seed, share, results[i], evaluated[i]);
        }
    });

    // Tasks are ordered by member, then leading vertex (or chunk); a strict
    // improvement is needed to displace an earlier result.
    bool found = false;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        out.subsets_evaluated += evaluated[i];
        if (results[i].score < 0)
            continue;
        const auto& ms = members[tasks[i].member];
        const Rational value(results[i].score, ms.scale.denominator);
        const bool better = !found || value > out.sigma ||
                            (value == out.sigma && ms.index == out.member && results[i].subset < out.subset);
        if (better) {
            out.sigma = value;
            out.member = ms.index;
            out.subset = results[i].subset;
            found = true;
        }
    }
    return out;
}

} // namespace

UpperDensityReport sigma_t(const SequenceGenerator& gen, int t, int i_first, int i_last, const SigmaConfig& config) {
    if (i_first < 0 || i_last < i_first)
        throw ValidationError("member range must satisfy 0 <= i_first <= i_last");
    std::vector<std::pair<int, Hypergraph>> graphs;
    for (int i = i_first; i <= i_last; ++i)
        graphs.emplace_back(i, gen.member(i));
    return scan_members(std::move(graphs), t, config);
}

UpperDensityReport sigma_t(const Hypergraph& g, int t, const SigmaConfig& config) {
    return scan_members({{0, g}}, t, config);
}

} // namespace turanlab
