#include "turanlab/hypergraph.hpp"

#include "turanlab/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>

namespace turanlab {

namespace {

bool edge_less(const Edge& a, const Edge& b) {
    if (a.size() != b.size())
        return a.size() < b.size();
    return a < b;
}

VertexMask mask_of(const Edge& e) {
    VertexMask m = 0;
    for (int v : e)
        m |= VertexMask{1} << v;
    return m;
}

Edge edge_of(VertexMask m) {
    Edge e;
    while (m) {
        e.push_back(std::countr_zero(m));
        m &= m - 1;
    }
    return e;
}

void require_mask_size(const Hypergraph& g, const char* what) {
    if (g.n() > 64)
        throw UnsupportedSize(std::string(what) + ": at most 64 vertices supported, got " +
                              std::to_string(g.n()));
}

} // namespace

// --- EdgeTypeSet --------------------------------------------------------------

EdgeTypeSet::EdgeTypeSet(std::initializer_list<int> sizes)
    : EdgeTypeSet(std::vector<int>(sizes)) {}

EdgeTypeSet::EdgeTypeSet(std::vector<int> sizes) : sizes_(std::move(sizes)) {
    if (sizes_.empty())
        throw ValidationError("edge type set must be non-empty");
    std::sort(sizes_.begin(), sizes_.end());
    if (std::adjacent_find(sizes_.begin(), sizes_.end()) != sizes_.end())
        throw ValidationError("edge type set has duplicate sizes");
    if (sizes_.front() < 1)
        throw ValidationError("edge sizes must be >= 1");
    if (sizes_.back() > kMaxEdgeSize)
        throw ValidationError("edge sizes above " + std::to_string(kMaxEdgeSize) +
                              " are not supported");
}

bool EdgeTypeSet::contains(int r) const noexcept {
    return std::binary_search(sizes_.begin(), sizes_.end(), r);
}

// --- Hypergraph ---------------------------------------------------------------

Hypergraph::Hypergraph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ < 0)
        throw ValidationError("vertex count must be non-negative");
    for (auto& e : edges_) {
        if (e.empty())
            throw ValidationError("empty edge");
        std::sort(e.begin(), e.end());
        if (std::adjacent_find(e.begin(), e.end()) != e.end())
            throw ValidationError("edge repeats a vertex");
        if (e.front() < 0 || e.back() >= n_)
            throw ValidationError("edge vertex out of range 0.." + std::to_string(n_ - 1));
    }
    std::sort(edges_.begin(), edges_.end(), edge_less);
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
        throw ValidationError("duplicate edge");
}

Hypergraph Hypergraph::from_masks(int n, std::span<const VertexMask> masks) {
    std::vector<Edge> edges;
    edges.reserve(masks.size());
    for (VertexMask m : masks)
        edges.push_back(edge_of(m));
    return Hypergraph(n, std::move(edges));
}

std::vector<int> Hypergraph::edge_sizes() const {
    std::vector<int> out;
    for (const auto& e : edges_)
        if (out.empty() || out.back() != static_cast<int>(e.size()))
            out.push_back(static_cast<int>(e.size()));
    return out;
}

std::size_t Hypergraph::count_of_size(int r) const {
    return static_cast<std::size_t>(std::count_if(
        edges_.begin(), edges_.end(), [r](const Edge& e) { return static_cast<int>(e.size()) == r; }));
}

bool Hypergraph::has_edge(const Edge& e) const {
    Edge sorted = e;
    std::sort(sorted.begin(), sorted.end());
    return std::binary_search(edges_.begin(), edges_.end(), sorted, edge_less);
}

std::vector<VertexMask> Hypergraph::masks() const {
    require_mask_size(*this, "mask conversion");
    std::vector<VertexMask> out;
    out.reserve(edges_.size());
    for (const auto& e : edges_)
        out.push_back(mask_of(e));
    return out;
}

// --- Pattern ------------------------------------------------------------------

Pattern::Pattern(int n, std::vector<Multiplicities> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ < 0)
        throw ValidationError("vertex count must be non-negative");
    for (const auto& e : edges_) {
        if (static_cast<int>(e.size()) != n_)
            throw ValidationError("pattern edge has " + std::to_string(e.size()) +
                                  " multiplicities, expected " + std::to_string(n_));
        if (std::any_of(e.begin(), e.end(), [](int k) { return k < 0; }))
            throw ValidationError("negative multiplicity");
        if (std::accumulate(e.begin(), e.end(), 0) < 1)
            throw ValidationError("pattern edge must have |e| >= 1");
    }
    auto sorted = edges_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ValidationError("duplicate pattern edge");
}

Pattern Pattern::from_hypergraph(const Hypergraph& h) {
    std::vector<Multiplicities> edges;
    edges.reserve(h.edge_count());
    for (const auto& e : h.edges()) {
        Multiplicities k(static_cast<std::size_t>(h.n()), 0);
        for (int v : e)
            k[static_cast<std::size_t>(v)] = 1;
        edges.push_back(std::move(k));
    }
    return Pattern(h.n(), std::move(edges));
}

bool Pattern::is_simple() const noexcept {
    return std::all_of(edges_.begin(), edges_.end(), [](const Multiplicities& e) {
        return std::all_of(e.begin(), e.end(), [](int k) { return k <= 1; });
    });
}

std::optional<Hypergraph> Pattern::as_hypergraph() const {
    if (!is_simple())
        return std::nullopt;
    std::vector<Edge> edges;
    for (const auto& k : edges_) {
        Edge e;
        for (int i = 0; i < n_; ++i)
            if (k[static_cast<std::size_t>(i)] == 1)
                e.push_back(i);
        edges.push_back(std::move(e));
    }
    return Hypergraph(n_, std::move(edges));
}

// --- SimplexPoint -------------------------------------------------------------

SimplexPoint::SimplexPoint(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty())
        throw ValidationError("simplex point must have positive dimension");
    double sum = 0;
    for (double w : weights_) {
        if (!std::isfinite(w) || w < 0)
            throw ValidationError("simplex weights must be finite and non-negative");
        sum += w;
    }
    if (std::fabs(sum - 1.0) > kSumTolerance)
        throw ValidationError("simplex weights must sum to 1");
}

SimplexPoint SimplexPoint::uniform(int n) {
    if (n < 1)
        throw ValidationError("simplex dimension must be >= 1");
    return SimplexPoint(std::vector<double>(static_cast<std::size_t>(n), 1.0 / n));
}

SimplexPoint SimplexPoint::vertex(int n, int i) {
    if (i < 0 || i >= n)
        throw ValidationError("simplex vertex index out of range");
    std::vector<double> w(static_cast<std::size_t>(n), 0.0);
    w[static_cast<std::size_t>(i)] = 1.0;
    return SimplexPoint(std::move(w));
}

std::vector<int> SimplexPoint::support() const {
    std::vector<int> s;
    for (std::size_t i = 0; i < weights_.size(); ++i)
        if (weights_[i] > 0)
            s.push_back(static_cast<int>(i));
    return s;
}

RationalPoint::RationalPoint(std::vector<Rational> weights) : weights_(std::move(weights)) {
    if (weights_.empty())
        throw ValidationError("simplex point must have positive dimension");
    Rational sum = 0;
    for (const auto& w : weights_) {
        if (w < 0)
            throw ValidationError("simplex weights must be non-negative");
        sum += w;
    }
    if (sum != 1)
        throw ValidationError("rational simplex weights must sum to exactly 1, got " +
                              to_string(sum));
}

std::vector<int> RationalPoint::support() const {
    std::vector<int> s;
    for (std::size_t i = 0; i < weights_.size(); ++i)
        if (weights_[i] > 0)
            s.push_back(static_cast<int>(i));
    return s;
}

SimplexPoint RationalPoint::to_simplex_point() const {
    std::vector<double> w;
    w.reserve(weights_.size());
    double sum = 0;
    for (const auto& r : weights_) {
        w.push_back(to_double(r));
        sum += w.back();
    }
    for (auto& x : w)
        x /= sum;
    return SimplexPoint(std::move(w));
}

// --- Lubell, induced subgraphs, blow-ups --------------------------------------

Rational lubell(const Hypergraph& h) {
    std::map<int, std::int64_t> counts;
    for (const auto& e : h.edges())
        ++counts[static_cast<int>(e.size())];
    Rational total = 0;
    for (auto [r, c] : counts) {
        if (r > h.n())
            throw ValidationError("edge larger than vertex count");
        total += Rational(BigInt(c), binomial(h.n(), r));
    }
    return total;
}

Hypergraph induced_subgraph(const Hypergraph& g, std::span<const int> subset) {
    if (subset.empty())
        throw ValidationError("induced subgraph needs a non-empty vertex set");
    std::vector<int> s(subset.begin(), subset.end());
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw ValidationError("induced subgraph vertex set repeats a vertex");
    if (s.front() < 0 || s.back() >= g.n())
        throw ValidationError("induced subgraph vertex out of range");
    std::vector<int> relabel(static_cast<std::size_t>(g.n()), -1);
    for (std::size_t i = 0; i < s.size(); ++i)
        relabel[static_cast<std::size_t>(s[i])] = static_cast<int>(i);
    std::vector<Edge> edges;
    for (const auto& e : g.edges()) {
        Edge mapped;
        mapped.reserve(e.size());
        for (int v : e) {
            const int w = relabel[static_cast<std::size_t>(v)];
            if (w < 0)
                break;
            mapped.push_back(w);
        }
        if (mapped.size() == e.size())
            edges.push_back(std::move(mapped));
    }
    return Hypergraph(static_cast<int>(s.size()), std::move(edges));
}

namespace {

std::vector<int> class_offsets(std::span<const int> sizes, int n, int& total) {
    if (static_cast<int>(sizes.size()) != n)
        throw ValidationError("size vector length " + std::to_string(sizes.size()) +
                              " does not match vertex count " + std::to_string(n));
    std::vector<int> offset(sizes.size());
    total = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] < 0)
            throw ValidationError("class sizes must be non-negative");
        offset[i] = total;
        total += sizes[i];
    }
    return offset;
}

// Appends every choice of one k_i-subset from each class (cartesian product).
void product_of_subsets(const std::vector<std::pair<int, int>>& parts, // (offset, size) per chosen slot
                        const std::vector<int>& picks, std::size_t part, int start,
                        int remaining, Edge& current, std::vector<Edge>& out) {
    if (part == parts.size()) {
        out.push_back(current);
        return;
    }
    const auto [offset, size] = parts[part];
    if (remaining == 0) {
        const std::size_t next = part + 1;
        product_of_subsets(parts, picks, next, 0,
                           next < parts.size() ? picks[next] : 0, current, out);
        return;
    }
    for (int v = start; v <= size - remaining; ++v) {
        current.push_back(offset + v);
        product_of_subsets(parts, picks, part, v + 1, remaining - 1, current, out);
        current.pop_back();
    }
}

} // namespace

Hypergraph realize(const Pattern& p, std::span<const int> sizes) {
    int total = 0;
    const auto offset = class_offsets(sizes, p.n(), total);
    std::vector<Edge> edges;
    for (const auto& k : p.edges()) {
        std::vector<std::pair<int, int>> parts;
        std::vector<int> picks;
        bool feasible = true;
        for (int i = 0; i < p.n(); ++i) {
            const int ki = k[static_cast<std::size_t>(i)];
            if (ki == 0)
                continue;
            if (ki > sizes[static_cast<std::size_t>(i)]) {
                feasible = false;
                break;
            }
            parts.emplace_back(offset[static_cast<std::size_t>(i)], sizes[static_cast<std::size_t>(i)]);
            picks.push_back(ki);
        }
        if (!feasible)
            continue;
        Edge current;
        product_of_subsets(parts, picks, 0, 0, picks.front(), current, edges);
    }
    return Hypergraph(total, std::move(edges));
}

Hypergraph blow_up(const Hypergraph& h, std::span<const int> sizes) {
    return realize(Pattern::from_hypergraph(h), sizes);
}

Hypergraph relabel(const Hypergraph& g, std::span<const int> permutation) {
    if (static_cast<int>(permutation.size()) != g.n())
        throw ValidationError("permutation length does not match vertex count");
    std::vector<int> check(permutation.begin(), permutation.end());
    std::sort(check.begin(), check.end());
    for (int i = 0; i < g.n(); ++i)
        if (check[static_cast<std::size_t>(i)] != i)
            throw ValidationError("not a permutation of 0..n-1");
    std::vector<Edge> edges;
    edges.reserve(g.edge_count());
    for (const auto& e : g.edges()) {
        Edge m;
        m.reserve(e.size());
        for (int v : e)
            m.push_back(permutation[static_cast<std::size_t>(v)]);
        edges.push_back(std::move(m));
    }
    return Hypergraph(g.n(), std::move(edges));
}

// --- containment --------------------------------------------------------------

namespace {

enum class MatchMode { Subgraph, Induced };

// Backtracking matcher of H into G over bitmask edges.
class Matcher {
  public:
    Matcher(const Hypergraph& g, const Hypergraph& h, MatchMode mode)
        : mode_(mode), gn_(g.n()), hn_(h.n()) {
        require_mask_size(g, "containment");
        require_mask_size(h, "containment");
        g_masks_ = g.masks();
        h_masks_ = h.masks();
        std::sort(g_masks_.begin(), g_masks_.end());
        std::sort(h_masks_.begin(), h_masks_.end());

        max_size_ = 0;
        for (auto m : g_masks_)
            max_size_ = std::max(max_size_, std::popcount(m));
        for (auto m : h_masks_)
            max_size_ = std::max(max_size_, std::popcount(m));
        g_deg_.assign(static_cast<std::size_t>(gn_) * (max_size_ + 1), 0);
        h_deg_.assign(static_cast<std::size_t>(hn_) * (max_size_ + 1), 0);
        g_incident_.resize(static_cast<std::size_t>(gn_));
        for (auto m : g_masks_) {
            const int r = std::popcount(m);
            for (auto bits = m; bits; bits &= bits - 1) {
                const int v = std::countr_zero(bits);
                ++g_deg_[static_cast<std::size_t>(v * (max_size_ + 1) + r)];
                g_incident_[static_cast<std::size_t>(v)].push_back(m);
            }
        }
        for (auto m : h_masks_) {
            const int r = std::popcount(m);
            for (auto bits = m; bits; bits &= bits - 1)
                ++h_deg_[static_cast<std::size_t>(std::countr_zero(bits) * (max_size_ + 1) + r)];
        }
        build_order();
    }

    bool feasible_counts() const {
        if (hn_ > gn_)
            return false;
        if (mode_ == MatchMode::Induced)
            return true;
        std::vector<int> gc(static_cast<std::size_t>(max_size_ + 1)), hc(gc.size());
        for (auto m : g_masks_)
            ++gc[static_cast<std::size_t>(std::popcount(m))];
        for (auto m : h_masks_)
            ++hc[static_cast<std::size_t>(std::popcount(m))];
        for (std::size_t r = 0; r < gc.size(); ++r)
            if (hc[r] > gc[r])
                return false;
        return true;
    }

    std::optional<std::vector<int>> find() {
        if (!feasible_counts())
            return std::nullopt;
        stop_at_first_ = true;
        count_ = 0;
        reset();
        if (extend(0)) {
            return phi_;
        }
        return std::nullopt;
    }

    std::uint64_t count() {
        if (!feasible_counts())
            return 0;
        stop_at_first_ = false;
        count_ = 0;
        reset();
        extend(0);
        return count_;
    }

  private:
    void reset() {
        phi_.assign(static_cast<std::size_t>(hn_), -1);
        inverse_.assign(static_cast<std::size_t>(gn_), -1);
        used_ = 0;
    }

    void build_order() {
        // Greedy: next vertex maximizes edges closed by it, then degree.
        std::vector<int> total_deg(static_cast<std::size_t>(hn_), 0);
        for (auto m : h_masks_)
            for (auto bits = m; bits; bits &= bits - 1)
                ++total_deg[static_cast<std::size_t>(std::countr_zero(bits))];
        VertexMask placed = 0;
        order_.clear();
        for (int step = 0; step < hn_; ++step) {
            int best = -1;
            std::pair<int, int> best_key{-1, -1};
            for (int v = 0; v < hn_; ++v) {
                if (placed >> v & 1)
                    continue;
                int touching = 0;
                for (auto m : h_masks_)
                    if ((m >> v & 1) && (m & placed))
                        ++touching;
                const std::pair<int, int> key{touching, total_deg[static_cast<std::size_t>(v)]};
                if (key > best_key) {
                    best_key = key;
                    best = v;
                }
            }
            order_.push_back(best);
            placed |= VertexMask{1} << best;
        }
        closing_.assign(static_cast<std::size_t>(hn_), {});
        std::vector<int> position(static_cast<std::size_t>(hn_));
        for (int p = 0; p < hn_; ++p)
            position[static_cast<std::size_t>(order_[static_cast<std::size_t>(p)])] = p;
        for (auto m : h_masks_) {
            int last = -1;
            for (auto bits = m; bits; bits &= bits - 1)
                last = std::max(last, position[static_cast<std::size_t>(std::countr_zero(bits))]);
            closing_[static_cast<std::size_t>(last)].push_back(m);
        }
    }

    bool g_has(VertexMask m) const { return std::binary_search(g_masks_.begin(), g_masks_.end(), m); }
    bool h_has(VertexMask m) const { return std::binary_search(h_masks_.begin(), h_masks_.end(), m); }

    bool degree_ok(int hv, int gv) const {
        for (int r = 1; r <= max_size_; ++r)
            if (h_deg_[static_cast<std::size_t>(hv * (max_size_ + 1) + r)] >
                g_deg_[static_cast<std::size_t>(gv * (max_size_ + 1) + r)])
                return false;
        return true;
    }

    bool extend(int pos) {
        if (pos == hn_) {
            ++count_;
            return stop_at_first_;
        }
        const int hv = order_[static_cast<std::size_t>(pos)];
        for (int gv = 0; gv < gn_; ++gv) {
            if (used_ >> gv & 1)
                continue;
            if (!degree_ok(hv, gv))
                continue;
            phi_[static_cast<std::size_t>(hv)] = gv;
            inverse_[static_cast<std::size_t>(gv)] = hv;
            used_ |= VertexMask{1} << gv;
            if (consistent(hv, gv) && extend(pos + 1))
                return true;
            used_ &= ~(VertexMask{1} << gv);
            inverse_[static_cast<std::size_t>(gv)] = -1;
            phi_[static_cast<std::size_t>(hv)] = -1;
        }
        return false;
    }

    bool consistent(int hv, int gv) const {
        const int pos = static_cast<int>(std::find(order_.begin(), order_.end(), hv) - order_.begin());
        for (auto m : closing_[static_cast<std::size_t>(pos)]) {
            VertexMask image = 0;
            for (auto bits = m; bits; bits &= bits - 1)
                image |= VertexMask{1} << phi_[static_cast<std::size_t>(std::countr_zero(bits))];
            if (!g_has(image))
                return false;
        }
        if (mode_ == MatchMode::Induced) {
            for (auto f : g_incident_[static_cast<std::size_t>(gv)]) {
                if ((f & ~used_) != 0)
                    continue;
                VertexMask pre = 0;
                for (auto bits = f; bits; bits &= bits - 1)
                    pre |= VertexMask{1} << inverse_[static_cast<std::size_t>(std::countr_zero(bits))];
                if (!h_has(pre))
                    return false;
            }
        }
        return true;
    }

    MatchMode mode_;
    int gn_, hn_;
    int max_size_ = 0;
    std::vector<VertexMask> g_masks_, h_masks_;
    std::vector<int> g_deg_, h_deg_;
    std::vector<std::vector<VertexMask>> g_incident_;
    std::vector<int> order_;
    std::vector<std::vector<VertexMask>> closing_;
    std::vector<int> phi_, inverse_;
    VertexMask used_ = 0;
    bool stop_at_first_ = true;
    std::uint64_t count_ = 0;
};

} // namespace

std::optional<std::vector<int>> find_subgraph(const Hypergraph& g, const Hypergraph& h) {
    if (h.n() > g.n())
        return std::nullopt;
    return Matcher(g, h, MatchMode::Subgraph).find();
}

bool contains_subgraph(const Hypergraph& g, const Hypergraph& h) {
    return find_subgraph(g, h).has_value();
}

std::optional<std::vector<int>> find_induced(const Hypergraph& g, const Hypergraph& h) {
    if (h.n() > g.n())
        return std::nullopt;
    return Matcher(g, h, MatchMode::Induced).find();
}

bool contains_induced(const Hypergraph& g, const Hypergraph& h) {
    return find_induced(g, h).has_value();
}

std::uint64_t count_injections(const Hypergraph& g, const Hypergraph& h) {
    if (h.n() > g.n())
        return 0;
    return Matcher(g, h, MatchMode::Subgraph).count();
}

std::uint64_t count_embeddings(const Hypergraph& g, const Hypergraph& h) {
    if (g.n() > kMaxCanonicalVertices)
        throw UnsupportedSize("count_embeddings supports at most " +
                              std::to_string(kMaxCanonicalVertices) + " host vertices");
    if (h.n() > g.n())
        return 0;
    const std::uint64_t automorphisms = count_injections(h, h);
    return count_injections(g, h) / automorphisms;
}

// --- canonical form -----------------------------------------------------------

namespace {

// Individualization-refinement search for the lexicographically least edge
// encoding over all labelings compatible with an invariant ordered partition.
class Canonizer {
  public:
    explicit Canonizer(const Hypergraph& g) : n_(g.n()), masks_(g.masks()) {
        incident_.resize(static_cast<std::size_t>(n_));
        for (std::size_t i = 0; i < masks_.size(); ++i)
            for (auto bits = masks_[i]; bits; bits &= bits - 1)
                incident_[static_cast<std::size_t>(std::countr_zero(bits))].push_back(i);
        sorted_masks_ = masks_;
        std::sort(sorted_masks_.begin(), sorted_masks_.end());
        twin_.assign(static_cast<std::size_t>(n_ * n_), false);
        for (int u = 0; u < n_; ++u)
            for (int v = u + 1; v < n_; ++v)
                twin_[static_cast<std::size_t>(u * n_ + v)] =
                    twin_[static_cast<std::size_t>(v * n_ + u)] = transposition_is_automorphism(u, v);
    }

    void run() {
        std::vector<int> colors(static_cast<std::size_t>(n_), 0);
        search(refine(std::move(colors)));
    }

    const std::string& best() const { return best_; }
    const std::vector<int>& best_labels() const { return best_labels_; }

  private:
    bool transposition_is_automorphism(int u, int v) const {
        const VertexMask bu = VertexMask{1} << u, bv = VertexMask{1} << v;
        for (auto m : masks_) {
            const bool hu = m & bu, hv = m & bv;
            if (hu == hv)
                continue;
            const VertexMask swapped = m ^ bu ^ bv;
            if (!std::binary_search(sorted_masks_.begin(), sorted_masks_.end(), swapped))
                return false;
        }
        return true;
    }

    static std::vector<int> compact(const std::vector<std::vector<int>>& keys) {
        std::vector<std::vector<int>> distinct = keys;
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        std::vector<int> out(keys.size());
        for (std::size_t v = 0; v < keys.size(); ++v)
            out[v] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), keys[v]) -
                                      distinct.begin());
        return out;
    }

    static int cell_count(const std::vector<int>& colors) {
        return colors.empty() ? 0 : *std::max_element(colors.begin(), colors.end()) + 1;
    }

    // Equitable-style refinement: a vertex's new color is its old color plus
    // the sorted multiset of (edge size, sorted colors of the other members)
    // over its incident edges.
    std::vector<int> refine(std::vector<int> colors) const {
        int cells = cell_count(colors);
        while (true) {
            std::vector<std::vector<int>> keys(static_cast<std::size_t>(n_));
            for (int v = 0; v < n_; ++v) {
                std::vector<std::vector<int>> edge_sigs;
                for (auto idx : incident_[static_cast<std::size_t>(v)]) {
                    const auto m = masks_[idx];
                    std::vector<int> sig{std::popcount(m)};
                    for (auto bits = m; bits; bits &= bits - 1) {
                        const int u = std::countr_zero(bits);
                        if (u != v)
                            sig.push_back(colors[static_cast<std::size_t>(u)]);
                    }
                    std::sort(sig.begin() + 1, sig.end());
                    edge_sigs.push_back(std::move(sig));
                }
                std::sort(edge_sigs.begin(), edge_sigs.end());
                auto& key = keys[static_cast<std::size_t>(v)];
                key.push_back(colors[static_cast<std::size_t>(v)]);
                for (const auto& s : edge_sigs) {
                    key.push_back(-1);
                    key.insert(key.end(), s.begin(), s.end());
                }
            }
            auto next = compact(keys);
            const int next_cells = cell_count(next);
            colors = std::move(next);
            if (next_cells == cells)
                return colors;
            cells = next_cells;
        }
    }

    void search(const std::vector<int>& colors) {
        if (cell_count(colors) == n_) {
            consider_leaf(colors);
            return;
        }
        std::vector<int> size(static_cast<std::size_t>(n_), 0);
        for (int c : colors)
            ++size[static_cast<std::size_t>(c)];
        int target = 0;
        while (size[static_cast<std::size_t>(target)] < 2)
            ++target;
        std::vector<int> tried;
        for (int v = 0; v < n_; ++v) {
            if (colors[static_cast<std::size_t>(v)] != target)
                continue;
            const bool redundant = std::any_of(tried.begin(), tried.end(), [&](int u) {
                return twin_[static_cast<std::size_t>(u * n_ + v)];
            });
            if (redundant)
                continue;
            tried.push_back(v);
            std::vector<std::vector<int>> keys(static_cast<std::size_t>(n_));
            for (int u = 0; u < n_; ++u) {
                const int c = colors[static_cast<std::size_t>(u)];
                keys[static_cast<std::size_t>(u)] = {2 * c + ((c == target && u != v) ? 1 : 0)};
            }
            search(refine(compact(keys)));
        }
    }

    void consider_leaf(const std::vector<int>& labels) {
        std::vector<VertexMask> relabeled;
        relabeled.reserve(masks_.size());
        for (auto m : masks_) {
            VertexMask r = 0;
            for (auto bits = m; bits; bits &= bits - 1)
                r |= VertexMask{1} << labels[static_cast<std::size_t>(std::countr_zero(bits))];
            relabeled.push_back(r);
        }
        std::sort(relabeled.begin(), relabeled.end());
        std::string code;
        code.reserve(1 + 2 * relabeled.size());
        code.push_back(static_cast<char>(n_));
        for (auto m : relabeled) {
            code.push_back(static_cast<char>((m >> 8) & 0xff));
            code.push_back(static_cast<char>(m & 0xff));
        }
        if (best_labels_.empty() || code < best_) {
            best_ = std::move(code);
            best_labels_ = labels;
        }
    }

    int n_;
    std::vector<VertexMask> masks_, sorted_masks_;
    std::vector<std::vector<std::size_t>> incident_;
    std::vector<bool> twin_;
    std::string best_;
    std::vector<int> best_labels_;
};

Canonizer run_canonizer(const Hypergraph& g) {
    if (g.n() > kMaxCanonicalVertices)
        throw UnsupportedSize("canonical form supports at most " +
                              std::to_string(kMaxCanonicalVertices) + " vertices, got " +
                              std::to_string(g.n()));
    Canonizer c(g);
    c.run();
    return c;
}

} // namespace

std::string canonical_form(const Hypergraph& g) {
    if (g.n() == 0)
        return std::string(1, '\0');
    return run_canonizer(g).best();
}

Hypergraph canonical_graph(const Hypergraph& g) {
    if (g.n() == 0)
        return g;
    return relabel(g, run_canonizer(g).best_labels());
}

bool are_isomorphic(const Hypergraph& a, const Hypergraph& b) {
    if (a.n() != b.n() || a.edge_count() != b.edge_count())
        return false;
    return canonical_form(a) == canonical_form(b);
}

} // namespace turanlab
