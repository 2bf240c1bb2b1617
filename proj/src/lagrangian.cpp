#include "turanlab/lagrangian.hpp"

#include "turanlab/errors.hpp"
#include "turanlab/parallel.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>

namespace turanlab {

bool LagrangianResult::certificate_matches() const {
    return certified_lower_bound && std::fabs(to_double(*certified_lower_bound) - value) <= 1e-9;
}

// --- vertex equivalence -------------------------------------------------------

namespace {

// Links of a inside layer r, skipping edges that also contain b.
std::vector<Edge> link_without(const Hypergraph& h, int a, int b, std::size_t r) {
    std::vector<Edge> out;
    for (const auto& e : h.edges()) {
        if (e.size() != r)
            continue;
        if (!std::binary_search(e.begin(), e.end(), a) || std::binary_search(e.begin(), e.end(), b))
            continue;
        Edge rest;
        for (int v : e)
            if (v != a)
                rest.push_back(v);
        out.push_back(std::move(rest));
    }
    std::sort(out.begin(), out.end());
    return out;
}

template <class Equivalent>
std::vector<std::vector<int>> group_vertices(int n, Equivalent&& equivalent) {
    std::vector<std::vector<int>> classes;
    for (int v = 0; v < n; ++v) {
        bool placed = false;
        for (auto& c : classes) {
            if (equivalent(c.front(), v)) {
                c.push_back(v);
                placed = true;
                break;
            }
        }
        if (!placed)
            classes.push_back({v});
    }
    return classes;
}

} // namespace

std::vector<std::vector<int>> equivalence_classes(const Hypergraph& h) {
    const auto sizes = h.edge_sizes();
    return group_vertices(h.n(), [&](int i, int j) {
        for (int r : sizes)
            if (link_without(h, i, j, static_cast<std::size_t>(r)) !=
                link_without(h, j, i, static_cast<std::size_t>(r)))
                return false;
        return true;
    });
}

std::vector<std::vector<int>> equivalence_classes(const Pattern& p) {
    std::vector<bool> simple_vertex(static_cast<std::size_t>(p.n()), true);
    for (const auto& e : p.edges())
        for (int i = 0; i < p.n(); ++i)
            if (e[static_cast<std::size_t>(i)] > 1)
                simple_vertex[static_cast<std::size_t>(i)] = false;
    auto sorted_edges = p.edges();
    std::sort(sorted_edges.begin(), sorted_edges.end());
    return group_vertices(p.n(), [&](int i, int j) {
        if (!simple_vertex[static_cast<std::size_t>(i)] || !simple_vertex[static_cast<std::size_t>(j)])
            return false;
        auto swapped = sorted_edges;
        for (auto& e : swapped)
            std::swap(e[static_cast<std::size_t>(i)], e[static_cast<std::size_t>(j)]);
        std::sort(swapped.begin(), swapped.end());
        return swapped == sorted_edges;
    });
}

// --- KKT ----------------------------------------------------------------------

double stationarity_residual(const Pattern& p, const SimplexPoint& x) {
    const auto g = PolynomialForm(p).gradient(x.weights());
    double on_max = -std::numeric_limits<double>::infinity();
    double on_min = std::numeric_limits<double>::infinity();
    double off_max = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (x[i] > 0) {
            on_max = std::max(on_max, g[i]);
            on_min = std::min(on_min, g[i]);
        } else {
            off_max = std::max(off_max, g[i]);
        }
    }
    double residual = on_max - on_min;
    if (off_max > on_max)
        residual = std::max(residual, off_max - on_max);
    return residual;
}

// --- optimizer internals --------------------------------------------------------

namespace {

// lambda restricted to points that are constant on each class, written in the
// class masses z_c (so x_i = z_c / |c| for i in c).
class QuotientObjective {
  public:
    QuotientObjective(const PolynomialForm& f, const std::vector<std::vector<int>>& classes)
        : f_(f), classes_(classes), class_of_(static_cast<std::size_t>(f.n())) {
        for (std::size_t c = 0; c < classes_.size(); ++c)
            for (int v : classes_[c])
                class_of_[static_cast<std::size_t>(v)] = static_cast<int>(c);
    }

    int dim() const { return static_cast<int>(classes_.size()); }

    std::vector<double> expand(std::span<const double> z) const {
        std::vector<double> x(static_cast<std::size_t>(f_.n()));
        for (std::size_t c = 0; c < classes_.size(); ++c)
            for (int v : classes_[c])
                x[static_cast<std::size_t>(v)] = z[c] / static_cast<double>(classes_[c].size());
        return x;
    }

    double value(std::span<const double> z) const { return f_.evaluate(expand(z)); }

    std::vector<double> gradient(std::span<const double> z) const {
        const auto g = f_.gradient(expand(z));
        std::vector<double> out(classes_.size(), 0.0);
        for (std::size_t c = 0; c < classes_.size(); ++c) {
            for (int v : classes_[c])
                out[c] += g[static_cast<std::size_t>(v)];
            out[c] /= static_cast<double>(classes_[c].size());
        }
        return out;
    }

    std::vector<double> hessian(std::span<const double> z) const {
        const auto h = f_.hessian(expand(z));
        const std::size_t n = static_cast<std::size_t>(f_.n()), q = classes_.size();
        std::vector<double> out(q * q, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const auto ci = static_cast<std::size_t>(class_of_[i]);
                const auto cj = static_cast<std::size_t>(class_of_[j]);
                out[ci * q + cj] += h[i * n + j] / (static_cast<double>(classes_[ci].size()) *
                                                    static_cast<double>(classes_[cj].size()));
            }
        return out;
    }

    /// Classes touched by each term.
    std::vector<std::uint64_t> term_masks() const {
        std::vector<std::uint64_t> out;
        for (const auto& t : f_.terms()) {
            std::uint64_t m = 0;
            for (auto [v, k] : t.powers)
                m |= std::uint64_t{1} << class_of_[static_cast<std::size_t>(v)];
            out.push_back(m);
        }
        return out;
    }

  private:
    const PolynomialForm& f_;
    const std::vector<std::vector<int>>& classes_;
    std::vector<int> class_of_;
};

std::vector<int> indices_of(std::uint64_t mask) {
    std::vector<int> out;
    for (; mask; mask &= mask - 1)
        out.push_back(std::countr_zero(mask));
    return out;
}

bool pair_covered(std::uint64_t support, const std::vector<std::uint64_t>& terms) {
    for (auto bits = support; bits; bits &= bits - 1) {
        const std::uint64_t c = bits & (~bits + 1);
        std::uint64_t reach = c;
        for (auto t : terms)
            if ((t & ~support) == 0 && (t & c))
                reach |= t;
        if ((support & ~reach) != 0)
            return false;
    }
    return true;
}

constexpr std::size_t kMaxAllSupports = 64;
constexpr int kMaxSupportEnumeration = 16;

// Supports on which a minimal-support optimum can live, plus the full set.
std::vector<std::vector<int>> candidate_supports(const QuotientObjective& obj) {
    const int q = obj.dim();
    std::vector<int> full(static_cast<std::size_t>(q));
    std::iota(full.begin(), full.end(), 0);
    if (q > kMaxSupportEnumeration)
        return {full};

    const auto terms = obj.term_masks();
    const std::uint64_t full_mask = (std::uint64_t{1} << q) - 1;
    std::vector<std::uint64_t> covered;
    for (std::uint64_t s = 1; s <= full_mask; ++s)
        if (std::popcount(s) == 1 || pair_covered(s, terms))
            covered.push_back(s);
    if (std::find(covered.begin(), covered.end(), full_mask) == covered.end())
        covered.push_back(full_mask);

    if (covered.size() > kMaxAllSupports) {
        // Keep singletons (closed form) and the inclusion-maximal supports; a
        // face search on J also reaches every sub-face of J.
        std::vector<std::uint64_t> kept;
        for (auto s : covered) {
            const bool maximal = std::none_of(covered.begin(), covered.end(), [s](std::uint64_t t) {
                return t != s && (s & ~t) == 0;
            });
            if (maximal || std::popcount(s) == 1)
                kept.push_back(s);
        }
        covered = std::move(kept);
    }

    std::vector<std::vector<int>> out;
    for (auto s : covered)
        out.push_back(indices_of(s));
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

// Euclidean projection onto {y >= 0, sum y = 1} restricted to coordinates in
// `face`; every other coordinate is set to 0.
void project_onto_face(std::vector<double>& y, const std::vector<int>& face) {
    std::vector<double> u;
    u.reserve(face.size());
    for (int j : face)
        u.push_back(y[static_cast<std::size_t>(j)]);
    std::sort(u.begin(), u.end(), std::greater<>());
    double cumulative = 0, theta = 0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        cumulative += u[k];
        const double t = (cumulative - 1.0) / static_cast<double>(k + 1);
        if (u[k] - t > 0)
            theta = t;
    }
    std::vector<double> out(y.size(), 0.0);
    for (int j : face)
        out[static_cast<std::size_t>(j)] = std::max(y[static_cast<std::size_t>(j)] - theta, 0.0);
    y = std::move(out);
}

void normalize(std::vector<double>& z) {
    double sum = 0;
    for (double& v : z) {
        if (v < 1e-14)
            v = 0;
        sum += v;
    }
    for (double& v : z)
        v /= sum;
}

struct LocalResult {
    double value = -std::numeric_limits<double>::infinity();
    std::vector<double> z;
    bool converged = false;
};

LocalResult ascend(const QuotientObjective& obj, const std::vector<int>& face,
                   std::vector<double> z, const OptimizerConfig& cfg) {
    constexpr double kArmijo = 1e-4;
    constexpr double kShrink = 0.5;
    LocalResult out;
    double fz = obj.value(z);
    double step = 0.1;
    for (int it = 0; it < cfg.max_iters; ++it) {
        const auto g = obj.gradient(z);
        std::vector<double> y;
        double fy = 0, moved = 0;
        bool accepted = false;
        while (step > 1e-18) {
            y = z;
            for (int j : face)
                y[static_cast<std::size_t>(j)] += step * g[static_cast<std::size_t>(j)];
            project_onto_face(y, face);
            double predicted = 0;
            moved = 0;
            for (int j : face) {
                const auto k = static_cast<std::size_t>(j);
                predicted += g[k] * (y[k] - z[k]);
                moved = std::max(moved, std::fabs(y[k] - z[k]));
            }
            fy = obj.value(y);
            if (moved == 0 || fy >= fz + kArmijo * predicted) {
                accepted = true;
                break;
            }
            step *= kShrink;
        }
        if (!accepted || moved < cfg.tol) {
            // Either the projected step vanished or no ascent direction is
            // left at machine precision: a stationary point of the face.
            out.converged = true;
            if (accepted && fy >= fz) {
                z = std::move(y);
                fz = fy;
            }
            break;
        }
        const bool stalled = fy - fz <= cfg.tol * std::max(1.0, std::fabs(fz));
        z = std::move(y);
        fz = fy;
        if (stalled) {
            // Progress below tolerance; the Newton polish finishes the job.
            out.converged = true;
            break;
        }
        step = std::min(step * 2.0, 1e3);
    }
    out.value = fz;
    out.z = std::move(z);
    return out;
}

// Newton iterations on {grad_S f = mu 1, sum z_S = 1} over a fixed support.
// Returns the index that would turn negative when a full step leaves the
// face, or -1 once the iteration settles.
int newton_on_support(const QuotientObjective& obj, const std::vector<int>& support,
                      std::vector<double>& z, double& fz) {
    const std::size_t q = z.size();
    const auto s = static_cast<Eigen::Index>(support.size());
    for (int it = 0; it < 30; ++it) {
        const auto g = obj.gradient(z);
        const auto h = obj.hessian(z);
        Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(s + 1, s + 1);
        Eigen::VectorXd rhs(s + 1);
        double sum = 0;
        for (Eigen::Index a = 0; a < s; ++a) {
            const auto ca = static_cast<std::size_t>(support[static_cast<std::size_t>(a)]);
            for (Eigen::Index b = 0; b < s; ++b)
                kkt(a, b) = h[ca * q + static_cast<std::size_t>(support[static_cast<std::size_t>(b)])];
            kkt(a, s) = -1.0;
            kkt(s, a) = 1.0;
            rhs(a) = -g[ca];
            sum += z[ca];
        }
        rhs(s) = 1.0 - sum;
        const Eigen::VectorXd sol = kkt.fullPivLu().solve(rhs);
        if (!sol.allFinite())
            return -1;
        std::vector<double> trial = z;
        double largest = 0, most_negative = 0;
        int leaving = -1;
        for (Eigen::Index a = 0; a < s; ++a) {
            const auto c = static_cast<std::size_t>(support[static_cast<std::size_t>(a)]);
            trial[c] += sol(a);
            largest = std::max(largest, std::fabs(sol(a)));
            if (trial[c] < most_negative) {
                most_negative = trial[c];
                leaving = static_cast<int>(c);
            }
        }
        if (leaving >= 0)
            return leaving;
        normalize(trial);
        const double ft = obj.value(trial);
        if (ft < fz - 1e-13)
            return -1;
        z = std::move(trial);
        fz = ft;
        if (largest < 1e-15)
            return -1;
    }
    return -1;
}

// Newton polish with a simple active set: a coordinate the step would push
// below zero leaves the support and the solve is repeated on the smaller face.
void polish(const QuotientObjective& obj, LocalResult& r) {
    std::vector<int> support;
    std::vector<double> z = r.z;
    for (std::size_t c = 0; c < z.size(); ++c) {
        if (z[c] > 1e-10)
            support.push_back(static_cast<int>(c));
        else
            z[c] = 0;
    }
    normalize(z);
    double fz = obj.value(z);
    const double floor = r.value - 1e-12 * std::max(1.0, std::fabs(r.value));
    while (support.size() >= 2) {
        const int leaving = newton_on_support(obj, support, z, fz);
        if (leaving < 0)
            break;
        support.erase(std::find(support.begin(), support.end(), leaving));
        z[static_cast<std::size_t>(leaving)] = 0;
        normalize(z);
        fz = obj.value(z);
    }
    if (support.size() == 1) {
        std::fill(z.begin(), z.end(), 0.0);
        z[static_cast<std::size_t>(support.front())] = 1.0;
        fz = obj.value(z);
    }
    if (fz >= floor) {
        r.z = std::move(z);
        r.value = fz;
    }
}

std::vector<double> dirichlet_start(std::size_t q, const std::vector<int>& face, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> z(q, 0.0);
    double sum = 0;
    for (int j : face) {
        z[static_cast<std::size_t>(j)] = expo(rng);
        sum += z[static_cast<std::size_t>(j)];
    }
    for (int j : face)
        z[static_cast<std::size_t>(j)] /= sum;
    return z;
}

void validate(const OptimizerConfig& cfg) {
    if (cfg.restarts < 0)
        throw ValidationError("restarts must be >= 0");
    if (cfg.max_iters < 1)
        throw ValidationError("max_iters must be >= 1");
    if (!(cfg.tol > 0))
        throw ValidationError("tol must be positive");
    if (cfg.max_denominator < 1)
        throw ValidationError("max_denominator must be >= 1");
}

struct Task {
    std::size_t support_index;
    int start; // -1: barycenter / closed form
};

} // namespace

RationalPoint rationalize(const SimplexPoint& x, std::int64_t max_denominator) {
    std::vector<Rational> r;
    r.reserve(x.dimension());
    Rational sum = 0;
    for (double w : x.weights()) {
        r.push_back(w > 0 ? approximate(w, max_denominator) : Rational(0));
        sum += r.back();
    }
    if (sum == 0)
        throw ValidationError("cannot rationalize: all weights round to zero");
    for (auto& v : r)
        v /= sum;
    return RationalPoint(std::move(r));
}

LagrangianResult maximize(const Pattern& p, const OptimizerConfig& cfg) {
    validate(cfg);
    if (p.n() < 1)
        throw ValidationError("Lagrangian needs at least one vertex");

    const PolynomialForm form(p);
    const auto classes = equivalence_classes(p);
    const QuotientObjective obj(form, classes);
    const auto q = static_cast<std::size_t>(obj.dim());
    const auto supports = candidate_supports(obj);

    std::vector<Task> tasks;
    for (std::size_t s = 0; s < supports.size(); ++s) {
        tasks.push_back({s, -1});
        if (supports[s].size() > 1)
            for (int r = 0; r < cfg.restarts; ++r)
                tasks.push_back({s, r});
    }

    std::vector<LocalResult> results(tasks.size());
    parallel_for(tasks.size(), cfg.threads, [&](std::size_t i) {
        const auto& face = supports[tasks[i].support_index];
        if (face.size() == 1) {
            LocalResult r;
            r.z.assign(q, 0.0);
            r.z[static_cast<std::size_t>(face.front())] = 1.0;
            r.value = obj.value(r.z);
            r.converged = true;
            results[i] = std::move(r);
            return;
        }
        std::vector<double> start;
        if (tasks[i].start < 0) {
            start.assign(q, 0.0);
            for (int j : face)
                start[static_cast<std::size_t>(j)] = 1.0 / static_cast<double>(face.size());
        } else {
            start = dirichlet_start(q, face, mix_seed(cfg.seed, i));
        }
        auto r = ascend(obj, face, std::move(start), cfg);
        polish(obj, r);
        results[i] = std::move(r);
    });

    // Deterministic reduction over the starts whose end point passes the KKT
    // check: highest value, near-ties to the lexicographically smallest
    // support. A start that stopped short of a face boundary can edge out
    // the exact optimum by rounding noise, so it only matters if it beats
    // every passing start by more than 1e-9.
    constexpr double kKkt = 1e-7;
    auto support_of = [](const std::vector<double>& z) {
        std::vector<int> s;
        for (std::size_t c = 0; c < z.size(); ++c)
            if (z[c] > 0)
                s.push_back(static_cast<int>(c));
        return s;
    };
    const LocalResult* best = nullptr;
    std::vector<int> best_support;
    double best_any = -std::numeric_limits<double>::infinity();
    std::vector<double> best_any_x;
    int converged = 0;
    for (auto& r : results) {
        normalize(r.z);
        r.value = obj.value(r.z);
        if (r.converged)
            ++converged;
        auto expanded = obj.expand(r.z);
        normalize(expanded);
        if (r.value > best_any) {
            best_any = r.value;
            best_any_x = expanded;
        }
        if (stationarity_residual(p, SimplexPoint(expanded)) >= kKkt)
            continue;
        const auto expanded_support = support_of(expanded);
        if (!best) {
            best = &r;
            best_support = expanded_support;
            continue;
        }
        const double eps = 1e-12 * std::max(1.0, std::fabs(best->value));
        if (r.value > best->value + eps ||
            (std::fabs(r.value - best->value) <= eps && expanded_support < best_support)) {
            best = &r;
            best_support = expanded_support;
        }
    }

    if (converged == 0)
        throw OptimizerFailure("no start converged within max_iters", best_any, best_any_x);
    if (!best || best_any > best->value + 1e-9) {
        const double residual = stationarity_residual(p, SimplexPoint(best_any_x));
        throw OptimizerFailure("maximizer failed the KKT check (residual " + std::to_string(residual) + ")",
                               best_any, best_any_x);
    }
    auto x = obj.expand(best->z);
    normalize(x);

    LagrangianResult out;
    out.maximizer = SimplexPoint(x);
    out.value = form.evaluate(x);
    out.support = out.maximizer.support();
    out.classes = classes;
    out.starts = static_cast<int>(tasks.size());
    out.converged_starts = converged;
    out.stationarity_residual = stationarity_residual(p, out.maximizer);
    if (cfg.rational_certificate) {
        auto point = rationalize(out.maximizer, cfg.max_denominator);
        out.certified_lower_bound = form.evaluate(point.weights());
        out.certificate_point = std::move(point);
    }
    return out;
}

LagrangianResult maximize(const Hypergraph& h, const OptimizerConfig& cfg) {
    return maximize(Pattern::from_hypergraph(h), cfg);
}

Rational certify_at(const Pattern& p, const RationalPoint& x) {
    return PolynomialForm(p).evaluate(std::span<const Rational>(x.weights()));
}

Rational certify_at(const Hypergraph& h, const RationalPoint& x) {
    return certify_at(Pattern::from_hypergraph(h), x);
}

} // namespace turanlab
