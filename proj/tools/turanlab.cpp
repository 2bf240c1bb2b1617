#include "turanlab/errors.hpp"
#include "turanlab/io.hpp"
#include "turanlab/jump.hpp"
#include "turanlab/lagrangian.hpp"
#include "turanlab/sequence.hpp"
#include "turanlab/turan.hpp"

#include <CLI11.hpp>

#include <unistd.h>

#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>

using namespace turanlab;
using io::Json;

namespace {

struct Globals {
    std::string format = "json";
    int threads = 1;
    std::uint64_t seed = 0;
};

bool tsv(const Globals& g) { return g.format == "tsv"; }

// Decimal shown next to exact values only when a person is reading.
std::string show(const Rational& r) {
    std::string s = to_string(r);
    if (isatty(STDOUT_FILENO)) {
        std::ostringstream d;
        d.precision(12);
        d << to_double(r);
        s += " (" + d.str() + ")";
    }
    return s;
}

void emit(const Json& j) { std::cout << io::dump(j); }

std::string join(const std::vector<int>& v, char sep = ',') {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? std::string(1, sep) : "") + std::to_string(v[i]);
    return out;
}

void run_lubell(const Globals& g, const std::string& path) {
    const auto h = io::hypergraph_from(io::read_file(path));
    const auto value = lubell(h);
    if (tsv(g))
        std::cout << show(value) << "\n";
    else
        emit(Json{{"n", h.n()}, {"lubell", io::rational_json(value)}});
}

struct LagrangianArgs {
    std::string path, config_path;
    std::optional<int> restarts, max_iters;
    bool certify = false;
};

void run_lagrangian(const Globals& g, const LagrangianArgs& a, bool seed_given) {
    const auto p = io::pattern_or_graph_from(io::read_file(a.path));
    OptimizerConfig cfg;
    cfg.rational_certificate = false;
    if (!a.config_path.empty())
        cfg = io::optimizer_config_from(io::read_file(a.config_path), cfg);
    if (a.restarts)
        cfg.restarts = *a.restarts;
    if (a.max_iters)
        cfg.max_iters = *a.max_iters;
    if (a.certify)
        cfg.rational_certificate = true;
    if (seed_given)
        cfg.seed = g.seed;
    cfg.threads = g.threads;
    cfg = io::optimizer_config_from(Json::object(), cfg); // validates
    const auto r = maximize(p, cfg);
    if (tsv(g)) {
        std::cout << "value\tcertificate\tsupport\tmaximizer\n";
        std::ostringstream x;
        x.precision(17);
        for (std::size_t i = 0; i < r.maximizer.dimension(); ++i)
            x << (i ? "," : "") << r.maximizer[i];
        std::ostringstream v;
        v.precision(17);
        v << r.value;
        std::cout << v.str() << "\t" << (r.certified_lower_bound ? show(*r.certified_lower_bound) : "-") << "\t"
                  << join(r.support) << "\t" << x.str() << "\n";
    } else {
        auto j = io::to_json(r);
        j["config"] = io::to_json(cfg);
        emit(j);
    }
}

struct TuranArgs {
    std::string path, mode, candidates_path;
    int n_min = 0, n_max = 0;
    double max_classes = 2e6;
    bool heuristic = false;
    int restarts = 16, steps = 200;
};

std::vector<Hypergraph> read_candidates(const std::string& path) {
    const auto j = io::read_file(path);
    const Json& list = j.is_object() && j.contains("graphs") ? j["graphs"] : j;
    if (!list.is_array())
        throw ValidationError(path + ": expected an array of graphs or {\"graphs\": [...]}");
    std::vector<Hypergraph> out;
    for (std::size_t i = 0; i < list.size(); ++i)
        out.push_back(io::hypergraph_from(list[i], "graphs[" + std::to_string(i) + "]"));
    return out;
}

void run_turan(const Globals& g, const TuranArgs& a) {
    auto j = io::read_file(a.path);
    if (!a.mode.empty()) {
        if (!j.is_object())
            throw ValidationError("family: expected an object");
        j["mode"] = a.mode;
    }
    const auto family = io::family_from(j);
    DensityBound bound;
    if (!a.candidates_path.empty()) {
        std::map<int, std::vector<Hypergraph>> by_n;
        for (auto& c : read_candidates(a.candidates_path))
            by_n[c.n()].push_back(std::move(c));
        for (const auto& [n, list] : by_n)
            if (n >= a.n_min && (a.n_max == 0 || n <= a.n_max))
                bound.records.push_back(pi_n_candidates(family, n, list));
    } else if (a.heuristic) {
        if (a.n_max < 1)
            throw ValidationError("--n-max is required");
        HeuristicConfig cfg;
        cfg.restarts = a.restarts;
        cfg.steps = a.steps;
        cfg.seed = g.seed;
        cfg.threads = g.threads;
        for (int n = std::max(a.n_min, 1); n <= a.n_max; ++n)
            bound.records.push_back(pi_n_heuristic(family, n, cfg));
    } else {
        if (a.n_max < 1)
            throw ValidationError("--n-max is required");
        SearchConfig cfg;
        cfg.threads = g.threads;
        cfg.max_classes = a.max_classes;
        bound = density_sequence(family, a.n_max, cfg);
        std::erase_if(bound.records, [&](const DensityRecord& r) { return r.n < a.n_min; });
    }
    if (tsv(g)) {
        std::cout << "n\tpi_n\tcount\tseconds\n";
        for (const auto& r : bound.records)
            std::cout << r.n << "\t" << show(r.pi_n) << "\t" << r.graphs_enumerated << "\t" << r.elapsed << "\n";
    } else {
        emit(io::density_report(family, bound));
    }
}

void run_classify(const Globals& g, const std::string& alpha_text) {
    const auto r = classify12(parse_rational(alpha_text));
    if (tsv(g)) {
        std::cout << "alpha\tverdict\tcase\tt\tlower\tupper\n"
                  << to_string(r.alpha) << "\t" << to_string(r.verdict) << "\t" << to_string(r.jump_case) << "\t"
                  << r.t.str() << "\t" << to_string(r.lower) << "\t" << to_string(r.upper) << "\n";
        return;
    }
    auto j = io::to_json(r);
    if (const auto w = weak_jump_witness(r.alpha))
        j["witness"] = io::to_json(*w);
    emit(j);
}

struct CertifyArgs {
    std::string alpha, path, pi, pi_source = "supplied";
    bool strict = false;
    int search_n_max = 0;
};

void run_certify(const Globals& g, const CertifyArgs& a, bool seed_given) {
    const auto alpha = parse_rational(a.alpha);
    const auto family = io::family_from(io::read_file(a.path));
    CertificateOptions opt;
    opt.search_n_max = a.search_n_max;
    opt.search.threads = g.threads;
    opt.optimizer.threads = g.threads;
    if (seed_given)
        opt.optimizer.seed = g.seed;
    if (!a.pi.empty())
        opt.pi_evidence = PiEvidence{EvidenceGrade::asserted, parse_rational(a.pi), a.pi_source, std::nullopt};
    const auto c = build_certificate(alpha, family, a.strict, opt);
    if (tsv(g))
        std::cout << "alpha\tkind\tgap\tpi\tgrade\n"
                  << to_string(c.alpha) << "\t" << to_string(c.kind) << "\t" << show(c.gap) << "\t"
                  << to_string(c.pi_evidence.value) << "\t" << to_string(c.pi_evidence.grade) << "\n";
    else
        emit(io::to_json(c));
}

struct SigmaArgs {
    std::string path;
    int t = 0, i_from = 0, i_to = 0;
    std::uint64_t samples = 1'000'000;
    bool force_sampled = false;
};

void run_sigma(const Globals& g, const SigmaArgs& a) {
    const auto gen = io::generator_from(io::read_file(a.path));
    SigmaConfig cfg;
    cfg.threads = g.threads;
    cfg.seed = g.seed;
    cfg.samples = a.samples;
    cfg.force_sampled = a.force_sampled;
    const auto r = sigma_t(gen, a.t, a.i_from, a.i_to, cfg);
    if (tsv(g))
        std::cout << "t\tsigma_t\tmember\tsubset\texhaustive\n"
                  << r.t << "\t" << show(r.sigma) << "\t" << r.member << "\t" << join(r.subset) << "\t"
                  << (r.exhaustive ? "yes" : "no") << "\n";
    else
        emit(io::to_json(r));
}

void run_density(const Globals& g, const std::string& path, int i_max) {
    const auto e = density_estimate(io::generator_from(io::read_file(path)), i_max);
    if (tsv(g)) {
        std::cout << "i\tn\th\n";
        for (std::size_t i = 0; i < e.vertices.size(); ++i)
            std::cout << i << "\t" << e.vertices[i] << "\t" << show(e.lubell[i]) << "\n";
    } else {
        emit(io::to_json(e));
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lubell densities, Lagrangians, Turan densities and jump certificates of non-uniform hypergraphs"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "tsv"}));
    app.add_option("--threads", g.threads, "Worker threads")->envname("TURANLAB_THREADS")->check(CLI::Range(1, 1024));
    auto* seed_opt = app.add_option("--seed", g.seed, "Seed for every randomized step");

    auto* lub = app.add_subcommand("lubell", "Exact Lubell value of a graph file");
    std::string lubell_path;
    lub->add_option("file", lubell_path, "Graph JSON")->required();

    auto* lag = app.add_subcommand("lagrangian", "Lagrangian of a graph or pattern file");
    LagrangianArgs la;
    lag->add_option("file", la.path, "Graph or pattern JSON")->required();
    lag->add_option("--config", la.config_path, "Optimizer config JSON");
    lag->add_option("--restarts", la.restarts, "Random starts per support")->check(CLI::NonNegativeNumber);
    lag->add_option("--max-iters", la.max_iters, "Iteration cap per start")->check(CLI::PositiveNumber);
    lag->add_flag("--certify", la.certify, "Attach an exact rational certificate");

    auto* tur = app.add_subcommand("turan", "Exact pi_n sequence of a forbidden family");
    TuranArgs ta;
    tur->add_option("family", ta.path, "Family JSON")->required();
    tur->add_option("--n-max", ta.n_max, "Largest vertex count");
    tur->add_option("--n-min", ta.n_min, "Smallest vertex count reported");
    tur->add_option("--mode", ta.mode, "Containment mode")->check(CLI::IsMember({"subgraph", "induced"}));
    tur->add_option("--max-classes", ta.max_classes, "Refuse enumerations estimated above this many classes");
    tur->add_flag("--heuristic", ta.heuristic, "Randomized search, lower bounds only");
    tur->add_option("--restarts", ta.restarts, "Heuristic restarts")->check(CLI::PositiveNumber);
    tur->add_option("--steps", ta.steps, "Heuristic local-search moves")->check(CLI::NonNegativeNumber);
    tur->add_option("--candidates", ta.candidates_path, "Score only these graphs (lower bounds only)");

    auto* cls = app.add_subcommand("classify12", "Strong or weak jump for R = {1,2}");
    std::string alpha_text;
    cls->add_option("alpha", alpha_text, "Value p/q in [0,2]")->required();

    auto* cer = app.add_subcommand("certify", "Jump certificate for alpha and a family");
    CertifyArgs ca;
    cer->add_option("alpha", ca.alpha, "Value p/q")->required();
    cer->add_option("family", ca.path, "Family JSON")->required();
    cer->add_flag("--strict", ca.strict, "Require pi(F) < alpha (strong jump)");
    cer->add_option("--search-n-max", ca.search_n_max, "Exhaustive pi_n fallback up to this n");
    cer->add_option("--pi", ca.pi, "Asserted upper bound on pi(F), p/q");
    cer->add_option("--pi-source", ca.pi_source, "Where the asserted bound comes from");

    auto* sig = app.add_subcommand("sigma", "Upper density sigma_t of a generated sequence");
    SigmaArgs sa;
    sig->add_option("genspec", sa.path, "Generator JSON")->required();
    sig->add_option("--t", sa.t, "Subset size")->required()->check(CLI::PositiveNumber);
    sig->add_option("--i-from", sa.i_from, "First member index")->check(CLI::NonNegativeNumber);
    sig->add_option("--i-to", sa.i_to, "Last member index")->check(CLI::NonNegativeNumber);
    sig->add_option("--samples", sa.samples, "Samples per member in sampled mode")->check(CLI::PositiveNumber);
    sig->add_flag("--sampled", sa.force_sampled, "Sample even when exhaustive scan is possible");

    auto* den = app.add_subcommand("density", "Lubell values of the first members of a generated sequence");
    std::string density_path;
    int i_max = 0;
    den->add_option("genspec", density_path, "Generator JSON")->required();
    den->add_option("--i-max", i_max, "Last member index")->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const bool seed_given = seed_opt->count() > 0;
        if (*lub)
            run_lubell(g, lubell_path);
        else if (*lag)
            run_lagrangian(g, la, seed_given);
        else if (*tur)
            run_turan(g, ta);
        else if (*cls)
            run_classify(g, alpha_text);
        else if (*cer)
            run_certify(g, ca, seed_given);
        else if (*sig)
            run_sigma(g, sa);
        else if (*den)
            run_density(g, density_path, i_max);
    } catch (const CertificateFailure& e) {
        if (!tsv(g))
            emit(Json{{"error", "certificate_failure"}, {"failures", e.failures()}, {"message", e.what()}});
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
