#include "turanlab/io.hpp"

#include "turanlab/errors.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace turanlab::io {

namespace {

std::string at(std::string_view where, std::string_view key) {
    return std::string(where) + "." + std::string(key);
}

[[noreturn]] void fail(std::string_view where, const std::string& message) {
    throw ValidationError(std::string(where) + ": " + message);
}

const Json& field(const Json& j, std::string_view where, const char* key) {
    if (!j.is_object())
        fail(where, "expected an object");
    const auto it = j.find(key);
    if (it == j.end())
        fail(where, std::string("missing key \"") + key + "\"");
    return *it;
}

const Json* optional_field(const Json& j, std::string_view where, const char* key) {
    if (!j.is_object())
        fail(where, "expected an object");
    const auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

std::int64_t integer(const Json& j, std::string_view where) {
    if (!j.is_number_integer())
        fail(where, "expected an integer");
    if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
        fail(where, "integer out of range");
    return j.get<std::int64_t>();
}

int small_int(const Json& j, std::string_view where) {
    const auto v = integer(j, where);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
        fail(where, "integer out of range");
    return static_cast<int>(v);
}

std::vector<int> int_list(const Json& j, std::string_view where) {
    if (!j.is_array())
        fail(where, "expected an array");
    std::vector<int> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(small_int(j[i], std::string(where) + "[" + std::to_string(i) + "]"));
    return out;
}

template <class F>
auto wrap(std::string_view where, F&& f) {
    try {
        return f();
    } catch (const ParseError&) {
        throw;
    } catch (const ValidationError& e) {
        if (std::string_view(e.what()).starts_with(where))
            throw;
        throw ValidationError(std::string(where) + ": " + e.what());
    }
}

Json point_json(const RationalPoint& p) {
    Json out = Json::array();
    for (const auto& w : p.weights())
        out.push_back(rational_json(w));
    return out;
}

Json big_json(const BigInt& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
        return v.convert_to<std::int64_t>();
    return v.str();
}

} // namespace

Json parse(std::string_view text, std::string_view source) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        const std::size_t pos = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n');
        const auto nl = text.rfind('\n', pos == 0 ? 0 : pos - 1);
        const auto col = nl == std::string_view::npos || pos == 0 ? pos + 1 : pos - nl;
        std::string message = e.what();
        if (const auto cut = message.find("syntax error"); cut != std::string::npos)
            message = message.substr(cut);
        throw ParseError(std::string(source) + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " +
                         message);
    }
}

Json read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValidationError("cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path.string());
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json rational_json(const Rational& r) { return to_string(r); }

Rational rational_from(const Json& j, std::string_view where) {
    if (j.is_number_integer())
        return Rational(integer(j, where));
    if (!j.is_string())
        fail(where, "expected a rational string \"p/q\"");
    return wrap(where, [&] { return parse_rational(j.get<std::string>()); });
}

Json to_json(const Hypergraph& h) {
    Json edges = Json::array();
    for (const auto& e : h.edges())
        edges.push_back(e);
    return Json{{"n", h.n()}, {"edges", edges}};
}

Hypergraph hypergraph_from(const Json& j, std::string_view where) {
    const int n = small_int(field(j, where, "n"), at(where, "n"));
    const auto& edges = field(j, where, "edges");
    if (!edges.is_array())
        fail(at(where, "edges"), "expected an array");
    std::vector<Edge> out;
    for (std::size_t i = 0; i < edges.size(); ++i)
        out.push_back(int_list(edges[i], at(where, "edges") + "[" + std::to_string(i) + "]"));
    return wrap(where, [&] { return Hypergraph(n, std::move(out)); });
}

Json to_json(const Pattern& p) {
    Json edges = Json::array();
    for (const auto& e : p.edges())
        edges.push_back(Json{{"mults", e}});
    return Json{{"n", p.n()}, {"edges", edges}};
}

Pattern pattern_from(const Json& j, std::string_view where) {
    const int n = small_int(field(j, where, "n"), at(where, "n"));
    const auto& edges = field(j, where, "edges");
    if (!edges.is_array())
        fail(at(where, "edges"), "expected an array");
    std::vector<Pattern::Multiplicities> out;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto w = at(where, "edges") + "[" + std::to_string(i) + "]";
        out.push_back(int_list(field(edges[i], w, "mults"), at(w, "mults")));
    }
    return wrap(where, [&] { return Pattern(n, std::move(out)); });
}

Pattern pattern_or_graph_from(const Json& j) {
    const auto& edges = field(j, "input", "edges");
    if (edges.is_array() && !edges.empty() && edges[0].is_object())
        return pattern_from(j, "pattern");
    return Pattern::from_hypergraph(hypergraph_from(j, "graph"));
}

Json to_json(const ForbiddenFamily& f) {
    Json members = Json::array();
    for (const auto& m : f.members())
        members.push_back(to_json(m));
    return Json{{"mode", to_string(f.mode())}, {"ambient", f.ambient().sizes()}, {"members", members}};
}

ForbiddenFamily family_from(const Json& j) {
    const std::string where = "family";
    ContainmentMode mode = ContainmentMode::subgraph;
    if (const auto* m = optional_field(j, where, "mode")) {
        if (!m->is_string())
            fail(at(where, "mode"), "expected \"subgraph\" or \"induced\"");
        mode = wrap(at(where, "mode"), [&] { return parse_containment_mode(m->get<std::string>()); });
    }
    const auto& members = field(j, where, "members");
    if (!members.is_array())
        fail(at(where, "members"), "expected an array");
    std::vector<Hypergraph> graphs;
    std::set<int> used;
    for (std::size_t i = 0; i < members.size(); ++i) {
        graphs.push_back(hypergraph_from(members[i], at(where, "members") + "[" + std::to_string(i) + "]"));
        for (int r : graphs.back().edge_sizes())
            used.insert(r);
    }
    std::vector<int> ambient;
    if (const auto* a = optional_field(j, where, "ambient"))
        ambient = int_list(*a, at(where, "ambient"));
    else if (used.empty())
        fail(where, "an empty family needs an explicit \"ambient\" edge-size set");
    else
        ambient.assign(used.begin(), used.end());
    return wrap(where, [&] { return ForbiddenFamily(mode, std::move(graphs), EdgeTypeSet(std::move(ambient))); });
}

Json to_json(const OptimizerConfig& c) {
    return Json{{"restarts", c.restarts},
                {"max_iters", c.max_iters},
                {"tol", c.tol},
                {"seed", c.seed},
                {"rational_certificate", c.rational_certificate},
                {"max_denominator", c.max_denominator}};
}

OptimizerConfig optimizer_config_from(const Json& j, OptimizerConfig base) {
    const std::string where = "config";
    if (!j.is_object())
        fail(where, "expected an object");
    for (const auto& [key, value] : j.items()) {
        const auto w = at(where, key);
        if (key == "restarts") {
            base.restarts = small_int(value, w);
        } else if (key == "max_iters") {
            base.max_iters = small_int(value, w);
        } else if (key == "tol") {
            if (!value.is_number())
                fail(w, "expected a number");
            base.tol = value.get<double>();
        } else if (key == "seed") {
            if (!value.is_number_unsigned())
                fail(w, "expected a non-negative integer");
            base.seed = value.get<std::uint64_t>();
        } else if (key == "rational_certificate") {
            if (!value.is_boolean())
                fail(w, "expected true or false");
            base.rational_certificate = value.get<bool>();
        } else if (key == "max_denominator") {
            base.max_denominator = integer(value, w);
        } else {
            fail(w, "unknown key");
        }
    }
    if (base.restarts < 0)
        fail(at(where, "restarts"), "must be >= 0");
    if (base.max_iters < 1)
        fail(at(where, "max_iters"), "must be >= 1");
    if (!(base.tol > 0))
        fail(at(where, "tol"), "must be > 0");
    if (base.max_denominator < 1)
        fail(at(where, "max_denominator"), "must be >= 1");
    return base;
}

Json to_json(const LagrangianResult& r) {
    Json out{{"value", r.value},
             {"maximizer", r.maximizer.weights()},
             {"support", r.support}};
    if (r.certified_lower_bound) {
        out["certificate"] = rational_json(*r.certified_lower_bound);
        out["certificate_point"] = point_json(*r.certificate_point);
        out["certificate_matches"] = r.certificate_matches();
    }
    out["stationarity_residual"] = r.stationarity_residual;
    out["classes"] = r.classes;
    out["starts"] = r.starts;
    out["converged_starts"] = r.converged_starts;
    return out;
}

Json to_json(const DensityRecord& r) {
    Json extremal = Json::array();
    for (const auto& g : r.extremal)
        extremal.push_back(to_json(g));
    return Json{{"n", r.n},
                {"pi_n", rational_json(r.pi_n)},
                {"extremal", extremal},
                {"count", r.graphs_enumerated},
                {"exhaustive", r.exhaustive}};
}

Json density_report(const ForbiddenFamily& f, const DensityBound& b) {
    Json records = Json::array();
    for (const auto& r : b.records)
        records.push_back(to_json(r));
    return Json{{"family", to_json(f)}, {"mode", to_string(f.mode())}, {"records", records}};
}

Json to_json(const ClassifyResult& r) {
    Json lambdas = Json::array();
    for (const auto& v : r.lambda_values)
        lambdas.push_back(rational_json(v));
    Json out{{"alpha", rational_json(r.alpha)},
             {"verdict", to_string(r.verdict)},
             {"case", to_string(r.jump_case)},
             {"t", big_json(r.t)},
             {"interval", Json::array({rational_json(r.lower), rational_json(r.upper)})},
             {"pi", rational_json(r.pi_value)},
             {"lambda_values", lambdas},
             {"family", r.family_label}};
    if (r.boundary_form) {
        out["boundary_form"] = *r.boundary_form;
        out["boundary_k"] = big_json(*r.boundary_k);
    }
    if (!r.note.empty())
        out["note"] = r.note;
    return out;
}

Json to_json(const WeakJumpWitness& w) {
    Json out{{"alpha", rational_json(w.alpha)}, {"description", w.description}};
    if (w.graph)
        out["graph"] = to_json(*w.graph);
    if (w.point)
        out["point"] = point_json(*w.point);
    if (w.family) {
        Json members = Json::array();
        for (const auto& g : *w.family)
            members.push_back(to_json(g));
        out["family"] = members;
    }
    return out;
}

Json to_json(const PiEvidence& e) {
    Json out{{"grade", to_string(e.grade)}, {"value", rational_json(e.value)}, {"source", e.source}};
    if (e.record)
        out["record"] = to_json(*e.record);
    return out;
}

Json to_json(const JumpCertificate& c) {
    Json witnesses = Json::array();
    for (const auto& w : c.lambda_witnesses)
        witnesses.push_back(
            Json{{"member", to_json(w.member)}, {"point", point_json(w.point)}, {"value", rational_json(w.value)}});
    return Json{{"alpha", rational_json(c.alpha)},
                {"kind", to_string(c.kind)},
                {"family", to_json(c.family)},
                {"lambda_witnesses", witnesses},
                {"pi_evidence", to_json(c.pi_evidence)},
                {"gap", rational_json(c.gap)}};
}

Json to_json(const SequenceGenerator& g) {
    Json params;
    switch (g.kind()) {
    case GeneratorKind::blowup: {
        Json x = Json::array();
        for (const auto& v : g.proportions())
            x.push_back(rational_json(v));
        params = Json{{"graph", to_json(g.base())}, {"proportions", x}};
        break;
    }
    case GeneratorKind::turan:
        params = Json{{"parts", g.parts()}};
        break;
    case GeneratorKind::union_of:
        params = Json{{"left", to_json(g.left())}, {"right", to_json(g.right())}};
        break;
    case GeneratorKind::constant:
        params = Json{{"graph", to_json(g.base())}};
        break;
    case GeneratorKind::complete:
        params = Json{{"sizes", g.sizes().sizes()}};
        break;
    }
    if (g.kind() != GeneratorKind::union_of) {
        params["start"] = g.start();
        params["step"] = g.step();
    }
    return Json{{"kind", to_string(g.kind())}, {"params", params}};
}

namespace {

SequenceGenerator generator_at(const Json& j, const std::string& where) {
    const auto& kind_json = field(j, where, "kind");
    if (!kind_json.is_string())
        fail(at(where, "kind"), "expected a string");
    const auto kind = kind_json.get<std::string>();
    const auto& params = field(j, where, "params");
    const auto pw = at(where, "params");
    const auto schedule = [&](const char* key, int fallback) {
        const auto* v = optional_field(params, pw, key);
        return v ? small_int(*v, at(pw, key)) : fallback;
    };
    return wrap(where, [&] {
        if (kind == "blowup") {
            const auto& xs = field(params, pw, "proportions");
            if (!xs.is_array())
                fail(at(pw, "proportions"), "expected an array");
            std::vector<Rational> x;
            for (std::size_t i = 0; i < xs.size(); ++i)
                x.push_back(rational_from(xs[i], at(pw, "proportions") + "[" + std::to_string(i) + "]"));
            return SequenceGenerator::blowup(hypergraph_from(field(params, pw, "graph"), at(pw, "graph")), x,
                                             schedule("start", 1), schedule("step", 1));
        }
        if (kind == "turan")
            return SequenceGenerator::turan(small_int(field(params, pw, "parts"), at(pw, "parts")),
                                            schedule("start", 1), schedule("step", 1));
        if (kind == "union")
            return SequenceGenerator::union_of(generator_at(field(params, pw, "left"), at(pw, "left")),
                                               generator_at(field(params, pw, "right"), at(pw, "right")));
        if (kind == "constant") {
            auto h = hypergraph_from(field(params, pw, "graph"), at(pw, "graph"));
            const int n = h.n();
            return SequenceGenerator::constant(std::move(h), schedule("start", std::max(n, 1)), schedule("step", 1));
        }
        if (kind == "complete")
            return SequenceGenerator::complete(EdgeTypeSet(int_list(field(params, pw, "sizes"), at(pw, "sizes"))),
                                               schedule("start", 1), schedule("step", 1));
        fail(at(where, "kind"), "unknown generator kind \"" + kind + "\" (blowup, turan, union, constant, complete)");
    });
}

} // namespace

SequenceGenerator generator_from(const Json& j) { return generator_at(j, "generator"); }

Json to_json(const DensityEstimate& e) {
    Json members = Json::array();
    for (std::size_t i = 0; i < e.vertices.size(); ++i)
        members.push_back(Json{{"i", i}, {"n", e.vertices[i]}, {"h", rational_json(e.lubell[i])}});
    Json out{{"members", members}, {"last", rational_json(e.last)}};
    out["last_difference"] = e.last_difference ? rational_json(*e.last_difference) : Json(nullptr);
    return out;
}

Json to_json(const UpperDensityReport& r) {
    Json h = Json::array();
    for (const auto& [i, v] : r.h_values)
        h.push_back(Json{{"member", i}, {"h", rational_json(v)}});
    return Json{{"t", r.t},
                {"sigma_t", rational_json(r.sigma)},
                {"member", r.member},
                {"subset", r.subset},
                {"h_values", h},
                {"exhaustive", r.exhaustive},
                {"subsets_evaluated", r.subsets_evaluated}};
}

} // namespace turanlab::io
