#include "turanlab/jump.hpp"

#include "turanlab/errors.hpp"
#include "turanlab/named.hpp"

#include <algorithm>

namespace turanlab {

namespace {

const EdgeTypeSet kOneTwo{1, 2};
const EdgeTypeSet kTwo{2};
constexpr int kMaxWitnessVertices = 64;

BigInt floor_of(const Rational& r) {
    BigInt q = numerator(r) / denominator(r);
    if (r < 0 && q * denominator(r) != numerator(r))
        --q;
    return q;
}

Rational inv(const BigInt& t) {
    return Rational(BigInt(1), t);
}

int small(const BigInt& t) {
    if (t > kMaxWitnessVertices)
        throw UnsupportedSize("family parameter t = " + t.str() + " exceeds " +
                              std::to_string(kMaxWitnessVertices) + " vertices");
    return t.convert_to<int>();
}

Hypergraph single_loop() {
    return Hypergraph(1, {{0}});
}

std::size_t layer(const Hypergraph& g, int r) {
    return binomial(g.n(), r).convert_to<std::size_t>();
}

bool only_sizes(const Hypergraph& g, std::initializer_list<int> sizes) {
    std::size_t total = 0;
    for (int r : sizes)
        total += g.count_of_size(r);
    return total == g.edge_count();
}

bool is_complete(const Hypergraph& g, std::initializer_list<int> sizes) {
    for (int r : sizes)
        if (g.count_of_size(r) != layer(g, r))
            return false;
    return only_sizes(g, sizes);
}

bool is_single_loop(const Hypergraph& g) {
    return g.n() == 1 && g.edge_count() == 1 && g.count_of_size(1) == 1;
}

// One 1-edge plus the complete 2-graph; t = n. For n = 2 this is the chain.
bool is_k_star(const Hypergraph& g) {
    return g.n() >= 2 && g.count_of_size(1) == 1 && g.count_of_size(2) == layer(g, 2) && only_sizes(g, {1, 2});
}

PiEvidence closed(Rational value, std::string source) {
    PiEvidence e;
    e.grade = EvidenceGrade::closed_form;
    e.value = std::move(value);
    e.source = std::move(source);
    return e;
}

std::string label_t(const std::string& pattern, const BigInt& t) {
    return pattern + " with t = " + t.str();
}

} // namespace

const char* to_string(JumpVerdict v) noexcept {
    return v == JumpVerdict::strong_jump ? "strong_jump" : "weak_jump";
}

const char* to_string(JumpCase c) noexcept {
    switch (c) {
    case JumpCase::below_one:
        return "below_one";
    case JumpCase::chain:
        return "chain";
    case JumpCase::k_star:
        return "k_star";
    case JumpCase::k2_full:
        return "k2_full";
    case JumpCase::complete_12:
        return "complete_12";
    case JumpCase::top:
        return "top";
    }
    return "?";
}

const char* to_string(CertificateKind k) noexcept {
    return k == CertificateKind::jump ? "jump" : "strong_jump";
}

const char* to_string(EvidenceGrade g) noexcept {
    switch (g) {
    case EvidenceGrade::closed_form:
        return "closed_form";
    case EvidenceGrade::exhaustive:
        return "exhaustive";
    case EvidenceGrade::asserted:
        return "asserted";
    }
    return "?";
}

ClassifyResult classify12(const Rational& alpha) {
    if (alpha < 0 || alpha > 2)
        throw ValidationError("alpha must lie in [0, 2] for R = {1,2}, got " + to_string(alpha));
    ClassifyResult out;
    out.alpha = alpha;

    if (alpha == 2) {
        out.jump_case = JumpCase::top;
        out.lower = out.upper = out.pi_value = 2;
        out.family_label = "{} (empty family)";
        out.verdict = JumpVerdict::weak_jump;
        out.boundary_form = "2";
        out.note = "degenerate endpoint: |R| = 2 is a weak jump trivially";
        return out;
    }

    BigInt k = -1;
    if (alpha < 1) {
        // alpha in [1 - 1/(t-1), 1 - 1/t)  <=>  t - 1 <= 1/(1 - alpha) < t
        out.jump_case = JumpCase::below_one;
        out.t = floor_of(1 / (1 - alpha)) + 1;
        out.lower = 1 - inv(out.t - 1);
        out.upper = 1 - inv(out.t);
        out.lambda_values = {1, 1 - inv(out.t)};
        out.family_label = label_t("{K_1^{1}, K_t^{2}}", out.t);
        out.boundary_form = "k/(k+1)";
        k = out.t - 2;
    } else if (alpha < Rational(9, 8)) {
        out.jump_case = JumpCase::chain;
        out.lower = 1;
        out.upper = Rational(9, 8);
        out.lambda_values = {Rational(9, 8)};
        out.family_label = "{chain}";
        out.boundary_form = "1";
    } else if (alpha < Rational(5, 4)) {
        // alpha in [5/4 - 1/(4(t-1)), 5/4 - 1/(4t))  <=>  t - 1 <= 1/(5 - 4 alpha) < t
        out.jump_case = JumpCase::k_star;
        out.t = floor_of(1 / (5 - 4 * alpha)) + 1;
        out.lower = Rational(5, 4) - inv(4 * (out.t - 1));
        out.upper = Rational(5, 4) - inv(4 * out.t);
        out.lambda_values = {out.upper, Rational(3, 2)};
        out.family_label = label_t("{K_t^*, K_2^{1,2}}", out.t);
        out.boundary_form = "1 + k/(4(k+1))";
        k = out.t - 2;
    } else if (alpha < Rational(3, 2)) {
        out.jump_case = JumpCase::k2_full;
        out.lower = Rational(5, 4);
        out.upper = Rational(3, 2);
        out.lambda_values = {Rational(3, 2)};
        out.family_label = "{K_2^{1,2}}";
        out.boundary_form = "5/4";
    } else {
        // alpha in [2 - 1/(t-1), 2 - 1/t)  <=>  t - 1 <= 1/(2 - alpha) < t
        out.jump_case = JumpCase::complete_12;
        out.t = floor_of(1 / (2 - alpha)) + 1;
        out.lower = 2 - inv(out.t - 1);
        out.upper = 2 - inv(out.t);
        out.lambda_values = {out.upper};
        out.family_label = label_t("{K_t^{1,2}}", out.t);
        out.boundary_form = "(2k+1)/(k+1)";
        k = out.t - 2;
    }
    out.pi_value = out.lower;
    if (alpha == out.lower) {
        out.verdict = JumpVerdict::weak_jump;
        if (k >= 0)
            out.boundary_k = k;
        if (alpha == 0)
            out.note = "degenerate endpoint: 0 is listed as a weak jump";
    } else {
        out.verdict = JumpVerdict::strong_jump;
        out.boundary_form.reset();
    }
    return out;
}

ForbiddenFamily ClassifyResult::family() const {
    std::vector<Hypergraph> members;
    switch (jump_case) {
    case JumpCase::below_one:
        members = {single_loop(), named::complete(small(t), kTwo)};
        break;
    case JumpCase::chain:
        members = {named::chain()};
        break;
    case JumpCase::k_star:
        members = {named::k_star(small(t)), named::complete(2, kOneTwo)};
        break;
    case JumpCase::k2_full:
        members = {named::complete(2, kOneTwo)};
        break;
    case JumpCase::complete_12:
        members = {named::complete(small(t), kOneTwo)};
        break;
    case JumpCase::top:
        break;
    }
    return ForbiddenFamily(ContainmentMode::subgraph, std::move(members), kOneTwo);
}

std::optional<PiEvidence> closed_form_pi(const ForbiddenFamily& family) {
    if (family.mode() != ContainmentMode::subgraph)
        return std::nullopt;
    const auto& m = family.members();
    if (m.empty())
        return closed(static_cast<int>(family.ambient().size()),
                      "empty family: the complete graph is allowed");

    if (family.ambient() == kTwo) {
        if (m.size() == 1 && m[0].n() >= 2 && is_complete(m[0], {2})) {
            const BigInt t = m[0].n();
            return closed(1 - inv(t - 1), "Turan: pi(K_t^{2}) = 1 - 1/(t-1)");
        }
        return std::nullopt;
    }
    if (!(family.ambient() == kOneTwo))
        return std::nullopt;

    if (m.size() == 1) {
        const auto& g = m[0];
        if (g.n() == 2 && is_k_star(g))
            return closed(1, "a two-vertex chain has density 1");
        if (g.n() == 2 && is_complete(g, {1, 2}))
            return closed(Rational(5, 4), "pi(K_2^{1,2}) = 5/4");
        if (g.n() >= 3 && is_complete(g, {1, 2}))
            return closed(2 - inv(BigInt(g.n() - 1)), "pi(K_t^{1,2}) = 2 - 1/(t-1)");
        return std::nullopt;
    }
    if (m.size() == 2) {
        for (int i = 0; i < 2; ++i) {
            const auto& a = m[static_cast<std::size_t>(i)];
            const auto& b = m[static_cast<std::size_t>(1 - i)];
            if (is_single_loop(a) && b.n() >= 2 && is_complete(b, {2})) {
                const BigInt t = b.n();
                return closed(1 - inv(t - 1), "F-free graphs have no 1-edges, so pi = pi(K_t^{2}) = 1 - 1/(t-1)");
            }
            if (b.n() == 2 && is_complete(b, {1, 2}) && a.n() >= 3 && is_k_star(a)) {
                const BigInt t = a.n();
                return closed(Rational(5, 4) - inv(4 * (t - 1)), "pi(K_t^*, K_2^{1,2}) = 5/4 - 1/(4(t-1))");
            }
        }
    }
    return std::nullopt;
}

JumpCertificate build_certificate(const Rational& alpha, const ForbiddenFamily& family, bool strict,
                                  const CertificateOptions& options) {
    if (family.members().empty())
        throw ValidationError("a jump certificate needs a non-empty family");
    if (!options.witness_points.empty() && options.witness_points.size() != family.members().size())
        throw ValidationError("witness_points must have one entry per family member");

    std::vector<std::string> failures;
    std::vector<std::string> details;

    std::vector<LambdaWitness> witnesses;
    auto opt = options.optimizer;
    opt.rational_certificate = true;
    for (std::size_t i = 0; i < family.members().size(); ++i) {
        const auto& member = family.members()[i];
        std::optional<RationalPoint> point;
        if (!options.witness_points.empty())
            point = options.witness_points[i];
        if (!point)
            point = *maximize(member, opt).certificate_point;
        if (point->dimension() != static_cast<std::size_t>(member.n()))
            throw ValidationError("witness point dimension does not match member " + std::to_string(i));
        auto value = certify_at(member, *point);
        if (value <= alpha) {
            if (std::find(failures.begin(), failures.end(), "condition_ii_failure") == failures.end())
                failures.push_back("condition_ii_failure");
            details.push_back("member " + std::to_string(i) + ": certified lambda " + to_string(value) +
                              " <= alpha " + to_string(alpha));
        }
        witnesses.push_back({member, std::move(*point), std::move(value)});
    }

    auto satisfies = [&](const Rational& pi) { return strict ? pi < alpha : pi <= alpha; };

    std::optional<PiEvidence> evidence = options.pi_evidence;
    if (!evidence)
        evidence = closed_form_pi(family);
    if (!evidence && options.search_n_max > 0) {
        int n0 = std::max(1, family.max_member_edge_size());
        for (int n = n0; n <= options.search_n_max; ++n) {
            auto rec = pi_n(family, n, options.search);
            PiEvidence e;
            e.grade = EvidenceGrade::exhaustive;
            e.value = rec.pi_n;
            e.source = "exhaustive pi_n at n = " + std::to_string(n) + " (pi <= pi_n)";
            e.record = std::move(rec);
            const bool done = satisfies(e.value);
            evidence = std::move(e);
            if (done)
                break;
        }
    }

    if (!evidence) {
        failures.push_back("incomplete_certificate");
        details.push_back("no evidence for pi(F): not a catalogued closed form and no search requested");
    } else if (!satisfies(evidence->value)) {
        failures.push_back(strict ? "condition_i_prime_failure" : "condition_i_failure");
        details.push_back("pi evidence " + to_string(evidence->value) + (strict ? " is not < alpha " : " is not <= alpha ") +
                          to_string(alpha));
    }

    if (!failures.empty()) {
        std::string what = "certificate failed:";
        for (const auto& d : details)
            what += " " + d + ";";
        what.pop_back();
        throw CertificateFailure(what, failures);
    }

    Rational min_lambda = witnesses.front().value;
    for (const auto& w : witnesses)
        min_lambda = std::min(min_lambda, w.value);

    return JumpCertificate{alpha, family, std::move(witnesses), std::move(*evidence),
                           strict ? CertificateKind::strong_jump : CertificateKind::jump, min_lambda - alpha};
}

std::optional<WeakJumpWitness> weak_jump_witness(const Rational& alpha) {
    const auto c = classify12(alpha);
    if (c.verdict != JumpVerdict::weak_jump)
        return std::nullopt;

    WeakJumpWitness w;
    w.alpha = alpha;
    const BigInt k = c.boundary_k.value_or(0);
    const BigInt s = k + 1, next = k + 2;
    auto uniform = [](int n) { return RationalPoint(std::vector<Rational>(static_cast<std::size_t>(n), Rational(1, n))); };
    auto fits = [](const BigInt& n) { return n <= kMaxWitnessVertices; };

    switch (c.jump_case) {
    case JumpCase::below_one: {
        w.description = "lambda(K_" + s.str() + "^{2}) = " + to_string(alpha) + " at the uniform point; pi({K_1^{1}, K_" +
                        next.str() + "^{2}}) = " + to_string(alpha);
        if (fits(s)) {
            w.graph = named::complete(s.convert_to<int>(), kTwo);
            w.point = uniform(s.convert_to<int>());
        }
        if (fits(next))
            w.family = std::vector<Hypergraph>{single_loop(), named::complete(next.convert_to<int>(), kTwo)};
        break;
    }
    case JumpCase::chain:
        w.graph = single_loop();
        w.point = RationalPoint({1});
        w.family = std::vector<Hypergraph>{named::chain()};
        w.description = "lambda(K_1^{1}) = 1; pi({chain}) = 1";
        break;
    case JumpCase::k_star: {
        w.description = "lambda(K_" + s.str() + "^*) = " + to_string(alpha) + " at x_0 = (s+1)/(2s), others 1/(2s); pi({K_" +
                        next.str() + "^*, K_2^{1,2}}) = " + to_string(alpha);
        if (fits(s)) {
            const int n = s.convert_to<int>();
            std::vector<Rational> x(static_cast<std::size_t>(n), Rational(1, 2 * n));
            x[0] = Rational(n + 1, 2 * n);
            w.graph = named::k_star(n);
            w.point = RationalPoint(std::move(x));
        }
        if (fits(next))
            w.family = std::vector<Hypergraph>{named::k_star(next.convert_to<int>()), named::complete(2, kOneTwo)};
        break;
    }
    case JumpCase::k2_full:
        w.family = std::vector<Hypergraph>{named::complete(2, kOneTwo)};
        w.description = "pi({K_2^{1,2}}) = 5/4";
        break;
    case JumpCase::complete_12: {
        w.description = "lambda(K_" + s.str() + "^{1,2}) = " + to_string(alpha) + " at the uniform point; pi({K_" +
                        next.str() + "^{1,2}}) = " + to_string(alpha);
        if (fits(s)) {
            w.graph = named::complete(s.convert_to<int>(), kOneTwo);
            w.point = uniform(s.convert_to<int>());
        }
        if (fits(next))
            w.family = std::vector<Hypergraph>{named::complete(next.convert_to<int>(), kOneTwo)};
        break;
    }
    case JumpCase::top:
        w.family = std::vector<Hypergraph>{};
        w.description = "degenerate: the empty family on {1,2} has density 2";
        break;
    }
    return w;
}

} // namespace turanlab
