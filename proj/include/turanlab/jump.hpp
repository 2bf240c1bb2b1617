#pragma once

#include "turanlab/hypergraph.hpp"
#include "turanlab/lagrangian.hpp"
#include "turanlab/turan.hpp"

#include <optional>
#include <string>
#include <vector>

namespace turanlab {

enum class JumpVerdict { strong_jump, weak_jump };
const char* to_string(JumpVerdict v) noexcept;

/// Which family covers alpha in the R = {1,2} classification. Each case is
/// a run of half-open intervals [pi(F_t), lambda_min(F_t)) indexed by t.
enum class JumpCase {
    below_one,   // {K_1^{1}, K_t^{2}},        [1 - 1/(t-1), 1 - 1/t),         t >= 2
    chain,       // {chain},                   [1, 9/8)
    k_star,      // {K_t^*, K_2^{1,2}},         [5/4 - 1/(4(t-1)), 5/4 - 1/(4t)), t >= 3
    k2_full,     // {K_2^{1,2}},               [5/4, 3/2)
    complete_12, // {K_t^{1,2}},               [2 - 1/(t-1), 2 - 1/t),          t >= 3
    top,         // alpha = 2
};
const char* to_string(JumpCase c) noexcept;

struct ClassifyResult {
    Rational alpha;
    JumpVerdict verdict = JumpVerdict::strong_jump;
    JumpCase jump_case = JumpCase::below_one;
    /// Family parameter t (0 when the case has none).
    BigInt t = 0;
    Rational lower, upper;
    /// pi of the family; equals `lower`.
    Rational pi_value;
    /// Lagrangians of the family members, in member order.
    std::vector<Rational> lambda_values;
    std::string family_label;
    /// For weak jumps: which listed form matched and its index k.
    std::optional<std::string> boundary_form;
    std::optional<BigInt> boundary_k;
    std::string note;

    /// The covering family on ambient {1,2}; throws UnsupportedSize for t > 64.
    ForbiddenFamily family() const;
};

/// Classification of alpha in [0,2] for R = {1,2}, decided in exact
/// arithmetic. Throws ValidationError outside [0,2].
ClassifyResult classify12(const Rational& alpha);

enum class CertificateKind { jump, strong_jump };
const char* to_string(CertificateKind k) noexcept;

enum class EvidenceGrade { closed_form, exhaustive, asserted };
const char* to_string(EvidenceGrade g) noexcept;

struct PiEvidence {
    EvidenceGrade grade = EvidenceGrade::asserted;
    /// An upper bound on pi(F): the closed form, a computed pi_n, or the
    /// asserted value.
    Rational value;
    std::string source;
    std::optional<DensityRecord> record;
};

struct LambdaWitness {
    Hypergraph member;
    RationalPoint point;
    /// Exact polynomial value at `point`, a lower bound on lambda(member).
    Rational value;
};

struct JumpCertificate {
    Rational alpha;
    ForbiddenFamily family;
    std::vector<LambdaWitness> lambda_witnesses;
    PiEvidence pi_evidence;
    CertificateKind kind = CertificateKind::jump;
    /// min certified lambda - alpha; positive for every valid certificate.
    Rational gap;
};

struct CertificateOptions {
    /// Used as given when present; otherwise the closed-form catalog is
    /// consulted, then exhaustive search if `search_n_max` > 0.
    std::optional<PiEvidence> pi_evidence;
    int search_n_max = 0;
    SearchConfig search;
    /// Optional per-member rational points; missing entries are found by
    /// maximizing the Lagrangian and rationalizing.
    std::vector<std::optional<RationalPoint>> witness_points;
    OptimizerConfig optimizer;
};

/// Closed-form pi for the families of the R = {1,2} classification (and
/// Turan's theorem for K_t^{2} on ambient {2}), recognized up to isomorphism.
std::optional<PiEvidence> closed_form_pi(const ForbiddenFamily& family);

/// Checks: every member has a certified lambda > alpha, and pi(F) <= alpha
/// (< alpha when strict). Throws CertificateFailure listing every failed
/// condition ("condition_ii_failure", "condition_i_failure",
/// "incomplete_certificate"); strict requests are never downgraded.
JumpCertificate build_certificate(const Rational& alpha, const ForbiddenFamily& family, bool strict,
                                  const CertificateOptions& options = {});

struct WeakJumpWitness {
    Rational alpha;
    /// A graph whose Lagrangian equals alpha, with a maximizing point.
    std::optional<Hypergraph> graph;
    std::optional<RationalPoint> point;
    /// A family whose Turan density equals alpha.
    std::optional<std::vector<Hypergraph>> family;
    std::string description;
};

/// Witness constructions for the weak jumps of R = {1,2}; nullopt for
/// strong jumps. Constructions needing more than 64 vertices are omitted
/// from the result (the description still names them).
std::optional<WeakJumpWitness> weak_jump_witness(const Rational& alpha);

} // namespace turanlab
