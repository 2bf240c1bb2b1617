#pragma once

#include "turanlab/hypergraph.hpp"
#include "turanlab/jump.hpp"
#include "turanlab/lagrangian.hpp"
#include "turanlab/sequence.hpp"
#include "turanlab/turan.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>

namespace turanlab::io {

/// Objects keep the order keys were written in, so output is byte-stable.
using Json = nlohmann::ordered_json;

/// Throws ParseError naming `source`, line and column on malformed text.
Json parse(std::string_view text, std::string_view source = "<input>");
Json read_file(const std::filesystem::path& path);

/// Two-space indented text with a trailing newline.
std::string dump(const Json& j);

// Rationals are "p/q" strings in lowest terms; readers also take integers.
Json rational_json(const Rational& r);
Rational rational_from(const Json& j, std::string_view where);

// {"n": 3, "edges": [[0], [0, 1]]}
Json to_json(const Hypergraph& h);
Hypergraph hypergraph_from(const Json& j, std::string_view where = "graph");

// {"n": 2, "edges": [{"mults": [2, 1]}]}
Json to_json(const Pattern& p);
Pattern pattern_from(const Json& j, std::string_view where = "pattern");
/// Reads either format; simple edge arrays are promoted to a pattern.
Pattern pattern_or_graph_from(const Json& j);

// {"mode": "subgraph", "ambient": [1, 2], "members": [graph, ...]}
// "mode" defaults to subgraph; "ambient" defaults to the union of member
// edge sizes and is required for an empty family.
Json to_json(const ForbiddenFamily& f);
ForbiddenFamily family_from(const Json& j);

Json to_json(const OptimizerConfig& c);
/// Missing keys keep the values already in `base`.
OptimizerConfig optimizer_config_from(const Json& j, OptimizerConfig base = {});

Json to_json(const LagrangianResult& r);

Json to_json(const DensityRecord& r);
Json density_report(const ForbiddenFamily& f, const DensityBound& b);

Json to_json(const ClassifyResult& r);
Json to_json(const WeakJumpWitness& w);
Json to_json(const PiEvidence& e);
Json to_json(const JumpCertificate& c);

// {"kind": "turan", "params": {"parts": 2, "start": 4, "step": 1}}
Json to_json(const SequenceGenerator& g);
SequenceGenerator generator_from(const Json& j);

Json to_json(const DensityEstimate& e);
Json to_json(const UpperDensityReport& r);

} // namespace turanlab::io
