#pragma once

// Run configuration, certificate assembly and the arboreal-cert/1 format.

#include <json.hpp>
#include <string>

#include "arboreal/error.hpp"
#include "arboreal/portrait.hpp"
#include "arboreal/presets.hpp"

namespace arboreal {

using Json = nlohmann::ordered_json;

inline constexpr const char* kCertificateFormat = "arboreal-cert/1";

// Malformed configuration or certificate text.
class ConfigError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

struct RunConfig {
  // Exactly one group source: a preset name or an explicit description
  // {"omega": 3 | "integers", "F": ..., "Fp": ...}.
  std::string preset;
  Json explicit_group;
  std::size_t word_length = 3;
  std::size_t depth = 16;
  std::uint64_t seed = 0;
  std::string xi = "(01)";
  DirectedEdge edge{Vertex::base(), 0};
};

RunConfig parse_config(const Json& doc);
RunConfig parse_config_text(const std::string& text);
Json config_to_json(const RunConfig& config);
GroupSetup resolve_group(const RunConfig& config);

// Group descriptions accepted in explicit configs: "alt", "sym", "cycle",
// "trivial", "translations", "finitary-affine", or {"generators": [[...]]}
// with image lists.
PermGroupSpec parse_group_spec(const Json& spec, const Alphabet& alphabet);

Json permutation_to_json(const Permutation& p);
Permutation permutation_from_json(const Json& doc, const Alphabet& alphabet);
Json automorphism_to_json(const TreeAutomorphism& g);
TreeAutomorphism automorphism_from_json(const Json& doc);

struct Certificate {
  Json document;

  bool valid() const { return document.at("status") == "VALID"; }
  std::string failing_stage() const;
  std::string serialize() const { return document.dump(2) + "\n"; }
  // Human-readable summary, one line per check.
  std::string report() const;
};

// Runs the full pipeline. Stage failures mark the certificate INVALID; they
// never throw. Deterministic for a fixed config.
Certificate build_certificate(const RunConfig& config);

Certificate parse_certificate(const std::string& text);

struct Reverification {
  bool identical = false;
  std::string detail;
};

// Rebuilds the certificate from its embedded config and compares the
// serialized forms byte for byte.
Reverification reverify(const Certificate& certificate);

}  // namespace arboreal
