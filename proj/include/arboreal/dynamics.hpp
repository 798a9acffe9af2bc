#pragma once

// Isometry types, axes, half-tree fixation and free-subgroup certificates.

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "arboreal/end_point.hpp"
#include "arboreal/portrait.hpp"

namespace arboreal {

struct Elliptic {
  Vertex fixed_vertex;
};
struct Inversion {
  DirectedEdge edge;
};
struct Hyperbolic {
  std::size_t length = 0;
  Vertex axis_point;
};
using IsometryType = std::variant<Elliptic, Inversion, Hyperbolic>;

// Midpoint descent from v0; the result is verified before it is returned.
IsometryType classify_isometry(const TreeAutomorphism& g);
std::string describe(const IsometryType& type);
// 0 unless hyperbolic.
std::size_t translation_length(const IsometryType& type);

// (attracting, repelling). Throws PreconditionError unless g is hyperbolic.
std::pair<EndPoint, EndPoint> axis_and_ends(const TreeAutomorphism& g);

bool fixes_half_tree_pointwise(const TreeAutomorphism& g, const HalfTree& h);

// Products of generators are written as lists of letters; letter 2i is
// generator i and letter 2i+1 its inverse.
using GeneratorWord = std::vector<std::size_t>;
std::string word_label(const GeneratorWord& word);

struct GeneralTypeWitness {
  TreeAutomorphism g1;
  TreeAutomorphism g2;
  GeneratorWord word1;
  GeneratorWord word2;
  // The four ends differ within their first `depth` colors.
  std::size_t depth = 0;
};

// Searches products of length <= search_len in length-then-lexicographic
// order and returns the first pair of hyperbolic elements with four
// distinct ends. nullopt means no witness within the bound.
std::optional<GeneralTypeWitness> general_type_witness(const std::vector<TreeAutomorphism>& gens,
                                                       std::size_t search_len);

struct FreeGroupCertificate {
  std::size_t power = 0;
  HalfTree h1_plus;
  HalfTree h1_minus;
  HalfTree h2_plus;
  HalfTree h2_minus;
  // Human-readable statements of the verified inclusions.
  std::vector<std::string> inclusions;
};

// Throws PreconditionError for power 0, non-hyperbolic input, or shared
// ends. nullopt when no disjoint configuration exists at this power.
std::optional<FreeGroupCertificate> ping_pong_certificate(const TreeAutomorphism& g1, const TreeAutomorphism& g2,
                                                          std::size_t power);

}  // namespace arboreal
