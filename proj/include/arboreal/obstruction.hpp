#pragma once

// Half-tree fixator witnesses, orbit truncations of a boundary point, and
// the convolution identity for a disjointly supported pair.

#include <string>
#include <utility>
#include <vector>

#include "arboreal/dynamics.hpp"
#include "arboreal/end_point.hpp"
#include "arboreal/perm_group.hpp"
#include "arboreal/portrait.hpp"

namespace arboreal {

// The element that is the identity on h, acts by sigma at the tail v of h's
// edge, and acts on the branch leaving v with color b by the element of F
// sending b to sigma(b). Requires sigma(a) = a for the edge color a.
TreeAutomorphism half_tree_fixator_element(const PermGroupSpec& f, const HalfTree& h, const Permutation& sigma);

// The witness with sigma the first non-identity element of F'_a (on the
// integers, the transposition (a+1 a+2)). Requires F to act freely, F' to
// preserve the orbits of F, and F != F'.
TreeAutomorphism thm_c_witness(const PermGroupSpec& f, const PermGroupSpec& fp, const HalfTree& h);

// a fixes the half-tree behind e and moves only vertices in front of it; b
// is the mirror image.
std::pair<TreeAutomorphism, TreeAutomorphism> disjoint_pair(const PermGroupSpec& f, const PermGroupSpec& fp,
                                                             const DirectedEdge& e);

struct OrbitPoint {
  GeneratorWord word;
  EndPoint end;
  Word prefix;
};

struct OrbitTruncation {
  EndPoint base_end;
  std::vector<TreeAutomorphism> generators;
  std::size_t word_length = 0;
  std::size_t depth = 0;
  std::size_t heuristic_bound = 0;
  // Distinct at `depth`, sorted by word (length, then letters).
  std::vector<OrbitPoint> points;
  std::vector<std::string> warnings;
};

// Images of a periodic end under all products of at most word_length
// generators and inverses.
OrbitTruncation orbit_truncate(const std::vector<TreeAutomorphism>& gens, const EndPoint& xi, std::size_t word_length,
                               std::size_t depth);

// No orbit point is moved by both a and b, comparing at the orbit depth.
bool disjoint_support_check(const TreeAutomorphism& a, const TreeAutomorphism& b, const OrbitTruncation& orbit);

struct AnnihilationReport {
  std::vector<GeneratorWord> passed;
  std::vector<GeneratorWord> failed;
  std::size_t depth = 0;
  std::string caveat;
  bool all_pass() const { return failed.empty(); }
};

// Checks delta(eta) - delta(b eta) - delta(a eta) + delta(ab eta) = 0 for
// every orbit point, as the multiset identity {eta, ab eta} = {a eta, b eta}.
AnnihilationReport operator_annihilation_check(const TreeAutomorphism& a, const TreeAutomorphism& b,
                                               const OrbitTruncation& orbit);

struct KFiltrationReport {
  std::size_t n = 0;
  bool ok = false;
  std::size_t enumerated = 0;
  std::size_t fixing = 0;
  std::vector<Permutation> targets;
  std::vector<Permutation> hit;
  std::string detail;
};

// n = 0: only the identity of U(F) (core radius <= 2) fixes the edge of h.
// n = 1: every tau in F'_a is the local action at the tail of h of an
// element of G(F,F') fixing h, and the enumerated fixators map bijectively.
KFiltrationReport k_filtration_check(const PermGroupSpec& f, const PermGroupSpec& fp, const HalfTree& h,
                                     std::size_t n);

}  // namespace arboreal
