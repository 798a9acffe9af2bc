#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "arboreal/finite_group.hpp"
#include "arboreal/permutation.hpp"

namespace arboreal {

// A permutation group on the color set.
//
// Finite groups are listed exhaustively. On the integers three families are
// available: translations, finitary-permutations-times-translations (all
// Affine permutations), and the point stabilizer of the latter.
//
// Amenability is never decided; amenability_reason is a free-text
// annotation carried into certificates.
class PermGroupSpec {
 public:
  enum class Kind { FiniteListed, ZTranslations, ZFinitaryAffine, ZFinitaryStabilizer };

  // Checks that the list is closed under products and inverses and contains
  // the identity. Elements are stored sorted and deduplicated.
  static PermGroupSpec listed(Color degree, std::vector<Permutation> elements, std::string name,
                              std::string amenability_reason = "finite");
  static PermGroupSpec generated(Color degree, const std::vector<Permutation>& generators, std::string name);
  static PermGroupSpec symmetric(Color degree);
  static PermGroupSpec alternating(Color degree);
  // Generated by the cycle (0 1 ... d-1).
  static PermGroupSpec cyclic_rotation(Color degree);
  static PermGroupSpec trivial(Color degree);
  static PermGroupSpec z_translations();
  static PermGroupSpec z_finitary_affine();
  static PermGroupSpec z_finitary_stabilizer(Color fixed);

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::FiniteListed; }
  Alphabet domain() const;
  const std::string& name() const { return name_; }
  const std::string& amenability_reason() const { return amenability_reason_; }
  // Listed elements, identity first. Throws for the integer families.
  const std::vector<Permutation>& elements() const;
  std::size_t order() const { return elements().size(); }
  // The point fixed by a ZFinitaryStabilizer family.
  Color fixed_point() const;

  bool contains(const Permutation& p) const;
  // Elements with from -> to (finite groups only), in stored order.
  std::vector<Permutation> elements_mapping(Color from, Color to) const;
  // Orbit partition of the color set (finite groups only).
  std::vector<std::vector<Color>> orbits() const;

  Permutation sample(std::mt19937_64& rng) const;
  // A random element with from -> to, if one exists.
  std::optional<Permutation> sample_mapping(Color from, Color to, std::mt19937_64& rng) const;

  bool operator==(const PermGroupSpec& other) const;

 private:
  Kind kind_ = Kind::FiniteListed;
  Color degree_ = 0;
  Color fixed_ = 0;
  std::vector<Permutation> elements_;
  std::string name_;
  std::string amenability_reason_;
};

bool check_freeness(const PermGroupSpec& group);

enum class OrbitCheck { Preserved, NotPreserved, NotContained };
std::string to_string(OrbitCheck result);

// Whether every element of fp maps each orbit of f into itself, after
// checking that f is a subgroup of fp.
OrbitCheck check_orbit_preservation(const PermGroupSpec& f, const PermGroupSpec& fp);

bool is_subgroup(const PermGroupSpec& f, const PermGroupSpec& fp);

PermGroupSpec point_stabilizer(const PermGroupSpec& group, Color a);

// The permutation groups of the wreath-product construction.
//
// Omega is the set of functions A -> Gamma, encoded in base |Gamma| with the
// value at A-element t as digit t. F = Gamma^A acts by pointwise left
// multiplication and F' = Gamma wr A adds the shift (a.x)(t) = x(a^{-1} t).
struct WreathEmbedding {
  FiniteGroup gamma;
  FiniteGroup shift_group;
  Alphabet omega;
  PermGroupSpec base_group;  // F
  PermGroupSpec wreath;      // F'
  // embed[g] is the image of g in F': the function with value g at the
  // identity of A and 1 elsewhere, with trivial shift.
  std::vector<Permutation> embed;

  std::size_t point_count() const { return static_cast<std::size_t>(omega.degree()); }
  std::vector<int> point(Color x) const;
  Color encode(const std::vector<int>& function) const;
  // The permutation of (f, a) in F'.
  Permutation action(const std::vector<int>& f, int a) const;
};

// Verifies at construction that F acts freely and transitively, that F'
// acts faithfully, and that point stabilizers of F' are conjugates of the
// shift group A. Throws PreconditionError for trivial Gamma or A, or when
// |Omega| < 3.
WreathEmbedding wreath_embedding_spec(const FiniteGroup& gamma, const FiniteGroup& shift_group);

bool is_transitive(const PermGroupSpec& group);
bool is_faithful(const std::vector<Permutation>& action, const Alphabet& omega);

}  // namespace arboreal
