#pragma once

// Tree automorphisms of T_Omega as branch-constant portraits.
//
// An automorphism g is determined by its base image g(v0) and its local
// actions sigma(g, v): the edge of color c at v goes to the edge of color
// sigma(g, v)(c) at g(v). A branch-constant portrait stores sigma on a finite
// prefix-closed core and one constant per branch leaving the core. On the
// integer alphabet a core vertex has infinitely many branches; they share a
// fallback constant apart from finitely many listed exceptions.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "arboreal/perm_group.hpp"
#include "arboreal/permutation.hpp"
#include "arboreal/tree.hpp"

namespace arboreal {

class TreeAutomorphism {
 public:
  // Checks every structural invariant and throws InvariantError on failure:
  // the core is prefix-closed and contains v0, adjacent core values agree on
  // their shared edge color, every frontier edge has a compatible branch
  // constant, and on the integers each core vertex has a fallback constant
  // that agrees with the core value off the listed colors.
  TreeAutomorphism(Alphabet alphabet, Vertex base_image, std::map<Vertex, Permutation> core,
                   std::map<DirectedEdge, Permutation> branches, std::map<Vertex, Permutation> fallbacks = {});

  static TreeAutomorphism identity(const Alphabet& alphabet);

  const Alphabet& alphabet() const { return alphabet_; }
  const Vertex& base_image() const { return base_; }
  const std::map<Vertex, Permutation>& core() const { return core_; }
  const std::map<DirectedEdge, Permutation>& branches() const { return branches_; }
  const std::map<Vertex, Permutation>& fallbacks() const { return fallbacks_; }

  bool in_core(const Vertex& v) const { return core_.count(v) > 0; }
  std::size_t core_radius() const;
  // Constant on the branch behind the frontier edge (u, c).
  const Permutation& branch_constant(const Vertex& u, Color c) const;
  // Colors at v whose branch constant can differ from the generic one:
  // core-internal colors and listed exceptions at core vertices, the
  // direction towards v0 elsewhere.
  std::vector<Color> special_colors(const Vertex& v) const;

  bool is_identity() const;

  auto operator<=>(const TreeAutomorphism& other) const = default;

 private:
  void validate() const;

  Alphabet alphabet_ = Alphabet::integers();
  Vertex base_;
  std::map<Vertex, Permutation> core_;
  std::map<DirectedEdge, Permutation> branches_;
  std::map<Vertex, Permutation> fallbacks_;
};

Vertex evaluate(const TreeAutomorphism& g, const Vertex& v);
// The unique x with evaluate(g, x) == y.
Vertex preimage(const TreeAutomorphism& g, const Vertex& y);
Permutation local_action(const TreeAutomorphism& g, const Vertex& v);

// g after h: evaluate(compose(g, h), v) == evaluate(g, evaluate(h, v)).
TreeAutomorphism compose(const TreeAutomorphism& g, const TreeAutomorphism& h);
TreeAutomorphism invert(const TreeAutomorphism& g);
TreeAutomorphism power(const TreeAutomorphism& g, long long k);
TreeAutomorphism conjugate(const TreeAutomorphism& by, const TreeAutomorphism& g);
TreeAutomorphism canonicalize(const TreeAutomorphism& g);
TreeAutomorphism from_constant(const Permutation& f, const Vertex& base_image);

// Builds the automorphism with the given base image and local action.
// `hull` must be prefix-closed, contain v0, and contain every vertex behind
// which sigma is not constant. On the integers, `special` lists for each
// hull vertex the colors whose branch may differ from the generic branch.
using LocalRule = std::function<Permutation(const Vertex&)>;
using SpecialRule = std::function<std::vector<Color>(const Vertex&)>;
TreeAutomorphism assemble(const Alphabet& alphabet, const Vertex& base_image, const std::set<Vertex>& hull,
                          const LocalRule& sigma, const SpecialRule& special = {});

// Smallest prefix-closed set containing v0 and the given vertices.
std::set<Vertex> prefix_hull(const std::set<Vertex>& vertices);

class GroupClass {
 public:
  enum class Kind { UofF, GofFFp, GofFFpStar, Unrestricted };

  static GroupClass universal(PermGroupSpec f);
  static GroupClass prescribed(PermGroupSpec f, PermGroupSpec fp);
  static GroupClass prescribed_star(PermGroupSpec f, PermGroupSpec fp);
  static GroupClass unrestricted(Alphabet alphabet);

  Kind kind() const { return kind_; }
  const Alphabet& alphabet() const { return alphabet_; }
  // Group of local actions allowed at every vertex (F for U(F), F' otherwise).
  const PermGroupSpec& local_group() const;
  // Group required at all but finitely many vertices.
  const PermGroupSpec& generic_group() const;
  bool unrestricted_values() const { return kind_ == Kind::Unrestricted; }
  bool star() const { return kind_ == Kind::GofFFpStar; }
  std::string describe() const;

 private:
  GroupClass(Kind kind, Alphabet alphabet, std::optional<PermGroupSpec> f, std::optional<PermGroupSpec> fp);
  Kind kind_;
  Alphabet alphabet_;
  std::optional<PermGroupSpec> f_;
  std::optional<PermGroupSpec> fp_;
};

// Requires a canonical g. Throws PreconditionError when the class acts on a
// different color set.
bool membership(const TreeAutomorphism& g, const GroupClass& cls);

// A random member whose core lies in the ball of the given radius. Fixed
// seed gives a fixed element. Throws PreconditionError when the local
// constraints cannot be met.
TreeAutomorphism random_element(const GroupClass& cls, std::size_t core_radius, std::uint64_t seed);

// Exhaustive list of class members whose canonical core lies in the ball of
// radius core_radius and whose base image lies in the ball of radius
// base_radius. Finite alphabets only. `value_filter` can restrict the values
// allowed at particular vertices.
using ValueFilter = std::function<bool(const Vertex&, const Permutation&)>;
std::vector<TreeAutomorphism> enumerate_members(const GroupClass& cls, std::size_t core_radius,
                                                std::size_t base_radius, const ValueFilter& value_filter = {});

std::string to_string(const TreeAutomorphism& g);

}  // namespace arboreal
