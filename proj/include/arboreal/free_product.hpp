#pragma once

// The Bass-Serre tree of a free product A * B of two finite groups.
//
// Group elements are alternating normal-form words. Vertices are cosets wA
// and wB, stored as (w, type) with w not ending in a letter of the coset's
// own factor. The base edge joins the A-vertex and the B-vertex of the
// empty word. A-vertices have degree |A| and B-vertices degree |B|.

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "arboreal/finite_group.hpp"

namespace arboreal {

enum class Factor { A = 0, B = 1 };

struct Letter {
  Factor side = Factor::A;
  int element = 0;
  auto operator<=>(const Letter&) const = default;
};
using GroupWord = std::vector<Letter>;

struct FPVertex {
  GroupWord word;
  Factor type = Factor::A;
  auto operator<=>(const FPVertex&) const = default;
};

class FreeProductTree {
 public:
  // Throws PreconditionError if either factor is trivial or both have order 2.
  FreeProductTree(FiniteGroup a, FiniteGroup b);
  // Z/2 * Z/3, the (2,3)-biregular tree.
  static FreeProductTree psl2z();

  const FiniteGroup& group(Factor side) const { return side == Factor::A ? a_ : b_; }

  // Normal form of a single letter; empty for the identity.
  GroupWord letter(Factor side, int element) const;
  GroupWord multiply(const GroupWord& x, const GroupWord& y) const;
  GroupWord inverse(const GroupWord& x) const;
  // Throws InvariantError unless the word is in normal form.
  void check_normal_form(const GroupWord& w) const;

  FPVertex root() const { return FPVertex{{}, Factor::A}; }
  FPVertex vertex(GroupWord w, Factor type) const;
  FPVertex act(const GroupWord& g, const FPVertex& v) const;
  // Neighbors in the order of the factor's elements.
  std::vector<FPVertex> neighbors(const FPVertex& v) const;
  std::size_t degree(const FPVertex& v) const;
  std::optional<FPVertex> parent(const FPVertex& v) const;
  std::size_t depth(const FPVertex& v) const;
  std::size_t distance(const FPVertex& u, const FPVertex& v) const;
  std::vector<FPVertex> geodesic(const FPVertex& u, const FPVertex& v) const;
  // Membership of z in the component of T minus the edge {tail, head}
  // that contains head.
  bool half_contains(const FPVertex& tail, const FPVertex& head, const FPVertex& z) const;

  // Letters are written a<k> and b<k>; the identity is "e".
  std::string word_to_string(const GroupWord& w) const;
  GroupWord parse_word(const std::string& text) const;
  std::string vertex_to_string(const FPVertex& v) const;
  std::string describe() const;

 private:
  FiniteGroup a_;
  FiniteGroup b_;
};

}  // namespace arboreal
