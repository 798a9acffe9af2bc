#pragma once

#include <compare>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "arboreal/tree.hpp"

namespace arboreal {

// A bijection of the color set.
//
// On {0..d-1} it is a table of images. On the integers it is stored in the
// normal form x -> shift + finitary(x), where the finitary part is a
// bijection that moves finitely many points and never lists a fixed point.
class Permutation {
 public:
  struct Table {
    std::vector<Color> images;
    auto operator<=>(const Table&) const = default;
  };
  struct Affine {
    Color shift = 0;
    std::map<Color, Color> finitary;
    auto operator<=>(const Affine&) const = default;
  };

  static Permutation identity(const Alphabet& alphabet);
  static Permutation from_images(std::vector<Color> images);
  // Product of disjoint cycles on {0..degree-1}.
  static Permutation from_cycles(Color degree, const std::vector<std::vector<Color>>& cycles);
  static Permutation translation(Color shift);
  static Permutation affine(Color shift, std::map<Color, Color> finitary);
  static Permutation transposition(const Alphabet& alphabet, Color a, Color b);

  bool is_table() const { return std::holds_alternative<Table>(rep_); }
  const Table& table() const { return std::get<Table>(rep_); }
  const Affine& affine_part() const { return std::get<Affine>(rep_); }
  Alphabet domain() const;

  Color operator()(Color x) const;
  Color preimage(Color y) const;

  bool is_identity() const;
  // Points at which this permutation may differ from its shift: every point
  // for a table, the finitary support otherwise.
  std::vector<Color> special_points() const;

  Permutation inverse() const;

  std::string to_string() const;

  auto operator<=>(const Permutation&) const = default;

 private:
  explicit Permutation(std::variant<Table, Affine> rep) : rep_(std::move(rep)) {}
  std::variant<Table, Affine> rep_;
};

// (f * g)(x) = f(g(x)).
Permutation operator*(const Permutation& f, const Permutation& g);

}  // namespace arboreal
