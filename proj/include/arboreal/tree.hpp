#pragma once

// The colored regular tree T_Omega. Vertices are reduced color words read
// from a fixed base vertex v0; the tree itself is never materialized.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace arboreal {

using Color = std::int64_t;
using Word = std::vector<Color>;

// The color set: either {0, ..., d-1} with d >= 3, or all of the integers.
class Alphabet {
 public:
  static Alphabet finite(Color degree);
  static Alphabet integers() { return Alphabet{}; }

  bool is_finite() const { return degree_.has_value(); }
  // Throws when the alphabet is infinite.
  Color degree() const;
  bool contains(Color c) const;
  // All colors of a finite alphabet, in increasing order.
  std::vector<Color> colors() const;

  std::string describe() const;

  auto operator<=>(const Alphabet&) const = default;

 private:
  Alphabet() = default;
  std::optional<Color> degree_;
};

bool is_reduced(const Word& word);

class Vertex {
 public:
  Vertex() = default;
  // Throws InvariantError unless the word is reduced.
  explicit Vertex(Word word);

  static Vertex base() { return Vertex{}; }

  const Word& word() const { return word_; }
  std::size_t length() const { return word_.size(); }
  bool is_base() const { return word_.empty(); }
  // Last letter; the color of the edge towards v0. Undefined for v0.
  Color last() const { return word_.back(); }

  Vertex prefix(std::size_t n) const;
  bool has_prefix(const Vertex& p) const;

  std::string to_string() const;
  // Accepts "v0", a digit string such as "012", or a bracketed list "[3,-1,4]".
  static Vertex parse(const std::string& text);

  auto operator<=>(const Vertex&) const = default;

 private:
  Word word_;
};

std::string word_to_string(const Word& word);
Word parse_word(const std::string& text);

struct DirectedEdge {
  Vertex tail;
  Color color = 0;

  Vertex head() const;
  DirectedEdge reversed() const;

  auto operator<=>(const DirectedEdge&) const = default;
};

// The component of T minus the edge that contains the edge's head.
struct HalfTree {
  DirectedEdge edge;

  HalfTree complement() const { return HalfTree{edge.reversed()}; }

  auto operator<=>(const HalfTree&) const = default;
};

Vertex neighbor(const Vertex& v, Color c);

std::size_t common_prefix_length(const Word& a, const Word& b);
std::size_t distance(const Vertex& u, const Vertex& w);
std::vector<Vertex> geodesic(const Vertex& u, const Vertex& w);
// Colors of the successive edges along geodesic(u, w).
std::vector<Color> geodesic_colors(const Vertex& u, const Vertex& w);

bool half_tree_contains(const HalfTree& h, const Vertex& x);
// Membership of an end given by (a long enough prefix of) its ray from v0.
// Needs at least h.edge.tail.length() + 1 letters.
bool half_tree_contains_ray(const HalfTree& h, const Word& ray_prefix);
std::size_t ray_depth_needed(const HalfTree& h);

bool half_tree_subset(const HalfTree& inner, const HalfTree& outer);
bool half_trees_disjoint(const HalfTree& a, const HalfTree& b);

// All vertices within distance r of v whose letters lie in the window.
// Sorted by (length, word).
std::vector<Vertex> enumerate_ball(const Vertex& v, std::size_t r, const std::vector<Color>& window);

// Words with the same letters compare by length first; used for
// deterministic enumeration orders.
bool shortlex_less(const Vertex& a, const Vertex& b);

}  // namespace arboreal
