#pragma once

// Ends of the tree, as eventually periodic rays or as the fixed ends of a
// hyperbolic automorphism.

#include <memory>
#include <string>
#include <variant>

#include "arboreal/portrait.hpp"
#include "arboreal/tree.hpp"

namespace arboreal {

class EndPoint {
 public:
  // The ray prefix.period.period... from v0, stored normalized: primitive
  // period and shortest prefix.
  struct Periodic {
    Word prefix;
    Word period;
    auto operator<=>(const Periodic&) const = default;
  };
  // The attracting (+1) or repelling (-1) end of a hyperbolic element.
  struct Axis {
    std::shared_ptr<const TreeAutomorphism> g;
    int sign = 1;
    std::size_t length = 0;
    Vertex axis_point;
  };

  // Throws InvariantError if the infinite word would not be reduced.
  static EndPoint periodic(Word prefix, Word period);
  // Throws PreconditionError unless g is hyperbolic and sign is +1 or -1.
  static EndPoint axis(const TreeAutomorphism& g, int sign);
  // Accepts "(01)", "2(01)", "[5,-1]([0,1])".
  static EndPoint parse(const std::string& text);

  bool is_periodic() const { return std::holds_alternative<Periodic>(rep_); }
  const Periodic& periodic_data() const { return std::get<Periodic>(rep_); }
  const Axis& axis_data() const { return std::get<Axis>(rep_); }

  // The first `depth` colors of the ray from v0.
  Word prefix(std::size_t depth) const;
  // |prefix| + |period| for periodic ends, 0 otherwise.
  std::size_t data_length() const;
  std::string to_string() const;

 private:
  explicit EndPoint(std::variant<Periodic, Axis> rep) : rep_(std::move(rep)) {}
  std::variant<Periodic, Axis> rep_;
};

enum class EqualityMode { Exact, DepthBounded };
std::string to_string(EqualityMode mode);

struct EndComparison {
  bool equal = false;
  EqualityMode mode = EqualityMode::Exact;
  std::size_t depth = 0;
};

// Exact for two periodic ends; otherwise compares ray prefixes of the given
// depth, and a mismatch there is still an exact certificate of difference.
EndComparison compare_ends(const EndPoint& a, const EndPoint& b, std::size_t depth);

// Image of an end. Exact: periodic ends map to periodic ends, and the axis
// end of h maps to the axis end of g h g^-1.
EndPoint apply(const TreeAutomorphism& g, const EndPoint& xi);

bool half_tree_contains(const HalfTree& h, const EndPoint& xi);

}  // namespace arboreal
