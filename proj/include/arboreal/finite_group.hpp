#pragma once

#include <string>
#include <vector>

namespace arboreal {

// A finite group given by its multiplication table on {0..n-1}.
// table[a][b] is the product a*b.
class FiniteGroup {
 public:
  // Validates closure, associativity, identity and inverses.
  explicit FiniteGroup(std::vector<std::vector<int>> table, std::string name = "");

  static FiniteGroup cyclic(int n);
  static FiniteGroup trivial() { return cyclic(1); }

  int order() const { return static_cast<int>(table_.size()); }
  int identity() const { return identity_; }
  int multiply(int a, int b) const { return table_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
  int inverse(int a) const { return inverses_[static_cast<std::size_t>(a)]; }
  bool is_trivial() const { return order() == 1; }

  const std::vector<std::vector<int>>& table() const { return table_; }
  const std::string& name() const { return name_; }

 private:
  std::vector<std::vector<int>> table_;
  std::vector<int> inverses_;
  int identity_ = 0;
  std::string name_;
};

}  // namespace arboreal
