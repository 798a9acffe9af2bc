#include "arboreal/finite_group.hpp"

#include "arboreal/error.hpp"

namespace arboreal {

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> table, std::string name)
    : table_(std::move(table)), name_(std::move(name)) {
  const int n = order();
  if (n == 0) throw InvariantError("group table is empty");
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != n) throw InvariantError("group table is not square");
    for (int x : row) {
      if (x < 0 || x >= n) throw InvariantError("group table entry out of range");
    }
  }
  identity_ = -1;
  for (int e = 0; e < n && identity_ < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = multiply(e, a) == a && multiply(a, e) == a;
    if (ok) identity_ = e;
  }
  if (identity_ < 0) throw InvariantError("group table has no identity");
  inverses_.assign(static_cast<std::size_t>(n), -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (multiply(a, b) == identity_ && multiply(b, a) == identity_) inverses_[static_cast<std::size_t>(a)] = b;
    }
    if (inverses_[static_cast<std::size_t>(a)] < 0) throw InvariantError("group table element has no inverse");
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        if (multiply(multiply(a, b), c) != multiply(a, multiply(b, c))) {
          throw InvariantError("group table is not associative");
        }
      }
    }
  }
}

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n < 1) throw PreconditionError("cyclic group order must be positive");
  std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % n;
  }
  return FiniteGroup(std::move(t), "Z/" + std::to_string(n));
}

}  // namespace arboreal
