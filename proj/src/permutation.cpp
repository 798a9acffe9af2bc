#include "arboreal/permutation.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "arboreal/error.hpp"

namespace arboreal {

namespace {

std::map<Color, Color> prune_fixed(std::map<Color, Color> m) {
  std::erase_if(m, [](const auto& kv) { return kv.first == kv.second; });
  return m;
}

std::string cycles_to_string(const std::map<Color, Color>& moves) {
  std::ostringstream out;
  std::set<Color> done;
  for (const auto& [start, _] : moves) {
    if (done.count(start)) continue;
    out << '(';
    Color x = start;
    bool first = true;
    do {
      out << (first ? "" : " ") << x;
      first = false;
      done.insert(x);
      x = moves.at(x);
    } while (x != start);
    out << ')';
  }
  return out.str();
}

}  // namespace

Permutation Permutation::identity(const Alphabet& alphabet) {
  if (!alphabet.is_finite()) return Permutation(Affine{});
  std::vector<Color> images(static_cast<std::size_t>(alphabet.degree()));
  for (std::size_t i = 0; i < images.size(); ++i) images[i] = static_cast<Color>(i);
  return Permutation(Table{std::move(images)});
}

Permutation Permutation::from_images(std::vector<Color> images) {
  const auto n = static_cast<Color>(images.size());
  std::vector<bool> hit(images.size(), false);
  for (Color y : images) {
    if (y < 0 || y >= n || hit[static_cast<std::size_t>(y)]) {
      throw InvariantError("permutation table is not a bijection");
    }
    hit[static_cast<std::size_t>(y)] = true;
  }
  return Permutation(Table{std::move(images)});
}

Permutation Permutation::from_cycles(Color degree, const std::vector<std::vector<Color>>& cycles) {
  std::vector<Color> images(static_cast<std::size_t>(degree));
  for (Color i = 0; i < degree; ++i) images[static_cast<std::size_t>(i)] = i;
  std::set<Color> used;
  for (const auto& cycle : cycles) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      Color x = cycle[i];
      if (x < 0 || x >= degree || !used.insert(x).second) {
        throw InvariantError("cycles must be disjoint and inside the alphabet");
      }
      images[static_cast<std::size_t>(x)] = cycle[(i + 1) % cycle.size()];
    }
  }
  return Permutation(Table{std::move(images)});
}

Permutation Permutation::translation(Color shift) { return Permutation(Affine{shift, {}}); }

Permutation Permutation::affine(Color shift, std::map<Color, Color> finitary) {
  finitary = prune_fixed(std::move(finitary));
  std::set<Color> keys, values;
  for (const auto& [x, y] : finitary) {
    keys.insert(x);
    values.insert(y);
  }
  if (keys != values) throw InvariantError("finitary part is not a bijection of its support");
  return Permutation(Affine{shift, std::move(finitary)});
}

Permutation Permutation::transposition(const Alphabet& alphabet, Color a, Color b) {
  if (!alphabet.contains(a) || !alphabet.contains(b)) throw PreconditionError("transposition outside alphabet");
  if (alphabet.is_finite()) {
    if (a == b) return identity(alphabet);
    return from_cycles(alphabet.degree(), {{a, b}});
  }
  return affine(0, {{a, b}, {b, a}});
}

Alphabet Permutation::domain() const {
  if (is_table()) return Alphabet::finite(static_cast<Color>(table().images.size()));
  return Alphabet::integers();
}

Color Permutation::operator()(Color x) const {
  if (const auto* t = std::get_if<Table>(&rep_)) {
    if (x < 0 || x >= static_cast<Color>(t->images.size())) {
      throw PreconditionError("color " + std::to_string(x) + " outside permutation domain");
    }
    return t->images[static_cast<std::size_t>(x)];
  }
  const auto& a = std::get<Affine>(rep_);
  auto it = a.finitary.find(x);
  return a.shift + (it == a.finitary.end() ? x : it->second);
}

Color Permutation::preimage(Color y) const {
  if (const auto* t = std::get_if<Table>(&rep_)) {
    auto it = std::find(t->images.begin(), t->images.end(), y);
    if (it == t->images.end()) throw PreconditionError("color outside permutation domain");
    return static_cast<Color>(it - t->images.begin());
  }
  const auto& a = std::get<Affine>(rep_);
  Color z = y - a.shift;
  for (const auto& [x, image] : a.finitary) {
    if (image == z) return x;
  }
  return z;
}

bool Permutation::is_identity() const {
  if (const auto* t = std::get_if<Table>(&rep_)) {
    for (std::size_t i = 0; i < t->images.size(); ++i) {
      if (t->images[i] != static_cast<Color>(i)) return false;
    }
    return true;
  }
  const auto& a = std::get<Affine>(rep_);
  return a.shift == 0 && a.finitary.empty();
}

std::vector<Color> Permutation::special_points() const {
  if (is_table()) return domain().colors();
  std::vector<Color> out;
  for (const auto& [x, _] : affine_part().finitary) out.push_back(x);
  return out;
}

Permutation Permutation::inverse() const {
  if (const auto* t = std::get_if<Table>(&rep_)) {
    std::vector<Color> images(t->images.size());
    for (std::size_t i = 0; i < images.size(); ++i) images[static_cast<std::size_t>(t->images[i])] = static_cast<Color>(i);
    return Permutation(Table{std::move(images)});
  }
  // y = s + m(x)  <=>  x = -s + [m^{-1}(y - s) + s]
  const auto& a = std::get<Affine>(rep_);
  std::map<Color, Color> inv;
  for (const auto& [x, y] : a.finitary) inv[y + a.shift] = x + a.shift;
  return affine(-a.shift, std::move(inv));
}

std::string Permutation::to_string() const {
  if (const auto* t = std::get_if<Table>(&rep_)) {
    std::map<Color, Color> moves;
    for (std::size_t i = 0; i < t->images.size(); ++i) {
      if (t->images[i] != static_cast<Color>(i)) moves[static_cast<Color>(i)] = t->images[i];
    }
    return moves.empty() ? "id" : cycles_to_string(moves);
  }
  const auto& a = std::get<Affine>(rep_);
  if (a.shift == 0 && a.finitary.empty()) return "id";
  std::string out;
  if (a.shift != 0) out = "x" + std::string(a.shift > 0 ? "+" : "") + std::to_string(a.shift);
  if (!a.finitary.empty()) out += (out.empty() ? "" : "∘") + cycles_to_string(a.finitary);
  return out;
}

Permutation operator*(const Permutation& f, const Permutation& g) {
  if (f.is_table() != g.is_table()) throw PreconditionError("composing permutations of different domains");
  if (f.is_table()) {
    const auto& gi = g.table().images;
    if (gi.size() != f.table().images.size()) throw PreconditionError("composing permutations of different degrees");
    std::vector<Color> images(gi.size());
    for (std::size_t i = 0; i < gi.size(); ++i) images[i] = f(gi[i]);
    return Permutation::from_images(std::move(images));
  }
  // s1 + m1(s2 + m2(x)) = (s1 + s2) + m1'(m2(x)) with m1'(y) = m1(y + s2) - s2.
  const auto& a = f.affine_part();
  const auto& b = g.affine_part();
  std::map<Color, Color> shifted;
  for (const auto& [x, y] : a.finitary) shifted[x - b.shift] = y - b.shift;
  std::map<Color, Color> composed;
  std::set<Color> support;
  for (const auto& [x, _] : b.finitary) support.insert(x);
  for (const auto& [x, _] : shifted) support.insert(x);
  for (Color x : support) {
    auto it2 = b.finitary.find(x);
    Color mid = it2 == b.finitary.end() ? x : it2->second;
    auto it1 = shifted.find(mid);
    composed[x] = it1 == shifted.end() ? mid : it1->second;
  }
  return Permutation::affine(a.shift + b.shift, std::move(composed));
}

}  // namespace arboreal
