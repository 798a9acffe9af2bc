#include "arboreal/free_product.hpp"

#include <algorithm>
#include <cctype>

#include "arboreal/error.hpp"

namespace arboreal {

namespace {

Factor other(Factor f) { return f == Factor::A ? Factor::B : Factor::A; }

std::vector<FPVertex> ancestors(const FreeProductTree& tree, const FPVertex& v) {
  std::vector<FPVertex> out{v};
  while (auto p = tree.parent(out.back())) out.push_back(*p);
  return out;
}

}  // namespace

FreeProductTree::FreeProductTree(FiniteGroup a, FiniteGroup b) : a_(std::move(a)), b_(std::move(b)) {
  if (a_.is_trivial() || b_.is_trivial()) throw PreconditionError("free product factors must be nontrivial");
  if (a_.order() == 2 && b_.order() == 2) throw PreconditionError("Z/2 * Z/2 acts on a line");
}

FreeProductTree FreeProductTree::psl2z() { return FreeProductTree(FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)); }

GroupWord FreeProductTree::letter(Factor side, int element) const {
  const FiniteGroup& g = group(side);
  if (element < 0 || element >= g.order()) throw PreconditionError("letter outside the factor");
  if (element == g.identity()) return {};
  return {Letter{side, element}};
}

void FreeProductTree::check_normal_form(const GroupWord& w) const {
  for (std::size_t i = 0; i < w.size(); ++i) {
    const FiniteGroup& g = group(w[i].side);
    if (w[i].element < 0 || w[i].element >= g.order() || w[i].element == g.identity()) {
      throw InvariantError("word letter is trivial or out of range");
    }
    if (i > 0 && w[i].side == w[i - 1].side) throw InvariantError("word letters do not alternate");
  }
}

GroupWord FreeProductTree::multiply(const GroupWord& x, const GroupWord& y) const {
  GroupWord out = x;
  for (const Letter& l : y) {
    if (!out.empty() && out.back().side == l.side) {
      const FiniteGroup& g = group(l.side);
      const int e = g.multiply(out.back().element, l.element);
      out.pop_back();
      if (e != g.identity()) out.push_back(Letter{l.side, e});
    } else {
      out.push_back(l);
    }
  }
  return out;
}

GroupWord FreeProductTree::inverse(const GroupWord& x) const {
  GroupWord out;
  for (auto it = x.rbegin(); it != x.rend(); ++it) out.push_back(Letter{it->side, group(it->side).inverse(it->element)});
  return out;
}

FPVertex FreeProductTree::vertex(GroupWord w, Factor type) const {
  check_normal_form(w);
  if (!w.empty() && w.back().side == type) w.pop_back();
  return FPVertex{std::move(w), type};
}

FPVertex FreeProductTree::act(const GroupWord& g, const FPVertex& v) const { return vertex(multiply(g, v.word), v.type); }

std::vector<FPVertex> FreeProductTree::neighbors(const FPVertex& v) const {
  std::vector<FPVertex> out;
  const FiniteGroup& g = group(v.type);
  for (int x = 0; x < g.order(); ++x) out.push_back(vertex(multiply(v.word, letter(v.type, x)), other(v.type)));
  return out;
}

std::size_t FreeProductTree::degree(const FPVertex& v) const {
  return static_cast<std::size_t>(group(v.type).order());
}

std::optional<FPVertex> FreeProductTree::parent(const FPVertex& v) const {
  if (v.word.empty()) {
    if (v.type == Factor::A) return std::nullopt;
    return root();
  }
  GroupWord w(v.word.begin(), v.word.end() - 1);
  return FPVertex{std::move(w), v.word.back().side};
}

std::size_t FreeProductTree::depth(const FPVertex& v) const { return ancestors(*this, v).size() - 1; }

std::size_t FreeProductTree::distance(const FPVertex& u, const FPVertex& v) const {
  return geodesic(u, v).size() - 1;
}

std::vector<FPVertex> FreeProductTree::geodesic(const FPVertex& u, const FPVertex& v) const {
  std::vector<FPVertex> au = ancestors(*this, u);
  std::vector<FPVertex> av = ancestors(*this, v);
  // Strip the shared path to the root.
  while (au.size() > 1 && av.size() > 1 && au[au.size() - 2] == av[av.size() - 2]) {
    au.pop_back();
    av.pop_back();
  }
  std::vector<FPVertex> out = au;
  for (std::size_t i = av.size() - 1; i-- > 0;) out.push_back(av[i]);
  return out;
}

bool FreeProductTree::half_contains(const FPVertex& tail, const FPVertex& head, const FPVertex& z) const {
  return distance(z, head) < distance(z, tail);
}

std::string FreeProductTree::word_to_string(const GroupWord& w) const {
  if (w.empty()) return "e";
  std::string out;
  for (const Letter& l : w) out += (l.side == Factor::A ? "a" : "b") + std::to_string(l.element);
  return out;
}

GroupWord FreeProductTree::parse_word(const std::string& text) const {
  GroupWord out;
  if (text == "e" || text.empty()) return out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c != 'a' && c != 'b') throw PreconditionError("free product word letters start with a or b: " + text);
    std::size_t j = i + 1;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    if (j == i + 1) throw PreconditionError("letter without element index: " + text);
    const int element = std::stoi(text.substr(i + 1, j - i - 1));
    out = multiply(out, letter(c == 'a' ? Factor::A : Factor::B, element));
    i = j;
  }
  return out;
}

std::string FreeProductTree::vertex_to_string(const FPVertex& v) const {
  return word_to_string(v.word) + (v.type == Factor::A ? "|A" : "|B");
}

std::string FreeProductTree::describe() const {
  auto name = [](const FiniteGroup& g) { return g.name().empty() ? "order " + std::to_string(g.order()) : g.name(); };
  return name(a_) + " * " + name(b_);
}

}  // namespace arboreal
