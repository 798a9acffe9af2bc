#include "arboreal/tree.hpp"

#include <algorithm>
#include <cctype>
#include <queue>
#include <set>
#include <sstream>

#include "arboreal/error.hpp"

namespace arboreal {

Alphabet Alphabet::finite(Color degree) {
  if (degree < 3) {
    throw PreconditionError("alphabet degree must be at least 3, got " + std::to_string(degree));
  }
  Alphabet a;
  a.degree_ = degree;
  return a;
}

Color Alphabet::degree() const {
  if (!degree_) throw PreconditionError("the integer alphabet has no finite degree");
  return *degree_;
}

bool Alphabet::contains(Color c) const { return !degree_ || (c >= 0 && c < *degree_); }

std::vector<Color> Alphabet::colors() const {
  std::vector<Color> out;
  for (Color c = 0; c < degree(); ++c) out.push_back(c);
  return out;
}

std::string Alphabet::describe() const {
  return degree_ ? std::to_string(*degree_) : std::string("integers");
}

bool is_reduced(const Word& word) {
  return std::adjacent_find(word.begin(), word.end()) == word.end();
}

Vertex::Vertex(Word word) : word_(std::move(word)) {
  if (!is_reduced(word_)) {
    throw InvariantError("vertex word is not reduced: " + word_to_string(word_));
  }
}

Vertex Vertex::prefix(std::size_t n) const {
  Vertex v;
  v.word_.assign(word_.begin(), word_.begin() + static_cast<std::ptrdiff_t>(std::min(n, word_.size())));
  return v;
}

bool Vertex::has_prefix(const Vertex& p) const {
  return p.word_.size() <= word_.size() && std::equal(p.word_.begin(), p.word_.end(), word_.begin());
}

std::string word_to_string(const Word& word) {
  if (word.empty()) return "v0";
  bool digits = std::all_of(word.begin(), word.end(), [](Color c) { return c >= 0 && c <= 9; });
  std::ostringstream out;
  if (digits) {
    for (Color c : word) out << c;
    return out.str();
  }
  out << '[';
  for (std::size_t i = 0; i < word.size(); ++i) out << (i ? "," : "") << word[i];
  out << ']';
  return out.str();
}

std::string Vertex::to_string() const { return word_to_string(word_); }

Word parse_word(const std::string& text) {
  if (text == "v0" || text.empty() || text == "[]") return {};
  Word w;
  if (text.front() == '[') {
    if (text.back() != ']') throw PreconditionError("unterminated word: " + text);
    std::istringstream in(text.substr(1, text.size() - 2));
    std::string item;
    while (std::getline(in, item, ',')) {
      try {
        std::size_t used = 0;
        Color c = std::stoll(item, &used);
        if (used != item.size()) throw PreconditionError("bad letter: " + item);
        w.push_back(c);
      } catch (const std::logic_error&) {
        throw PreconditionError("bad letter in word: " + text);
      }
    }
    return w;
  }
  for (char ch : text) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) throw PreconditionError("bad word: " + text);
    w.push_back(ch - '0');
  }
  return w;
}

Vertex Vertex::parse(const std::string& text) { return Vertex(parse_word(text)); }

Vertex neighbor(const Vertex& v, Color c) {
  Word w = v.word();
  if (!w.empty() && w.back() == c) {
    w.pop_back();
  } else {
    w.push_back(c);
  }
  return Vertex(std::move(w));
}

Vertex DirectedEdge::head() const { return neighbor(tail, color); }

DirectedEdge DirectedEdge::reversed() const { return DirectedEdge{head(), color}; }

std::size_t common_prefix_length(const Word& a, const Word& b) {
  std::size_t n = std::min(a.size(), b.size());
  std::size_t i = 0;
  while (i < n && a[i] == b[i]) ++i;
  return i;
}

std::size_t distance(const Vertex& u, const Vertex& w) {
  std::size_t p = common_prefix_length(u.word(), w.word());
  return u.length() + w.length() - 2 * p;
}

std::vector<Color> geodesic_colors(const Vertex& u, const Vertex& w) {
  std::size_t p = common_prefix_length(u.word(), w.word());
  std::vector<Color> colors;
  for (std::size_t i = u.length(); i > p; --i) colors.push_back(u.word()[i - 1]);
  for (std::size_t i = p; i < w.length(); ++i) colors.push_back(w.word()[i]);
  return colors;
}

std::vector<Vertex> geodesic(const Vertex& u, const Vertex& w) {
  std::vector<Vertex> path{u};
  for (Color c : geodesic_colors(u, w)) path.push_back(neighbor(path.back(), c));
  return path;
}

bool half_tree_contains(const HalfTree& h, const Vertex& x) {
  const Vertex& tail = h.edge.tail;
  if (!tail.is_base() && tail.last() == h.edge.color) {
    // The head is the parent of the tail: everything outside tail's subtree.
    return !x.has_prefix(tail);
  }
  return x.has_prefix(h.edge.head());
}

std::size_t ray_depth_needed(const HalfTree& h) { return h.edge.tail.length() + 1; }

bool half_tree_contains_ray(const HalfTree& h, const Word& ray_prefix) {
  if (ray_prefix.size() < ray_depth_needed(h)) {
    throw PreconditionError("ray prefix too short to decide half-tree membership");
  }
  // A ray prefix at least one letter longer than the tail decides membership
  // exactly as a vertex would.
  Word w(ray_prefix.begin(), ray_prefix.begin() + static_cast<std::ptrdiff_t>(ray_depth_needed(h)));
  return half_tree_contains(h, Vertex(std::move(w)));
}

bool half_tree_subset(const HalfTree& inner, const HalfTree& outer) {
  if (inner == outer) return true;
  const Vertex& x = outer.edge.tail;
  Vertex y = outer.edge.head();
  if (half_tree_contains(inner, x) || half_tree_contains(inner, y)) return false;
  // inner avoids the edge of outer, so it lies on one side of it.
  return half_tree_contains(outer, inner.edge.head());
}

bool half_trees_disjoint(const HalfTree& a, const HalfTree& b) {
  return half_tree_subset(a, b.complement());
}

bool shortlex_less(const Vertex& a, const Vertex& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  return a.word() < b.word();
}

std::vector<Vertex> enumerate_ball(const Vertex& v, std::size_t r, const std::vector<Color>& window) {
  if (window.empty() && r > 0) throw PreconditionError("empty color window");
  std::set<Color> allowed(window.begin(), window.end());
  std::set<Vertex> seen{v};
  std::queue<std::pair<Vertex, std::size_t>> queue;
  queue.push({v, 0});
  std::vector<Color> moves(allowed.begin(), allowed.end());
  // Stepping towards v0 uses the last letter, which may sit outside the window.
  while (!queue.empty()) {
    auto [x, d] = queue.front();
    queue.pop();
    if (d == r) continue;
    std::vector<Color> steps = moves;
    if (!x.is_base() && !allowed.count(x.last())) steps.push_back(x.last());
    for (Color c : steps) {
      Vertex y = neighbor(x, c);
      if (seen.insert(y).second) queue.push({y, d + 1});
    }
  }
  std::vector<Vertex> out;
  for (const Vertex& x : seen) {
    bool inside = std::all_of(x.word().begin(), x.word().end(), [&](Color c) { return allowed.count(c) > 0; });
    if (inside) out.push_back(x);
  }
  std::sort(out.begin(), out.end(), shortlex_less);
  return out;
}

}  // namespace arboreal
