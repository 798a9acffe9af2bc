#include "arboreal/portrait.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "arboreal/error.hpp"

namespace arboreal {

namespace {

constexpr Color kMinColor = std::numeric_limits<Color>::min();

bool acts_on(const Permutation& p, const Alphabet& alphabet) {
  if (alphabet.is_finite()) {
    return p.is_table() && static_cast<Color>(p.table().images.size()) == alphabet.degree();
  }
  return !p.is_table();
}

Vertex child(const Vertex& u, Color c) {
  Word w = u.word();
  w.push_back(c);
  return Vertex(std::move(w));
}

// Colors c with u.c a child of u in the prefix-closed set.
template <typename Container>
std::vector<Color> child_colors(const Container& set, const Vertex& u) {
  std::vector<Color> out;
  auto it = set.upper_bound(u);
  for (; it != set.end(); ++it) {
    const Vertex& w = [&]() -> const Vertex& {
      if constexpr (std::is_same_v<Container, std::set<Vertex>>) {
        return *it;
      } else {
        return it->first;
      }
    }();
    if (!w.has_prefix(u)) break;
    if (w.length() == u.length() + 1) out.push_back(w.last());
  }
  return out;
}

// Colors at u leading to neighbors inside the prefix-closed set.
template <typename Container>
std::vector<Color> internal_colors(const Container& set, const Vertex& u) {
  std::vector<Color> out = child_colors(set, u);
  if (!u.is_base()) out.push_back(u.last());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TreeAutomorphism::TreeAutomorphism(Alphabet alphabet, Vertex base_image, std::map<Vertex, Permutation> core,
                                   std::map<DirectedEdge, Permutation> branches,
                                   std::map<Vertex, Permutation> fallbacks)
    : alphabet_(alphabet),
      base_(std::move(base_image)),
      core_(std::move(core)),
      branches_(std::move(branches)),
      fallbacks_(std::move(fallbacks)) {
  validate();
}

void TreeAutomorphism::validate() const {
  for (Color c : base_.word()) {
    if (!alphabet_.contains(c)) throw InvariantError("base image uses a color outside the alphabet");
  }
  if (!in_core(Vertex::base())) throw InvariantError("core does not contain v0");
  for (const auto& [v, p] : core_) {
    if (!acts_on(p, alphabet_)) throw InvariantError("core value at " + v.to_string() + " acts on another color set");
    for (Color c : v.word()) {
      if (!alphabet_.contains(c)) throw InvariantError("core vertex uses a color outside the alphabet");
    }
    if (v.is_base()) continue;
    const Vertex parent = v.prefix(v.length() - 1);
    auto it = core_.find(parent);
    if (it == core_.end()) throw InvariantError("core is not prefix-closed at " + v.to_string());
    if (it->second(v.last()) != p(v.last())) {
      throw InvariantError("core values disagree on the edge " + parent.to_string() + " -> " + v.to_string());
    }
  }
  for (const auto& [e, f] : branches_) {
    auto it = core_.find(e.tail);
    if (it == core_.end()) throw InvariantError("branch tail " + e.tail.to_string() + " is not in the core");
    if (!alphabet_.contains(e.color)) throw InvariantError("branch color outside the alphabet");
    if (in_core(neighbor(e.tail, e.color))) throw InvariantError("branch edge leads into the core");
    if (!acts_on(f, alphabet_)) throw InvariantError("branch constant acts on another color set");
    if (f(e.color) != it->second(e.color)) {
      throw InvariantError("branch constant at (" + e.tail.to_string() + ", " + std::to_string(e.color) +
                           ") disagrees with the core value on the edge");
    }
  }
  if (alphabet_.is_finite()) {
    if (!fallbacks_.empty()) throw InvariantError("fallback constants require the integer alphabet");
    for (const auto& [u, p] : core_) {
      for (Color c : alphabet_.colors()) {
        if (in_core(neighbor(u, c))) continue;
        if (!branches_.count(DirectedEdge{u, c})) {
          throw InvariantError("missing branch constant at (" + u.to_string() + ", " + std::to_string(c) + ")");
        }
      }
    }
    return;
  }
  if (fallbacks_.size() != core_.size()) throw InvariantError("every core vertex needs a fallback constant");
  for (const auto& [u, fb] : fallbacks_) {
    auto it = core_.find(u);
    if (it == core_.end()) throw InvariantError("fallback at a vertex outside the core");
    if (!acts_on(fb, alphabet_)) throw InvariantError("fallback constant acts on another color set");
    const Permutation& p = it->second;
    std::vector<Color> listed = internal_colors(core_, u);
    for (auto b = branches_.lower_bound(DirectedEdge{u, kMinColor}); b != branches_.end() && b->first.tail == u; ++b) {
      listed.push_back(b->first.color);
    }
    std::sort(listed.begin(), listed.end());
    // Off a finite set both maps are translations; they must agree there.
    if (p.affine_part().shift != fb.affine_part().shift) {
      throw InvariantError("fallback at " + u.to_string() + " has a different shift from the core value");
    }
    auto check = [&](Color x) {
      if (p(x) != fb(x) && !std::binary_search(listed.begin(), listed.end(), x)) {
        throw InvariantError("fallback at " + u.to_string() + " disagrees with the core value at color " +
                             std::to_string(x));
      }
    };
    for (Color x : p.special_points()) check(x);
    for (Color x : fb.special_points()) check(x);
  }
}

TreeAutomorphism TreeAutomorphism::identity(const Alphabet& alphabet) {
  return from_constant(Permutation::identity(alphabet), Vertex::base());
}

std::size_t TreeAutomorphism::core_radius() const {
  std::size_t r = 0;
  for (const auto& [v, p] : core_) r = std::max(r, v.length());
  return r;
}

const Permutation& TreeAutomorphism::branch_constant(const Vertex& u, Color c) const {
  auto it = branches_.find(DirectedEdge{u, c});
  if (it != branches_.end()) return it->second;
  if (!in_core(u) || in_core(neighbor(u, c))) throw PreconditionError("not a frontier edge of the core");
  auto fb = fallbacks_.find(u);
  if (fb == fallbacks_.end()) throw InvariantError("missing branch constant");
  return fb->second;
}

std::vector<Color> TreeAutomorphism::special_colors(const Vertex& v) const {
  if (!in_core(v)) return {v.last()};
  std::vector<Color> out = internal_colors(core_, v);
  if (!alphabet_.is_finite()) {
    for (auto b = branches_.lower_bound(DirectedEdge{v, kMinColor}); b != branches_.end() && b->first.tail == v; ++b) {
      out.push_back(b->first.color);
    }
    std::sort(out.begin(), out.end());
  }
  return out;
}

bool TreeAutomorphism::is_identity() const {
  // Canonical identity: trivial core at v0 with identity constants.
  if (!base_.is_base()) return false;
  for (const auto& [v, p] : core_) {
    if (!p.is_identity()) return false;
  }
  for (const auto& [e, f] : branches_) {
    if (!f.is_identity()) return false;
  }
  for (const auto& [u, f] : fallbacks_) {
    if (!f.is_identity()) return false;
  }
  return true;
}

Permutation local_action(const TreeAutomorphism& g, const Vertex& v) {
  Vertex x;
  for (Color c : v.word()) {
    Vertex y = child(x, c);
    if (!g.in_core(y)) return g.branch_constant(x, c);
    x = std::move(y);
  }
  return g.core().at(x);
}

Vertex evaluate(const TreeAutomorphism& g, const Vertex& v) {
  Vertex image = g.base_image();
  Vertex x;
  const Permutation* sigma = &g.core().at(x);
  bool inside = true;
  for (Color c : v.word()) {
    image = neighbor(image, (*sigma)(c));
    if (inside) {
      Vertex y = child(x, c);
      if (g.in_core(y)) {
        sigma = &g.core().at(y);
        x = std::move(y);
      } else {
        sigma = &g.branch_constant(x, c);
        inside = false;
      }
    }
  }
  return image;
}

Vertex preimage(const TreeAutomorphism& g, const Vertex& y) {
  // Walk the geodesic g(v0) -> y backwards through g.
  Vertex x;
  for (Color c : geodesic_colors(g.base_image(), y)) x = neighbor(x, local_action(g, x).preimage(c));
  return x;
}

TreeAutomorphism assemble(const Alphabet& alphabet, const Vertex& base_image, const std::set<Vertex>& hull,
                          const LocalRule& sigma, const SpecialRule& special) {
  std::map<Vertex, Permutation> core;
  std::map<DirectedEdge, Permutation> branches;
  std::map<Vertex, Permutation> fallbacks;
  for (const Vertex& u : hull) core.emplace(u, sigma(u));
  for (const Vertex& u : hull) {
    if (alphabet.is_finite()) {
      for (Color c : alphabet.colors()) {
        Vertex w = neighbor(u, c);
        if (!hull.count(w)) branches.emplace(DirectedEdge{u, c}, sigma(w));
      }
      continue;
    }
    std::vector<Color> s = internal_colors(hull, u);
    if (special) {
      auto extra = special(u);
      s.insert(s.end(), extra.begin(), extra.end());
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (Color c : s) {
      Vertex w = neighbor(u, c);
      if (!hull.count(w)) branches.emplace(DirectedEdge{u, c}, sigma(w));
    }
    const Color fresh = std::max<Color>(s.empty() ? 0 : s.back(), 0) + 1;
    fallbacks.emplace(u, sigma(child(u, fresh)));
  }
  return canonicalize(TreeAutomorphism(alphabet, base_image, std::move(core), std::move(branches),
                                       std::move(fallbacks)));
}

std::set<Vertex> prefix_hull(const std::set<Vertex>& vertices) {
  std::set<Vertex> out{Vertex::base()};
  for (const Vertex& v : vertices) {
    for (std::size_t n = v.length(); n > 0; --n) {
      if (!out.insert(v.prefix(n)).second) break;
    }
  }
  return out;
}

TreeAutomorphism canonicalize(const TreeAutomorphism& g) {
  auto core = g.core();
  auto branches = g.branches();
  auto fallbacks = g.fallbacks();
  const Alphabet& alphabet = g.alphabet();

  std::vector<Vertex> order;
  for (const auto& [v, p] : core) {
    if (!v.is_base()) order.push_back(v);
  }
  std::stable_sort(order.begin(), order.end(),
                   [](const Vertex& a, const Vertex& b) { return a.length() > b.length(); });

  for (const Vertex& u : order) {
    if (!child_colors(core, u).empty()) continue;
    const Permutation value = core.at(u);
    auto first = branches.lower_bound(DirectedEdge{u, kMinColor});
    auto last = first;
    bool uniform = true;
    for (; last != branches.end() && last->first.tail == u; ++last) {
      if (last->second != value) uniform = false;
    }
    if (!alphabet.is_finite() && fallbacks.at(u) != value) uniform = false;
    if (!uniform) continue;
    branches.erase(first, last);
    fallbacks.erase(u);
    core.erase(u);
    branches.emplace(DirectedEdge{u.prefix(u.length() - 1), u.last()}, value);
  }
  if (!alphabet.is_finite()) {
    for (auto it = branches.begin(); it != branches.end();) {
      if (it->second == fallbacks.at(it->first.tail)) {
        it = branches.erase(it);
      } else {
        ++it;
      }
    }
  }
  return TreeAutomorphism(alphabet, g.base_image(), std::move(core), std::move(branches), std::move(fallbacks));
}

TreeAutomorphism from_constant(const Permutation& f, const Vertex& base_image) {
  const Alphabet alphabet = f.domain();
  std::map<Vertex, Permutation> core{{Vertex::base(), f}};
  std::map<DirectedEdge, Permutation> branches;
  std::map<Vertex, Permutation> fallbacks;
  if (alphabet.is_finite()) {
    for (Color c : alphabet.colors()) branches.emplace(DirectedEdge{Vertex::base(), c}, f);
  } else {
    fallbacks.emplace(Vertex::base(), f);
  }
  return canonicalize(TreeAutomorphism(alphabet, base_image, std::move(core), std::move(branches),
                                       std::move(fallbacks)));
}

TreeAutomorphism compose(const TreeAutomorphism& g, const TreeAutomorphism& h) {
  if (g.alphabet() != h.alphabet()) throw PreconditionError("compose: automorphisms act on different trees");
  std::set<Vertex> seeds;
  for (const auto& [v, p] : h.core()) seeds.insert(v);
  for (const auto& [y, p] : g.core()) seeds.insert(preimage(h, y));
  const std::set<Vertex> hull = prefix_hull(seeds);
  auto sigma = [&](const Vertex& v) { return local_action(g, evaluate(h, v)) * local_action(h, v); };
  auto special = [&](const Vertex& u) {
    std::vector<Color> s = h.special_colors(u);
    const Permutation tau = local_action(h, u);
    for (Color c : g.special_colors(evaluate(h, u))) s.push_back(tau.preimage(c));
    return s;
  };
  return assemble(g.alphabet(), evaluate(g, h.base_image()), hull, sigma, special);
}

TreeAutomorphism invert(const TreeAutomorphism& g) {
  std::set<Vertex> seeds;
  for (const auto& [x, p] : g.core()) seeds.insert(evaluate(g, x));
  const std::set<Vertex> hull = prefix_hull(seeds);
  auto sigma = [&](const Vertex& y) { return local_action(g, preimage(g, y)).inverse(); };
  auto special = [&](const Vertex& y) {
    const Vertex x = preimage(g, y);
    const Permutation tau = local_action(g, x);
    std::vector<Color> s;
    for (Color c : g.special_colors(x)) s.push_back(tau(c));
    return s;
  };
  return assemble(g.alphabet(), preimage(g, Vertex::base()), hull, sigma, special);
}

TreeAutomorphism power(const TreeAutomorphism& g, long long k) {
  TreeAutomorphism base = k < 0 ? invert(g) : g;
  unsigned long long n = k < 0 ? 0ULL - static_cast<unsigned long long>(k) : static_cast<unsigned long long>(k);
  TreeAutomorphism result = TreeAutomorphism::identity(g.alphabet());
  while (n > 0) {
    if (n & 1ULL) result = compose(result, base);
    n >>= 1;
    if (n > 0) base = compose(base, base);
  }
  return result;
}

TreeAutomorphism conjugate(const TreeAutomorphism& by, const TreeAutomorphism& g) {
  return compose(by, compose(g, invert(by)));
}

GroupClass::GroupClass(Kind kind, Alphabet alphabet, std::optional<PermGroupSpec> f, std::optional<PermGroupSpec> fp)
    : kind_(kind), alphabet_(alphabet), f_(std::move(f)), fp_(std::move(fp)) {}

GroupClass GroupClass::universal(PermGroupSpec f) {
  const Alphabet a = f.domain();
  return GroupClass(Kind::UofF, a, f, f);
}

GroupClass GroupClass::prescribed(PermGroupSpec f, PermGroupSpec fp) {
  if (f.domain() != fp.domain()) throw PreconditionError("F and F' act on different color sets");
  if (!is_subgroup(f, fp)) throw PreconditionError("F is not a subgroup of F'");
  const Alphabet a = f.domain();
  return GroupClass(Kind::GofFFp, a, std::move(f), std::move(fp));
}

GroupClass GroupClass::prescribed_star(PermGroupSpec f, PermGroupSpec fp) {
  GroupClass c = prescribed(std::move(f), std::move(fp));
  c.kind_ = Kind::GofFFpStar;
  return c;
}

GroupClass GroupClass::unrestricted(Alphabet alphabet) { return GroupClass(Kind::Unrestricted, alphabet, {}, {}); }

const PermGroupSpec& GroupClass::local_group() const {
  if (!fp_) throw PreconditionError("the unrestricted class has no local group");
  return *fp_;
}

const PermGroupSpec& GroupClass::generic_group() const {
  if (!f_) throw PreconditionError("the unrestricted class has no generic group");
  return *f_;
}

std::string GroupClass::describe() const {
  switch (kind_) {
    case Kind::UofF:
      return "U(" + f_->name() + ")";
    case Kind::GofFFp:
      return "G(" + f_->name() + ", " + fp_->name() + ")";
    case Kind::GofFFpStar:
      return "G(" + f_->name() + ", " + fp_->name() + ")*";
    case Kind::Unrestricted:
      return "Aut(T) on " + alphabet_.describe();
  }
  return "";
}

bool membership(const TreeAutomorphism& g, const GroupClass& cls) {
  if (g.alphabet() != cls.alphabet()) throw PreconditionError("membership: class acts on a different color set");
  if (cls.unrestricted_values()) return true;
  const PermGroupSpec& local = cls.local_group();
  const PermGroupSpec& generic = cls.generic_group();
  for (const auto& [v, p] : g.core()) {
    if (!local.contains(p)) return false;
  }
  for (const auto& [e, f] : g.branches()) {
    if (!generic.contains(f)) return false;
  }
  for (const auto& [u, f] : g.fallbacks()) {
    if (!generic.contains(f)) return false;
  }
  if (cls.star() && g.base_image().length() % 2 != 0) return false;
  return true;
}

std::string to_string(const TreeAutomorphism& g) {
  std::ostringstream out;
  out << "base=" << g.base_image().to_string() << " core{";
  bool first = true;
  for (const auto& [v, p] : g.core()) {
    out << (first ? "" : ", ") << v.to_string() << ":" << p.to_string();
    first = false;
  }
  out << "} branches{";
  first = true;
  for (const auto& [e, f] : g.branches()) {
    out << (first ? "" : ", ") << "(" << e.tail.to_string() << "," << e.color << "):" << f.to_string();
    first = false;
  }
  out << "}";
  if (!g.fallbacks().empty()) {
    out << " fallbacks{";
    first = true;
    for (const auto& [u, f] : g.fallbacks()) {
      out << (first ? "" : ", ") << u.to_string() << ":" << f.to_string();
      first = false;
    }
    out << "}";
  }
  return out.str();
}

}  // namespace arboreal
