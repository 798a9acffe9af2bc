#include "arboreal/perm_group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "arboreal/error.hpp"

namespace arboreal {

namespace {

constexpr Color kSampleSpan = 3;

Color uniform(std::mt19937_64& rng, Color lo, Color hi) {
  return std::uniform_int_distribution<Color>(lo, hi)(rng);
}

int parity(const std::vector<Color>& images) {
  std::vector<bool> seen(images.size(), false);
  int transpositions = 0;
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(images[j])) {
      seen[j] = true;
      ++len;
    }
    transpositions += static_cast<int>(len) - 1;
  }
  return transpositions % 2;
}

std::vector<Permutation> all_permutations(Color degree, bool even_only) {
  std::vector<Color> images(static_cast<std::size_t>(degree));
  std::iota(images.begin(), images.end(), Color{0});
  std::vector<Permutation> out;
  do {
    if (!even_only || parity(images) == 0) out.push_back(Permutation::from_images(images));
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

}  // namespace

PermGroupSpec PermGroupSpec::listed(Color degree, std::vector<Permutation> elements, std::string name,
                                    std::string amenability_reason) {
  Alphabet domain = Alphabet::finite(degree);
  std::set<Permutation> set;
  for (auto& p : elements) {
    if (!p.is_table() || p.domain() != domain) throw InvariantError("group element outside the alphabet");
    set.insert(p);
  }
  Permutation id = Permutation::identity(domain);
  if (!set.count(id)) throw InvariantError("listed group lacks the identity");
  for (const auto& p : set) {
    if (!set.count(p.inverse())) throw InvariantError("listed group is not closed under inverses");
    for (const auto& q : set) {
      if (!set.count(p * q)) throw InvariantError("listed group is not closed under products");
    }
  }
  PermGroupSpec g;
  g.kind_ = Kind::FiniteListed;
  g.degree_ = degree;
  g.elements_.push_back(id);
  for (const auto& p : set) {
    if (p != id) g.elements_.push_back(p);
  }
  g.name_ = std::move(name);
  g.amenability_reason_ = std::move(amenability_reason);
  return g;
}

PermGroupSpec PermGroupSpec::generated(Color degree, const std::vector<Permutation>& generators, std::string name) {
  Permutation id = Permutation::identity(Alphabet::finite(degree));
  std::set<Permutation> seen{id};
  std::deque<Permutation> queue{id};
  while (!queue.empty()) {
    Permutation p = queue.front();
    queue.pop_front();
    for (const auto& s : generators) {
      Permutation q = p * s;
      if (seen.insert(q).second) queue.push_back(q);
    }
  }
  return listed(degree, {seen.begin(), seen.end()}, std::move(name));
}

PermGroupSpec PermGroupSpec::symmetric(Color degree) {
  return listed(degree, all_permutations(degree, false), "Sym(" + std::to_string(degree) + ")");
}

PermGroupSpec PermGroupSpec::alternating(Color degree) {
  return listed(degree, all_permutations(degree, true), "Alt(" + std::to_string(degree) + ")");
}

PermGroupSpec PermGroupSpec::cyclic_rotation(Color degree) {
  std::vector<Color> cycle(static_cast<std::size_t>(degree));
  std::iota(cycle.begin(), cycle.end(), Color{0});
  return generated(degree, {Permutation::from_cycles(degree, {cycle})}, "C" + std::to_string(degree));
}

PermGroupSpec PermGroupSpec::trivial(Color degree) {
  return listed(degree, {Permutation::identity(Alphabet::finite(degree))}, "1");
}

PermGroupSpec PermGroupSpec::z_translations() {
  PermGroupSpec g;
  g.kind_ = Kind::ZTranslations;
  g.name_ = "Z";
  g.amenability_reason_ = "abelian";
  return g;
}

PermGroupSpec PermGroupSpec::z_finitary_affine() {
  PermGroupSpec g;
  g.kind_ = Kind::ZFinitaryAffine;
  g.name_ = "FSym(Z)⋊Z";
  g.amenability_reason_ = "locally finite ⋊ Z";
  return g;
}

PermGroupSpec PermGroupSpec::z_finitary_stabilizer(Color fixed) {
  PermGroupSpec g;
  g.kind_ = Kind::ZFinitaryStabilizer;
  g.fixed_ = fixed;
  g.name_ = "Stab(" + std::to_string(fixed) + ") in FSym(Z)⋊Z";
  g.amenability_reason_ = "locally finite-by-Z";
  return g;
}

Alphabet PermGroupSpec::domain() const {
  return kind_ == Kind::FiniteListed ? Alphabet::finite(degree_) : Alphabet::integers();
}

const std::vector<Permutation>& PermGroupSpec::elements() const {
  if (kind_ != Kind::FiniteListed) throw PreconditionError("group " + name_ + " is not listed");
  return elements_;
}

Color PermGroupSpec::fixed_point() const {
  if (kind_ != Kind::ZFinitaryStabilizer) throw PreconditionError("group " + name_ + " is not a stabilizer family");
  return fixed_;
}

bool PermGroupSpec::contains(const Permutation& p) const {
  switch (kind_) {
    case Kind::FiniteListed:
      if (!p.is_table() || static_cast<Color>(p.table().images.size()) != degree_) return false;
      return p == elements_.front() || std::binary_search(elements_.begin() + 1, elements_.end(), p);
    case Kind::ZTranslations:
      return !p.is_table() && p.affine_part().finitary.empty();
    case Kind::ZFinitaryAffine:
      return !p.is_table();
    case Kind::ZFinitaryStabilizer:
      return !p.is_table() && p(fixed_) == fixed_;
  }
  return false;
}

std::vector<Permutation> PermGroupSpec::elements_mapping(Color from, Color to) const {
  std::vector<Permutation> out;
  for (const auto& p : elements()) {
    if (p(from) == to) out.push_back(p);
  }
  return out;
}

std::vector<std::vector<Color>> PermGroupSpec::orbits() const {
  const auto n = static_cast<std::size_t>(degree_);
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& p : elements()) {
    for (std::size_t x = 0; x < n; ++x) parent[find(x)] = find(static_cast<std::size_t>(p(static_cast<Color>(x))));
  }
  std::map<std::size_t, std::vector<Color>> groups;
  for (std::size_t x = 0; x < n; ++x) groups[find(x)].push_back(static_cast<Color>(x));
  std::vector<std::vector<Color>> out;
  for (auto& [_, orbit] : groups) out.push_back(std::move(orbit));
  return out;
}

Permutation PermGroupSpec::sample(std::mt19937_64& rng) const {
  switch (kind_) {
    case Kind::FiniteListed:
      return elements_[static_cast<std::size_t>(uniform(rng, 0, static_cast<Color>(elements_.size()) - 1))];
    case Kind::ZTranslations:
      return Permutation::translation(uniform(rng, -kSampleSpan, kSampleSpan));
    case Kind::ZFinitaryAffine: {
      Permutation p = Permutation::translation(uniform(rng, -kSampleSpan, kSampleSpan));
      auto swaps = uniform(rng, 0, 2);
      for (Color i = 0; i < swaps; ++i) {
        Color a = uniform(rng, -kSampleSpan - 1, kSampleSpan + 1);
        Color b = uniform(rng, -kSampleSpan - 1, kSampleSpan + 1);
        p = Permutation::transposition(Alphabet::integers(), a, b) * p;
      }
      return p;
    }
    case Kind::ZFinitaryStabilizer: {
      Permutation p = z_finitary_affine().sample(rng);
      return Permutation::transposition(Alphabet::integers(), p(fixed_), fixed_) * p;
    }
  }
  throw InvariantError("unknown group kind");
}

std::optional<Permutation> PermGroupSpec::sample_mapping(Color from, Color to, std::mt19937_64& rng) const {
  switch (kind_) {
    case Kind::FiniteListed: {
      auto options = elements_mapping(from, to);
      if (options.empty()) return std::nullopt;
      return options[static_cast<std::size_t>(uniform(rng, 0, static_cast<Color>(options.size()) - 1))];
    }
    case Kind::ZTranslations:
      return Permutation::translation(to - from);
    case Kind::ZFinitaryAffine: {
      Permutation p = sample(rng);
      return Permutation::transposition(Alphabet::integers(), p(from), to) * p;
    }
    case Kind::ZFinitaryStabilizer: {
      if ((from == fixed_) != (to == fixed_)) return std::nullopt;
      Permutation p = sample(rng);
      return Permutation::transposition(Alphabet::integers(), p(from), to) * p;
    }
  }
  return std::nullopt;
}

bool PermGroupSpec::operator==(const PermGroupSpec& other) const {
  return kind_ == other.kind_ && degree_ == other.degree_ && fixed_ == other.fixed_ && elements_ == other.elements_;
}

bool check_freeness(const PermGroupSpec& group) {
  switch (group.kind()) {
    case PermGroupSpec::Kind::FiniteListed:
      for (const auto& p : group.elements()) {
        if (p.is_identity()) continue;
        for (Color x = 0; x < group.domain().degree(); ++x) {
          if (p(x) == x) return false;
        }
      }
      return true;
    case PermGroupSpec::Kind::ZTranslations:
      return true;
    default:
      return false;
  }
}

std::string to_string(OrbitCheck result) {
  switch (result) {
    case OrbitCheck::Preserved:
      return "preserved";
    case OrbitCheck::NotPreserved:
      return "not preserved";
    case OrbitCheck::NotContained:
      return "not a subgroup";
  }
  return "?";
}

bool is_subgroup(const PermGroupSpec& f, const PermGroupSpec& fp) {
  using Kind = PermGroupSpec::Kind;
  if (f.domain() != fp.domain()) throw PreconditionError("permutation groups act on different color sets");
  if (f.is_finite()) {
    return std::all_of(f.elements().begin(), f.elements().end(), [&](const Permutation& p) { return fp.contains(p); });
  }
  if (f.kind() == fp.kind()) return f == fp;
  return f.kind() == Kind::ZTranslations && fp.kind() == Kind::ZFinitaryAffine;
}

OrbitCheck check_orbit_preservation(const PermGroupSpec& f, const PermGroupSpec& fp) {
  if (!is_subgroup(f, fp)) return OrbitCheck::NotContained;
  if (!f.is_finite()) {
    // Translations and the affine family are transitive on the integers.
    return OrbitCheck::Preserved;
  }
  for (const auto& orbit : f.orbits()) {
    std::set<Color> members(orbit.begin(), orbit.end());
    for (const auto& p : fp.elements()) {
      for (Color x : orbit) {
        if (!members.count(p(x))) return OrbitCheck::NotPreserved;
      }
    }
  }
  return OrbitCheck::Preserved;
}

PermGroupSpec point_stabilizer(const PermGroupSpec& group, Color a) {
  switch (group.kind()) {
    case PermGroupSpec::Kind::FiniteListed: {
      if (!group.domain().contains(a)) throw PreconditionError("stabilized point outside the alphabet");
      return PermGroupSpec::listed(group.domain().degree(), group.elements_mapping(a, a),
                                   group.name() + "_" + std::to_string(a), "finite");
    }
    case PermGroupSpec::Kind::ZFinitaryAffine:
      return PermGroupSpec::z_finitary_stabilizer(a);
    default:
      throw PreconditionError("point stabilizers are available for listed groups and FSym(Z)⋊Z only");
  }
}

bool is_transitive(const PermGroupSpec& group) {
  if (!group.is_finite()) return group.kind() != PermGroupSpec::Kind::ZFinitaryStabilizer;
  return group.orbits().size() == 1;
}

bool is_faithful(const std::vector<Permutation>& action, const Alphabet& omega) {
  Permutation id = Permutation::identity(omega);
  return std::count(action.begin(), action.end(), id) <= 1;
}

std::vector<int> WreathEmbedding::point(Color x) const {
  std::vector<int> f(static_cast<std::size_t>(shift_group.order()));
  for (auto& digit : f) {
    digit = static_cast<int>(x % gamma.order());
    x /= gamma.order();
  }
  return f;
}

Color WreathEmbedding::encode(const std::vector<int>& function) const {
  Color x = 0;
  for (std::size_t i = function.size(); i > 0; --i) x = x * gamma.order() + function[i - 1];
  return x;
}

Permutation WreathEmbedding::action(const std::vector<int>& f, int a) const {
  const int n = shift_group.order();
  std::vector<Color> images(point_count());
  for (Color x = 0; x < static_cast<Color>(point_count()); ++x) {
    std::vector<int> fx = point(x);
    std::vector<int> out(static_cast<std::size_t>(n));
    int a_inv = shift_group.inverse(a);
    for (int t = 0; t < n; ++t) {
      int shifted = fx[static_cast<std::size_t>(shift_group.multiply(a_inv, t))];
      out[static_cast<std::size_t>(t)] = gamma.multiply(f[static_cast<std::size_t>(t)], shifted);
    }
    images[static_cast<std::size_t>(x)] = encode(out);
  }
  return Permutation::from_images(std::move(images));
}

WreathEmbedding wreath_embedding_spec(const FiniteGroup& gamma, const FiniteGroup& shift_group) {
  if (gamma.is_trivial()) throw PreconditionError("wreath embedding needs a nontrivial Gamma");
  if (shift_group.is_trivial()) throw PreconditionError("wreath embedding needs a nontrivial A");
  Color points = 1;
  for (int i = 0; i < shift_group.order(); ++i) points *= gamma.order();
  if (points < 3) throw PreconditionError("wreath embedding gives fewer than three colors");

  Alphabet omega = Alphabet::finite(points);
  WreathEmbedding w{gamma, shift_group, omega, PermGroupSpec::trivial(points), PermGroupSpec::trivial(points), {}};

  // The base group, indexed like Omega itself.
  std::vector<Permutation> base, full;
  for (Color code = 0; code < points; ++code) {
    auto f = w.point(code);
    base.push_back(w.action(f, shift_group.identity()));
    for (int a = 0; a < shift_group.order(); ++a) full.push_back(w.action(f, a));
  }
  if (!is_faithful(full, omega)) throw InvariantError("wreath product does not act faithfully");

  std::string gname = gamma.name().empty() ? "Γ" : gamma.name();
  std::string aname = shift_group.name().empty() ? "A" : shift_group.name();
  w.base_group = PermGroupSpec::listed(points, base, gname + "^(" + aname + ")");
  w.wreath = PermGroupSpec::listed(points, full, gname + "≀" + aname);
  if (w.base_group.order() != base.size() || w.wreath.order() != full.size()) {
    throw InvariantError("wreath action is not faithful");
  }
  if (!check_freeness(w.base_group) || !is_transitive(w.base_group)) {
    throw InvariantError("base group does not act simply transitively");
  }

  // Stab(x) = f Stab(e) f^{-1}, where f is the base element with f.e = x and
  // Stab(e) is the shift group itself.
  Color e = w.encode(std::vector<int>(static_cast<std::size_t>(shift_group.order()), gamma.identity()));
  std::set<Permutation> shifts;
  for (int a = 0; a < shift_group.order(); ++a) {
    shifts.insert(w.action(std::vector<int>(static_cast<std::size_t>(shift_group.order()), gamma.identity()), a));
  }
  for (Color x = 0; x < points; ++x) {
    Permutation f = w.action(w.point(x), shift_group.identity());
    if (f(e) != x) throw InvariantError("base element does not carry e to x");
    std::set<Permutation> conj;
    for (const auto& s : shifts) conj.insert(f * s * f.inverse());
    auto stab = w.wreath.elements_mapping(x, x);
    if (std::set<Permutation>(stab.begin(), stab.end()) != conj) {
      throw InvariantError("point stabilizer is not a conjugate of A");
    }
  }

  std::vector<int> f(static_cast<std::size_t>(shift_group.order()), gamma.identity());
  for (int g = 0; g < gamma.order(); ++g) {
    f[static_cast<std::size_t>(shift_group.identity())] = g;
    w.embed.push_back(w.action(f, shift_group.identity()));
  }
  return w;
}

}  // namespace arboreal
