#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "arboreal/error.hpp"
#include "arboreal/portrait.hpp"

namespace arboreal {

namespace {

// Window of colors used for random words on the integer alphabet.
constexpr Color kWindow = 2;

std::vector<Color> sampling_colors(const Alphabet& alphabet) {
  if (alphabet.is_finite()) return alphabet.colors();
  std::vector<Color> out;
  for (Color c = -kWindow; c <= kWindow; ++c) out.push_back(c);
  return out;
}

Permutation random_table(Color degree, std::mt19937_64& rng) {
  std::vector<Color> images(static_cast<std::size_t>(degree));
  for (Color i = 0; i < degree; ++i) images[static_cast<std::size_t>(i)] = i;
  std::shuffle(images.begin(), images.end(), rng);
  return Permutation::from_images(std::move(images));
}

class Sampler {
 public:
  Sampler(const GroupClass& cls, std::mt19937_64& rng) : cls_(cls), rng_(rng) {}

  Permutation any(bool local) {
    if (cls_.unrestricted_values()) {
      if (cls_.alphabet().is_finite()) return random_table(cls_.alphabet().degree(), rng_);
      return PermGroupSpec::z_finitary_affine().sample(rng_);
    }
    return (local ? cls_.local_group() : cls_.generic_group()).sample(rng_);
  }

  Permutation mapping(bool local, Color from, Color to) {
    std::optional<Permutation> p;
    if (cls_.unrestricted_values()) {
      if (cls_.alphabet().is_finite()) {
        std::vector<Color> images = random_table(cls_.alphabet().degree(), rng_).table().images;
        auto it = std::find(images.begin(), images.end(), to);
        std::swap(*it, images[static_cast<std::size_t>(from)]);
        p = Permutation::from_images(std::move(images));
      } else {
        p = PermGroupSpec::z_finitary_affine().sample_mapping(from, to, rng_);
      }
    } else {
      p = (local ? cls_.local_group() : cls_.generic_group()).sample_mapping(from, to, rng_);
    }
    if (!p) {
      throw PreconditionError("no allowed local action maps " + std::to_string(from) + " to " + std::to_string(to));
    }
    return *p;
  }

 private:
  const GroupClass& cls_;
  std::mt19937_64& rng_;
};

}  // namespace

TreeAutomorphism random_element(const GroupClass& cls, std::size_t core_radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Sampler sampler(cls, rng);
  const Alphabet& alphabet = cls.alphabet();
  const std::vector<Color> window = sampling_colors(alphabet);
  std::bernoulli_distribution grow(alphabet.is_finite() ? 0.6 : 0.4);
  const std::size_t radius = std::uniform_int_distribution<std::size_t>(0, core_radius)(rng);

  std::map<Vertex, Permutation> core;
  std::vector<Vertex> queue{Vertex::base()};
  core.emplace(Vertex::base(), sampler.any(true));
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const Vertex u = queue[i];
    if (u.length() >= radius) continue;
    const Permutation& su = core.at(u);
    for (Color c : window) {
      if (!u.is_base() && c == u.last()) continue;
      if (!grow(rng)) continue;
      Vertex w = neighbor(u, c);
      core.emplace(w, sampler.mapping(true, c, su(c)));
      queue.push_back(w);
    }
  }

  std::map<DirectedEdge, Permutation> branches;
  std::map<Vertex, Permutation> fallbacks;
  for (const auto& [u, p] : core) {
    if (alphabet.is_finite()) {
      for (Color c : alphabet.colors()) {
        if (core.count(neighbor(u, c))) continue;
        branches.emplace(DirectedEdge{u, c}, sampler.mapping(false, c, p(c)));
      }
      continue;
    }
    const Permutation fallback = Permutation::translation(p.affine_part().shift);
    if (!cls.unrestricted_values() && !cls.generic_group().contains(fallback)) {
      throw PreconditionError("the generic group has no translation matching the core value at " + u.to_string());
    }
    fallbacks.emplace(u, fallback);
    std::set<Color> exceptions;
    for (Color c : p.special_points()) exceptions.insert(c);
    exceptions.insert(window[std::uniform_int_distribution<std::size_t>(0, window.size() - 1)(rng)]);
    for (Color c : exceptions) {
      if (core.count(neighbor(u, c))) continue;
      branches.emplace(DirectedEdge{u, c}, sampler.mapping(false, c, p(c)));
    }
  }

  std::size_t length = std::uniform_int_distribution<std::size_t>(0, radius + 1)(rng);
  if (cls.star() && length % 2 == 1) --length;
  Word base;
  while (base.size() < length) {
    Color c = window[std::uniform_int_distribution<std::size_t>(0, window.size() - 1)(rng)];
    if (!base.empty() && base.back() == c) continue;
    base.push_back(c);
  }
  return canonicalize(
      TreeAutomorphism(alphabet, Vertex(std::move(base)), std::move(core), std::move(branches), std::move(fallbacks)));
}

std::vector<TreeAutomorphism> enumerate_members(const GroupClass& cls, std::size_t core_radius,
                                                std::size_t base_radius, const ValueFilter& value_filter) {
  const Alphabet& alphabet = cls.alphabet();
  if (!alphabet.is_finite()) throw PreconditionError("enumerate_members needs a finite alphabet");
  const std::vector<Color> colors = alphabet.colors();
  const std::vector<Permutation> all_values =
      cls.unrestricted_values() ? PermGroupSpec::symmetric(alphabet.degree()).elements()
                                : cls.local_group().elements();
  const std::vector<Permutation> generic_values =
      cls.unrestricted_values() ? all_values : cls.generic_group().elements();

  const std::vector<Vertex> ball = enumerate_ball(Vertex::base(), core_radius, colors);
  std::vector<Vertex> bases;
  for (const Vertex& b : enumerate_ball(Vertex::base(), base_radius, colors)) {
    if (!cls.star() || b.length() % 2 == 0) bases.push_back(b);
  }
  std::vector<DirectedEdge> frontier;
  for (const Vertex& u : ball) {
    if (u.length() != core_radius) continue;
    for (Color c : colors) {
      if (u.is_base() || c != u.last()) frontier.push_back(DirectedEdge{u, c});
    }
  }

  std::set<TreeAutomorphism> found;
  std::map<Vertex, Permutation> core;
  std::map<DirectedEdge, Permutation> branches;

  auto allowed = [&](const Vertex& v, const Permutation& p) { return !value_filter || value_filter(v, p); };

  // Branch constants on the outer frontier, one edge at a time.
  auto fill_branches = [&](auto&& self, std::size_t k) -> void {
    if (k == frontier.size()) {
      for (const Vertex& b : bases) {
        found.insert(canonicalize(TreeAutomorphism(alphabet, b, core, branches)));
      }
      return;
    }
    const DirectedEdge& e = frontier[k];
    const Color target = core.at(e.tail)(e.color);
    for (const Permutation& f : generic_values) {
      if (f(e.color) != target) continue;
      branches.insert_or_assign(e, f);
      self(self, k + 1);
    }
    branches.erase(e);
  };

  // Core values in ball order; parents come before children.
  auto fill_core = [&](auto&& self, std::size_t k) -> void {
    if (k == ball.size()) {
      fill_branches(fill_branches, 0);
      return;
    }
    const Vertex& v = ball[k];
    for (const Permutation& p : all_values) {
      if (!v.is_base()) {
        const Vertex parent = v.prefix(v.length() - 1);
        if (core.at(parent)(v.last()) != p(v.last())) continue;
      }
      if (!allowed(v, p)) continue;
      core.insert_or_assign(v, p);
      self(self, k + 1);
    }
    core.erase(v);
  };
  fill_core(fill_core, 0);
  return {found.begin(), found.end()};
}

}  // namespace arboreal
