#include "arboreal/obstruction.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "arboreal/error.hpp"

namespace arboreal {

namespace {

bool word_order(const GeneratorWord& x, const GeneratorWord& y) {
  if (x.size() != y.size()) return x.size() < y.size();
  return x < y;
}

std::string permutations_to_string(const std::vector<Permutation>& ps) {
  std::string out;
  for (const auto& p : ps) out += (out.empty() ? "" : ", ") + p.to_string();
  return "{" + out + "}";
}

}  // namespace

TreeAutomorphism half_tree_fixator_element(const PermGroupSpec& f, const HalfTree& h, const Permutation& sigma) {
  const Alphabet alphabet = f.domain();
  if (sigma.domain() != alphabet) throw PreconditionError("sigma acts on a different color set");
  const Vertex v = h.edge.tail;
  const Color a = h.edge.color;
  if (sigma(a) != a) throw PreconditionError("sigma must fix the edge color " + std::to_string(a));

  std::map<Color, Permutation> cache;
  auto branch_value = [&](Color b) -> Permutation {
    if (b == a) return Permutation::identity(alphabet);
    auto it = cache.find(b);
    if (it != cache.end()) return it->second;
    Permutation value = Permutation::identity(alphabet);
    if (f.is_finite()) {
      const auto options = f.elements_mapping(b, sigma(b));
      if (options.empty()) {
        throw PreconditionError("no element of " + f.name() + " maps " + std::to_string(b) + " to " +
                                std::to_string(sigma(b)));
      }
      value = options.front();
    } else if (f.kind() == PermGroupSpec::Kind::ZTranslations) {
      value = Permutation::translation(sigma(b) - b);
    } else {
      throw PreconditionError("branch constants need F listed or the translations of the integers");
    }
    cache.emplace(b, value);
    return value;
  };

  auto local = [&](const Vertex& x) -> Permutation {
    if (x == v) return sigma;
    return branch_value(geodesic_colors(v, x).front());
  };
  // g fixes v; the path from v to v0 is carried by sigma on its first edge
  // and by that branch's constant afterwards.
  Vertex base = v;
  const std::vector<Color> path = geodesic_colors(v, Vertex::base());
  for (std::size_t i = 0; i < path.size(); ++i) {
    base = neighbor(base, i == 0 ? sigma(path[i]) : branch_value(path.front())(path[i]));
  }
  auto special = [&](const Vertex& x) {
    std::vector<Color> out;
    if (x == v) {
      out = sigma.special_points();
      out.push_back(a);
    }
    return out;
  };
  return assemble(alphabet, base, prefix_hull({v, h.edge.head()}), local, special);
}

TreeAutomorphism thm_c_witness(const PermGroupSpec& f, const PermGroupSpec& fp, const HalfTree& h) {
  if (!check_freeness(f)) throw PreconditionError(f.name() + " does not act freely");
  const OrbitCheck orbits = check_orbit_preservation(f, fp);
  if (orbits != OrbitCheck::Preserved) throw PreconditionError("orbit check: " + to_string(orbits));
  if (is_subgroup(fp, f)) throw PreconditionError("F = F': the half-tree fixator is trivial");
  const Color a = h.edge.color;
  Permutation sigma = Permutation::identity(f.domain());
  if (fp.is_finite()) {
    const auto stab = point_stabilizer(fp, a).elements();
    auto it = std::find_if(stab.begin(), stab.end(), [](const Permutation& p) { return !p.is_identity(); });
    if (it == stab.end()) {
      throw InvariantError("the stabilizer of " + std::to_string(a) + " in " + fp.name() +
                           " is trivial although F' preserves the orbits of a free F != F'");
    }
    sigma = *it;
  } else if (fp.kind() == PermGroupSpec::Kind::ZFinitaryAffine) {
    sigma = Permutation::transposition(Alphabet::integers(), a + 1, a + 2);
  } else {
    throw PreconditionError("no non-trivial point stabilizer available in " + fp.name());
  }
  return half_tree_fixator_element(f, h, sigma);
}

std::pair<TreeAutomorphism, TreeAutomorphism> disjoint_pair(const PermGroupSpec& f, const PermGroupSpec& fp,
                                                             const DirectedEdge& e) {
  const HalfTree t1{e};
  const HalfTree t2 = t1.complement();
  return {thm_c_witness(f, fp, t2), thm_c_witness(f, fp, t1)};
}

OrbitTruncation orbit_truncate(const std::vector<TreeAutomorphism>& gens, const EndPoint& xi, std::size_t word_length,
                               std::size_t depth) {
  if (!xi.is_periodic()) throw PreconditionError("orbit truncation needs a periodic end");
  std::vector<TreeAutomorphism> letters;
  std::size_t displacement = 0;
  for (const auto& g : gens) {
    letters.push_back(g);
    letters.push_back(invert(g));
    displacement = std::max(displacement, g.base_image().length());
  }
  OrbitTruncation out{xi, gens, word_length, depth, 2 * word_length * displacement + xi.data_length(), {}, {}};
  if (depth < out.heuristic_bound) {
    out.warnings.push_back("depth " + std::to_string(depth) + " is below the heuristic bound " +
                           std::to_string(out.heuristic_bound));
  }

  std::set<EndPoint::Periodic> seen{xi.periodic_data()};
  std::vector<std::pair<GeneratorWord, EndPoint>> reached{{{}, xi}};
  std::vector<std::pair<GeneratorWord, EndPoint>> layer = reached;
  for (std::size_t len = 1; len <= word_length && !layer.empty(); ++len) {
    std::vector<std::pair<GeneratorWord, EndPoint>> candidates;
    for (const auto& [word, end] : layer) {
      for (std::size_t l = 0; l < letters.size(); ++l) {
        GeneratorWord w{l};
        w.insert(w.end(), word.begin(), word.end());
        candidates.emplace_back(std::move(w), apply(letters[l], end));
      }
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const auto& x, const auto& y) { return word_order(x.first, y.first); });
    layer.clear();
    for (auto& c : candidates) {
      if (seen.insert(c.second.periodic_data()).second) layer.push_back(c);
    }
    reached.insert(reached.end(), layer.begin(), layer.end());
  }
  std::sort(reached.begin(), reached.end(), [](const auto& x, const auto& y) { return word_order(x.first, y.first); });
  std::set<Word> prefixes;
  for (auto& [word, end] : reached) {
    Word p = end.prefix(depth);
    if (prefixes.insert(p).second) out.points.push_back(OrbitPoint{word, end, std::move(p)});
  }
  return out;
}

bool disjoint_support_check(const TreeAutomorphism& a, const TreeAutomorphism& b, const OrbitTruncation& orbit) {
  for (const auto& point : orbit.points) {
    const bool moved_a = apply(a, point.end).prefix(orbit.depth) != point.prefix;
    const bool moved_b = apply(b, point.end).prefix(orbit.depth) != point.prefix;
    if (moved_a && moved_b) return false;
  }
  return true;
}

AnnihilationReport operator_annihilation_check(const TreeAutomorphism& a, const TreeAutomorphism& b,
                                               const OrbitTruncation& orbit) {
  AnnihilationReport report;
  report.depth = orbit.depth;
  report.caveat = "ends compared by their first " + std::to_string(orbit.depth) + " colors";
  const TreeAutomorphism ab = compose(a, b);
  for (const auto& point : orbit.points) {
    std::vector<Word> positive{point.prefix, apply(ab, point.end).prefix(orbit.depth)};
    std::vector<Word> negative{apply(a, point.end).prefix(orbit.depth), apply(b, point.end).prefix(orbit.depth)};
    std::sort(positive.begin(), positive.end());
    std::sort(negative.begin(), negative.end());
    (positive == negative ? report.passed : report.failed).push_back(point.word);
  }
  return report;
}

KFiltrationReport k_filtration_check(const PermGroupSpec& f, const PermGroupSpec& fp, const HalfTree& h,
                                     std::size_t n) {
  if (n >= 2) throw PreconditionError("k_filtration_check supports n = 0 and n = 1 only");
  if (!f.is_finite() || !fp.is_finite()) throw PreconditionError("k_filtration_check needs a finite color set");
  if (!check_freeness(f)) throw PreconditionError(f.name() + " does not act freely");
  KFiltrationReport report;
  report.n = n;
  const Vertex v = h.edge.tail;
  const Vertex head = h.edge.head();
  constexpr std::size_t kCoreRadius = 2;
  constexpr std::size_t kBaseRadius = 2;

  if (n == 0) {
    const auto members = enumerate_members(GroupClass::universal(f), kCoreRadius, kBaseRadius);
    report.enumerated = members.size();
    bool only_identity = true;
    for (const auto& g : members) {
      if (evaluate(g, v) == v && evaluate(g, head) == head) {
        ++report.fixing;
        only_identity = only_identity && g.is_identity();
      }
    }
    report.ok = only_identity && report.fixing == 1;
    report.detail = std::to_string(report.fixing) + " of " + std::to_string(report.enumerated) +
                    " enumerated elements of U(" + f.name() + ") fix the edge";
    return report;
  }

  report.targets = point_stabilizer(fp, h.edge.color).elements();
  bool constructed = true;
  for (const auto& tau : report.targets) {
    const TreeAutomorphism g = half_tree_fixator_element(f, h, tau);
    const bool good = membership(g, GroupClass::prescribed(f, fp)) && fixes_half_tree_pointwise(g, h) &&
                      local_action(g, v) == tau;
    constructed = constructed && good;
    if (good) report.hit.push_back(tau);
  }
  // Enumerated fixators: values in F' at v and in F elsewhere.
  auto filter = [&](const Vertex& x, const Permutation& p) { return x == v || f.contains(p); };
  const auto members = enumerate_members(GroupClass::prescribed(f, fp), kCoreRadius, kBaseRadius, filter);
  report.enumerated = members.size();
  std::set<Permutation> image;
  for (const auto& g : members) {
    if (!fixes_half_tree_pointwise(g, h)) continue;
    ++report.fixing;
    image.insert(local_action(g, v));
  }
  const std::set<Permutation> targets(report.targets.begin(), report.targets.end());
  const bool bijective = image == targets && report.fixing == targets.size();
  report.ok = constructed && bijective;
  report.detail = "preimages constructed for " + permutations_to_string(report.hit) + " of " +
                  permutations_to_string(report.targets) + "; " + std::to_string(report.fixing) +
                  " enumerated fixators map " + (bijective ? "bijectively" : "not bijectively") + " onto F'_a";
  return report;
}

}  // namespace arboreal
