#include <doctest.h>

#include <set>

#include "arboreal/error.hpp"
#include "arboreal/obstruction.hpp"
#include "arboreal/presets.hpp"
#include "oracles.hpp"

using namespace arboreal;

namespace {

const std::vector<Color> kColors{0, 1, 2};
const HalfTree kHalf{DirectedEdge{Vertex::base(), 0}};

PermGroupSpec alt() { return PermGroupSpec::alternating(3); }
PermGroupSpec sym() { return PermGroupSpec::symmetric(3); }

// Prefixes of the images of xi under all words of length <= length in the
// generators and their inverses, by repeated evaluation on a long ray.
std::set<Word> orbit_oracle(const std::vector<TreeAutomorphism>& gens, const EndPoint& xi, std::size_t length,
                            std::size_t depth) {
  std::vector<TreeAutomorphism> letters;
  for (const auto& g : gens) {
    letters.push_back(g);
    letters.push_back(invert(g));
  }
  std::set<Vertex> layer{Vertex(xi.prefix(depth + 24 * (length + 1)))};
  std::set<Word> out;
  for (std::size_t step = 0;; ++step) {
    for (const Vertex& v : layer) {
      Word w = v.word();
      w.resize(depth);
      out.insert(w);
    }
    if (step == length) break;
    std::set<Vertex> next;
    for (const Vertex& v : layer) {
      for (const auto& g : letters) next.insert(oracle::eval(g, v));
    }
    layer = std::move(next);
  }
  return out;
}

}  // namespace

TEST_CASE("the half-tree fixator witness over (Alt(3), Sym(3))") {
  const TreeAutomorphism w = thm_c_witness(alt(), sym(), kHalf);
  CHECK(local_action(w, Vertex::base()) == Permutation::from_cycles(3, {{1, 2}}));
  CHECK(local_action(w, Vertex::parse("1")) == Permutation::from_cycles(3, {{0, 1, 2}}));
  CHECK(local_action(w, Vertex::parse("2")) == Permutation::from_cycles(3, {{0, 2, 1}}));
  CHECK(local_action(w, Vertex::parse("0")).is_identity());
  CHECK(local_action(w, Vertex::parse("1201")) == Permutation::from_cycles(3, {{0, 1, 2}}));
  CHECK_FALSE(w.is_identity());
  CHECK(fixes_half_tree_pointwise(w, kHalf));
  CHECK(membership(w, GroupClass::prescribed(alt(), sym())));
  CHECK_FALSE(membership(w, GroupClass::universal(alt())));
  for (const Vertex& v : oracle::ball(5, kColors)) {
    if (half_tree_contains(kHalf, v)) CHECK(oracle::eval(w, v) == v);
  }
  CHECK_THROWS_AS(thm_c_witness(alt(), alt(), kHalf), PreconditionError);
  CHECK_THROWS_AS(thm_c_witness(sym(), sym(), kHalf), PreconditionError);
}

TEST_CASE("the half-tree fixator witness on the integers") {
  const PermGroupSpec f = PermGroupSpec::z_translations();
  const PermGroupSpec fp = PermGroupSpec::z_finitary_affine();
  const TreeAutomorphism w = thm_c_witness(f, fp, kHalf);
  const Permutation sigma = local_action(w, Vertex::base());
  CHECK(sigma(0) == 0);
  CHECK_FALSE(sigma.is_identity());
  CHECK(sigma.affine_part().shift == 0);
  for (Color b : {-3, -1, 1, 2, 3, 7}) {
    CHECK(local_action(w, Vertex(Word{b})) == Permutation::translation(sigma(b) - b));
  }
  CHECK(fixes_half_tree_pointwise(w, kHalf));
  CHECK(membership(w, GroupClass::prescribed(f, fp)));
  CHECK_FALSE(membership(w, GroupClass::universal(f)));
  for (const Vertex& v : enumerate_ball(Vertex::base(), 3, {-1, 0, 1, 2, 3})) {
    if (half_tree_contains(kHalf, v)) CHECK(oracle::eval(w, v) == v);
  }
}

TEST_CASE("witnesses for the other presets") {
  for (const std::string name : {"g-cycle5-alt5", "wreath-z2-z2", "wreath-z3-z2", "wreath-z2-z3"}) {
    CAPTURE(name);
    const GroupSetup s = preset(name);
    for (Color c : {0, 1}) {
      const HalfTree h{DirectedEdge{Vertex::parse(c == 0 ? "1" : "v0"), c}};
      const TreeAutomorphism w = thm_c_witness(*s.f, *s.fp, h);
      CHECK_FALSE(w.is_identity());
      CHECK(fixes_half_tree_pointwise(w, h));
      CHECK(membership(w, GroupClass::prescribed(*s.f, *s.fp)));
      CHECK_FALSE(membership(w, GroupClass::universal(*s.f)));
    }
  }
}

TEST_CASE("disjointly supported pairs") {
  const auto [a, b] = disjoint_pair(alt(), sym(), kHalf.edge);
  CHECK(fixes_half_tree_pointwise(a, kHalf.complement()));
  CHECK(fixes_half_tree_pointwise(b, kHalf));
  CHECK_FALSE(a.is_identity());
  CHECK_FALSE(b.is_identity());
  CHECK(compose(a, b) == compose(b, a));
  for (const Vertex& v : oracle::ball(5, kColors)) {
    if (oracle::eval(a, v) != v) CHECK(half_tree_contains(kHalf, v));
    if (oracle::eval(b, v) != v) CHECK_FALSE(half_tree_contains(kHalf, v));
  }
  CHECK_THROWS_AS(disjoint_pair(alt(), alt(), kHalf.edge), PreconditionError);
}

TEST_CASE("orbit truncation matches an independent enumeration") {
  const std::vector<TreeAutomorphism> gens = default_generators(alt());
  const EndPoint xi = EndPoint::parse("(01)");
  for (std::size_t length : {0u, 1u, 2u, 3u}) {
    const OrbitTruncation orbit = orbit_truncate(gens, xi, length, 16);
    const std::set<Word> expected = orbit_oracle(gens, xi, length, 16);
    std::set<Word> got;
    for (const auto& p : orbit.points) {
      got.insert(p.prefix);
      CHECK(p.end.prefix(16) == p.prefix);
      CHECK(p.word.size() <= length);
    }
    CHECK(got.size() == orbit.points.size());
    CHECK(got == expected);
  }
  const std::vector<TreeAutomorphism> two{from_constant(Permutation::from_cycles(3, {{0, 1, 2}}), Vertex::parse("0")),
                                          from_constant(Permutation::identity(Alphabet::finite(3)), Vertex::parse("01"))};
  const OrbitTruncation orbit = orbit_truncate(two, xi, 3, 16);
  CHECK(orbit.points.size() == orbit_oracle(two, xi, 3, 16).size());
  CHECK(orbit.points.front().word.empty());
}

TEST_CASE("degenerate orbits") {
  const EndPoint xi = EndPoint::parse("(01)");
  CHECK(orbit_truncate(default_generators(alt()), xi, 0, 16).points.size() == 1);
  CHECK(orbit_truncate({TreeAutomorphism::identity(Alphabet::finite(3))}, xi, 3, 16).points.size() == 1);
  CHECK_FALSE(orbit_truncate(default_generators(alt()), xi, 3, 2).warnings.empty());
}

TEST_CASE("disjoint support and the convolution identity") {
  const auto [a, b] = disjoint_pair(alt(), sym(), kHalf.edge);
  std::vector<TreeAutomorphism> gens = default_generators(alt());
  gens.push_back(a);
  gens.push_back(b);
  const OrbitTruncation orbit = orbit_truncate(gens, EndPoint::parse("(01)"), 3, 16);
  CHECK(disjoint_support_check(a, b, orbit));
  CHECK_FALSE(disjoint_support_check(a, a, orbit));
  CHECK(disjoint_support_check(TreeAutomorphism::identity(Alphabet::finite(3)), b, orbit));
  const AnnihilationReport report = operator_annihilation_check(a, b, orbit);
  CHECK(report.all_pass());
  CHECK(report.passed.size() == orbit.points.size());
  CHECK(report.depth == 16);
  CHECK_FALSE(report.caveat.empty());
  // A pair that overlaps on the orbit breaks the identity somewhere.
  const AnnihilationReport overlap = operator_annihilation_check(a, a, orbit);
  CHECK_FALSE(overlap.all_pass());
}

TEST_CASE("the filtration by fixators") {
  const KFiltrationReport k0 = k_filtration_check(alt(), sym(), kHalf, 0);
  CHECK(k0.ok);
  CHECK(k0.fixing == 1);
  CHECK(k0.enumerated > 1);
  const KFiltrationReport k1 = k_filtration_check(alt(), sym(), kHalf, 1);
  CHECK(k1.ok);
  REQUIRE(k1.targets.size() == 2);
  CHECK(std::set<Permutation>(k1.targets.begin(), k1.targets.end()) ==
        std::set<Permutation>{Permutation::identity(Alphabet::finite(3)), Permutation::from_cycles(3, {{1, 2}})});
  CHECK(std::set<Permutation>(k1.hit.begin(), k1.hit.end()) ==
        std::set<Permutation>(k1.targets.begin(), k1.targets.end()));
  CHECK_THROWS_AS(k_filtration_check(alt(), sym(), kHalf, 2), PreconditionError);
}
