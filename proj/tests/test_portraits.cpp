#include <doctest.h>

#include <random>

#include "arboreal/error.hpp"
#include "arboreal/obstruction.hpp"
#include "arboreal/portrait.hpp"
#include "oracles.hpp"

using namespace arboreal;

namespace {

const Alphabet kThree = Alphabet::finite(3);
const std::vector<Color> kColors{0, 1, 2};
const std::vector<Color> kWindow{-2, -1, 0, 1, 2, 3};

Permutation id3() { return Permutation::identity(kThree); }
Permutation cycle3() { return Permutation::from_cycles(3, {{0, 1, 2}}); }
Permutation swap12() { return Permutation::from_cycles(3, {{1, 2}}); }

GroupClass alt_sym() { return GroupClass::prescribed(PermGroupSpec::alternating(3), PermGroupSpec::symmetric(3)); }
GroupClass z_class() {
  return GroupClass::prescribed(PermGroupSpec::z_translations(), PermGroupSpec::z_finitary_affine());
}

// The constant portrait with value f, stored with a core of the given radius.
TreeAutomorphism padded_constant(const Permutation& f, const Vertex& base, std::size_t radius) {
  std::map<Vertex, Permutation> core;
  std::map<DirectedEdge, Permutation> branches;
  for (const Vertex& v : oracle::ball(radius, kColors)) core.emplace(v, f);
  for (const auto& [v, value] : core) {
    for (Color c : kColors) {
      if (!core.count(neighbor(v, c))) branches.emplace(DirectedEdge{v, c}, f);
    }
  }
  return TreeAutomorphism(kThree, base, core, branches);
}

void check_against_oracle(const TreeAutomorphism& g, const std::vector<Vertex>& ball) {
  for (const Vertex& v : ball) {
    REQUIRE(evaluate(g, v) == oracle::eval(g, v));
    REQUIRE(local_action(g, v) == oracle::sigma(g, v));
    REQUIRE(preimage(g, evaluate(g, v)) == v);
  }
}

}  // namespace

TEST_CASE("evaluate on constant portraits") {
  CHECK(evaluate(TreeAutomorphism::identity(kThree), Vertex::parse("012")) == Vertex::parse("012"));
  const TreeAutomorphism inversion = from_constant(id3(), Vertex::parse("0"));
  CHECK(evaluate(inversion, Vertex::parse("0")) == Vertex::base());
  const TreeAutomorphism translation = from_constant(id3(), Vertex::parse("01"));
  CHECK(evaluate(translation, Vertex::parse("0")) == Vertex::parse("010"));
  const TreeAutomorphism rotation = from_constant(cycle3(), Vertex::base());
  CHECK(evaluate(rotation, Vertex::base()) == Vertex::base());
  for (Color c : kColors) CHECK(evaluate(rotation, Vertex(Word{c})) == Vertex(Word{cycle3()(c)}));
}

TEST_CASE("local action of the half-tree fixator witness") {
  const HalfTree h{DirectedEdge{Vertex::base(), 0}};
  const TreeAutomorphism w = thm_c_witness(PermGroupSpec::alternating(3), PermGroupSpec::symmetric(3), h);
  CHECK(local_action(w, Vertex::base()) == swap12());
  CHECK(local_action(TreeAutomorphism::identity(kThree), Vertex::parse("0121")).is_identity());
}

TEST_CASE("compose and invert") {
  const TreeAutomorphism g = random_element(alt_sym(), 2, 3);
  const TreeAutomorphism id = TreeAutomorphism::identity(kThree);
  CHECK(compose(g, id) == g);
  CHECK(compose(g, invert(g)).is_identity());
  const TreeAutomorphism inversion = from_constant(id3(), Vertex::parse("0"));
  CHECK(compose(inversion, inversion).is_identity());
  CHECK(invert(inversion) == inversion);
  CHECK(invert(id) == id);
  const TreeAutomorphism translation = from_constant(id3(), Vertex::parse("01"));
  CHECK(invert(translation).base_image() == Vertex::parse("10"));
  CHECK(compose(translation, invert(translation)).is_identity());
  CHECK(power(translation, 3).base_image() == Vertex::parse("010101"));
  CHECK(power(translation, -1) == invert(translation));
  CHECK(power(g, 0).is_identity());
}

TEST_CASE("canonical forms") {
  const TreeAutomorphism g = random_element(alt_sym(), 2, 5);
  CHECK(canonicalize(g) == g);
  const TreeAutomorphism padded = padded_constant(cycle3(), Vertex::parse("01"), 2);
  const TreeAutomorphism canon = canonicalize(padded);
  CHECK(canon.core().size() == 1);
  CHECK(canon.core_radius() == 0);
  CHECK(canon == from_constant(cycle3(), Vertex::parse("01")));
  const TreeAutomorphism other = canonicalize(padded_constant(cycle3(), Vertex::parse("01"), 1));
  CHECK(other == canon);
  for (const Vertex& v : oracle::ball(4, kColors)) CHECK(oracle::eval(padded, v) == oracle::eval(canon, v));
}

TEST_CASE("invalid portraits are rejected") {
  // A core value incompatible with its neighbor on the shared edge.
  std::map<Vertex, Permutation> core{{Vertex::base(), id3()}, {Vertex::parse("0"), cycle3()}};
  std::map<DirectedEdge, Permutation> branches;
  for (Color c : {1, 2}) branches.emplace(DirectedEdge{Vertex::base(), c}, id3());
  for (Color c : {1, 2}) branches.emplace(DirectedEdge{Vertex::parse("0"), c}, cycle3());
  CHECK_THROWS_AS(TreeAutomorphism(kThree, Vertex::base(), core, branches), InvariantError);
  // A missing branch.
  std::map<DirectedEdge, Permutation> partial{{DirectedEdge{Vertex::base(), 0}, id3()}};
  CHECK_THROWS_AS(TreeAutomorphism(kThree, Vertex::base(), {{Vertex::base(), id3()}}, partial), InvariantError);
}

TEST_CASE("membership") {
  const PermGroupSpec alt = PermGroupSpec::alternating(3);
  const PermGroupSpec sym = PermGroupSpec::symmetric(3);
  CHECK(membership(TreeAutomorphism::identity(kThree), GroupClass::universal(alt)));
  const TreeAutomorphism w = thm_c_witness(alt, sym, HalfTree{DirectedEdge{Vertex::base(), 0}});
  CHECK(membership(w, GroupClass::prescribed(alt, sym)));
  CHECK_FALSE(membership(w, GroupClass::universal(alt)));
  const TreeAutomorphism translation = from_constant(id3(), Vertex::parse("01"));
  CHECK(membership(translation, GroupClass::prescribed_star(alt, sym)));
  CHECK_FALSE(membership(from_constant(cycle3(), Vertex::parse("0")), GroupClass::prescribed_star(alt, sym)));
  CHECK_FALSE(membership(from_constant(swap12(), Vertex::base()), GroupClass::universal(alt)));
  CHECK(membership(from_constant(swap12(), Vertex::base()), GroupClass::unrestricted(kThree)));
  CHECK_THROWS_AS(membership(translation, GroupClass::universal(PermGroupSpec::alternating(4))), PreconditionError);
}

TEST_CASE("random elements") {
  const TreeAutomorphism g = random_element(alt_sym(), 2, 7);
  CHECK(membership(g, alt_sym()));
  CHECK(random_element(alt_sym(), 2, 7) == g);
  CHECK(g.core_radius() <= 2);
  const GroupClass trivial = GroupClass::universal(PermGroupSpec::trivial(3));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const TreeAutomorphism t = random_element(trivial, 2, seed);
    for (const auto& [v, value] : t.core()) CHECK(value.is_identity());
    for (const auto& [e, value] : t.branches()) CHECK(value.is_identity());
  }
}

TEST_CASE("property: evaluation, composition and the cocycle identity on three colors") {
  const auto ball = oracle::ball(4, kColors);
  const auto small = oracle::ball(3, kColors);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const TreeAutomorphism g = random_element(alt_sym(), 2, 2 * seed);
    const TreeAutomorphism h = random_element(alt_sym(), 2, 2 * seed + 1);
    check_against_oracle(g, ball);
    const TreeAutomorphism gh = compose(g, h);
    CHECK(membership(gh, alt_sym()));
    CHECK(canonicalize(gh) == gh);
    for (const Vertex& v : small) {
      REQUIRE(oracle::eval(gh, v) == oracle::eval(g, oracle::eval(h, v)));
      REQUIRE(oracle::sigma(gh, v) == oracle::sigma(g, oracle::eval(h, v)) * oracle::sigma(h, v));
    }
    const TreeAutomorphism gi = invert(g);
    for (const Vertex& v : small) REQUIRE(oracle::eval(gi, oracle::eval(g, v)) == v);
    CHECK(conjugate(h, g) == compose(compose(h, g), invert(h)));
  }
}

TEST_CASE("property: integer colors") {
  const auto ball = enumerate_ball(Vertex::base(), 3, kWindow);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const TreeAutomorphism g = random_element(z_class(), 2, 2 * seed);
    const TreeAutomorphism h = random_element(z_class(), 2, 2 * seed + 1);
    CHECK(membership(g, z_class()));
    check_against_oracle(g, ball);
    const TreeAutomorphism gh = compose(g, h);
    CHECK(membership(gh, z_class()));
    for (const Vertex& v : ball) {
      REQUIRE(oracle::eval(gh, v) == oracle::eval(g, oracle::eval(h, v)));
      REQUIRE(oracle::sigma(gh, v) == oracle::sigma(g, oracle::eval(h, v)) * oracle::sigma(h, v));
    }
    CHECK(compose(g, invert(g)).is_identity());
    CHECK(compose(invert(g), g).is_identity());
  }
}

TEST_CASE("enumeration of U(Alt(3)) matches the free action count") {
  // Elements of U(F) for F free and transitive are fixed by the base image
  // and the local action at v0.
  const GroupClass u = GroupClass::universal(PermGroupSpec::alternating(3));
  CHECK(enumerate_members(u, 0, 0).size() == 3);
  CHECK(enumerate_members(u, 1, 1).size() == 12);
  CHECK(enumerate_members(u, 2, 1).size() == 12);
  CHECK(enumerate_members(u, 2, 2).size() == 30);
  for (const auto& g : enumerate_members(u, 2, 1)) CHECK(membership(g, u));
}

TEST_CASE("enumeration of G(Alt(3), Sym(3)) is consistent with membership") {
  const auto members = enumerate_members(alt_sym(), 1, 0);
  std::set<TreeAutomorphism> distinct(members.begin(), members.end());
  CHECK(distinct.size() == members.size());
  for (const auto& g : members) {
    CHECK(membership(g, alt_sym()));
    CHECK(g.core_radius() <= 1);
    CHECK(g.base_image().is_base());
  }
  // Six choices at v0; each neighbor then has two completions in Sym(3)
  // agreeing on the shared edge, and one in Alt(3) for a constant branch.
  CHECK(members.size() == 6 * 8);
}

TEST_CASE("assemble builds the requested local action") {
  const std::set<Vertex> hull = prefix_hull({Vertex::parse("01")});
  CHECK(hull == std::set<Vertex>{Vertex::base(), Vertex::parse("0"), Vertex::parse("01")});
  // (0 2) on the subtree below 01, the identity elsewhere.
  const TreeAutomorphism g = assemble(kThree, Vertex::base(), hull, [](const Vertex& v) {
    return v.has_prefix(Vertex::parse("01")) ? Permutation::from_cycles(3, {{0, 2}})
                                             : Permutation::identity(Alphabet::finite(3));
  });
  CHECK(local_action(g, Vertex::parse("01")) == Permutation::from_cycles(3, {{0, 2}}));
  CHECK(evaluate(g, Vertex::parse("010")) == Vertex::parse("012"));
}

TEST_CASE("to_string mentions the base image") {
  CHECK(to_string(from_constant(id3(), Vertex::parse("01"))).find("01") != std::string::npos);
}
