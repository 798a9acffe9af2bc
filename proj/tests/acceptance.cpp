// Acceptance suite: one line per criterion, PASS only when the check holds
// and finishes within its time limit. Exit status 1 if any criterion fails.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "arboreal/dynamics.hpp"
#include "arboreal/obstruction.hpp"
#include "arboreal/piecewise.hpp"
#include "arboreal/presets.hpp"
#include "oracles.hpp"

namespace {

using namespace arboreal;

struct Outcome {
  bool passed = false;
  std::string detail;
};

struct Criterion {
  int number;
  std::string title;
  double limit_seconds;
  std::function<Outcome()> run;
};

const Alphabet kThree = Alphabet::finite(3);
const std::vector<Color> kColors{0, 1, 2};
const HalfTree kHalf{DirectedEdge{Vertex::base(), 0}};

PermGroupSpec alt3() { return PermGroupSpec::alternating(3); }
PermGroupSpec sym3() { return PermGroupSpec::symmetric(3); }
GroupClass alt_sym() { return GroupClass::prescribed(alt3(), sym3()); }

std::string count(std::size_t n, const std::string& what) { return std::to_string(n) + " " + what; }

Outcome group_axioms() {
  const std::size_t n = 500;
  std::vector<TreeAutomorphism> elements;
  for (std::uint64_t seed = 0; seed < n; ++seed) elements.push_back(random_element(alt_sym(), 2, seed));
  const TreeAutomorphism id = TreeAutomorphism::identity(kThree);
  const auto ball = enumerate_ball(Vertex::base(), 3, kColors);
  std::size_t failures = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& g = elements[i];
    const auto& h = elements[(i + 1) % n];
    const auto& k = elements[(i + 2) % n];
    if (!membership(g, alt_sym()) || canonicalize(g) != g) ++failures;
    if (compose(compose(g, h), k) != compose(g, compose(h, k))) ++failures;
    if (compose(g, id) != g || compose(id, g) != g) ++failures;
    if (!compose(g, invert(g)).is_identity() || !compose(invert(g), g).is_identity()) ++failures;
    const TreeAutomorphism gh = compose(g, h);
    for (const Vertex& v : ball) {
      if (local_action(gh, v) != local_action(g, evaluate(h, v)) * local_action(h, v)) ++failures;
    }
  }
  return {failures == 0, count(n, "elements") + ", " + count(failures, "violations")};
}

Outcome edge_fixators() {
  const auto members = enumerate_members(GroupClass::universal(alt3()), 2, 1);
  const Vertex head = Vertex::parse("0");
  std::size_t fixing = 0;
  bool only_identity = true;
  for (const auto& g : members) {
    if (evaluate(g, Vertex::base()) == Vertex::base() && evaluate(g, head) == head) {
      ++fixing;
      only_identity = only_identity && g.is_identity();
    }
  }
  return {fixing == 1 && only_identity,
          count(members.size(), "elements enumerated") + ", " + count(fixing, "fixing the edge (v0, 0)")};
}

Outcome torsion_free() {
  const PermGroupSpec t = PermGroupSpec::z_translations();
  const GroupClass star = GroupClass::prescribed_star(t, t);
  std::size_t nontrivial = 0;
  std::size_t failures = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const TreeAutomorphism g = random_element(star, 2, seed);
    if (!membership(g, star)) ++failures;
    if (g.is_identity()) continue;
    ++nontrivial;
    TreeAutomorphism p = g;
    for (int k = 1; k <= 20; ++k) {
      if (p.is_identity()) ++failures;
      p = compose(p, g);
    }
  }
  return {failures == 0, count(nontrivial, "non-identity elements") + ", " + count(failures, "violations")};
}

Outcome witness_for(const std::string& name) {
  const GroupSetup s = preset(name);
  const TreeAutomorphism w = thm_c_witness(*s.f, *s.fp, kHalf);
  const bool nontrivial = !w.is_identity();
  const bool fixes = fixes_half_tree_pointwise(w, kHalf);
  const bool in_g = membership(w, GroupClass::prescribed(*s.f, *s.fp));
  const bool in_u = membership(w, GroupClass::universal(*s.f));
  std::ostringstream detail;
  detail << name << ": non-identity " << nontrivial << ", fixes half-tree " << fixes << ", in G(F,F') " << in_g
         << ", in U(F) " << in_u;
  return {nontrivial && fixes && in_g && !in_u, detail.str()};
}

Outcome convolution_identity() {
  const auto [a, b] = disjoint_pair(alt3(), sym3(), kHalf.edge);
  std::vector<TreeAutomorphism> gens = default_generators(alt3());
  gens.push_back(a);
  gens.push_back(b);
  const std::size_t depth = 16;
  const OrbitTruncation orbit = orbit_truncate(gens, EndPoint::parse("(01)"), 3, depth);
  const bool disjoint = disjoint_support_check(a, b, orbit);
  const AnnihilationReport report = operator_annihilation_check(a, b, orbit);
  const bool commute = compose(a, b) == compose(b, a);
  // Recheck each point by evaluating a, b and ab on a long vertex of the ray.
  const TreeAutomorphism ab = compose(a, b);
  std::size_t recheck_failures = 0;
  for (const auto& p : orbit.points) {
    const Word ray = p.end.prefix(depth + 32);
    std::multiset<Word> lhs{p.prefix, oracle::image_prefix(ab, ray, depth)};
    std::multiset<Word> rhs{oracle::image_prefix(a, ray, depth), oracle::image_prefix(b, ray, depth)};
    if (lhs != rhs) ++recheck_failures;
  }
  std::ostringstream detail;
  detail << orbit.points.size() << " orbit points, " << report.passed.size() << " pass, " << report.failed.size()
         << " fail, independent recheck failures " << recheck_failures << ", disjoint support " << disjoint
         << ", ab = ba " << commute;
  return {disjoint && report.all_pass() && !orbit.points.empty() && recheck_failures == 0 && commute, detail.str()};
}

Outcome classification() {
  std::size_t failures = 0;
  std::size_t kinds[3] = {0, 0, 0};
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const bool four = seed % 2 == 1;
    const TreeAutomorphism g = four ? random_element(GroupClass::unrestricted(Alphabet::finite(4)), 1, seed)
                                    : random_element(alt_sym(), 2, seed);
    const std::vector<Color> colors = four ? std::vector<Color>{0, 1, 2, 3} : kColors;
    const IsometryType type = classify_isometry(g);
    const oracle::BruteType brute = oracle::brute_classify(g, g.base_image().length() + 2, colors);
    ++kinds[type.index()];
    if (static_cast<int>(type.index()) != brute.kind || translation_length(type) != brute.length) ++failures;
  }
  std::ostringstream detail;
  detail << "200 elements (" << kinds[0] << " elliptic, " << kinds[1] << " inversions, " << kinds[2]
         << " hyperbolic), " << failures << " mismatches";
  return {failures == 0, detail.str()};
}

Outcome pw_identification() {
  const RegularTreeSpace space{kThree};
  const auto ball = enumerate_ball(Vertex::base(), 5, kColors);
  std::size_t failures = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const TreeAutomorphism g = random_element(alt_sym(), 2, 1000 + seed);
    const auto p = pw_identification_check(g, alt3());
    if (!pw_validate(space, p).valid) ++failures;
    for (const Vertex& v : ball) {
      if (pw_evaluate(space, p, v) != evaluate(g, v)) {
        ++failures;
        break;
      }
    }
  }
  return {failures == 0, "100 elements, " + count(failures, "failures") + " on radius-5 balls"};
}

Outcome free_product_witness() {
  const FreeProductSpace space{FreeProductTree::psl2z()};
  const auto& t = space.tree;
  const FPVertex v{{}, Factor::B};
  const GroupWord g = t.letter(Factor::B, 1);
  const auto around = t.neighbors(v);
  const FPVertex w1 = around[0];
  const FPVertex w2 = t.act(g, w1);
  FPVertex third = v;
  for (const auto& w : around) {
    if (w != w1 && w != w2) third = w;
  }
  const auto gamma = thm_b_witness(space, g, v, w1, w2);
  const PwValidation valid = pw_validate(space, gamma);
  const bool nontrivial = !pw_is_identity(space, gamma);
  const bool fixes = pw_fixes_half_tree(space, gamma, v, third);
  // Direct check on the vertices of the fixed half-tree near v.
  bool ball_fixed = true;
  std::vector<FPVertex> frontier{third};
  std::set<FPVertex> seen{v, third};
  for (int layer = 0; layer < 6; ++layer) {
    std::vector<FPVertex> next;
    for (const auto& x : frontier) {
      ball_fixed = ball_fixed && pw_evaluate(space, gamma, x) == x;
      for (const auto& y : t.neighbors(x)) {
        if (seen.insert(y).second) next.push_back(y);
      }
    }
    frontier = std::move(next);
  }
  std::ostringstream detail;
  detail << "valid " << valid.valid << ", non-identity " << nontrivial << ", fixes " << t.vertex_to_string(v) << " -> "
         << t.vertex_to_string(third) << " " << fixes << ", ball check " << ball_fixed;
  return {valid.valid && nontrivial && fixes && ball_fixed, detail.str()};
}

Outcome k_filtration() {
  const KFiltrationReport k0 = k_filtration_check(alt3(), sym3(), kHalf, 0);
  const KFiltrationReport k1 = k_filtration_check(alt3(), sym3(), kHalf, 1);
  const PermGroupSpec stabilizer = point_stabilizer(sym3(), 0);
  const std::set<Permutation> stab(stabilizer.elements().begin(), stabilizer.elements().end());
  const std::set<Permutation> hit(k1.hit.begin(), k1.hit.end());
  std::ostringstream detail;
  detail << "K0: " << k0.fixing << " of " << k0.enumerated << " fix the edge; K1: " << hit.size() << " of "
         << stab.size() << " local actions hit";
  return {k0.ok && k0.fixing == 1 && k1.ok && hit == stab, detail.str()};
}

Outcome wreath_embeddings() {
  std::ostringstream detail;
  bool ok = true;
  for (const auto& [gamma, shift] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {2, 3}}) {
    const WreathEmbedding w = wreath_embedding_spec(FiniteGroup::cyclic(gamma), FiniteGroup::cyclic(shift));
    const Color n = w.omega.degree();
    // F free and transitive: each point is reached from 0 by exactly one element.
    bool free_transitive = w.base_group.order() == static_cast<std::size_t>(n);
    for (Color x = 0; x < n; ++x) {
      std::size_t carriers = 0;
      for (const auto& f : w.base_group.elements()) carriers += f(0) == x;
      free_transitive = free_transitive && carriers == 1;
    }
    // F' faithful: distinct pairs (f, a) act by distinct permutations.
    std::set<Permutation> images;
    std::size_t pairs = 0;
    std::vector<int> f(static_cast<std::size_t>(shift), 0);
    for (int code = 0;; ++code) {
      int rest = code;
      for (auto& value : f) {
        value = rest % gamma;
        rest /= gamma;
      }
      if (rest > 0) break;
      for (int a = 0; a < shift; ++a) {
        images.insert(w.action(f, a));
        ++pairs;
      }
    }
    const bool faithful = images.size() == pairs;
    // Stabilizers conjugate to A.
    std::set<Permutation> shifts;
    for (int a = 0; a < shift; ++a) shifts.insert(w.action(std::vector<int>(static_cast<std::size_t>(shift), 0), a));
    bool conjugate = true;
    for (Color x = 0; x < n; ++x) {
      std::set<Permutation> stab;
      for (const auto& p : images) {
        if (p(x) == x) stab.insert(p);
      }
      bool found = false;
      for (const auto& c : images) {
        std::set<Permutation> conj;
        for (const auto& s : stab) conj.insert(c * s * c.inverse());
        found = found || conj == shifts;
      }
      conjugate = conjugate && found;
    }
    ok = ok && free_transitive && faithful && conjugate;
    detail << "(Z/" << gamma << ", Z/" << shift << "): |Omega| " << n << ", |F'| " << images.size() << ", free+transitive "
           << free_transitive << ", faithful " << faithful << ", stabilizers " << conjugate << "; ";
  }
  return {ok, detail.str()};
}

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {1, "group axioms and cocycle identity", 10, group_axioms},
      {2, "edge fixators in U(Alt(3)) are trivial", 30, edge_fixators},
      {3, "U(F)* over the integers is torsion free", 30, torsion_free},
      {4, "half-tree fixator witness (Alt(3), Sym(3))", 5, [] { return witness_for("g-alt3-sym3"); }},
      {4, "half-tree fixator witness (cycle-5, Alt(5))", 5, [] { return witness_for("g-cycle5-alt5"); }},
      {4, "half-tree fixator witness wreath (Z/2, Z/2)", 5, [] { return witness_for("wreath-z2-z2"); }},
      {5, "convolution identity on the orbit of (01)", 60, convolution_identity},
      {6, "isometry classification against brute force", 60, classification},
      {7, "piecewise identification", 60, pw_identification},
      {8, "piecewise witness on Z/2 * Z/3", 5, free_product_witness},
      {9, "fixator filtration", 30, k_filtration},
      {10, "wreath embeddings", 10, wreath_embeddings},
  };
  bool all = true;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds < c.limit_seconds;
    const bool passed = outcome.passed && in_time;
    all = all && passed;
    std::cout << (passed ? "PASS" : "FAIL") << "  criterion " << std::setw(2) << c.number << "  " << c.title << "  ["
              << std::fixed << std::setprecision(3) << seconds << " s, limit " << std::setprecision(0)
              << c.limit_seconds << " s" << (in_time ? "" : ", TIME LIMIT EXCEEDED") << "]  " << outcome.detail
              << "\n";
  }
  std::cout << (all ? "all criteria passed" : "some criteria failed") << "\n";
  return all ? 0 : 1;
}
