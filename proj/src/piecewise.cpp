#include "arboreal/piecewise.hpp"

#include "arboreal/dynamics.hpp"

namespace arboreal {

bool RegularTreeSpace::fixes_component(const Element& g, const Vertex& tail, const Vertex& head) const {
  return fixes_half_tree_pointwise(g, HalfTree{DirectedEdge{tail, geodesic_colors(tail, head).front()}});
}

bool pw_fixes_half_tree(const FreeProductSpace& s, const PiecewiseAut<FreeProductSpace>& p, const FPVertex& x,
                        const FPVertex& y) {
  for (const auto& [v, image] : p.map_on_subtree) {
    if (s.half_contains(x, y, v) && image != v) return false;
  }
  for (const auto& [e, g] : p.pieces) {
    const auto& [u, w] = e;
    if (g.empty() || pw_detail::half_disjoint(s, u, w, x, y)) continue;
    if (pw_detail::half_subset(s, u, w, x, y) || pw_detail::half_subset(s, x, y, u, w)) return false;
    // The two half-trees face each other; they share one vertex only
    // when their roots coincide at a vertex of degree 2.
    if (w == y && s.tree.degree(w) == 2 && s.act(g, w) == w) continue;
    return false;
  }
  return true;
}

PiecewiseAut<RegularTreeSpace> pw_identification_check(const TreeAutomorphism& g, const PermGroupSpec& f) {
  const Alphabet& alphabet = g.alphabet();
  if (!alphabet.is_finite()) throw PreconditionError("the identification needs a finite color set");
  const GroupClass cls = GroupClass::prescribed(f, PermGroupSpec::symmetric(alphabet.degree()));
  if (!membership(g, cls)) throw PreconditionError("g is not in " + cls.describe());
  const RegularTreeSpace space{alphabet};
  PiecewiseAut<RegularTreeSpace> p;
  for (const auto& [v, sigma] : g.core()) {
    p.subtree.insert(v);
    p.map_on_subtree.emplace(v, evaluate(g, v));
  }
  for (const auto& [e, constant] : g.branches()) {
    // from_constant(f, b) sends u to b.f(u); choose b so that this is g(u).
    Vertex b = evaluate(g, e.tail);
    const Word& u = e.tail.word();
    for (auto it = u.rbegin(); it != u.rend(); ++it) b = neighbor(b, constant(*it));
    p.pieces.emplace(std::make_pair(e.tail, e.head()), from_constant(constant, b));
  }
  const PwValidation check = pw_validate(space, p);
  if (!check.valid) throw InvariantError("identification produced an invalid piecewise element: " + check.diagnostic);
  return p;
}

}  // namespace arboreal
