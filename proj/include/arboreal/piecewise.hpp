#pragma once

// Automorphisms acting piecewise like a group G.
//
// A piecewise element is a finite subtree A, an explicit injective map on A,
// and one global element g_i of G for each component T_i of T minus A. The
// component is keyed by its frontier edge (u, w) with u in A and w outside.
// The same code serves two trees through a Space parameter:
//
//   FreeProductSpace  the Bass-Serre tree of A * B with G = A * B,
//   RegularTreeSpace  the regular tree with G a group of TreeAutomorphisms.
//
// A Space provides Vertex, Element, neighbors, distance, geodesic,
// half_contains, act, multiply (left after right), inverse, identity,
// is_identity, fixes_component and the two to_string helpers.

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "arboreal/error.hpp"
#include "arboreal/free_product.hpp"
#include "arboreal/perm_group.hpp"
#include "arboreal/portrait.hpp"

namespace arboreal {

struct FreeProductSpace {
  using Vertex = FPVertex;
  using Element = GroupWord;

  FreeProductTree tree;

  std::vector<Vertex> neighbors(const Vertex& v) const { return tree.neighbors(v); }
  std::size_t distance(const Vertex& u, const Vertex& v) const { return tree.distance(u, v); }
  std::vector<Vertex> geodesic(const Vertex& u, const Vertex& v) const { return tree.geodesic(u, v); }
  bool half_contains(const Vertex& tail, const Vertex& head, const Vertex& z) const {
    return tree.half_contains(tail, head, z);
  }
  Vertex act(const Element& g, const Vertex& v) const { return tree.act(g, v); }
  Element multiply(const Element& a, const Element& b) const { return tree.multiply(a, b); }
  Element inverse(const Element& g) const { return tree.inverse(g); }
  Element identity() const { return {}; }
  bool is_identity(const Element& g) const { return g.empty(); }
  // Edge stabilizers of A * B are trivial, so an element fixing a
  // half-tree pointwise is the identity.
  bool fixes_component(const Element& g, const Vertex&, const Vertex&) const { return g.empty(); }
  std::string vertex_to_string(const Vertex& v) const { return tree.vertex_to_string(v); }
  std::string element_to_string(const Element& g) const { return tree.word_to_string(g); }
};

struct RegularTreeSpace {
  using Vertex = arboreal::Vertex;
  using Element = TreeAutomorphism;

  Alphabet alphabet;

  std::vector<Vertex> neighbors(const Vertex& v) const {
    std::vector<Vertex> out;
    for (Color c : alphabet.colors()) out.push_back(neighbor(v, c));
    return out;
  }
  std::size_t distance(const Vertex& u, const Vertex& v) const { return arboreal::distance(u, v); }
  std::vector<Vertex> geodesic(const Vertex& u, const Vertex& v) const { return arboreal::geodesic(u, v); }
  bool half_contains(const Vertex& tail, const Vertex& head, const Vertex& z) const {
    return half_tree_contains(HalfTree{DirectedEdge{tail, geodesic_colors(tail, head).front()}}, z);
  }
  Vertex act(const Element& g, const Vertex& v) const { return evaluate(g, v); }
  Element multiply(const Element& a, const Element& b) const { return compose(a, b); }
  Element inverse(const Element& g) const { return invert(g); }
  Element identity() const { return TreeAutomorphism::identity(alphabet); }
  bool is_identity(const Element& g) const { return g.is_identity(); }
  bool fixes_component(const Element& g, const Vertex& tail, const Vertex& head) const;
  std::string vertex_to_string(const Vertex& v) const { return v.to_string(); }
  std::string element_to_string(const Element& g) const { return to_string(g); }
};

template <typename Space>
struct PiecewiseAut {
  using Vertex = typename Space::Vertex;
  using Element = typename Space::Element;
  using Edge = std::pair<Vertex, Vertex>;

  std::set<Vertex> subtree;
  std::map<Vertex, Vertex> map_on_subtree;
  std::map<Edge, Element> pieces;
};

struct PwValidation {
  bool valid = true;
  std::string diagnostic;
};

namespace pw_detail {

template <typename Space>
bool half_subset(const Space& s, const typename Space::Vertex& x, const typename Space::Vertex& y,
                 const typename Space::Vertex& c, const typename Space::Vertex& d) {
  // half(x -> y) inside half(c -> d).
  if (x == c && y == d) return true;
  if (s.half_contains(x, y, c) || s.half_contains(x, y, d)) return false;
  return s.half_contains(c, d, y);
}

template <typename Space>
bool half_disjoint(const Space& s, const typename Space::Vertex& x, const typename Space::Vertex& y,
                   const typename Space::Vertex& c, const typename Space::Vertex& d) {
  return half_subset(s, x, y, d, c);
}

template <typename Space>
std::vector<typename PiecewiseAut<Space>::Edge> frontier(const Space& s, const std::set<typename Space::Vertex>& a) {
  std::vector<typename PiecewiseAut<Space>::Edge> out;
  for (const auto& u : a) {
    for (const auto& w : s.neighbors(u)) {
      if (!a.count(w)) out.emplace_back(u, w);
    }
  }
  return out;
}

// Smallest subtree containing the given nonempty vertex set.
template <typename Space>
std::set<typename Space::Vertex> subtree_hull(const Space& s, const std::set<typename Space::Vertex>& vertices) {
  std::set<typename Space::Vertex> out;
  const auto& anchor = *vertices.begin();
  for (const auto& v : vertices) {
    for (const auto& x : s.geodesic(anchor, v)) out.insert(x);
  }
  return out;
}

}  // namespace pw_detail

template <typename Space>
PwValidation pw_validate(const Space& s, const PiecewiseAut<Space>& p) {
  using V = typename Space::Vertex;
  auto fail = [](std::string why) { return PwValidation{false, std::move(why)}; };
  if (p.subtree.empty()) return fail("empty subtree");
  std::set<V> keys;
  for (const auto& [v, image] : p.map_on_subtree) keys.insert(v);
  if (keys != p.subtree) return fail("map is not defined exactly on the subtree");

  // Connectivity.
  std::set<V> reached{*p.subtree.begin()};
  std::deque<V> queue{*p.subtree.begin()};
  while (!queue.empty()) {
    const V u = queue.front();
    queue.pop_front();
    for (const V& w : s.neighbors(u)) {
      if (p.subtree.count(w) && reached.insert(w).second) queue.push_back(w);
    }
  }
  if (reached != p.subtree) return fail("subtree is not connected");

  std::set<V> image;
  for (const auto& [v, x] : p.map_on_subtree) {
    if (!image.insert(x).second) return fail("map on the subtree is not injective");
  }
  for (const V& u : p.subtree) {
    for (const V& w : s.neighbors(u)) {
      if (p.subtree.count(w) && s.distance(p.map_on_subtree.at(u), p.map_on_subtree.at(w)) != 1) {
        return fail("map breaks adjacency between " + s.vertex_to_string(u) + " and " + s.vertex_to_string(w));
      }
    }
  }

  const auto edges = pw_detail::frontier(s, p.subtree);
  if (edges.size() != p.pieces.size()) return fail("pieces do not match the frontier of the subtree");
  std::vector<std::pair<V, V>> images;
  for (const auto& e : edges) {
    auto it = p.pieces.find(e);
    if (it == p.pieces.end()) return fail("no piece for frontier edge at " + s.vertex_to_string(e.first));
    const V& mu = p.map_on_subtree.at(e.first);
    if (s.act(it->second, e.first) != mu) {
      return fail("piece at " + s.vertex_to_string(e.first) + " -> " + s.vertex_to_string(e.second) +
                  " does not agree with the map at the frontier");
    }
    const V head = s.act(it->second, e.second);
    for (const V& x : image) {
      if (s.half_contains(mu, head, x)) return fail("image collision: piece image meets the image of the subtree");
    }
    for (const auto& [t, h] : images) {
      if (!pw_detail::half_disjoint(s, t, h, mu, head)) return fail("image collision between two pieces");
    }
    images.emplace_back(mu, head);
  }
  if (pw_detail::frontier(s, image).size() != images.size()) {
    return fail("piece images do not cover the frontier of the image subtree");
  }
  return {};
}

template <typename Space>
typename Space::Vertex pw_evaluate(const Space& s, const PiecewiseAut<Space>& p, const typename Space::Vertex& x) {
  auto it = p.map_on_subtree.find(x);
  if (it != p.map_on_subtree.end()) return it->second;
  for (const auto& [e, g] : p.pieces) {
    if (s.half_contains(e.first, e.second, x)) return s.act(g, x);
  }
  throw InvariantError("vertex lies in no component of a piecewise element");
}

template <typename Space>
const typename Space::Element& pw_piece_at(const Space& s, const PiecewiseAut<Space>& p,
                                           const typename Space::Vertex& x) {
  for (const auto& [e, g] : p.pieces) {
    if (s.half_contains(e.first, e.second, x)) return g;
  }
  throw InvariantError("vertex lies in no component of a piecewise element");
}

template <typename Space>
PiecewiseAut<Space> pw_global(const Space& s, const typename Space::Element& g, const typename Space::Vertex& at) {
  PiecewiseAut<Space> p;
  p.subtree = {at};
  p.map_on_subtree = {{at, s.act(g, at)}};
  for (const auto& w : s.neighbors(at)) p.pieces.emplace(std::make_pair(at, w), g);
  return p;
}

// Removes leaves of the subtree whose pieces all equal one element that
// agrees with the map at the leaf. Keeps at least one vertex.
template <typename Space>
PiecewiseAut<Space> pw_simplify(const Space& s, PiecewiseAut<Space> p) {
  using V = typename Space::Vertex;
  bool changed = true;
  while (changed && p.subtree.size() > 1) {
    changed = false;
    for (const V& leaf : p.subtree) {
      std::vector<V> inside;
      std::vector<V> outside;
      for (const V& w : s.neighbors(leaf)) (p.subtree.count(w) ? inside : outside).push_back(w);
      if (inside.size() != 1) continue;
      const auto& g = p.pieces.at({leaf, outside.front()});
      bool uniform = s.act(g, leaf) == p.map_on_subtree.at(leaf);
      for (const V& w : outside) uniform = uniform && p.pieces.at({leaf, w}) == g;
      if (!uniform) continue;
      const V parent = inside.front();
      const auto piece = g;
      for (const V& w : outside) p.pieces.erase({leaf, w});
      p.pieces.emplace(std::make_pair(parent, leaf), piece);
      p.map_on_subtree.erase(leaf);
      p.subtree.erase(leaf);
      changed = true;
      break;
    }
  }
  return p;
}

template <typename Space>
PiecewiseAut<Space> pw_invert(const Space& s, const PiecewiseAut<Space>& p) {
  PiecewiseAut<Space> out;
  for (const auto& [v, x] : p.map_on_subtree) {
    out.subtree.insert(x);
    out.map_on_subtree.emplace(x, v);
  }
  for (const auto& [e, g] : p.pieces) {
    out.pieces.emplace(std::make_pair(p.map_on_subtree.at(e.first), s.act(g, e.second)), s.inverse(g));
  }
  return out;
}

// p after q.
template <typename Space>
PiecewiseAut<Space> pw_compose(const Space& s, const PiecewiseAut<Space>& p, const PiecewiseAut<Space>& q) {
  using V = typename Space::Vertex;
  const PiecewiseAut<Space> q_inv = pw_invert(s, q);
  std::set<V> seeds = q.subtree;
  for (const V& v : p.subtree) seeds.insert(pw_evaluate(s, q_inv, v));
  PiecewiseAut<Space> out;
  out.subtree = pw_detail::subtree_hull(s, seeds);
  for (const V& v : out.subtree) out.map_on_subtree.emplace(v, pw_evaluate(s, p, pw_evaluate(s, q, v)));
  for (const auto& e : pw_detail::frontier(s, out.subtree)) {
    const auto& qj = pw_piece_at(s, q, e.second);
    const auto& pk = pw_piece_at(s, p, s.act(qj, e.second));
    out.pieces.emplace(e, s.multiply(pk, qj));
  }
  return pw_simplify(s, std::move(out));
}

template <typename Space>
bool pw_is_identity(const Space& s, const PiecewiseAut<Space>& p) {
  for (const auto& [v, x] : p.map_on_subtree) {
    if (v != x) return false;
  }
  for (const auto& [e, g] : p.pieces) {
    if (!s.fixes_component(g, e.first, e.second)) return false;
  }
  return true;
}

// The element acting like g on the component through e1, like g^-1 on the
// component through e2, and trivially elsewhere; A = {v}. Edges are given
// by their far endpoints w1, w2 adjacent to v.
template <typename Space>
PiecewiseAut<Space> thm_b_witness(const Space& s, const typename Space::Element& g, const typename Space::Vertex& v,
                                  const typename Space::Vertex& w1, const typename Space::Vertex& w2) {
  const auto around = s.neighbors(v);
  if (std::find(around.begin(), around.end(), w1) == around.end() ||
      std::find(around.begin(), around.end(), w2) == around.end()) {
    throw PreconditionError("e1 and e2 must be edges at v");
  }
  if (w1 == w2) throw PreconditionError("e1 must differ from e2");
  if (around.size() < 3) throw PreconditionError("v has degree " + std::to_string(around.size()) + " < 3");
  if (s.act(g, v) != v) throw PreconditionError("g does not fix v");
  if (s.act(g, w1) != w2) throw PreconditionError("g(e1) = e2 fails");
  PiecewiseAut<Space> p;
  p.subtree = {v};
  p.map_on_subtree = {{v, v}};
  for (const auto& w : around) {
    auto piece = w == w1 ? g : (w == w2 ? s.inverse(g) : s.identity());
    p.pieces.emplace(std::make_pair(v, w), std::move(piece));
  }
  return p;
}

// Whether p fixes the half-tree half(x -> y) pointwise, on the Bass-Serre
// tree of A * B. A piece fixes a region containing an edge only if it is
// trivial; a single-vertex overlap needs only that vertex fixed.
bool pw_fixes_half_tree(const FreeProductSpace& s, const PiecewiseAut<FreeProductSpace>& p, const FPVertex& x,
                        const FPVertex& y);

// The piecewise form of g in G(F, Sym): subtree = core of g, pieces are
// constant portraits in U(F) matching g at each frontier edge. Throws
// PreconditionError unless the alphabet is finite and g is a member.
PiecewiseAut<RegularTreeSpace> pw_identification_check(const TreeAutomorphism& g, const PermGroupSpec& f);

}  // namespace arboreal
