#include "arboreal/dynamics.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "arboreal/error.hpp"

namespace arboreal {

namespace {

HalfTree half_between(const Vertex& from, const Vertex& to) {
  return HalfTree{DirectedEdge{from, geodesic_colors(from, to).front()}};
}

// Vertices a_k of the axis for |k| <= reach, with a_0 = axis_point.
class AxisSegment {
 public:
  AxisSegment(const TreeAutomorphism& g, const Hyperbolic& h, std::size_t reach) {
    const std::size_t n = reach / h.length + 1;
    const TreeAutomorphism inv = invert(g);
    Vertex forward = h.axis_point;
    Vertex backward = h.axis_point;
    for (std::size_t i = 0; i < n; ++i) {
      forward = evaluate(g, forward);
      backward = evaluate(inv, backward);
    }
    path_ = geodesic(backward, forward);
    offset_ = static_cast<long long>(n * h.length);
  }
  const Vertex& at(long long k) const { return path_.at(static_cast<std::size_t>(k + offset_)); }

 private:
  std::vector<Vertex> path_;
  long long offset_ = 0;
};

bool ends_pairwise_distinct(const std::vector<Word>& prefixes) {
  for (std::size_t i = 0; i < prefixes.size(); ++i) {
    for (std::size_t j = i + 1; j < prefixes.size(); ++j) {
      if (prefixes[i] == prefixes[j]) return false;
    }
  }
  return true;
}

std::string edge_label(const HalfTree& h) {
  return "half(" + h.edge.tail.to_string() + " -> " + h.edge.head().to_string() + ")";
}

}  // namespace

IsometryType classify_isometry(const TreeAutomorphism& g) {
  Vertex v;
  const std::size_t budget = 2 * distance(v, evaluate(g, v)) + 4;
  for (std::size_t step = 0; step <= budget; ++step) {
    const Vertex gv = evaluate(g, v);
    const std::size_t d = distance(v, gv);
    if (d == 0) return Elliptic{v};
    // v lies on an axis exactly when displacement doubles under g^2.
    if (distance(v, evaluate(g, gv)) == 2 * d) return Hyperbolic{d, v};
    const std::vector<Vertex> path = geodesic(v, gv);
    if (d % 2 == 0) {
      v = path[d / 2];
      continue;
    }
    const Vertex& p = path[(d - 1) / 2];
    const Vertex& q = path[(d + 1) / 2];
    if (evaluate(g, p) == q && evaluate(g, q) == p) return Inversion{DirectedEdge{p, geodesic_colors(p, q).front()}};
    v = q;
  }
  throw InvariantError("midpoint descent did not terminate for " + to_string(g));
}

std::string describe(const IsometryType& type) {
  if (const auto* e = std::get_if<Elliptic>(&type)) return "Elliptic at " + e->fixed_vertex.to_string();
  if (const auto* i = std::get_if<Inversion>(&type)) {
    return "Inversion of edge " + i->edge.tail.to_string() + " -- " + i->edge.head().to_string();
  }
  const auto& h = std::get<Hyperbolic>(type);
  return "Hyperbolic, length " + std::to_string(h.length) + ", axis through " + h.axis_point.to_string();
}

std::size_t translation_length(const IsometryType& type) {
  const auto* h = std::get_if<Hyperbolic>(&type);
  return h ? h->length : 0;
}

std::pair<EndPoint, EndPoint> axis_and_ends(const TreeAutomorphism& g) {
  return {EndPoint::axis(g, 1), EndPoint::axis(g, -1)};
}

bool fixes_half_tree_pointwise(const TreeAutomorphism& g, const HalfTree& h) {
  const Vertex root = h.edge.head();
  if (evaluate(g, root) != root) return false;
  // With the root fixed, g fixes h pointwise iff every local action in h is trivial.
  for (const auto& [v, p] : g.core()) {
    if (half_tree_contains(h, v) && !p.is_identity()) return false;
  }
  const HalfTree outside = h.complement();
  for (const auto& [e, f] : g.branches()) {
    if (!f.is_identity() && !half_tree_subset(HalfTree{e}, outside)) return false;
  }
  for (const auto& [u, f] : g.fallbacks()) {
    if (f.is_identity()) continue;
    if (half_tree_contains(h, u)) return false;
    // Only the branch at u pointing towards h can meet h.
    const Color towards = geodesic_colors(u, root).front();
    const Vertex next = neighbor(u, towards);
    if (!g.in_core(next) && !g.branches().count(DirectedEdge{u, towards})) return false;
  }
  return true;
}

std::string word_label(const GeneratorWord& word) {
  if (word.empty()) return "1";
  std::ostringstream out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    out << (i ? " " : "") << "g" << word[i] / 2 + 1 << (word[i] % 2 ? "^-1" : "");
  }
  return out.str();
}

std::optional<GeneralTypeWitness> general_type_witness(const std::vector<TreeAutomorphism>& gens,
                                                       std::size_t search_len) {
  if (gens.empty()) throw PreconditionError("general_type_witness needs at least one generator");
  std::vector<TreeAutomorphism> letters;
  for (const auto& g : gens) {
    letters.push_back(g);
    letters.push_back(invert(g));
  }
  struct Candidate {
    TreeAutomorphism g;
    GeneratorWord word;
    std::size_t length;
  };
  std::vector<Candidate> hyperbolic;
  std::vector<TreeAutomorphism> seen;

  auto consider = [&](const TreeAutomorphism& g, const GeneratorWord& word) -> std::optional<GeneralTypeWitness> {
    if (std::find(seen.begin(), seen.end(), g) != seen.end()) return std::nullopt;
    seen.push_back(g);
    const IsometryType type = classify_isometry(g);
    const auto* h = std::get_if<Hyperbolic>(&type);
    if (!h) return std::nullopt;
    const auto [att, rep] = axis_and_ends(g);
    for (const Candidate& c : hyperbolic) {
      const std::size_t depth = 2 * std::max(c.length, h->length) * search_len;
      const auto [catt, crep] = axis_and_ends(c.g);
      if (ends_pairwise_distinct({catt.prefix(depth), crep.prefix(depth), att.prefix(depth), rep.prefix(depth)})) {
        return GeneralTypeWitness{c.g, g, c.word, word, depth};
      }
    }
    hyperbolic.push_back({g, word, h->length});
    return std::nullopt;
  };

  // Breadth by length, lexicographic within a length; freely reduced words only.
  std::vector<std::pair<TreeAutomorphism, GeneratorWord>> layer{{TreeAutomorphism::identity(gens[0].alphabet()), {}}};
  for (std::size_t len = 1; len <= search_len; ++len) {
    std::vector<std::pair<TreeAutomorphism, GeneratorWord>> next;
    for (const auto& [g, word] : layer) {
      for (std::size_t l = 0; l < letters.size(); ++l) {
        if (!word.empty() && (word.back() ^ 1U) == l) continue;
        GeneratorWord w = word;
        w.push_back(l);
        TreeAutomorphism product = compose(g, letters[l]);
        if (auto found = consider(product, w)) return found;
        next.emplace_back(std::move(product), std::move(w));
      }
    }
    layer = std::move(next);
  }
  return std::nullopt;
}

std::optional<FreeGroupCertificate> ping_pong_certificate(const TreeAutomorphism& g1, const TreeAutomorphism& g2,
                                                          std::size_t power) {
  if (power == 0) throw PreconditionError("ping-pong power must be positive");
  const IsometryType t1 = classify_isometry(g1);
  const IsometryType t2 = classify_isometry(g2);
  const auto* h1 = std::get_if<Hyperbolic>(&t1);
  const auto* h2 = std::get_if<Hyperbolic>(&t2);
  if (!h1 || !h2) throw PreconditionError("ping-pong needs two hyperbolic elements");
  {
    const std::size_t depth = 2 * std::max(h1->length, h2->length) + h1->axis_point.length() +
                              h2->axis_point.length() + 8;
    const auto [a1, r1] = axis_and_ends(g1);
    const auto [a2, r2] = axis_and_ends(g2);
    if (!ends_pairwise_distinct({a1.prefix(depth), r1.prefix(depth), a2.prefix(depth), r2.prefix(depth)})) {
      throw PreconditionError("end pairs coincide within depth " + std::to_string(depth));
    }
  }
  const long long len1 = static_cast<long long>(power * h1->length);
  const long long len2 = static_cast<long long>(power * h2->length);
  const long long reach = static_cast<long long>(h1->axis_point.length() + h2->axis_point.length()) + len1 + len2 + 4;
  const AxisSegment axis1(g1, *h1, static_cast<std::size_t>(reach + len1 + 2));
  const AxisSegment axis2(g2, *h2, static_cast<std::size_t>(reach + len2 + 2));

  // H+ = half(a_k -> a_{k+1}) and H- = half(a_{k-L+1} -> a_{k-L}); g^L maps
  // the complement of H- onto H+.
  auto plus = [](const AxisSegment& a, long long k) { return half_between(a.at(k), a.at(k + 1)); };
  auto minus = [](const AxisSegment& a, long long k, long long len) {
    return half_between(a.at(k - len + 1), a.at(k - len));
  };

  const TreeAutomorphism p1 = arboreal::power(g1, static_cast<long long>(power));
  const TreeAutomorphism p2 = arboreal::power(g2, static_cast<long long>(power));
  for (long long k1 = -reach; k1 <= reach; ++k1) {
    const HalfTree a_plus = plus(axis1, k1);
    const HalfTree a_minus = minus(axis1, k1, len1);
    for (long long k2 = -reach; k2 <= reach; ++k2) {
      const HalfTree b_plus = plus(axis2, k2);
      const HalfTree b_minus = minus(axis2, k2, len2);
      if (!half_trees_disjoint(a_plus, b_plus) || !half_trees_disjoint(a_plus, b_minus) ||
          !half_trees_disjoint(a_minus, b_plus) || !half_trees_disjoint(a_minus, b_minus)) {
        continue;
      }
      FreeGroupCertificate cert{power, a_plus, a_minus, b_plus, b_minus, {}};
      auto check = [&](const TreeAutomorphism& g, const std::string& name, const HalfTree& from,
                       const HalfTree& into) {
        const Vertex tail = evaluate(g, from.edge.tail);
        const Vertex head = evaluate(g, from.edge.head());
        const HalfTree image = half_between(tail, head);
        if (!half_tree_subset(image, into)) {
          throw InvariantError("ping-pong inclusion failed for " + name);
        }
        cert.inclusions.push_back(name + " maps " + edge_label(from) + " into " + edge_label(into));
      };
      check(p1, "g1^" + std::to_string(power), a_minus.complement(), a_plus);
      check(invert(p1), "g1^-" + std::to_string(power), a_plus.complement(), a_minus);
      check(p2, "g2^" + std::to_string(power), b_minus.complement(), b_plus);
      check(invert(p2), "g2^-" + std::to_string(power), b_plus.complement(), b_minus);
      return cert;
    }
  }
  return std::nullopt;
}

}  // namespace arboreal
