#pragma once

// Reference computations for the tests. They read portraits directly and
// walk the tree by brute force, sharing no code with the library's
// evaluation, composition or classification routines.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "arboreal/portrait.hpp"
#include "arboreal/tree.hpp"

namespace oracle {

using namespace arboreal;

// Local action read off the stored portrait data.
inline Permutation sigma(const TreeAutomorphism& g, const Vertex& v) {
  if (auto it = g.core().find(v); it != g.core().end()) return it->second;
  std::size_t n = 0;
  while (n < v.length() && g.in_core(v.prefix(n + 1))) ++n;
  const Vertex u = v.prefix(n);
  const DirectedEdge e{u, v.word()[n]};
  if (auto it = g.branches().find(e); it != g.branches().end()) return it->second;
  return g.fallbacks().at(u);
}

// g(v) by walking the word of v from the base and translating each edge.
inline Vertex eval(const TreeAutomorphism& g, const Vertex& v) {
  Word image = g.base_image().word();
  for (std::size_t i = 0; i < v.length(); ++i) {
    const Color c = sigma(g, v.prefix(i))(v.word()[i]);
    if (!image.empty() && image.back() == c) {
      image.pop_back();
    } else {
      image.push_back(c);
    }
  }
  return Vertex(image);
}

// Breadth-first distance inside the ball of radius `radius` around v0.
inline std::size_t bfs_distance(const Vertex& from, const Vertex& to, const std::vector<Color>& colors,
                                std::size_t radius) {
  std::map<Vertex, std::size_t> dist{{from, 0}};
  std::deque<Vertex> queue{from};
  while (!queue.empty()) {
    const Vertex x = queue.front();
    queue.pop_front();
    if (x == to) return dist.at(x);
    for (Color c : colors) {
      Word w = x.word();
      if (!w.empty() && w.back() == c) {
        w.pop_back();
      } else {
        w.push_back(c);
      }
      if (w.size() > radius) continue;
      Vertex y(w);
      if (dist.emplace(y, dist.at(x) + 1).second) queue.push_back(y);
    }
  }
  return SIZE_MAX;
}

// All reduced words of length <= radius over the colors.
inline std::vector<Vertex> ball(std::size_t radius, const std::vector<Color>& colors) {
  std::vector<Vertex> out{Vertex::base()};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].length() == radius) continue;
    for (Color c : colors) {
      if (!out[i].is_base() && out[i].last() == c) continue;
      Word w = out[i].word();
      w.push_back(c);
      out.emplace_back(w);
    }
  }
  return out;
}

struct BruteType {
  // 0 elliptic, 1 inversion, 2 hyperbolic.
  int kind = 0;
  std::size_t length = 0;
};

// Minimal displacement over a ball, with inversions detected as edges
// swapped by g.
inline BruteType brute_classify(const TreeAutomorphism& g, std::size_t radius, const std::vector<Color>& colors) {
  std::size_t best = SIZE_MAX;
  bool swaps = false;
  for (const Vertex& v : ball(radius, colors)) {
    const Vertex gv = eval(g, v);
    const std::size_t d = distance(v, gv);
    best = std::min(best, d);
    if (d == 1 && eval(g, gv) == v) swaps = true;
  }
  if (best == 0) return {0, 0};
  if (best == 1 && swaps) return {1, 0};
  return {2, best};
}

// Prefix of depth `depth` of g(xi), from g applied to a long vertex on the
// ray of xi.
inline Word image_prefix(const TreeAutomorphism& g, const Word& ray, std::size_t depth) {
  const Vertex image = eval(g, Vertex(ray));
  Word w = image.word();
  w.resize(std::min(depth, w.size()));
  return w;
}

inline Permutation random_table(std::size_t degree, std::mt19937_64& rng) {
  std::vector<Color> images(degree);
  for (std::size_t i = 0; i < degree; ++i) images[i] = static_cast<Color>(i);
  std::shuffle(images.begin(), images.end(), rng);
  return Permutation::from_images(images);
}

}  // namespace oracle
