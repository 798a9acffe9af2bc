#include "arboreal/end_point.hpp"

#include <algorithm>

#include "arboreal/dynamics.hpp"
#include "arboreal/error.hpp"

namespace arboreal {

namespace {

Word primitive_root(const Word& period) {
  const std::size_t n = period.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool repeats = true;
    for (std::size_t i = p; i < n && repeats; ++i) repeats = period[i] == period[i - p];
    if (repeats) return Word(period.begin(), period.begin() + static_cast<std::ptrdiff_t>(p));
  }
  return period;
}

EndPoint::Periodic normalize(Word prefix, Word period) {
  if (period.empty()) throw InvariantError("periodic end needs a nonempty period");
  period = primitive_root(period);
  while (!prefix.empty() && prefix.back() == period.back()) {
    prefix.pop_back();
    std::rotate(period.rbegin(), period.rbegin() + 1, period.rend());
  }
  return {std::move(prefix), std::move(period)};
}

}  // namespace

EndPoint EndPoint::periodic(Word prefix, Word period) {
  if (period.empty()) throw InvariantError("periodic end needs a nonempty period");
  if (!is_reduced(prefix) || !is_reduced(period) || period.size() < 2 || period.front() == period.back() ||
      (!prefix.empty() && prefix.back() == period.front())) {
    throw InvariantError("periodic end is not a reduced ray: " + word_to_string(prefix) + "(" +
                         word_to_string(period) + ")");
  }
  return EndPoint(normalize(std::move(prefix), std::move(period)));
}

EndPoint EndPoint::axis(const TreeAutomorphism& g, int sign) {
  if (sign != 1 && sign != -1) throw PreconditionError("axis end sign must be +1 or -1");
  const IsometryType type = classify_isometry(g);
  const auto* h = std::get_if<Hyperbolic>(&type);
  if (!h) throw PreconditionError("axis end of a non-hyperbolic element");
  return EndPoint(Axis{std::make_shared<const TreeAutomorphism>(g), sign, h->length, h->axis_point});
}

EndPoint EndPoint::parse(const std::string& text) {
  const auto open = text.find('(');
  if (open == std::string::npos || text.back() != ')') {
    throw PreconditionError("periodic end must look like prefix(period): " + text);
  }
  const std::string head = text.substr(0, open);
  return periodic(head.empty() ? Word{} : parse_word(head), parse_word(text.substr(open + 1, text.size() - open - 2)));
}

Word EndPoint::prefix(std::size_t depth) const {
  Word out;
  if (const auto* p = std::get_if<Periodic>(&rep_)) {
    for (std::size_t i = 0; i < depth; ++i) {
      out.push_back(i < p->prefix.size() ? p->prefix[i] : p->period[(i - p->prefix.size()) % p->period.size()]);
    }
    return out;
  }
  const Axis& a = std::get<Axis>(rep_);
  // g^n(w) lies on the ray from v0 once n*length >= depth + |w|.
  const std::size_t w = a.axis_point.length();
  const std::size_t n = (depth + 2 * w) / a.length + 1;
  const TreeAutomorphism step = a.sign > 0 ? *a.g : invert(*a.g);
  Vertex x = a.axis_point;
  for (std::size_t i = 0; i < n; ++i) x = evaluate(step, x);
  if (x.length() < depth) throw InvariantError("axis ray prefix shorter than requested");
  out.assign(x.word().begin(), x.word().begin() + static_cast<std::ptrdiff_t>(depth));
  return out;
}

std::size_t EndPoint::data_length() const {
  if (const auto* p = std::get_if<Periodic>(&rep_)) return p->prefix.size() + p->period.size();
  return 0;
}

std::string EndPoint::to_string() const {
  if (const auto* p = std::get_if<Periodic>(&rep_)) {
    return (p->prefix.empty() ? std::string() : word_to_string(p->prefix)) + "(" + word_to_string(p->period) + ")";
  }
  const Axis& a = std::get<Axis>(rep_);
  return std::string(a.sign > 0 ? "attracting" : "repelling") + " end of [" + arboreal::to_string(*a.g) + "]";
}

std::string to_string(EqualityMode mode) { return mode == EqualityMode::Exact ? "exact" : "depth-bounded"; }

EndComparison compare_ends(const EndPoint& a, const EndPoint& b, std::size_t depth) {
  if (a.is_periodic() && b.is_periodic()) {
    return {a.periodic_data() == b.periodic_data(), EqualityMode::Exact, 0};
  }
  const bool same = a.prefix(depth) == b.prefix(depth);
  return {same, same ? EqualityMode::DepthBounded : EqualityMode::Exact, depth};
}

EndPoint apply(const TreeAutomorphism& g, const EndPoint& xi) {
  if (!xi.is_periodic()) {
    const auto& a = xi.axis_data();
    return EndPoint::axis(conjugate(g, *a.g), a.sign);
  }
  const auto& [prefix, period] = xi.periodic_data();
  auto letter = [&](std::size_t i) {
    return i < prefix.size() ? prefix[i] : period[(i - prefix.size()) % period.size()];
  };
  // Walk the ray through the core to its frontier edge (x, c).
  Vertex x;
  std::size_t i = 0;
  for (;; ++i) {
    Word next = x.word();
    next.push_back(letter(i));
    Vertex y(std::move(next));
    if (!g.in_core(y)) break;
    x = std::move(y);
  }
  const Permutation& f = g.branch_constant(x, letter(i));
  // Remaining ray from index i, split into a finite part and a period.
  Word rest;
  Word rest_period;
  if (i < prefix.size()) {
    rest.assign(prefix.begin() + static_cast<std::ptrdiff_t>(i), prefix.end());
    rest_period = period;
  } else {
    const std::size_t offset = (i - prefix.size()) % period.size();
    rest_period.assign(period.begin() + static_cast<std::ptrdiff_t>(offset), period.end());
    rest_period.insert(rest_period.end(), period.begin(), period.begin() + static_cast<std::ptrdiff_t>(offset));
  }
  for (Color& c : rest) c = f(c);
  for (Color& c : rest_period) c = f(c);
  // g(ray) = reduce(g(x) . f(rest) . f(period)^inf); cancel against g(x).
  Word stack = evaluate(g, x).word();
  Word stream = rest;
  while (stream.size() < stack.size() + rest.size() + 1) {
    stream.insert(stream.end(), rest_period.begin(), rest_period.end());
  }
  std::size_t k = 0;
  while (!stack.empty() && stack.back() == stream[k]) {
    stack.pop_back();
    ++k;
  }
  stack.insert(stack.end(), stream.begin() + static_cast<std::ptrdiff_t>(k), stream.end());
  return EndPoint::periodic(std::move(stack), std::move(rest_period));
}

bool half_tree_contains(const HalfTree& h, const EndPoint& xi) {
  return half_tree_contains_ray(h, xi.prefix(ray_depth_needed(h)));
}

}  // namespace arboreal
