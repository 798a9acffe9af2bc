#include "arboreal/presets.hpp"

#include "arboreal/error.hpp"

namespace arboreal {

Alphabet GroupSetup::alphabet() const {
  if (!f) throw PreconditionError("a free product setup has no color set");
  return f->domain();
}

std::vector<std::string> preset_names() {
  return {"g-alt3-sym3",  "g-cycle5-alt5",    "wreath-z2-z2", "wreath-z3-z2",
          "wreath-z2-z3", "g-z-translations", "g-alt3-alt3",  "psl2z"};
}

GroupSetup preset(const std::string& name) {
  GroupSetup s;
  s.name = name;
  auto wreath = [&](int gamma, int shift) {
    WreathEmbedding w = wreath_embedding_spec(FiniteGroup::cyclic(gamma), FiniteGroup::cyclic(shift));
    s.f = w.base_group;
    s.fp = w.wreath;
    s.wreath = std::move(w);
  };
  if (name == "g-alt3-sym3") {
    s.f = PermGroupSpec::alternating(3);
    s.fp = PermGroupSpec::symmetric(3);
  } else if (name == "g-cycle5-alt5") {
    s.f = PermGroupSpec::cyclic_rotation(5);
    s.fp = PermGroupSpec::alternating(5);
  } else if (name == "wreath-z2-z2") {
    wreath(2, 2);
  } else if (name == "wreath-z3-z2") {
    wreath(3, 2);
  } else if (name == "wreath-z2-z3") {
    wreath(2, 3);
  } else if (name == "g-z-translations") {
    s.f = PermGroupSpec::z_translations();
    s.fp = PermGroupSpec::z_finitary_affine();
  } else if (name == "g-alt3-alt3") {
    s.f = PermGroupSpec::alternating(3);
    s.fp = PermGroupSpec::alternating(3);
  } else if (name == "psl2z") {
    s.free_product = FreeProductTree::psl2z();
  } else {
    throw PreconditionError("unknown preset: " + name);
  }
  return s;
}

std::vector<TreeAutomorphism> default_generators(const PermGroupSpec& f) {
  const Alphabet alphabet = f.domain();
  Permutation first = Permutation::translation(1);
  if (f.is_finite()) {
    if (f.order() < 2) throw PreconditionError("F is trivial");
    first = f.elements()[1];
  } else if (!f.contains(first)) {
    throw PreconditionError("F contains no translation by 1");
  }
  const Permutation id = Permutation::identity(alphabet);
  return {from_constant(first, Vertex(Word{0})), from_constant(id, Vertex(Word{0, 1})),
          from_constant(id, Vertex(Word{0, 2}))};
}

}  // namespace arboreal
