#pragma once

// Named group configurations.

#include <optional>
#include <string>
#include <vector>

#include "arboreal/free_product.hpp"
#include "arboreal/perm_group.hpp"
#include "arboreal/portrait.hpp"

namespace arboreal {

// Either a pair F <= F' acting on a regular tree, or a free product of two
// finite groups acting on its Bass-Serre tree.
struct GroupSetup {
  std::string name;
  std::optional<PermGroupSpec> f;
  std::optional<PermGroupSpec> fp;
  std::optional<WreathEmbedding> wreath;
  std::optional<FreeProductTree> free_product;

  bool is_free_product() const { return free_product.has_value(); }
  Alphabet alphabet() const;
};

std::vector<std::string> preset_names();
// Throws PreconditionError for an unknown name.
GroupSetup preset(const std::string& name);

// Default generators of U(F): the constant portrait of the first
// non-identity element of F moving v0 along color 0, and the identity
// portraits moving v0 to 01 and to 02. The last two are translations with
// distinct axes, so the group is of general type.
std::vector<TreeAutomorphism> default_generators(const PermGroupSpec& f);

}  // namespace arboreal
