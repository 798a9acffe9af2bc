// Command-line front end: certify, classify, orbit, witness.
//
// Exit status: 0 when the requested object is valid, 1 when a pipeline
// stage fails, 2 for unparseable input.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "arboreal/certificate.hpp"
#include "arboreal/dynamics.hpp"
#include "arboreal/obstruction.hpp"
#include "arboreal/piecewise.hpp"

namespace {

using namespace arboreal;

constexpr int kValid = 0;
constexpr int kInvalid = 1;
constexpr int kParseError = 2;

struct Options {
  std::string preset;
  std::string config_path;
  std::size_t word_length = 0;
  std::size_t depth = 0;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string out;
  std::string element = "identity";
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--preset", o.preset, "Named group configuration");
  cmd->add_option("--config", o.config_path, "JSON config file");
  cmd->add_option("--word-length", o.word_length, "Maximal word length")->check(CLI::PositiveNumber);
  cmd->add_option("--depth", o.depth, "Comparison depth for ends")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "Seed for random elements");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

RunConfig make_config(const Options& o, const CLI::App& cmd) {
  if (o.preset.empty() == o.config_path.empty()) throw ConfigError("give exactly one of --preset and --config");
  RunConfig c;
  if (!o.config_path.empty()) {
    c = parse_config_text(read_file(o.config_path));
  } else {
    Json doc{{"preset", o.preset}};
    c = parse_config(doc);
  }
  if (cmd.count("--word-length")) c.word_length = o.word_length;
  if (cmd.count("--depth")) c.depth = o.depth;
  if (cmd.count("--seed")) c.seed = o.seed;
  return c;
}

int run_certify(const Options& o, const CLI::App& cmd) {
  const RunConfig config = make_config(o, cmd);
  const Certificate cert = build_certificate(config);
  std::cout << cert.report();
  const std::string path = o.out.empty() ? "arboreal-cert.json" : o.out;
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot write " + path);
  file << cert.serialize();
  std::cout << "certificate written to " << path << "\n";
  return cert.valid() ? kValid : kInvalid;
}

TreeAutomorphism parse_element(const std::string& text, const GroupSetup& setup, const RunConfig& config) {
  const Alphabet alphabet = setup.alphabet();
  if (text == "identity") return TreeAutomorphism::identity(alphabet);
  if (text == "witness") return thm_c_witness(*setup.f, *setup.fp, HalfTree{config.edge});
  if (text == "random") return random_element(GroupClass::prescribed(*setup.f, *setup.fp), 2, config.seed);
  if (text.rfind("const:", 0) == 0) {
    // const:<images>:<base>, images as a digit string or a JSON array.
    const auto colon = text.find(':', 6);
    if (colon == std::string::npos) throw ConfigError("expected const:<images>:<base>");
    const std::string images = text.substr(6, colon - 6);
    Json doc;
    if (!images.empty() && images.front() == '[') {
      doc = Json::parse(images);
    } else {
      doc = Json::array();
      for (char ch : images) {
        if (ch < '0' || ch > '9') throw ConfigError("bad image digit in " + images);
        doc.push_back(ch - '0');
      }
    }
    return from_constant(permutation_from_json(doc, alphabet), Vertex::parse(text.substr(colon + 1)));
  }
  if (!text.empty() && text.front() == '@') return automorphism_from_json(Json::parse(read_file(text.substr(1))));
  if (text.rfind("word:", 0) == 0) {
    // word:g1 g2^-1, a product of the default generators, leftmost last.
    const std::vector<TreeAutomorphism> gens = default_generators(*setup.f);
    TreeAutomorphism g = TreeAutomorphism::identity(alphabet);
    std::istringstream tokens(text.substr(5));
    std::string token;
    while (tokens >> token) {
      const bool inverse = token.size() > 3 && token.compare(token.size() - 3, 3, "^-1") == 0;
      const std::string index = token.substr(1, token.size() - 1 - (inverse ? 3 : 0));
      if (token.front() != 'g' || index.empty() || index.find_first_not_of("0123456789") != std::string::npos) {
        throw ConfigError("bad generator letter: " + token);
      }
      const std::size_t i = std::stoul(index);
      if (i == 0 || i > gens.size()) throw ConfigError("generator index out of range: " + token);
      g = compose(g, inverse ? invert(gens[i - 1]) : gens[i - 1]);
    }
    return g;
  }
  throw ConfigError("unknown element description: " + text);
}

int run_classify(const Options& o, const CLI::App& cmd) {
  const RunConfig config = make_config(o, cmd);
  const GroupSetup setup = resolve_group(config);
  if (setup.is_free_product()) throw ConfigError("classify works on regular-tree presets");
  TreeAutomorphism g = TreeAutomorphism::identity(setup.alphabet());
  try {
    g = parse_element(o.element, setup, config);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid element JSON: ") + e.what());
  } catch (const InvariantError& e) {
    throw ConfigError(std::string("invalid element: ") + e.what());
  }
  const IsometryType type = classify_isometry(g);
  const bool in_u = membership(g, GroupClass::universal(*setup.f));
  const bool in_g = is_subgroup(*setup.f, *setup.fp) && membership(g, GroupClass::prescribed(*setup.f, *setup.fp));
  const bool in_star = in_g && membership(g, GroupClass::prescribed_star(*setup.f, *setup.fp));
  std::string short_type;
  if (const auto* e = std::get_if<Elliptic>(&type)) {
    short_type = "Elliptic at " + e->fixed_vertex.to_string();
  } else if (std::holds_alternative<Inversion>(type)) {
    short_type = "Inversion";
  } else {
    short_type = "Hyperbolic, length " + std::to_string(translation_length(type));
  }
  std::string classes;
  if (in_u && in_g && in_star) {
    classes = "member of all classes";
  } else if (in_g && !in_u) {
    classes = std::string("in G(F,F')") + (in_star ? " and G(F,F')*" : "") + ", not in U(F)";
  } else if (!in_g) {
    classes = "not in G(F,F')";
  } else {
    classes = "in U(F) and G(F,F'), not in G(F,F')*";
  }
  std::cout << "element: " << to_string(g) << "\n"
            << "type: " << describe(type) << "\n"
            << "translation length: " << translation_length(type) << "\n"
            << "U(F): " << (in_u ? "yes" : "no") << "\n"
            << "G(F,F'): " << (in_g ? "yes" : "no") << "\n"
            << "G(F,F')*: " << (in_star ? "yes" : "no") << "\n"
            << "summary: " << short_type << "; " << classes << "\n";
  return kValid;
}

int run_orbit(const Options& o, const CLI::App& cmd) {
  const RunConfig config = make_config(o, cmd);
  const GroupSetup setup = resolve_group(config);
  if (setup.is_free_product()) throw ConfigError("orbit works on regular-tree presets");
  std::vector<TreeAutomorphism> gens = default_generators(*setup.f);
  try {
    const auto [a, b] = disjoint_pair(*setup.f, *setup.fp, config.edge);
    gens.push_back(a);
    gens.push_back(b);
  } catch (const PreconditionError& e) {
    std::cout << "note: no disjoint pair (" << e.what() << "); using the default generators only\n";
  }
  const OrbitTruncation orbit = orbit_truncate(gens, EndPoint::parse(config.xi), config.word_length, config.depth);
  std::cout << "xi = " << orbit.base_end.to_string() << ", word length " << orbit.word_length << ", depth "
            << orbit.depth << ", " << orbit.points.size() << " points\n";
  for (const auto& w : orbit.warnings) std::cout << "warning: " << w << "\n";
  for (const auto& p : orbit.points) {
    std::cout << word_label(p.word) << "\t" << word_to_string(p.prefix) << "\t" << p.end.to_string() << "\n";
  }
  return kValid;
}

int run_witness(const Options& o, const CLI::App& cmd) {
  const RunConfig config = make_config(o, cmd);
  const GroupSetup setup = resolve_group(config);
  if (setup.is_free_product()) {
    const FreeProductSpace space{*setup.free_product};
    const FPVertex v{{}, Factor::B};
    const GroupWord g = space.tree.letter(Factor::B, 1);
    const auto around = space.tree.neighbors(v);
    const auto gamma = thm_b_witness(space, g, v, around[0], space.tree.act(g, around[0]));
    const PwValidation valid = pw_validate(space, gamma);
    std::cout << "piecewise element at " << space.tree.vertex_to_string(v) << " with g = "
              << space.tree.word_to_string(g) << "\n";
    for (const auto& [edge, piece] : gamma.pieces) {
      std::cout << "  component " << space.tree.vertex_to_string(edge.first) << " -> "
                << space.tree.vertex_to_string(edge.second) << ": " << space.tree.word_to_string(piece) << "\n";
    }
    std::cout << "valid: " << (valid.valid ? "yes" : "no " + valid.diagnostic) << "\n";
    return valid.valid ? kValid : kInvalid;
  }
  try {
    const HalfTree h{config.edge};
    const TreeAutomorphism g = thm_c_witness(*setup.f, *setup.fp, h);
    const bool fixes = fixes_half_tree_pointwise(g, h);
    const bool member = membership(g, GroupClass::prescribed(*setup.f, *setup.fp));
    std::cout << "witness: " << to_string(g) << "\n"
              << "fixes half-tree " << h.edge.tail.to_string() << " -> " << h.edge.head().to_string() << ": "
              << (fixes ? "yes" : "no") << "\n"
              << "non-identity: " << (g.is_identity() ? "no" : "yes") << "\n"
              << "in G(F,F'): " << (member ? "yes" : "no") << "\n";
    return fixes && member && !g.is_identity() ? kValid : kInvalid;
  } catch (const PreconditionError& e) {
    if (dynamic_cast<const ConfigError*>(&e)) throw;
    std::cout << "no witness: " << e.what() << "\n";
    return kInvalid;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Automorphism groups of colored trees: certificates, classification, orbits, witnesses"};
  app.require_subcommand(1);
  Options certify_opts, classify_opts, orbit_opts, witness_opts;

  auto* certify = app.add_subcommand("certify", "Run the full pipeline and write a certificate");
  add_common(certify, certify_opts);
  certify->add_option("--out", certify_opts.out, "Certificate path (default arboreal-cert.json)");

  auto* classify = app.add_subcommand("classify", "Classify one element");
  add_common(classify, classify_opts);
  classify->add_option("--element", classify_opts.element,
                       "identity | witness | random | const:<images>:<base> | word:<g1 g2^-1 ...> | @file.json");

  auto* orbit = app.add_subcommand("orbit", "Truncated orbit of the base end");
  add_common(orbit, orbit_opts);

  auto* witness = app.add_subcommand("witness", "Build the half-tree fixator witness");
  add_common(witness, witness_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParseError;
  }

  try {
    if (*certify) return run_certify(certify_opts, *certify);
    if (*classify) return run_classify(classify_opts, *classify);
    if (*orbit) return run_orbit(orbit_opts, *orbit);
    return run_witness(witness_opts, *witness);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
}
