#include "arboreal/certificate.hpp"

#include <functional>
#include <sstream>

#include "arboreal/dynamics.hpp"
#include "arboreal/obstruction.hpp"
#include "arboreal/piecewise.hpp"

namespace arboreal {

namespace {

constexpr std::size_t kMaxPingPongPower = 4;

Json word_to_json(const Word& w) { return Json(w); }

Word word_from_json(const Json& doc) {
  if (!doc.is_array()) throw ConfigError("expected a word as an array of colors");
  Word w;
  for (const auto& c : doc) {
    if (!c.is_number_integer()) throw ConfigError("word letters must be integers");
    w.push_back(c.get<Color>());
  }
  return w;
}

Json edge_to_json(const DirectedEdge& e) { return Json{{"tail", e.tail.to_string()}, {"color", e.color}}; }

std::size_t positive(const Json& doc, const char* key) {
  const Json& v = doc.at(key);
  if (!v.is_number_integer() || v.get<long long>() <= 0) {
    throw ConfigError(std::string(key) + " must be a positive integer");
  }
  return v.get<std::size_t>();
}

Alphabet parse_omega(const Json& doc) {
  if (doc.is_string() && doc.get<std::string>() == "integers") return Alphabet::integers();
  if (doc.is_number_integer()) return Alphabet::finite(doc.get<Color>());
  throw ConfigError("omega must be a degree or \"integers\"");
}

std::string group_label(const PermGroupSpec& g) {
  return g.is_finite() ? g.name() + " (order " + std::to_string(g.order()) + ")" : g.name();
}

class StageRunner {
 public:
  explicit StageRunner(Json& checks) : checks_(checks) {}

  // fn returns (passed, detail); an exception counts as a failure.
  void run(const std::string& name, const std::function<std::pair<bool, std::string>()>& fn) {
    if (!failing_.empty()) return;
    bool passed = false;
    std::string detail;
    try {
      std::tie(passed, detail) = fn();
    } catch (const std::exception& e) {
      detail = e.what();
    }
    checks_.push_back(Json{{"name", name}, {"passed", passed}, {"detail", detail}});
    if (!passed) failing_ = name;
  }

  const std::string& failing() const { return failing_; }

 private:
  Json& checks_;
  std::string failing_;
};

void regular_pipeline(const RunConfig& config, const GroupSetup& setup, Json& doc, StageRunner& stages,
                      Json& caveats) {
  const PermGroupSpec& f = *setup.f;
  const PermGroupSpec& fp = *setup.fp;
  const Alphabet alphabet = f.domain();

  Json group{{"class", "G(F, F')"},
             {"alphabet", alphabet.describe()},
             {"F", group_label(f)},
             {"F_prime", group_label(fp)},
             {"F_acts_freely", check_freeness(f)},
             {"orbits_of_F", to_string(check_orbit_preservation(f, fp))}};
  try {
    const PermGroupSpec stab = point_stabilizer(fp, config.edge.color);
    group["stabilizer"] = group_label(stab);
    group["stabilizer_amenability"] = stab.amenability_reason();
  } catch (const std::exception& e) {
    group["stabilizer"] = std::string("unavailable: ") + e.what();
  }
  if (setup.wreath) {
    group["wreath"] = Json{{"gamma", setup.wreath->gamma.order()},
                           {"shift_group", setup.wreath->shift_group.order()},
                           {"points", setup.wreath->point_count()}};
  }
  doc["group"] = group;
  caveats.push_back("amenability of the end stabilizer is an annotation (" +
                    group.value("stabilizer_amenability", std::string("unknown")) + "), not computed");

  std::vector<TreeAutomorphism> gens;
  std::optional<GeneralTypeWitness> general;
  std::optional<TreeAutomorphism> a;
  std::optional<TreeAutomorphism> b;
  std::optional<OrbitTruncation> orbit;
  Json general_json{{"found", false}, {"search_length", config.word_length}};

  stages.run("general_type", [&]() -> std::pair<bool, std::string> {
    gens = default_generators(f);
    Json gj = Json::array();
    for (const auto& g : gens) gj.push_back(automorphism_to_json(g));
    doc["generators"] = gj;
    general = general_type_witness(gens, config.word_length);
    if (!general) return {false, "no witness among products of length <= " + std::to_string(config.word_length)};
    general_json["found"] = true;
    general_json["word1"] = word_label(general->word1);
    general_json["word2"] = word_label(general->word2);
    general_json["end_depth"] = general->depth;
    caveats.push_back("general type: four ends differ within their first " + std::to_string(general->depth) +
                      " colors");
    return {true, word_label(general->word1) + " and " + word_label(general->word2) +
                      " are hyperbolic with four distinct ends"};
  });
  stages.run("ping_pong", [&]() -> std::pair<bool, std::string> {
    for (std::size_t p = 1; p <= kMaxPingPongPower; ++p) {
      const auto cert = ping_pong_certificate(general->g1, general->g2, p);
      if (!cert) continue;
      Json inclusions(cert->inclusions);
      general_json["ping_pong"] = Json{{"power", p}, {"inclusions", inclusions}};
      return {true, "disjoint half-trees found at power " + std::to_string(p)};
    }
    return {false, "no ping-pong configuration up to power " + std::to_string(kMaxPingPongPower)};
  });
  doc["general_type"] = general_json;

  stages.run("thm_c_witness", [&]() -> std::pair<bool, std::string> {
    auto pair = disjoint_pair(f, fp, config.edge);
    a = pair.first;
    b = pair.second;
    doc["witness"] = Json{{"edge", edge_to_json(config.edge)},
                          {"a", automorphism_to_json(*a)},
                          {"b", automorphism_to_json(*b)}};
    const HalfTree t1{config.edge};
    const HalfTree t2 = t1.complement();
    const GroupClass cls = GroupClass::prescribed(f, fp);
    const GroupClass universal = GroupClass::universal(f);
    if (a->is_identity() || b->is_identity()) return {false, "witness is the identity"};
    if (!membership(*a, cls) || !membership(*b, cls)) return {false, "witness is not in G(F, F')"};
    if (membership(*a, universal) || membership(*b, universal)) return {false, "witness lies in U(F)"};
    if (!fixes_half_tree_pointwise(*a, t2) || !fixes_half_tree_pointwise(*b, t1)) {
      return {false, "witness does not fix its half-tree"};
    }
    return {true, "a fixes the half-tree behind the edge, b the one in front; both in G(F, F') but not U(F)"};
  });
  stages.run("commutation", [&]() -> std::pair<bool, std::string> {
    const bool same = compose(*a, *b) == compose(*b, *a);
    return {same, same ? "ab = ba in canonical form" : "ab != ba"};
  });
  stages.run("orbit", [&]() -> std::pair<bool, std::string> {
    std::vector<TreeAutomorphism> orbit_gens = gens;
    orbit_gens.push_back(*a);
    orbit_gens.push_back(*b);
    orbit = orbit_truncate(orbit_gens, EndPoint::parse(config.xi), config.word_length, config.depth);
    Json warnings(orbit->warnings);
    doc["orbit"] = Json{{"xi", orbit->base_end.to_string()},
                        {"generators", "generators followed by a and b"},
                        {"word_length", orbit->word_length},
                        {"depth", orbit->depth},
                        {"heuristic_bound", orbit->heuristic_bound},
                        {"points", orbit->points.size()},
                        {"warnings", warnings}};
    for (const auto& w : orbit->warnings) caveats.push_back(w);
    caveats.push_back("orbit points are identified by their first " + std::to_string(config.depth) + " colors");
    return {true, std::to_string(orbit->points.size()) + " points"};
  });
  stages.run("disjoint_support", [&]() -> std::pair<bool, std::string> {
    const bool ok = disjoint_support_check(*a, *b, *orbit);
    return {ok, ok ? "no orbit point is moved by both a and b" : "some orbit point is moved by both a and b"};
  });
  stages.run("annihilation", [&]() -> std::pair<bool, std::string> {
    const AnnihilationReport report = operator_annihilation_check(*a, *b, *orbit);
    return {report.all_pass(), std::to_string(report.passed.size()) + " of " + std::to_string(orbit->points.size()) +
                                   " orbit points satisfy the identity; " + report.caveat};
  });
}

void free_product_pipeline(const GroupSetup& setup, Json& doc, StageRunner& stages) {
  const FreeProductSpace space{*setup.free_product};
  const FreeProductTree& tree = space.tree;
  doc["group"] = Json{{"class", "Pw(A * B)"}, {"free_product", tree.describe()}};
  stages.run("thm_b_witness", [&]() -> std::pair<bool, std::string> {
    // v is the B-vertex of the base edge; g generates B.
    const FPVertex v{{}, Factor::B};
    const GroupWord g = tree.letter(Factor::B, 1);
    const auto around = tree.neighbors(v);
    if (around.size() < 3) return {false, "the B-vertex has degree < 3"};
    const FPVertex w1 = around[0];
    const FPVertex w2 = tree.act(g, w1);
    FPVertex third = around[0];
    for (const auto& w : around) {
      if (w != w1 && w != w2) third = w;
    }
    const auto gamma = thm_b_witness(space, g, v, w1, w2);
    doc["witness"] = Json{{"vertex", tree.vertex_to_string(v)},
                          {"g", tree.word_to_string(g)},
                          {"e1", tree.vertex_to_string(w1)},
                          {"e2", tree.vertex_to_string(w2)},
                          {"fixed_half_tree", tree.vertex_to_string(v) + " -> " + tree.vertex_to_string(third)}};
    const PwValidation valid = pw_validate(space, gamma);
    if (!valid.valid) return {false, valid.diagnostic};
    if (pw_is_identity(space, gamma)) return {false, "witness is the identity"};
    if (!pw_fixes_half_tree(space, gamma, v, third)) return {false, "witness does not fix the third branch"};
    const auto back = pw_compose(space, gamma, pw_invert(space, gamma));
    if (!pw_is_identity(space, back)) return {false, "gamma composed with its inverse is not the identity"};
    return {true, "valid, non-trivial, fixes the third branch at v"};
  });
  stages.run("degree_precondition", [&]() -> std::pair<bool, std::string> {
    const FPVertex v = tree.root();
    const auto around = tree.neighbors(v);
    if (around.size() >= 3) return {true, "A-vertices have degree >= 3"};
    try {
      thm_b_witness(space, tree.letter(Factor::A, 1), v, around[0], around[1]);
    } catch (const PreconditionError& e) {
      return {true, std::string("rejected at a degree-2 vertex: ") + e.what()};
    }
    return {false, "a degree-2 vertex was accepted"};
  });
}

}  // namespace

Json permutation_to_json(const Permutation& p) {
  if (p.is_table()) return Json(p.table().images);
  Json finitary = Json::array();
  for (const auto& [x, y] : p.affine_part().finitary) finitary.push_back(Json::array({x, y}));
  return Json{{"shift", p.affine_part().shift}, {"finitary", finitary}};
}

Permutation permutation_from_json(const Json& doc, const Alphabet& alphabet) {
  try {
    if (alphabet.is_finite()) {
      auto images = doc.get<std::vector<Color>>();
      if (static_cast<Color>(images.size()) != alphabet.degree()) throw ConfigError("permutation has wrong degree");
      return Permutation::from_images(std::move(images));
    }
    std::map<Color, Color> finitary;
    for (const auto& pair : doc.at("finitary")) finitary.emplace(pair.at(0).get<Color>(), pair.at(1).get<Color>());
    return Permutation::affine(doc.at("shift").get<Color>(), std::move(finitary));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed permutation: ") + e.what());
  } catch (const InvariantError& e) {
    throw ConfigError(std::string("invalid permutation: ") + e.what());
  }
}

Json automorphism_to_json(const TreeAutomorphism& g) {
  const Alphabet& alphabet = g.alphabet();
  Json core = Json::array();
  for (const auto& [v, p] : g.core()) core.push_back(Json::array({word_to_json(v.word()), permutation_to_json(p)}));
  Json branches = Json::array();
  for (const auto& [e, f] : g.branches()) {
    branches.push_back(Json::array({word_to_json(e.tail.word()), e.color, permutation_to_json(f)}));
  }
  Json doc{{"alphabet", alphabet.is_finite() ? Json(alphabet.degree()) : Json("integers")},
           {"base", word_to_json(g.base_image().word())},
           {"core", core},
           {"branches", branches}};
  if (!alphabet.is_finite()) {
    Json fallbacks = Json::array();
    for (const auto& [u, f] : g.fallbacks()) {
      fallbacks.push_back(Json::array({word_to_json(u.word()), permutation_to_json(f)}));
    }
    doc["fallbacks"] = fallbacks;
  }
  return doc;
}

TreeAutomorphism automorphism_from_json(const Json& doc) {
  try {
    const Alphabet alphabet = parse_omega(doc.at("alphabet"));
    std::map<Vertex, Permutation> core;
    for (const auto& entry : doc.at("core")) {
      core.emplace(Vertex(word_from_json(entry.at(0))), permutation_from_json(entry.at(1), alphabet));
    }
    std::map<DirectedEdge, Permutation> branches;
    for (const auto& entry : doc.at("branches")) {
      branches.emplace(DirectedEdge{Vertex(word_from_json(entry.at(0))), entry.at(1).get<Color>()},
                       permutation_from_json(entry.at(2), alphabet));
    }
    std::map<Vertex, Permutation> fallbacks;
    if (doc.contains("fallbacks")) {
      for (const auto& entry : doc.at("fallbacks")) {
        fallbacks.emplace(Vertex(word_from_json(entry.at(0))), permutation_from_json(entry.at(1), alphabet));
      }
    }
    return canonicalize(TreeAutomorphism(alphabet, Vertex(word_from_json(doc.at("base"))), std::move(core),
                                         std::move(branches), std::move(fallbacks)));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed automorphism: ") + e.what());
  } catch (const InvariantError& e) {
    throw ConfigError(std::string("invalid automorphism: ") + e.what());
  }
}

PermGroupSpec parse_group_spec(const Json& spec, const Alphabet& alphabet) {
  if (spec.is_object() && spec.contains("generators")) {
    if (!alphabet.is_finite()) throw ConfigError("generated groups need a finite color set");
    std::vector<Permutation> gens;
    for (const auto& g : spec.at("generators")) gens.push_back(permutation_from_json(g, alphabet));
    return PermGroupSpec::generated(alphabet.degree(), gens, spec.value("name", std::string("custom")));
  }
  if (!spec.is_string()) throw ConfigError("group spec must be a name or {\"generators\": [...]}");
  const std::string name = spec.get<std::string>();
  if (alphabet.is_finite()) {
    const Color d = alphabet.degree();
    if (name == "alt") return PermGroupSpec::alternating(d);
    if (name == "sym") return PermGroupSpec::symmetric(d);
    if (name == "cycle") return PermGroupSpec::cyclic_rotation(d);
    if (name == "trivial") return PermGroupSpec::trivial(d);
  } else {
    if (name == "translations") return PermGroupSpec::z_translations();
    if (name == "finitary-affine") return PermGroupSpec::z_finitary_affine();
  }
  throw ConfigError("unknown group spec \"" + name + "\" on " + alphabet.describe());
}

RunConfig parse_config(const Json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be an object");
  static const std::set<std::string> known{"preset", "group", "word_length", "depth", "seed", "xi", "edge"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.count(key)) throw ConfigError("unknown config key: " + key);
  }
  RunConfig c;
  try {
    if (doc.contains("preset") == doc.contains("group")) {
      throw ConfigError("config needs exactly one of \"preset\" and \"group\"");
    }
    if (doc.contains("preset")) {
      c.preset = doc.at("preset").get<std::string>();
    } else {
      c.explicit_group = doc.at("group");
    }
    if (doc.contains("word_length")) c.word_length = positive(doc, "word_length");
    if (doc.contains("depth")) c.depth = positive(doc, "depth");
    if (doc.contains("seed")) {
      if (!doc.at("seed").is_number_unsigned()) throw ConfigError("seed must be a non-negative integer");
      c.seed = doc.at("seed").get<std::uint64_t>();
    }
    if (doc.contains("xi")) c.xi = doc.at("xi").get<std::string>();
    if (doc.contains("edge")) {
      const Json& e = doc.at("edge");
      c.edge = DirectedEdge{Vertex::parse(e.at("tail").get<std::string>()), e.at("color").get<Color>()};
    }
    EndPoint::parse(c.xi);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  } catch (const InvariantError& e) {
    throw ConfigError(std::string("invalid config value: ") + e.what());
  } catch (const ConfigError&) {
    throw;
  } catch (const PreconditionError& e) {
    throw ConfigError(std::string("invalid config value: ") + e.what());
  }
  resolve_group(c);
  return c;
}

RunConfig parse_config_text(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(doc);
}

Json config_to_json(const RunConfig& c) {
  Json doc;
  if (!c.preset.empty()) {
    doc["preset"] = c.preset;
  } else {
    doc["group"] = c.explicit_group;
  }
  doc["word_length"] = c.word_length;
  doc["depth"] = c.depth;
  doc["seed"] = c.seed;
  doc["xi"] = c.xi;
  doc["edge"] = edge_to_json(c.edge);
  return doc;
}

GroupSetup resolve_group(const RunConfig& c) {
  try {
    if (!c.preset.empty()) return preset(c.preset);
    const Json& g = c.explicit_group;
    if (!g.is_object()) throw ConfigError("group must be an object");
    const int sources = static_cast<int>(g.contains("omega")) + static_cast<int>(g.contains("wreath")) +
                        static_cast<int>(g.contains("free_product"));
    if (sources != 1) throw ConfigError("group needs exactly one of \"omega\", \"wreath\", \"free_product\"");
    GroupSetup s;
    s.name = "custom";
    if (g.contains("omega")) {
      const Alphabet alphabet = parse_omega(g.at("omega"));
      s.f = parse_group_spec(g.at("F"), alphabet);
      s.fp = parse_group_spec(g.at("Fp"), alphabet);
    } else if (g.contains("wreath")) {
      const Json& w = g.at("wreath");
      WreathEmbedding emb = wreath_embedding_spec(FiniteGroup::cyclic(w.at("gamma").get<int>()),
                                                  FiniteGroup::cyclic(w.at("shift_group").get<int>()));
      s.f = emb.base_group;
      s.fp = emb.wreath;
      s.wreath = std::move(emb);
    } else {
      const Json& fpj = g.at("free_product");
      s.free_product =
          FreeProductTree(FiniteGroup::cyclic(fpj.at("a").get<int>()), FiniteGroup::cyclic(fpj.at("b").get<int>()));
    }
    return s;
  } catch (const ConfigError&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed group: ") + e.what());
  } catch (const std::logic_error& e) {
    throw ConfigError(std::string("invalid group: ") + e.what());
  }
}

std::string Certificate::failing_stage() const {
  const Json& f = document.at("failing_stage");
  return f.is_null() ? std::string() : f.get<std::string>();
}

std::string Certificate::report() const {
  std::ostringstream out;
  const Json& config = document.at("config");
  out << "certificate " << document.at("format").get<std::string>() << " for "
      << (config.contains("preset") ? config.at("preset").get<std::string>() : std::string("custom group")) << "\n";
  for (const auto& check : document.at("checks")) {
    out << "  [" << (check.at("passed").get<bool>() ? "PASS" : "FAIL") << "] " << check.at("name").get<std::string>()
        << ": " << check.at("detail").get<std::string>() << "\n";
  }
  for (const auto& caveat : document.at("caveats")) out << "  caveat: " << caveat.get<std::string>() << "\n";
  out << "status: " << document.at("status").get<std::string>();
  if (!valid()) out << " (failing stage: " << failing_stage() << ")";
  out << "\n";
  return out.str();
}

Certificate build_certificate(const RunConfig& config) {
  const GroupSetup setup = resolve_group(config);
  Json doc;
  doc["format"] = kCertificateFormat;
  doc["config"] = config_to_json(config);
  Json checks = Json::array();
  Json caveats = Json::array();
  StageRunner stages(checks);
  if (setup.is_free_product()) {
    free_product_pipeline(setup, doc, stages);
  } else {
    regular_pipeline(config, setup, doc, stages, caveats);
  }
  doc["checks"] = checks;
  doc["status"] = stages.failing().empty() ? "VALID" : "INVALID";
  doc["failing_stage"] = stages.failing().empty() ? Json(nullptr) : Json(stages.failing());
  doc["caveats"] = caveats;
  return Certificate{doc};
}

Certificate parse_certificate(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("certificate is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || doc.value("format", std::string()) != kCertificateFormat) {
    throw ConfigError(std::string("certificate header is not ") + kCertificateFormat);
  }
  for (const char* key : {"config", "checks", "status", "failing_stage", "caveats"}) {
    if (!doc.contains(key)) throw ConfigError(std::string("certificate lacks field ") + key);
  }
  return Certificate{doc};
}

Reverification reverify(const Certificate& certificate) {
  const RunConfig config = parse_config(certificate.document.at("config"));
  const Certificate rebuilt = build_certificate(config);
  const bool same = rebuilt.serialize() == certificate.serialize();
  return {same, same ? "rebuilt certificate is byte-identical" : "rebuilt certificate differs"};
}

}  // namespace arboreal
