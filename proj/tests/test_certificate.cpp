#include <doctest.h>

#include "arboreal/certificate.hpp"
#include "arboreal/error.hpp"

using namespace arboreal;

namespace {

RunConfig preset_config(const std::string& name) { return parse_config(Json{{"preset", name}}); }

}  // namespace

TEST_CASE("certificates for the presets") {
  const Certificate ok = build_certificate(preset_config("g-alt3-sym3"));
  CHECK(ok.valid());
  CHECK(ok.document.at("format") == kCertificateFormat);
  CHECK(ok.document.at("failing_stage").is_null());
  CHECK(ok.document.at("general_type").at("found") == true);
  for (const auto& check : ok.document.at("checks")) CHECK(check.at("passed") == true);

  const Certificate bad = build_certificate(preset_config("g-alt3-alt3"));
  CHECK_FALSE(bad.valid());
  CHECK(bad.failing_stage() == "thm_c_witness");

  const Certificate wreath = build_certificate(preset_config("wreath-z2-z2"));
  CHECK(wreath.valid());
  CHECK(wreath.document.at("group").at("wreath").at("points") == 4);

  for (const std::string name : {"g-cycle5-alt5", "wreath-z3-z2", "wreath-z2-z3", "g-z-translations", "psl2z"}) {
    CAPTURE(name);
    CHECK(build_certificate(preset_config(name)).valid());
  }
}

TEST_CASE("certificates are deterministic and round-trip") {
  RunConfig config = preset_config("g-alt3-sym3");
  config.word_length = 2;
  const std::string first = build_certificate(config).serialize();
  CHECK(build_certificate(config).serialize() == first);
  const Certificate parsed = parse_certificate(first);
  CHECK(parsed.serialize() == first);
  const Reverification again = reverify(parsed);
  CHECK(again.identical);

  Json tampered = parsed.document;
  tampered["orbit"]["points"] = 1;
  CHECK_FALSE(reverify(Certificate{tampered}).identical);
  CHECK_THROWS_AS(parse_certificate("{\"format\": \"other/1\"}"), ConfigError);
  CHECK_THROWS_AS(parse_certificate("not json"), ConfigError);
}

TEST_CASE("configuration parsing") {
  const RunConfig c = parse_config_text(R"({"preset": "psl2z", "word_length": 2, "depth": 8, "seed": 4})");
  CHECK(c.preset == "psl2z");
  CHECK(c.word_length == 2);
  CHECK(c.depth == 8);
  CHECK(c.seed == 4);
  CHECK(parse_config(config_to_json(c)).depth == 8);
  CHECK_THROWS_AS(parse_config_text("{"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"preset": "psl2z", "colour": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"depth": 4})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"preset": "psl2z", "group": {"omega": 3}})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"preset": "psl2z", "depth": 0})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"preset": "psl2z", "seed": -1})"), ConfigError);
  CHECK_THROWS_AS(resolve_group(preset_config("no-such-preset")), PreconditionError);
}

TEST_CASE("explicit groups") {
  const RunConfig c = parse_config_text(R"({"group": {"omega": 3, "F": "alt", "Fp": "sym"}})");
  const GroupSetup s = resolve_group(c);
  CHECK(*s.f == PermGroupSpec::alternating(3));
  CHECK(*s.fp == PermGroupSpec::symmetric(3));
  CHECK(build_certificate(c).valid());

  const GroupSetup gen = resolve_group(
      parse_config_text(R"({"group": {"omega": 5, "F": {"generators": [[1,2,3,4,0]]}, "Fp": "alt"}})"));
  CHECK(gen.f->order() == 5);

  const GroupSetup z = resolve_group(
      parse_config_text(R"({"group": {"omega": "integers", "F": "translations", "Fp": "finitary-affine"}})"));
  CHECK_FALSE(z.f->is_finite());

  const GroupSetup w = resolve_group(parse_config_text(R"({"group": {"wreath": {"gamma": 3, "shift_group": 2}}})"));
  CHECK(w.wreath->point_count() == 9);

  const GroupSetup fp = resolve_group(parse_config_text(R"({"group": {"free_product": {"a": 2, "b": 3}}})"));
  CHECK(fp.is_free_product());

  CHECK_THROWS_AS(resolve_group(parse_config_text(R"({"group": {"omega": 3, "F": "bogus", "Fp": "sym"}})")),
                  ConfigError);
  CHECK_THROWS_AS(resolve_group(parse_config_text(R"({"group": {}})")), ConfigError);
}

TEST_CASE("automorphism serialization") {
  const PermGroupSpec alt = PermGroupSpec::alternating(3);
  const GroupClass cls = GroupClass::prescribed(alt, PermGroupSpec::symmetric(3));
  const GroupClass z = GroupClass::prescribed(PermGroupSpec::z_translations(), PermGroupSpec::z_finitary_affine());
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const TreeAutomorphism g = random_element(cls, 2, seed);
    CHECK(automorphism_from_json(automorphism_to_json(g)) == g);
    const TreeAutomorphism h = random_element(z, 2, seed);
    CHECK(automorphism_from_json(Json::parse(automorphism_to_json(h).dump())) == h);
  }
  const Permutation p = Permutation::affine(3, {{0, 1}, {1, 0}});
  CHECK(permutation_from_json(permutation_to_json(p), Alphabet::integers()) == p);
  CHECK_THROWS(automorphism_from_json(Json{{"alphabet", 3}}));
}
