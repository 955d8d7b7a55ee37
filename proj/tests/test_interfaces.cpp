#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pht/cocycle.hpp"
#include "pht/coefficients.hpp"
#include "pht/errors.hpp"
#include "pht/hecke.hpp"
#include "pht/isocrystal.hpp"
#include "pht/oracle.hpp"
#include "pht/rational.hpp"
#include "pht/root_datum.hpp"
#include "pht/satake.hpp"
#include "pht/scalar.hpp"
#include "pht/serialize.hpp"

#include "json.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

using namespace pht;
using nlohmann::json;

namespace {

// A scratch file that removes itself.
struct TempFile {
  std::filesystem::path path;

  explicit TempFile(const std::string& stem) {
    path = std::filesystem::temp_directory_path() /
           (stem + "-" + std::to_string(std::random_device{}()) + ".jsonl");
  }
  ~TempFile() { std::filesystem::remove(path); }

  std::string str() const { return path.string(); }

  void write_lines(const std::vector<std::string>& lines) const {
    std::ofstream out(path);
    for (const std::string& l : lines) out << l << "\n";
  }
};

CocycleSpec gl2_spec(long p = 2, long e = 1, long f = 1) {
  CocycleSpec spec;
  spec.datum = RootDatum::gl(2);
  spec.xi = {rat(0), rat(2)};
  spec.field = FieldInvariants{p, e, f};
  spec.variant = Variant::gamma_xi;
  return spec;
}

}  // namespace

TEST_CASE("rational values survive the wire format") {
  CHECK(rational_to_string(rat(3)) == "3");
  CHECK(rational_to_string(rat(-7)) == "-7");
  CHECK(rational_to_string(rat(1, 2)) == "1/2");
  CHECK(rational_to_string(rat(-6, 4)) == "-3/2");

  CHECK(rational_from_string("3") == rat(3));
  CHECK(rational_from_string("-3/2") == rat(-3, 2));
  CHECK(rational_from_string("4/2") == rat(2));
  CHECK_THROWS_AS(rational_from_string(""), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_string("x"), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_string("1/0"), std::invalid_argument);

  // integers travel as JSON numbers, proper fractions as strings
  CHECK(rational_to_json(rat(5)).is_number_integer());
  CHECK(rational_to_json(rat(5, 3)).is_string());
  CHECK(rational_from_json(rational_to_json(rat(5))) == rat(5));
  CHECK(rational_from_json(rational_to_json(rat(5, 3))) == rat(5, 3));
  CHECK(rational_from_json(json("7")) == rat(7));

  // floats are refused, never rounded
  CHECK_THROWS_AS(rational_from_json(json(0.5)), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_json(json(nullptr)), std::invalid_argument);

  // a numerator beyond 64 bits falls back to the string form losslessly
  Rational big = rat(1);
  for (int i = 0; i < 8; ++i) big *= rat(1000000000L);
  CHECK(rational_to_json(big).is_string());
  CHECK(rational_from_json(rational_to_json(big)) == big);
}

TEST_CASE("vector round trips") {
  QVec q = {rat(1), rat(-1, 2), rat(0)};
  CHECK(qvec_from_json(qvec_to_json(q)) == q);
  json strings = qvec_to_json_strings(q);
  CHECK(strings[0].is_string());
  CHECK(strings[2] == "0");
  CHECK(qvec_from_json(strings) == q);

  IntVec v = {4, 0, -3};
  CHECK(intvec_from_json(intvec_to_json(v)) == v);
  CHECK_THROWS_AS(intvec_from_json(json::parse("[1, \"1/2\"]")),
                  std::invalid_argument);
  CHECK_THROWS_AS(qvec_from_json(json::parse("{}")), std::invalid_argument);
}

TEST_CASE("root datum descriptors") {
  for (const auto& name : {"GL2", "GL3", "GL4", "PGL2"}) {
    RootDatumPtr d = root_datum_by_name(name);
    RootDatumPtr back = datum_from_json(datum_to_json(d));
    CHECK(back->name() == d->name());
    CHECK(back->rank() == d->rank());
    CHECK(back->positive_roots() == d->positive_roots());
  }
  CHECK(datum_to_json(RootDatum::gl(3)) == json({{"type", "GL"}, {"n", 3}}));
  CHECK(datum_to_json(RootDatum::pgl2()) == json({{"type", "PGL2"}}));

  // the reader also accepts a bare name
  CHECK(datum_from_json(json("GL3"))->gl_n() == 3);

  // custom descriptors rebuild from the simple roots and verify the rest
  auto custom = RootDatum::custom({{1, -1}}, {{1, -1}}, "diag");
  json desc = datum_to_json(custom);
  CHECK(desc["type"] == "custom");
  RootDatumPtr back = datum_from_json(desc);
  CHECK(back->simple_roots() == custom->simple_roots());
  CHECK(back->positive_coroots() == custom->positive_coroots());

  json bad = desc;
  bad["positive_roots"] = json::array({json::array({5, 5})});
  CHECK_THROWS_AS(datum_from_json(bad), std::invalid_argument);
  CHECK_THROWS_AS(datum_from_json(json({{"type", "SO5"}})),
                  std::invalid_argument);
  CHECK_THROWS_AS(datum_from_json(json::parse("{}")), std::invalid_argument);
}

TEST_CASE("field and twisting datum round trips") {
  FieldInvariants k{3, 2, 2};
  CHECK(field_to_json(k) == json({{"p", 3}, {"e", 2}, {"f", 2}}));
  FieldInvariants back = field_from_json(field_to_json(k));
  CHECK(back.p == 3);
  CHECK(back.e == 2);
  CHECK(back.f == 2);
  CHECK_THROWS_AS(field_from_json(json({{"p", 4}, {"e", 1}, {"f", 1}})),
                  std::invalid_argument);
  CHECK_THROWS_AS(field_from_json(json({{"p", 2}})), std::invalid_argument);

  for (Variant v : {Variant::xi_only, Variant::delta_half, Variant::gamma_xi,
                    Variant::normalized}) {
    CocycleSpec spec = gl2_spec();
    spec.variant = v;
    json j = spec_to_json(spec);
    CocycleSpec b = spec_from_json(j);
    CHECK(b.datum->name() == "GL2");
    CHECK(b.xi == spec.xi);
    CHECK(b.field.p == spec.field.p);
    CHECK(b.variant == v);
  }

  // the variant key defaults to the twisted cocycle
  json j = spec_to_json(gl2_spec());
  j.erase("variant");
  CHECK(spec_from_json(j).variant == Variant::gamma_xi);

  // validation runs on load: a non-dominant xi is rejected
  json bad = spec_to_json(gl2_spec());
  bad["xi"] = json::array({2, 0});
  CHECK_THROWS_AS(spec_from_json(bad), std::invalid_argument);
}

TEST_CASE("filtered isocrystal files") {
  FieldInvariants k{2, 1, 1};
  FilteredIsocrystal D = construct_admissible(
      {{"a", rat(1)}, {"b", rat(1)}}, {rat(0), rat(1)}, k);
  json j = isocrystal_to_json(D);

  // valuations and jumps are written as strings
  CHECK(j["frobenius"]["blocks"][0]["val"].is_string());
  CHECK(j["flag"]["jumps"][0].is_string());

  FilteredIsocrystal back = isocrystal_from_json(j);
  CHECK(isocrystal_to_json(back) == j);
  CHECK(is_weakly_admissible(back).admissible ==
        is_weakly_admissible(D).admissible);
  CHECK(filtration_type(back) == filtration_type(D));

  // malformed files are rejected with a clear error
  json bad = j;
  bad["flag"].erase("jumps");
  CHECK_THROWS_AS(isocrystal_from_json(bad), std::invalid_argument);
  bad = j;
  bad["frobenius"]["blocks"][0].erase("label");
  CHECK_THROWS_AS(isocrystal_from_json(bad), std::invalid_argument);
  bad = j;
  bad["flag"]["jumps"] = json::array({"1", "0"});  // must increase strictly
  CHECK_THROWS_AS(isocrystal_from_json(bad), std::invalid_argument);
}

TEST_CASE("hecke element files") {
  auto gl2 = RootDatum::gl(2);
  AffineWeyl group(gl2);

  // generators, products and normalized elements round trip exactly
  std::vector<HeckeElt> samples;
  samples.push_back(HeckeElt::tau(group.translation({1, 0})));
  samples.push_back(multiply(group, HeckeElt::tau(group.finite(1)),
                             HeckeElt::tau(group.translation({2, -1}))));
  samples.push_back(theta(group, group.translation({0, 1})));
  samples.push_back(
      bernstein_theta(group, {1, -1}, {rat(0), rat(2)}));
  samples.push_back(spherical_embed(group, {1, 1}));
  samples.push_back(HeckeElt::zero());
  for (const HeckeElt& h : samples) {
    json j = hecke_to_json(group, h);
    CHECK(hecke_from_json(group, j) == h);
  }

  // repeated support keys accumulate
  json doubled = json::array();
  doubled.push_back({{"lambda", {1, 0}}, {"coeff", "1"}});
  doubled.push_back({{"lambda", {1, 0}}, {"coeff", "1"}, {"qpow", 1}});
  doubled.push_back({{"lambda", {1, 0}}, {"coeff", "2"}});
  HeckeElt h = hecke_from_json(group, doubled);
  Scalar expected = Scalar::integer(3) + Scalar::q_pow(rat(1));
  CHECK(h.coefficient(group.translation({1, 0})) == expected);

  // half-integral powers travel as rational strings
  HeckeElt half = HeckeElt::tau(group.finite(1)).scaled(
      Scalar::of(rat(1), rat(0), rat(1, 2)));
  json j = hecke_to_json(group, half);
  CHECK(j[0]["qpow"] == "1/2");
  CHECK(hecke_from_json(group, j) == half);

  CHECK_THROWS_AS(
      hecke_from_json(group, json::parse(R"([{"lambda":[1],"coeff":"1"}])")),
      std::invalid_argument);
  CHECK_THROWS_AS(
      hecke_from_json(group,
                      json::parse(R"([{"w":[7],"lambda":[0,0],"coeff":"1"}])")),
      std::invalid_argument);
  CHECK_THROWS_AS(hecke_from_json(group, json::parse("{}")),
                  std::invalid_argument);
}

TEST_CASE("coordinate lists and spherical elements") {
  std::map<IntVec, Scalar> coords;
  coords[{1, 1}] = Scalar::integer(2) - Scalar::q_pow(rat(1));
  coords[{2, 0}] = Scalar::pi_pow(rat(-2));
  json j = coords_to_json(coords);
  CHECK(coords_from_json(j) == coords);

  // cancelling entries drop out entirely
  json cancel = json::array();
  cancel.push_back({{"lambda", {0, 0}}, {"coeff", "1"}});
  cancel.push_back({{"lambda", {0, 0}}, {"coeff", "-1"}});
  CHECK(coords_from_json(cancel).empty());

  // a finite Weyl part is not a coordinate entry
  json stray = json::array();
  stray.push_back({{"w", {0}}, {"lambda", {0, 0}}, {"coeff", "1"}});
  CHECK_THROWS_AS(coords_from_json(stray), std::invalid_argument);

  SphericalElt f;
  f.coeffs[{1, 0}] = Scalar::q_pow(rat(1)) - Scalar::integer(1);
  f.coeffs[{0, 0}] = Scalar::integer(5);
  CHECK(spherical_from_json(spherical_to_json(f)) == f);
}

TEST_CASE("domain presentation serialization") {
  CocycleSpec spec = gl2_spec();
  spec.xi = {rat(0), rat(0)};
  spec.validate();
  json j = conditions_to_json(domain_presentation(spec));
  REQUIRE(j.is_array());
  REQUIRE(!j.empty());
  for (const json& c : j) {
    CHECK(c.contains("lambda"));
    CHECK(c.contains("bound"));
    CHECK(c["equality"].is_boolean());
  }
}

TEST_CASE("coefficient table files") {
  CoefficientTable table("GL2");
  table.insert({1, 1}, {2, 0}, {-1, 1});
  table.insert({2, 0}, {2, 0}, {1});

  TempFile file("coeff-table");
  table.save(file.str());

  CoefficientTable loaded("GL2");
  loaded.load(file.str());
  CHECK(loaded.entries() == table.entries());

  // appending the same entries keeps the file loadable (duplicates agree)
  table.append_to(file.str());
  CoefficientTable again("GL2");
  again.load(file.str());
  CHECK(again.entries() == table.entries());

  // a conflicting duplicate poisons the file
  std::ofstream out(file.str(), std::ios::app);
  out << R"({"datum":"GL2","lambda":[1,1],"mu":[2,0],"poly":[7]})" << "\n";
  out.close();
  CoefficientTable conflicted("GL2");
  CHECK_THROWS_AS(conflicted.load(file.str()), std::invalid_argument);

  // a line for another datum is refused when the table is datum-bound
  TempFile other("coeff-table-other");
  other.write_lines({R"({"datum":"GL3","lambda":[1,1,0],"mu":[2,0,0],"poly":[-1,1]})"});
  CoefficientTable wrong("GL2");
  CHECK_THROWS_AS(wrong.load(other.str()), std::invalid_argument);
  CoefficientTable right("GL3");
  right.load(other.str());
  CHECK(right.coefficient({1, 1, 0}, {2, 0, 0}).has_value());

  CHECK_THROWS_AS(table.load("/nonexistent/coeff.jsonl"),
                  std::invalid_argument);
}

TEST_CASE("table-backed transform agrees with the counting kernel") {
  CocycleSpec spec = gl2_spec();
  spec.xi = {rat(0), rat(0)};
  spec.validate();

  OracleCoefficientSource oracle(spec.datum);
  CoefficientTable table("GL2");
  for (const IntVec& mu : {IntVec{2, 0}, IntVec{1, 1}, IntVec{1, 0}}) {
    for (const IntVec& lam : spec.datum->antidominant_lower_set(mu)) {
      auto poly = oracle.polynomial(lam, mu);
      REQUIRE(poly.has_value());
      table.insert(lam, mu, *poly);
    }
  }
  TempFile file("coeff-roundtrip");
  table.save(file.str());
  CoefficientTable loaded("GL2");
  loaded.load(file.str());

  SphericalElt f;
  f.coeffs[{2, 0}] = Scalar::integer(1);
  f.coeffs[{1, 0}] = Scalar::q_pow(rat(1));
  CHECK(satake_transform(f, spec, loaded) == satake_transform(f, spec, oracle));
}
