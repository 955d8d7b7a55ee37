// Command-line front end: JSON in/out, "num/den" rationals, exit codes
//   0 success / positive decision      1 negative decision
//   2 usage or input error             3 internal cross-check disagreement
#include "CLI11.hpp"
#include "json.hpp"

#include "pht/cocycle.hpp"
#include "pht/coefficients.hpp"
#include "pht/errors.hpp"
#include "pht/hecke.hpp"
#include "pht/isocrystal.hpp"
#include "pht/oracle.hpp"
#include "pht/polygon.hpp"
#include "pht/rational.hpp"
#include "pht/root_datum.hpp"
#include "pht/satake.hpp"
#include "pht/serialize.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace pht;

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  size_t start = 0;
  while (true) {
    size_t comma = s.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, comma - start));
    start = comma + 1;
  }
}

QVec parse_qvec_arg(const std::string& s, const char* flag) {
  std::vector<std::string> toks = split_csv(s);
  if (toks.empty()) {
    throw std::invalid_argument(std::string(flag) + " must not be empty");
  }
  QVec out;
  for (const std::string& t : toks) out.push_back(parse_rational(t));
  return out;
}

IntVec parse_intvec_arg(const std::string& s, const char* flag) {
  QVec q = parse_qvec_arg(s, flag);
  for (const Rational& r : q) {
    if (!is_integer(r)) {
      throw std::invalid_argument(std::string(flag) +
                                  " needs integer entries, got " +
                                  rational_to_string(r));
    }
  }
  return to_intvec(q);
}

FieldInvariants parse_field_arg(const std::string& s) {
  std::vector<std::string> toks = split_csv(s);
  if (toks.size() != 3) {
    throw std::invalid_argument("--field expects p,e,f");
  }
  FieldInvariants k;
  k.p = static_cast<long>(to_ll(parse_rational(toks[0])));
  k.e = static_cast<long>(to_ll(parse_rational(toks[1])));
  k.f = static_cast<long>(to_ll(parse_rational(toks[2])));
  k.validate();
  return k;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open JSON file: " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument("bad JSON in " + path + ": " + e.what());
  }
}

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

size_t fold_word(const RootDatumPtr& datum, const IntVec& word) {
  size_t w = datum->weyl_identity();
  for (long long i : word) {
    if (i < 0 || static_cast<size_t>(i) >= datum->num_simple()) {
      throw std::invalid_argument("generator index out of range: " +
                                  std::to_string(i));
    }
    w = datum->weyl_mul(w, datum->simple_reflection(static_cast<int>(i)));
  }
  return w;
}

std::unique_ptr<CoefficientSource> make_source(const RootDatumPtr& datum,
                                               const std::string& table_path) {
  if (!table_path.empty()) {
    auto table = std::make_unique<CoefficientTable>(datum->name());
    table->load(table_path);
    return table;
  }
  return std::make_unique<OracleCoefficientSource>(datum);
}

std::vector<LabeledValuation> parse_zeta(const std::string& labels,
                                         const std::string& vals) {
  std::vector<std::string> ls = split_csv(labels);
  QVec vs = parse_qvec_arg(vals, "--vals");
  if (ls.size() != vs.size()) {
    throw std::invalid_argument("--labels and --vals must have equal length");
  }
  std::vector<LabeledValuation> zeta;
  for (size_t i = 0; i < ls.size(); ++i) {
    if (ls[i].empty()) throw std::invalid_argument("empty label");
    zeta.push_back({ls[i], vs[i]});
  }
  return zeta;
}

// Option storage shared by all subcommands; exactly one runs per invocation.
struct Opts {
  std::string datum = "GL2";
  std::string xi;
  std::string field = "2,1,1";
  std::string variant = "gamma_xi";
  std::string method = "all";
  std::string vals;
  std::string labels;
  std::string newton;
  std::string hodge;
  std::string svg;
  std::string json_file;
  std::string table;
  std::string out;
  std::string lambda;
  std::string mu;
  std::string w;
  long long prime = 0;
  long long depth = -1;
  long long r = 0;
  bool semisimple = true;
  bool serial = false;
};

CocycleSpec build_spec(const Opts& o) {
  CocycleSpec spec;
  spec.datum = root_datum_by_name(o.datum);
  spec.xi = parse_qvec_arg(o.xi, "--xi");
  spec.field = parse_field_arg(o.field);
  spec.variant = variant_from_string(o.variant);
  spec.validate();
  return spec;
}

int run_domain_check(const Opts& o) {
  CocycleSpec spec = build_spec(o);
  QVec v = parse_qvec_arg(o.vals, "--vals");
  // For GL data --vals are eigenvalue valuations in the standard shifted
  // normalization; the membership domain lives in raw lattice coordinates.
  if (spec.datum->is_gl()) v = gl_raw_coordinates(spec, v);
  bool member = membership(spec, v, method_from_string(o.method));
  print_json(json{{"member", member}});
  return member ? 0 : 1;
}

int run_domain_presentation(const Opts& o) {
  CocycleSpec spec = build_spec(o);
  print_json(conditions_to_json(domain_presentation(spec)));
  return 0;
}

int run_polygon_compare(const Opts& o) {
  Polygon newton = polygon_of(parse_qvec_arg(o.newton, "--newton"));
  Polygon hodge = polygon_of(parse_qvec_arg(o.hodge, "--hodge"));
  bool above = newton_above_hodge(newton, hodge);
  if (!o.svg.empty()) {
    std::ofstream svg(o.svg);
    if (!svg) throw std::invalid_argument("cannot write SVG file: " + o.svg);
    svg << polygons_to_svg(newton, &hodge);
  }
  print_json(json{{"above", above}});
  return above ? 0 : 1;
}

int run_isocrystal_check(const Opts& o) {
  FilteredIsocrystal D = isocrystal_from_json(read_json_file(o.json_file));
  AdmissibilityReport report = is_weakly_admissible(D);
  json out;
  out["admissible"] = report.admissible;
  out["t_H"] = rational_to_json(report.t_H_full);
  out["t_N"] = rational_to_json(report.t_N_full);
  if (report.violator) {
    json sub = json::array();
    for (size_t i : *report.violator) sub.push_back(i);
    out["violator"] = sub;
  }
  print_json(out);
  return report.admissible ? 0 : 1;
}

int run_isocrystal_construct(const Opts& o) {
  QVec xi = parse_qvec_arg(o.xi, "--xi");
  FieldInvariants field = parse_field_arg(o.field);
  FilteredIsocrystal D = construct_admissible(parse_zeta(o.labels, o.vals), xi, field);
  print_json(isocrystal_to_json(D));
  return 0;
}

int run_isocrystal_classify(const Opts& o) {
  QVec xi = parse_qvec_arg(o.xi, "--xi");
  FieldInvariants field = parse_field_arg(o.field);
  GL2Classification g =
      gl2_classify(xi, parse_zeta(o.labels, o.vals), o.semisimple, field);
  print_json(json{{"case", g.case_number}, {"count", g.admissible_count}});
  return 0;
}

int run_isocrystal_hn(const Opts& o) {
  FilteredIsocrystal D = isocrystal_from_json(read_json_file(o.json_file));
  json out = json::array();
  for (const HNStep& step : hn_filtration(D)) {
    json sub = json::array();
    for (size_t i : step.subspace) sub.push_back(i);
    out.push_back(json{{"subspace", sub}, {"slope", rational_to_json(step.slope)}});
  }
  print_json(out);
  return 0;
}

int run_isocrystal_pair_criterion(const Opts& o) {
  RootDatumPtr datum = root_datum_by_name(o.datum);
  QVec xi = parse_qvec_arg(o.xi, "--xi");
  QVec vals = parse_qvec_arg(o.vals, "--vals");
  FieldInvariants field = parse_field_arg(o.field);
  long long r = o.r;
  if (r == 0) {
    // Smallest denominator clearing xi + e*f*eta.
    QVec s = add(xi, scale(rat(field.ef()), datum->eta()));
    for (r = 1; r <= 48; ++r) {
      bool ok = true;
      for (const Rational& c : s)
        if (!is_integer(c * rat(static_cast<long>(r)))) ok = false;
      if (ok) break;
    }
    if (r > 48) throw std::invalid_argument("no small r clears the jumps; pass --r");
  }
  bool ok = pair_admissibility_criterion(datum, xi, vals, field, r);
  print_json(json{{"admissible", ok}, {"r", r}});
  return ok ? 0 : 1;
}

int run_hecke_mul(const Opts& o) {
  RootDatumPtr datum = root_datum_by_name(o.datum);
  AffineWeyl group(datum);
  json in = read_json_file(o.json_file);
  json ja, jb;
  if (in.is_object() && in.contains("a") && in.contains("b")) {
    ja = in.at("a");
    jb = in.at("b");
  } else if (in.is_array() && in.size() == 2 && in.at(0).is_array()) {
    ja = in.at(0);
    jb = in.at(1);
  } else {
    throw std::invalid_argument(
        "hecke mul expects {\"a\":[...],\"b\":[...]} or a two-element array");
  }
  HeckeElt a = hecke_from_json(group, ja);
  HeckeElt b = hecke_from_json(group, jb);
  print_json(hecke_to_json(group, multiply(group, a, b)));
  return 0;
}

int run_hecke_inverse(const Opts& o) {
  RootDatumPtr datum = root_datum_by_name(o.datum);
  AffineWeyl group(datum);
  ExtWeylElt x;
  x.w = fold_word(datum, o.w.empty() ? IntVec{} : parse_intvec_arg(o.w, "--w"));
  x.lambda = o.lambda.empty() ? IntVec(datum->rank(), 0)
                              : parse_intvec_arg(o.lambda, "--lambda");
  print_json(hecke_to_json(group, tau_inverse(group, x)));
  return 0;
}

int run_hecke_theta(const Opts& o) {
  RootDatumPtr datum = root_datum_by_name(o.datum);
  AffineWeyl group(datum);
  IntVec lambda = parse_intvec_arg(o.lambda, "--lambda");
  if (!o.xi.empty()) {
    if (!o.w.empty()) {
      throw std::invalid_argument("--xi (lattice embedding) excludes --w");
    }
    QVec xi = parse_qvec_arg(o.xi, "--xi");
    print_json(hecke_to_json(group, bernstein_theta(group, lambda, xi)));
    return 0;
  }
  ExtWeylElt x;
  x.w = fold_word(datum, o.w.empty() ? IntVec{} : parse_intvec_arg(o.w, "--w"));
  x.lambda = lambda;
  print_json(hecke_to_json(group, theta(group, x)));
  return 0;
}

int run_hecke_norm(const Opts& o) {
  RootDatumPtr datum = root_datum_by_name(o.datum);
  AffineWeyl group(datum);
  QVec xi = parse_qvec_arg(o.xi, "--xi");
  FieldInvariants field = parse_field_arg(o.field);
  HeckeElt h = hecke_from_json(group, read_json_file(o.json_file));
  std::optional<Rational> n = norm_xi(group, h, xi, field);
  print_json(json{{"norm", n ? rational_to_json(*n) : json(nullptr)}});
  return 0;
}

int run_hecke_check_prop44(const Opts& o) {
  RootDatumPtr datum = root_datum_by_name(o.datum);
  AffineWeyl group(datum);
  QVec xi = parse_qvec_arg(o.xi, "--xi");
  FieldInvariants field = parse_field_arg(o.field);
  // Input is a spherical element in double-coset coordinates.
  HeckeElt h;
  for (const auto& [lambda, c] : coords_from_json(read_json_file(o.json_file))) {
    h = h + spherical_embed(group, lambda).scaled(c);
  }
  auto source = make_source(datum, o.table);
  bool ok = check_prop44(group, h, xi, field, *source);
  print_json(json{{"ok", ok}});
  return ok ? 0 : 1;
}

int run_satake_transform(const Opts& o) {
  CocycleSpec spec = build_spec(o);
  SphericalElt f = spherical_from_json(read_json_file(o.json_file));
  f.validate(*spec.datum);
  auto source = make_source(spec.datum, o.table);
  GroupRingElt img = satake_transform(f, spec, *source);
  print_json(coords_to_json(sigma_coordinates(img, spec)));
  return 0;
}

int run_satake_invert(const Opts& o) {
  CocycleSpec spec = build_spec(o);
  std::map<IntVec, Scalar> coords = coords_from_json(read_json_file(o.json_file));
  GroupRingElt x;
  for (const auto& [lambda, c] : coords) {
    x = x + sigma(spec, lambda).scaled(c);
  }
  auto source = make_source(spec.datum, o.table);
  try {
    SphericalElt f = satake_inverse(x, spec, *source);
    print_json(spherical_to_json(f));
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "not in the transform image: " << e.what() << "\n";
    return 1;
  }
}

int run_satake_coeff(const Opts& o) {
  RootDatumPtr datum = root_datum_by_name(o.datum);
  IntVec lambda = parse_intvec_arg(o.lambda, "--lambda");
  IntVec mu = parse_intvec_arg(o.mu, "--mu");
  if (o.prime <= 1) throw std::invalid_argument("--prime must be a prime");
  auto source = make_source(datum, o.table);
  std::optional<Scalar> c = source->coefficient(lambda, mu);
  if (!c) {
    throw std::invalid_argument(
        "coefficient unavailable (not in the table, or outside the counting "
        "kernel's range)");
  }
  FieldInvariants k;
  k.p = static_cast<long>(o.prime);
  k.validate();
  json out;
  out["lambda"] = intvec_to_json(lambda);
  out["mu"] = intvec_to_json(mu);
  out["prime"] = o.prime;
  out["count"] = rational_to_json(c->substitute(k));
  print_json(out);
  return 0;
}

int run_oracle_count(const Opts& o) {
  IntVec lambda = parse_intvec_arg(o.lambda, "--lambda");
  IntVec mu = parse_intvec_arg(o.mu, "--mu");
  CountOptions opts;
  opts.depth = o.depth;
  opts.parallel = !o.serial;
  StabilizationReport report;
  long long count = count_c(lambda, mu, static_cast<long>(o.prime), opts, &report);
  json out;
  out["lambda"] = intvec_to_json(lambda);
  out["mu"] = intvec_to_json(mu);
  out["prime"] = o.prime;
  out["count"] = count;
  out["depth"] = report.depth;
  out["stable"] = true;  // instability raises instead of returning
  out["recounted"] = report.recounted;
  print_json(out);
  return 0;
}

int run_oracle_interpolate(const Opts& o) {
  RootDatumPtr datum = root_datum_by_name(o.datum);
  IntVec lambda = parse_intvec_arg(o.lambda, "--lambda");
  IntVec mu = parse_intvec_arg(o.mu, "--mu");
  OracleCoefficientSource source(datum);
  std::optional<std::vector<long long>> poly = source.polynomial(lambda, mu);
  if (!poly) {
    throw std::invalid_argument("interpolation unavailable for this pair");
  }
  if (!o.out.empty()) {
    CoefficientTable existing(datum->name());
    if (std::filesystem::exists(o.out)) existing.load(o.out);
    auto it = existing.entries().find({lambda, mu});
    if (it == existing.entries().end()) {
      CoefficientTable fresh(datum->name());
      fresh.insert(lambda, mu, *poly);
      fresh.append_to(o.out);
    } else if (it->second != *poly) {
      throw InternalCheckError(
          "stored table polynomial disagrees with the recomputed one");
    }
  }
  json out;
  out["datum"] = datum->name();
  out["lambda"] = intvec_to_json(lambda);
  out["mu"] = intvec_to_json(mu);
  out["poly"] = json(*poly);
  print_json(out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Opts o;
  std::function<int()> action;
  CLI::App app{
      "Exact computations in twisted spherical algebras: membership domains, "
      "Newton/Hodge polygons, filtered isocrystals, affine Hecke elements, "
      "the renormalized spherical transform, and unipotent coset counts."};
  app.require_subcommand(1);

  auto add_datum = [&](CLI::App* c) {
    c->add_option("--datum", o.datum, "Root datum name: GL2, GL3, GL4, PGL2")
        ->capture_default_str();
  };
  auto add_field = [&](CLI::App* c) {
    c->add_option("--field", o.field, "Field invariants p,e,f")
        ->capture_default_str();
  };

  // domain ------------------------------------------------------------
  CLI::App* domain =
      app.add_subcommand("domain", "Membership domain of a twisting datum");
  domain->require_subcommand(1);
  {
    CLI::App* c = domain->add_subcommand(
        "check", "Decide membership of a valuation vector");
    add_datum(c);
    add_field(c);
    c->add_option("--xi", o.xi, "Dominant character, comma separated")->required();
    c->add_option("--vals", o.vals, "Vector to test, comma separated")->required();
    c->add_option("--variant", o.variant, "Cocycle variant")->capture_default_str();
    c->add_option("--method", o.method, "hull | dominance | generators | all")
        ->capture_default_str();
    c->callback([&] { action = [&] { return run_domain_check(o); }; });
  }
  {
    CLI::App* c = domain->add_subcommand(
        "presentation", "Print the inequality presentation of the domain");
    add_datum(c);
    add_field(c);
    c->add_option("--xi", o.xi, "Dominant character")->required();
    c->add_option("--variant", o.variant, "Cocycle variant")->capture_default_str();
    c->callback([&] { action = [&] { return run_domain_presentation(o); }; });
  }

  // polygon -----------------------------------------------------------
  CLI::App* polygon = app.add_subcommand("polygon", "Convex polygon comparisons");
  polygon->require_subcommand(1);
  {
    CLI::App* c = polygon->add_subcommand(
        "compare", "Does the first polygon lie on or above the second?");
    c->add_option("--newton", o.newton, "Slopes, weakly increasing")->required();
    c->add_option("--hodge", o.hodge, "Slopes, weakly increasing")->required();
    c->add_option("--svg", o.svg, "Write a static SVG plot of both polygons");
    c->callback([&] { action = [&] { return run_polygon_compare(o); }; });
  }

  // isocrystal ----------------------------------------------------------
  CLI::App* iso =
      app.add_subcommand("isocrystal", "Filtered isocrystals and admissibility");
  iso->require_subcommand(1);
  {
    CLI::App* c = iso->add_subcommand("check", "Weak admissibility of a filtered isocrystal");
    c->add_option("--json-file", o.json_file, "Isocrystal JSON file")->required();
    c->callback([&] { action = [&] { return run_isocrystal_check(o); }; });
  }
  {
    CLI::App* c = iso->add_subcommand(
        "construct", "Build an admissible filtered isocrystal from eigenvalue data");
    add_field(c);
    c->add_option("--xi", o.xi, "Filtration type offsets")->required();
    c->add_option("--vals", o.vals, "Eigenvalue valuations")->required();
    c->add_option("--labels", o.labels, "Eigenvalue labels")->required();
    c->callback([&] { action = [&] { return run_isocrystal_construct(o); }; });
  }
  {
    CLI::App* c = iso->add_subcommand(
        "classify-gl2", "Rank-2 classification of admissible filtration classes");
    add_field(c);
    c->add_option("--xi", o.xi, "Filtration type offsets")->required();
    c->add_option("--vals", o.vals, "Eigenvalue valuations")->required();
    c->add_option("--labels", o.labels, "Eigenvalue labels")->required();
    c->add_flag("--semisimple,!--non-semisimple", o.semisimple,
                "Semisimple Frobenius (default) or one Jordan block");
    c->callback([&] { action = [&] { return run_isocrystal_classify(o); }; });
  }
  {
    CLI::App* c = iso->add_subcommand("hn", "Canonical slope filtration");
    c->add_option("--json-file", o.json_file, "Isocrystal JSON file")->required();
    c->callback([&] { action = [&] { return run_isocrystal_hn(o); }; });
  }
  {
    CLI::App* c = iso->add_subcommand(
        "pair-criterion", "Normalized-domain admissibility of a valuation vector");
    add_datum(c);
    add_field(c);
    c->add_option("--xi", o.xi, "Dominant character")->required();
    c->add_option("--vals", o.vals, "Valuation vector")->required();
    c->add_option("--r", o.r, "Jump denominator (0 = smallest that clears xi)")
        ->capture_default_str();
    c->callback([&] { action = [&] { return run_isocrystal_pair_criterion(o); }; });
  }

  // hecke ---------------------------------------------------------------
  CLI::App* hecke = app.add_subcommand("hecke", "Affine Hecke algebra operations");
  hecke->require_subcommand(1);
  {
    CLI::App* c = hecke->add_subcommand("mul", "Product of two Hecke elements");
    add_datum(c);
    c->add_option("--json-file", o.json_file,
                  "JSON {\"a\":[...],\"b\":[...]} or [[...],[...]]")
        ->required();
    c->callback([&] { action = [&] { return run_hecke_mul(o); }; });
  }
  {
    CLI::App* c = hecke->add_subcommand("inverse", "Inverse of a basis element");
    add_datum(c);
    c->add_option("--w", o.w, "Word in the simple reflections (0-based)");
    c->add_option("--lambda", o.lambda, "Translation part (default 0)");
    c->callback([&] { action = [&] { return run_hecke_inverse(o); }; });
  }
  {
    CLI::App* c = hecke->add_subcommand(
        "theta", "Normalized basis element, or the lattice embedding with --xi");
    add_datum(c);
    c->add_option("--lambda", o.lambda, "Lattice point")->required();
    c->add_option("--w", o.w, "Finite Weyl word (excluded by --xi)");
    c->add_option("--xi", o.xi, "Twist character for the lattice embedding");
    c->callback([&] { action = [&] { return run_hecke_theta(o); }; });
  }
  {
    CLI::App* c = hecke->add_subcommand("norm", "Twisted valuation norm of an element");
    add_datum(c);
    add_field(c);
    c->add_option("--xi", o.xi, "Twist character")->required();
    c->add_option("--json-file", o.json_file, "Hecke element JSON file")->required();
    c->callback([&] { action = [&] { return run_hecke_norm(o); }; });
  }
  {
    CLI::App* c = hecke->add_subcommand(
        "check-prop44", "Spherical/lattice compatibility and centrality check");
    add_datum(c);
    add_field(c);
    c->add_option("--xi", o.xi, "Twist character")->required();
    c->add_option("--json-file", o.json_file, "Spherical element JSON file")->required();
    c->add_option("--table", o.table, "Coefficient table (default: counting kernel)");
    c->callback([&] { action = [&] { return run_hecke_check_prop44(o); }; });
  }

  // satake --------------------------------------------------------------
  CLI::App* satake =
      app.add_subcommand("satake", "Renormalized spherical transform");
  satake->require_subcommand(1);
  {
    CLI::App* c = satake->add_subcommand(
        "transform", "Transform a spherical element into orbit-sum coordinates");
    add_datum(c);
    add_field(c);
    c->add_option("--xi", o.xi, "Dominant character")->required();
    c->add_option("--json-file", o.json_file, "Spherical coordinates JSON file")
        ->required();
    c->add_option("--table", o.table, "Coefficient table (default: counting kernel)");
    c->callback([&] { action = [&] { return run_satake_transform(o); }; });
  }
  {
    CLI::App* c = satake->add_subcommand(
        "invert", "Invert orbit-sum coordinates back to spherical coordinates");
    add_datum(c);
    add_field(c);
    c->add_option("--xi", o.xi, "Dominant character")->required();
    c->add_option("--json-file", o.json_file, "Orbit-sum coordinates JSON file")
        ->required();
    c->add_option("--table", o.table, "Coefficient table (default: counting kernel)");
    c->callback([&] { action = [&] { return run_satake_invert(o); }; });
  }
  {
    CLI::App* c = satake->add_subcommand(
        "coeff", "One expansion coefficient evaluated at a prime");
    add_datum(c);
    c->add_option("--lambda", o.lambda, "Lattice point")->required();
    c->add_option("--mu", o.mu, "Antidominant lattice point")->required();
    c->add_option("--prime", o.prime, "Residue size q = p")->required();
    c->add_option("--table", o.table, "Coefficient table (default: counting kernel)");
    c->callback([&] { action = [&] { return run_satake_coeff(o); }; });
  }

  // oracle ----------------------------------------------------------------
  CLI::App* oracle =
      app.add_subcommand("oracle", "Unipotent coset counting kernel");
  oracle->require_subcommand(1);
  {
    CLI::App* c = oracle->add_subcommand("count", "Count cosets at one prime");
    c->add_option("--lambda", o.lambda, "Integer vector")->required();
    c->add_option("--mu", o.mu, "Antidominant integer vector")->required();
    c->add_option("--prime", o.prime, "Prime p (q = p)")->required();
    c->add_option("--depth", o.depth,
                  "Representative depth (default: support bound)")
        ->capture_default_str();
    c->add_flag("--serial", o.serial, "Disable the parallel kernel");
    c->callback([&] { action = [&] { return run_oracle_count(o); }; });
  }
  {
    CLI::App* c = oracle->add_subcommand(
        "interpolate", "Interpolate the count polynomial in q and persist it");
    add_datum(c);
    c->add_option("--lambda", o.lambda, "Integer vector")->required();
    c->add_option("--mu", o.mu, "Antidominant integer vector")->required();
    c->add_option("--out", o.out, "Coefficient table to append to");
    c->callback([&] { action = [&] { return run_oracle_interpolate(o); }; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    return action ? action() : 2;
  } catch (const InternalCheckError& e) {
    std::cerr << "internal cross-check failed: " << e.what() << "\n";
    return 3;
  } catch (const NoAdmissibleFiltration& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
