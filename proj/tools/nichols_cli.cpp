// Batch interface to the nichols library.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "nichols/catalog.hpp"
#include "nichols/double.hpp"
#include "nichols/freealg.hpp"
#include "nichols/groupoid.hpp"
#include "nichols/lusztig.hpp"

using namespace nichols;
using nlohmann::json;

namespace {

struct Options {
  std::string input;
  std::string format = "json";
  std::optional<int> degree_cap;
  int object_cap = 1024;
  long morphism_cap = kDefaultMorphismCap;
  int jobs = 1;
  std::uint64_t seed = 0;
  std::string suite;
};

// A scheme given as input (an exported orbit); empty for plain bicharacters.
struct Input {
  Bicharacter chi;
  std::optional<CartanScheme> scheme;
  std::string name;
};

json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw PreconditionError("cannot open input file '" + path + "'");
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw PreconditionError("input is not valid JSON: " + std::string(e.what()));
  }
}

Input load_json(json j, Input in);

Input load(const std::string& source) {
  if (source.empty()) throw PreconditionError("--input is required");
  Input in;
  in.name = source;
  if (source.rfind("catalog:", 0) == 0) {
    const CatalogEntry* e = find_catalog(source.substr(8));
    if (!e) throw PreconditionError("no catalog entry named '" + source.substr(8) + "'");
    in.chi = e->chi();
    return in;
  }
  json j = read_json_file(source);
  try {
    return load_json(j, in);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw PreconditionError("malformed input: " + std::string(e.what()));
  }
}

Input load_json(json j, Input in) {
  if (j.contains("scheme")) j = j["scheme"];
  if (j.contains("bicharacter")) j = j["bicharacter"];
  if (j.contains("objects")) {
    in.scheme = scheme_from_json(j);
    if (in.scheme->objects.empty()) throw PreconditionError("the exported scheme has no objects");
    in.chi = in.scheme->objects[0];
    return in;
  }
  in.chi = bicharacter_from_json(j);
  return in;
}

int degree_cap(const Options& o, int fallback) { return o.degree_cap.value_or(fallback); }

CartanScheme orbit(const Options& o, const Bicharacter& chi) {
  ExploreOptions eo;
  eo.object_cap = o.object_cap;
  return explore(chi, eo);
}

json matrix_json(const IntMatrix& m) { return m; }

// -- commands ---------------------------------------------------------------

json cmd_analyze(const Options& o, const Input& in) {
  const Bicharacter& chi = in.chi;
  const int n = chi.rank();
  json r;
  r["bicharacter"] = to_json(chi);
  r["key"] = chi.key();
  json pf = json::array();
  for (int p = 0; p < n; ++p) pf.push_back(is_p_finite(chi, p));
  r["p_finite"] = pf;
  // throws NotPFinite with the witness j
  const IntMatrix c = cartan_matrix(chi);
  r["cartan"] = matrix_json(c);
  r["generalized_cartan"] = is_generalized_cartan(c);
  json h = json::array();
  for (int p = 0; p < n; ++p) {
    const auto hp = height(chi, unit(n, p));
    h.push_back(hp ? json(*hp) : json("infinity"));
  }
  r["heights"] = h;
  json lam = json::array();
  for (int p = 0; p < n; ++p)
    for (int i = 0; i < n; ++i)
      if (i != p) lam.push_back({{"p", p + 1}, {"i", i + 1}, {"lambda", lambda(chi, p, i).to_string()}});
  r["lambda"] = lam;
  (void)o;
  return r;
}

json cmd_orbit(const Options& o, const Input& in) {
  const CartanScheme s = orbit(o, in.chi);
  json r;
  r["scheme"] = to_json(s);
  r["objects"] = s.size();
  if (in.scheme) r["round_trip"] = to_json(*in.scheme) == r["scheme"] ? "identical" : "different";
  return r;
}

json cmd_roots(const Options& o, const Input& in) {
  const CartanScheme s = orbit(o, in.chi);
  s.require_complete();
  const FinitenessReport f = is_finite(s, o.morphism_cap);
  if (f.status != Finiteness::Finite) throw IncompleteGroupoid("Weyl groupoid did not close: " + f.note);
  json r;
  json roots = json::array();
  for (int a = 0; a < s.size(); ++a) roots.push_back(to_json(real_roots(s, a, o.morphism_cap)));
  r["roots"] = roots;
  r["objects"] = s.size();
  r["morphisms_per_object"] = f.morphisms_per_object;
  r["positive_roots"] = roots[0]["positive"].size();
  const Morphism w0 = longest_from(s, 0, o.morphism_cap);
  json w = json::array();
  for (int p : w0.word) w.push_back(p + 1);
  r["longest_word"] = w;
  return r;
}

// all mu in N_0^n with |mu| = d
void degrees(int n, int d, Lattice& cur, int k, std::vector<Lattice>& out) {
  if (k == n - 1) {
    cur[k] = d;
    out.push_back(cur);
    return;
  }
  for (int x = d; x >= 0; --x) {
    cur[k] = x;
    degrees(n, d - x, cur, k + 1, out);
  }
}

std::vector<Lattice> degrees_upto(int n, int cap) {
  std::vector<Lattice> out;
  Lattice cur(n);
  for (int d = 1; d <= cap; ++d) degrees(n, d, cur, 0, out);
  return out;
}

json cmd_hilbert(const Options& o, const Input& in) {
  const Bicharacter& chi = in.chi;
  const int cap = degree_cap(o, 6);
  std::optional<std::vector<Lattice>> roots;
  try {
    const CartanScheme s = orbit(o, chi);
    if (s.complete && is_finite(s, o.morphism_cap).status == Finiteness::Finite)
      roots = real_roots(s, 0, o.morphism_cap).positive;
  } catch (const NotPFinite&) {
  }
  json rows = json::array();
  bool match = true;
  for (const Lattice& mu : degrees_upto(chi.rank(), cap)) {
    json row = {{"degree", mu}, {"dim", nichols_dim(chi, mu, cap)}};
    if (roots) {
      const long pbw = restricted_pbw_dim(chi, *roots, mu);
      row["pbw"] = pbw;
      match = match && pbw == row["dim"].get<long>();
    }
    rows.push_back(row);
  }
  json r;
  r["degree_cap"] = cap;
  r["dims"] = rows;
  if (roots) r["pbw_match"] = match;
  return r;
}

SuiteReport suite_relations(const Options& o, const Bicharacter& chi) {
  const CartanScheme s = orbit(o, chi);
  s.require_complete();
  SuiteReport rep;
  for (const auto& x : s.objects)
    for (int p = 0; p < chi.rank(); ++p)
      for (Direction d : {Direction::T, Direction::Tminus})
        rep.merge(check_defining_relations(build_T(x, p, d), degree_cap(o, kDefaultDegreeCap)));
  return rep;
}

SuiteReport suite_lusztig_id(const Options& o, const Bicharacter& chi) {
  const CartanScheme s = orbit(o, chi);
  s.require_complete();
  SuiteReport rep;
  const int cap = degree_cap(o, kDefaultDegreeCap);
  for (const auto& x : s.objects)
    for (int p = 0; p < chi.rank(); ++p) {
      rep.merge(check_lusztig_identities(x, p, cap, o.seed));
      rep.merge(check_psiadE(x, p, cap));
    }
  return rep;
}

SuiteReport suite_pairing(const Options& o, const Bicharacter& chi) {
  SuiteReport rep;
  const int cap = degree_cap(o, 4);
  for (const Lattice& mu : degrees_upto(chi.rank(), cap)) {
    const int pr = pairing_rank(chi, mu), nd = nichols_dim(chi, mu, cap);
    rep.expect(pr == nd, "pairing rank = Nichols dimension", chi.key(), to_string(mu), [&] {
      return "pairing rank " + std::to_string(pr) + ", dimension " + std::to_string(nd);
    });
  }
  return rep;
}

SuiteReport suite_serre(const Options& o, const Bicharacter& chi) {
  const CartanScheme s = orbit(o, chi);
  s.require_complete();
  SuiteReport rep;
  const int cap = degree_cap(o, kDefaultDegreeCap);
  for (std::size_t a = 0; a < s.objects.size(); ++a) {
    const Bicharacter& x = s.objects[a];
    std::vector<std::string> labels;
    const auto gens = serre_generators(x, &labels);
    for (std::size_t k = 0; k < gens.size(); ++k)
      rep.expect(nichols_is_zero(x, gens[k], cap), "Serre element vanishes in the Nichols algebra",
                 "object " + std::to_string(a), labels[k], [&] { return gens[k].to_string(); });
    rep.merge(check_TpSerre(x, cap));
  }
  return rep;
}

SuiteReport suite_nichchar(const Options& o, const Bicharacter& chi) {
  CharacterizationOptions co;
  co.cap = degree_cap(o, kDefaultDegreeCap);
  co.object_cap = o.object_cap;
  co.jobs = o.jobs;
  return nichols_characterization(chi, [](const Bicharacter& x) { return serre_generators(x); }, co);
}

json cmd_verify(const Options& o, const Input& in) {
  const Bicharacter& chi = in.chi;
  const int cap = degree_cap(o, kDefaultDegreeCap);
  SuiteReport rep;
  json extra;
  if (o.suite == "relations") {
    rep = suite_relations(o, chi);
  } else if (o.suite == "coxeter") {
    json pairs = json::array();
    for (int i = 0; i < chi.rank(); ++i)
      for (int j = i + 1; j < chi.rank(); ++j) {
        const CoxeterResult c = coxeter_check(chi, i, j, cap);
        json a = json::array();
        for (const auto& x : c.a) a.push_back(x.to_string());
        pairs.push_back({{"i", i + 1}, {"j", j + 1}, {"M", c.M}, {"a", a}, {"holds", c.holds}});
        rep.merge(c.report);
      }
    extra["pairs"] = pairs;
  } else if (o.suite == "serre") {
    rep = suite_serre(o, chi);
  } else if (o.suite == "pairing") {
    rep = suite_pairing(o, chi);
  } else if (o.suite == "lusztig-id") {
    rep = suite_lusztig_id(o, chi);
  } else if (o.suite == "longest") {
    const LongestResult l = longest_factorization(chi, cap);
    json w = json::array(), tau = json::array(), lam = json::array();
    for (int p : l.word) w.push_back(p + 1);
    for (int t : l.tau) tau.push_back(t + 1);
    for (const auto& x : l.lambda) lam.push_back(x.to_string());
    extra["longest_word"] = w;
    extra["tau"] = tau;
    extra["lambda"] = lam;
    rep = l.report;
  } else if (o.suite == "nichchar") {
    rep = suite_nichchar(o, chi);
  }
  json r = extra;
  r["suite"] = o.suite;
  r["report"] = rep.to_json();
  r["checks"] = rep.entries.size();
  r["failures"] = rep.failures();
  r["status"] = rep.ok() ? "pass" : "fail";
  return r;
}

// -- output -----------------------------------------------------------------

void print_text(const json& r, std::ostream& out) {
  if (r.contains("report")) {
    for (const auto& e : r["report"]) {
      out << e["status"].get<std::string>() << "  " << e["check"].get<std::string>();
      if (!e["word"].get<std::string>().empty()) out << "  [" << e["word"].get<std::string>() << "]";
      if (e.contains("witness")) out << "  " << e["witness"].get<std::string>();
      out << "\n";
    }
  }
  for (const auto& [k, v] : r.items()) {
    if (k == "report" || k == "scheme" || k == "roots" || k == "dims") continue;
    out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
  if (r.contains("dims"))
    for (const auto& row : r["dims"]) {
      out << to_string(row["degree"].get<Lattice>()) << "  dim " << row["dim"];
      if (row.contains("pbw")) out << "  pbw " << row["pbw"];
      out << "\n";
    }
}

int emit(const Options& o, const std::string& command, const Input& in, json r) {
  r["command"] = command;
  r["input"] = in.name;
  if (o.format == "dot") {
    if (command != "orbit") throw PreconditionError("dot output is only available for orbit");
    std::cout << to_dot(orbit(o, in.chi));
  } else if (o.format == "text") {
    print_text(r, std::cout);
  } else {
    std::cout << r.dump(2) << "\n";
  }
  return r.contains("status") && r["status"] == "fail" ? 1 : 0;
}

int fail_with(const Options& o, int code, const std::string& kind, const std::string& what, json extra = {}) {
  json r = extra.is_object() ? extra : json::object();
  r["error"] = kind;
  r["witness"] = what;
  if (o.format == "json")
    std::cout << r.dump(2) << "\n";
  else
    std::cout << kind << ": " << what << "\n";
  return code;
}

int cmd_catalog(const Options& o, const std::string& name) {
  json r = json::array();
  if (!name.empty()) {
    const CatalogEntry* e = find_catalog(name);
    if (!e) return fail_with(o, 2, "unknown catalog entry", name);
    r.push_back(e->to_json());
  } else {
    for (const auto& e : catalog()) r.push_back(e.to_json());
  }
  if (o.format == "text") {
    for (const auto& e : r) {
      std::cout << e["name"].get<std::string>() << "  " << e["note"].get<std::string>() << "\n";
      for (const auto& [k, v] : e["expected"].items())
        if (!v.is_null()) std::cout << "  " << k << " = " << v["value"] << "  (" << v["source"].get<std::string>() << ")\n";
    }
  } else {
    std::cout << r.dump(2) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nichols algebras of diagonal type: Weyl groupoids, root systems and Lusztig maps"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* c) {
    c->add_option("input,--input", o.input, "FILE or catalog:NAME")->required();
    c->add_option("--format", o.format, "json, text or dot")->check(CLI::IsMember({"json", "text", "dot"}));
    c->add_option("--degree-cap", o.degree_cap, "maximal total degree")->check(CLI::PositiveNumber);
    c->add_option("--object-cap", o.object_cap, "maximal number of objects explored")->check(CLI::PositiveNumber);
    c->add_option("--morphism-cap", o.morphism_cap, "maximal number of morphisms enumerated")
        ->check(CLI::PositiveNumber);
    c->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
    c->add_option("--seed", o.seed, "seed for sampled scalars (0 keeps the fixed ones)");
  };
  auto* analyze = app.add_subcommand("analyze", "p-finiteness, Cartan matrix, heights and lambda table");
  auto* orbit_cmd = app.add_subcommand("orbit", "export the Cartan scheme of the orbit");
  auto* roots = app.add_subcommand("roots", "real roots at every object");
  auto* hilbert = app.add_subcommand("hilbert", "Nichols algebra dimensions per degree");
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  auto* catalog_cmd = app.add_subcommand("catalog", "list the example catalog or show one entry");
  std::string entry;
  catalog_cmd->add_option("name", entry, "entry name");
  catalog_cmd->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  for (auto* c : {analyze, orbit_cmd, roots, hilbert}) common(c);
  verify->add_option("suite", o.suite, "relations, coxeter, serre, pairing, lusztig-id, longest or nichchar")
      ->required()
      ->check(CLI::IsMember({"relations", "coxeter", "serre", "pairing", "lusztig-id", "longest", "nichchar"}));
  common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  if (command == "catalog") return cmd_catalog(o, entry);
  try {
    const Input in = load(o.input);
    if (command == "analyze") return emit(o, command, in, cmd_analyze(o, in));
    if (command == "orbit") return emit(o, command, in, cmd_orbit(o, in));
    if (command == "roots") return emit(o, command, in, cmd_roots(o, in));
    if (command == "hilbert") return emit(o, command, in, cmd_hilbert(o, in));
    return emit(o, command, in, cmd_verify(o, in));
  } catch (const NotPFinite& e) {
    return fail_with(o, 2, "not p-finite", e.what(), {{"object", e.object_key}, {"p", e.p + 1}, {"j", e.j + 1}});
  } catch (const PreconditionError& e) {
    return fail_with(o, 2, "precondition", e.what());
  } catch (const IncompleteGroupoid& e) {
    return fail_with(o, 2, "precondition", e.what());
  } catch (const DegreeCapExceeded& e) {
    return fail_with(o, 2, "degree cap", e.what());
  } catch (const ParseError& e) {
    return fail_with(o, 2, "parse error", e.what());
  } catch (const std::exception& e) {
    return fail_with(o, 1, "internal error", e.what());
  }
}
