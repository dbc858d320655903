// Command-line front end: enumerate, descend, parameter, twists, oracle, verify.
#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "epi/errors.hpp"
#include "epi/field_tower.hpp"
#include "epi/json_io.hpp"
#include "epi/verify.hpp"

using namespace epi;

namespace {

enum Exit { kOk = 0, kInvariant = 1, kSchema = 2 };

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Output is assembled completely before anything is written.
void emit(const Json& doc, const std::string& out) {
  std::string text = canonical_dump(doc);
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw Error("cannot write " + out);
  f << text;
}

Json error_doc(const std::string& kind, const std::string& msg) {
  return {{"error", {{"kind", kind}, {"message", msg}}}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Epipelagic parameters: GL side, Galois side and the matrix lab"};
  app.require_subcommand(1);
  std::string out;
  bool verbose = false;
  app.add_option("--out", out, "write the JSON document here instead of stdout");
  app.add_flag("-v,--verbose", verbose, "progress on stderr");

  int p = 2, f = 1, n = 2;
  std::string omega = "trivial";
  auto* en = app.add_subcommand("enumerate", "all datums with a given central character");
  en->add_option("--p", p)->required();
  en->add_option("--f", f)->default_val(1);
  en->add_option("--n", n)->required();
  en->add_option("--omega", omega, "\"trivial\" or inline character JSON")->default_val("trivial");

  std::string datum_path, field_path;
  auto* de = app.add_subcommand("descend", "tame descent n = e p^r");
  de->add_option("--datum", datum_path)->required();
  auto* pa = app.add_subcommand("parameter", "Langlands parameter data for n = p^r");
  pa->add_option("--datum", datum_path)->required();
  auto* tw = app.add_subcommand("twists", "order of the self-twist group over a tame field");
  tw->add_option("--field", field_path)->required();
  tw->add_option("--datum", datum_path)->required();
  auto* orc = app.add_subcommand("oracle", "brute-force root set from the matrix lab");
  orc->add_option("--datum", datum_path)->required();
  orc->add_option("--field", field_path, "defaults to the imprimitivity field");

  bool all = false;
  std::vector<std::string> cases;
  std::string fault;
  auto* ve = app.add_subcommand("verify", "run the invariant suite");
  ve->add_flag("--all", all, "every known case");
  ve->add_option("--case", cases, "case id (repeatable)");
  ve->add_option("--fault", fault, "inject a single-coefficient fault");

  for (auto* sc : {en, de, pa, tw, orc, ve}) sc->add_option("--out", out, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kSchema;
  }

  try {
    Json doc;
    int status = kOk;
    if (*en) {
      FieldPtr base = base_field(p, f);
      MultChar w = omega == "trivial" ? trivial_multchar(base)
                                      : multchar_from_json(base, parse_document(omega));
      doc = enumeration_to_json(enumerate_datums(base, n, w));
    } else if (*de) {
      EpipelagicDatum d = datum_from_json(parse_document(read_file(datum_path)));
      DescentRecord r = descend_tame(d);
      doc = descent_to_json(r);
      if (!r.all_checked_hold()) status = kInvariant;
    } else if (*pa) {
      EpipelagicDatum d = datum_from_json(parse_document(read_file(datum_path)));
      ParameterRecord r = parameter_record(d);
      doc = parameter_to_json(r);
      for (const auto& c : r.failed_checks) std::cerr << "invariant failed: " << c << "\n";
      if (!r.failed_checks.empty()) status = kInvariant;
    } else if (*tw) {
      EpipelagicDatum d = datum_from_json(parse_document(read_file(datum_path)));
      FieldPtr l = field_from_json(parse_document(read_file(field_path)));
      auto roots = congruence_roots(l, d);
      Json rs = Json::array();
      for (auto g : roots.roots) rs.push_back(l->residue()->format(g));
      doc = {{"field", field_to_json(l)},
             {"twistOrder", 1 + roots.roots.size()},
             {"roots", rs},
             {"rootValuation", roots.valuation}};
    } else if (*orc) {
      EpipelagicDatum d = datum_from_json(parse_document(read_file(datum_path)));
      ImprimitivityResult imp = imprimitivity_field(d);
      FieldPtr k = field_path.empty() ? imp.t : field_from_json(parse_document(read_file(field_path)));
      int r = 0;
      for (int m = 1; m < d.n; m *= d.field->p()) ++r;
      OracleResult res = oracle_root_set(k, d.field->p(), r, d.det_mu);
      bool same_field = k->same_as(*imp.t);
      doc = oracle_to_json(res, same_field ? &imp : nullptr);
      if (same_field && !(res.roots == imp.congruence.roots)) status = kInvariant;
    } else if (*ve) {
      if (!all && cases.empty()) throw SchemaError("verify: pass --all or at least one --case");
      const auto& fs = known_faults();
      if (std::find(fs.begin(), fs.end(), fault) == fs.end())
        throw SchemaError("verify: unknown fault \"" + fault + "\"");
      for (const auto& c : cases) {
        const auto& ks = known_cases();
        if (std::none_of(ks.begin(), ks.end(), [&](const CaseSpec& k) { return k.id == c; }))
          throw SchemaError("verify: unknown case \"" + c + "\"");
      }
      if (verbose) std::cerr << "running invariant suite\n";
      VerifyReport rep = run_verification(all ? std::vector<std::string>{} : cases, fault);
      doc = verify_to_json(rep);
      if (!rep.all_pass()) status = kInvariant;
    }
    emit(doc, out);
    return status;
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kSchema;
  } catch (const Error& e) {
    emit(error_doc(typeid(e) == typeid(InvariantViolation) ? "invariant" : "computation", e.what()), out);
    return kInvariant;
  }
}
