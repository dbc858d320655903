#include "epi/json_io.hpp"

#include <algorithm>
#include <set>

#include "epi/errors.hpp"
#include "epi/field_tower.hpp"

namespace epi {

namespace {

void check_keys(const Json& j, const std::set<std::string>& required,
                const std::set<std::string>& optional, const std::string& what) {
  if (!j.is_object()) throw SchemaError(what + ": expected an object");
  for (const auto& k : required)
    if (!j.contains(k)) throw SchemaError(what + ": missing key \"" + k + "\"");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!required.count(it.key()) && !optional.count(it.key()))
      throw SchemaError(what + ": unknown key \"" + it.key() + "\"");
}

std::int64_t get_int(const Json& j, const std::string& key, const std::string& what) {
  const Json& v = j.at(key);
  if (!v.is_number_integer()) throw SchemaError(what + ": \"" + key + "\" must be an integer");
  return v.get<std::int64_t>();
}

std::string get_str(const Json& j, const std::string& key, const std::string& what) {
  const Json& v = j.at(key);
  if (!v.is_string()) throw SchemaError(what + ": \"" + key + "\" must be a string");
  return v.get<std::string>();
}

FqElem parse_residue(const FqField& k, const std::string& text, const std::string& what) {
  try {
    return k.parse(text);
  } catch (const Error& e) {
    throw SchemaError(what + ": " + e.what());
  }
}

}  // namespace

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse_document(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
}

Json qmodz_to_json(const QmodZ& x) { return x.str(); }

QmodZ qmodz_from_json(const Json& j) {
  if (!j.is_string()) throw SchemaError("rational: expected a string \"a/b\"");
  try {
    return QmodZ::parse(j.get<std::string>());
  } catch (const Error& e) {
    throw SchemaError(std::string("rational: ") + e.what());
  }
}

Json field_to_json(const FieldPtr& k) {
  const TowerSpec& spec = k->spec();
  Json steps = Json::array();
  FieldPtr cur = base_field(spec[0].p, spec[0].f);
  for (std::size_t i = 1; i < spec.size(); ++i) {
    const TowerStep& s = spec[i];
    if (s.kind == StepKind::Unramified) {
      steps.push_back({{"kind", "unramified"}, {"degree", s.degree}});
      cur = extend_unramified(cur, s.degree);
    } else {
      const FqField& r = *cur->residue();
      steps.push_back({{"kind", "tame"}, {"e", s.degree}, {"unit", r.format(r.exp(s.unit_log))}});
      cur = extend_tame(cur, s.degree, s.unit_log);
    }
  }
  return {{"p", spec[0].p}, {"baseF", spec[0].f}, {"steps", steps}, {"e", k->e()}, {"f", k->f()}};
}

FieldPtr field_from_json(const Json& j) {
  const std::string what = "field";
  check_keys(j, {"p", "baseF"}, {"steps", "e", "f"}, what);
  int p = static_cast<int>(get_int(j, "p", what));
  int f = static_cast<int>(get_int(j, "baseF", what));
  FieldPtr cur;
  try {
    cur = base_field(p, f);
  } catch (const Error& e) {
    throw SchemaError(what + ": " + e.what());
  }
  if (j.contains("steps")) {
    if (!j["steps"].is_array()) throw SchemaError(what + ": \"steps\" must be an array");
    for (const auto& s : j["steps"]) {
      if (!s.is_object() || !s.contains("kind")) throw SchemaError(what + ": step without kind");
      std::string kind = get_str(s, "kind", "step");
      try {
        if (kind == "unramified") {
          check_keys(s, {"kind", "degree"}, {}, "unramified step");
          cur = extend_unramified(cur, static_cast<int>(get_int(s, "degree", "step")));
        } else if (kind == "tame") {
          check_keys(s, {"kind", "e", "unit"}, {}, "tame step");
          FqElem u = parse_residue(*cur->residue(), get_str(s, "unit", "step"), "tame step");
          if (u.code == 0) throw SchemaError("tame step: unit must be nonzero");
          cur = extend_tame(cur, static_cast<int>(get_int(s, "e", "step")), cur->residue()->log(u));
        } else {
          throw SchemaError(what + ": unknown step kind \"" + kind + "\"");
        }
      } catch (const DomainError& e) {
        throw SchemaError(std::string("field step: ") + e.what());
      }
    }
  }
  if (j.contains("e") && get_int(j, "e", what) != cur->e())
    throw SchemaError(what + ": \"e\" does not match the steps");
  if (j.contains("f") && get_int(j, "f", what) != cur->f())
    throw SchemaError(what + ": \"f\" does not match the steps");
  return cur;
}

Json elem_to_json(const LFElem& x) {
  const FqField& k = *x.field()->residue();
  Json coeffs = Json::array();
  for (FqElem c : x.coeffs()) coeffs.push_back(k.format(c));
  Json prec = x.exact() ? Json("exact") : Json(x.abs_prec());
  return {{"v", x.start()}, {"coeffs", coeffs}, {"prec", prec}};
}

LFElem elem_from_json(const FieldPtr& k, const Json& j) {
  const std::string what = "element";
  check_keys(j, {"v", "coeffs", "prec"}, {}, what);
  int v = static_cast<int>(get_int(j, "v", what));
  if (!j["coeffs"].is_array()) throw SchemaError(what + ": \"coeffs\" must be an array");
  std::vector<FqElem> cs;
  for (const auto& c : j["coeffs"]) {
    if (!c.is_string()) throw SchemaError(what + ": coefficients are strings");
    cs.push_back(parse_residue(*k->residue(), c.get<std::string>(), what));
  }
  int prec = LFElem::kExact;
  if (j["prec"].is_string()) {
    if (j["prec"] != "exact") throw SchemaError(what + ": \"prec\" must be an integer or \"exact\"");
  } else {
    prec = static_cast<int>(get_int(j, "prec", what));
  }
  try {
    return LFElem(k, v, cs, prec);
  } catch (const Error& e) {
    throw SchemaError(what + ": " + e.what());
  }
}

Json multchar_to_json(const MultChar& chi) {
  if (!chi.explicit_form())
    return {{"normPullback", multchar_to_json(*chi.pulled_from())},
            {"from", field_to_json(chi.pulled_from()->field())}};
  Json wild = Json::array();
  for (const auto& w : chi.wild()) wild.push_back({{"i", w.i}, {"c", elem_to_json(w.c)}});
  return {{"onPi", qmodz_to_json(chi.on_uniformizer())}, {"onMu", chi.on_mu()}, {"wild", wild}};
}

MultChar multchar_from_json(const FieldPtr& k, const Json& j) {
  const std::string what = "character";
  if (j.is_string()) {
    if (j == "trivial") return trivial_multchar(k);
    throw SchemaError(what + ": only \"trivial\" is accepted as a string");
  }
  if (j.is_object() && j.contains("normPullback")) {
    check_keys(j, {"normPullback", "from"}, {}, what);
    FieldPtr from = field_from_json(j["from"]);
    if (!k->has_ancestor(*from)) throw SchemaError(what + ": pullback source is not below the field");
    return pullback_norm(multchar_from_json(from, j["normPullback"]), k);
  }
  check_keys(j, {"onPi", "onMu"}, {"wild"}, what);
  QmodZ on_pi = qmodz_from_json(j["onPi"]);
  std::int64_t on_mu = get_int(j, "onMu", what);
  std::vector<WildCoeff> wild;
  if (j.contains("wild")) {
    if (!j["wild"].is_array()) throw SchemaError(what + ": \"wild\" must be an array");
    for (const auto& w : j["wild"]) {
      check_keys(w, {"i", "c"}, {}, "wild component");
      wild.push_back({static_cast<int>(get_int(w, "i", what)), elem_from_json(k, w["c"])});
    }
  }
  try {
    return build_multchar(k, on_pi, on_mu, wild);
  } catch (const DomainError& e) {
    throw SchemaError(what + ": " + e.what());
  }
}

Json datum_to_json(const EpipelagicDatum& d) {
  return {{"field", field_to_json(d.field)},
          {"n", d.n},
          {"detAlpha", {{"mu", d.field->residue()->format(d.det_mu)}}},
          {"omega", multchar_to_json(d.omega)},
          {"epsIndex", d.eps_index}};
}

EpipelagicDatum datum_from_json(const Json& j) {
  const std::string what = "datum";
  check_keys(j, {"field", "n", "detAlpha", "omega", "epsIndex"}, {}, what);
  EpipelagicDatum d;
  d.field = field_from_json(j["field"]);
  d.n = static_cast<int>(get_int(j, "n", what));
  check_keys(j["detAlpha"], {"mu"}, {}, "detAlpha");
  d.det_mu = parse_residue(*d.field->residue(), get_str(j["detAlpha"], "mu", "detAlpha"), "detAlpha");
  d.omega = multchar_from_json(d.field, j["omega"]);
  d.eps_index = static_cast<int>(get_int(j, "epsIndex", what));
  try {
    d.validate();
  } catch (const DomainError& e) {
    throw SchemaError(what + ": " + e.what());
  }
  return d;
}

Json enumeration_to_json(const std::vector<EpipelagicDatum>& ds) {
  Json arr = Json::array();
  for (const auto& d : ds) {
    Json x = datum_to_json(d);
    x["eps"] = qmodz_to_json(d.eps_value());
    arr.push_back(x);
  }
  return {{"count", ds.size()}, {"datums", arr}};
}

Json descent_to_json(const DescentRecord& r) {
  Json rel = Json::array();
  for (const auto& x : r.relations) {
    Json o = {{"name", x.name}, {"statement", x.statement}, {"symbolic", x.symbolic}};
    if (!x.symbolic) o["holds"] = x.holds;
    rel.push_back(o);
  }
  return {{"K", field_to_json(r.k)},
          {"e", r.e},
          {"pr", r.pr},
          {"datumK", datum_to_json(r.datum_k)},
          {"omegaKSymbolic", r.omega_k_symbolic},
          {"epsKSymbolic", r.eps_k_symbolic},
          {"deltaKF", r.delta_kf},
          {"lambdaKF", r.lambda_kf},
          {"normSign", r.norm_sign},
          {"relations", rel}};
}

namespace {

Json residue_list(const FqField& k, const std::vector<FqElem>& v) {
  Json a = Json::array();
  for (FqElem x : v) a.push_back(k.format(x));
  return a;
}

}  // namespace

Json parameter_to_json(const ParameterRecord& r) {
  const auto& imp = r.imprimitivity;
  const FqField& kt = *imp.t->residue();
  Json subs = Json::array();
  for (const auto& s : imp.proper_subfields)
    subs.push_back({{"f", s.residue_degree}, {"e", s.e}, {"unitLog", s.unit_log}, {"roots", s.roots}});
  Json imp_j = {
      {"roots", residue_list(kt, imp.congruence.roots)},
      {"rootValuation", imp.congruence.valuation},
      {"polynomial",
       {{"exponent", imp.congruence.exponent},
        {"rhs", {{"mu", kt.format(imp.congruence.rhs_mu)}, {"v", -imp.congruence.exponent}}}}},
      {"properSubfields", subs}};

  const auto& k = r.kernel;
  Json deltas = Json::array();
  for (const auto& c : k.deltas) deltas.push_back(multchar_to_json(c));
  Json gens = Json::array();
  for (const auto& g : k.norm_generators) gens.push_back(elem_to_json(g));
  Json ker_j = {{"deltas", deltas},
                {"groupTable", k.group_table},
                {"normBasis", residue_list(kt, k.norm_basis)},
                {"normGenerators", gens},
                {"normIndex", k.norm_index},
                {"eET", k.e_et},
                {"dETConductor", k.d_et_conductor},
                {"dETTower", k.d_et_tower},
                {"dEK", k.d_ek},
                {"dKT", k.d_kt},
                {"cPsiE", k.c_psi_e}};

  Json act = {{"orbits", r.action.orbits},
              {"fixedPointFree", r.action.fixed_point_free},
              {"preservesRoots", r.action.preserves_roots}};

  Json graded = Json::object();
  for (std::uint32_t a = 0; a < kt.order(); ++a)
    graded[kt.format(FqElem{a})] = qmodz_to_json(r.xi.graded_values[a]);
  Json xi_j = {{"betaLead", kt.format(r.xi.beta_lead)},
               {"betaPrLead", kt.format(r.xi.beta_pr_lead)},
               {"tSideCoset", kt.format(r.xi.t_side_coset)},
               {"swan", r.xi.swan},
               {"artin", r.xi.artin},
               {"cPsiE", r.xi.c_psi_e},
               {"graded", graded},
               {"powerMatchesCentral", r.xi.power_matches_central}};

  return {{"input", datum_to_json(r.input)},
          {"T", field_to_json(imp.t)},
          {"imprimitivity", imp_j},
          {"kernel", ker_j},
          {"galoisAction", act},
          {"xi", xi_j},
          {"detSigma", multchar_to_json(r.det_sigma)},
          {"eps", qmodz_to_json(r.eps)},
          {"twistResolution", r.twist_resolution},
          {"failedChecks", r.failed_checks}};
}

Json oracle_to_json(const OracleResult& r, const ImprimitivityResult* imp) {
  const FqField& k = *r.field->residue();
  Json j = {{"field", field_to_json(r.field)},
            {"roots", residue_list(k, r.roots)},
            {"candidates", r.candidates},
            {"note", r.note}};
  if (imp) {
    j["congruenceRoots"] = residue_list(k, imp->congruence.roots);
    j["agree"] = imp->congruence.roots == r.roots;
  }
  return j;
}

}  // namespace epi
