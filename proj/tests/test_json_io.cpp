#include "doctest.h"
#include "epi/errors.hpp"
#include "epi/field_tower.hpp"
#include "epi/json_io.hpp"

using namespace epi;

namespace {

Json reparse(const Json& j) { return parse_document(canonical_dump(j)); }

}  // namespace

TEST_CASE("field round trip") {
  FieldPtr f = base_field(3, 1);
  for (const FieldPtr& k : {f, extend_unramified(f, 2), extend_tame(extend_unramified(f, 2), 4, 2),
                           extend_tame(extend_tame(f, 2, 1), 5, 3)}) {
    Json j = field_to_json(k);
    FieldPtr back = field_from_json(reparse(j));
    CHECK(back->same_as(*k));
    CHECK(field_to_json(back) == j);
  }
}

TEST_CASE("element round trip") {
  FieldPtr k = extend_tame(extend_unramified(base_field(2, 1), 2), 3, 0);
  LFElem exact(k, -2, {FqElem{1}, FqElem{0}, FqElem{3}}, LFElem::kExact);
  LFElem approx(k, 1, {FqElem{2}, FqElem{1}}, 5);
  for (const auto& x : {exact, approx, LFElem::zero(k), LFElem::zero(k, 4)}) {
    LFElem y = elem_from_json(k, reparse(elem_to_json(x)));
    CHECK(y == x);
    CHECK(y.abs_prec() == x.abs_prec());
  }
  CHECK(elem_to_json(exact)["prec"] == "exact");
}

TEST_CASE("character round trip") {
  FieldPtr f = base_field(3, 1);
  FieldPtr k = extend_unramified(f, 2);
  MultChar tame = build_multchar(k, QmodZ(1, 4), 3);
  MultChar wild = build_multchar(k, QmodZ(1, 3), 1, {WildCoeff{1, LFElem::monomial(k, FqElem{5}, -1)}});
  MultChar pulled = pullback_norm(wild, extend_tame(k, 2, 1));
  for (const MultChar& chi : {tame, wild, pulled}) {
    Json j = multchar_to_json(chi);
    MultChar back = multchar_from_json(chi.field(), reparse(j));
    CHECK(multchar_to_json(back) == j);
    LFElem x = LFElem(chi.field(), -1, {FqElem{2}, FqElem{7}, FqElem{1}}, 6);
    CHECK(back(x) == chi(x));
  }
  CHECK(multchar_from_json(f, Json("trivial")).is_trivial());
}

TEST_CASE("datum round trip and enumeration document") {
  FieldPtr f = base_field(5, 1);
  MultChar omega = build_multchar(f, QmodZ(1, 2), 2);
  auto ds = enumerate_datums(f, 5, omega);
  for (const auto& d : ds) {
    EpipelagicDatum back = datum_from_json(reparse(datum_to_json(d)));
    CHECK(equivalent_datums(back, d));
    CHECK(back.eps_index == d.eps_index);
  }
  Json doc = enumeration_to_json(ds);
  CHECK(doc["count"] == 20);
  CHECK(reparse(doc) == doc);
  CHECK(canonical_dump(doc) == canonical_dump(reparse(doc)));
}

TEST_CASE("record documents re-parse to equal values") {
  FieldPtr f = base_field(2, 1);
  auto d = enumerate_datums(f, 2, trivial_multchar(f)).front();
  auto rec = parameter_record(d);
  Json doc = parameter_to_json(rec);
  CHECK(reparse(doc) == doc);
  CHECK(doc["T"]["e"] == 3);
  CHECK(doc["T"]["f"] == 2);
  CHECK(field_from_json(doc["T"])->same_as(*rec.imprimitivity.t));
  CHECK(datum_from_json(doc["input"]).det_mu == d.det_mu);
  for (const auto& dj : doc["kernel"]["deltas"]) {
    MultChar c = multchar_from_json(rec.imprimitivity.t, dj);
    CHECK(c.swan() == 1);
  }
  auto d6 = enumerate_datums(f, 6, trivial_multchar(f)).front();
  Json desc = descent_to_json(descend_tame(d6));
  CHECK(reparse(desc) == desc);
  CHECK(datum_from_json(desc["datumK"]).n == 2);
}

TEST_CASE("schema violations") {
  Json good = datum_to_json(enumerate_datums(base_field(3, 1), 3, trivial_multchar(base_field(3, 1)))[0]);
  auto bad = [&](auto mutate) {
    Json j = good;
    mutate(j);
    CHECK_THROWS_AS(datum_from_json(j), SchemaError);
  };
  bad([](Json& j) { j["extra"] = 1; });
  bad([](Json& j) { j.erase("n"); });
  bad([](Json& j) { j["n"] = "three"; });
  bad([](Json& j) { j["detAlpha"]["mu"] = "h^1"; });
  bad([](Json& j) { j["detAlpha"]["mu"] = "0"; });
  bad([](Json& j) { j["epsIndex"] = 7; });
  bad([](Json& j) { j["field"]["steps"] = Json::array({{{"kind", "wild"}, {"e", 3}}}); });
  bad([](Json& j) { j["field"]["steps"] = Json::array({{{"kind", "tame"}, {"e", 3}, {"unit", "g^0"}}}); });
  bad([](Json& j) { j["field"]["e"] = 2; });
  bad([](Json& j) { j["omega"] = {{"onPi", "1/2"}}; });
  bad([](Json& j) { j["omega"] = {{"onPi", 0.5}, {"onMu", 0}}; });
  bad([](Json& j) { j["omega"] = "nontrivial"; });
  CHECK_THROWS_AS(parse_document("{\"field\":"), SchemaError);
  CHECK_THROWS_AS(qmodz_from_json(Json("1/0")), SchemaError);
}
