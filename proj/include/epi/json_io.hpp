#pragma once

#include <string>

#include "json.hpp"

#include "epi/galois_side.hpp"
#include "epi/gl_side.hpp"
#include "epi/strata_lab.hpp"

namespace epi {

using Json = nlohmann::json;

/// Two-space indented, keys sorted, trailing newline.
std::string canonical_dump(const Json& j);
/// Parse text; malformed JSON raises SchemaError.
Json parse_document(const std::string& text);

Json qmodz_to_json(const QmodZ& x);
QmodZ qmodz_from_json(const Json& j);

/// {"p","baseF","steps":[{"kind":"unramified","degree"}|{"kind":"tame","e","unit"}],"e","f"}
Json field_to_json(const FieldPtr& k);
FieldPtr field_from_json(const Json& j);

/// {"v","coeffs":["g^k"|"0"],"prec":int|"exact"}
Json elem_to_json(const LFElem& x);
LFElem elem_from_json(const FieldPtr& k, const Json& j);

/// Explicit: {"onPi","onMu","wild":[{"i","c"}]}; pullback: {"normPullback":{...},"from":field}.
Json multchar_to_json(const MultChar& chi);
MultChar multchar_from_json(const FieldPtr& k, const Json& j);

/// {"field","n","detAlpha":{"mu"},"omega","epsIndex"}; "omega":"trivial" is accepted.
Json datum_to_json(const EpipelagicDatum& d);
EpipelagicDatum datum_from_json(const Json& j);

Json enumeration_to_json(const std::vector<EpipelagicDatum>& ds);
Json descent_to_json(const DescentRecord& r);
Json parameter_to_json(const ParameterRecord& r);
Json oracle_to_json(const OracleResult& r, const ImprimitivityResult* imp);

}  // namespace epi
