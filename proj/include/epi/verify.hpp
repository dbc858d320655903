#pragma once

#include <string>
#include <vector>

#include "epi/json_io.hpp"

namespace epi {

struct CheckResult {
  int criterion = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

struct CaseSpec {
  std::string id;
  int p = 0;
  int f = 0;
  int r = 0;
  bool oracle = false;  // small enough for the brute-force lab
};

struct CaseReport {
  CaseSpec spec;
  std::vector<CheckResult> checks;
  bool all_pass() const;
};

struct VerifyReport {
  std::vector<CaseReport> cases;
  std::vector<CheckResult> global;  // classification checks, independent of a case
  std::string fault;
  bool all_pass() const;
};

/// p2r1, p3r1, p2f2r1 (with the lab), p5r1, p2r2 (congruence only).
const std::vector<CaseSpec>& known_cases();

/// Fault names: "", "root", "delta", "xi", "lab", "herbrand", "eps".
const std::vector<std::string>& known_faults();

/// Runs the invariant suite; an empty id list means every known case.
VerifyReport run_verification(const std::vector<std::string>& ids, const std::string& fault = "");

/// Residue and ramification test for an F-embedding T -> L, by search over
/// residue embeddings and e_T-th roots.
bool tame_field_embeds(const FieldPtr& t, const FieldPtr& l);

Json verify_to_json(const VerifyReport& r);

}  // namespace epi
