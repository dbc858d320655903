#pragma once

#include <utility>
#include <vector>

#include "epi/laurent.hpp"

namespace epi {

struct NormTrace {
  LFElem norm;
  LFElem trace;
};

/// Norm and trace of x in L down to the ancestor K, computed through the
/// regular representation of each step.  When `out_prec` is given, both
/// results must be known modulo w_K^{out_prec}, else PrecisionError.
NormTrace norm_trace(const FieldPtr& l, const FieldPtr& k, const LFElem& x,
                     int out_prec = -LFElem::kExact);

LFElem norm_down(const LFElem& x, const FieldPtr& k);
LFElem trace_down(const LFElem& x, const FieldPtr& k);

/// Coordinates of x in the standard basis of the last step of its field
/// (1, s, ..., s^{e-1} for a tame step; 1, g, ..., g^{d-1} for an
/// unramified one), as elements of the parent.
std::vector<LFElem> step_coordinates(const LFElem& x);

/// Graded piece U^k / U^{k+1} (k >= 1) or mu (k = 0) of K, identified
/// with the residue field.
struct UnitQuotient {
  FieldPtr field;
  int level = 1;
  std::uint32_t size() const;
  /// Residue class of a unit in U^level (level >= 1: coefficient of w^level
  /// of x / leading; level 0: leading coefficient).
  FqElem to_residue(const LFElem& x) const;
  /// Canonical representative: 1 + a w^level, or [a] when level = 0.
  LFElem from_residue(FqElem a) const;
};

UnitQuotient unit_quotients(const FieldPtr& k, int level);

/// Teichmuller representative of a residue class; exact, with [a]^{q-1} = 1.
LFElem teichmuller(const FieldPtr& k, FqElem a);

}  // namespace epi
