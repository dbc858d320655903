#pragma once

#include <vector>

#include "epi/field_tower.hpp"

namespace epi {

/// Truncated Laurent series sum_i c_i w^{start+i} + O(w^{abs_prec}) over
/// the residue field of a tower field.  Finite sums may be flagged exact.
class LFElem {
 public:
  static constexpr int kExact = 1 << 28;

  LFElem() = default;
  LFElem(FieldPtr k, int start, std::vector<FqElem> coeffs, int abs_prec);

  static LFElem zero(const FieldPtr& k, int abs_prec = kExact);
  static LFElem one(const FieldPtr& k);
  static LFElem constant(const FieldPtr& k, FqElem a);
  /// a * w^m, exact.
  static LFElem monomial(const FieldPtr& k, FqElem a, int m);

  const FieldPtr& field() const { return field_; }
  int start() const { return start_; }
  const std::vector<FqElem>& coeffs() const { return coeffs_; }
  int abs_prec() const { return abs_prec_; }
  /// Relative precision N = abs_prec - valuation (0 for a zero element).
  int rel_prec() const;
  bool exact() const { return abs_prec_ >= kExact; }

  bool is_zero() const { return coeffs_.empty(); }
  /// Lower bound on the valuation: start for nonzero, abs_prec for zero.
  int val_lower() const { return coeffs_.empty() ? abs_prec_ : start_; }
  int valuation() const;
  FqElem leading() const;
  /// Coefficient of w^k; throws PrecisionError if k >= abs_prec.
  FqElem coeff(int k) const;

  LFElem operator+(const LFElem& o) const;
  LFElem operator-(const LFElem& o) const;
  LFElem operator-() const;
  LFElem operator*(const LFElem& o) const;
  LFElem scale(FqElem a) const;
  /// Multiply by w^k.
  LFElem shift(int k) const;
  LFElem truncated(int abs_prec) const;
  LFElem pow(int k, int rel_prec = 0) const;
  /// Inverse to relative precision `rel_prec` (ignored for monomials).
  LFElem inverse(int rel_prec) const;

  /// x == y modulo w^level; throws if either is not known that far.
  bool congruent(const LFElem& o, int level) const;

  bool operator==(const LFElem& o) const;

 private:
  void normalize();
  void check_same(const LFElem& o) const;

  FieldPtr field_;
  int start_ = 0;
  std::vector<FqElem> coeffs_;
  int abs_prec_ = kExact;
};

/// Image of x in a descendant field l.
LFElem embed(const LFElem& x, const FieldPtr& l);

/// t (the base uniformizer) as an exact element of k.
LFElem base_uniformizer_in(const FieldPtr& k);

}  // namespace epi
