#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "epi/fq_field.hpp"

namespace epi {

enum class StepKind { Base, Unramified, Tame };

/// One step of a tower description.
///  Base:        F = F_{p^f}((t)).
///  Unramified:  residue field grows by `degree`, uniformizer unchanged.
///  Tame:        new uniformizer s with s^degree = g^unit_log * (old uniformizer),
///               where g is the canonical generator of the current residue field.
struct TowerStep {
  StepKind kind = StepKind::Base;
  int p = 0;
  int f = 0;
  int degree = 1;
  std::int64_t unit_log = 0;
  bool operator==(const TowerStep&) const = default;
};

using TowerSpec = std::vector<TowerStep>;

class LocalField;
using FieldPtr = std::shared_ptr<const LocalField>;

/// A field of the tame tower k_L((w)) over F = F_q((t)).  Each field
/// records its absolute ramification index E and the residue constant U
/// with w^E = U * t.
class LocalField {
 public:
  StepKind kind() const { return spec_.back().kind; }
  const TowerSpec& spec() const { return spec_; }
  const FieldPtr& parent() const { return parent_; }
  const FqPtr& residue() const { return residue_; }

  int p() const { return residue_->p(); }
  std::uint32_t q() const { return residue_->order(); }
  /// Ramification index and residue degree over the base field.
  int e() const { return e_; }
  int f() const { return f_; }
  /// Relative degree of the last step.
  int step_degree() const { return spec_.back().degree; }
  /// Unit of the last tame step, in the parent's residue field (= ours).
  FqElem step_unit() const { return step_unit_; }
  /// U with w^E = U t.
  FqElem t_unit() const { return t_unit_; }
  /// For an unramified step: g_parent maps to g^multiplier.
  std::int64_t parent_embed_multiplier() const { return parent_mult_; }
  /// Composite multiplier from the base residue field.
  std::int64_t base_embed_multiplier() const { return base_mult_; }
  int depth() const { return static_cast<int>(spec_.size()) - 1; }

  /// The root of the tower.
  FieldPtr base() const;

  bool same_as(const LocalField& other) const { return spec_ == other.spec_; }
  /// True when `k` is this field or one of its ancestors.
  bool has_ancestor(const LocalField& k) const;
  /// Degree [this : k]; throws when k is not an ancestor.
  int degree_over(const LocalField& k) const;

  /// Image of a residue element of ancestor `k` in our residue field.
  FqElem embed_residue_from(const LocalField& k, FqElem a) const;

  std::string describe() const;

  LocalField(TowerSpec spec, FieldPtr parent, FqPtr residue, int e, int f,
             FqElem step_unit, FqElem t_unit, std::int64_t parent_mult,
             std::int64_t base_mult);

 private:
  TowerSpec spec_;
  FieldPtr parent_;
  FqPtr residue_;
  int e_;
  int f_;
  FqElem step_unit_;
  FqElem t_unit_;
  std::int64_t parent_mult_;
  std::int64_t base_mult_;
};

/// Build (and validate) a tower.  Tame degrees must be prime to p.
FieldPtr make_field(const TowerSpec& spec);

/// Convenience constructors.
FieldPtr base_field(int p, int f);
FieldPtr extend_unramified(const FieldPtr& k, int degree);
FieldPtr extend_tame(const FieldPtr& k, int e, std::int64_t unit_log);

/// Smallest k with g_small -> g_big^{k (Q-1)/(q-1)} a root of the modulus
/// of the small field, returned as the log multiplier k (Q-1)/(q-1).
std::int64_t residue_embedding_multiplier(const FqField& small,
                                          const FqField& big);

/// Chain of fields from the child of `k` down to `l` (inclusive).
std::vector<FieldPtr> chain_between(const FieldPtr& l, const FieldPtr& k);

}  // namespace epi
