#pragma once

#include <memory>
#include <vector>

#include "epi/laurent.hpp"
#include "epi/qmodz.hpp"

namespace epi {

/// Additive character.  The base normalization on F = F_q((t)) is
/// x -> (1/p) Tr_{k/F_p}(coefficient of t^0); every other one is a
/// pullback psi_K o Tr_{L/K} of a parent.
class AddChar {
 public:
  const FieldPtr& field() const { return field_; }
  /// c(psi): psi is trivial on p^{-c} but not on p^{-c-1}.
  int level() const { return level_; }
  bool is_base() const { return parent_ == nullptr; }

  QmodZ operator()(const LFElem& x) const;

  /// psi o Tr_{L/K} for a descendant L.
  AddChar pullback(const FieldPtr& l) const;

  static AddChar base(const FieldPtr& f);

 private:
  FieldPtr field_;
  int level_ = -1;
  std::shared_ptr<const AddChar> parent_;
};

/// psi_K = psi_F o Tr_{K/F} with psi_F normalized on the base of K's tower.
AddChar standard_addchar(const FieldPtr& k);

struct WildCoeff {
  int i = 1;
  LFElem c;
};

/// Multiplicative character of K^x with exact values in Q/Z.  Either
/// explicit (uniformizer value, exponent on the residue generator, and at
/// most a first graded wild component), or a pullback chi o N_{L/K}.
class MultChar {
 public:
  const FieldPtr& field() const { return field_; }
  int level() const { return level_; }
  int swan() const { return sw_; }
  /// Artin exponent: 0 unramified, sw + 1 otherwise.
  int artin() const;
  bool explicit_form() const { return base_ == nullptr; }

  /// Explicit data (for pullback nodes these are derived where possible).
  const QmodZ& on_uniformizer() const { return on_pi_; }
  std::int64_t on_mu() const { return on_mu_; }
  const std::vector<WildCoeff>& wild() const { return wild_; }
  const std::shared_ptr<const MultChar>& pulled_from() const { return base_; }

  QmodZ operator()(const LFElem& x) const;

  /// Pointwise product; both must be explicit over the same field.
  MultChar operator*(const MultChar& o) const;
  MultChar power(std::int64_t k) const;
  bool is_trivial() const;

  friend MultChar build_multchar(const FieldPtr& k, const QmodZ& on_uniformizer,
                                 std::int64_t on_mu, std::vector<WildCoeff> wild);
  friend MultChar pullback_norm(const MultChar& chi, const FieldPtr& l);

 private:
  FieldPtr field_;
  int level_ = 0;
  int sw_ = 0;
  QmodZ on_pi_;
  std::int64_t on_mu_ = 0;
  std::vector<WildCoeff> wild_;
  std::shared_ptr<const MultChar> base_;
};

/// Explicit character; wild components are supported on U^1/U^2 only
/// (higher ones are obtained as norm pullbacks).
MultChar build_multchar(const FieldPtr& k, const QmodZ& on_uniformizer,
                        std::int64_t on_mu, std::vector<WildCoeff> wild = {});

MultChar trivial_multchar(const FieldPtr& k);

/// chi o N_{L/K}.
MultChar pullback_norm(const MultChar& chi, const FieldPtr& l);

/// c(psi) found by direct evaluation on a * w^j for every residue a.
int measure_addchar_level(const AddChar& psi, int search_from = -8);

}  // namespace epi
