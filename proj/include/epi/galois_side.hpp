#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "epi/characters.hpp"
#include "epi/gl_side.hpp"

namespace epi {

/// Solutions of c^{p^{2r}-1} = (-1)^p det(alpha)^{p^r-1} in L^x / U^1_L.
/// A solution is c = gamma w_L^{valuation}; empty unless 1 + p^r divides
/// e(L|F).
struct CongruenceRoots {
  FieldPtr field;
  std::int64_t exponent = 0;   // p^{2r} - 1
  FqElem rhs_mu;               // (-1)^p (zeta U_L)^{p^r-1}
  int valuation = 0;           // valuation of every root (0 when none exist)
  std::vector<FqElem> roots;   // sorted by discrete log
};

CongruenceRoots congruence_roots(const FieldPtr& l, const EpipelagicDatum& d);

/// 1 + number of solutions over L.
std::int64_t twist_order(const FieldPtr& l, const EpipelagicDatum& d);

struct SubfieldCount {
  int residue_degree = 0;  // absolute
  int e = 0;
  std::int64_t unit_log = 0;
  std::size_t roots = 0;
};

struct ImprimitivityResult {
  FieldPtr t;
  int p = 0;
  int r = 0;
  std::int64_t unit_log = 0;  // w_T^{1+p^r} = u w_F with u = g^unit_log
  CongruenceRoots congruence;
  /// Every tame field over F with smaller invariants dividing those of T.
  std::vector<SubfieldCount> proper_subfields;
};

ImprimitivityResult imprimitivity_field(const EpipelagicDatum& d);

/// Group element table entry: index 0 is the trivial character, index i the
/// character attached to roots[i-1].
struct KernelFieldDesc {
  FieldPtr t;
  int p = 0;
  int r = 0;
  std::vector<FqElem> roots;
  std::vector<MultChar> deltas;             // one per root, same order
  std::vector<std::vector<int>> group_table;
  std::vector<FqElem> norm_basis;           // a with 1 + a w_T in every kernel
  std::vector<LFElem> norm_generators;      // w_T, generator of mu_T, 1 + a w_T
  std::int64_t norm_index = 0;              // [T^x/U^2 : N(E^x)U^2/U^2]
  std::int64_t e_et = 0;
  std::int64_t d_et_conductor = 0;
  std::int64_t d_et_tower = 0;
  std::int64_t d_ek = 0;
  std::int64_t d_kt = 0;
  std::int64_t c_psi_e = 0;
  /// Index in group_table of the character with residue data gamma.
  int index_of(FqElem gamma) const;
};

KernelFieldDesc delta_characters(const ImprimitivityResult& imp, const EpipelagicDatum& d);

/// Tame automorphisms w_T -> omega w_T, omega in mu_{1+p^r}, acting on
/// the root classes by gamma -> gamma omega^{-1}.
struct GaloisAction {
  std::vector<std::vector<int>> permutations;  // one per nontrivial omega
  std::vector<std::vector<int>> orbits;
  bool preserves_roots = false;
  bool fixed_point_free = false;
};

GaloisAction galois_action_on_roots(const ImprimitivityResult& imp);

/// The p-central character on U^{1+p^r}_E / U^{2+p^r}_E = k_T.  The field E
/// is modelled abstractly as k_T((w_E)) with N_{E/T}(w_E) = w_T, and
/// psi_E on p_E^{1-p^{2r}} is (1/p) Tr_{k_T/F_p} of the leading coefficient.
struct XiRestriction {
  FieldPtr e_model;
  FqElem beta_lead;         // leading coefficient of beta_E, valuation -(1+p^r)
  FqElem beta_pr_lead;      // of beta_E^{p^r}
  FqElem t_side_coset;      // N(beta_E) = t_side_coset w_T^{-(1+p^r)} mod U^1_T
  std::int64_t swan = 0;
  std::int64_t artin = 0;
  std::int64_t c_psi_e = 0;
  std::vector<QmodZ> graded_values;  // indexed by residue code of a
  bool power_matches_central = false;

  QmodZ operator()(FqElem a) const { return graded_values.at(a.code); }
};

XiRestriction xi_restriction(const KernelFieldDesc& k, const EpipelagicDatum& d);

/// Recompute the graded character from beta_E (1 + z), z a model element
/// of positive valuation.
std::vector<QmodZ> xi_from_beta(const XiRestriction& xi, const KernelFieldDesc& k,
                                const LFElem& beta);

/// Leading term of beta_E in the model.
LFElem xi_beta(const XiRestriction& xi, const KernelFieldDesc& k);

/// Unramified characters with onPi = j / p^r, j in [0, p^r).
std::vector<MultChar> unramified_candidates(const FieldPtr& f, int pr);

/// The j with d = chi_j twist of the eps_index-0 datum.
int resolve_unramified_twist(const EpipelagicDatum& d, const std::vector<MultChar>& candidates);

struct ParameterRecord {
  EpipelagicDatum input;
  ImprimitivityResult imprimitivity;
  KernelFieldDesc kernel;
  GaloisAction action;
  XiRestriction xi;
  MultChar det_sigma;
  QmodZ eps;
  int twist_resolution = 0;
  std::vector<std::string> failed_checks;
};

ParameterRecord parameter_record(const EpipelagicDatum& d);

}  // namespace epi
