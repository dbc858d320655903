#pragma once

#include <optional>
#include <string>
#include <vector>

#include "epi/characters.hpp"
#include "epi/strata_lab.hpp"

namespace epi {

/// Classifying data of an epipelagic representation of GL_n(F): the coset
/// det(alpha) U^1_F = zeta w_F^{-1} U^1_F, the central character and an
/// epsilon label.
///
/// The epsilon value of the normal-form representative satisfies
/// n eps = omega(varpi_alpha) with varpi_alpha = (-1)^{n-1} zeta^{-1} w_F, so
/// the admissible values are (w + k)/n with w in [0,1) representing
/// omega(varpi_alpha); eps_index is k.
struct EpipelagicDatum {
  FieldPtr field;
  int n = 2;
  FqElem det_mu;
  MultChar omega;
  int eps_index = 0;

  LFElem det_alpha() const;
  LFElem varpi_alpha() const;
  QmodZ eps_value() const;
  void validate() const;
};

/// Two tame characters agree on w_F and on the residue generator.
bool same_tame_character(const MultChar& a, const MultChar& b);

/// n(q-1) datums ordered by log(zeta), then eps_index.
std::vector<EpipelagicDatum> enumerate_datums(const FieldPtr& f, int n, const MultChar& omega);

bool equivalent_datums(const EpipelagicDatum& a, const EpipelagicDatum& b);

/// chi pi: omega -> chi^n omega, eps -> eps - chi(det alpha).
EpipelagicDatum twist_by_tame(const EpipelagicDatum& d, const MultChar& chi);

/// Datum with the given epsilon value; throws if it is not admissible.
EpipelagicDatum with_eps_value(EpipelagicDatum d, const QmodZ& eps);

struct Relation {
  std::string name;
  std::string statement;
  bool symbolic = false;
  bool holds = false;  // meaningful when !symbolic
};

struct DescentRecord {
  FieldPtr k;
  int e = 1;
  int pr = 1;
  EpipelagicDatum datum_k;
  bool omega_k_symbolic = true;
  bool eps_k_symbolic = true;
  std::string delta_kf = "delta_{K/F} = det Ind_{K/F} 1_K";
  std::string lambda_kf = "lambda_{K/F} = eps(R_{K/F},s,psi_F)/eps(1_K,s,psi_K)";
  int norm_sign = 1;  // N_{K/F}(det_B alpha) = norm_sign det alpha mod U^1_F
  std::vector<Relation> relations;
  bool all_checked_hold() const;
};

/// n = e p^r with e > 1 prime to p: the tame field K = F[alpha^{p^r}] and
/// the induced datum over K.
DescentRecord descend_tame(const EpipelagicDatum& d);

}  // namespace epi
