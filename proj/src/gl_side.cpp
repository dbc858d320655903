#include "epi/gl_side.hpp"

#include "epi/errors.hpp"
#include "epi/field_tower.hpp"
#include "epi/ramification.hpp"

namespace epi {

namespace {

FqElem sign_unit(const FqField& k, int n) {
  return (n % 2 == 1 || k.p() == 2) ? k.one() : k.neg(k.one());
}

void require_tame(const MultChar& chi, const char* what) {
  if (chi.swan() != 0)
    throw DomainError(std::string(what) + ": character must be tamely ramified");
  if (!chi.explicit_form())
    throw DomainError(std::string(what) + ": character must be given explicitly");
}

}  // namespace

LFElem EpipelagicDatum::det_alpha() const {
  return LFElem::monomial(field, det_mu, -1);
}

LFElem EpipelagicDatum::varpi_alpha() const {
  const FqField& k = *field->residue();
  return LFElem::monomial(field, k.mul(sign_unit(k, n), k.inv(det_mu)), 1);
}

QmodZ EpipelagicDatum::eps_value() const {
  QmodZ w = omega(varpi_alpha());
  return QmodZ(w.num() + static_cast<std::int64_t>(eps_index) * w.den(),
               static_cast<std::int64_t>(n) * w.den());
}

void EpipelagicDatum::validate() const {
  if (!field) throw DomainError("datum: missing field");
  if (n < 2) throw DomainError("datum: n must be >= 2");
  if (det_mu.code == 0 || det_mu.code >= field->residue()->order())
    throw DomainError("datum: det alpha must be a unit times w^{-1}");
  if (!omega.field() || !omega.field()->same_as(*field))
    throw DomainError("datum: central character lives on another field");
  require_tame(omega, "datum");
  if (eps_index < 0 || eps_index >= n) throw DomainError("datum: eps index out of range");
}

bool same_tame_character(const MultChar& a, const MultChar& b) {
  if (!a.field()->same_as(*b.field())) return false;
  if (a.swan() != 0 || b.swan() != 0) return false;
  const FieldPtr& k = a.field();
  LFElem w = LFElem::monomial(k, k->residue()->one(), 1);
  LFElem g = LFElem::constant(k, k->residue()->generator());
  return a(w) == b(w) && a(g) == b(g);
}

std::vector<EpipelagicDatum> enumerate_datums(const FieldPtr& f, int n, const MultChar& omega) {
  if (n < 2) throw DomainError("enumerate_datums: n must be >= 2");
  require_tame(omega, "enumerate_datums");
  const FqField& k = *f->residue();
  std::vector<EpipelagicDatum> out;
  out.reserve(static_cast<std::size_t>(n) * (k.order() - 1));
  for (std::uint32_t m = 0; m + 1 < k.order(); ++m)
    for (int idx = 0; idx < n; ++idx) {
      EpipelagicDatum d{f, n, k.exp(m), omega, idx};
      d.validate();
      out.push_back(d);
    }
  return out;
}

bool equivalent_datums(const EpipelagicDatum& a, const EpipelagicDatum& b) {
  if (!a.field->same_as(*b.field) || a.n != b.n)
    throw DomainError("equivalent_datums: datums over different fields or degrees");
  return a.det_mu == b.det_mu && same_tame_character(a.omega, b.omega) &&
         a.eps_value() == b.eps_value();
}

EpipelagicDatum with_eps_value(EpipelagicDatum d, const QmodZ& eps) {
  QmodZ w = d.omega(d.varpi_alpha());
  // k = n eps - w must be an integer
  std::int64_t num = static_cast<std::int64_t>(d.n) * eps.num() * w.den() - w.num() * eps.den();
  std::int64_t den = eps.den() * w.den();
  if (num % den != 0)
    throw InvariantViolation("epsilon value " + eps.str() + " is not admissible for this datum");
  std::int64_t k = (num / den) % d.n;
  d.eps_index = static_cast<int>(k < 0 ? k + d.n : k);
  return d;
}

EpipelagicDatum twist_by_tame(const EpipelagicDatum& d, const MultChar& chi) {
  require_tame(chi, "twist_by_tame");
  if (!chi.field()->same_as(*d.field)) throw DomainError("twist_by_tame: field mismatch");
  EpipelagicDatum out = d;
  out.omega = chi.power(d.n) * d.omega;
  return with_eps_value(out, d.eps_value() - chi(d.det_alpha()));
}

bool DescentRecord::all_checked_hold() const {
  for (const auto& r : relations)
    if (!r.symbolic && !r.holds) return false;
  return true;
}

DescentRecord descend_tame(const EpipelagicDatum& d) {
  d.validate();
  const int p = d.field->p();
  int e = d.n, pr = 1;
  while (e % p == 0) {
    e /= p;
    pr *= p;
  }
  if (e == 1) throw DomainError("already wild-primary");
  if (pr == 1) throw DomainError("descend_tame: n must be divisible by p");

  CentralizerForm cf = centralizer_form(d.field, d.n, e, d.det_mu);
  DescentRecord rec;
  rec.k = cf.k;
  rec.e = e;
  rec.pr = pr;
  const FqField& rf = *d.field->residue();

  bool val_ok = cf.det_b.valuation() == -1;
  FqElem mu_k = cf.det_b.leading();
  // stand-in central character over K: omega o N_{K/F}
  rec.datum_k = EpipelagicDatum{rec.k, pr, mu_k, pullback_norm(d.omega, rec.k), 0};
  rec.datum_k.validate();

  FqElem lead_n = cf.norm_det_b.leading();
  FqElem lead_d = d.det_mu;  // K/F totally ramified: same residue field
  bool norm_val = cf.norm_det_b.valuation() == -1 && cf.det_f.valuation() == -1;
  if (lead_n == lead_d)
    rec.norm_sign = 1;
  else if (lead_n == rf.neg(lead_d))
    rec.norm_sign = -1;
  else
    rec.norm_sign = 0;

  InductionData ind{1, pr, e, 1, e - 1};
  rec.relations = {
      {"gamma_tau", "gamma_tau = det_B alpha mod U^1_K, valuation -1", false, val_ok},
      {"norm_det", "N_{K/F}(det_B alpha) = " + std::string(rec.norm_sign < 0 ? "-" : "") +
                       "det alpha mod U^1_F",
       false, norm_val && rec.norm_sign != 0 && cf.det_f.leading() == lead_d},
      {"swan", "sw(Ind_{K/F} tau) = 1", false, swan_induce(ind) == 1},
      {"det_tau", "det tau|F^x = delta_{K/F}^{-p^r} det sigma", true, false},
      {"eps_tau", "eps(sigma)/eps(tau) = lambda_{K/F}^{p^r}", true, false},
  };
  return rec;
}

}  // namespace epi
