#include "epi/galois_side.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "epi/errors.hpp"
#include "epi/field_tower.hpp"
#include "epi/ramification.hpp"

namespace epi {

namespace {

struct WildShape {
  int p, r;
  std::int64_t pr, n_exp;  // p^r, p^{2r} - 1
};

WildShape wild_shape(const EpipelagicDatum& d) {
  d.validate();
  if (d.field->depth() != 0) throw DomainError("datum field must be the base of the tower");
  const int p = d.field->p();
  int r = 0;
  std::int64_t pr = 1;
  while (pr < d.n) {
    pr *= p;
    ++r;
  }
  if (pr != d.n) throw DomainError("descend first: n is not a power of p");
  return {p, r, pr, pr * pr - 1};
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
  a %= m;
  return a < 0 ? a + m : a;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t m) {
  if (m == 1) return 0;
  std::int64_t t = 0, nt = 1, rr = m, nr = mod(a, m);
  while (nr != 0) {
    std::int64_t q = rr / nr;
    std::tie(t, nt) = std::pair{nt, t - q * nt};
    std::tie(rr, nr) = std::pair{nr, rr - q * nr};
  }
  if (rr != 1) throw DomainError("inv_mod: not invertible");
  return mod(t, m);
}

int abs_residue_degree(const FieldPtr& k) {
  int m = 0;
  for (std::uint32_t q = k->q(); q > 1; q /= k->p()) ++m;
  return m;
}

FieldPtr unramified_over(const FieldPtr& f, int degree) {
  return degree == 1 ? f : extend_unramified(f, degree);
}

std::vector<int> divisors(int n) {
  std::vector<int> v;
  for (int i = 1; i <= n; ++i)
    if (n % i == 0) v.push_back(i);
  return v;
}

}  // namespace

CongruenceRoots congruence_roots(const FieldPtr& l, const EpipelagicDatum& d) {
  WildShape w = wild_shape(d);
  if (!l->has_ancestor(*d.field)) throw DomainError("congruence_roots: L is not above F");
  const FqField& k = *l->residue();
  CongruenceRoots out;
  out.field = l;
  out.exponent = w.n_exp;
  FqElem zu = k.mul(l->embed_residue_from(*d.field, d.det_mu), l->t_unit());
  out.rhs_mu = k.pow(zu, w.pr - 1);
  if (w.p % 2 == 1) out.rhs_mu = k.neg(out.rhs_mu);
  if (l->e() % (1 + w.pr) != 0) return out;
  out.valuation = -static_cast<int>(l->e() / (1 + w.pr));

  const std::int64_t qm = static_cast<std::int64_t>(k.order()) - 1;
  const std::int64_t g = std::gcd(w.n_exp, qm);
  const std::int64_t lr = k.log(out.rhs_mu);
  if (lr % g != 0) return out;
  const std::int64_t m = qm / g;
  const std::int64_t x0 = mod((lr / g) * inv_mod(w.n_exp / g, m), m);
  std::vector<std::int64_t> logs;
  for (std::int64_t j = 0; j < g; ++j) logs.push_back(x0 + j * m);
  std::sort(logs.begin(), logs.end());
  for (auto x : logs) out.roots.push_back(k.exp(x));
  return out;
}

std::int64_t twist_order(const FieldPtr& l, const EpipelagicDatum& d) {
  return 1 + static_cast<std::int64_t>(congruence_roots(l, d).roots.size());
}

ImprimitivityResult imprimitivity_field(const EpipelagicDatum& d) {
  WildShape w = wild_shape(d);
  const FieldPtr& f = d.field;
  const int mf = abs_residue_degree(f);
  const int mt = std::lcm(mf, 2 * w.r);
  const int et = static_cast<int>(1 + w.pr);
  ImprimitivityResult out;
  out.p = w.p;
  out.r = w.r;
  for (int m = mf; m <= mt && !out.t; m += mf) {
    FieldPtr l0 = unramified_over(f, m / mf);
    for (std::int64_t u = 0; u + 1 < static_cast<std::int64_t>(l0->q()); ++u) {
      FieldPtr cand = extend_tame(l0, et, u);
      auto roots = congruence_roots(cand, d);
      if (static_cast<std::int64_t>(roots.roots.size()) == w.n_exp) {
        out.t = cand;
        out.unit_log = u;
        out.congruence = roots;
        break;
      }
    }
  }
  if (!out.t) throw InvariantViolation("imprimitivity_field: no tame field carries p^{2r}-1 roots");
  const int found_m = abs_residue_degree(out.t);
  for (int m : divisors(found_m)) {
    if (m % mf != 0) continue;
    for (int e : divisors(et)) {
      if (m == found_m && e == et) continue;
      FieldPtr l0 = unramified_over(f, m / mf);
      std::int64_t units = e == 1 ? 1 : static_cast<std::int64_t>(l0->q()) - 1;
      for (std::int64_t u = 0; u < units; ++u) {
        FieldPtr l = e == 1 ? l0 : extend_tame(l0, e, u);
        out.proper_subfields.push_back({m, e, u, congruence_roots(l, d).roots.size()});
      }
    }
  }
  return out;
}

int KernelFieldDesc::index_of(FqElem gamma) const {
  if (gamma.code == 0) return 0;
  for (std::size_t i = 0; i < roots.size(); ++i)
    if (roots[i] == gamma) return static_cast<int>(i + 1);
  return -1;
}

KernelFieldDesc delta_characters(const ImprimitivityResult& imp, const EpipelagicDatum& d) {
  WildShape w = wild_shape(d);
  if (!imp.t || static_cast<std::int64_t>(imp.congruence.roots.size()) != w.n_exp)
    throw DomainError("delta_characters: imprimitivity result is not valid");
  KernelFieldDesc out;
  out.t = imp.t;
  out.p = w.p;
  out.r = w.r;
  out.roots = imp.congruence.roots;
  const FieldPtr& t = out.t;
  const FqField& k = *t->residue();
  for (FqElem g : out.roots) {
    MultChar delta = build_multchar(t, QmodZ(), 0, {WildCoeff{1, LFElem::monomial(t, g, -1)}});
    out.deltas.push_back(delta);
  }

  const std::size_t size = out.roots.size() + 1;
  auto elem = [&](std::size_t i) { return i == 0 ? FqElem{0} : out.roots[i - 1]; };
  out.group_table.assign(size, std::vector<int>(size, 0));
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j) {
      int idx = out.index_of(k.add(elem(i), elem(j)));
      if (idx < 0) throw InvariantViolation("root set not subgroup");
      out.group_table[i][j] = idx;
    }

  // a with Delta(1 + a w_T) = 0 for every Delta
  std::vector<FqElem> kernel;
  LFElem wt = LFElem::monomial(t, k.one(), 1);
  for (std::uint32_t a = 0; a < k.order(); ++a) {
    LFElem x = LFElem::one(t) + wt.scale(FqElem{a});
    bool in = std::all_of(out.deltas.begin(), out.deltas.end(),
                          [&](const MultChar& c) { return c(x).is_zero(); });
    if (in) kernel.push_back(FqElem{a});
  }
  std::set<std::uint32_t> span{0};
  for (FqElem a : kernel) {
    if (span.count(a.code)) continue;
    out.norm_basis.push_back(a);
    std::set<std::uint32_t> grown;
    for (auto s : span)
      for (int c = 0; c < w.p; ++c) grown.insert(k.add(FqElem{s}, k.mul(k.from_int(c), a)).code);
    span = std::move(grown);
  }
  if (span.size() != kernel.size()) throw InvariantViolation("norm subgroup is not a subspace");
  out.norm_index = static_cast<std::int64_t>(k.order() / kernel.size());
  out.norm_generators.push_back(wt);
  out.norm_generators.push_back(LFElem::constant(t, k.generator()));
  for (FqElem a : out.norm_basis) out.norm_generators.push_back(LFElem::one(t) + wt.scale(a));

  std::vector<std::int64_t> artin{0};
  for (const auto& c : out.deltas) artin.push_back(c.artin());
  out.e_et = w.pr * w.pr;
  out.d_et_conductor = conductor_discriminant(artin);
  RamFiltration lag{{{0, w.pr}, {1, w.pr}, {2, 1}}};
  out.d_ek = herbrand_and_different(lag).d;
  out.d_kt = out.d_ek;
  out.d_et_tower = different_transitive(out.d_ek, w.pr, out.d_kt);
  out.c_psi_e = transported_level(out.d_et_conductor, out.e_et, standard_addchar(t).level());
  return out;
}

GaloisAction galois_action_on_roots(const ImprimitivityResult& imp) {
  const FqField& k = *imp.t->residue();
  const std::int64_t et = imp.t->e();
  const std::int64_t qm = static_cast<std::int64_t>(k.order()) - 1;
  if (qm % et != 0) throw InvariantViolation("galois_action: mu_{1+p^r} not in k_T");
  const auto& roots = imp.congruence.roots;
  auto find = [&](FqElem g) {
    for (std::size_t i = 0; i < roots.size(); ++i)
      if (roots[i] == g) return static_cast<int>(i);
    return -1;
  };
  GaloisAction out;
  out.preserves_roots = true;
  out.fixed_point_free = true;
  FqElem omega = k.exp(qm / et);
  for (std::int64_t j = 1; j < et; ++j) {
    FqElem winv = k.inv(k.pow(omega, j));
    std::vector<int> perm;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      int to = find(k.mul(roots[i], winv));
      if (to < 0) out.preserves_roots = false;
      if (to == static_cast<int>(i)) out.fixed_point_free = false;
      perm.push_back(to);
    }
    out.permutations.push_back(perm);
  }
  if (!out.preserves_roots) return out;
  std::vector<int> seen(roots.size(), 0);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (seen[i]) continue;
    std::vector<int> orbit{static_cast<int>(i)};
    seen[i] = 1;
    for (const auto& perm : out.permutations)
      if (!seen[perm[i]]) {
        seen[perm[i]] = 1;
        orbit.push_back(perm[i]);
      }
    std::sort(orbit.begin(), orbit.end());
    out.orbits.push_back(orbit);
  }
  return out;
}

LFElem xi_beta(const XiRestriction& xi, const KernelFieldDesc& k) {
  return LFElem::monomial(xi.e_model, xi.beta_lead, -static_cast<int>(k.t->e()));
}

std::vector<QmodZ> xi_from_beta(const XiRestriction& xi, const KernelFieldDesc& k,
                                const LFElem& beta) {
  const FieldPtr& e = xi.e_model;
  const FqField& rk = *e->residue();
  std::int64_t pr = 1;
  for (int i = 0; i < k.r; ++i) pr *= k.p;
  const int lead = static_cast<int>(1 - pr * pr);
  LFElem bp = beta.pow(static_cast<int>(pr));
  std::vector<QmodZ> vals(rk.order());
  for (std::uint32_t a = 0; a < rk.order(); ++a) {
    LFElem x = bp * LFElem::monomial(e, FqElem{a}, static_cast<int>(1 + pr));
    if (a != 0 && x.valuation() < lead)
      throw InvariantViolation("xi: beta^{p^r} x below the conductor of psi_E");
    FqElem c = x.is_zero() ? FqElem{0} : x.coeff(lead);
    vals[a] = QmodZ(rk.trace_to_prime(c), k.p);
  }
  return vals;
}

XiRestriction xi_restriction(const KernelFieldDesc& k, const EpipelagicDatum& d) {
  WildShape w = wild_shape(d);
  if (k.deltas.size() != static_cast<std::size_t>(w.n_exp) || k.e_et != w.pr * w.pr)
    throw DomainError("xi_restriction: inconsistent kernel descriptor");
  const FieldPtr& t = k.t;
  const FqField& rt = *t->residue();
  const int m = abs_residue_degree(t);
  XiRestriction xi;
  xi.e_model = base_field(w.p, m);
  if (xi.e_model->residue()->order() != rt.order())
    throw InvariantViolation("xi_restriction: residue model mismatch");
  xi.t_side_coset = rt.mul(t->embed_residue_from(*d.field, d.det_mu), t->t_unit());
  // b^{p^{2r}} = zeta U_T
  xi.beta_lead = rt.frobenius(xi.t_side_coset, mod(-2 * w.r, m));
  xi.beta_pr_lead = rt.pow(xi.beta_lead, w.pr);

  const std::int64_t target = w.pr * (1 + w.pr);
  const std::int64_t shift = swan_induce({0, 1, k.e_et, 1, k.d_et_conductor});
  xi.swan = target - shift;
  if (swan_induce({xi.swan, 1, k.e_et, 1, k.d_et_conductor}) != target)
    throw InvariantViolation("xi_restriction: Swan exponent does not induce correctly");
  xi.artin = xi.swan + 1;
  xi.c_psi_e = k.c_psi_e;
  xi.graded_values = xi_from_beta(xi, k, xi_beta(xi, k));
  xi.power_matches_central = d.omega.swan() == 0;
  for (const auto& v : xi.graded_values)
    if (!v.times(w.pr).is_zero()) xi.power_matches_central = false;
  return xi;
}

std::vector<MultChar> unramified_candidates(const FieldPtr& f, int pr) {
  std::vector<MultChar> out;
  for (int j = 0; j < pr; ++j) out.push_back(build_multchar(f, QmodZ(j, pr), 0));
  return out;
}

int resolve_unramified_twist(const EpipelagicDatum& d, const std::vector<MultChar>& candidates) {
  const std::int64_t qm = static_cast<std::int64_t>(d.field->q()) - 1;
  std::set<QmodZ> values;
  for (const auto& c : candidates) {
    if (c.swan() != 0 || mod(c.on_mu(), qm) != 0 || !c.explicit_form())
      throw DomainError("resolve_unramified_twist: candidate is ramified");
    if (!c.on_uniformizer().times(d.n).is_zero())
      throw DomainError("resolve_unramified_twist: candidate order does not divide n");
    values.insert(c(d.det_alpha()));
  }
  if (values.size() != candidates.size())
    throw InvariantViolation("resolve_unramified_twist: chi -> chi(det alpha) is not injective");
  EpipelagicDatum ref = d;
  ref.eps_index = 0;
  int found = -1;
  for (std::size_t j = 0; j < candidates.size(); ++j)
    if (twist_by_tame(ref, candidates[j]).eps_value() == d.eps_value()) {
      if (found >= 0) throw InvariantViolation("resolve_unramified_twist: ambiguous match");
      found = static_cast<int>(j);
    }
  if (found < 0) throw InvariantViolation("resolve_unramified_twist: no candidate matches");
  return found;
}

ParameterRecord parameter_record(const EpipelagicDatum& d) {
  WildShape w = wild_shape(d);
  ParameterRecord rec;
  rec.input = d;
  rec.imprimitivity = imprimitivity_field(d);
  rec.kernel = delta_characters(rec.imprimitivity, d);
  rec.action = galois_action_on_roots(rec.imprimitivity);
  rec.xi = xi_restriction(rec.kernel, d);
  rec.det_sigma = d.omega;
  rec.eps = d.eps_value();
  rec.twist_resolution = resolve_unramified_twist(d, unramified_candidates(d.field, d.n));

  auto check = [&](bool ok, const char* name) {
    if (!ok) rec.failed_checks.push_back(name);
  };
  const FieldPtr& t = rec.imprimitivity.t;
  const auto& cg = rec.imprimitivity.congruence;
  check(static_cast<std::int64_t>(cg.roots.size()) == w.n_exp, "root count is p^{2r}-1");
  check(cg.valuation == -1, "roots have valuation -1");
  check(t->e() == 1 + w.pr, "e(T|F) = 1+p^r");
  check((t->q() - 1) % w.n_exp == 0, "q_T = 1 mod p^{2r}-1");
  check(abs_residue_degree(t) % (2 * w.r) == 0 || abs_residue_degree(d.field) != 1,
        "2r divides the residue degree of T");
  for (const auto& s : rec.imprimitivity.proper_subfields)
    if (static_cast<std::int64_t>(s.roots) >= w.n_exp) check(false, "T is minimal");
  const LFElem det_t = embed(d.det_alpha(), t);
  const LFElem mu_gen = LFElem::constant(t, t->residue()->generator());
  for (const auto& c : rec.kernel.deltas) {
    check(c.swan() == 1, "Delta_c has Swan exponent 1");
    check(c.artin() == 2, "Delta_c has Artin exponent 2");
    check(c(mu_gen).is_zero(), "Delta_c trivial on mu_T");
    check(c(det_t).is_zero(), "Delta_c(det alpha) = 1");
    check(c.power(w.p).is_trivial(), "Delta_c^p = 1");
  }
  check(rec.kernel.norm_index == w.pr * w.pr, "norm subgroup has index p^{2r}");
  check(rec.kernel.d_et_conductor == 2 * w.pr * w.pr - 2, "d(E|T) by conductor-discriminant");
  check(rec.kernel.d_et_tower == rec.kernel.d_et_conductor, "d(E|T) along the Lagrangian tower");
  check(rec.kernel.c_psi_e == w.pr * w.pr - 2, "c(psi_E) = p^{2r}-2");
  check(rec.action.preserves_roots && rec.action.fixed_point_free, "Galois action fixed-point-free");
  check(static_cast<std::int64_t>(rec.action.orbits.size()) == w.pr - 1, "p^r-1 orbits on roots");
  check(rec.xi.swan == 1 + w.pr, "sw(xi) = 1+p^r");
  check(rec.xi.power_matches_central, "xi^{p^r} = omega o N on U^1");
  return rec;
}

}  // namespace epi
