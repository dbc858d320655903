#include "epi/field_tower.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "epi/errors.hpp"

namespace epi {

LocalField::LocalField(TowerSpec spec, FieldPtr parent, FqPtr residue, int e,
                       int f, FqElem step_unit, FqElem t_unit,
                       std::int64_t parent_mult, std::int64_t base_mult)
    : spec_(std::move(spec)),
      parent_(std::move(parent)),
      residue_(std::move(residue)),
      e_(e),
      f_(f),
      step_unit_(step_unit),
      t_unit_(t_unit),
      parent_mult_(parent_mult),
      base_mult_(base_mult) {}

FieldPtr LocalField::base() const {
  if (!parent_) return make_field(spec_);
  FieldPtr cur = parent_;
  while (cur->parent()) cur = cur->parent();
  return cur;
}

bool LocalField::has_ancestor(const LocalField& k) const {
  if (k.spec_.size() > spec_.size()) return false;
  for (std::size_t i = 0; i < k.spec_.size(); ++i)
    if (!(k.spec_[i] == spec_[i])) return false;
  return true;
}

int LocalField::degree_over(const LocalField& k) const {
  if (!has_ancestor(k))
    throw DomainError("degree_over: " + k.describe() +
                      " is not an ancestor of " + describe());
  return (e_ / k.e_) * (f_ / k.f_);
}

FqElem LocalField::embed_residue_from(const LocalField& k, FqElem a) const {
  if (!has_ancestor(k)) throw DomainError("embed_residue_from: not an ancestor");
  if (a.code == 0) return a;
  if (k.spec_.size() == spec_.size()) return a;
  // g_k = g_base^{...} is not available directly; compose step multipliers.
  std::int64_t mult = 1;
  std::int64_t m = static_cast<std::int64_t>(q()) - 1;
  const LocalField* cur = this;
  while (cur->spec_.size() > k.spec_.size()) {
    mult = static_cast<std::int64_t>(
        (static_cast<__int128>(mult) * cur->parent_mult_) % m);
    cur = cur->parent_.get();
  }
  std::int64_t lg = k.residue()->log(a);
  return residue_->exp(static_cast<std::int64_t>(
      (static_cast<__int128>(lg) * mult) % m));
}

std::string LocalField::describe() const {
  std::ostringstream os;
  for (const auto& s : spec_) {
    switch (s.kind) {
      case StepKind::Base:
        os << "F_" << s.p << "^" << s.f << "((t))";
        break;
      case StepKind::Unramified:
        os << " -unr" << s.degree;
        break;
      case StepKind::Tame:
        os << " -tame" << s.degree << "[g^" << s.unit_log << "]";
        break;
    }
  }
  return os.str();
}

std::int64_t residue_embedding_multiplier(const FqField& small,
                                          const FqField& big) {
  if (small.p() != big.p() || big.degree() % small.degree() != 0)
    throw DomainError("residue embedding: degrees incompatible");
  std::int64_t qs = static_cast<std::int64_t>(small.order()) - 1;
  std::int64_t qb = static_cast<std::int64_t>(big.order()) - 1;
  std::int64_t step = qb / qs;
  const auto& mod = small.modulus();
  for (std::int64_t k = 1; k <= qs; ++k) {
    if (std::gcd(k, qs) != 1) continue;
    FqElem z = big.exp(k * step);
    // Evaluate the small modulus (coefficients in F_p) at z.
    FqElem acc = big.zero();
    for (int i = static_cast<int>(mod.size()) - 1; i >= 0; --i)
      acc = big.add(big.mul(acc, z), big.from_int(mod[i]));
    if (acc.code == 0) return (k * step) % qb;
  }
  throw InvariantViolation("residue embedding: no root found");
}

FieldPtr make_field(const TowerSpec& spec) {
  if (spec.empty() || spec[0].kind != StepKind::Base)
    throw DomainError("make_field: tower must start with a base step");
  const TowerStep& b = spec[0];
  FqPtr res = FqField::get(b.p, b.f);
  TowerSpec cur_spec{TowerStep{StepKind::Base, b.p, b.f, 1, 0}};
  FieldPtr cur = std::make_shared<const LocalField>(
      cur_spec, nullptr, res, 1, 1, res->one(), res->one(), 1, 1);
  for (std::size_t i = 1; i < spec.size(); ++i) {
    const TowerStep& s = spec[i];
    if (s.degree < 1) throw DomainError("make_field: step degree must be >= 1");
    TowerStep norm = s;
    norm.p = 0;
    norm.f = 0;
    if (s.kind == StepKind::Unramified) {
      norm.unit_log = 0;
      int newdeg = cur->residue()->degree() * s.degree;
      FqPtr big = FqField::get(b.p, newdeg);
      std::int64_t mult = residue_embedding_multiplier(*cur->residue(), *big);
      std::int64_t m = static_cast<std::int64_t>(big->order()) - 1;
      std::int64_t base_mult = static_cast<std::int64_t>(
          (static_cast<__int128>(cur->base_embed_multiplier()) * mult) % m);
      FqElem t_unit = big->exp(static_cast<std::int64_t>(
          (static_cast<__int128>(cur->residue()->log(cur->t_unit())) * mult) % m));
      TowerSpec ns = cur->spec();
      ns.push_back(norm);
      cur = std::make_shared<const LocalField>(ns, cur, big, cur->e(),
                                               cur->f() * s.degree, big->one(),
                                               t_unit, mult, base_mult);
    } else if (s.kind == StepKind::Tame) {
      if (s.degree % b.p == 0)
        throw DomainError("make_field: tame degree must be prime to p");
      std::int64_t m = static_cast<std::int64_t>(cur->q()) - 1;
      norm.unit_log = ((s.unit_log % m) + m) % m;
      FqPtr res_k = cur->residue();
      FqElem u = res_k->exp(norm.unit_log);
      // w^{e E_K} = u^{E_K} w_K^{E_K} = u^{E_K} U_K t
      FqElem t_unit = res_k->mul(res_k->pow(u, cur->e()), cur->t_unit());
      TowerSpec ns = cur->spec();
      ns.push_back(norm);
      cur = std::make_shared<const LocalField>(
          ns, cur, res_k, cur->e() * s.degree, cur->f(), u, t_unit, 1,
          cur->base_embed_multiplier());
    } else {
      throw DomainError("make_field: base step only allowed at the root");
    }
  }
  return cur;
}

FieldPtr base_field(int p, int f) {
  return make_field({TowerStep{StepKind::Base, p, f, 1, 0}});
}

FieldPtr extend_unramified(const FieldPtr& k, int degree) {
  TowerSpec s = k->spec();
  s.push_back(TowerStep{StepKind::Unramified, 0, 0, degree, 0});
  return make_field(s);
}

FieldPtr extend_tame(const FieldPtr& k, int e, std::int64_t unit_log) {
  TowerSpec s = k->spec();
  s.push_back(TowerStep{StepKind::Tame, 0, 0, e, unit_log});
  return make_field(s);
}

std::vector<FieldPtr> chain_between(const FieldPtr& l, const FieldPtr& k) {
  if (!l->has_ancestor(*k))
    throw DomainError("field " + k->describe() + " is not an ancestor of " +
                      l->describe());
  std::vector<FieldPtr> out;
  FieldPtr cur = l;
  while (cur->spec().size() > k->spec().size()) {
    out.push_back(cur);
    cur = cur->parent();
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace epi
