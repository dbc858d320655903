#include "epi/characters.hpp"

#include <numeric>

#include "epi/errors.hpp"
#include "epi/norm_trace.hpp"
#include "epi/ramification.hpp"

namespace epi {

AddChar AddChar::base(const FieldPtr& f) {
  if (f->parent()) throw DomainError("AddChar::base: not a base field");
  AddChar a;
  a.field_ = f;
  a.level_ = -1;
  return a;
}

QmodZ AddChar::operator()(const LFElem& x) const {
  if (!x.field()->same_as(*field_))
    throw DomainError("AddChar: element from another field");
  if (!parent_) {
    const FqField& r = *field_->residue();
    return QmodZ(r.trace_to_prime(x.coeff(0)), r.p());
  }
  LFElem tr = norm_trace(field_, parent_->field(), x, 1).trace;
  return (*parent_)(tr);
}

AddChar AddChar::pullback(const FieldPtr& l) const {
  AddChar a;
  a.field_ = l;
  a.parent_ = std::make_shared<const AddChar>(*this);
  int e = l->e() / field_->e();
  // Tame tower: the different of L/K is e(L|K) - 1.
  a.level_ = static_cast<int>(transported_level(tame_different(e), e, level_));
  return a;
}

AddChar standard_addchar(const FieldPtr& k) {
  FieldPtr f = k->base();
  AddChar b = AddChar::base(f);
  if (!k->parent()) return b;
  return b.pullback(k);
}

int measure_addchar_level(const AddChar& psi, int search_from) {
  const FieldPtr& k = psi.field();
  int best = search_from - 1;
  // best = max{j : psi nontrivial on p^j}; then psi is trivial on p^{-c}.
  for (int j = search_from; j <= 8; ++j) {
    bool nontrivial = false;
    for (std::uint32_t a = 1; a < k->q() && !nontrivial; ++a)
      if (!psi(LFElem::monomial(k, FqElem{a}, j)).is_zero()) nontrivial = true;
    if (nontrivial) best = j;
  }
  return -(best + 1);
}

int MultChar::artin() const {
  if (sw_ > 0) return sw_ + 1;
  if (!explicit_form()) return base_->artin() == 0 ? 0 : 1;
  return on_mu_ % static_cast<std::int64_t>(field_->q() - 1) == 0 ? 0 : 1;
}

bool MultChar::is_trivial() const {
  if (!explicit_form())
    throw DomainError("is_trivial: not decidable on a pullback node directly");
  return on_pi_.is_zero() && on_mu_ == 0 && wild_.empty();
}

MultChar build_multchar(const FieldPtr& k, const QmodZ& on_uniformizer,
                        std::int64_t on_mu, std::vector<WildCoeff> wild) {
  MultChar m;
  m.field_ = k;
  std::int64_t qm = static_cast<std::int64_t>(k->q()) - 1;
  m.on_pi_ = on_uniformizer;
  m.on_mu_ = ((on_mu % qm) + qm) % qm;
  for (auto& w : wild) {
    if (!w.c.field()->same_as(*k))
      throw DomainError("build_multchar: coefficient from another field");
    if (w.c.is_zero()) continue;
    if (w.c.valuation() != -w.i)
      throw DomainError("build_multchar: coefficient c_" + std::to_string(w.i) +
                        " must have valuation " + std::to_string(-w.i));
    if (w.i != 1)
      throw DomainError(
          "build_multchar: explicit wild data is supported on U^1/U^2 only");
    m.wild_.push_back(WildCoeff{w.i, LFElem(k, w.c.start(), w.c.coeffs(),
                                            std::min(w.c.abs_prec(), 1))});
  }
  m.sw_ = m.wild_.empty() ? 0 : 1;
  m.level_ = m.sw_;
  return m;
}

MultChar trivial_multchar(const FieldPtr& k) { return build_multchar(k, QmodZ(), 0); }

QmodZ MultChar::operator()(const LFElem& x) const {
  if (!x.field()->same_as(*field_))
    throw DomainError("MultChar: element from another field");
  if (base_) {
    LFElem n = norm_trace(field_, base_->field(), x).norm;
    return (*base_)(n);
  }
  const FqField& r = *field_->residue();
  int v = x.valuation();
  FqElem a0 = x.leading();
  QmodZ val = on_pi_.times(v) + QmodZ(r.log(a0) * on_mu_, r.order() - 1);
  if (!wild_.empty()) {
    // principal part 1 + (a1/a0) w + ...
    FqElem a1 = x.coeff(v + 1);
    LFElem y = LFElem::monomial(field_, r.div(a1, a0), 1);
    AddChar psi = standard_addchar(field_);
    for (const auto& w : wild_) val += psi(w.c * y);
  }
  return val;
}

MultChar MultChar::operator*(const MultChar& o) const {
  if (!explicit_form() || !o.explicit_form())
    throw DomainError("MultChar product: both characters must be explicit");
  if (!field_->same_as(*o.field_))
    throw DomainError("MultChar product: different fields");
  LFElem c = LFElem::zero(field_, 1);
  for (const auto& w : wild_) c = c + w.c;
  for (const auto& w : o.wild_) c = c + w.c;
  std::vector<WildCoeff> wild;
  if (!c.is_zero()) wild.push_back(WildCoeff{1, c});
  return build_multchar(field_, on_pi_ + o.on_pi_, on_mu_ + o.on_mu_, wild);
}

MultChar MultChar::power(std::int64_t k) const {
  if (!explicit_form()) throw DomainError("MultChar power: must be explicit");
  std::vector<WildCoeff> wild;
  for (const auto& w : wild_) {
    LFElem c = w.c.scale(field_->residue()->from_int(k));
    if (!c.is_zero()) wild.push_back(WildCoeff{1, c});
  }
  return build_multchar(field_, on_pi_.times(k), on_mu_ * k, wild);
}

MultChar pullback_norm(const MultChar& chi, const FieldPtr& l) {
  const FieldPtr& k = chi.field();
  auto chain = chain_between(l, k);  // validates ancestry
  bool unramified = l->e() == k->e();
  const FqField& rl = *l->residue();
  std::int64_t ql = static_cast<std::int64_t>(rl.order()) - 1;
  if (chi.explicit_form() && (chi.swan() == 0 || unramified)) {
    LFElem w_l = LFElem::monomial(l, rl.one(), 1);
    LFElem g_l = LFElem::constant(l, rl.generator());
    QmodZ on_pi = chi(norm_down(w_l, k));
    QmodZ on_g = chi(norm_down(g_l, k));
    // on_g = j / ql exactly
    if (ql % on_g.den() != 0)
      throw InvariantViolation("pullback_norm: value on mu has wrong order");
    std::int64_t on_mu = on_g.num() * (ql / on_g.den());
    std::vector<WildCoeff> wild;
    for (const auto& w : chi.wild()) wild.push_back(WildCoeff{1, embed(w.c, l)});
    return build_multchar(l, on_pi, on_mu, wild);
  }
  MultChar m;
  m.field_ = l;
  m.base_ = std::make_shared<const MultChar>(chi);
  std::int64_t e = l->e() / k->e();
  m.sw_ = static_cast<int>(chi.swan() * e);
  m.level_ = m.sw_;
  LFElem w_l = LFElem::monomial(l, rl.one(), 1);
  m.on_pi_ = chi(norm_down(w_l, k));
  QmodZ on_g = chi(norm_down(LFElem::constant(l, rl.generator()), k));
  m.on_mu_ = on_g.num() * (ql / on_g.den());
  return m;
}

}  // namespace epi
