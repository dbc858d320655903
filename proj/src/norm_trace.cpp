#include "epi/norm_trace.hpp"

#include "epi/errors.hpp"
#include "epi/linalg.hpp"

namespace epi {

namespace {

// Coordinates of k_L over k_K in the basis 1, g_L, ..., g_L^{d-1}.
class ResidueCoordinates {
 public:
  explicit ResidueCoordinates(const LocalField& l)
      : rk_(l.parent()->residue()), rl_(l.residue()), d_(l.step_degree()),
        mult_(l.parent_embed_multiplier()) {
    int fk = rk_->degree();
    int dim = rl_->degree();
    int p = rl_->p();
    basis_ = FqMatrix(FqField::get(p, 1), dim, dim);
    // column (s, j) = iota(g_K^s) g_L^j
    for (int j = 0; j < d_; ++j) {
      for (int s = 0; s < fk; ++s) {
        FqElem v = rl_->mul(rl_->exp(mult_ * s), rl_->exp(j));
        auto dig = rl_->digits(v);
        for (int r = 0; r < dim; ++r)
          basis_.at(r, j * fk + s) = FqElem{static_cast<std::uint32_t>(dig[r])};
      }
    }
    if (basis_.rank() != static_cast<std::size_t>(dim))
      throw InvariantViolation("unramified step: basis is degenerate");
  }

  std::vector<FqElem> coordinates(FqElem a) const {
    int fk = rk_->degree();
    auto dig = rl_->digits(a);
    std::vector<FqElem> rhs(dig.size());
    for (std::size_t i = 0; i < dig.size(); ++i)
      rhs[i] = FqElem{static_cast<std::uint32_t>(dig[i])};
    std::vector<FqElem> sol;
    basis_.solve(rhs, sol);
    std::vector<FqElem> out(d_, FqElem{0});
    for (int j = 0; j < d_; ++j) {
      FqElem acc{0};
      for (int s = 0; s < fk; ++s) {
        FqElem c = rk_->from_int(sol[j * fk + s].code);
        acc = rk_->add(acc, rk_->mul(c, rk_->exp(s)));
      }
      out[j] = acc;
    }
    return out;
  }

 private:
  FqPtr rk_, rl_;
  int d_;
  std::int64_t mult_;
  FqMatrix basis_;
};

std::vector<LFElem> tame_coordinates(const LFElem& x) {
  const FieldPtr& l = x.field();
  const FieldPtr& k = l->parent();
  const FqField& r = *k->residue();
  int e = l->step_degree();
  FqElem u = l->step_unit();
  std::vector<LFElem> out;
  out.reserve(e);
  for (int j = 0; j < e; ++j) {
    int prec;
    if (x.exact()) {
      prec = LFElem::kExact;
    } else {
      long long a = x.abs_prec() - j;
      prec = static_cast<int>(a >= 0 ? (a + e - 1) / e : -((-a) / e));
    }
    std::vector<FqElem> c;
    int start = 0;
    bool first = true;
    for (std::size_t i = 0; i < x.coeffs().size(); ++i) {
      int m = x.start() + static_cast<int>(i);
      int rem = ((m - j) % e + e) % e;
      if (rem != 0) continue;
      int km = (m - j) / e;
      if (first) {
        start = km;
        first = false;
      }
      while (static_cast<int>(c.size()) < km - start) c.push_back(FqElem{0});
      c.push_back(r.mul(x.coeffs()[i], r.pow(u, km)));
    }
    out.emplace_back(k, start, std::move(c), prec);
  }
  return out;
}

std::vector<LFElem> unramified_coordinates(const LFElem& x,
                                           const ResidueCoordinates& rc) {
  const FieldPtr& l = x.field();
  const FieldPtr& k = l->parent();
  int d = l->step_degree();
  std::vector<std::vector<FqElem>> cs(d);
  for (std::size_t i = 0; i < x.coeffs().size(); ++i) {
    auto co = rc.coordinates(x.coeffs()[i]);
    for (int j = 0; j < d; ++j) cs[j].push_back(co[j]);
  }
  std::vector<LFElem> out;
  for (int j = 0; j < d; ++j)
    out.emplace_back(k, x.start(), std::move(cs[j]), x.abs_prec());
  return out;
}

NormTrace one_step(const LFElem& xn, const LFElem& xt) {
  const FieldPtr& l = xn.field();
  const FieldPtr& k = l->parent();
  int d = l->step_degree();
  std::vector<std::vector<LFElem>> m(d, std::vector<LFElem>(d));
  LFElem tr = LFElem::zero(k);
  if (l->kind() == StepKind::Tame) {
    for (int col = 0; col < d; ++col) {
      auto co = tame_coordinates(xn.shift(col));
      for (int row = 0; row < d; ++row) m[row][col] = co[row];
    }
    auto ct = tame_coordinates(xt);
    // Tr(s^j) = 0 for 0 < j < e and Tr(1) = e.
    tr = ct[0].scale(k->residue()->from_int(d));
  } else {
    ResidueCoordinates rc(*l);
    const FqField& rl = *l->residue();
    for (int col = 0; col < d; ++col) {
      auto co = unramified_coordinates(xn.scale(rl.exp(col)), rc);
      for (int row = 0; row < d; ++row) m[row][col] = co[row];
    }
    for (int col = 0; col < d; ++col) {
      auto co = unramified_coordinates(xt.scale(rl.exp(col)), rc);
      tr = tr + co[col];
    }
  }
  LFElem nm = subset_determinant(m, LFElem::zero(k), LFElem::one(k));
  return {nm, tr};
}

}  // namespace

std::vector<LFElem> step_coordinates(const LFElem& x) {
  const FieldPtr& l = x.field();
  if (!l->parent()) throw DomainError("step_coordinates: base field has no parent");
  if (l->kind() == StepKind::Tame) return tame_coordinates(x);
  ResidueCoordinates rc(*l);
  return unramified_coordinates(x, rc);
}

NormTrace norm_trace(const FieldPtr& l, const FieldPtr& k, const LFElem& x,
                     int out_prec) {
  if (!x.field()->same_as(*l))
    throw DomainError("norm_trace: element does not live in " + l->describe());
  auto chain = chain_between(l, k);
  LFElem n(l, x.start(), x.coeffs(), x.abs_prec());
  LFElem t = n;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    auto r = one_step(n, t);
    n = r.norm;
    t = r.trace;
  }
  n = LFElem(k, n.start(), n.coeffs(), n.abs_prec());
  t = LFElem(k, t.start(), t.coeffs(), t.abs_prec());
  if (n.abs_prec() < out_prec || t.abs_prec() < out_prec) {
    int got = std::min(n.abs_prec(), t.abs_prec());
    int deg = l->degree_over(*k);
    throw PrecisionError(
        "norm_trace: result known mod w^" + std::to_string(got) +
        ", requested w^" + std::to_string(out_prec) +
        "; raise input precision by at least " +
        std::to_string((out_prec - got) * deg));
  }
  return {n, t};
}

LFElem norm_down(const LFElem& x, const FieldPtr& k) {
  return norm_trace(x.field(), k, x).norm;
}

LFElem trace_down(const LFElem& x, const FieldPtr& k) {
  return norm_trace(x.field(), k, x).trace;
}

std::uint32_t UnitQuotient::size() const { return field->q(); }

FqElem UnitQuotient::to_residue(const LFElem& x) const {
  const FqField& r = *field->residue();
  if (level == 0) {
    if (x.valuation() != 0) throw DomainError("unit_quotients: not a unit");
    return x.leading();
  }
  if (x.valuation() != 0) throw DomainError("unit_quotients: not a unit");
  FqElem a0 = x.leading();
  if (a0 != r.one()) throw DomainError("unit_quotients: not a principal unit");
  for (int i = 1; i < level; ++i)
    if (x.coeff(i).code != 0)
      throw DomainError("unit_quotients: element not in U^" + std::to_string(level));
  return x.coeff(level);
}

LFElem UnitQuotient::from_residue(FqElem a) const {
  if (level == 0) return LFElem::constant(field, a);
  return LFElem::one(field) + LFElem::monomial(field, a, level);
}

UnitQuotient unit_quotients(const FieldPtr& k, int level) {
  if (level < 0) throw DomainError("unit_quotients: level must be >= 0");
  return UnitQuotient{k, level};
}

LFElem teichmuller(const FieldPtr& k, FqElem a) { return LFElem::constant(k, a); }

}  // namespace epi
