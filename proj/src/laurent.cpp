#include "epi/laurent.hpp"

#include <algorithm>

#include "epi/errors.hpp"

namespace epi {

namespace {
int clamp_prec(long long v) {
  return static_cast<int>(std::min<long long>(v, LFElem::kExact));
}
}  // namespace

LFElem::LFElem(FieldPtr k, int start, std::vector<FqElem> coeffs, int abs_prec)
    : field_(std::move(k)), start_(start), coeffs_(std::move(coeffs)),
      abs_prec_(clamp_prec(abs_prec)) {
  normalize();
}

void LFElem::normalize() {
  if (abs_prec_ < kExact) {
    long long keep = static_cast<long long>(abs_prec_) - start_;
    if (keep < 0) keep = 0;
    if (static_cast<long long>(coeffs_.size()) > keep) coeffs_.resize(keep);
  }
  std::size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead].code == 0) ++lead;
  if (lead > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + lead);
    start_ += static_cast<int>(lead);
  }
  while (!coeffs_.empty() && coeffs_.back().code == 0) coeffs_.pop_back();
  if (coeffs_.empty()) start_ = 0;
}

LFElem LFElem::zero(const FieldPtr& k, int abs_prec) {
  return LFElem(k, 0, {}, abs_prec);
}

LFElem LFElem::one(const FieldPtr& k) {
  return LFElem(k, 0, {k->residue()->one()}, kExact);
}

LFElem LFElem::constant(const FieldPtr& k, FqElem a) {
  return LFElem(k, 0, {a}, kExact);
}

LFElem LFElem::monomial(const FieldPtr& k, FqElem a, int m) {
  return LFElem(k, m, {a}, kExact);
}

int LFElem::rel_prec() const {
  if (coeffs_.empty()) return 0;
  return abs_prec_ - start_;
}

int LFElem::valuation() const {
  if (coeffs_.empty())
    throw PrecisionError("valuation: element is zero to precision " +
                         std::to_string(abs_prec_));
  return start_;
}

FqElem LFElem::leading() const {
  valuation();
  return coeffs_.front();
}

FqElem LFElem::coeff(int k) const {
  if (k >= abs_prec_)
    throw PrecisionError("coefficient of w^" + std::to_string(k) +
                         " requested but element known only mod w^" +
                         std::to_string(abs_prec_));
  if (coeffs_.empty() || k < start_) return FqElem{0};
  std::size_t i = static_cast<std::size_t>(k - start_);
  return i < coeffs_.size() ? coeffs_[i] : FqElem{0};
}

void LFElem::check_same(const LFElem& o) const {
  if (!field_ || !o.field_ ||
      (field_ != o.field_ && !field_->same_as(*o.field_)))
    throw DomainError("LFElem: operands live in different fields");
}

LFElem LFElem::operator+(const LFElem& o) const {
  check_same(o);
  int prec = std::min(abs_prec_, o.abs_prec_);
  if (coeffs_.empty()) return LFElem(field_, o.start_, o.coeffs_, prec);
  if (o.coeffs_.empty()) return LFElem(field_, start_, coeffs_, prec);
  const FqField& r = *field_->residue();
  int lo = std::min(start_, o.start_);
  int hi = std::max(start_ + static_cast<int>(coeffs_.size()),
                    o.start_ + static_cast<int>(o.coeffs_.size()));
  if (prec < kExact) hi = std::min(hi, prec);
  std::vector<FqElem> c(std::max(0, hi - lo), FqElem{0});
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    int k = start_ + static_cast<int>(i) - lo;
    if (k < static_cast<int>(c.size())) c[k] = r.add(c[k], coeffs_[i]);
  }
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) {
    int k = o.start_ + static_cast<int>(i) - lo;
    if (k < static_cast<int>(c.size())) c[k] = r.add(c[k], o.coeffs_[i]);
  }
  return LFElem(field_, lo, std::move(c), prec);
}

LFElem LFElem::operator-() const {
  const FqField& r = *field_->residue();
  std::vector<FqElem> c(coeffs_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = r.neg(coeffs_[i]);
  return LFElem(field_, start_, std::move(c), abs_prec_);
}

LFElem LFElem::operator-(const LFElem& o) const { return *this + (-o); }

LFElem LFElem::operator*(const LFElem& o) const {
  check_same(o);
  long long p1 = exact() ? kExact : static_cast<long long>(abs_prec_) + o.val_lower();
  long long p2 = o.exact() ? kExact : static_cast<long long>(o.abs_prec_) + val_lower();
  int prec = clamp_prec(std::min(p1, p2));
  if (coeffs_.empty() || o.coeffs_.empty()) return zero(field_, prec);
  const FqField& r = *field_->residue();
  int st = start_ + o.start_;
  std::size_t len = coeffs_.size() + o.coeffs_.size() - 1;
  if (prec < kExact)
    len = std::min<std::size_t>(len, static_cast<std::size_t>(std::max(0, prec - st)));
  std::vector<FqElem> c(len, FqElem{0});
  for (std::size_t i = 0; i < coeffs_.size() && i < len; ++i) {
    if (coeffs_[i].code == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size() && i + j < len; ++j)
      c[i + j] = r.add(c[i + j], r.mul(coeffs_[i], o.coeffs_[j]));
  }
  return LFElem(field_, st, std::move(c), prec);
}

LFElem LFElem::scale(FqElem a) const {
  const FqField& r = *field_->residue();
  if (a.code == 0) return zero(field_, exact() ? kExact : abs_prec_);
  std::vector<FqElem> c(coeffs_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = r.mul(coeffs_[i], a);
  return LFElem(field_, start_, std::move(c), abs_prec_);
}

LFElem LFElem::shift(int k) const {
  int prec = exact() ? kExact : abs_prec_ + k;
  return LFElem(field_, start_ + k, coeffs_, prec);
}

LFElem LFElem::truncated(int abs_prec) const {
  return LFElem(field_, start_, coeffs_, std::min(abs_prec, abs_prec_));
}

LFElem LFElem::pow(int k, int rel_prec) const {
  if (k < 0) return inverse(rel_prec).pow(-k, rel_prec);
  LFElem result = one(field_), base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    base = base * base;
    k >>= 1;
  }
  return result;
}

LFElem LFElem::inverse(int rel_prec) const {
  int v = valuation();
  const FqField& r = *field_->residue();
  FqElem a0inv = r.inv(coeffs_[0]);
  if (coeffs_.size() == 1 && exact())
    return LFElem(field_, -v, {a0inv}, kExact);
  int n = rel_prec;
  if (!exact()) n = std::min(n, abs_prec_ - v);
  if (n <= 0) throw PrecisionError("inverse: no relative precision requested");
  // Power series inverse of the unit part u = sum b_i w^i, b_0 = 1.
  std::vector<FqElem> b(n, FqElem{0}), inv(n, FqElem{0});
  for (int i = 0; i < n && i < static_cast<int>(coeffs_.size()); ++i)
    b[i] = r.mul(coeffs_[i], a0inv);
  inv[0] = r.one();
  for (int i = 1; i < n; ++i) {
    FqElem acc{0};
    for (int j = 1; j <= i; ++j) acc = r.add(acc, r.mul(b[j], inv[i - j]));
    inv[i] = r.neg(acc);
  }
  for (auto& c : inv) c = r.mul(c, a0inv);
  return LFElem(field_, -v, std::move(inv), -v + n);
}

bool LFElem::congruent(const LFElem& o, int level) const {
  check_same(o);
  if (abs_prec_ < level || o.abs_prec_ < level)
    throw PrecisionError("congruent: operands not known mod w^" +
                         std::to_string(level));
  LFElem d = *this - o;
  return d.val_lower() >= level;
}

bool LFElem::operator==(const LFElem& o) const {
  bool same_field = field_ == o.field_ ||
                    (field_ && o.field_ && field_->same_as(*o.field_));
  return same_field && start_ == o.start_ && coeffs_ == o.coeffs_ &&
         abs_prec_ == o.abs_prec_;
}

namespace {

LFElem embed_one_step(const LFElem& x, const FieldPtr& child) {
  const FqField& rk = *child->parent()->residue();
  const FqField& rl = *child->residue();
  std::vector<FqElem> c;
  if (child->kind() == StepKind::Unramified) {
    std::int64_t m = static_cast<std::int64_t>(rl.order()) - 1;
    c.reserve(x.coeffs().size());
    for (auto a : x.coeffs()) {
      if (a.code == 0) {
        c.push_back(a);
      } else {
        c.push_back(rl.exp(static_cast<std::int64_t>(
            (static_cast<__int128>(rk.log(a)) * child->parent_embed_multiplier()) % m)));
      }
    }
    return LFElem(child, x.start(), std::move(c), x.abs_prec());
  }
  // w_K = u^{-1} w_L^e
  int e = child->step_degree();
  FqElem uinv = rl.inv(child->step_unit());
  if (x.is_zero())
    return LFElem::zero(child, x.exact() ? LFElem::kExact : x.abs_prec() * e);
  std::size_t n = x.coeffs().size();
  c.assign((n - 1) * e + 1, FqElem{0});
  for (std::size_t i = 0; i < n; ++i) {
    int k = x.start() + static_cast<int>(i);
    c[i * e] = rl.mul(x.coeffs()[i], rl.pow(uinv, k));
  }
  int prec = x.exact() ? LFElem::kExact : x.abs_prec() * e;
  return LFElem(child, x.start() * e, std::move(c), prec);
}

}  // namespace

LFElem embed(const LFElem& x, const FieldPtr& l) {
  if (x.field()->same_as(*l)) return LFElem(l, x.start(), x.coeffs(), x.abs_prec());
  auto chain = chain_between(l, x.field());
  LFElem cur = x;
  for (const auto& step : chain) cur = embed_one_step(cur, step);
  return cur;
}

LFElem base_uniformizer_in(const FieldPtr& k) {
  const FqField& r = *k->residue();
  return LFElem::monomial(k, r.inv(k->t_unit()), k->e());
}

}  // namespace epi
