#include "epi/strata_lab.hpp"

#include <algorithm>

#include "epi/errors.hpp"
#include "epi/norm_trace.hpp"

namespace epi {

LFMatrix::LFMatrix(FieldPtr k, int n)
    : k_(std::move(k)), n_(n), a_(static_cast<std::size_t>(n) * n, LFElem::zero(k_)) {}

LFMatrix LFMatrix::identity(const FieldPtr& k, int n) {
  LFMatrix m(k, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = LFElem::one(k);
  return m;
}

LFMatrix LFMatrix::scalar(const LFElem& a, int n) {
  LFMatrix m(a.field(), n);
  for (int i = 0; i < n; ++i) m.at(i, i) = a;
  return m;
}

LFMatrix LFMatrix::operator+(const LFMatrix& o) const {
  LFMatrix r = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
  return r;
}

LFMatrix LFMatrix::operator-(const LFMatrix& o) const {
  LFMatrix r = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
  return r;
}

LFMatrix LFMatrix::operator-() const {
  LFMatrix r = *this;
  for (auto& x : r.a_) x = -x;
  return r;
}

LFMatrix LFMatrix::operator*(const LFMatrix& o) const {
  if (n_ != o.n_) throw DomainError("LFMatrix: size mismatch");
  LFMatrix r(k_, n_);
  for (int i = 0; i < n_; ++i)
    for (int l = 0; l < n_; ++l) {
      const LFElem& x = at(i, l);
      if (x.is_zero() && x.exact()) continue;
      for (int j = 0; j < n_; ++j) {
        const LFElem& y = o.at(l, j);
        if (y.is_zero() && y.exact()) continue;
        r.at(i, j) = r.at(i, j) + x * y;
      }
    }
  return r;
}

LFMatrix LFMatrix::times(const LFElem& c) const {
  LFMatrix r = *this;
  for (auto& x : r.a_) x = x * c;
  return r;
}

LFElem LFMatrix::trace() const {
  LFElem t = LFElem::zero(k_);
  for (int i = 0; i < n_; ++i) t = t + at(i, i);
  return t;
}

LFElem LFMatrix::det() const {
  std::vector<std::vector<LFElem>> m(n_, std::vector<LFElem>(n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m[i][j] = at(i, j);
  return subset_determinant(m, LFElem::zero(k_), LFElem::one(k_));
}

namespace {

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long long ceil_div(long long a, long long b) { return -floor_div(-a, b); }

int inverse_mod(int a, int m) {
  a %= m;
  if (a < 0) a += m;
  for (int x = 1; x < m; ++x)
    if ((static_cast<long long>(a) * x) % m == 1) return x;
  if (m == 1) return 0;
  throw DomainError("inverse_mod: not invertible");
}

// One standard solution: monomial normal form over K.
void fill_normal_form(Stratum& s) {
  const FieldPtr& k = s.field;
  s.alpha = LFMatrix(k, s.n);
  s.alpha_inv = LFMatrix(k, s.n);
  for (int j = 0; j + 1 < s.n; ++j) {
    s.alpha.at(j + 1, j) = LFElem::one(k);
    s.alpha_inv.at(j, j + 1) = LFElem::one(k);
  }
  s.alpha.at(0, s.n - 1) = s.varpi_alpha.inverse(1);
  s.alpha_inv.at(s.n - 1, 0) = s.varpi_alpha;
}

}  // namespace

int Stratum::level(const LFMatrix& x) const {
  long long best = LFElem::kExact;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      long long v = x.at(a, b).val_lower();
      if (v >= LFElem::kExact) continue;
      best = std::min(best, n * v + weights[a] - weights[b]);
    }
  return static_cast<int>(best);
}

LFMatrix Stratum::truncate(const LFMatrix& x, int lvl) const {
  LFMatrix r = x;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      long long prec = ceil_div(static_cast<long long>(lvl) - weights[a] + weights[b], n);
      r.at(a, b) = x.at(a, b).truncated(static_cast<int>(prec));
    }
  return r;
}

LFMatrix Stratum::kp_generator(int lvl) const {
  int b = static_cast<int>(((static_cast<long long>(lvl) * inverse_mod(e, n)) % n + n) % n);
  long long a = (static_cast<long long>(lvl) - static_cast<long long>(e) * b) / n;
  LFMatrix m = LFMatrix::identity(field, n);
  for (int k = 0; k < b; ++k) m = truncate(m * alpha_inv, budget);
  return truncate(m.times(LFElem::monomial(field, field->residue()->one(), static_cast<int>(a))), budget);
}

QmodZ Stratum::psi_b(const LFMatrix& x) const { return psi_k(x.trace()); }

LFMatrix Stratum::unipotent_inverse(const LFMatrix& x) const {
  if (level(x) < 1) throw DomainError("unipotent_inverse: argument not in the radical");
  LFMatrix term = LFMatrix::identity(field, n), sum = term;
  LFMatrix neg = -x;
  for (int k = 1; k <= budget; ++k) {
    term = truncate(term * neg, budget);
    if (level(term) >= budget) break;
    sum = sum + term;
  }
  return truncate(sum, budget);
}

Stratum build_stratum(const FieldPtr& k, int p, int r, FqElem zeta,
                      const std::optional<LFMatrix>& perturb) {
  if (k->p() != p) throw DomainError("build_stratum: characteristic mismatch");
  if (r < 1) throw DomainError("build_stratum: r must be >= 1");
  Stratum s;
  s.field = k;
  s.base = k->base();
  s.p = p;
  s.r = r;
  s.n = 1;
  for (int i = 0; i < r; ++i) s.n *= p;
  s.e = k->e();
  s.zeta = zeta;
  const FqField& rk = *k->residue();
  FqElem zk = k->embed_residue_from(*s.base, zeta);
  if (zk.code == 0) throw DomainError("build_stratum: zeta must be a unit");
  FqElem sign = (s.n % 2 == 1 || p == 2) ? rk.one() : rk.neg(rk.one());
  s.varpi_alpha = base_uniformizer_in(k).scale(rk.mul(sign, rk.inv(zk)));
  s.weights.resize(s.n);
  for (int j = 0; j < s.n; ++j) s.weights[j] = s.e * (s.n - 1 - j);
  s.budget = 2 * s.e + 2 * s.n + 2;
  s.psi_k = standard_addchar(k);
  fill_normal_form(s);
  if (perturb) {
    if (s.level(*perturb) < 1)
      throw DomainError("build_stratum: perturbation must lie in the radical");
    LFMatrix one = LFMatrix::identity(k, s.n);
    LFMatrix u = one + *perturb;
    LFMatrix uinv = s.unipotent_inverse(*perturb);
    s.alpha = s.truncate(s.alpha * u, s.budget);
    s.alpha_inv = s.truncate(uinv * s.alpha_inv, s.budget);
  }
  return s;
}

std::vector<FqElem> GradedSpace::reduce(const Stratum& s, const LFMatrix& x) const {
  int lv = s.level(x);
  if (lv < i)
    throw InvariantViolation("graded reduction: element has level " +
                             std::to_string(lv) + " below " + std::to_string(i));
  std::vector<FqElem> v(basis.size());
  for (std::size_t b = 0; b < basis.size(); ++b)
    v[b] = x.at(basis[b].row, basis[b].col).coeff(basis[b].nu);
  return v;
}

LFMatrix GradedSpace::lift(const Stratum& s, const std::vector<FqElem>& v) const {
  LFMatrix m(s.field, s.n);
  for (std::size_t b = 0; b < basis.size(); ++b) {
    if (v[b].code == 0) continue;
    const auto& q = basis[b];
    m.at(q.row, q.col) = m.at(q.row, q.col) + LFElem::monomial(s.field, v[b], q.nu);
  }
  return m;
}

GradedSpace graded_space(const Stratum& s, int i, int j) {
  if (j < 1) throw DomainError("graded_space: j must be >= 1");
  GradedSpace g;
  g.i = i;
  g.j = j;
  for (int lvl = i; lvl < i + j; ++lvl) {
    for (int row = 0; row < s.n; ++row) {
      for (int col = 0; col < s.n; ++col) {
        long long num = static_cast<long long>(lvl) - s.weights[row] + s.weights[col];
        if (num % s.n != 0) continue;
        g.basis.push_back({row, col, static_cast<int>(num / s.n), lvl});
      }
    }
  }
  return g;
}

GradedMap conjugation_map(const Stratum& s, int i, int j) {
  GradedSpace g = graded_space(s, i, j);
  FqMatrix m(s.field->residue(), g.dim(), g.dim());
  std::vector<FqElem> e(g.dim(), FqElem{0});
  for (std::size_t b = 0; b < g.dim(); ++b) {
    std::fill(e.begin(), e.end(), FqElem{0});
    e[b] = s.field->residue()->one();
    LFMatrix x = g.lift(s, e);
    LFMatrix y = s.truncate(s.alpha * x * s.alpha_inv - x, i + j);
    auto col = g.reduce(s, y);
    for (std::size_t a = 0; a < g.dim(); ++a) m.at(a, b) = col[a];
  }
  return {g, m};
}

namespace {

FqMatrix matrix_power(const FqMatrix& m, int k) {
  FqMatrix r = FqMatrix::identity(m.field(), m.rows());
  for (int i = 0; i < k; ++i) r = r * m;
  return r;
}

FqMatrix columns(const FqPtr& k, const std::vector<std::vector<FqElem>>& vs,
                 std::size_t dim) {
  FqMatrix m(k, dim, vs.size());
  for (std::size_t c = 0; c < vs.size(); ++c)
    for (std::size_t r = 0; r < dim; ++r) m.at(r, c) = vs[c][r];
  return m;
}

}  // namespace

GradedAnalysis graded_map_analysis(const Stratum& s, int i, int j) {
  if (j < 1 || j > s.n) throw DomainError("graded_map_analysis: need 1 <= j <= p^r");
  const FqPtr& k = s.field->residue();
  GradedAnalysis out;
  out.a = conjugation_map(s, i, j);
  const std::size_t dim = out.a.space.dim();
  const FqMatrix& a = out.a.matrix;
  out.a_top = {out.a.space, matrix_power(a, s.n - 1)};
  out.nilpotent = (out.a_top.matrix * a).is_zero();
  auto ker = a.kernel();
  out.kernel_dim = ker.size();
  out.rank = a.rank();
  out.top_image_is_kernel = out.a_top.matrix.rank() == out.kernel_dim &&
                            (a * out.a_top.matrix).is_zero();
  auto left = a.transpose().kernel();
  if (left.size() != ker.size())
    throw InvariantViolation("graded_map_analysis: kernel and cokernel differ in size");
  FqMatrix kmat = columns(k, ker, dim);
  FqMatrix lmat = columns(k, left, dim).transpose();
  out.s_k = {out.a.space, kmat * lmat};

  bool kills = true;
  for (int lvl = i; lvl < i + j; ++lvl) {
    LFMatrix kp = s.truncate(s.kp_generator(lvl), i + j);
    auto v = out.a.space.reduce(s, kp);
    auto img = out.s_k.matrix.apply(v);
    for (auto x : img)
      if (x.code != 0) kills = false;
  }
  out.kills_kp_line = kills;

  // A^{n-1} = kmat * M, M = u * lmat
  const std::size_t jd = ker.size();
  FqMatrix mm(k, jd, dim);
  for (std::size_t c = 0; c < dim; ++c) {
    std::vector<FqElem> col(dim), sol;
    for (std::size_t r = 0; r < dim; ++r) col[r] = out.a_top.matrix.at(r, c);
    if (!kmat.solve(col, sol))
      throw InvariantViolation("graded_map_analysis: A^{p^r-1} leaves Ker A");
    for (std::size_t r = 0; r < jd; ++r) mm.at(r, c) = sol[r];
  }
  FqMatrix lt = lmat.transpose();
  out.u = FqMatrix(k, jd, jd);
  for (std::size_t r = 0; r < jd; ++r) {
    std::vector<FqElem> rhs(dim), sol;
    for (std::size_t c = 0; c < dim; ++c) rhs[c] = mm.at(r, c);
    if (!lt.solve(rhs, sol))
      throw InvariantViolation("graded_map_analysis: A^{p^r-1} does not factor through s_K");
    for (std::size_t c = 0; c < jd; ++c) out.u.at(r, c) = sol[c];
  }
  out.u_invertible = out.u.rank() == jd;
  return out;
}


namespace {

LFMatrix mat_pow(const Stratum& s, const LFMatrix& m, int k) {
  LFMatrix r = LFMatrix::identity(s.field, s.n);
  for (int i = 0; i < k; ++i) r = s.truncate(r * m, s.budget);
  return r;
}

std::vector<FqElem> scaled(const FqField& k, const std::vector<FqElem>& v, FqElem c) {
  std::vector<FqElem> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = k.mul(v[i], c);
  return r;
}

bool all_zero(const std::vector<FqElem>& v) {
  return std::all_of(v.begin(), v.end(), [](FqElem x) { return x.code == 0; });
}

}  // namespace

ConjugatorSolution solve_conjugator(const Stratum& s, const LFElem& c) {
  if (c.valuation() != -1) throw DomainError("solve_conjugator: c must have valuation -1");
  if (s.e < s.n + 1)
    throw DomainError("solve_conjugator: c alpha^{-1} lies outside the radical (e(K|F) <= p^r)");
  if (s.n < 2) throw DomainError("solve_conjugator: p^r must be >= 2");
  const int j = s.n - 1;
  GradedMap a = conjugation_map(s, 1, j);
  FqMatrix top = matrix_power(a.matrix, s.n - 1);
  LFMatrix dinv = s.alpha_inv.times(c);
  ConjugatorSolution out;
  out.c = c;
  auto target = a.space.reduce(s, s.truncate(dinv, 1 + j));
  if (!top.solve(target, out.z))
    throw InvariantViolation("solve_conjugator: delta^{-1} is not in the image of A^{p^r-1}");
  const int m = s.n - 2;
  LFMatrix sum(s.field, s.n);
  LFMatrix dpow = LFMatrix::identity(s.field, s.n);
  for (int k = 0; k <= m; ++k) {
    auto v = matrix_power(a.matrix, m - k).apply(out.z);
    sum = sum + s.truncate(a.space.lift(s, v) * dpow, 1 + j);
    dpow = s.truncate(dpow * dinv, 1 + j);
  }
  out.x = a.space.reduce(s, s.truncate(sum, 1 + j));
  out.x_lift = a.space.lift(s, out.x);
  LFMatrix res = s.alpha * out.x_lift * s.alpha_inv - out.x_lift - out.x_lift * dinv - dinv;
  out.residual_zero = all_zero(a.space.reduce(s, s.truncate(res, 1 + j)));
  return out;
}

QmodZ kp_epsilon(const Stratum& s, const LFMatrix& w) {
  GradedMap a = conjugation_map(s, 0, 1);
  auto wv = a.space.reduce(s, s.truncate(w, 1));
  if (!all_zero(a.matrix.apply(wv)))
    throw InvariantViolation("kp_epsilon: argument is not in K[alpha] modulo q");
  FqMatrix top = matrix_power(a.matrix, s.n - 1);
  std::vector<FqElem> b;
  if (!top.solve(wv, b)) throw InvariantViolation("kp_epsilon: argument outside Im A^{p^r-1}");
  return s.psi_b(a.space.lift(s, b));
}

bool IdentityReport::conjugation_hold() const {
  if (samples.empty()) return false;
  for (const auto& x : samples) {
    if (!(x.conjugated == x.pairing) || !(x.pairing == x.eta)) return false;
    if (!(x.eps_zeta == x.psi_zeta)) return false;
    if (!x.scalar_image || !x.decomposition_in_kp) return false;
  }
  return true;
}

bool IdentityReport::all_hold() const {
  if (!theta_trivial_on_kp || !conjugation_hold()) return false;
  for (const auto& x : samples)
    if (!x.det_congruence) return false;
  return true;
}

IdentityReport verify_conjugation_identities(const Stratum& s,
                                             const ConjugatorSolution& sol,
                                             const std::vector<FqElem>& zetas) {
  const FqField& rk = *s.field->residue();
  const int lcut = s.e + 2;
  const int peel_top = (1 + s.n) / 2;
  IdentityReport rep;

  rep.theta_trivial_on_kp = true;
  for (int lvl = 1; lvl < lcut; ++lvl) {
    LFMatrix kp = s.kp_generator(lvl);
    for (std::uint32_t code = 1; code < rk.order(); ++code) {
      LFElem lam = LFElem::constant(s.field, FqElem{code});
      if (!(s.psi_b(s.truncate(s.alpha * kp.times(lam), lcut)) == QmodZ()))
        rep.theta_trivial_on_kp = false;
    }
  }

  std::vector<GradedMap> peel_maps;
  std::vector<std::vector<FqElem>> kp_vecs;
  for (int lvl = 1; lvl <= peel_top; ++lvl) {
    peel_maps.push_back(conjugation_map(s, lvl, 1));
    kp_vecs.push_back(peel_maps.back().space.reduce(s, s.truncate(s.kp_generator(lvl), lvl + 1)));
  }
  GradedMap a0 = conjugation_map(s, 0, 1);
  FqMatrix a0_top = matrix_power(a0.matrix, s.n - 1);

  const LFMatrix one = LFMatrix::identity(s.field, s.n);
  const LFMatrix x = sol.x_lift;
  const LFMatrix conj_inv = s.unipotent_inverse(x);
  LFMatrix alpha_pow = s.truncate(s.alpha * mat_pow(s, s.alpha_inv, s.n), s.budget);
  LFElem cn = sol.c.pow(s.n);
  LFElem det_ainv = s.alpha_inv.det();

  for (FqElem z : zetas) {
    IdentitySample smp;
    smp.zeta = z;
    LFMatrix y = s.alpha_inv.times(sol.c.scale(z));

    // (1+x)(1+y)(1+x)^{-1} = (1+v)(1+h), v in K[alpha], h deeper
    LFMatrix g = s.truncate((one + x) * (one + y) * conj_inv, lcut);
    smp.decomposition_in_kp = true;
    for (int lvl = 1; lvl <= peel_top; ++lvl) {
      const GradedMap& gm = peel_maps[lvl - 1];
      auto comp = gm.space.reduce(s, s.truncate(g - one, lvl + 1));
      if (!all_zero(gm.matrix.apply(comp))) smp.decomposition_in_kp = false;
      const auto& kv = kp_vecs[lvl - 1];
      std::size_t piv = 0;
      while (piv < kv.size() && kv[piv].code == 0) ++piv;
      FqElem lam = rk.div(comp[piv], kv[piv]);
      if (!(scaled(rk, kv, lam) == comp)) smp.decomposition_in_kp = false;
      if (lam.code == 0) continue;
      LFMatrix v = s.kp_generator(lvl).times(LFElem::constant(s.field, lam));
      g = s.truncate(s.unipotent_inverse(v) * g, lcut);
    }
    LFMatrix h = g - one;
    if (s.level(h) <= peel_top) smp.decomposition_in_kp = false;
    smp.conjugated = s.psi_b(s.truncate(s.alpha * h, lcut));
    smp.pairing = s.psi_b(s.truncate(-(x.times(sol.c) * y), lcut));

    LFMatrix w = -(alpha_pow.times(cn) * y);
    smp.eta = kp_epsilon(s, w);

    LFElem d = (one + y).det();
    smp.chi = s.psi_k(sol.c * (d - LFElem::one(s.field)));
    LFElem rhs = LFElem::one(s.field) + cn.scale(rk.pow(z, s.n)) * det_ainv;
    smp.det_congruence = (d - rhs).val_lower() >= 2;

    LFMatrix zi = LFMatrix::scalar(LFElem::constant(s.field, z), s.n);
    smp.eps_zeta = kp_epsilon(s, zi);
    smp.psi_zeta = s.psi_k(LFElem::constant(s.field, z));
    std::vector<FqElem> zv(a0.space.dim(), FqElem{0});
    // zeta_0: zeta in the top-left slot
    for (std::size_t b = 0; b < a0.space.dim(); ++b)
      if (a0.space.basis[b].row == 0 && a0.space.basis[b].col == 0) zv[b] = z;
    smp.scalar_image = a0_top.apply(zv) == a0.space.reduce(s, s.truncate(zi, 1));
    rep.samples.push_back(smp);
  }
  return rep;
}

OracleResult oracle_root_set(const FieldPtr& k, int p, int r, FqElem zeta) {
  int n = 1;
  for (int i = 0; i < r; ++i) n *= p;
  OracleResult out;
  out.field = k;
  out.candidates = k->q() - 1;
  if (n > 4 || k->q() > 16)
    throw DomainError("oracle_root_set: lab limited to p^r <= 4 and q_K <= 16");
  if (k->e() <= n) {
    out.note = "valuation obstruction: c alpha^{-1} has level <= 0 when e(K|F) <= p^r";
    return out;
  }
  if (k->e() != n + 1)
    throw DomainError("oracle_root_set: graded oracle covers e(K|F) = 1 + p^r only");
  Stratum s = build_stratum(k, p, r, zeta);
  const FqField& rk = *k->residue();
  GradedMap a0 = conjugation_map(s, 0, 1);
  FqMatrix a0_top = matrix_power(a0.matrix, n - 1);
  const LFMatrix one = LFMatrix::identity(k, n);
  LFMatrix alpha_pow = s.truncate(s.alpha * mat_pow(s, s.alpha_inv, n), s.budget);
  for (std::uint32_t g = 1; g < rk.order(); ++g) {
    LFElem c = LFElem::monomial(k, FqElem{g}, -1);
    LFElem cn = c.pow(n);
    bool keep = true;
    for (std::uint32_t zc = 1; zc < rk.order() && keep; ++zc) {
      LFMatrix y = s.alpha_inv.times(c.scale(FqElem{zc}));
      QmodZ chi = s.psi_k(c * ((one + y).det() - LFElem::one(k)));
      LFMatrix w = s.truncate(-(alpha_pow.times(cn) * y), 1);
      auto wv = a0.space.reduce(s, w);
      std::vector<FqElem> b;
      if (!a0_top.solve(wv, b)) throw InvariantViolation("oracle_root_set: epsilon undefined");
      QmodZ eta = s.psi_b(a0.space.lift(s, b));
      keep = chi == eta;
    }
    if (keep) out.roots.push_back(FqElem{g});
  }
  std::sort(out.roots.begin(), out.roots.end(),
            [&](FqElem a, FqElem b) { return rk.log(a) < rk.log(b); });
  out.note = "brute force over " + std::to_string(out.candidates) + " leading coefficients";
  return out;
}

CentralizerForm centralizer_form(const FieldPtr& f, int n, int e, FqElem zeta) {
  if (e < 1 || n % e != 0) throw DomainError("centralizer_form: e must divide n");
  const int pr = n / e;
  if (e % f->p() == 0) throw DomainError("centralizer_form: e must be prime to p");
  const FqField& rf = *f->residue();
  FqElem sign = (n % 2 == 1 || f->p() == 2) ? rf.one() : rf.neg(rf.one());
  FqElem u = rf.mul(sign, rf.inv(zeta));
  CentralizerForm out;
  out.k = extend_tame(f, e, static_cast<int>(rf.log(u)));
  const FieldPtr& k = out.k;
  LFElem varpi = base_uniformizer_in(f).scale(u);
  out.alpha_f = LFMatrix(f, n);
  for (int j = 0; j + 1 < n; ++j) out.alpha_f.at(j + 1, j) = LFElem::one(f);
  out.alpha_f.at(0, n - 1) = varpi.inverse(1);

  // f_j = e_{n-p^r+j}; w_K^m f_j = e_{n-p^r+j-p^r m}
  LFElem wk = LFElem::monomial(k, k->residue()->one(), 1);
  out.alpha_k = LFMatrix(k, pr);
  for (int j = 0; j < pr; ++j) {
    int src = n - pr + j;
    for (int idx = 0; idx < n; ++idx) {
      const LFElem& x = out.alpha_f.at(idx, src);
      if (x.is_zero() && x.exact()) continue;
      int off = n - pr - idx;
      int m = (off + pr - 1) / pr;
      int jj = idx - (n - pr) + pr * m;
      out.alpha_k.at(jj, j) = out.alpha_k.at(jj, j) + embed(x, k) * wk.pow(m);
    }
  }
  out.det_b = out.alpha_k.det();
  out.norm_det_b = norm_down(out.det_b, f);
  out.det_f = out.alpha_f.det();
  return out;
}

}  // namespace epi
