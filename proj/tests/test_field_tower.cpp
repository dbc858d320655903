#include "doctest.h"

#include <random>
#include <set>

#include "epi/errors.hpp"
#include "epi/norm_trace.hpp"

using namespace epi;

namespace {

LFElem random_elem(const FieldPtr& k, std::mt19937_64& rng, int start, int len,
                   int prec) {
  std::uniform_int_distribution<std::uint32_t> d(0, k->q() - 1);
  std::vector<FqElem> c(len);
  for (auto& x : c) x = FqElem{d(rng)};
  if (c[0].code == 0) c[0] = k->residue()->one();
  return LFElem(k, start, c, prec);
}

}  // namespace

TEST_CASE("tower descriptors record absolute invariants") {
  auto f = base_field(2, 1);
  auto t = extend_tame(extend_unramified(f, 2), 3, 0);
  CHECK(t->e() == 3);
  CHECK(t->f() == 2);
  CHECK(t->q() == 4);
  CHECK(t->degree_over(*f) == 6);
  CHECK(t->has_ancestor(*f));
  CHECK_FALSE(f->has_ancestor(*t));
  CHECK_THROWS_AS(extend_tame(f, 2, 0), DomainError);
  auto t2 = extend_tame(extend_unramified(f, 2), 3, 0);
  CHECK(t->same_as(*t2));
}

TEST_CASE("t embeds as U^{-1} w^E") {
  auto f = base_field(3, 1);
  auto k = extend_tame(extend_unramified(extend_tame(f, 2, 1), 2), 4, 3);
  LFElem t = LFElem::monomial(f, f->residue()->one(), 1);
  CHECK(embed(t, k) == base_uniformizer_in(k));
}

TEST_CASE("norm of 1+s for s^3 = t is 1+t") {
  auto f = base_field(2, 1);
  auto l = extend_tame(f, 3, 0);
  LFElem s = LFElem::monomial(l, l->residue()->one(), 1);
  auto nt = norm_trace(l, f, LFElem::one(l) + s.truncated(6), 2);
  LFElem expect = LFElem::one(f) + LFElem::monomial(f, f->residue()->one(), 1);
  CHECK(nt.norm.congruent(expect, 2));
  CHECK(nt.trace.congruent(LFElem::constant(f, f->residue()->one()), 2));
}

TEST_CASE("unramified trace of c t is Tr(c) t") {
  auto f = base_field(2, 1);
  auto l = extend_unramified(f, 2);
  const auto& r = *l->residue();
  for (std::uint32_t a = 0; a < 4; ++a) {
    LFElem x = LFElem::monomial(l, FqElem{a}, 1);
    LFElem tr = trace_down(x, f);
    int expect = r.trace_to_prime(FqElem{a});
    CHECK(tr == LFElem::monomial(f, FqElem{static_cast<std::uint32_t>(expect)}, 1));
  }
}

TEST_CASE("norm and trace agree with products over conjugates") {
  std::mt19937_64 rng(7);
  auto f = base_field(3, 1);
  auto k = extend_unramified(f, 2);  // contains mu_4 and mu_8
  auto l = extend_tame(k, 4, 1);     // Kummer, Galois group mu_4
  const auto& r = *l->residue();
  for (int trial = 0; trial < 10; ++trial) {
    LFElem x = random_elem(l, rng, -2, 12, 10);
    LFElem prod = LFElem::one(l), sum = LFElem::zero(l);
    for (int j = 0; j < 4; ++j) {
      FqElem w = r.exp(2 * j);  // 4th roots of unity in F_9
      std::vector<FqElem> c = x.coeffs();
      for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = r.mul(c[i], r.pow(w, x.start() + static_cast<int>(i)));
      LFElem conj(l, x.start(), c, x.abs_prec());
      prod = prod * conj;
      sum = sum + conj;
    }
    auto nt = norm_trace(l, k, x);
    CHECK(embed(nt.norm, l).congruent(prod, prod.abs_prec()));
    CHECK(embed(nt.trace, l).congruent(sum, std::min(sum.abs_prec(), embed(nt.trace, l).abs_prec())));
  }
  // unramified step: conjugates are Frobenius^j on coefficients
  auto m = extend_unramified(f, 3);
  const auto& rm = *m->residue();
  for (int trial = 0; trial < 10; ++trial) {
    LFElem x = random_elem(m, rng, -1, 6, 5);
    LFElem prod = LFElem::one(m);
    for (int j = 0; j < 3; ++j) {
      std::vector<FqElem> c = x.coeffs();
      for (auto& a : c) a = rm.frobenius(a, j);
      prod = prod * LFElem(m, x.start(), c, x.abs_prec());
    }
    CHECK(embed(norm_down(x, f), m).congruent(prod, prod.abs_prec()));
  }
}

TEST_CASE("norm and trace are multiplicative / additive and transitive") {
  std::mt19937_64 rng(11);
  auto f = base_field(2, 1);
  auto k = extend_unramified(f, 2);
  auto l = extend_tame(k, 3, 1);
  for (int trial = 0; trial < 10; ++trial) {
    LFElem x = random_elem(l, rng, -1, 9, 8);
    LFElem y = random_elem(l, rng, 1, 9, 10);
    auto nx = norm_down(x, f), ny = norm_down(y, f), nxy = norm_down(x * y, f);
    int lv = std::min(nxy.abs_prec(), (nx * ny).abs_prec());
    CHECK(nxy.congruent(nx * ny, lv));
    auto tx = trace_down(x, f), ty = trace_down(y, f), txy = trace_down(x + y, f);
    CHECK(txy.congruent(tx + ty, std::min(txy.abs_prec(), (tx + ty).abs_prec())));
    auto two = norm_down(norm_down(x, k), f);
    CHECK(two.congruent(nx, std::min(two.abs_prec(), nx.abs_prec())));
  }
}

TEST_CASE("precision shortfall and non-ancestors are reported") {
  auto f = base_field(2, 1);
  auto l = extend_tame(f, 3, 0);
  LFElem x = LFElem(l, 0, {FqElem{1}, FqElem{1}}, 2);
  CHECK_THROWS_AS(norm_trace(l, f, x, 5), PrecisionError);
  auto g = base_field(3, 1);
  CHECK_THROWS_AS(norm_trace(l, g, x), DomainError);
  CHECK_THROWS_AS(x.coeff(2), PrecisionError);
}

TEST_CASE("unit quotients and Teichmuller lifts") {
  auto f = base_field(5, 1);
  auto l = extend_tame(extend_unramified(f, 2), 3, 1);
  auto uq = unit_quotients(l, 2);
  CHECK(uq.size() == 25);
  for (std::uint32_t a = 0; a < 25; ++a)
    CHECK(uq.to_residue(uq.from_residue(FqElem{a})) == FqElem{a});
  for (std::uint32_t a = 1; a < 25; ++a) {
    LFElem t = teichmuller(l, FqElem{a});
    CHECK(t.pow(24) == LFElem::one(l));
  }
}

TEST_CASE("tame norm is onto the first graded unit quotient") {
  auto f = base_field(3, 1);
  auto k = extend_unramified(f, 2);
  auto l = extend_tame(k, 4, 0);
  auto uq_l = unit_quotients(l, 4);
  auto uq_k = unit_quotients(k, 1);
  std::set<std::uint32_t> image;
  for (std::uint32_t a = 0; a < l->q(); ++a) {
    LFElem n = norm_down(uq_l.from_residue(FqElem{a}).truncated(12), k);
    image.insert(uq_k.to_residue(n).code);
  }
  CHECK(image.size() == k->q());
}
