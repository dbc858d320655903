#include <random>
#include <set>

#include "doctest.h"
#include "epi/errors.hpp"
#include "epi/field_tower.hpp"
#include "epi/galois_side.hpp"
#include "epi/ramification.hpp"
#include "epi/strata_lab.hpp"
#include "oracles.hpp"

using namespace epi;

using namespace epi::oracle;

TEST_CASE("imprimitivity field shape") {
  struct Case { int p, f, r, et, ft; };
  for (auto cs : {Case{2, 1, 1, 3, 2}, Case{3, 1, 1, 4, 2}, Case{2, 2, 1, 3, 1},
                  Case{5, 1, 1, 6, 2}, Case{2, 1, 2, 5, 4}}) {
    for (const auto& d : datums(cs.p, cs.f, cs.r)) {
      auto imp = imprimitivity_field(d);
      const std::int64_t n = ipow(cs.p, 2 * cs.r) - 1;
      CHECK(imp.congruence.roots.size() == static_cast<std::size_t>(n));
      CHECK(imp.t->e() == cs.et);
      CHECK(imp.t->f() == cs.ft);
      CHECK((imp.t->q() - 1) % n == 0);
      CHECK(imp.congruence.valuation == -1);
      for (const auto& s : imp.proper_subfields) CHECK(static_cast<std::int64_t>(s.roots) < n);
      CHECK_FALSE(imp.proper_subfields.empty());
      // each root satisfies gamma^N = rhs
      const FqField& k = *imp.t->residue();
      for (FqElem g : imp.congruence.roots) CHECK(k.pow(g, n) == imp.congruence.rhs_mu);
    }
  }
}

TEST_CASE("flagship roots form F_4 with zero") {
  auto d = datums(2, 1, 1).front();
  auto imp = imprimitivity_field(d);
  auto ker = delta_characters(imp, d);
  std::set<std::uint32_t> codes{0};
  for (auto g : ker.roots) codes.insert(g.code);
  CHECK(codes == std::set<std::uint32_t>{0, 1, 2, 3});
  CHECK(ker.group_table.size() == 4);
}

TEST_CASE("non p-power degree must be descended first") {
  FieldPtr f = base_field(2, 1);
  auto d = enumerate_datums(f, 6, trivial_multchar(f)).front();
  CHECK_THROWS_WITH_AS(imprimitivity_field(d), "descend first: n is not a power of p", DomainError);
}

TEST_CASE("twist orders") {
  auto d = datums(2, 1, 1).front();
  CHECK(twist_order(d.field, d) == 1);
  CHECK(twist_order(extend_unramified(d.field, 2), d) == 1);
  auto imp = imprimitivity_field(d);
  CHECK(twist_order(imp.t, d) == 4);
}

TEST_CASE("twist-group lattice matches embeddings of T") {
  struct Case { int p, f, r; };
  for (auto cs : {Case{2, 1, 1}, Case{3, 1, 1}, Case{2, 2, 1}}) {
    for (const auto& d : datums(cs.p, cs.f, cs.r)) {
      auto imp = imprimitivity_field(d);
      const std::int64_t full = ipow(cs.p, 2 * cs.r);
      auto fields = lattice_fields(d, imp.t);
      CHECK(fields.size() >= 10);
      int embedded = 0;
      for (const auto& l : fields) {
        std::int64_t order = twist_order(l, d);
        bool emb = t_embeds_in(imp.t, l);
        embedded += emb;
        CHECK((order == full) == emb);
        CHECK(order <= full);
        // a power of p
        std::int64_t o = order;
        while (o % cs.p == 0) o /= cs.p;
        CHECK(o == 1);
      }
      CHECK(embedded >= 2);
      CHECK(twist_order(d.field, d) == 1);
    }
  }
}

TEST_CASE("Delta group and kernel field invariants") {
  struct Case { int p, f, r; };
  for (auto cs : {Case{2, 1, 1}, Case{3, 1, 1}, Case{2, 2, 1}, Case{2, 1, 2}}) {
    for (const auto& d : datums(cs.p, cs.f, cs.r)) {
      auto rec = parameter_record(d);
      CHECK(rec.failed_checks.empty());
      const auto& ker = rec.kernel;
      const std::int64_t pr = ipow(cs.p, cs.r);
      CHECK(ker.group_table.size() == static_cast<std::size_t>(pr * pr));
      CHECK(ker.norm_index == pr * pr);
      CHECK(ker.d_et_conductor == 2 * pr * pr - 2);
      CHECK(ker.d_et_tower == 2 * pr * pr - 2);
      CHECK(ker.d_ek == 2 * pr - 2);
      CHECK(ker.c_psi_e == pr * pr - 2);
      CHECK(swan_induce({rec.xi.swan, 1, ker.e_et, 1, ker.d_et_conductor}) == pr * (1 + pr));
      CHECK(rec.xi.swan == 1 + pr);
      CHECK(rec.action.orbits.size() == static_cast<std::size_t>(pr - 1));
      for (const auto& o : rec.action.orbits) CHECK(o.size() == static_cast<std::size_t>(1 + pr));
      // table against pointwise products
      const FieldPtr& t = ker.t;
      std::mt19937 rng(3);
      for (std::size_t i = 1; i < ker.group_table.size(); ++i)
        for (std::size_t j = 1; j < ker.group_table.size(); ++j) {
          MultChar prod = ker.deltas[i - 1] * ker.deltas[j - 1];
          int k = ker.group_table[i][j];
          for (int s = 0; s < 3; ++s) {
            LFElem x = LFElem::one(t) +
                       LFElem::monomial(t, FqElem{static_cast<std::uint32_t>(rng() % t->q())}, 1);
            QmodZ expect = k == 0 ? QmodZ() : ker.deltas[k - 1](x);
            CHECK(prod(x) == expect);
          }
        }
      // w_T and det alpha lie in the norm group
      for (const auto& c : ker.deltas) CHECK(c(ker.norm_generators[0]).is_zero());
    }
  }
}

TEST_CASE("oracle root sets agree with the congruence") {
  struct Case { int p, f, r; };
  for (auto cs : {Case{2, 1, 1}, Case{3, 1, 1}, Case{2, 2, 1}}) {
    for (const auto& d : datums(cs.p, cs.f, cs.r)) {
      auto imp = imprimitivity_field(d);
      auto orc = oracle_root_set(imp.t, cs.p, cs.r, d.det_mu);
      CHECK(orc.roots == imp.congruence.roots);
    }
  }
}

TEST_CASE("xi is independent of the choice of beta") {
  for (auto [p, r] : {std::pair{2, 1}, std::pair{3, 1}}) {
    auto d = datums(p, 1, r).back();
    auto rec = parameter_record(d);
    const auto& xi = rec.xi;
    const FieldPtr& e = xi.e_model;
    LFElem beta = xi_beta(xi, rec.kernel);
    std::mt19937 rng(19);
    for (int s = 0; s < 10; ++s) {
      std::vector<FqElem> cs;
      for (int i = 0; i < 6; ++i) cs.push_back(FqElem{static_cast<std::uint32_t>(rng() % e->q())});
      LFElem z(e, 1, cs, LFElem::kExact);
      auto vals = xi_from_beta(xi, rec.kernel, beta * (LFElem::one(e) + z));
      CHECK(vals == xi.graded_values);
    }
    // formula: (1/p) Tr(b^{p^r} a)
    const FqField& k = *e->residue();
    for (std::uint32_t a = 0; a < k.order(); ++a)
      CHECK(xi(FqElem{a}) == QmodZ(k.trace_to_prime(k.mul(xi.beta_pr_lead, FqElem{a})), p));
    // nontrivial
    bool some = false;
    for (const auto& v : xi.graded_values) some = some || !v.is_zero();
    CHECK(some);
  }
}

TEST_CASE("unramified twist resolution") {
  FieldPtr f2 = base_field(2, 1);
  auto c2 = unramified_candidates(f2, 2);
  auto d2 = enumerate_datums(f2, 2, trivial_multchar(f2));
  CHECK(c2[0](d2[0].det_alpha()) == QmodZ());
  std::set<QmodZ> v2;
  for (const auto& c : c2) v2.insert(c(d2[0].det_alpha()));
  CHECK(v2 == std::set<QmodZ>{QmodZ(0, 1), QmodZ(1, 2)});
  for (const auto& d : d2) CHECK(resolve_unramified_twist(d, c2) == d.eps_index);

  FieldPtr f3 = base_field(3, 1);
  auto c3 = unramified_candidates(f3, 3);
  std::set<QmodZ> v3;
  auto d3 = enumerate_datums(f3, 3, trivial_multchar(f3));
  for (const auto& c : c3) v3.insert(c(d3[0].det_alpha()));
  CHECK(v3.size() == 3);
  std::set<std::pair<std::uint32_t, int>> seen;
  for (const auto& d : d3) seen.insert({d.det_mu.code, resolve_unramified_twist(d, c3)});
  CHECK(seen.size() == d3.size());

  std::vector<MultChar> bad{build_multchar(f3, QmodZ(), 1)};
  CHECK_THROWS_AS(resolve_unramified_twist(d3[0], bad), DomainError);
}

TEST_CASE("records for datums differing only in epsilon") {
  FieldPtr f = base_field(3, 1);
  auto ds = enumerate_datums(f, 3, trivial_multchar(f));
  auto r0 = parameter_record(ds[0]);
  auto r1 = parameter_record(ds[1]);
  CHECK(r0.imprimitivity.t->same_as(*r1.imprimitivity.t));
  CHECK(r0.kernel.roots == r1.kernel.roots);
  CHECK(r0.twist_resolution != r1.twist_resolution);
}
