#include "doctest.h"

#include <set>

#include "epi/fq_field.hpp"
#include "epi/linalg.hpp"

using namespace epi;

TEST_CASE("moduli are the smallest primitive polynomials") {
  CHECK(FqField::get(2, 1)->modulus() == std::vector<int>{1, 1});
  CHECK(FqField::get(3, 1)->modulus() == std::vector<int>{1, 1});
  CHECK(FqField::get(5, 1)->modulus() == std::vector<int>{2, 1});
  // x^2 + x + 1 over F_2, x^2 + x + 2 over F_3
  CHECK(FqField::get(2, 2)->modulus() == std::vector<int>{1, 1, 1});
  CHECK(FqField::get(3, 2)->modulus() == std::vector<int>{2, 1, 1});
}

TEST_CASE("generator has full order and tables are consistent") {
  for (auto [p, f] : {std::pair{2, 1}, {2, 4}, {3, 2}, {5, 2}, {7, 1}, {3, 5}}) {
    auto k = FqField::get(p, f);
    std::set<std::uint32_t> seen;
    for (std::uint32_t i = 0; i + 1 < k->order(); ++i) {
      FqElem a = k->exp(i);
      CHECK(k->log(a) == static_cast<std::int64_t>(i));
      seen.insert(a.code);
    }
    CHECK(seen.size() == k->order() - 1);
  }
}

TEST_CASE("field axioms on all pairs of a small field") {
  auto k = FqField::get(3, 2);
  for (std::uint32_t a = 0; a < k->order(); ++a) {
    for (std::uint32_t b = 0; b < k->order(); ++b) {
      FqElem x{a}, y{b};
      CHECK(k->add(x, y) == k->add(y, x));
      CHECK(k->sub(k->add(x, y), y) == x);
      CHECK(k->mul(x, y) == k->mul(y, x));
      if (b != 0) CHECK(k->mul(k->div(x, y), y) == x);
      for (std::uint32_t c = 0; c < k->order(); ++c) {
        FqElem z{c};
        CHECK(k->mul(x, k->add(y, z)) == k->add(k->mul(x, y), k->mul(x, z)));
      }
    }
  }
}

TEST_CASE("trace and frobenius") {
  auto k = FqField::get(2, 2);
  int ones = 0;
  for (std::uint32_t a = 0; a < 4; ++a) ones += k->trace_to_prime(FqElem{a});
  CHECK(ones == 2);
  auto k5 = FqField::get(5, 3);
  FqElem g = k5->generator();
  CHECK(k5->frobenius(g, 3) == g);
  CHECK(k5->frobenius(k5->frobenius(g, 1), -1) == g);
}

TEST_CASE("format and parse round trip") {
  auto k = FqField::get(2, 3);
  for (std::uint32_t a = 0; a < 8; ++a)
    CHECK(k->parse(k->format(FqElem{a})) == FqElem{a});
  CHECK_THROWS(k->parse("h^2"));
  CHECK_THROWS(FqField::get(4, 1));
  CHECK_THROWS(FqField::get(2, 17));
}

TEST_CASE("linear algebra over a finite field") {
  auto k = FqField::get(3, 1);
  FqMatrix m(k, 2, 3);
  m.at(0, 0) = k->one();
  m.at(0, 1) = k->from_int(2);
  m.at(1, 2) = k->one();
  CHECK(m.rank() == 2);
  auto ker = m.kernel();
  REQUIRE(ker.size() == 1);
  auto z = m.apply(ker[0]);
  CHECK(z[0].code == 0);
  CHECK(z[1].code == 0);
  std::vector<FqElem> sol;
  CHECK(m.solve({k->one(), k->from_int(2)}, sol));
  auto b = m.apply(sol);
  CHECK(b[0] == k->one());
  CHECK(b[1] == k->from_int(2));
}
