#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

namespace epi {

using Rational = boost::rational<std::int64_t>;

std::string rational_str(const Rational& r);
Rational parse_rational(const std::string& text);

/// Lower-numbering ramification groups given by break data: each pair
/// (i, order) means |G_j| = order for i <= j < next listed index.
struct RamFiltration {
  std::vector<std::pair<int, std::int64_t>> breaks;

  /// |G_j| for an integer j >= 0.
  std::int64_t order_at(int j) const;
  /// Index from which the group is trivial.
  int support_end() const;
  void validate() const;
};

/// Continuous piecewise-linear map on [0, inf).  Segment k starts at
/// starts[k] and has slope slopes[k]; the last one runs to infinity.
class PLFunction {
 public:
  PLFunction() = default;
  PLFunction(std::vector<Rational> starts, std::vector<Rational> slopes);

  static PLFunction identity();

  Rational operator()(const Rational& x) const;
  PLFunction inverse() const;

  const std::vector<Rational>& starts() const { return starts_; }
  const std::vector<Rational>& slopes() const { return slopes_; }
  bool operator==(const PLFunction&) const = default;

 private:
  std::vector<Rational> starts_;
  std::vector<Rational> slopes_;
};

struct HerbrandResult {
  PLFunction phi;
  PLFunction psi;
  std::int64_t d = 0;
};

HerbrandResult herbrand_and_different(const RamFiltration& filt);

struct InductionData {
  std::int64_t sw_tau = 0;
  std::int64_t m = 1;
  std::int64_t e = 1;
  std::int64_t f = 1;
  std::int64_t d = 0;
};

/// sw(Ind tau) = (sw(tau) + m(1 - e + d)) f.
std::int64_t swan_induce(const InductionData& data);

/// Discriminant exponent of an abelian extension: sum of Artin
/// exponents over its character group.
std::int64_t conductor_discriminant(const std::vector<std::int64_t>& artin_exponents);

/// Different of a tame step of ramification index e: e - 1.
std::int64_t tame_different(std::int64_t e);

/// Different along a tower: d(L|F) = d(L|K) + e(L|K) d(K|F).
std::int64_t different_transitive(std::int64_t d_lk, std::int64_t e_lk,
                                  std::int64_t d_kf);

/// Level of psi_L = psi_K o Tr: c(psi_L) = d + e c(psi_K).
std::int64_t transported_level(std::int64_t d, std::int64_t e,
                               std::int64_t c_psi_k);

}  // namespace epi
