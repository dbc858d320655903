#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace epi {

/// Element of a finite field, encoded as base-p digits of its
/// polynomial coefficients (digit i is the coefficient of x^i).
struct FqElem {
  std::uint32_t code = 0;
  bool operator==(const FqElem&) const = default;
  auto operator<=>(const FqElem&) const = default;
};

/// F_q = F_p[x]/(P) where P is the smallest monic primitive polynomial
/// of degree f, ordered by code with the x^{f-1} coefficient most
/// significant.  The class of x is the canonical generator g.
class FqField {
 public:
  static constexpr std::uint32_t kMaxOrder = 1u << 16;

  /// Shared canonical instance; thread-safe.
  static std::shared_ptr<const FqField> get(int p, int f);

  int p() const { return p_; }
  int degree() const { return f_; }
  std::uint32_t order() const { return q_; }
  const std::vector<int>& modulus() const { return modulus_; }

  FqElem zero() const { return {0}; }
  FqElem one() const { return {1}; }
  FqElem generator() const { return exp_[1 % (q_ - 1)]; }
  FqElem from_int(std::int64_t a) const;
  FqElem element(std::uint32_t code) const;

  FqElem add(FqElem a, FqElem b) const;
  FqElem sub(FqElem a, FqElem b) const;
  FqElem neg(FqElem a) const;
  FqElem mul(FqElem a, FqElem b) const;
  FqElem inv(FqElem a) const;
  FqElem div(FqElem a, FqElem b) const { return mul(a, inv(b)); }
  FqElem pow(FqElem a, std::int64_t k) const;

  /// Discrete log to base g, in [0, q-1).  Throws on zero.
  std::int64_t log(FqElem a) const;
  /// g^k for any integer k.
  FqElem exp(std::int64_t k) const;

  /// Absolute trace to F_p, returned as an integer in [0, p).
  int trace_to_prime(FqElem a) const;
  /// Frobenius a -> a^p applied k times (k may be negative).
  FqElem frobenius(FqElem a, std::int64_t k) const;

  std::vector<int> digits(FqElem a) const;
  FqElem from_digits(const std::vector<int>& d) const;

  /// "0" or "g^k".
  std::string format(FqElem a) const;
  FqElem parse(const std::string& text) const;

  FqField(int p, int f);

 private:
  int p_;
  int f_;
  std::uint32_t q_;
  std::vector<int> modulus_;
  std::vector<std::uint32_t> pow_p_;
  std::vector<FqElem> exp_;
  std::vector<std::int64_t> log_;
};

using FqPtr = std::shared_ptr<const FqField>;

}  // namespace epi
