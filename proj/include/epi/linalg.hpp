#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "epi/fq_field.hpp"

namespace epi {

/// Division-free determinant by Laplace expansion over row subsets.
/// O(n 2^n) ring operations; intended for small n.
template <class T>
T subset_determinant(const std::vector<std::vector<T>>& m, const T& zero,
                     const T& one) {
  const std::size_t n = m.size();
  if (n == 0) return one;
  std::vector<T> dp(std::size_t{1} << n, zero);
  dp[0] = one;
  for (std::size_t mask = 1; mask < dp.size(); ++mask) {
    int k = __builtin_popcountll(mask);
    std::size_t col = static_cast<std::size_t>(k - 1);
    T acc = zero;
    int pos = 0;
    for (std::size_t r = 0; r < n; ++r) {
      if (!(mask >> r & 1)) continue;
      T term = m[r][col] * dp[mask & ~(std::size_t{1} << r)];
      if ((pos + k - 1) % 2 == 0) {
        acc = acc + term;
      } else {
        acc = acc - term;
      }
      ++pos;
    }
    dp[mask] = acc;
  }
  return dp.back();
}

/// Dense matrix over a finite field with Gaussian elimination.
class FqMatrix {
 public:
  FqMatrix() = default;
  FqMatrix(FqPtr k, std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const FqPtr& field() const { return k_; }
  FqElem& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  FqElem at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  FqMatrix operator*(const FqMatrix& o) const;
  std::vector<FqElem> apply(const std::vector<FqElem>& v) const;
  bool is_zero() const;

  std::size_t rank() const;
  /// Basis of {v : M v = 0}.
  std::vector<std::vector<FqElem>> kernel() const;
  /// Some v with M v = b, or false when inconsistent.
  bool solve(const std::vector<FqElem>& b, std::vector<FqElem>& out) const;
  FqMatrix transpose() const;

  static FqMatrix identity(FqPtr k, std::size_t n);

 private:
  // Reduced row echelon form in place; returns pivot columns.
  std::vector<std::size_t> rref(std::vector<FqElem>* rhs) ;

  FqPtr k_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<FqElem> a_;
};

/// Solve over F_p: rows are equations, returns kernel basis of an
/// integer matrix mod p (entries reduced).
std::vector<std::vector<int>> kernel_mod_p(std::vector<std::vector<int>> m,
                                           int p, std::size_t cols);

}  // namespace epi
