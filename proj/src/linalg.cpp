#include "epi/linalg.hpp"

#include "epi/errors.hpp"

namespace epi {

FqMatrix::FqMatrix(FqPtr k, std::size_t rows, std::size_t cols)
    : k_(std::move(k)), rows_(rows), cols_(cols), a_(rows * cols, FqElem{0}) {}

FqMatrix FqMatrix::identity(FqPtr k, std::size_t n) {
  FqMatrix m(k, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = k->one();
  return m;
}

FqMatrix FqMatrix::operator*(const FqMatrix& o) const {
  if (cols_ != o.rows_) throw DomainError("FqMatrix: shape mismatch");
  FqMatrix r(k_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t l = 0; l < cols_; ++l) {
      FqElem a = at(i, l);
      if (a.code == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        r.at(i, j) = k_->add(r.at(i, j), k_->mul(a, o.at(l, j)));
    }
  return r;
}

std::vector<FqElem> FqMatrix::apply(const std::vector<FqElem>& v) const {
  if (v.size() != cols_) throw DomainError("FqMatrix: vector size mismatch");
  std::vector<FqElem> r(rows_, FqElem{0});
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      r[i] = k_->add(r[i], k_->mul(at(i, j), v[j]));
  return r;
}

bool FqMatrix::is_zero() const {
  for (auto x : a_)
    if (x.code != 0) return false;
  return true;
}

FqMatrix FqMatrix::transpose() const {
  FqMatrix t(k_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

std::vector<std::size_t> FqMatrix::rref(std::vector<FqElem>* rhs) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols_ && row < rows_; ++c) {
    std::size_t piv = row;
    while (piv < rows_ && at(piv, c).code == 0) ++piv;
    if (piv == rows_) continue;
    if (piv != row) {
      for (std::size_t j = 0; j < cols_; ++j) std::swap(at(piv, j), at(row, j));
      if (rhs) std::swap((*rhs)[piv], (*rhs)[row]);
    }
    FqElem inv = k_->inv(at(row, c));
    for (std::size_t j = 0; j < cols_; ++j) at(row, j) = k_->mul(at(row, j), inv);
    if (rhs) (*rhs)[row] = k_->mul((*rhs)[row], inv);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == row || at(i, c).code == 0) continue;
      FqElem fct = at(i, c);
      for (std::size_t j = 0; j < cols_; ++j)
        at(i, j) = k_->sub(at(i, j), k_->mul(fct, at(row, j)));
      if (rhs) (*rhs)[i] = k_->sub((*rhs)[i], k_->mul(fct, (*rhs)[row]));
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

std::size_t FqMatrix::rank() const {
  FqMatrix c = *this;
  return c.rref(nullptr).size();
}

std::vector<std::vector<FqElem>> FqMatrix::kernel() const {
  FqMatrix c = *this;
  auto piv = c.rref(nullptr);
  std::vector<bool> is_piv(cols_, false);
  for (auto p : piv) is_piv[p] = true;
  std::vector<std::vector<FqElem>> basis;
  for (std::size_t free = 0; free < cols_; ++free) {
    if (is_piv[free]) continue;
    std::vector<FqElem> v(cols_, FqElem{0});
    v[free] = k_->one();
    for (std::size_t r = 0; r < piv.size(); ++r)
      v[piv[r]] = k_->neg(c.at(r, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

bool FqMatrix::solve(const std::vector<FqElem>& b, std::vector<FqElem>& out) const {
  if (b.size() != rows_) throw DomainError("FqMatrix: rhs size mismatch");
  FqMatrix c = *this;
  std::vector<FqElem> rhs = b;
  auto piv = c.rref(&rhs);
  for (std::size_t r = piv.size(); r < rows_; ++r)
    if (rhs[r].code != 0) return false;
  out.assign(cols_, FqElem{0});
  for (std::size_t r = 0; r < piv.size(); ++r) out[piv[r]] = rhs[r];
  return true;
}

std::vector<std::vector<int>> kernel_mod_p(std::vector<std::vector<int>> m,
                                           int p, std::size_t cols) {
  FqPtr fp = FqField::get(p, 1);
  FqMatrix a(fp, m.size(), cols);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) a.at(i, j) = fp->from_int(m[i][j]);
  std::vector<std::vector<int>> out;
  for (const auto& v : a.kernel()) {
    std::vector<int> w(cols);
    for (std::size_t j = 0; j < cols; ++j) w[j] = static_cast<int>(v[j].code);
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace epi
