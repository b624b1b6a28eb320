#pragma once

// Dense exact linear algebra over a Coefficient field: row reduction,
// kernels, inverses and subspaces of a coordinate space.

#include <cstddef>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "hecke/coeff.hpp"

namespace hecke {

using Vec = std::vector<Coefficient>;

inline Vec zero_vec(Field f, std::size_t n) { return Vec(n, Coefficient::zero(f)); }

inline bool is_zero_vec(const Vec& v) {
  for (const auto& c : v)
    if (!c.is_zero()) return false;
  return true;
}

class Matrix {
 public:
  Matrix() = default;
  Matrix(Field f, std::size_t rows, std::size_t cols)
      : field_(f), rows_(rows), cols_(cols), data_(rows * cols, Coefficient::zero(f)) {}

  static Matrix identity(Field f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Coefficient::one(f);
    return m;
  }

  /// Matrix whose columns are the given vectors.
  static Matrix from_columns(Field f, std::size_t rows, const std::vector<Vec>& cols) {
    Matrix m(f, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    return m;
  }

  static Matrix from_rows(Field f, std::size_t cols, const std::vector<Vec>& rows) {
    Matrix m(f, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    return m;
  }

  Field field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Coefficient& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Coefficient& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  Vec row(std::size_t i) const {
    return Vec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
               data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  Vec col(std::size_t j) const {
    Vec v;
    v.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
    return v;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    for (const auto& c : data_)
      if (!c.is_zero()) return false;
    return true;
  }

  Vec apply(const Vec& v) const {
    Vec out = zero_vec(field_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!(*this)(i, j).is_zero() && !v[j].is_zero()) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix c(a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Coefficient& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!b(k, j).is_zero()) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }

  friend Matrix operator-(Matrix a, const Matrix& b) {
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }

  friend Matrix operator*(const Coefficient& s, Matrix a) {
    for (auto& c : a.data_) c *= s;
    return a;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << (i ? "; " : "");
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? " " : "") << m(i, j).to_string();
    }
    return os << ']';
  }

 private:
  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Coefficient> data_;
};

/// Reduced row echelon form together with its pivot columns.
struct Rref {
  Matrix matrix;
  std::vector<std::size_t> pivots;
};

inline Rref rref(Matrix m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const Coefficient inv = m(r, c).inv();
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const Coefficient f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

/// Basis of { x : m x = 0 }.
inline std::vector<Vec> kernel(const Matrix& m) {
  const Field f = m.field();
  Rref r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v = zero_vec(f, m.cols());
    v[free] = Coefficient::one(f);
    for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.matrix(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::optional<Matrix> inverse(const Matrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) return std::nullopt;
  Matrix aug(m.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = Coefficient::one(m.field());
  }
  Rref r = rref(std::move(aug));
  if (r.pivots.size() < n || r.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix inv(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r.matrix(i, n + j);
  return inv;
}

/// A linear subspace of F^d, stored by its reduced row echelon basis so
/// that equal subspaces have equal representations.
class Subspace {
 public:
  Subspace() = default;
  Subspace(Field f, std::size_t ambient) : field_(f), ambient_(ambient), basis_(f, 0, ambient) {}

  static Subspace span(Field f, std::size_t ambient, const std::vector<Vec>& vectors) {
    Subspace s(f, ambient);
    if (vectors.empty()) return s;
    Rref r = rref(Matrix::from_rows(f, ambient, vectors));
    s.pivots_ = r.pivots;
    s.basis_ = Matrix(f, r.pivots.size(), ambient);
    for (std::size_t i = 0; i < r.pivots.size(); ++i)
      for (std::size_t j = 0; j < ambient; ++j) s.basis_(i, j) = r.matrix(i, j);
    return s;
  }

  static Subspace full(Field f, std::size_t ambient) {
    std::vector<Vec> e;
    for (std::size_t i = 0; i < ambient; ++i) {
      Vec v = zero_vec(f, ambient);
      v[i] = Coefficient::one(f);
      e.push_back(std::move(v));
    }
    return span(f, ambient, e);
  }

  Field field() const { return field_; }
  std::size_t dim() const { return basis_.rows(); }
  std::size_t ambient_dim() const { return ambient_; }
  const Matrix& basis_matrix() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  std::vector<Vec> vectors() const {
    std::vector<Vec> v;
    for (std::size_t i = 0; i < dim(); ++i) v.push_back(basis_.row(i));
    return v;
  }

  /// Reduces v against the basis; the remainder is zero iff v lies in the span.
  Vec reduce(Vec v) const {
    for (std::size_t i = 0; i < dim(); ++i) {
      const Coefficient c = v[pivots_[i]];
      if (c.is_zero()) continue;
      for (std::size_t j = 0; j < ambient_; ++j)
        if (!basis_(i, j).is_zero()) v[j] -= c * basis_(i, j);
    }
    return v;
  }

  bool contains(const Vec& v) const { return is_zero_vec(reduce(v)); }

  bool contains(const Subspace& o) const {
    for (std::size_t i = 0; i < o.dim(); ++i)
      if (!contains(o.basis_.row(i))) return false;
    return true;
  }

  /// Coordinates of v (assumed in the span) with respect to the RREF basis.
  Vec coordinates(const Vec& v) const {
    Vec c;
    c.reserve(dim());
    for (std::size_t i = 0; i < dim(); ++i) c.push_back(v[pivots_[i]]);
    return c;
  }

  Subspace operator+(const Subspace& o) const {
    auto v = vectors();
    auto w = o.vectors();
    v.insert(v.end(), w.begin(), w.end());
    return span(field_, ambient_, v);
  }

  Subspace intersect(const Subspace& o) const {
    if (dim() == 0 || o.dim() == 0) return Subspace(field_, ambient_);
    // x in both iff x = a.B1 = b.B2; solve [B1; -B2]^T (a, b) = 0.
    std::vector<Vec> cols = vectors();
    for (auto v : o.vectors()) {
      for (auto& c : v) c = -c;
      cols.push_back(std::move(v));
    }
    Matrix sys = Matrix::from_columns(field_, ambient_, cols);
    std::vector<Vec> out;
    for (const auto& k : kernel(sys)) {
      Vec x = zero_vec(field_, ambient_);
      for (std::size_t i = 0; i < dim(); ++i)
        if (!k[i].is_zero())
          for (std::size_t j = 0; j < ambient_; ++j) x[j] += k[i] * basis_(i, j);
      out.push_back(std::move(x));
    }
    return span(field_, ambient_, out);
  }

  Subspace image(const Matrix& m) const {
    std::vector<Vec> out;
    for (std::size_t i = 0; i < dim(); ++i) out.push_back(m.apply(basis_.row(i)));
    return span(field_, m.rows(), out);
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  Field field_;
  std::size_t ambient_ = 0;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

}  // namespace hecke
