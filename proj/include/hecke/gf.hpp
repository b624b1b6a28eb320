#pragma once

// The residue fields F_q (q in {2, 3, 4}) and small matrices over them.
//
// Elements are bytes 0..q-1. For prime q this is the usual residue; for
// q = 4 the byte a + 2b encodes a + b x in F_2[x]/(x^2 + x + 1).

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hecke/errors.hpp"
#include "hecke/weyl.hpp"

namespace hecke {

class GaloisField {
 public:
  using Elt = std::uint8_t;

  static const GaloisField& get(int q) {
    static const GaloisField f2(2), f3(3), f4(4);
    switch (q) {
      case 2: return f2;
      case 3: return f3;
      case 4: return f4;
      default: throw ConfigError("unsupported residue field size q = " + std::to_string(q));
    }
  }

  int q() const { return q_; }
  /// Residue characteristic p.
  int p() const { return p_; }

  Elt add(Elt a, Elt b) const { return add_[a][b]; }
  Elt sub(Elt a, Elt b) const { return add_[a][neg_[b]]; }
  Elt mul(Elt a, Elt b) const { return mul_[a][b]; }
  Elt neg(Elt a) const { return neg_[a]; }
  Elt inv(Elt a) const {
    if (a == 0) throw DivisionByZero("inverse of 0 in F_" + std::to_string(q_));
    return inv_[a];
  }

  /// Image of an integer in the prime subfield.
  Elt from_int(long v) const {
    long r = v % p_;
    if (r < 0) r += p_;
    return static_cast<Elt>(r);
  }

 private:
  explicit GaloisField(int q) : q_(q), p_(q == 4 ? 2 : q) {
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) {
        if (q == 4) {
          add_[a][b] = static_cast<Elt>(a ^ b);
          // (a0 + a1 x)(b0 + b1 x) with x^2 = x + 1
          const int a0 = a & 1, a1 = a >> 1, b0 = b & 1, b1 = b >> 1;
          const int hi = a1 & b1;
          const int c0 = (a0 & b0) ^ hi;
          const int c1 = (a0 & b1) ^ (a1 & b0) ^ hi;
          mul_[a][b] = static_cast<Elt>(c0 | (c1 << 1));
        } else {
          add_[a][b] = static_cast<Elt>((a + b) % q);
          mul_[a][b] = static_cast<Elt>((a * b) % q);
        }
      }
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) {
        if (add_[a][b] == 0) neg_[a] = static_cast<Elt>(b);
        if (mul_[a][b] == 1) inv_[a] = static_cast<Elt>(b);
      }
  }

  int q_;
  int p_;
  std::array<std::array<Elt, 4>, 4> add_{};
  std::array<std::array<Elt, 4>, 4> mul_{};
  std::array<Elt, 4> neg_{};
  std::array<Elt, 4> inv_{};
};

/// An n x n matrix over F_q, n <= 4.
class ResMatrix {
 public:
  using Elt = GaloisField::Elt;
  static constexpr int kMaxN = 4;

  ResMatrix() = default;
  ResMatrix(const GaloisField& f, int n) : f_(&f), n_(n) {
    if (n < 1 || n > kMaxN) throw InvalidArgument("residue matrix size " + std::to_string(n));
  }

  static ResMatrix identity(const GaloisField& f, int n) {
    ResMatrix m(f, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// The permutation matrix with (P_w)_{w(j), j} = 1.
  static ResMatrix permutation(const GaloisField& f, const weyl::Permutation& w) {
    ResMatrix m(f, w.rank());
    for (int j = 1; j <= w.rank(); ++j) m(w(j) - 1, j - 1) = 1;
    return m;
  }

  static ResMatrix from_rows(const GaloisField& f, const std::vector<std::vector<int>>& rows) {
    const int n = static_cast<int>(rows.size());
    ResMatrix m(f, n);
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(rows[i].size()) != n) throw InvalidArgument("residue matrix must be square");
      for (int j = 0; j < n; ++j) {
        if (rows[i][j] < 0 || rows[i][j] >= f.q())
          throw InvalidArgument("entry " + std::to_string(rows[i][j]) + " not in F_" + std::to_string(f.q()));
        m(i, j) = static_cast<Elt>(rows[i][j]);
      }
    }
    return m;
  }

  const GaloisField& field() const { return *f_; }
  int n() const { return n_; }

  Elt& operator()(int i, int j) { return a_[i * kMaxN + j]; }
  Elt operator()(int i, int j) const { return a_[i * kMaxN + j]; }

  friend ResMatrix operator*(const ResMatrix& x, const ResMatrix& y) {
    const GaloisField& f = *x.f_;
    ResMatrix r(f, x.n_);
    for (int i = 0; i < x.n_; ++i)
      for (int k = 0; k < x.n_; ++k) {
        const Elt a = x(i, k);
        if (!a) continue;
        for (int j = 0; j < x.n_; ++j)
          if (y(k, j)) r(i, j) = f.add(r(i, j), f.mul(a, y(k, j)));
      }
    return r;
  }

  Elt det() const {
    ResMatrix m = *this;
    const GaloisField& f = *f_;
    Elt d = 1;
    for (int c = 0; c < n_; ++c) {
      int p = c;
      while (p < n_ && m(p, c) == 0) ++p;
      if (p == n_) return 0;
      if (p != c) {
        m.swap_rows(p, c);
        d = f.neg(d);
      }
      d = f.mul(d, m(c, c));
      const Elt inv = f.inv(m(c, c));
      for (int r = c + 1; r < n_; ++r) {
        if (!m(r, c)) continue;
        const Elt fac = f.mul(m(r, c), inv);
        for (int j = c; j < n_; ++j) m(r, j) = f.sub(m(r, j), f.mul(fac, m(c, j)));
      }
    }
    return d;
  }

  bool invertible() const { return det() != 0; }

  ResMatrix inverse() const {
    const GaloisField& f = *f_;
    ResMatrix m = *this, inv = identity(f, n_);
    for (int c = 0; c < n_; ++c) {
      int p = c;
      while (p < n_ && m(p, c) == 0) ++p;
      if (p == n_) throw NotInvertible("singular residue matrix " + to_string());
      m.swap_rows(p, c);
      inv.swap_rows(p, c);
      const Elt s = f.inv(m(c, c));
      for (int j = 0; j < n_; ++j) {
        m(c, j) = f.mul(m(c, j), s);
        inv(c, j) = f.mul(inv(c, j), s);
      }
      for (int r = 0; r < n_; ++r) {
        if (r == c || !m(r, c)) continue;
        const Elt fac = m(r, c);
        for (int j = 0; j < n_; ++j) {
          m(r, j) = f.sub(m(r, j), f.mul(fac, m(c, j)));
          inv(r, j) = f.sub(inv(r, j), f.mul(fac, inv(c, j)));
        }
      }
    }
    return inv;
  }

  void swap_rows(int a, int b) {
    if (a == b) return;
    for (int j = 0; j < n_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  void swap_cols(int a, int b) {
    if (a == b) return;
    for (int i = 0; i < n_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  bool is_identity() const { return *this == identity(*f_, n_); }

  std::vector<std::vector<int>> rows() const {
    std::vector<std::vector<int>> r(n_, std::vector<int>(n_));
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) r[i][j] = (*this)(i, j);
    return r;
  }

  std::string to_string() const {
    std::string s = "[";
    for (int i = 0; i < n_; ++i) {
      s += i ? "; " : "";
      for (int j = 0; j < n_; ++j) s += (j ? " " : "") + std::to_string((*this)(i, j));
    }
    return s + "]";
  }

  friend bool operator==(const ResMatrix& x, const ResMatrix& y) { return x.n_ == y.n_ && x.a_ == y.a_; }
  friend std::strong_ordering operator<=>(const ResMatrix& x, const ResMatrix& y) {
    if (auto c = x.n_ <=> y.n_; c != 0) return c;
    return x.a_ <=> y.a_;
  }

  std::size_t hash() const {
    std::size_t h = static_cast<std::size_t>(n_);
    for (Elt e : a_) h = h * 131 + e;
    return h;
  }

 private:
  const GaloisField* f_ = nullptr;
  int n_ = 0;
  std::array<Elt, kMaxN * kMaxN> a_{};
};

/// Every invertible n x n matrix over F_q, by exhaustion of all q^{n^2}
/// matrices.
inline std::vector<ResMatrix> general_linear_group(const GaloisField& f, int n) {
  const int cells = n * n;
  long total = 1;
  for (int i = 0; i < cells; ++i) total *= f.q();
  if (total > (1L << 24)) throw LatticeTooLarge("GL_" + std::to_string(n) + "(F_" + std::to_string(f.q()) + ") too large to enumerate");
  std::vector<ResMatrix> out;
  for (long code = 0; code < total; ++code) {
    ResMatrix m(f, n);
    long c = code;
    for (int k = 0; k < cells; ++k) {
      m(k / n, k % n) = static_cast<ResMatrix::Elt>(c % f.q());
      c /= f.q();
    }
    if (m.invertible()) out.push_back(m);
  }
  return out;
}

}  // namespace hecke

template <>
struct std::hash<hecke::ResMatrix> {
  std::size_t operator()(const hecke::ResMatrix& m) const noexcept { return m.hash(); }
};
