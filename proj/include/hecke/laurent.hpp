#pragma once

// Truncated Laurent series over F_q: elements of F_q((t)) known either
// exactly (a Laurent polynomial) or modulo t^N for some absolute precision N.
//
// A value is in one of three states:
//   exact      : a Laurent polynomial, abs_prec() == kExact;
//   known      : sum_{k=val}^{N-1} c_k t^k + O(t^N) with c_val != 0;
//   unresolved : O(t^N), nothing known below t^N.
// Arithmetic never fabricates coefficients. Asking for the valuation or the
// zero-ness of an unresolved value throws PrecisionExhausted.

#include <algorithm>
#include <climits>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "hecke/errors.hpp"
#include "hecke/gf.hpp"

namespace hecke {

class Laurent {
 public:
  using Elt = GaloisField::Elt;
  using Coeffs = boost::container::small_vector<Elt, 12>;
  static constexpr int kExact = INT_MAX;

  Laurent() = default;  // exact zero, field-less
  explicit Laurent(const GaloisField& f) : f_(&f) {}

  static Laurent zero(const GaloisField& f) { return Laurent(f); }
  static Laurent one(const GaloisField& f) { return monomial(f, 1, 0); }

  /// c t^k, exact.
  static Laurent monomial(const GaloisField& f, Elt c, int k) {
    Laurent x(f);
    if (c != 0) {
      x.val_ = k;
      x.c_.push_back(c);
    }
    return x;
  }

  /// sum_i coeffs[i] t^{val + i}, known modulo t^{abs_prec} (kExact for exact).
  static Laurent series(const GaloisField& f, int val, const std::vector<int>& coeffs,
                        int abs_prec = kExact) {
    Laurent x(f);
    x.val_ = val;
    for (int c : coeffs) {
      if (c < 0 || c >= f.q()) throw InvalidArgument("digit " + std::to_string(c) + " not in F_" + std::to_string(f.q()));
      x.c_.push_back(static_cast<Elt>(c));
    }
    x.abs_ = abs_prec;
    x.normalize();
    return x;
  }

  /// O(t^N).
  static Laurent big_o(const GaloisField& f, int n) {
    Laurent x(f);
    x.abs_ = n;
    x.val_ = n;
    return x;
  }

  const GaloisField* field() const { return f_; }
  bool is_exact() const { return abs_ == kExact; }
  int abs_prec() const { return abs_; }
  bool is_unresolved() const { return c_.empty() && abs_ != kExact; }
  bool is_exact_zero() const { return c_.empty() && abs_ == kExact; }

  bool is_zero() const {
    if (is_unresolved())
      throw PrecisionExhausted("zero test on O(t^" + std::to_string(abs_) + ")");
    return c_.empty();
  }

  /// Exact valuation; INT_MAX for exact zero.
  int valuation() const {
    if (is_unresolved())
      throw PrecisionExhausted("valuation of O(t^" + std::to_string(abs_) + ")");
    return c_.empty() ? INT_MAX : val_;
  }

  /// Largest k such that the value is certainly in t^k O; INT_MAX for exact zero.
  int valuation_lower_bound() const {
    if (c_.empty()) return abs_;
    return val_;
  }

  /// Number of known coefficients from the leading one (INT_MAX if exact).
  int relative_precision() const {
    if (is_exact()) return kExact;
    return abs_ - valuation_lower_bound();
  }

  /// Coefficient of t^k.
  Elt coeff(int k) const {
    if (k >= abs_)
      throw PrecisionExhausted("coefficient of t^" + std::to_string(k) + " beyond O(t^" +
                               std::to_string(abs_) + ")");
    if (c_.empty() || k < val_ || k >= val_ + static_cast<int>(c_.size())) return 0;
    return c_[k - val_];
  }

  Elt leading() const {
    valuation();
    return c_.empty() ? 0 : c_[0];
  }

  /// Highest degree with a stored coefficient plus one (exact values only).
  int end_degree() const { return c_.empty() ? val_ : val_ + static_cast<int>(c_.size()); }

  /// Forget everything at and above t^n.
  Laurent truncated(int n) const {
    if (n >= abs_) return *this;
    Laurent x(*this);
    x.abs_ = n;
    x.normalize();
    return x;
  }

  /// Multiply by t^k.
  Laurent shifted(int k) const {
    Laurent x(*this);
    if (!x.c_.empty() || !x.is_exact()) x.val_ += k;
    if (!x.is_exact()) x.abs_ += k;
    return x;
  }

  Laurent scaled(Elt s) const {
    if (s == 0) return Laurent(*field_or_die());
    Laurent x(*this);
    for (auto& c : x.c_) c = f_->mul(c, s);
    return x;
  }

  Laurent operator-() const {
    Laurent x(*this);
    if (f_)
      for (auto& c : x.c_) c = f_->neg(c);
    return x;
  }

  friend Laurent operator+(const Laurent& a, const Laurent& b) { return combine(a, b, false); }
  friend Laurent operator-(const Laurent& a, const Laurent& b) { return combine(a, b, true); }

  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    const GaloisField* fp = a.f_ ? a.f_ : b.f_;
    if (!fp) return Laurent();
    const GaloisField& f = *fp;
    if (a.is_exact_zero() || b.is_exact_zero()) return Laurent(f);
    const int va = a.valuation_lower_bound(), vb = b.valuation_lower_bound();
    if (a.is_unresolved() || b.is_unresolved()) return big_o(f, va + vb);
    const int ra = a.relative_precision(), rb = b.relative_precision();
    const int rel = std::min(ra, rb);
    Laurent x(f);
    x.val_ = va + vb;
    if (rel == kExact) {
      x.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
      for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (!a.c_[i]) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
          if (b.c_[j]) x.c_[i + j] = f.add(x.c_[i + j], f.mul(a.c_[i], b.c_[j]));
      }
    } else {
      x.abs_ = va + vb + rel;
      x.c_.assign(static_cast<std::size_t>(rel), 0);
      const int na = std::min<int>(rel, static_cast<int>(a.c_.size()));
      const int nb = std::min<int>(rel, static_cast<int>(b.c_.size()));
      for (int i = 0; i < na; ++i) {
        if (!a.c_[i]) continue;
        for (int j = 0; j < nb && i + j < rel; ++j)
          if (b.c_[j]) x.c_[i + j] = f.add(x.c_[i + j], f.mul(a.c_[i], b.c_[j]));
      }
    }
    x.normalize();
    return x;
  }

  /// Inverse of a nonzero value. Exact non-monomials have infinite inverses;
  /// they are returned with `rel_prec` known coefficients.
  Laurent inverse(int rel_prec) const {
    const int v = valuation();
    if (c_.empty()) throw DivisionByZero("inverse of exact zero");
    const GaloisField& f = *f_;
    if (is_exact() && c_.size() == 1) return monomial(f, f.inv(c_[0]), -v);
    const int rel = is_exact() ? rel_prec : relative_precision();
    if (rel < 1) throw PrecisionExhausted("no known coefficient to invert");
    Laurent x(f);
    x.val_ = -v;
    x.abs_ = -v + rel;
    x.c_.assign(static_cast<std::size_t>(rel), 0);
    const Elt inv0 = f.inv(c_[0]);
    for (int k = 0; k < rel; ++k) {
      // sum_{j=0}^{k} u_j x_{k-j} = [k == 0]
      Elt acc = k == 0 ? 1 : 0;
      for (int j = 1; j <= k && j < static_cast<int>(c_.size()); ++j)
        acc = f.sub(acc, f.mul(c_[j], x.c_[k - j]));
      x.c_[k] = f.mul(acc, inv0);
    }
    x.normalize();
    return x;
  }

  /// Exact equality of representations (same state, same known digits).
  friend bool operator==(const Laurent& a, const Laurent& b) {
    return a.abs_ == b.abs_ && a.c_ == b.c_ && (a.c_.empty() ? true : a.val_ == b.val_);
  }

  /// Equality modulo t^n, where both sides are known below t^n.
  bool agrees_mod(const Laurent& o, int n) const {
    if (abs_ < n || o.abs_ < n)
      throw PrecisionExhausted("comparison modulo t^" + std::to_string(n));
    const int lo = std::min(valuation_lower_bound(), o.valuation_lower_bound());
    for (int k = lo; k < n; ++k)
      if (coeff(k) != o.coeff(k)) return false;
    return true;
  }

  std::size_t hash() const {
    std::size_t h = static_cast<std::size_t>(abs_) * 1000003u + static_cast<std::size_t>(c_.empty() ? 0 : val_ + 7919);
    for (Elt c : c_) h = h * 131 + c;
    return h;
  }

  std::string to_string() const {
    if (is_unresolved()) return "O(t^" + std::to_string(abs_) + ")";
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (!c_[i]) continue;
      const int k = val_ + static_cast<int>(i);
      if (!s.empty()) s += " + ";
      if (k == 0)
        s += std::to_string(c_[i]);
      else
        s += (c_[i] == 1 ? std::string() : std::to_string(c_[i]) + "*") + "t^" + std::to_string(k);
    }
    if (!is_exact()) s += " + O(t^" + std::to_string(abs_) + ")";
    return s;
  }

 private:
  const GaloisField* field_or_die() const {
    if (!f_) throw InvalidArgument("field-less Laurent value");
    return f_;
  }

  static Laurent combine(const Laurent& a, const Laurent& b, bool subtract) {
    const GaloisField* fp = a.f_ ? a.f_ : b.f_;
    if (!fp) return Laurent();
    const GaloisField& f = *fp;
    const int abs = std::min(a.abs_, b.abs_);
    int lo = std::min(a.valuation_lower_bound(), b.valuation_lower_bound());
    int hi;  // one past the last degree to compute
    if (abs == kExact) {
      if (a.c_.empty() && b.c_.empty()) return Laurent(f);
      lo = std::min(a.c_.empty() ? INT_MAX : a.val_, b.c_.empty() ? INT_MAX : b.val_);
      hi = std::max(a.c_.empty() ? INT_MIN : a.end_degree(), b.c_.empty() ? INT_MIN : b.end_degree());
    } else {
      hi = abs;
      if (lo >= hi) return big_o(f, abs);
    }
    Laurent x(f);
    x.val_ = lo;
    x.abs_ = abs;
    x.c_.assign(static_cast<std::size_t>(hi - lo), 0);
    auto digit = [](const Laurent& y, int k) -> Elt {
      if (y.c_.empty() || k < y.val_ || k >= y.end_degree()) return 0;
      return y.c_[k - y.val_];
    };
    for (int k = lo; k < hi; ++k) {
      const Elt u = digit(a, k), v = digit(b, k);
      x.c_[k - lo] = subtract ? f.sub(u, v) : f.add(u, v);
    }
    x.normalize();
    return x;
  }

  // Digits between the last stored one and abs_ are known zeros.
  void normalize() {
    if (!is_exact() && val_ + static_cast<int>(c_.size()) > abs_)
      c_.resize(static_cast<std::size_t>(std::max(0, abs_ - val_)));
    std::size_t lead = 0;
    while (lead < c_.size() && c_[lead] == 0) ++lead;
    if (lead) {
      c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
      val_ += static_cast<int>(lead);
    }
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
    if (c_.empty()) val_ = is_exact() ? 0 : abs_;
  }

  const GaloisField* f_ = nullptr;
  int val_ = 0;
  int abs_ = kExact;
  Coeffs c_;
};

}  // namespace hecke
