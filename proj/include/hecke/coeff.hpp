#pragma once

// Exact coefficient rings: the rationals and prime fields F_ell.

#include <cstdint>
#include <ostream>
#include <string>

#include <gmpxx.h>

#include "hecke/errors.hpp"

namespace hecke {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Coefficient domain: ell == 0 means Q, otherwise F_ell.
class Field {
 public:
  constexpr Field() = default;

  static Field rationals() { return Field{}; }

  static Field prime(std::uint32_t ell) {
    if (!is_prime(ell))
      throw InvalidArgument("modulus " + std::to_string(ell) + " is not prime");
    Field f;
    f.ell_ = ell;
    return f;
  }

  /// F_ell for coefficients of an algebra attached to a field of residue
  /// characteristic p; rejects ell == p.
  static Field prime(std::uint32_t ell, std::uint32_t residue_char) {
    if (ell == residue_char)
      throw BadCharacteristic("ell = " + std::to_string(ell) +
                              " equals the residue characteristic");
    return prime(ell);
  }

  /// 0 for Q.
  static Field from_ell(std::uint32_t ell) { return ell == 0 ? rationals() : prime(ell); }

  constexpr bool is_rational() const { return ell_ == 0; }
  constexpr std::uint32_t characteristic() const { return ell_; }

  std::string name() const {
    return is_rational() ? std::string("Q") : "F_" + std::to_string(ell_);
  }

  friend constexpr bool operator==(Field a, Field b) { return a.ell_ == b.ell_; }

 private:
  std::uint32_t ell_ = 0;
};

/// An exact element of Q or of F_ell. Rationals are kept in lowest terms
/// with positive denominator; residues lie in [0, ell).
class Coefficient {
 public:
  Coefficient() = default;

  static Coefficient zero(Field f) { return from_int(f, 0); }
  static Coefficient one(Field f) { return from_int(f, 1); }

  static Coefficient from_int(Field f, long v) {
    Coefficient c;
    c.field_ = f;
    if (f.is_rational()) {
      c.q_ = v;
    } else {
      long m = static_cast<long>(f.characteristic());
      long r = v % m;
      if (r < 0) r += m;
      c.r_ = static_cast<std::uint64_t>(r);
    }
    return c;
  }

  static Coefficient rational(const mpq_class& v) {
    Coefficient c;
    c.q_ = v;
    c.q_.canonicalize();
    return c;
  }

  static Coefficient rational(long num, long den) {
    if (den == 0) throw DivisionByZero("zero denominator");
    mpq_class v{mpz_class(num), mpz_class(den)};
    v.canonicalize();
    return rational(v);
  }

  static Coefficient residue(Field f, std::uint64_t r) {
    if (f.is_rational()) throw InvalidArgument("residue() needs a prime field");
    Coefficient c;
    c.field_ = f;
    c.r_ = r % f.characteristic();
    return c;
  }

  Field field() const { return field_; }

  bool is_zero() const { return field_.is_rational() ? sgn(q_) == 0 : r_ == 0; }
  bool is_one() const { return field_.is_rational() ? q_ == 1 : r_ == 1; }

  const mpq_class& rational_value() const { return q_; }
  std::uint64_t residue_value() const { return r_; }

  Coefficient operator-() const {
    Coefficient c = *this;
    if (field_.is_rational())
      c.q_ = -q_;
    else
      c.r_ = r_ == 0 ? 0 : field_.characteristic() - r_;
    return c;
  }

  Coefficient& operator+=(const Coefficient& o) {
    check_same(o);
    if (field_.is_rational())
      q_ += o.q_;
    else
      r_ = (r_ + o.r_) % field_.characteristic();
    return *this;
  }

  Coefficient& operator-=(const Coefficient& o) { return *this += -o; }

  Coefficient& operator*=(const Coefficient& o) {
    check_same(o);
    if (field_.is_rational())
      q_ *= o.q_;
    else
      r_ = (r_ * o.r_) % field_.characteristic();
    return *this;
  }

  Coefficient inv() const {
    if (is_zero()) throw DivisionByZero("inverse of zero in " + field_.name());
    Coefficient c = *this;
    if (field_.is_rational()) {
      c.q_ = 1 / q_;
      c.q_.canonicalize();
    } else {
      c.r_ = pow_mod(r_, field_.characteristic() - 2, field_.characteristic());
    }
    return c;
  }

  Coefficient& operator/=(const Coefficient& o) { return *this *= o.inv(); }

  friend Coefficient operator+(Coefficient a, const Coefficient& b) { return a += b; }
  friend Coefficient operator-(Coefficient a, const Coefficient& b) { return a -= b; }
  friend Coefficient operator*(Coefficient a, const Coefficient& b) { return a *= b; }
  friend Coefficient operator/(Coefficient a, const Coefficient& b) { return a /= b; }

  friend bool operator==(const Coefficient& a, const Coefficient& b) {
    if (!(a.field_ == b.field_)) return false;
    return a.field_.is_rational() ? a.q_ == b.q_ : a.r_ == b.r_;
  }

  /// Image of a rational in F_ell; the denominator must be prime to ell.
  Coefficient reduce(Field target) const {
    if (!field_.is_rational()) throw MixedCoefficientDomains("reduce() expects a rational");
    if (target.is_rational()) return *this;
    const unsigned long m = target.characteristic();
    mpz_class num = q_.get_num() % m;
    if (num < 0) num += m;
    mpz_class den = q_.get_den() % m;
    if (den == 0)
      throw DivisionByZero("denominator of " + to_string() + " vanishes mod " +
                           std::to_string(m));
    return residue(target, num.get_ui()) / residue(target, den.get_ui());
  }

  std::string to_string() const {
    return field_.is_rational() ? q_.get_str() : std::to_string(r_);
  }

  friend std::ostream& operator<<(std::ostream& os, const Coefficient& c) {
    os << c.to_string();
    if (!c.field_.is_rational()) os << " mod " << c.field_.characteristic();
    return os;
  }

 private:
  void check_same(const Coefficient& o) const {
    if (!(field_ == o.field_))
      throw MixedCoefficientDomains(field_.name() + " vs " + o.field_.name());
  }

  static std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
      if (e & 1) r = r * b % m;
      b = b * b % m;
      e >>= 1;
    }
    return r;
  }

  Field field_;
  mpq_class q_;
  std::uint64_t r_ = 0;
};

}  // namespace hecke
