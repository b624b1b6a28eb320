#pragma once

// GL_n(F) for F = F_q((t)), modelled by matrices of truncated Laurent
// series, together with the Cartan reduction g = k1 diag(t^a) k2 and the
// membership predicates for the subgroups used by the level-0 lemmas.

#include <algorithm>
#include <climits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "hecke/errors.hpp"
#include "hecke/gf.hpp"
#include "hecke/laurent.hpp"
#include "hecke/weyl.hpp"

namespace hecke {

/// Global parameters of a computation: rank n, residue field size q,
/// relative precision used when exact data is truncated, and the valuation
/// window [-V, V] that enumerations are confined to.
struct LocalConfig {
  int n = 2;
  int q = 2;
  int prec = 4;
  int window = 1;

  static int default_prec(int window) { return 2 * window + 2; }

  static LocalConfig make(int n, int q, int window, std::optional<int> prec = std::nullopt) {
    LocalConfig c{n, q, prec.value_or(default_prec(window)), window};
    c.validate();
    return c;
  }

  const GaloisField& field() const { return GaloisField::get(q); }

  void validate() const {
    if (n < 1 || n > 4) throw ConfigError("n = " + std::to_string(n) + " outside 1..4");
    GaloisField::get(q);
    if (window < 0) throw ConfigError("negative valuation window");
    if (prec < 1) throw ConfigError("prec must be positive");
  }

  friend bool operator==(const LocalConfig&, const LocalConfig&) = default;
};

/// An n x n matrix of truncated Laurent series.
class LocalMatrix {
 public:
  LocalMatrix() = default;
  LocalMatrix(const GaloisField& f, int n) : f_(&f), n_(n), e_(static_cast<std::size_t>(n * n), Laurent(f)) {}

  static LocalMatrix identity(const GaloisField& f, int n) {
    LocalMatrix m(f, n);
    for (int i = 0; i < n; ++i) m(i, i) = Laurent::one(f);
    return m;
  }

  /// diag(t^{a_1}, ..., t^{a_n}).
  static LocalMatrix diagonal_powers(const GaloisField& f, const std::vector<int>& a) {
    const int n = static_cast<int>(a.size());
    LocalMatrix m(f, n);
    for (int i = 0; i < n; ++i) m(i, i) = Laurent::monomial(f, 1, a[i]);
    return m;
  }

  /// Constant lift of a residue matrix.
  static LocalMatrix lift(const ResMatrix& r) {
    LocalMatrix m(r.field(), r.n());
    for (int i = 0; i < r.n(); ++i)
      for (int j = 0; j < r.n(); ++j) m(i, j) = Laurent::monomial(r.field(), r(i, j), 0);
    return m;
  }

  const GaloisField& field() const { return *f_; }
  int n() const { return n_; }

  Laurent& operator()(int i, int j) { return e_[static_cast<std::size_t>(i * n_ + j)]; }
  const Laurent& operator()(int i, int j) const { return e_[static_cast<std::size_t>(i * n_ + j)]; }

  friend LocalMatrix operator*(const LocalMatrix& a, const LocalMatrix& b) {
    LocalMatrix c(*a.f_, a.n_);
    for (int i = 0; i < a.n_; ++i)
      for (int j = 0; j < a.n_; ++j) {
        Laurent acc(*a.f_);
        for (int k = 0; k < a.n_; ++k) {
          if (a(i, k).is_exact_zero() || b(k, j).is_exact_zero()) continue;
          acc = acc + a(i, k) * b(k, j);
        }
        c(i, j) = std::move(acc);
      }
    return c;
  }

  friend LocalMatrix operator+(const LocalMatrix& a, const LocalMatrix& b) {
    LocalMatrix c(*a.f_, a.n_);
    for (std::size_t k = 0; k < a.e_.size(); ++k) c.e_[k] = a.e_[k] + b.e_[k];
    return c;
  }

  friend LocalMatrix operator-(const LocalMatrix& a, const LocalMatrix& b) {
    LocalMatrix c(*a.f_, a.n_);
    for (std::size_t k = 0; k < a.e_.size(); ++k) c.e_[k] = a.e_[k] - b.e_[k];
    return c;
  }

  bool is_exact() const {
    return std::all_of(e_.begin(), e_.end(), [](const Laurent& x) { return x.is_exact(); });
  }

  /// Smallest valuation of a nonzero entry (entries must be resolved).
  int min_valuation() const {
    int v = INT_MAX;
    for (const auto& x : e_)
      if (!x.is_zero()) v = std::min(v, x.valuation());
    return v;
  }

  /// Residue matrix over F_q; all entries must lie in O.
  ResMatrix residue() const {
    ResMatrix r(*f_, n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        const Laurent& x = (*this)(i, j);
        if (x.valuation_lower_bound() < 0 && !x.is_zero() && x.valuation() < 0)
          throw InvalidArgument("residue of a non-integral matrix");
        r(i, j) = x.coeff(0);
      }
    return r;
  }

  /// Truncate every nonzero exact entry to absolute precision n.
  LocalMatrix truncated(int abs) const {
    LocalMatrix c(*this);
    for (auto& x : c.e_)
      if (!x.is_exact_zero()) x = x.truncated(abs);
    return c;
  }

  friend bool operator==(const LocalMatrix& a, const LocalMatrix& b) { return a.n_ == b.n_ && a.e_ == b.e_; }

  /// Entrywise equality modulo t^k.
  bool agrees_mod(const LocalMatrix& o, int k) const {
    for (std::size_t i = 0; i < e_.size(); ++i)
      if (!e_[i].agrees_mod(o.e_[i], k)) return false;
    return true;
  }

  std::string to_string() const {
    std::string s = "[";
    for (int i = 0; i < n_; ++i) {
      s += i ? "; " : "";
      for (int j = 0; j < n_; ++j) s += (j ? ", " : "") + (*this)(i, j).to_string();
    }
    return s + "]";
  }

 private:
  const GaloisField* f_ = nullptr;
  int n_ = 0;
  std::vector<Laurent> e_;
};

/// g = k1 diag(t^{cartan}) k2 with k1, k2 in GL_n(O); only the residues of
/// k1 and k2 are recorded. cartan is nondecreasing.
struct CartanDecomposition {
  std::vector<int> cartan;
  ResMatrix left;
  ResMatrix right;
};

/// Elementary-divisor reduction over O by unimodular row and column
/// operations. Nonzero exact entries are first truncated to absolute
/// precision (min valuation + prec).
inline CartanDecomposition cartan_decomposition(const LocalMatrix& g, int prec) {
  const GaloisField& f = g.field();
  const int n = g.n();
  LocalMatrix a = g;
  if (g.is_exact()) {
    const int v = g.min_valuation();
    if (v == INT_MAX) throw NotInvertible("zero matrix");
    a = g.truncated(v + prec);
  }
  ResMatrix row_ops = ResMatrix::identity(f, n);  // E with E g F = D
  ResMatrix col_ops = ResMatrix::identity(f, n);
  std::vector<int> cartan(static_cast<std::size_t>(n));
  std::vector<GaloisField::Elt> units(static_cast<std::size_t>(n));

  for (int k = 0; k < n; ++k) {
    int best = INT_MAX, br = -1, bc = -1, unresolved_floor = INT_MAX;
    for (int i = k; i < n; ++i)
      for (int j = k; j < n; ++j) {
        const Laurent& x = a(i, j);
        if (x.is_exact_zero()) continue;
        if (x.is_unresolved()) {
          unresolved_floor = std::min(unresolved_floor, x.abs_prec());
          continue;
        }
        if (x.valuation() < best) {
          best = x.valuation();
          br = i;
          bc = j;
        }
      }
    if (br < 0 && unresolved_floor == INT_MAX) throw NotInvertible("singular matrix " + g.to_string());
    if (br < 0 || unresolved_floor <= best)
      throw PrecisionExhausted("pivot of step " + std::to_string(k) + " not certified in " + g.to_string());

    if (br != k) {
      for (int j = 0; j < n; ++j) std::swap(a(br, j), a(k, j));
      row_ops.swap_rows(br, k);
    }
    if (bc != k) {
      for (int i = 0; i < n; ++i) std::swap(a(i, bc), a(i, k));
      col_ops.swap_cols(bc, k);
    }
    const Laurent pivot = a(k, k);
    const Laurent pinv = pivot.inverse(prec);
    for (int i = k + 1; i < n; ++i) {
      if (a(i, k).is_exact_zero()) continue;
      const Laurent factor = a(i, k) * pinv;
      const auto fr = factor.coeff(0);
      for (int j = k + 1; j < n; ++j) a(i, j) = a(i, j) - factor * a(k, j);
      a(i, k) = Laurent(f);
      if (fr)  // row_i -= fr * row_k on the residue side
        for (int j = 0; j < n; ++j) row_ops(i, j) = f.sub(row_ops(i, j), f.mul(fr, row_ops(k, j)));
    }
    for (int j = k + 1; j < n; ++j) {
      if (a(k, j).is_exact_zero()) continue;
      const Laurent factor = a(k, j) * pinv;
      const auto fr = factor.coeff(0);
      for (int i = k + 1; i < n; ++i) a(i, j) = a(i, j) - a(i, k) * factor;
      a(k, j) = Laurent(f);
      if (fr)  // col_j -= fr * col_k
        for (int i = 0; i < n; ++i) col_ops(i, j) = f.sub(col_ops(i, j), f.mul(fr, col_ops(i, k)));
    }
    cartan[static_cast<std::size_t>(k)] = pivot.valuation();
    units[static_cast<std::size_t>(k)] = pivot.leading();
  }
  // E g F = diag(t^a) u  =>  g = E^{-1} diag(t^a) (u F^{-1}).
  ResMatrix u(f, n);
  for (int i = 0; i < n; ++i) u(i, i) = units[static_cast<std::size_t>(i)];
  return {std::move(cartan), row_ops.inverse(), u * col_ops.inverse()};
}

/// An element of GL_n(F) with an exact valuation of its determinant.
class GroupElement {
 public:
  GroupElement() = default;

  /// Certifies invertibility by Cartan reduction at the given precision.
  static GroupElement from_matrix(LocalMatrix m, int prec) {
    const auto cd = cartan_decomposition(m, prec);
    return GroupElement(std::move(m), std::accumulate(cd.cartan.begin(), cd.cartan.end(), 0));
  }

  static GroupElement identity(const GaloisField& f, int n) { return {LocalMatrix::identity(f, n), 0}; }

  static GroupElement lift(const ResMatrix& r) {
    if (!r.invertible()) throw NotInvertible("residue matrix " + r.to_string());
    return {LocalMatrix::lift(r), 0};
  }

  static GroupElement diagonal_powers(const GaloisField& f, const std::vector<int>& a) {
    return {LocalMatrix::diagonal_powers(f, a), std::accumulate(a.begin(), a.end(), 0)};
  }

  /// Monomial matrix with entry t^{exps[j]} at (w(j), j).
  static GroupElement monomial(const GaloisField& f, const weyl::Permutation& w, const std::vector<int>& exps) {
    const int n = w.rank();
    LocalMatrix m(f, n);
    for (int j = 1; j <= n; ++j) m(w(j) - 1, j - 1) = Laurent::monomial(f, 1, exps[static_cast<std::size_t>(j - 1)]);
    return {std::move(m), std::accumulate(exps.begin(), exps.end(), 0)};
  }

  static GroupElement permutation(const GaloisField& f, const weyl::Permutation& w) {
    return monomial(f, w, std::vector<int>(static_cast<std::size_t>(w.rank()), 0));
  }

  const LocalMatrix& matrix() const { return m_; }
  int n() const { return m_.n(); }
  const GaloisField& field() const { return m_.field(); }
  int det_valuation() const { return det_val_; }
  const Laurent& operator()(int i, int j) const { return m_(i, j); }

  friend GroupElement operator*(const GroupElement& a, const GroupElement& b) {
    return {a.m_ * b.m_, a.det_val_ + b.det_val_};
  }

  /// Inverse; exact for exact monomial or exact unitriangular input,
  /// otherwise known to the precision the data supports.
  GroupElement inverse(int prec) const {
    const GaloisField& f = field();
    const int n = m_.n();
    if (m_.is_exact()) {
      if (auto inv = exact_monomial_inverse()) return {*inv, -det_val_};
      if (auto inv = exact_unipotent_inverse()) return {*inv, -det_val_};
    }
    LocalMatrix a = m_;
    if (a.is_exact()) a = a.truncated(a.min_valuation() + prec);
    LocalMatrix inv = LocalMatrix::identity(f, n);
    for (int c = 0; c < n; ++c) {
      int best = INT_MAX, br = -1;
      for (int r = c; r < n; ++r) {
        const Laurent& x = a(r, c);
        if (x.is_exact_zero() || x.is_unresolved()) continue;
        if (x.valuation() < best) {
          best = x.valuation();
          br = r;
        }
      }
      if (br < 0) throw PrecisionExhausted("no certified pivot in column " + std::to_string(c));
      for (int r = c; r < n; ++r)
        if (a(r, c).is_unresolved() && a(r, c).abs_prec() <= best)
          throw PrecisionExhausted("pivot in column " + std::to_string(c) + " not certified");
      for (int j = 0; j < n; ++j) {
        std::swap(a(br, j), a(c, j));
        std::swap(inv(br, j), inv(c, j));
      }
      const Laurent pinv = a(c, c).inverse(prec);
      for (int j = 0; j < n; ++j) {
        a(c, j) = a(c, j) * pinv;
        inv(c, j) = inv(c, j) * pinv;
      }
      a(c, c) = Laurent::one(f);
      for (int r = 0; r < n; ++r) {
        if (r == c || a(r, c).is_exact_zero()) continue;
        const Laurent fac = a(r, c);
        for (int j = 0; j < n; ++j) {
          if (j != c) a(r, j) = a(r, j) - fac * a(c, j);
          inv(r, j) = inv(r, j) - fac * inv(c, j);
        }
        a(r, c) = Laurent(f);
      }
    }
    return {std::move(inv), -det_val_};
  }

  std::string to_string() const { return m_.to_string(); }

 private:
  GroupElement(LocalMatrix m, int dv) : m_(std::move(m)), det_val_(dv) {}

  std::optional<LocalMatrix> exact_monomial_inverse() const {
    const int n = m_.n();
    LocalMatrix inv(field(), n);
    for (int i = 0; i < n; ++i) {
      int found = -1;
      for (int j = 0; j < n; ++j) {
        const Laurent& x = m_(i, j);
        if (x.is_exact_zero()) continue;
        if (found >= 0 || x.end_degree() - x.valuation() != 1) return std::nullopt;
        found = j;
      }
      if (found < 0) return std::nullopt;
      inv(found, i) = m_(i, found).inverse(1);
    }
    return inv;
  }

  // (I + N)^{-1} = sum_k (-N)^k for strictly triangular N.
  std::optional<LocalMatrix> exact_unipotent_inverse() const {
    const int n = m_.n();
    bool upper = true, lower = true;
    for (int i = 0; i < n; ++i) {
      if (m_(i, i) != Laurent::one(field())) return std::nullopt;
      for (int j = 0; j < n; ++j) {
        if (m_(i, j).is_exact_zero()) continue;
        if (i > j) upper = false;
        if (i < j) lower = false;
      }
    }
    if (!upper && !lower) return std::nullopt;
    const LocalMatrix id = LocalMatrix::identity(field(), n);
    const LocalMatrix neg = id - m_;  // -N
    LocalMatrix term = id, sum = id;
    for (int k = 1; k < n; ++k) {
      term = term * neg;
      sum = sum + term;
    }
    return sum;
  }

  LocalMatrix m_;
  int det_val_ = 0;
};

// ---------------------------------------------------------------------------
// Membership predicates.

namespace detail {

/// Whether x lies in t^k O; throws when the known digits cannot decide.
inline bool in_ideal(const Laurent& x, int k) {
  if (x.is_exact_zero()) return true;
  if (x.is_unresolved()) {
    if (x.abs_prec() >= k) return true;
    throw PrecisionExhausted("membership in t^" + std::to_string(k) + "O of " + x.to_string());
  }
  return x.valuation() >= k;
}

inline bool is_zero_entry(const Laurent& x) { return x.is_zero(); }

inline bool in_one_plus_ideal(const Laurent& x, int k) {
  return in_ideal(x - Laurent::one(*x.field()), k);
}

inline bool is_unit(const Laurent& x) { return !x.is_zero() && x.valuation() == 0; }

/// x == t^k exactly (up to known digits, which must all be decided).
inline bool is_exact_power(const Laurent& x, int k) {
  return in_ideal(x - Laurent::monomial(*x.field(), 1, k), INT_MAX / 2) ;
}

}  // namespace detail

enum class SubgroupKind {
  K,         // GL_n(O)
  K1,        // 1 + t M_n(O)
  I1,        // pro-p Iwahori K1 U
  ITilde1,   // diagonal in 1 + tO, above in O, below in tO
  U,         // upper unitriangular, entries in O
  UMinus,    // lower unitriangular, entries in O
  CalU,      // upper unitriangular, entries in F
  CalUMinus, // lower unitriangular, entries in F
  M,         // diagonal with unit entries
  MP,        // block diagonal in K for a subset P of simple roots
  UAlpha,    // U_alpha = calU_alpha intersect K
  UPPlus,    // unipotent radical of the upper parabolic of P, in K
  UPMinus,
  Z,         // upper unitriangular with entries in t^{-1} tO = O
  WBold,     // monomial with unit entries
  Delta,     // diag(1, t^{a_1}, ..., t^{a_{n-1}}), 0 <= a_1 <= ...
  DeltaHat,  // diag(1, t^{a_1}, ...), any integers
};

struct SubgroupSpec {
  SubgroupKind kind = SubgroupKind::K;
  weyl::SimpleSubset p{};  // for MP, UPPlus, UPMinus
  weyl::Root root{};       // for UAlpha
};

inline bool member(const GroupElement& g, const SubgroupSpec& s) {
  using namespace detail;
  const LocalMatrix& m = g.matrix();
  const int n = m.n();
  auto all = [&](auto&& pred) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!pred(i, j, m(i, j))) return false;
    return true;
  };
  auto unitriangular = [&](bool upper, int off_floor) {
    return all([&](int i, int j, const Laurent& x) {
      if (i == j) return in_one_plus_ideal(x, INT_MAX / 2);
      if ((i < j) != upper) return is_zero_entry(x);
      return off_floor == INT_MIN ? true : in_ideal(x, off_floor);
    });
  };
  switch (s.kind) {
    case SubgroupKind::K:
      return all([](int, int, const Laurent& x) { return in_ideal(x, 0); }) && g.det_valuation() == 0;
    case SubgroupKind::K1:
      return all([](int i, int j, const Laurent& x) { return i == j ? in_one_plus_ideal(x, 1) : in_ideal(x, 1); });
    case SubgroupKind::I1:
    case SubgroupKind::ITilde1:
      return all([](int i, int j, const Laurent& x) {
        if (i == j) return in_one_plus_ideal(x, 1);
        return in_ideal(x, i < j ? 0 : 1);
      });
    case SubgroupKind::U:
    case SubgroupKind::Z:
      return unitriangular(true, 0);
    case SubgroupKind::UMinus:
      return unitriangular(false, 0);
    case SubgroupKind::CalU:
      return unitriangular(true, INT_MIN);
    case SubgroupKind::CalUMinus:
      return unitriangular(false, INT_MIN);
    case SubgroupKind::M:
      return all([](int i, int j, const Laurent& x) { return i == j ? is_unit(x) : is_zero_entry(x); });
    case SubgroupKind::MP: {
      const auto b = s.p.blocks();
      return all([&](int i, int j, const Laurent& x) {
        return b[i + 1] == b[j + 1] ? in_ideal(x, 0) : is_zero_entry(x);
      }) && g.det_valuation() == 0;
    }
    case SubgroupKind::UAlpha:
      return all([&](int i, int j, const Laurent& x) {
        if (i == j) return in_one_plus_ideal(x, INT_MAX / 2);
        if (i + 1 == s.root.i && j + 1 == s.root.j) return in_ideal(x, 0);
        return is_zero_entry(x);
      });
    case SubgroupKind::UPPlus:
    case SubgroupKind::UPMinus: {
      const auto b = s.p.blocks();
      const bool upper = s.kind == SubgroupKind::UPPlus;
      return all([&](int i, int j, const Laurent& x) {
        if (i == j) return in_one_plus_ideal(x, INT_MAX / 2);
        const bool allowed = b[i + 1] != b[j + 1] && ((i < j) == upper);
        return allowed ? in_ideal(x, 0) : is_zero_entry(x);
      });
    }
    case SubgroupKind::WBold:
      for (int i = 0; i < n; ++i) {
        int units = 0;
        for (int j = 0; j < n; ++j) {
          if (is_zero_entry(m(i, j))) continue;
          if (!is_unit(m(i, j))) return false;
          ++units;
        }
        if (units != 1) return false;
      }
      return g.det_valuation() == 0;
    case SubgroupKind::Delta:
    case SubgroupKind::DeltaHat: {
      int prev = 0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const Laurent& x = m(i, j);
          if (i != j) {
            if (!is_zero_entry(x)) return false;
            continue;
          }
          if (x.is_zero()) return false;
          const int a = x.valuation();
          if (!is_exact_power(x, a)) return false;
          if (i == 0 && a != 0) return false;
          if (s.kind == SubgroupKind::Delta && a < prev) return false;
          prev = a;
        }
      return true;
    }
  }
  return false;
}

inline bool member(const GroupElement& g, SubgroupKind k) { return member(g, SubgroupSpec{k, {}, {}}); }

}  // namespace hecke
