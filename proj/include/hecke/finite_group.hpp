#pragma once

// Finite groups as permutation groups with full multiplication tables, and
// their matrix representations over Q or F_ell.

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "hecke/errors.hpp"
#include "hecke/linalg.hpp"

namespace hecke::finite {

/// Images of 0..m-1.
using Perm = std::vector<int>;

/// Elements are indices 0..order-1 with 0 the identity; a*b means
/// composition a(b(x)).
class FiniteGroup {
 public:
  FiniteGroup() = default;

  static FiniteGroup from_generators(std::string name, int degree, const std::vector<Perm>& gens) {
    FiniteGroup g;
    g.name_ = std::move(name);
    Perm id(static_cast<std::size_t>(degree));
    for (int i = 0; i < degree; ++i) id[static_cast<std::size_t>(i)] = i;
    for (const auto& p : gens)
      if (static_cast<int>(p.size()) != degree || !is_perm(p)) throw InvalidArgument("bad permutation generator");
    g.add(id);
    for (std::size_t k = 0; k < g.perms_.size(); ++k)
      for (const auto& s : gens) g.add(compose(g.perms_[k], s));
    const int n = g.order();
    g.mul_.assign(static_cast<std::size_t>(n * n), 0);
    g.inv_.assign(static_cast<std::size_t>(n), 0);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const int c = g.index_of(compose(g.perm(a), g.perm(b)));
        g.mul_[static_cast<std::size_t>(a * n + b)] = c;
        if (c == 0) g.inv_[static_cast<std::size_t>(a)] = b;
      }
    g.check_axioms();
    return g;
  }

  static FiniteGroup symmetric(int n) {
    if (n < 1 || n > 6) throw InvalidArgument("symmetric group degree " + std::to_string(n));
    std::vector<Perm> gens;
    if (n > 1) {
      gens.push_back(transposition(n, 0, 1));
      Perm c(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = (i + 1) % n;
      gens.push_back(c);
    }
    return from_generators("S" + std::to_string(n), n, gens);
  }

  static FiniteGroup cyclic(int n) {
    if (n < 1) throw InvalidArgument("cyclic group order " + std::to_string(n));
    Perm c(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = (i + 1) % n;
    return from_generators("C" + std::to_string(n), n, {c});
  }

  /// GL_2(F_p) acting on the nonzero vectors of F_p^2.
  static FiniteGroup gl2(int p) {
    if (p != 2 && p != 3) throw InvalidArgument("GL_2(F_p) is provided for p = 2, 3");
    std::vector<Perm> gens{gl2_perm(p, 1, 1, 0, 1), gl2_perm(p, 0, 1, 1, 0)};
    if (p == 3) gens.push_back(gl2_perm(p, 2, 0, 0, 1));
    return from_generators("GL2(F" + std::to_string(p) + ")", p * p - 1, gens);
  }

  /// The permutation of the nonzero vectors (x, y) ~ index x + p y - 1
  /// induced by [[a, b], [c, d]].
  static Perm gl2_perm(int p, int a, int b, int c, int d) {
    if (((a * d - b * c) % p + p) % p == 0) throw InvalidArgument("singular matrix");
    Perm out(static_cast<std::size_t>(p * p - 1));
    for (int v = 1; v < p * p; ++v) {
      const int x = v % p, y = v / p;
      const int nx = (a * x + b * y) % p, ny = (c * x + d * y) % p;
      out[static_cast<std::size_t>(v - 1)] = nx + p * ny - 1;
    }
    return out;
  }

  static Perm transposition(int n, int i, int j) {
    Perm t(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) t[static_cast<std::size_t>(k)] = k;
    std::swap(t[static_cast<std::size_t>(i)], t[static_cast<std::size_t>(j)]);
    return t;
  }

  const std::string& name() const { return name_; }
  int order() const { return static_cast<int>(perms_.size()); }
  int degree() const { return perms_.empty() ? 0 : static_cast<int>(perms_[0].size()); }
  int mul(int a, int b) const { return mul_[static_cast<std::size_t>(a * order() + b)]; }
  int inv(int a) const { return inv_[static_cast<std::size_t>(a)]; }
  const Perm& perm(int a) const { return perms_[static_cast<std::size_t>(a)]; }

  int index_of(const Perm& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) throw InvalidArgument("permutation not in " + name_);
    return it->second;
  }

  /// Sign of the permutation.
  int sign(int a) const {
    const Perm& p = perm(a);
    std::vector<bool> seen(p.size(), false);
    int s = 1;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (seen[i]) continue;
      int len = 0;
      for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
        seen[j] = true;
        ++len;
      }
      if (len % 2 == 0) s = -s;
    }
    return s;
  }

  /// The subgroup generated by the given elements, sorted.
  std::vector<int> subgroup(const std::vector<int>& gens) const {
    std::set<int> s{0};
    std::vector<int> todo{0};
    while (!todo.empty()) {
      const int x = todo.back();
      todo.pop_back();
      for (int g : gens) {
        const int y = mul(x, g);
        if (s.insert(y).second) todo.push_back(y);
      }
    }
    return {s.begin(), s.end()};
  }

  /// A small generating set of the subgroup h, chosen greedily.
  std::vector<int> generating_set(const std::vector<int>& h) const {
    std::vector<int> gens;
    std::set<int> reached{0};
    for (int x : h) {
      if (reached.count(x)) continue;
      gens.push_back(x);
      const auto s = subgroup(gens);
      reached = std::set<int>(s.begin(), s.end());
    }
    return gens;
  }

  bool is_subgroup(const std::vector<int>& h) const {
    const std::set<int> s(h.begin(), h.end());
    if (!s.count(0)) return false;
    for (int a : h)
      for (int b : h)
        if (!s.count(mul(a, inv(b)))) return false;
    return true;
  }

  std::vector<std::vector<int>> conjugacy_classes() const {
    std::vector<bool> seen(static_cast<std::size_t>(order()), false);
    std::vector<std::vector<int>> out;
    for (int a = 0; a < order(); ++a) {
      if (seen[static_cast<std::size_t>(a)]) continue;
      std::set<int> c;
      for (int g = 0; g < order(); ++g) c.insert(mul(mul(g, a), inv(g)));
      for (int x : c) seen[static_cast<std::size_t>(x)] = true;
      out.emplace_back(c.begin(), c.end());
    }
    return out;
  }

  void check_axioms() const {
    const int n = order();
    for (int a = 0; a < n; ++a) {
      if (mul(0, a) != a || mul(a, 0) != a || mul(a, inv(a)) != 0) throw InvalidArgument("group axioms fail in " + name_);
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c))) throw InvalidArgument("multiplication not associative in " + name_);
    }
  }

 private:
  static bool is_perm(const Perm& p) {
    std::vector<bool> hit(p.size(), false);
    for (int x : p) {
      if (x < 0 || x >= static_cast<int>(p.size()) || hit[static_cast<std::size_t>(x)]) return false;
      hit[static_cast<std::size_t>(x)] = true;
    }
    return true;
  }

  static Perm compose(const Perm& a, const Perm& b) {
    Perm c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[static_cast<std::size_t>(b[i])];
    return c;
  }

  void add(const Perm& p) {
    if (index_.emplace(p, order()).second) perms_.push_back(p);
  }

  std::string name_;
  std::vector<Perm> perms_;
  std::map<Perm, int> index_;
  std::vector<int> mul_, inv_;
};

/// Left coset representatives x of G/H (x H), smallest index per coset.
inline std::vector<int> left_coset_reps(const FiniteGroup& g, const std::vector<int>& h) {
  std::vector<bool> seen(static_cast<std::size_t>(g.order()), false);
  std::vector<int> out;
  for (int x = 0; x < g.order(); ++x) {
    if (seen[static_cast<std::size_t>(x)]) continue;
    out.push_back(x);
    for (int y : h) seen[static_cast<std::size_t>(g.mul(x, y))] = true;
  }
  return out;
}

/// Right coset representatives r of H\G (H r); the first one is the identity.
inline std::vector<int> right_coset_reps(const FiniteGroup& g, const std::vector<int>& h) {
  std::vector<bool> seen(static_cast<std::size_t>(g.order()), false);
  std::vector<int> out;
  for (int x = 0; x < g.order(); ++x) {
    if (seen[static_cast<std::size_t>(x)]) continue;
    out.push_back(x);
    for (int y : h) seen[static_cast<std::size_t>(g.mul(y, x))] = true;
  }
  return out;
}

inline std::vector<int> double_coset_reps(const FiniteGroup& g, const std::vector<int>& h) {
  std::vector<bool> seen(static_cast<std::size_t>(g.order()), false);
  std::vector<int> out;
  for (int x = 0; x < g.order(); ++x) {
    if (seen[static_cast<std::size_t>(x)]) continue;
    out.push_back(x);
    for (int a : h)
      for (int b : h) seen[static_cast<std::size_t>(g.mul(g.mul(a, x), b))] = true;
  }
  return out;
}

/// A representation of the subgroup `domain` of a finite group.
class Rep {
 public:
  Rep() = default;

  /// Builds and checks rho(1) = 1 and rho(ab) = rho(a) rho(b) on the domain.
  static Rep make(const FiniteGroup& g, std::vector<int> domain, Field f, std::size_t dim,
                  const std::function<Matrix(int)>& fn) {
    if (!g.is_subgroup(domain)) throw InvalidArgument("representation domain is not a subgroup");
    Rep r;
    r.g_ = &g;
    r.field_ = f;
    r.dim_ = dim;
    std::sort(domain.begin(), domain.end());
    r.domain_ = std::move(domain);
    r.mats_.assign(static_cast<std::size_t>(g.order()), Matrix());
    r.in_.assign(static_cast<std::size_t>(g.order()), false);
    for (int x : r.domain_) {
      Matrix m = fn(x);
      if (m.rows() != dim || m.cols() != dim) throw InvalidArgument("representation matrix has wrong size");
      r.mats_[static_cast<std::size_t>(x)] = std::move(m);
      r.in_[static_cast<std::size_t>(x)] = true;
    }
    r.check();
    return r;
  }

  static Rep trivial(const FiniteGroup& g, std::vector<int> domain, Field f) {
    return make(g, std::move(domain), f, 1, [&](int) { return Matrix::identity(f, 1); });
  }

  static Rep sign(const FiniteGroup& g, std::vector<int> domain, Field f) {
    return make(g, std::move(domain), f, 1, [&](int x) {
      Matrix m(f, 1, 1);
      m(0, 0) = Coefficient::from_int(f, g.sign(x));
      return m;
    });
  }

  /// The permutation representation on the points moved by g.
  static Rep permutation(const FiniteGroup& g, std::vector<int> domain, Field f) {
    const auto d = static_cast<std::size_t>(g.degree());
    return make(g, std::move(domain), f, d, [&](int x) {
      Matrix m(f, d, d);
      for (std::size_t j = 0; j < d; ++j) m(static_cast<std::size_t>(g.perm(x)[j]), j) = Coefficient::one(f);
      return m;
    });
  }

  static Rep regular(const FiniteGroup& g, Field f) {
    const auto n = static_cast<std::size_t>(g.order());
    std::vector<int> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<int>(i);
    return make(g, all, f, n, [&](int x) {
      Matrix m(f, n, n);
      for (std::size_t j = 0; j < n; ++j) m(static_cast<std::size_t>(g.mul(x, static_cast<int>(j))), j) = Coefficient::one(f);
      return m;
    });
  }

  const FiniteGroup& group() const { return *g_; }
  const std::vector<int>& domain() const { return domain_; }
  Field field() const { return field_; }
  std::size_t dim() const { return dim_; }
  bool defined_at(int x) const { return in_[static_cast<std::size_t>(x)]; }

  const Matrix& operator()(int x) const {
    if (!defined_at(x)) throw InvalidArgument("element outside the representation's domain");
    return mats_[static_cast<std::size_t>(x)];
  }

  Rep restrict(const std::vector<int>& sub) const {
    for (int x : sub)
      if (!defined_at(x)) throw InvalidArgument("restriction to a non-subgroup of the domain");
    return make(*g_, sub, field_, dim_, [&](int x) { return (*this)(x); });
  }

  friend Rep direct_sum(const Rep& a, const Rep& b) {
    if (a.domain_ != b.domain_) throw InvalidArgument("direct sum of representations on different domains");
    return make(*a.g_, a.domain_, a.field_, a.dim_ + b.dim_, [&](int x) {
      Matrix m(a.field_, a.dim_ + b.dim_, a.dim_ + b.dim_);
      for (std::size_t i = 0; i < a.dim_; ++i)
        for (std::size_t j = 0; j < a.dim_; ++j) m(i, j) = a(x)(i, j);
      for (std::size_t i = 0; i < b.dim_; ++i)
        for (std::size_t j = 0; j < b.dim_; ++j) m(a.dim_ + i, a.dim_ + j) = b(x)(i, j);
      return m;
    });
  }

  /// The representation on an invariant subspace, in the coordinates of its
  /// reduced echelon basis.
  Rep sub(const Subspace& s) const {
    const auto basis = s.vectors();
    return make(*g_, domain_, field_, s.dim(), [&](int x) {
      Matrix m(field_, s.dim(), s.dim());
      for (std::size_t j = 0; j < basis.size(); ++j) {
        const Vec img = (*this)(x).apply(basis[j]);
        if (!s.contains(img)) throw InvalidArgument("subspace is not invariant");
        const Vec c = s.coordinates(img);
        for (std::size_t i = 0; i < c.size(); ++i) m(i, j) = c[i];
      }
      return m;
    });
  }

  /// The representation on V / s, in the coordinates of the standard basis
  /// vectors outside the pivots of s.
  Rep quotient(const Subspace& s) const {
    const auto comp = complement_indices(s);
    return make(*g_, domain_, field_, comp.size(), [&](int x) {
      Matrix m(field_, comp.size(), comp.size());
      for (std::size_t j = 0; j < comp.size(); ++j) {
        Vec e = zero_vec(field_, dim_);
        e[comp[j]] = Coefficient::one(field_);
        const Vec r = s.reduce((*this)(x).apply(e));
        for (std::size_t i = 0; i < comp.size(); ++i) m(i, j) = r[comp[i]];
      }
      return m;
    });
  }

  /// Coordinates of the class of v in V / s (matching quotient()).
  static Vec quotient_coordinates(const Subspace& s, const Vec& v) {
    const auto comp = complement_indices(s);
    const Vec r = s.reduce(v);
    Vec out;
    for (auto c : comp) out.push_back(r[c]);
    return out;
  }

  static std::vector<std::size_t> complement_indices(const Subspace& s) {
    std::vector<bool> piv(s.ambient_dim(), false);
    for (auto p : s.pivots()) piv[p] = true;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < s.ambient_dim(); ++i)
      if (!piv[i]) out.push_back(i);
    return out;
  }

 private:
  void check() const {
    const Matrix id = Matrix::identity(field_, dim_);
    if (!((*this)(0) == id)) throw InvalidArgument("rho(1) is not the identity");
    for (int a : domain_)
      for (int b : domain_)
        if (!((*this)(g_->mul(a, b)) == (*this)(a) * (*this)(b)))
          throw InvalidArgument("representation is not multiplicative");
  }

  const FiniteGroup* g_ = nullptr;
  Field field_;
  std::size_t dim_ = 0;
  std::vector<int> domain_;
  std::vector<Matrix> mats_;
  std::vector<bool> in_;
};

/// Basis of { M : M a_i = b_i M } for pairs of square matrices a_i (size
/// da) and b_i (size db); M is db x da.
inline std::vector<Matrix> solve_intertwiners(Field f, std::size_t db, std::size_t da,
                                              const std::vector<std::pair<const Matrix*, const Matrix*>>& pairs) {
  const std::size_t unknowns = db * da;
  std::vector<Vec> rows;
  for (const auto& [a, b] : pairs)
    for (std::size_t i = 0; i < db; ++i)
      for (std::size_t j = 0; j < da; ++j) {
        // (M a)_{ij} - (b M)_{ij} = sum_k M_ik a_kj - sum_k b_ik M_kj
        Vec row = zero_vec(f, unknowns);
        for (std::size_t k = 0; k < da; ++k) row[i * da + k] += (*a)(k, j);
        for (std::size_t k = 0; k < db; ++k) row[k * da + j] -= (*b)(i, k);
        if (!is_zero_vec(row)) rows.push_back(std::move(row));
      }
  std::vector<Vec> ker;
  if (rows.empty()) {
    for (std::size_t u = 0; u < unknowns; ++u) {
      Vec v = zero_vec(f, unknowns);
      v[u] = Coefficient::one(f);
      ker.push_back(std::move(v));
    }
  } else {
    ker = kernel(Matrix::from_rows(f, unknowns, rows));
  }
  // report the basis in reduced echelon form so that coordinates are canonical
  const Subspace s = Subspace::span(f, unknowns, ker);
  std::vector<Matrix> out;
  for (const auto& v : s.vectors()) {
    Matrix m(f, db, da);
    for (std::size_t i = 0; i < db; ++i)
      for (std::size_t j = 0; j < da; ++j) m(i, j) = v[i * da + j];
    out.push_back(std::move(m));
  }
  return out;
}

inline Vec flatten(const Matrix& m) {
  Vec v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
  return v;
}

inline Matrix unflatten(Field f, std::size_t rows, std::size_t cols, const Vec& v) {
  Matrix m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = v[i * cols + j];
  return m;
}

/// G-maps a -> b where G is the subgroup `over`, imposed on its generators.
inline std::vector<Matrix> hom_space(const Rep& a, const Rep& b, const std::vector<int>& over) {
  std::vector<std::pair<const Matrix*, const Matrix*>> pairs;
  for (int x : a.group().generating_set(over)) pairs.emplace_back(&a(x), &b(x));
  return solve_intertwiners(a.field(), b.dim(), a.dim(), pairs);
}

inline std::vector<Matrix> hom_space(const Rep& a, const Rep& b) { return hom_space(a, b, a.domain()); }

/// The smallest invariant subspace containing s.
inline Subspace generated(const Rep& v, const Subspace& s) {
  const auto gens = v.group().generating_set(v.domain());
  Subspace cur = s;
  for (;;) {
    std::vector<Vec> vecs = cur.vectors();
    for (const auto& b : cur.vectors())
      for (int x : gens) vecs.push_back(v(x).apply(b));
    Subspace next = Subspace::span(v.field(), v.dim(), vecs);
    if (next.dim() == cur.dim()) return next;
    cur = std::move(next);
  }
}

}  // namespace hecke::finite
