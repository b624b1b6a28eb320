#pragma once

// The Hecke algebra H_R(G, sigma) of a finite group G, a subgroup H and a
// representation sigma of H; its identification with End_G(ind sigma); the
// functor M_sigma and the subrepresentation-lattice checks built on it.

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hecke/finite_group.hpp"
#include "hecke/report.hpp"

namespace hecke::finite {

/// ind_H^G(sigma): functions f with f(hg) = sigma(h) f(g), (x.f)(g) = f(gx),
/// stored by their values at right coset representatives r_j (r_0 = 1);
/// coordinate j * dim(sigma) + k.
class InducedRep {
 public:
  explicit InducedRep(const Rep& sigma) : sigma_(sigma) {
    const FiniteGroup& g = sigma.group();
    reps_ = right_coset_reps(g, sigma.domain());
    coset_.assign(static_cast<std::size_t>(g.order()), 0);
    hpart_.assign(static_cast<std::size_t>(g.order()), 0);
    for (std::size_t j = 0; j < reps_.size(); ++j)
      for (int h : sigma.domain()) {
        const int x = g.mul(h, reps_[j]);
        coset_[static_cast<std::size_t>(x)] = static_cast<int>(j);
        hpart_[static_cast<std::size_t>(x)] = h;
      }
    const std::size_t d = sigma.dim(), n = reps_.size() * d;
    std::vector<int> all(static_cast<std::size_t>(g.order()));
    std::iota(all.begin(), all.end(), 0);
    rep_ = Rep::make(g, all, sigma.field(), n, [&](int x) {
      Matrix m(sigma.field(), n, n);
      for (std::size_t j = 0; j < reps_.size(); ++j) {
        const int y = g.mul(reps_[j], x);
        const auto jj = static_cast<std::size_t>(coset_[static_cast<std::size_t>(y)]);
        const Matrix& s = sigma(hpart_[static_cast<std::size_t>(y)]);
        for (std::size_t a = 0; a < d; ++a)
          for (std::size_t b = 0; b < d; ++b) m(j * d + a, jj * d + b) = s(a, b);
      }
      return m;
    });
  }

  const Rep& sigma() const { return sigma_; }
  const Rep& rep() const { return rep_; }
  std::size_t dim() const { return rep_.dim(); }
  const std::vector<int>& coset_reps() const { return reps_; }

  /// f(g) for f given in coordinates.
  Vec eval(const Vec& f, int g) const {
    const std::size_t d = sigma_.dim();
    const auto j = static_cast<std::size_t>(coset_[static_cast<std::size_t>(g)]);
    Vec at(f.begin() + static_cast<std::ptrdiff_t>(j * d), f.begin() + static_cast<std::ptrdiff_t>((j + 1) * d));
    return sigma_(hpart_[static_cast<std::size_t>(g)]).apply(at);
  }

  /// Coordinates of the function g -> values(g).
  Vec from_function(const std::function<Vec(int)>& values) const {
    Vec out;
    for (int r : reps_) {
      const Vec v = values(r);
      out.insert(out.end(), v.begin(), v.end());
    }
    return out;
  }

  /// i_v: supported on H with i_v(h) = sigma(h) v.
  Vec i(const Vec& v) const {
    Vec out = zero_vec(sigma_.field(), dim());
    for (std::size_t k = 0; k < v.size(); ++k) out[k] = v[k];
    return out;
  }

 private:
  Rep sigma_;
  std::vector<int> reps_, coset_, hpart_;
  Rep rep_;
};

/// Hom_{H cap H^g}(sigma, sigma^g): M sigma(x) = sigma(g x g^-1) M for x in
/// H cap g^-1 H g.
inline std::vector<Matrix> intertwining_space(int g, const Rep& sigma) {
  const FiniteGroup& grp = sigma.group();
  std::vector<int> meet;
  for (int x : sigma.domain())
    if (sigma.defined_at(grp.mul(grp.mul(g, x), grp.inv(g)))) meet.push_back(x);
  std::vector<Matrix> conj;
  const auto xs = grp.generating_set(meet);
  for (int x : xs) conj.push_back(sigma(grp.mul(grp.mul(g, x), grp.inv(g))));
  std::vector<std::pair<const Matrix*, const Matrix*>> pairs;
  for (std::size_t k = 0; k < xs.size(); ++k) pairs.emplace_back(&sigma(xs[k]), &conj[k]);
  return solve_intertwiners(sigma.field(), sigma.dim(), sigma.dim(), pairs);
}

/// A function G -> End(V_sigma), stored on all of G.
struct FiniteHeckeElement {
  std::vector<Matrix> table;

  const Matrix& operator()(int g) const { return table[static_cast<std::size_t>(g)]; }
  friend bool operator==(const FiniteHeckeElement& a, const FiniteHeckeElement& b) { return a.table == b.table; }
  friend FiniteHeckeElement operator+(FiniteHeckeElement a, const FiniteHeckeElement& b) {
    for (std::size_t i = 0; i < a.table.size(); ++i) a.table[i] = a.table[i] + b.table[i];
    return a;
  }
  friend FiniteHeckeElement operator*(const Coefficient& c, FiniteHeckeElement a) {
    for (auto& m : a.table) m = c * m;
    return a;
  }
};

class FiniteHeckeAlgebra {
 public:
  explicit FiniteHeckeAlgebra(const Rep& sigma) : ind_(sigma) {
    const FiniteGroup& g = group();
    left_ = finite::left_coset_reps(g, sigma.domain());
    double_ = finite::double_coset_reps(g, sigma.domain());
    const std::size_t d = sigma.dim();
    for (int r : double_) {
      const auto sp = intertwining_space(r, sigma);
      std::vector<Vec> flat;
      for (const auto& m : sp) flat.push_back(flatten(m));
      spaces_.push_back(Subspace::span(field(), d * d, flat));
      for (const auto& m : sp) {
        basis_.push_back(extend(r, m));
        basis_coset_.push_back(r);
      }
    }
  }

  const FiniteGroup& group() const { return ind_.sigma().group(); }
  const Rep& sigma() const { return ind_.sigma(); }
  const InducedRep& induced() const { return ind_; }
  Field field() const { return sigma().field(); }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<FiniteHeckeElement>& basis() const { return basis_; }
  const std::vector<int>& double_coset_reps() const { return double_; }
  const std::vector<int>& left_coset_reps() const { return left_; }

  /// The values at double coset representatives.
  std::map<int, Matrix> values(const FiniteHeckeElement& phi) const {
    std::map<int, Matrix> out;
    for (int r : double_) out.emplace(r, phi(r));
    return out;
  }

  /// The function h g h' -> sigma(h) m sigma(h'), zero off H g H; m must
  /// lie in I_g(sigma).
  FiniteHeckeElement extend(int g, const Matrix& m) const {
    const FiniteGroup& grp = group();
    const std::size_t d = sigma().dim();
    FiniteHeckeElement phi{std::vector<Matrix>(static_cast<std::size_t>(grp.order()), Matrix(field(), d, d))};
    std::vector<bool> set(static_cast<std::size_t>(grp.order()), false);
    for (int h : sigma().domain())
      for (int h2 : sigma().domain()) {
        const auto x = static_cast<std::size_t>(grp.mul(grp.mul(h, g), h2));
        Matrix v = sigma()(h) * m * sigma()(h2);
        if (set[x] && !(phi.table[x] == v)) throw InvalidArgument("matrix does not intertwine");
        phi.table[x] = std::move(v);
        set[x] = true;
      }
    return phi;
  }

  FiniteHeckeElement zero() const {
    const std::size_t d = sigma().dim();
    return {std::vector<Matrix>(static_cast<std::size_t>(group().order()), Matrix(field(), d, d))};
  }

  FiniteHeckeElement identity() const { return extend(0, Matrix::identity(field(), sigma().dim())); }

  /// Phi(h g h') = sigma(h) Phi(g) sigma(h') everywhere.
  bool is_element(const FiniteHeckeElement& phi) const {
    const FiniteGroup& grp = group();
    for (int g = 0; g < grp.order(); ++g)
      for (int h : sigma().domain()) {
        if (!(phi(grp.mul(h, g)) == sigma()(h) * phi(g))) return false;
        if (!(phi(grp.mul(g, h)) == phi(g) * sigma()(h))) return false;
      }
    return true;
  }

  /// (a * b)(g) = sum over x in G/H of a(x) b(x^-1 g).
  FiniteHeckeElement convolve(const FiniteHeckeElement& a, const FiniteHeckeElement& b) const {
    const FiniteGroup& grp = group();
    FiniteHeckeElement out = zero();
    for (int g = 0; g < grp.order(); ++g)
      for (int x : left_) {
        const Matrix& ax = a(x);
        if (ax.is_zero()) continue;
        out.table[static_cast<std::size_t>(g)] = out(g) + ax * b(grp.mul(grp.inv(x), g));
      }
    return out;
  }

  /// Coordinates in basis(): per double coset, coordinates of the value in
  /// the echelon basis of I_r(sigma).
  Vec coordinates(const FiniteHeckeElement& phi) const {
    Vec out;
    for (std::size_t k = 0; k < double_.size(); ++k) {
      const Vec f = flatten(phi(double_[k]));
      if (!spaces_[k].contains(f)) throw InvalidArgument("value outside the intertwining space");
      const Vec c = spaces_[k].coordinates(f);
      out.insert(out.end(), c.begin(), c.end());
    }
    return out;
  }

  FiniteHeckeElement from_coordinates(const Vec& c) const {
    FiniteHeckeElement out = zero();
    for (std::size_t b = 0; b < basis_.size(); ++b)
      if (!c[b].is_zero()) out = out + c[b] * basis_[b];
    return out;
  }

  /// xi(Phi)(f)(g) = sum over x in G/H of Phi(x) f(x^-1 g).
  Matrix xi(const FiniteHeckeElement& phi) const {
    const FiniteGroup& grp = group();
    const std::size_t n = ind_.dim();
    std::vector<Vec> cols;
    for (std::size_t c = 0; c < n; ++c) {
      Vec f = zero_vec(field(), n);
      f[c] = Coefficient::one(field());
      cols.push_back(ind_.from_function([&](int g) {
        Vec acc = zero_vec(field(), sigma().dim());
        for (int x : left_) {
          const Vec v = phi(x).apply(ind_.eval(f, grp.mul(grp.inv(x), g)));
          for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += v[i];
        }
        return acc;
      }));
    }
    return Matrix::from_columns(field(), n, cols);
  }

  /// xi^-1(theta)(g) v = theta(i_v)(g).
  FiniteHeckeElement xi_inverse(const Matrix& theta) const {
    const std::size_t d = sigma().dim();
    FiniteHeckeElement out = zero();
    for (std::size_t k = 0; k < d; ++k) {
      Vec e = zero_vec(field(), d);
      e[k] = Coefficient::one(field());
      const Vec f = theta.apply(ind_.i(e));
      for (int g = 0; g < group().order(); ++g) {
        const Vec col = ind_.eval(f, g);
        for (std::size_t i = 0; i < d; ++i) out.table[static_cast<std::size_t>(g)](i, k) = col[i];
      }
    }
    return out;
  }

  /// End_G(ind sigma), by solving the commutation equations directly.
  std::vector<Matrix> endomorphisms() const { return hom_space(ind_.rep(), ind_.rep()); }

 private:
  InducedRep ind_;
  std::vector<int> left_, double_;
  std::vector<Subspace> spaces_;
  std::vector<FiniteHeckeElement> basis_;
  std::vector<int> basis_coset_;
};

/// V^sigma: the sum of the images of all K-maps sigma -> V.
inline Subspace v_sigma(const Rep& v, const Rep& sigma) {
  std::vector<Vec> vecs;
  for (const auto& m : hom_space(sigma, v, sigma.domain()))
    for (std::size_t j = 0; j < m.cols(); ++j) vecs.push_back(m.col(j));
  return Subspace::span(v.field(), v.dim(), vecs);
}

/// V[sigma]: the subrepresentation generated by V^sigma.
inline Subspace v_sigma_generated(const Rep& v, const Rep& sigma) { return generated(v, v_sigma(v, sigma)); }

/// A finite-dimensional right module over H_R(G, sigma): w . basis[b] =
/// action[b] w.
struct RightModule {
  std::size_t dim = 0;
  std::vector<Matrix> action;
};

/// M_sigma(V) = Hom_G(ind sigma, V), basis in echelon form, with
/// psi . Phi = psi o xi(Phi).
struct MSigma {
  std::vector<Matrix> basis;
  Subspace span;
  RightModule module;
};

inline void require_good_characteristic(const Rep& sigma) {
  const auto ell = sigma.field().characteristic();
  if (ell != 0 && sigma.domain().size() % ell == 0)
    throw BadCharacteristic("characteristic " + std::to_string(ell) + " divides |K| = " +
                            std::to_string(sigma.domain().size()));
}

/// Matrices xi(b) for the basis of the algebra, cached by the caller.
inline std::vector<Matrix> xi_basis(const FiniteHeckeAlgebra& alg) {
  std::vector<Matrix> out;
  for (const auto& b : alg.basis()) out.push_back(alg.xi(b));
  return out;
}

inline MSigma m_sigma(const FiniteHeckeAlgebra& alg, const std::vector<Matrix>& xis, const Rep& v) {
  require_good_characteristic(alg.sigma());
  MSigma m;
  const Rep& rho = alg.induced().rep();
  m.basis = hom_space(rho, v);
  std::vector<Vec> flat;
  for (const auto& p : m.basis) flat.push_back(flatten(p));
  m.span = Subspace::span(v.field(), v.dim() * rho.dim(), flat);
  m.module.dim = m.basis.size();
  for (const auto& x : xis) {
    std::vector<Vec> cols;
    for (const auto& p : m.basis) cols.push_back(m.span.coordinates(flatten(p * x)));
    m.module.action.push_back(Matrix::from_columns(v.field(), m.basis.size(), cols));
  }
  return m;
}

inline MSigma m_sigma(const FiniteHeckeAlgebra& alg, const Rep& v) { return m_sigma(alg, xi_basis(alg), v); }

/// The subquotient z2 / z1 of v (z1 inside z2).
inline Rep subquotient(const Rep& v, const Subspace& z2, const Subspace& z1) {
  const Rep top = v.sub(z2);
  std::vector<Vec> c;
  for (const auto& b : z1.vectors()) c.push_back(z2.coordinates(b));
  return top.quotient(Subspace::span(v.field(), z2.dim(), c));
}

/// Every subrepresentation of v. Over F_ell by enumerating cyclic
/// subrepresentations and closing under sums; over Q when v is a sum of
/// pairwise non-isomorphic absolutely irreducible pieces, found as joint
/// eigenspaces of class sums.
inline std::vector<Subspace> subrepresentations(const Rep& v, std::size_t max_vectors = 200000,
                                                std::size_t max_lattice = 4096) {
  const Field f = v.field();
  const std::size_t d = v.dim();
  std::vector<Subspace> out;
  auto add = [&](const Subspace& s) {
    for (const auto& t : out)
      if (t == s) return false;
    if (out.size() >= max_lattice) throw LatticeTooLarge("more than " + std::to_string(max_lattice) + " subrepresentations");
    out.push_back(s);
    return true;
  };
  add(Subspace(f, d));
  if (d == 0) return out;

  if (!f.is_rational()) {
    const std::size_t ell = f.characteristic();
    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i) {
      total *= ell;
      if (total > max_vectors) throw LatticeTooLarge("F_" + std::to_string(ell) + "^" + std::to_string(d) + " is too large to enumerate");
    }
    // one vector per line suffices: leading nonzero coordinate equal to 1
    for (std::size_t code = 1; code < total; ++code) {
      Vec x = zero_vec(f, d);
      std::size_t c = code, lead = d;
      for (std::size_t i = 0; i < d; ++i) {
        const std::size_t digit = c % ell;
        c /= ell;
        x[i] = Coefficient::residue(f, digit);
        if (digit != 0 && lead == d) lead = i;
      }
      if (!x[lead].is_one()) continue;
      add(generated(v, Subspace::span(f, d, {x})));
    }
  } else {
    const FiniteGroup& g = v.group();
    std::vector<Subspace> pieces{Subspace::full(f, d)};
    for (const auto& cls : g.conjugacy_classes()) {
      Matrix s(f, d, d);
      for (int x : cls) s = s + v(x);
      std::vector<Subspace> next;
      for (const auto& w : pieces) {
        std::size_t found = 0;
        const auto n = static_cast<long>(cls.size());
        for (long lam = -n; lam <= n; ++lam) {
          const Matrix shifted = s - Coefficient::from_int(f, lam) * Matrix::identity(f, d);
          const Subspace e = w.intersect(Subspace::span(f, d, kernel(shifted)));
          if (e.dim() == 0) continue;
          found += e.dim();
          next.push_back(e);
        }
        if (found != w.dim()) throw LatticeTooLarge("class sums have non-integral eigenvalues over Q");
      }
      pieces = std::move(next);
    }
    for (const auto& p : pieces) {
      const Rep r = v.sub(p);
      if (hom_space(r, r).size() != 1)
        throw LatticeTooLarge("an isotypic component over Q is not absolutely irreducible of multiplicity one");
    }
    if (pieces.size() > 12) throw LatticeTooLarge("too many isotypic components");
    for (std::size_t mask = 1; mask < (std::size_t{1} << pieces.size()); ++mask) {
      Subspace s(f, d);
      for (std::size_t i = 0; i < pieces.size(); ++i)
        if (mask >> i & 1) s = s + pieces[i];
      add(s);
    }
    return out;
  }
  // close under sums
  for (bool grew = true; grew;) {
    grew = false;
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (add(out[i] + out[j])) grew = true;
  }
  return out;
}

/// Pairs (z1, z2) of subrepresentations with z1 inside z2; `covering` keeps
/// only those with nothing strictly in between (irreducible quotients).
inline std::vector<std::pair<std::size_t, std::size_t>> lattice_pairs(const std::vector<Subspace>& lat, bool covering) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < lat.size(); ++a)
    for (std::size_t b = 0; b < lat.size(); ++b) {
      if (!lat[b].contains(lat[a])) continue;
      if (covering) {
        if (lat[a].dim() == lat[b].dim()) continue;
        bool between = false;
        for (std::size_t c = 0; c < lat.size() && !between; ++c)
          between = lat[c].dim() > lat[a].dim() && lat[c].dim() < lat[b].dim() && lat[b].contains(lat[c]) &&
                    lat[c].contains(lat[a]);
        if (between) continue;
      }
      out.emplace_back(a, b);
    }
  return out;
}

struct TfaeResult {
  bool irreducible_seen = false;   // (i)
  bool nonzero_seen = false;       // (ii)
  bool subquotients_generated = false;  // (iii)
  bool subreps_generated = false;  // (iv)
  std::size_t lattice_size = 0;
  bool agree() const {
    return irreducible_seen == nonzero_seen && nonzero_seen == subquotients_generated &&
           subquotients_generated == subreps_generated;
  }
};

inline TfaeResult check_tfae(const FiniteHeckeAlgebra& alg, const Rep& v) {
  require_good_characteristic(alg.sigma());
  const Rep& rho = alg.induced().rep();
  const Rep& sigma = alg.sigma();
  const auto lat = subrepresentations(v);
  TfaeResult r;
  r.lattice_size = lat.size();
  auto seen = [&](const Rep& u) { return !hom_space(rho, u).empty(); };
  auto generated_by_sigma = [&](const Rep& z) { return v_sigma_generated(z, sigma).dim() == z.dim(); };
  r.irreducible_seen = true;
  for (auto [a, b] : lattice_pairs(lat, true))
    if (!seen(subquotient(v, lat[b], lat[a]))) r.irreducible_seen = false;
  r.nonzero_seen = true;
  r.subquotients_generated = true;
  for (auto [a, b] : lattice_pairs(lat, false)) {
    const Rep z = subquotient(v, lat[b], lat[a]);
    if (z.dim() > 0 && !seen(z)) r.nonzero_seen = false;
    if (!generated_by_sigma(z)) r.subquotients_generated = false;
  }
  r.subreps_generated = true;
  for (const auto& z : lat)
    if (!generated_by_sigma(v.sub(z))) r.subreps_generated = false;
  return r;
}

/// M_sigma(W) for W a subrepresentation of v, as a subspace of Hom(rho, V).
inline Subspace m_sigma_of_subspace(const Rep& rho, const Rep& v, const Subspace& w) {
  const auto basis = w.vectors();
  std::vector<Vec> flat;
  for (const auto& p : hom_space(rho, v.sub(w))) {
    // embed: column j of the map is sum_i p(i, j) basis[i]
    Matrix full(v.field(), v.dim(), rho.dim());
    for (std::size_t j = 0; j < rho.dim(); ++j)
      for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t k = 0; k < v.dim(); ++k) full(k, j) += p(i, j) * basis[i][k];
    flat.push_back(flatten(full));
  }
  return Subspace::span(v.field(), v.dim() * rho.dim(), flat);
}

/// The image in V of a subspace given in the coordinates of w.
inline Subspace embed(const Subspace& w, const Subspace& inner) {
  const auto basis = w.vectors();
  std::vector<Vec> out;
  for (const auto& c : inner.vectors()) {
    Vec x = zero_vec(w.field(), w.ambient_dim());
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t k = 0; k < x.size(); ++k) x[k] += c[i] * basis[i][k];
    out.push_back(std::move(x));
  }
  return Subspace::span(w.field(), w.ambient_dim(), out);
}

/// V[sigma] = sum of psi(rho); M(V) = M(V[sigma]); and for every
/// subrepresentation W, M(W) = M(V) iff W[sigma] = V[sigma].
inline Report check_functor_m(const FiniteHeckeAlgebra& alg, const Rep& v, const std::vector<Subspace>& lattice) {
  require_good_characteristic(alg.sigma());
  Report rep;
  const Rep& rho = alg.induced().rep();
  const Subspace vs = v_sigma_generated(v, alg.sigma());
  const MSigma m = m_sigma(alg, v);
  std::vector<Vec> imgs;
  for (const auto& p : m.basis)
    for (std::size_t j = 0; j < p.cols(); ++j) imgs.push_back(p.col(j));
  const Subspace images = Subspace::span(v.field(), v.dim(), imgs);
  rep.add("V[sigma] equals the sum of psi(rho)", images == vs,
          "dim V[sigma] = " + std::to_string(vs.dim()) + ", dim sum = " + std::to_string(images.dim()));
  const Subspace mv = m_sigma_of_subspace(rho, v, Subspace::full(v.field(), v.dim()));
  rep.add("M(V) = M(V[sigma])", mv == m_sigma_of_subspace(rho, v, vs), "dim M(V) = " + std::to_string(mv.dim()));
  std::size_t agree = 0;
  for (const auto& w : lattice) {
    const bool same_m = m_sigma_of_subspace(rho, v, w) == mv;
    const bool same_gen = embed(w, v_sigma_generated(v.sub(w), alg.sigma())) == vs;
    if (same_m == same_gen) ++agree;
  }
  rep.add("M(W) = M(V) iff W[sigma] = V[sigma] over the lattice", agree == lattice.size(),
          std::to_string(agree) + "/" + std::to_string(lattice.size()) + " subrepresentations");
  return rep;
}

/// W tensor_H rho as a representation of G: (W x rho) modulo
/// (w . b) x f - w x xi(b) f.
struct TensorProduct {
  Rep big;
  Subspace relations;
  Rep quotient;
};

inline TensorProduct tensor_with_rho(const FiniteHeckeAlgebra& alg, const std::vector<Matrix>& xis, const RightModule& w) {
  const Rep& rho = alg.induced().rep();
  const Field f = alg.field();
  const std::size_t dr = rho.dim(), n = w.dim * dr;
  TensorProduct t;
  t.big = Rep::make(rho.group(), rho.domain(), f, n, [&](int x) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < w.dim; ++i)
      for (std::size_t a = 0; a < dr; ++a)
        for (std::size_t b = 0; b < dr; ++b) m(i * dr + a, i * dr + b) = rho(x)(a, b);
    return m;
  });
  std::vector<Vec> rel;
  for (std::size_t b = 0; b < xis.size(); ++b)
    for (std::size_t i = 0; i < w.dim; ++i)
      for (std::size_t j = 0; j < dr; ++j) {
        Vec v = zero_vec(f, n);
        for (std::size_t k = 0; k < w.dim; ++k) v[k * dr + j] += w.action[b](k, i);
        for (std::size_t k = 0; k < dr; ++k) v[i * dr + k] -= xis[b](k, j);
        rel.push_back(std::move(v));
      }
  t.relations = Subspace::span(f, n, rel);
  if (!(generated(t.big, t.relations) == t.relations)) throw InvalidArgument("tensor relations are not G-stable");
  t.quotient = t.big.quotient(t.relations);
  return t;
}

/// The module axioms: action of b * c is action(c) action(b).
inline bool is_right_module(const FiniteHeckeAlgebra& alg, const RightModule& w) {
  const Field f = alg.field();
  for (std::size_t b = 0; b < alg.dim(); ++b)
    for (std::size_t c = 0; c < alg.dim(); ++c) {
      const Vec s = alg.coordinates(alg.convolve(alg.basis()[b], alg.basis()[c]));
      Matrix lhs(f, w.dim, w.dim);
      for (std::size_t e = 0; e < s.size(); ++e)
        if (!s[e].is_zero()) lhs = lhs + s[e] * w.action[e];
      if (!(lhs == w.action[c] * w.action[b])) return false;
    }
  return true;
}

/// The regular right module and some of its cyclic quotients.
inline std::vector<std::pair<std::string, RightModule>> test_modules(const FiniteHeckeAlgebra& alg) {
  const Field f = alg.field();
  const std::size_t n = alg.dim();
  std::vector<std::vector<Vec>> prod(n, std::vector<Vec>(n));
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t c = 0; c < n; ++c) prod[b][c] = alg.coordinates(alg.convolve(alg.basis()[b], alg.basis()[c]));
  RightModule reg{n, {}};
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<Vec> cols;
    for (std::size_t b = 0; b < n; ++b) cols.push_back(prod[b][c]);
    reg.action.push_back(Matrix::from_columns(f, n, cols));
  }
  std::vector<std::pair<std::string, RightModule>> out{{"regular", reg}};
  // quotients by the right ideals generated by b + c.1
  const Vec one = alg.coordinates(alg.identity());
  std::vector<Subspace> seen;
  for (std::size_t b = 0; b < n; ++b)
    for (long c = -3; c <= 3; ++c) {
      Vec gen = zero_vec(f, n);
      gen[b] = Coefficient::one(f);
      for (std::size_t k = 0; k < n; ++k) gen[k] += Coefficient::from_int(f, c) * one[k];
      std::vector<Vec> span;
      for (std::size_t e = 0; e < n; ++e) span.push_back(reg.action[e].apply(gen));
      const Subspace ideal = Subspace::span(f, n, span);
      if (ideal.dim() == n || ideal.dim() == 0) continue;
      if (std::any_of(seen.begin(), seen.end(), [&](const Subspace& s) { return s == ideal; })) continue;
      seen.push_back(ideal);
      const auto comp = Rep::complement_indices(ideal);
      RightModule q{comp.size(), {}};
      for (std::size_t e = 0; e < n; ++e) {
        Matrix m(f, comp.size(), comp.size());
        for (std::size_t j = 0; j < comp.size(); ++j) {
          const Vec r = ideal.reduce(reg.action[e].col(comp[j]));
          for (std::size_t i = 0; i < comp.size(); ++i) m(i, j) = r[comp[i]];
        }
        q.action.push_back(std::move(m));
      }
      out.emplace_back("H/(b" + std::to_string(b) + (c < 0 ? "" : "+") + std::to_string(c) + ")H", std::move(q));
    }
  return out;
}

/// The counit M_sigma(V) tensor_H rho -> V is an isomorphism.
inline Report check_counit(const FiniteHeckeAlgebra& alg, const std::vector<Matrix>& xis, const Rep& v) {
  Report rep;
  const MSigma m = m_sigma(alg, xis, v);
  const TensorProduct t = tensor_with_rho(alg, xis, m.module);
  const std::size_t dr = alg.induced().dim();
  Matrix eps(alg.field(), v.dim(), m.basis.size() * dr);
  for (std::size_t i = 0; i < m.basis.size(); ++i)
    for (std::size_t j = 0; j < dr; ++j)
      for (std::size_t k = 0; k < v.dim(); ++k) eps(k, i * dr + j) = m.basis[i](k, j);
  bool kills = true;
  for (const auto& r : t.relations.vectors()) kills = kills && is_zero_vec(eps.apply(r));
  rep.add("counit is well defined", kills);
  rep.add("counit is bijective", rank(eps) == v.dim() && t.quotient.dim() == v.dim(),
          "dim V = " + std::to_string(v.dim()) + ", dim M(V) x rho = " + std::to_string(t.quotient.dim()));
  return rep;
}

/// The unit W -> M_sigma(W tensor_H rho) is an H-linear isomorphism.
inline Report check_unit(const FiniteHeckeAlgebra& alg, const std::vector<Matrix>& xis, const RightModule& w) {
  Report rep;
  const Rep& rho = alg.induced().rep();
  const TensorProduct t = tensor_with_rho(alg, xis, w);
  const std::size_t dr = rho.dim();
  const Field f = alg.field();
  std::vector<Matrix> eta;
  for (std::size_t i = 0; i < w.dim; ++i) {
    std::vector<Vec> cols;
    for (std::size_t j = 0; j < dr; ++j) {
      Vec e = zero_vec(f, w.dim * dr);
      e[i * dr + j] = Coefficient::one(f);
      cols.push_back(Rep::quotient_coordinates(t.relations, e));
    }
    eta.push_back(Matrix::from_columns(f, t.quotient.dim(), cols));
  }
  bool equivariant = true;
  for (const auto& e : eta)
    for (int x : rho.domain()) equivariant = equivariant && (e * rho(x) == t.quotient(x) * e);
  rep.add("unit lands in Hom_G(rho, W x rho)", equivariant);
  std::vector<Vec> flat;
  for (const auto& e : eta) flat.push_back(flatten(e));
  const std::size_t r = Subspace::span(f, t.quotient.dim() * dr, flat).dim();
  const std::size_t target = hom_space(rho, t.quotient).size();
  rep.add("unit is bijective", r == w.dim && target == w.dim,
          "dim W = " + std::to_string(w.dim) + ", rank = " + std::to_string(r) + ", dim M(W x rho) = " +
              std::to_string(target));
  bool linear = true;
  for (std::size_t b = 0; b < xis.size(); ++b)
    for (std::size_t i = 0; i < w.dim; ++i) {
      Matrix lhs(f, t.quotient.dim(), dr);
      for (std::size_t k = 0; k < w.dim; ++k)
        if (!w.action[b](k, i).is_zero()) lhs = lhs + w.action[b](k, i) * eta[k];
      linear = linear && lhs == eta[i] * xis[b];
    }
  rep.add("unit is H-linear", linear);
  return rep;
}

/// A named (G, H, sigma) instance with crafted test representations of G.
struct Instance {
  std::string name;
  std::shared_ptr<FiniteGroup> group;
  Rep sigma;
  std::vector<std::pair<std::string, Rep>> tests;
};

inline const std::vector<std::string>& instance_names() {
  static const std::vector<std::string> names{"s3-s2-trivial", "s3-s2-sign", "gl2f2-borel-trivial"};
  return names;
}

inline Instance make_instance(const std::string& name, Field f) {
  Instance in;
  in.name = name;
  std::vector<int> h;
  if (name == "s3-s2-trivial" || name == "s3-s2-sign") {
    in.group = std::make_shared<FiniteGroup>(FiniteGroup::symmetric(3));
    h = in.group->subgroup({in.group->index_of(FiniteGroup::transposition(3, 0, 1))});
  } else if (name == "gl2f2-borel-trivial") {
    in.group = std::make_shared<FiniteGroup>(FiniteGroup::gl2(2));
    h = in.group->subgroup({in.group->index_of(FiniteGroup::gl2_perm(2, 1, 1, 0, 1))});
  } else {
    throw ConfigError("unknown finite Hecke instance '" + name + "'");
  }
  const FiniteGroup& g = *in.group;
  in.sigma = name == "s3-s2-sign" ? Rep::sign(g, h, f) : Rep::trivial(g, h, f);
  std::vector<int> all(static_cast<std::size_t>(g.order()));
  std::iota(all.begin(), all.end(), 0);
  const Rep rho = InducedRep(in.sigma).rep();
  const Rep triv = Rep::trivial(g, all, f), sgn = Rep::sign(g, all, f);
  in.tests = {{"ind sigma", rho},
              {"trivial", triv},
              {"sign", sgn},
              {"permutation", Rep::permutation(g, all, f)},
              {"ind sigma + other character", direct_sum(rho, name == "s3-s2-sign" ? triv : sgn)},
              {"trivial + sign", direct_sum(triv, sgn)}};
  return in;
}

inline int element_order(const FiniteGroup& g, int x) {
  int k = 1;
  for (int y = x; y != 0; y = g.mul(y, x)) ++k;
  return k;
}

/// All checks on one instance.
inline Report run_instance(const Instance& in) {
  require_good_characteristic(in.sigma);
  Report rep;
  const FiniteHeckeAlgebra alg(in.sigma);
  const FiniteGroup& g = *in.group;
  const Field f = in.sigma.field();
  const auto xis = xi_basis(alg);

  std::size_t sum_i = 0;
  for (int r : alg.double_coset_reps()) sum_i += intertwining_space(r, in.sigma).size();
  const auto ends = alg.endomorphisms();
  rep.add("dim H = sum dim I_g = dim End_G(ind sigma)", alg.dim() == sum_i && sum_i == ends.size(),
          std::to_string(alg.dim()) + " = " + std::to_string(sum_i) + " = " + std::to_string(ends.size()));

  bool elements = true;
  for (const auto& b : alg.basis()) elements = elements && alg.is_element(b);
  rep.add("basis functions are bi-equivariant", elements);

  bool identity = alg.convolve(alg.identity(), alg.identity()) == alg.identity();
  for (const auto& b : alg.basis())
    identity = identity && alg.convolve(alg.identity(), b) == b && alg.convolve(b, alg.identity()) == b;
  rep.add("identity element", identity);

  bool assoc = true, mult = true;
  for (std::size_t a = 0; a < alg.dim(); ++a)
    for (std::size_t b = 0; b < alg.dim(); ++b) {
      const auto ab = alg.convolve(alg.basis()[a], alg.basis()[b]);
      mult = mult && alg.xi(ab) == xis[a] * xis[b];
      for (std::size_t c = 0; c < alg.dim(); ++c)
        assoc = assoc && alg.convolve(ab, alg.basis()[c]) ==
                             alg.convolve(alg.basis()[a], alg.convolve(alg.basis()[b], alg.basis()[c]));
    }
  rep.add("convolution is associative", assoc);
  rep.add("xi is multiplicative", mult);
  rep.add("xi(1) = 1", alg.xi(alg.identity()) == Matrix::identity(f, alg.induced().dim()));

  bool left_inv = true, right_inv = true, commute = true;
  for (std::size_t a = 0; a < alg.dim(); ++a) left_inv = left_inv && alg.xi_inverse(xis[a]) == alg.basis()[a];
  for (const auto& th : ends) right_inv = right_inv && alg.xi(alg.xi_inverse(th)) == th;
  for (const auto& x : xis)
    for (int e = 0; e < g.order(); ++e) commute = commute && x * alg.induced().rep()(e) == alg.induced().rep()(e) * x;
  rep.add("xi lands in End_G(ind sigma)", commute);
  rep.add("xi^-1 o xi = id on the basis", left_inv);
  rep.add("xi o xi^-1 = id on End_G(ind sigma)", right_inv);

  const bool semisimple = f.is_rational() || static_cast<std::size_t>(g.order()) % f.characteristic() != 0;

  const MSigma reg = m_sigma(alg, xis, alg.induced().rep());
  rep.add("M(ind sigma) is the regular module", reg.module.dim == alg.dim() && is_right_module(alg, reg.module));

  std::vector<Rep> irreducibles;
  for (const auto& [label, v] : in.tests) {
    const MSigma m = m_sigma(alg, xis, v);
    const std::size_t frob = hom_space(in.sigma, v, in.sigma.domain()).size();
    rep.add(label + ": dim M(V) = dim Hom_K(sigma, V)", m.basis.size() == frob,
            std::to_string(m.basis.size()) + " vs " + std::to_string(frob));
    rep.add(label + ": M(V) is a right module", is_right_module(alg, m.module));
    const auto lat = subrepresentations(v);
    rep.append(check_functor_m(alg, v, lat), label + ": ");
    const TfaeResult t = check_tfae(alg, v);
    rep.add(label + ": conditions (i)-(iv) agree", t.agree(),
            std::string("(i)=") + (t.irreducible_seen ? "T" : "F") + " (ii)=" + (t.nonzero_seen ? "T" : "F") +
                " (iii)=" + (t.subquotients_generated ? "T" : "F") + " (iv)=" + (t.subreps_generated ? "T" : "F") +
                ", " + std::to_string(t.lattice_size) + " subrepresentations");
    for (auto [a, b] : lattice_pairs(lat, true)) {
      Rep u = subquotient(v, lat[b], lat[a]);
      bool known = false;
      for (const auto& w : irreducibles) known = known || (w.dim() == u.dim() && !hom_space(w, u).empty());
      if (!known) irreducibles.push_back(std::move(u));
    }
    if (semisimple && v_sigma_generated(v, in.sigma).dim() == v.dim()) rep.append(check_counit(alg, xis, v), label + ": ");
  }

  std::size_t regular_classes = 0;
  for (const auto& c : g.conjugacy_classes())
    if (f.is_rational() || element_order(g, c.front()) % static_cast<int>(f.characteristic()) != 0) ++regular_classes;
  rep.add("test representations exhaust the irreducibles", irreducibles.size() == regular_classes,
          std::to_string(irreducibles.size()) + " irreducibles, " + std::to_string(regular_classes) + " regular classes");
  for (std::size_t k = 0; k < irreducibles.size(); ++k) {
    const Rep& u = irreducibles[k];
    const std::size_t a = m_sigma(alg, xis, u).basis.size(), b = hom_space(in.sigma, u, in.sigma.domain()).size();
    rep.add("irreducible " + std::to_string(k) + " (dim " + std::to_string(u.dim()) + "): Frobenius reciprocity", a == b,
            std::to_string(a) + " vs " + std::to_string(b));
  }

  if (semisimple) {
    for (const auto& [label, w] : test_modules(alg)) {
      rep.add(label + ": module axioms", is_right_module(alg, w));
      rep.append(check_unit(alg, xis, w), label + ": ");
    }
  } else {
    rep.add("equivalence checks need char R prime to |G|", true,
            "skipped in characteristic " + std::to_string(f.characteristic()));
  }
  return rep;
}

}  // namespace hecke::finite
