#pragma once

// K1-cosets and K1-double cosets of GL_n(F_q((t))), K1 = 1 + t M_n(O).
//
// A double coset K1 g K1 is named by (a, L, R) where g = k1 diag(t^a) k2,
// a is nondecreasing and L, R are the residues of k1, k2. The pair is
// defined up to (L, R) ~ (L x, y R) with x block-upper, y block-lower for
// the blocks of equal exponents in a, and Levi(x) Levi(y) = 1; the
// canonical pair puts L in flag normal form and R in normal form for the
// remaining block-lower unipotent freedom.
//
// A left coset g K1 is named by the column Hermite form h of g (lower
// triangular, h_ii = t^{b_i}, h_ij reduced mod t^{b_i}) and the residue of
// h^{-1} g.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hecke/affine.hpp"
#include "hecke/errors.hpp"
#include "hecke/gf.hpp"
#include "hecke/laurent.hpp"
#include "hecke/local_group.hpp"
#include "hecke/report.hpp"
#include "hecke/weyl.hpp"

namespace hecke {

// ---------------------------------------------------------------------------
// Linear algebra over F_q on residue matrices.

namespace resalg {

using Elt = GaloisField::Elt;
using RVec = std::vector<Elt>;

/// A list of vectors in echelon position: each has a 1 at its pivot and the
/// later vectors vanish at the earlier pivots.
struct Echelon {
  const GaloisField* f;
  std::vector<RVec> vecs;
  std::vector<int> pivots;

  /// v minus the combination of basis vectors that clears every pivot.
  RVec reduce(RVec v) const {
    for (std::size_t k = 0; k < vecs.size(); ++k) {
      const Elt c = v[static_cast<std::size_t>(pivots[k])];
      if (!c) continue;
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = f->sub(v[i], f->mul(c, vecs[k][i]));
    }
    return v;
  }

  /// Adds v (after reduction); returns false if v was already in the span.
  bool insert(const RVec& v) {
    RVec r = reduce(v);
    int p = -1;
    for (std::size_t i = 0; i < r.size(); ++i)
      if (r[i]) {
        p = static_cast<int>(i);
        break;
      }
    if (p < 0) return false;
    const Elt s = f->inv(r[static_cast<std::size_t>(p)]);
    for (auto& x : r) x = f->mul(x, s);
    vecs.push_back(std::move(r));
    pivots.push_back(p);
    return true;
  }
};

inline RVec column(const ResMatrix& m, int j) {
  RVec v(static_cast<std::size_t>(m.n()));
  for (int i = 0; i < m.n(); ++i) v[static_cast<std::size_t>(i)] = m(i, j);
  return v;
}

inline RVec row(const ResMatrix& m, int i) {
  RVec v(static_cast<std::size_t>(m.n()));
  for (int j = 0; j < m.n(); ++j) v[static_cast<std::size_t>(j)] = m(i, j);
  return v;
}

/// Reduced echelon basis of span(vs), sorted by pivot.
inline std::vector<RVec> rref(const GaloisField& f, const std::vector<RVec>& vs) {
  Echelon e{&f, {}, {}};
  for (const auto& v : vs) e.insert(v);
  // back-substitute so every vector vanishes at every other pivot
  for (std::size_t k = 0; k < e.vecs.size(); ++k)
    for (std::size_t l = 0; l < e.vecs.size(); ++l) {
      if (k == l) continue;
      const Elt c = e.vecs[l][static_cast<std::size_t>(e.pivots[k])];
      if (!c) continue;
      for (std::size_t i = 0; i < e.vecs[l].size(); ++i)
        e.vecs[l][i] = f.sub(e.vecs[l][i], f.mul(c, e.vecs[k][i]));
    }
  std::vector<std::size_t> order(e.vecs.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return e.pivots[a] < e.pivots[b]; });
  std::vector<RVec> out;
  for (auto k : order) out.push_back(e.vecs[k]);
  return out;
}

/// Canonical representative of L * P where P is the block-upper parabolic
/// for the given blocks (block[i] = block index of position i, 0-based).
inline ResMatrix flag_normal_form(const ResMatrix& l, const std::vector<int>& block) {
  const GaloisField& f = l.field();
  const int n = l.n();
  ResMatrix out(f, n);
  Echelon prev{&f, {}, {}};
  int col = 0;
  for (int b = 0; col < n; ++b) {
    std::vector<RVec> reduced;
    for (int j = 0; j < n; ++j)
      if (block[static_cast<std::size_t>(j)] == b) reduced.push_back(prev.reduce(column(l, j)));
    const auto basis = rref(f, reduced);
    if (basis.size() != reduced.size()) throw NotInvertible("singular residue matrix " + l.to_string());
    for (const auto& v : basis) {
      for (int i = 0; i < n; ++i) out(i, col) = v[static_cast<std::size_t>(i)];
      prev.insert(v);
      ++col;
    }
  }
  return out;
}

/// Canonical representative of U^-_P * R: each row of a block is reduced
/// modulo the span of the rows of the earlier blocks.
inline ResMatrix lower_unipotent_normal_form(const ResMatrix& r, const std::vector<int>& block) {
  const GaloisField& f = r.field();
  const int n = r.n();
  ResMatrix out = r;
  Echelon prev{&f, {}, {}};
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && block[static_cast<std::size_t>(j)] == block[static_cast<std::size_t>(i)]) ++j;
    std::vector<RVec> rows;
    for (int k = i; k < j; ++k) {
      const RVec v = prev.reduce(row(r, k));
      for (int c = 0; c < n; ++c) out(k, c) = v[static_cast<std::size_t>(c)];
      rows.push_back(v);
    }
    for (const auto& v : rows) prev.insert(v);
    i = j;
  }
  return out;
}

/// Canonical representative of C * U (U upper unitriangular): each column
/// is reduced modulo the span of the earlier columns.
inline ResMatrix upper_unipotent_normal_form(const ResMatrix& c) {
  const GaloisField& f = c.field();
  const int n = c.n();
  ResMatrix out = c;
  Echelon prev{&f, {}, {}};
  for (int j = 0; j < n; ++j) {
    const RVec v = prev.reduce(column(c, j));
    for (int i = 0; i < n; ++i) out(i, j) = v[static_cast<std::size_t>(i)];
    prev.insert(v);
  }
  return out;
}

/// Block-diagonal part of m.
inline ResMatrix levi(const ResMatrix& m, const std::vector<int>& block) {
  ResMatrix out(m.field(), m.n());
  for (int i = 0; i < m.n(); ++i)
    for (int j = 0; j < m.n(); ++j)
      if (block[static_cast<std::size_t>(i)] == block[static_cast<std::size_t>(j)]) out(i, j) = m(i, j);
  return out;
}

inline std::vector<int> blocks_of(const std::vector<int>& a) {
  std::vector<int> b(a.size(), 0);
  for (std::size_t i = 1; i < a.size(); ++i) b[i] = a[i] == a[i - 1] ? b[i - 1] : b[i - 1] + 1;
  return b;
}

}  // namespace resalg

// ---------------------------------------------------------------------------
// Identifiers.

struct DoubleCosetId {
  std::vector<int> cartan;
  ResMatrix left;
  ResMatrix right;

  int n() const { return static_cast<int>(cartan.size()); }

  static DoubleCosetId identity(const GaloisField& f, int n) {
    return {std::vector<int>(static_cast<std::size_t>(n), 0), ResMatrix::identity(f, n), ResMatrix::identity(f, n)};
  }

  bool is_identity() const {
    return std::all_of(cartan.begin(), cartan.end(), [](int a) { return a == 0; }) && left.is_identity() &&
           right.is_identity();
  }

  /// L~ diag(t^a) R~ with constant lifts.
  GroupElement representative() const {
    const GaloisField& f = left.field();
    return GroupElement::lift(left) * GroupElement::diagonal_powers(f, cartan) * GroupElement::lift(right);
  }

  /// Number of left K1-cosets in the double coset, q^{sum_{i>j} (a_i - a_j)}.
  std::uint64_t degree() const {
    int e = 0;
    for (std::size_t i = 0; i < cartan.size(); ++i)
      for (std::size_t j = 0; j < i; ++j) e += cartan[i] - cartan[j];
    std::uint64_t d = 1;
    for (int k = 0; k < e; ++k) d *= static_cast<std::uint64_t>(left.field().q());
    return d;
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < cartan.size(); ++i) s += (i ? "," : "") + std::to_string(cartan[i]);
    return s + ") L=" + left.to_string() + " R=" + right.to_string();
  }

  friend bool operator==(const DoubleCosetId&, const DoubleCosetId&) = default;
  friend std::strong_ordering operator<=>(const DoubleCosetId& x, const DoubleCosetId& y) {
    if (x.cartan != y.cartan) return x.cartan < y.cartan ? std::strong_ordering::less : std::strong_ordering::greater;
    if (auto c = x.left <=> y.left; c != 0) return c;
    return x.right <=> y.right;
  }

  std::size_t hash() const {
    std::size_t h = 0;
    for (int a : cartan) h = h * 31 + static_cast<std::size_t>(a + 1000);
    return (h * 1000003u) ^ (left.hash() * 131) ^ right.hash();
  }
};

/// Name of a left coset g K1 (or g I(1) when the residue is further reduced
/// modulo upper unitriangular matrices).
struct LeftCosetKey {
  std::vector<int> diag;       // b_i
  std::vector<Laurent> lower;  // h_ij for i > j, row-major, each reduced mod t^{b_i}
  ResMatrix residue;

  friend bool operator==(const LeftCosetKey& x, const LeftCosetKey& y) {
    return x.diag == y.diag && x.residue == y.residue && x.lower == y.lower;
  }

  bool hermite_is_diagonal() const {
    return std::all_of(lower.begin(), lower.end(), [](const Laurent& x) { return x.is_exact_zero(); });
  }

  std::size_t hash() const {
    std::size_t h = residue.hash();
    for (int b : diag) h = h * 31 + static_cast<std::size_t>(b + 1000);
    for (const auto& x : lower) h = h * 1000003u + x.hash();
    return h;
  }
};

}  // namespace hecke

template <>
struct std::hash<hecke::DoubleCosetId> {
  std::size_t operator()(const hecke::DoubleCosetId& d) const noexcept { return d.hash(); }
};

template <>
struct std::hash<hecke::LeftCosetKey> {
  std::size_t operator()(const hecke::LeftCosetKey& k) const noexcept { return k.hash(); }
};

namespace hecke {

namespace detail {

/// Runs fn(prec), doubling prec while it reports PrecisionExhausted. The
/// results are certified, so the value does not depend on the final prec.
template <class Fn>
auto with_precision(int prec, Fn&& fn) -> decltype(fn(prec)) {
  constexpr int kMaxDoublings = 5;
  for (int k = 0;; ++k) {
    try {
      return fn(prec);
    } catch (const PrecisionExhausted&) {
      if (k == kMaxDoublings) throw;
      prec *= 2;
    }
  }
}

inline void check_window(const std::vector<int>& a, int window) {
  for (int x : a)
    if (x < -window || x > window) {
      std::string s;
      for (int y : a) s += (s.empty() ? "" : ",") + std::to_string(y);
      throw WindowExceeded("exponents (" + s + ") outside [-" + std::to_string(window) + ", " + std::to_string(window) + "]");
    }
}

/// The exact polynomial formed by the digits of x below t^k.
inline Laurent low_part(const Laurent& x, int k) {
  const GaloisField& f = *x.field();
  if (x.abs_prec() < k) throw PrecisionExhausted("digits below t^" + std::to_string(k) + " unknown");
  Laurent out(f);
  if (x.is_exact_zero() || x.is_unresolved()) return out;
  for (int d = x.valuation(); d < k; ++d)
    if (const auto c = x.coeff(d)) out = out + Laurent::monomial(f, c, d);
  return out;
}

inline LeftCosetKey hermite_key(const LocalMatrix& g, int prec) {
  const GaloisField& f = g.field();
  const int n = g.n();
  LocalMatrix a = g;
  if (g.is_exact()) {
    const int v = g.min_valuation();
    if (v == INT_MAX) throw NotInvertible("zero matrix");
    a = g.truncated(v + prec);
  }
  ResMatrix e = ResMatrix::identity(f, n);  // residue of E with g E = current a
  std::vector<int> b(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    int best = INT_MAX, bc = -1, floor = INT_MAX;
    for (int j = i; j < n; ++j) {
      const Laurent& x = a(i, j);
      if (x.is_exact_zero()) continue;
      if (x.is_unresolved()) {
        floor = std::min(floor, x.abs_prec());
        continue;
      }
      if (x.valuation() < best) {
        best = x.valuation();
        bc = j;
      }
    }
    if (bc < 0 && floor == INT_MAX) throw NotInvertible("singular matrix " + g.to_string());
    if (bc < 0 || floor <= best) throw PrecisionExhausted("Hermite pivot in row " + std::to_string(i));
    if (bc != i) {
      for (int k = 0; k < n; ++k) std::swap(a(k, bc), a(k, i));
      e.swap_cols(bc, i);
    }
    const Laurent unit = a(i, i).shifted(-best);
    const Laurent uinv = unit.inverse(prec);
    const auto lead_inv = f.inv(unit.leading());
    for (int k = i + 1; k < n; ++k)
      if (!a(k, i).is_exact_zero()) a(k, i) = a(k, i) * uinv;
    a(i, i) = Laurent::monomial(f, 1, best);
    for (int k = 0; k < n; ++k) e(k, i) = f.mul(e(k, i), lead_inv);
    b[static_cast<std::size_t>(i)] = best;
    for (int j = i + 1; j < n; ++j) {
      if (a(i, j).is_exact_zero()) continue;
      const Laurent fac = a(i, j).shifted(-best);
      const auto fr = fac.coeff(0);
      for (int k = i + 1; k < n; ++k)
        if (!a(k, i).is_exact_zero()) a(k, j) = a(k, j) - fac * a(k, i);
      a(i, j) = Laurent(f);
      if (fr)
        for (int k = 0; k < n; ++k) e(k, j) = f.sub(e(k, j), f.mul(fr, e(k, i)));
    }
  }
  // reduce h_ij (i > j) modulo t^{b_i} using column i
  for (int i = 1; i < n; ++i) {
    const int bi = b[static_cast<std::size_t>(i)];
    for (int j = 0; j < i; ++j) {
      const Laurent& x = a(i, j);
      if (x.is_exact_zero()) continue;
      const Laurent low = low_part(x, bi);
      const Laurent high = (x - low).shifted(-bi);
      if (high.is_exact_zero()) {
        a(i, j) = low;
        continue;
      }
      const auto qr = high.coeff(0);
      for (int k = i + 1; k < n; ++k)
        if (!a(k, i).is_exact_zero()) a(k, j) = a(k, j) - high * a(k, i);
      a(i, j) = low;
      if (qr)
        for (int k = 0; k < n; ++k) e(k, j) = f.sub(e(k, j), f.mul(qr, e(k, i)));
    }
  }
  LeftCosetKey key;
  key.diag = std::move(b);
  for (int i = 1; i < n; ++i)
    for (int j = 0; j < i; ++j) key.lower.push_back(a(i, j));
  key.residue = e.inverse();
  return key;
}

}  // namespace detail

/// The double coset K1 g K1. Throws WindowExceeded if the elementary
/// divisors leave [-window, window].
inline DoubleCosetId canonical(const GroupElement& g, const LocalConfig& cfg) {
  const auto cd = detail::with_precision(cfg.prec, [&](int p) { return cartan_decomposition(g.matrix(), p); });
  detail::check_window(cd.cartan, cfg.window);
  const auto block = resalg::blocks_of(cd.cartan);
  const ResMatrix l0 = resalg::flag_normal_form(cd.left, block);
  const ResMatrix p0 = cd.left.inverse() * l0;
  const ResMatrix m0 = resalg::levi(p0, block);
  const ResMatrix r0 = resalg::lower_unipotent_normal_form(m0.inverse() * cd.right, block);
  return {cd.cartan, l0, r0};
}

/// The left coset g K1.
inline LeftCosetKey left_coset_key(const GroupElement& g, const LocalConfig& cfg) {
  return detail::with_precision(cfg.prec, [&](int p) { return detail::hermite_key(g.matrix(), p); });
}

/// The left coset g I(1), I(1) = K1 U.
inline LeftCosetKey iwahori_left_coset_key(const GroupElement& g, const LocalConfig& cfg) {
  LeftCosetKey k = left_coset_key(g, cfg);
  k.residue = resalg::upper_unipotent_normal_form(k.residue);
  return k;
}

/// Representatives of K1 x K1 / K1.
struct CosetList {
  DoubleCosetId base;
  std::vector<GroupElement> reps;
};

/// For x = L~ t^a R~ the left cosets are L~ u t^a R~ K1, where u runs over
/// lower unitriangular matrices with u_ij = sum_{k=1}^{a_i - a_j} c_k t^k.
inline CosetList left_coset_reps(const DoubleCosetId& id) {
  const GaloisField& f = id.left.field();
  const int n = id.n();
  struct Slot {
    int i, j, k;
  };
  std::vector<Slot> slots;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      for (int k = 1; k <= id.cartan[static_cast<std::size_t>(i)] - id.cartan[static_cast<std::size_t>(j)]; ++k)
        slots.push_back({i, j, k});
  const GroupElement left = GroupElement::lift(id.left);
  const GroupElement tail = GroupElement::diagonal_powers(f, id.cartan) * GroupElement::lift(id.right);
  CosetList out{id, {}};
  out.reps.reserve(static_cast<std::size_t>(id.degree()));
  std::vector<int> digit(slots.size(), 0);
  for (;;) {
    LocalMatrix u = LocalMatrix::identity(f, n);
    for (std::size_t s = 0; s < slots.size(); ++s)
      if (digit[s]) u(slots[s].i, slots[s].j) = u(slots[s].i, slots[s].j) + Laurent::monomial(f, static_cast<GaloisField::Elt>(digit[s]), slots[s].k);
    out.reps.push_back(left * GroupElement::from_matrix(u, 4) * tail);
    std::size_t s = 0;
    while (s < slots.size() && ++digit[s] == f.q()) digit[s++] = 0;
    if (s == slots.size()) break;
  }
  return out;
}

inline CosetList left_coset_reps(const GroupElement& x, const LocalConfig& cfg) {
  return left_coset_reps(canonical(x, cfg));
}

// ---------------------------------------------------------------------------
// Level-0 double coset lemmas.

/// K1 tau K1 tau' K1 = K1 tau tau' K1, checked on every product of left
/// coset representatives of the two double cosets.
inline bool verify_tau_products(const affine::DeltaElement& tau, const affine::DeltaElement& tau2, const LocalConfig& cfg,
                                std::string* detail = nullptr) {
  const GaloisField& f = cfg.field();
  const auto prod = tau * tau2;
  detail::check_window(tau.diagonal(), cfg.window);
  detail::check_window(tau2.diagonal(), cfg.window);
  detail::check_window(prod.diagonal(), cfg.window);
  const auto target = canonical(prod.to_group(f), cfg);
  const auto xs = left_coset_reps(canonical(tau.to_group(f), cfg));
  const auto ys = left_coset_reps(canonical(tau2.to_group(f), cfg));
  for (const auto& x : xs.reps)
    for (const auto& y : ys.reps) {
      const auto id = canonical(x * y, cfg);
      if (!(id == target)) {
        if (detail) *detail = "product lands in " + id.to_string() + " instead of " + target.to_string();
        return false;
      }
    }
  if (detail) *detail = std::to_string(xs.reps.size() * ys.reps.size()) + " products";
  return true;
}

/// Every element of Delta (a_1 = 0 <= a_2 <= ...) with largest exponent at
/// most max_exp.
inline std::vector<affine::DeltaElement> delta_elements(int n, int max_exp) {
  std::vector<affine::DeltaElement> out;
  std::vector<int> a(static_cast<std::size_t>(n - 1), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int lo) {
    if (pos == a.size()) {
      out.push_back(affine::DeltaElement::monoid(a));
      return;
    }
    for (int v = lo; v <= max_exp; ++v) {
      a[pos] = v;
      rec(pos + 1, v);
    }
  };
  rec(0, 0);
  return out;
}

struct AbsorptionResult {
  bool ok = true;
  std::size_t u_sampled = 0;
  std::size_t u_in_product = 0;
  std::size_t lower_double_cosets = 0;
  std::string counterexample;
};

namespace detail {

/// Unitriangular matrices (upper or lower) whose off-diagonal entries run
/// over all Laurent polynomials sum_{k=lo}^{hi-1} c_k t^k.
template <class Fn>
void for_each_unitriangular(const GaloisField& f, int n, bool upper, int lo, int hi, Fn&& fn) {
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (upper ? i < j : i > j) cells.emplace_back(i, j);
  const int digits = hi - lo;
  std::vector<int> d(cells.size() * static_cast<std::size_t>(digits), 0);
  for (;;) {
    LocalMatrix m = LocalMatrix::identity(f, n);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      std::vector<int> coeffs(d.begin() + static_cast<std::ptrdiff_t>(c * digits),
                              d.begin() + static_cast<std::ptrdiff_t>((c + 1) * digits));
      m(cells[c].first, cells[c].second) = Laurent::series(f, lo, coeffs);
    }
    fn(m);
    std::size_t s = 0;
    while (s < d.size() && ++d[s] == f.q()) d[s++] = 0;
    if (s == d.size()) break;
  }
}

}  // namespace detail

/// K1 U^- K1 ∩ U = K1 ∩ U, checked over the unitriangular matrices whose
/// entries lie in t^{-V} O, taken modulo t^M with M = 1 + (n-1) V (a change
/// of an entry by t^M O moves the matrix only inside its K1-coset).
inline AbsorptionResult verify_absorption(const LocalConfig& cfg) {
  const GaloisField& f = cfg.field();
  const int n = cfg.n, v = cfg.window;
  const int m = 1 + (n - 1) * v;
  LocalConfig wide = cfg;
  wide.window = (n - 1) * v;
  std::unordered_set<DoubleCosetId> lower_ids;
  detail::for_each_unitriangular(f, n, false, -v, m, [&](const LocalMatrix& x) {
    lower_ids.insert(canonical(GroupElement::from_matrix(x, cfg.prec), wide));
  });
  AbsorptionResult res;
  res.lower_double_cosets = lower_ids.size();
  detail::for_each_unitriangular(f, n, true, -v, m, [&](const LocalMatrix& x) {
    const auto u = GroupElement::from_matrix(x, cfg.prec);
    ++res.u_sampled;
    if (!lower_ids.count(canonical(u, wide))) return;
    ++res.u_in_product;
    if (!member(u, SubgroupKind::K1) && res.ok) {
      res.ok = false;
      res.counterexample = u.to_string();
    }
  });
  return res;
}

/// Whether u lies in K1 U^- K1 (within the same bounded lower window).
inline bool in_k1_lower_k1(const GroupElement& u, const LocalConfig& cfg) {
  const GaloisField& f = cfg.field();
  const int n = cfg.n, v = cfg.window;
  LocalConfig wide = cfg;
  wide.window = (n - 1) * v;
  const auto target = canonical(u, wide);
  bool found = false;
  detail::for_each_unitriangular(f, n, false, -v, 1 + (n - 1) * v, [&](const LocalMatrix& x) {
    if (!found && canonical(GroupElement::from_matrix(x, cfg.prec), wide) == target) found = true;
  });
  return found;
}

/// A monomial class m T(1) inside a double coset I(1) g I(1): m has entry
/// unit[j] t^{exps[j]} at (perm(j), j).
struct MonomialClass {
  weyl::Permutation perm;
  std::vector<int> exps;
  std::vector<GaloisField::Elt> units;

  friend bool operator==(const MonomialClass&, const MonomialClass&) = default;
  friend auto operator<=>(const MonomialClass&, const MonomialClass&) = default;

  std::string to_string() const {
    std::string s = perm.to_string() + "[";
    for (std::size_t i = 0; i < exps.size(); ++i)
      s += (i ? "," : "") + std::to_string(units[i]) + "t^" + std::to_string(exps[i]);
    return s + "]";
  }
};

struct MonomialIntersection {
  /// I~1 tau z I~1 ∩ W~: monomial matrices whose entries are powers of t.
  std::set<affine::ExtAffineElement> points;
  /// Monomial classes m T(1) with unit residues met by the double coset.
  std::set<MonomialClass> classes;
  std::size_t left_cosets = 0;
  bool ok = true;
};

namespace detail {

/// The monomial class inside the left coset named by key, if any.
inline std::optional<MonomialClass> monomial_in_coset(const LeftCosetKey& key) {
  if (!key.hermite_is_diagonal()) return std::nullopt;
  const ResMatrix& c = key.residue;
  const GaloisField& f = c.field();
  const int n = c.n();
  for (const auto& w : weyl::all_permutations(n)) {
    // c in P_w B  <=>  P_w^{-1} c upper triangular
    const ResMatrix b = ResMatrix::permutation(f, w).inverse() * c;
    bool upper = true;
    for (int i = 0; i < n && upper; ++i)
      for (int j = 0; j < i && upper; ++j)
        if (b(i, j)) upper = false;
    if (!upper) continue;
    // h P_w diag(d): entry at (w(j), j) is d_j t^{b_{w(j)}}
    MonomialClass mc{w, {}, {}};
    for (int j = 1; j <= n; ++j) {
      mc.exps.push_back(key.diag[static_cast<std::size_t>(w(j) - 1)]);
      mc.units.push_back(b(j - 1, j - 1));
    }
    return mc;
  }
  return std::nullopt;
}

}  // namespace detail

/// Enumerates the left I(1)-cosets of I~1 tau z I~1 (I~1 = I(1) in the split
/// case) by closing tau z I(1) under left multiplication by generators of
/// I(1), and collects the monomial matrices met. The lemma asserts the only
/// point of W~ is tau; the class check asserts no monomial class other than
/// tau T(1) occurs.
inline MonomialIntersection verify_monomial_intersection(const affine::DeltaElement& tau, const GroupElement& z,
                                                         const LocalConfig& cfg) {
  const GaloisField& f = cfg.field();
  const int n = cfg.n;
  if (!tau.in_monoid()) throw NotInMonoid(tau.to_string());
  if (!member(z, SubgroupKind::Z)) throw InvalidArgument("z is not upper unitriangular with integral entries");
  detail::check_window(tau.diagonal(), cfg.window);
  const GroupElement g = tau.to_group(f) * z;
  const GroupElement gi = z.inverse(cfg.prec) * tau.inverse().to_group(f);
  // 1 + t^m M_n(O) fixes g I(1) once m >= 1 - minval(g) - minval(g^{-1}).
  const int depth = std::max(1, 1 - g.matrix().min_valuation() - gi.matrix().min_valuation());
  std::vector<GroupElement> gens;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = (i > j ? 1 : 0); k < depth; ++k)
        for (int c = 1; c < f.q(); ++c) {
          if (i == j && k == 0) continue;
          LocalMatrix x = LocalMatrix::identity(f, n);
          x(i, j) = x(i, j) + Laurent::monomial(f, static_cast<GaloisField::Elt>(c), k);
          gens.push_back(GroupElement::from_matrix(x, cfg.prec));
        }
  std::unordered_set<LeftCosetKey> seen;
  std::vector<GroupElement> frontier{g};
  seen.insert(iwahori_left_coset_key(g, cfg));
  MonomialIntersection res;
  const auto expected = MonomialClass{weyl::Permutation::identity(n), tau.diagonal(),
                                      std::vector<GaloisField::Elt>(static_cast<std::size_t>(n), 1)};
  auto visit = [&](const LeftCosetKey& key) {
    if (auto mc = detail::monomial_in_coset(key)) {
      res.classes.insert(*mc);
      if (std::all_of(mc->units.begin(), mc->units.end(), [](auto u) { return u == 1; }))
        res.points.insert(affine::ExtAffineElement(mc->perm, mc->exps));
      if (!(*mc == expected)) res.ok = false;
    }
  };
  visit(*seen.begin());
  while (!frontier.empty()) {
    const GroupElement cur = frontier.back();
    frontier.pop_back();
    for (const auto& x : gens) {
      GroupElement nxt = x * cur;
      auto key = iwahori_left_coset_key(nxt, cfg);
      if (!seen.insert(key).second) continue;
      visit(key);
      frontier.push_back(std::move(nxt));
    }
  }
  res.left_cosets = seen.size();
  return res;
}

struct CosetLemmaOptions {
  /// z in Z has entries sum_{k < z_digits} c_k t^k.
  int z_digits = 3;
  /// Enumerate every such z when there are at most this many, else sample.
  std::size_t z_exhaustive_limit = 4096;
  std::size_t z_samples = 100;
  std::uint32_t seed = 1;
  /// Absorption runs on the largest window V' <= V whose enumeration has at
  /// most this many unitriangular matrices.
  std::size_t absorption_limit = 1u << 16;
};

/// The three level-0 lemmas over the configured window: tau products for
/// every pair in Delta whose product stays in the window, absorption, and
/// the monomial intersection for z exhaustive or sampled.
inline Report verify_coset_lemmas(const LocalConfig& cfg, const CosetLemmaOptions& opt = {}) {
  Report rep;
  const GaloisField& f = cfg.field();
  const int n = cfg.n;
  const auto ds = delta_elements(n, cfg.window);
  std::size_t pairs = 0, products = 0;
  for (const auto& x : ds)
    for (const auto& y : ds) {
      const auto d = (x * y).diagonal();
      if (*std::max_element(d.begin(), d.end()) - *std::min_element(d.begin(), d.end()) > cfg.window) continue;
      std::string why;
      const bool ok = verify_tau_products(x, y, cfg, &why);
      ++pairs;
      products += left_coset_reps(canonical(x.to_group(f), cfg)).reps.size() *
                  left_coset_reps(canonical(y.to_group(f), cfg)).reps.size();
      if (!ok) rep.add("tau products: " + x.to_string() + " " + y.to_string(), false, why);
    }
  rep.add("tau products: K1 tau K1 tau' K1 = K1 tau tau' K1", rep.ok(),
          std::to_string(pairs) + " pairs, " + std::to_string(products) + " products");

  int av = cfg.window;
  for (; av > 1; --av) {
    const std::size_t bits = static_cast<std::size_t>(n * (n - 1) / 2) * static_cast<std::size_t>(1 + n * av);
    double size = 1;
    for (std::size_t k = 0; k < bits; ++k) size *= f.q();
    if (size <= static_cast<double>(opt.absorption_limit)) break;
  }
  const auto acfg = LocalConfig::make(n, cfg.q, av, std::max(cfg.prec, LocalConfig::default_prec(n * av)));
  const auto ab = verify_absorption(acfg);
  rep.add("absorption: K1 U^- K1 cap U inside K1", ab.ok && ab.u_in_product > 0,
          ab.ok ? "window " + std::to_string(av) + ", " + std::to_string(ab.u_sampled) + " u sampled, " + std::to_string(ab.u_in_product) + " in K1 U^- K1, " +
                      std::to_string(ab.lower_double_cosets) + " lower double cosets"
                : ab.counterexample);

  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) cells.emplace_back(i, j);
  const std::size_t digits = cells.size() * static_cast<std::size_t>(opt.z_digits);
  std::size_t total = 1;
  bool exhaustive = true;
  for (std::size_t k = 0; k < digits && exhaustive; ++k) {
    total *= static_cast<std::size_t>(f.q());
    if (total > opt.z_exhaustive_limit) exhaustive = false;
  }
  const std::size_t count = exhaustive ? total : opt.z_samples;
  std::mt19937 rng(opt.seed);
  std::uniform_int_distribution<int> coef(0, f.q() - 1);
  std::size_t runs = 0, cosets = 0, bad = 0;
  std::string first_bad;
  for (std::size_t s = 0; s < count; ++s) {
    std::vector<int> d(digits);
    std::size_t code = s;
    for (auto& x : d) {
      if (exhaustive) {
        x = static_cast<int>(code % static_cast<std::size_t>(f.q()));
        code /= static_cast<std::size_t>(f.q());
      } else {
        x = coef(rng);
      }
    }
    LocalMatrix z = LocalMatrix::identity(f, n);
    for (std::size_t c = 0; c < cells.size(); ++c)
      z(cells[c].first, cells[c].second) =
          Laurent::series(f, 0, std::vector<int>(d.begin() + static_cast<std::ptrdiff_t>(c) * opt.z_digits,
                                                 d.begin() + static_cast<std::ptrdiff_t>(c + 1) * opt.z_digits));
    const auto zg = GroupElement::from_matrix(z, cfg.prec);
    const auto taus = exhaustive ? ds : std::vector<affine::DeltaElement>{ds[s % ds.size()]};
    for (const auto& tau : taus) {
      const auto r = verify_monomial_intersection(tau, zg, cfg);
      ++runs;
      cosets += r.left_cosets;
      const bool ok = r.ok && r.points.size() <= 1 && (r.points.empty() || *r.points.begin() == tau.to_ext());
      if (!ok && bad++ == 0) first_bad = tau.to_string() + " z = " + zg.to_string();
    }
  }
  rep.add("monomial intersection: only tau's class occurs", bad == 0,
          bad == 0 ? std::to_string(runs) + (exhaustive ? " (tau, z) pairs, z exhaustive, " : " (tau, z) pairs, z sampled, ") +
                         std::to_string(cosets) + " left cosets"
                   : first_bad);
  return rep;
}

}  // namespace hecke
