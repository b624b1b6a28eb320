#pragma once

// The convolution algebra of K1-biinvariant compactly supported functions on
// GL_n(F_q((t))), with coefficients in Q or F_ell, and checks of its
// defining relations.

#include <cstdint>
#include <map>
#include <mutex>
#include <random>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "hecke/coeff.hpp"
#include "hecke/cosets.hpp"
#include "hecke/report.hpp"

namespace hecke {

/// A finite sum of characteristic functions f_D of double cosets D.
class HeckeElement {
 public:
  using Terms = std::map<DoubleCosetId, Coefficient>;

  HeckeElement() = default;
  explicit HeckeElement(Field f) : field_(f) {}

  static HeckeElement basis(Field f, const DoubleCosetId& id, Coefficient c) {
    HeckeElement x(f);
    x.add(id, std::move(c));
    return x;
  }
  static HeckeElement basis(Field f, const DoubleCosetId& id) { return basis(f, id, Coefficient::one(f)); }

  Field field() const { return field_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Coefficient coefficient(const DoubleCosetId& id) const {
    auto it = terms_.find(id);
    return it == terms_.end() ? Coefficient::zero(field_) : it->second;
  }

  void add(const DoubleCosetId& id, const Coefficient& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(id, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  HeckeElement& operator+=(const HeckeElement& o) {
    check_same(o);
    for (const auto& [id, c] : o.terms_) add(id, c);
    return *this;
  }
  HeckeElement& operator-=(const HeckeElement& o) {
    check_same(o);
    for (const auto& [id, c] : o.terms_) add(id, -c);
    return *this;
  }
  friend HeckeElement operator+(HeckeElement a, const HeckeElement& b) { return a += b; }
  friend HeckeElement operator-(HeckeElement a, const HeckeElement& b) { return a -= b; }

  friend HeckeElement operator*(const Coefficient& s, const HeckeElement& x) {
    HeckeElement y(x.field_);
    for (const auto& [id, c] : x.terms_) y.add(id, s * c);
    return y;
  }

  friend bool operator==(const HeckeElement& a, const HeckeElement& b) {
    return a.field_ == b.field_ && a.terms_.size() == b.terms_.size() &&
           std::equal(a.terms_.begin(), a.terms_.end(), b.terms_.begin(),
                      [](const auto& x, const auto& y) { return x.first == y.first && x.second == y.second; });
  }

  /// Image of a rational element in F_ell.
  HeckeElement reduce(Field target) const {
    HeckeElement y(target);
    for (const auto& [id, c] : terms_) y.add(id, c.reduce(target));
    return y;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [id, c] : terms_) s += (s.empty() ? "" : " + ") + c.to_string() + "*f" + id.to_string();
    return s;
  }

 private:
  void check_same(const HeckeElement& o) const {
    if (!(field_ == o.field_)) throw MixedCoefficientDomains(field_.name() + " vs " + o.field_.name());
  }

  Field field_;
  Terms terms_;
};

/// Names the generators: K-elements by residue, tau_i (0 <= i < n), tau_0^{-1}.
struct TauTag {
  int i;
};
struct TauZeroInverseTag {};
using GeneratorTag = std::variant<ResMatrix, TauTag, TauZeroInverseTag>;

/// tau_i = diag(1_i, t 1_{n-i}); tau_0 = t 1_n.
inline GroupElement tau_element(const GaloisField& f, int n, int i) {
  if (i < 0 || i >= n) throw InvalidSimpleRoot("tau_" + std::to_string(i) + " in rank " + std::to_string(n));
  std::vector<int> a(static_cast<std::size_t>(n), 0);
  for (int k = i; k < n; ++k) a[static_cast<std::size_t>(k)] = 1;
  return GroupElement::diagonal_powers(f, a);
}

inline GroupElement generator_element(const GaloisField& f, int n, const GeneratorTag& tag) {
  if (const auto* r = std::get_if<ResMatrix>(&tag)) {
    if (r->n() != n || !r->invertible()) throw InvalidArgument("K-generator must be invertible of size " + std::to_string(n));
    return GroupElement::lift(*r);
  }
  if (const auto* t = std::get_if<TauTag>(&tag)) return tau_element(f, n, t->i);
  return GroupElement::diagonal_powers(f, std::vector<int>(static_cast<std::size_t>(n), -1));
}

/// Computes products in the algebra for a fixed (n, q, window) and a fixed
/// coefficient field; basis products are memoized.
class HeckeEngine {
 public:
  using Constants = std::vector<std::pair<DoubleCosetId, Coefficient>>;

  HeckeEngine(LocalConfig cfg, Field field, int threads = 1)
      : cfg_(cfg), field_(field), threads_(std::max(1, threads)) {
    cfg_.validate();
    if (!field.is_rational() && field.characteristic() == static_cast<std::uint32_t>(cfg.field().p()))
      throw BadCharacteristic("coefficients of characteristic " + std::to_string(field.characteristic()) +
                              " equal to the residue characteristic");
  }

  const LocalConfig& config() const { return cfg_; }
  Field field() const { return field_; }
  const GaloisField& residue_field() const { return cfg_.field(); }

  DoubleCosetId id_of(const GroupElement& x) const { return canonical(x, cfg_); }

  HeckeElement identity() const { return HeckeElement::basis(field_, DoubleCosetId::identity(cfg_.field(), cfg_.n)); }
  HeckeElement basis(const GroupElement& x) const { return HeckeElement::basis(field_, id_of(x)); }
  HeckeElement basis(const DoubleCosetId& id) const { return HeckeElement::basis(field_, id); }
  HeckeElement generator(const GeneratorTag& tag) const { return basis(generator_element(cfg_.field(), cfg_.n, tag)); }

  /// f_a f_b = sum_D c_D f_D.
  const Constants& structure_constants(const DoubleCosetId& a, const DoubleCosetId& b) {
    const auto key = std::make_pair(a, b);
    if (auto it = products_.find(key); it != products_.end()) return it->second;
    return products_.emplace(key, compute(a, b)).first->second;
  }

  HeckeElement convolve(const HeckeElement& x, const HeckeElement& y) {
    if (!(x.field() == field_) || !(y.field() == field_))
      throw MixedCoefficientDomains("engine over " + field_.name() + " got " + x.field().name() + " and " + y.field().name());
    HeckeElement z(field_);
    for (const auto& [a, ca] : x.terms())
      for (const auto& [b, cb] : y.terms()) {
        const Coefficient c = ca * cb;
        for (const auto& [d, cd] : structure_constants(a, b)) z.add(d, c * cd);
      }
    return z;
  }

  HeckeElement product(const std::vector<HeckeElement>& xs) {
    HeckeElement z = identity();
    for (const auto& x : xs) z = convolve(z, x);
    return z;
  }

  std::size_t memo_size() const { return products_.size(); }

  /// The basis pairs whose products have been computed, sorted.
  std::vector<std::pair<DoubleCosetId, DoubleCosetId>> computed_pairs() const {
    std::vector<std::pair<DoubleCosetId, DoubleCosetId>> out;
    for (const auto& kv : products_) out.push_back(kv.first);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  struct PairHash {
    std::size_t operator()(const std::pair<DoubleCosetId, DoubleCosetId>& p) const {
      return p.first.hash() * 1000003u ^ p.second.hash();
    }
  };

  struct Hit {
    GroupElement rep;
    std::uint64_t count = 0;
  };
  using HitMap = std::unordered_map<LeftCosetKey, Hit>;

  const CosetList& reps(const DoubleCosetId& id) {
    if (auto it = reps_.find(id); it != reps_.end()) return it->second;
    return reps_.emplace(id, left_coset_reps(id)).first->second;
  }

  /// Counts, for every left coset z K1, the pairs (x, y) of left coset
  /// representatives of K1 a K1 and K1 b K1 with x y in z K1. That count is
  /// (f_a f_b)(z); it must be constant on each double coset D and D must be
  /// hit in exactly [D : K1] left cosets.
  Constants compute(const DoubleCosetId& a, const DoubleCosetId& b) {
    const auto& xs = reps(a).reps;
    const auto& ys = reps(b).reps;
    const int workers = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(threads_), xs.size()));
    std::vector<HitMap> partial(static_cast<std::size_t>(workers));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    auto run = [&](int w) {
      try {
        auto& hits = partial[static_cast<std::size_t>(w)];
        for (std::size_t i = static_cast<std::size_t>(w); i < xs.size(); i += static_cast<std::size_t>(workers))
          for (const auto& y : ys) {
            GroupElement z = xs[i] * y;
            auto key = left_coset_key(z, cfg_);
            auto it = hits.find(key);
            if (it == hits.end()) it = hits.emplace(std::move(key), Hit{std::move(z), 0}).first;
            ++it->second.count;
          }
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    };
    if (workers <= 1) {
      run(0);
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
      for (auto& t : pool) t.join();
    }
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
    HitMap hits = std::move(partial[0]);
    for (std::size_t w = 1; w < partial.size(); ++w)
      for (auto& [k, h] : partial[w]) {
        auto it = hits.find(k);
        if (it == hits.end())
          hits.emplace(k, std::move(h));
        else
          it->second.count += h.count;
      }

    struct Tally {
      std::uint64_t count = 0;
      std::uint64_t cosets = 0;
    };
    std::map<DoubleCosetId, Tally> by_id;
    for (const auto& [k, h] : hits) {
      auto [it, fresh] = by_id.try_emplace(canonical(h.rep, cfg_));
      Tally& t = it->second;
      if (!fresh && t.count != h.count)
        throw NonConstantOnCoset("f_a f_b takes values " + std::to_string(t.count) + " and " + std::to_string(h.count) +
                                 " on " + it->first.to_string());
      t.count = h.count;
      ++t.cosets;
    }
    Constants out;
    for (const auto& [d, t] : by_id) {
      if (t.cosets != d.degree())
        throw NonConstantOnCoset(d.to_string() + " met in " + std::to_string(t.cosets) + " of its " +
                                 std::to_string(d.degree()) + " left cosets");
      out.emplace_back(d, Coefficient::from_int(field_, static_cast<long>(t.count)));
    }
    // a normalizes K1 exactly when K1 a K1 = a K1; then f_a f_b = f_{ab}
    if (a.degree() == 1 || b.degree() == 1) {
      const auto ab = canonical(xs.front() * ys.front(), cfg_);
      if (out.size() != 1 || !(out[0].first == ab) || !out[0].second.is_one())
        throw NonConstantOnCoset("product with a normalizer of K1 is not the single term f" + ab.to_string());
    }
    return out;
  }

  LocalConfig cfg_;
  Field field_;
  int threads_;
  std::unordered_map<std::pair<DoubleCosetId, DoubleCosetId>, Constants, PairHash> products_;
  std::unordered_map<DoubleCosetId, CosetList> reps_;
};

inline HeckeElement convolve(HeckeEngine& e, const HeckeElement& x, const HeckeElement& y) { return e.convolve(x, y); }

// ---------------------------------------------------------------------------
// Relations.

struct RelationOptions {
  std::uint32_t seed = 1;
  int k1_samples = 6;
};

namespace detail {

inline GroupElement root_element(const GaloisField& f, int n, weyl::Root r, GaloisField::Elt c) {
  ResMatrix m = ResMatrix::identity(f, n);
  m(r.i - 1, r.j - 1) = c;
  return GroupElement::lift(m);
}

inline std::string tau_name(int i) { return "tau_" + std::to_string(i); }

/// A random element of K1 with polynomial entries.
inline GroupElement random_k1(const GaloisField& f, int n, std::mt19937& rng) {
  std::uniform_int_distribution<int> d(0, f.q() - 1);
  LocalMatrix m = LocalMatrix::identity(f, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = m(i, j) + Laurent::series(f, 1, {d(rng), d(rng)});
  return GroupElement::from_matrix(m, 8);
}

/// Residues of U ∩ w U^- w^{-1}: unitriangular matrices supported on the
/// positive roots b with w^{-1} b negative.
inline std::vector<ResMatrix> inversion_unipotents(const GaloisField& f, const weyl::Permutation& w) {
  const int n = w.rank();
  std::vector<weyl::Root> cells;
  for (const auto& r : weyl::positive_roots(n))
    if (!weyl::act(w.inverse(), r).positive()) cells.push_back(r);
  std::vector<ResMatrix> out;
  std::vector<int> d(cells.size(), 0);
  for (;;) {
    ResMatrix m = ResMatrix::identity(f, n);
    for (std::size_t k = 0; k < cells.size(); ++k) m(cells[k].i - 1, cells[k].j - 1) = static_cast<GaloisField::Elt>(d[k]);
    out.push_back(m);
    std::size_t s = 0;
    while (s < d.size() && ++d[s] == f.q()) d[s++] = 0;
    if (s == d.size()) break;
  }
  return out;
}

}  // namespace detail

inline Report verify_relation(HeckeEngine& e, int r, const RelationOptions& opt = {}) {
  const GaloisField& f = e.residue_field();
  const int n = e.config().n;
  const Field R = e.field();
  Report rep;
  auto compare = [&](const std::string& name, const HeckeElement& lhs, const HeckeElement& rhs) {
    const bool ok = lhs == rhs;
    rep.add(name, ok, ok ? std::string() : "lhs = " + lhs.to_string() + "; rhs = " + rhs.to_string());
  };
  const auto gl = general_linear_group(f, n);
  const GroupElement t0 = tau_element(f, n, 0);
  const GroupElement t0i = generator_element(f, n, TauZeroInverseTag{});
  switch (r) {
    case 1: {
      std::mt19937 rng(opt.seed);
      for (int s = 0; s < opt.k1_samples; ++s) {
        const auto k = detail::random_k1(f, n, rng);
        compare("f_k = 1 for k = " + k.to_string(), e.basis(k), e.identity());
      }
      std::size_t bad = 0;
      std::string first;
      for (const auto& k1 : gl)
        for (const auto& k2 : gl) {
          const auto lhs = e.convolve(e.basis(GroupElement::lift(k1)), e.basis(GroupElement::lift(k2)));
          if (!(lhs == e.basis(GroupElement::lift(k1 * k2))) && bad++ == 0) first = k1.to_string() + " " + k2.to_string();
        }
      rep.add("f_k1 f_k2 = f_k1k2 over all of GL_n(F_q)^2", bad == 0,
              bad ? std::to_string(bad) + " failures, first at " + first : std::to_string(gl.size() * gl.size()) + " pairs");
      for (int s = 0; s < opt.k1_samples; ++s) {
        const auto& k1 = gl[rng() % gl.size()];
        const auto& k2 = gl[rng() % gl.size()];
        const auto x = GroupElement::lift(k1) * detail::random_k1(f, n, rng);
        const auto y = detail::random_k1(f, n, rng) * GroupElement::lift(k2);
        compare("f_k1 f_k2 = f_k1k2 with non-constant lifts", e.convolve(e.basis(x), e.basis(y)), e.basis(x * y));
      }
      break;
    }
    case 2: {
      compare("f_tau0 f_tau0^-1 = 1", e.convolve(e.basis(t0), e.basis(t0i)), e.identity());
      std::vector<std::pair<std::string, GroupElement>> omega;
      for (const auto& k : gl) omega.emplace_back("k = " + k.to_string(), GroupElement::lift(k));
      omega.emplace_back("tau_0", t0);
      omega.emplace_back("tau_0^-1", t0i);
      for (int i = 1; i < n; ++i) omega.emplace_back(detail::tau_name(i), tau_element(f, n, i));
      std::size_t bad = 0;
      std::string first;
      for (const auto& [name, w] : omega) {
        const auto lhs = e.convolve(e.basis(t0i), e.basis(w));
        const auto rhs = e.convolve(e.basis(t0i * w * t0), e.basis(t0i));
        if (!(lhs == rhs) && bad++ == 0) first = name;
      }
      rep.add("f_tau0^-1 f_w = f_(tau0^-1 w tau0) f_tau0^-1 for all w in Omega", bad == 0,
              bad ? std::to_string(bad) + " failures, first at " + first : std::to_string(omega.size()) + " generators");
      break;
    }
    case 3: {
      for (int i = 1; i < n; ++i) {
        const auto ta = tau_element(f, n, i);
        const auto tai = ta.inverse(8);
        const auto p = weyl::hat(n, i);
        std::vector<std::pair<std::string, GroupElement>> xs;
        // diagonal elements of K
        std::vector<int> d(static_cast<std::size_t>(n), 1);
        for (;;) {
          ResMatrix m(f, n);
          for (int k = 0; k < n; ++k) m(k, k) = static_cast<GaloisField::Elt>(d[static_cast<std::size_t>(k)]);
          xs.emplace_back("diag " + m.to_string(), GroupElement::lift(m));
          std::size_t s = 0;
          while (s < d.size() && ++d[s] == f.q()) d[s++] = 1;
          if (s == d.size()) break;
        }
        for (const auto& root : weyl::all_roots(n))
          if (p.in_phi(root))
            for (int c = 1; c < f.q(); ++c)
              xs.emplace_back("root (" + std::to_string(root.i) + "," + std::to_string(root.j) + ")",
                              detail::root_element(f, n, root, static_cast<GaloisField::Elt>(c)));
        for (const auto& w : p.parabolic_elements()) xs.emplace_back("perm " + w.to_string(), GroupElement::permutation(f, w));
        std::size_t bad = 0;
        std::string first;
        for (const auto& [name, x] : xs) {
          const auto lhs = e.convolve(e.basis(ta), e.basis(x));
          const auto rhs = e.convolve(e.basis(ta * x * tai), e.basis(ta));
          if (!(lhs == rhs) && bad++ == 0) first = name;
        }
        rep.add("f_tau f_x = f_(tau x tau^-1) f_tau, " + detail::tau_name(i) + ", x over generators of M", bad == 0,
                bad ? std::to_string(bad) + " failures, first at " + first : std::to_string(xs.size()) + " generators");
      }
      break;
    }
    case 4:
    case 5: {
      for (int i = 1; i < n; ++i) {
        const auto ta = e.basis(tau_element(f, n, i));
        const auto p = weyl::hat(n, i);
        const auto roots = r == 4 ? p.psi_plus() : p.psi_minus();
        bool ok = true;
        std::string first;
        std::size_t count = 0;
        for (const auto& root : roots)
          for (int c = 0; c < f.q(); ++c) {
            const auto u = e.basis(detail::root_element(f, n, root, static_cast<GaloisField::Elt>(c)));
            const auto lhs = r == 4 ? e.convolve(u, ta) : e.convolve(ta, u);
            ++count;
            if (!(lhs == ta) && ok) {
              ok = false;
              first = "root (" + std::to_string(root.i) + "," + std::to_string(root.j) + ") c = " + std::to_string(c);
            }
          }
        rep.add(std::string(r == 4 ? "f_u f_tau = f_tau" : "f_tau f_u = f_tau") + ", " + detail::tau_name(i), ok,
                ok ? std::to_string(count) + " elements" : first);
      }
      break;
    }
    case 6: {
      for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j) {
          const auto a = e.basis(tau_element(f, n, i));
          const auto b = e.basis(tau_element(f, n, j));
          compare("f_" + detail::tau_name(i) + " f_" + detail::tau_name(j) + " commute", e.convolve(a, b), e.convolve(b, a));
        }
      break;
    }
    case 7: {
      for (int i = 1; i < n; ++i)
        for (const auto& w : weyl::min_coset_reps(n, weyl::hat(n, i))) {
          const auto s = weyl::pq_sets(w, i);
          std::vector<HeckeElement> lhs_f;
          for (int j : s.p.indices()) lhs_f.push_back(e.basis(tau_element(f, n, j)));
          lhs_f.push_back(e.basis(GroupElement::permutation(f, w)));
          lhs_f.push_back(e.basis(tau_element(f, n, i)));
          lhs_f.push_back(e.basis(GroupElement::permutation(f, w.inverse())));
          std::vector<HeckeElement> rhs_f;
          for (int j : s.q) rhs_f.push_back(e.basis(tau_element(f, n, j)));
          HeckeElement usum(R);
          std::set<DoubleCosetId> uids;
          const auto us = detail::inversion_unipotents(f, w);
          for (const auto& u : us) {
            const auto h = e.basis(GroupElement::lift(u));
            uids.insert(h.terms().begin()->first);
            usum += h;
          }
          rhs_f.push_back(usum);
          long ql = 1;
          for (int k = 0; k < weyl::length(w); ++k) ql *= f.q();
          const auto lhs = e.product(lhs_f);
          const auto rhs = Coefficient::from_int(R, ql) * e.product(rhs_f);
          const std::string name = detail::tau_name(i) + ", w = " + w.to_string();
          rep.add(name + ": |(U cap wU^-w^-1)K1/K1| = q^l(w)", uids.size() == static_cast<std::size_t>(ql),
                  std::to_string(uids.size()) + " cosets");
          compare(name, lhs, rhs);
        }
      break;
    }
    default:
      throw InvalidArgument("relation index " + std::to_string(r) + " outside 1..7");
  }
  return rep;
}

/// Every product computed by `modular` equals the reduction of the same
/// product computed over Q.
inline Report verify_mod_ell(HeckeEngine& modular, HeckeEngine& rational) {
  Report rep;
  const Field f = modular.field();
  std::size_t n = 0, bad = 0;
  std::string first;
  for (const auto& [a, b] : modular.computed_pairs()) {
    HeckeElement q(rational.field()), m(f);
    for (const auto& [d, c] : rational.structure_constants(a, b)) q.add(d, c);
    for (const auto& [d, c] : modular.structure_constants(a, b)) m.add(d, c);
    ++n;
    if (!(q.reduce(f) == m) && bad++ == 0) first = a.to_string() + " * " + b.to_string();
  }
  rep.add("structure constants over Q reduce to those over " + f.name(), bad == 0 && n > 0,
          bad == 0 ? std::to_string(n) + " products" : std::to_string(bad) + " mismatches, first " + first);
  return rep;
}

}  // namespace hecke
