#pragma once

// The monoid Delta of dominant diagonal matrices, the group Delta-hat, and
// the extended affine Weyl group W~ = W x| Delta-hat realised by monomial
// matrices with entries t^k.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hecke/errors.hpp"
#include "hecke/local_group.hpp"
#include "hecke/report.hpp"
#include "hecke/weyl.hpp"

namespace hecke::affine {

using weyl::Permutation;
using weyl::SimpleSubset;

/// The monomial matrix sum_j t^{exps[j]} E_{perm(j), j}, i.e. P_w diag(t^e).
class ExtAffineElement {
 public:
  ExtAffineElement() = default;
  ExtAffineElement(Permutation w, std::vector<int> exps) : w_(w), e_(std::move(exps)) {
    if (static_cast<int>(e_.size()) != w_.rank()) throw InvalidArgument("exponent vector has wrong length");
  }

  static ExtAffineElement identity(int n) { return {Permutation::identity(n), std::vector<int>(static_cast<std::size_t>(n), 0)}; }
  static ExtAffineElement perm(const Permutation& w) { return {w, std::vector<int>(static_cast<std::size_t>(w.rank()), 0)}; }
  static ExtAffineElement simple(int n, int i) { return perm(Permutation::simple(n, i)); }
  static ExtAffineElement diagonal(std::vector<int> exps) {
    const int n = static_cast<int>(exps.size());
    return {Permutation::identity(n), std::move(exps)};
  }

  /// tau_i = diag(1_i, t 1_{n-i}) for 0 <= i <= n.
  static ExtAffineElement tau(int n, int i) {
    if (i < 0 || i > n) throw InvalidArgument("tau_" + std::to_string(i) + " in rank " + std::to_string(n));
    std::vector<int> e(static_cast<std::size_t>(n), 0);
    for (int k = i + 1; k <= n; ++k) e[static_cast<std::size_t>(k - 1)] = 1;
    return diagonal(std::move(e));
  }

  /// prod_{j in s} tau_j, for s a subset of {0..n}.
  static ExtAffineElement tau_set(int n, const std::set<int>& s) {
    ExtAffineElement r = identity(n);
    for (int j : s) r = r * tau(n, j);
    return r;
  }

  const Permutation& perm() const { return w_; }
  const std::vector<int>& exps() const { return e_; }
  int rank() const { return w_.rank(); }
  bool is_diagonal() const { return w_.is_identity(); }

  // P_w D_e P_v D_f = P_{wv} (P_v^{-1} D_e P_v) D_f, and P_v^{-1} D_e P_v
  // carries e_{v(j)} at position j.
  friend ExtAffineElement operator*(const ExtAffineElement& x, const ExtAffineElement& y) {
    std::vector<int> e(x.e_.size());
    for (int j = 1; j <= x.rank(); ++j)
      e[static_cast<std::size_t>(j - 1)] = x.e_[static_cast<std::size_t>(y.w_(j) - 1)] + y.e_[static_cast<std::size_t>(j - 1)];
    return {x.w_ * y.w_, std::move(e)};
  }

  ExtAffineElement inverse() const {
    const Permutation wi = w_.inverse();
    std::vector<int> e(e_.size());
    for (int j = 1; j <= rank(); ++j) e[static_cast<std::size_t>(j - 1)] = -e_[static_cast<std::size_t>(wi(j) - 1)];
    return {wi, std::move(e)};
  }

  GroupElement to_group(const GaloisField& f) const { return GroupElement::monomial(f, w_, e_); }

  /// Inverse of to_group; throws InvalidArgument unless g is a monomial
  /// matrix whose nonzero entries are exactly powers of t.
  static ExtAffineElement from_group(const GroupElement& g) {
    const int n = g.n();
    std::vector<int> img(static_cast<std::size_t>(n), 0), e(static_cast<std::size_t>(n), 0);
    for (int j = 0; j < n; ++j) {
      int found = -1;
      for (int i = 0; i < n; ++i) {
        if (g(i, j).is_zero()) continue;
        if (found >= 0) throw InvalidArgument("not monomial: " + g.to_string());
        found = i;
      }
      if (found < 0) throw InvalidArgument("zero column in " + g.to_string());
      const Laurent& x = g(found, j);
      const int v = x.valuation();
      if (!(x == Laurent::monomial(g.field(), 1, v))) throw InvalidArgument("entry is not a power of t: " + x.to_string());
      img[static_cast<std::size_t>(j)] = found + 1;
      e[static_cast<std::size_t>(j)] = v;
    }
    return {Permutation::from_images(img), std::move(e)};
  }

  friend bool operator==(const ExtAffineElement&, const ExtAffineElement&) = default;
  friend auto operator<=>(const ExtAffineElement&, const ExtAffineElement&) = default;

  std::string to_string() const {
    std::string s = w_.to_string() + "[";
    for (std::size_t i = 0; i < e_.size(); ++i) s += (i ? "," : "") + std::to_string(e_[i]);
    return s + "]";
  }

 private:
  Permutation w_;
  std::vector<int> e_;
};

/// diag(1, t^{a_1}, ..., t^{a_{n-1}}); a monoid element has
/// 0 <= a_1 <= ... <= a_{n-1}.
class DeltaElement {
 public:
  enum class Kind { Monoid, Group };

  DeltaElement() = default;
  DeltaElement(std::vector<int> a, Kind kind) : a_(std::move(a)), kind_(kind) {
    if (kind_ == Kind::Monoid) {
      int prev = 0;
      for (int x : a_) {
        if (x < prev) throw NotInMonoid("exponents " + to_string() + " are not nondecreasing and nonnegative");
        prev = x;
      }
    }
  }

  static DeltaElement monoid(std::vector<int> a) { return {std::move(a), Kind::Monoid}; }
  static DeltaElement group(std::vector<int> a) { return {std::move(a), Kind::Group}; }
  static DeltaElement identity(int n) { return monoid(std::vector<int>(static_cast<std::size_t>(n - 1), 0)); }

  /// tau_i, 1 <= i <= n-1.
  static DeltaElement tau(int n, int i) {
    if (i < 1 || i >= n) throw InvalidSimpleRoot("tau_" + std::to_string(i) + " in rank " + std::to_string(n));
    return from_factorization(n, [&] {
      std::vector<int> v(static_cast<std::size_t>(n - 1), 0);
      v[static_cast<std::size_t>(i - 1)] = 1;
      return v;
    }());
  }

  /// tau_P = prod_{alpha in P} tau_alpha.
  static DeltaElement tau_p(const SimpleSubset& p) {
    std::vector<int> v(static_cast<std::size_t>(p.rank() - 1), 0);
    for (int i : p.indices()) v[static_cast<std::size_t>(i - 1)] = 1;
    return from_factorization(p.rank(), v);
  }

  /// prod_j tau_j^{i_j}, with i_j >= 0 for j = 1..n-1.
  static DeltaElement from_factorization(int n, const std::vector<int>& i_alpha) {
    std::vector<int> a(static_cast<std::size_t>(n - 1), 0);
    int acc = 0;
    for (int j = 1; j < n; ++j) {
      acc += i_alpha[static_cast<std::size_t>(j - 1)];
      a[static_cast<std::size_t>(j - 1)] = acc;
    }
    return monoid(std::move(a));
  }

  int rank() const { return static_cast<int>(a_.size()) + 1; }
  const std::vector<int>& exponents() const { return a_; }
  Kind kind() const { return kind_; }
  bool in_monoid() const {
    int prev = 0;
    for (int x : a_) {
      if (x < prev) return false;
      prev = x;
    }
    return true;
  }

  /// The full diagonal exponent vector (0, a_1, ..., a_{n-1}).
  std::vector<int> diagonal() const {
    std::vector<int> d{0};
    d.insert(d.end(), a_.begin(), a_.end());
    return d;
  }

  /// i_alpha for alpha = alpha_{j,j+1}: a_j - a_{j-1} with a_0 = 0.
  std::vector<int> factorization() const {
    if (!in_monoid()) throw NotInMonoid(to_string());
    const auto d = diagonal();
    std::vector<int> out;
    for (std::size_t j = 1; j < d.size(); ++j) out.push_back(d[j] - d[j - 1]);
    return out;
  }

  /// P(tau) = { alpha : i_alpha = 0 }.
  SimpleSubset p_of_tau() const {
    const auto f = factorization();
    std::vector<int> idx;
    for (std::size_t j = 0; j < f.size(); ++j)
      if (f[j] == 0) idx.push_back(static_cast<int>(j) + 1);
    return SimpleSubset::of(rank(), idx);
  }

  friend DeltaElement operator*(const DeltaElement& x, const DeltaElement& y) {
    std::vector<int> a(x.a_.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = x.a_[i] + y.a_[i];
    const bool mon = x.kind_ == Kind::Monoid && y.kind_ == Kind::Monoid;
    return {std::move(a), mon ? Kind::Monoid : Kind::Group};
  }

  DeltaElement inverse() const {
    std::vector<int> a(a_.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = -a_[i];
    return group(std::move(a));
  }

  ExtAffineElement to_ext() const { return ExtAffineElement::diagonal(diagonal()); }
  GroupElement to_group(const GaloisField& f) const { return GroupElement::diagonal_powers(f, diagonal()); }

  friend bool operator==(const DeltaElement& x, const DeltaElement& y) { return x.a_ == y.a_; }

  std::string to_string() const {
    std::string s = "diag(1";
    for (int x : a_) s += ",t^" + std::to_string(x);
    return s + ")";
  }

 private:
  std::vector<int> a_;
  Kind kind_ = Kind::Monoid;
};

/// w tau_i w^{-1} == tau_P^{-1} tau_Q with P, Q from pq_sets.
inline bool conjugation_identity(const Permutation& w, int i) {
  const int n = w.rank();
  const auto s = weyl::pq_sets(w, i);
  const auto ew = ExtAffineElement::perm(w);
  const auto lhs = ew * ExtAffineElement::tau(n, i) * ew.inverse();
  const auto idx = s.p.indices();
  const std::set<int> p(idx.begin(), idx.end());
  const auto rhs = ExtAffineElement::tau_set(n, p).inverse() * ExtAffineElement::tau_set(n, s.q);
  return lhs == rhs;
}

// ---------------------------------------------------------------------------
// Presentation of W~ by s_1..s_{n-1} and tau = tau_{n-1}.

namespace detail {

// Words are packed 4 bits per letter, at most 15 letters: letter i in
// 1..n-1 is s_i, n is tau, n+1 is tau^{-1}.
struct Word {
  std::uint64_t code = 0;
  int len = 0;

  int at(int k) const { return static_cast<int>((code >> (4 * k)) & 0xF); }
  friend bool operator==(const Word&, const Word&) = default;
};

inline Word make_word(const std::vector<int>& letters) {
  Word w;
  for (int l : letters) w.code |= static_cast<std::uint64_t>(l) << (4 * w.len++);
  return w;
}

inline std::vector<int> letters(const Word& w) {
  std::vector<int> v;
  for (int k = 0; k < w.len; ++k) v.push_back(w.at(k));
  return v;
}

inline std::uint64_t key(const Word& w) { return w.code | (static_cast<std::uint64_t>(w.len) << 60); }

inline ExtAffineElement evaluate(int n, const Word& w) {
  ExtAffineElement x = ExtAffineElement::identity(n);
  const auto tau = ExtAffineElement::tau(n, n - 1), tau_inv = tau.inverse();
  for (int k = 0; k < w.len; ++k) {
    const int l = w.at(k);
    x = x * (l < n ? ExtAffineElement::simple(n, l) : l == n ? tau : tau_inv);
  }
  return x;
}

struct Rule {
  std::vector<int> lhs, rhs;
};

inline std::string word_string(int n, const std::vector<int>& w) {
  if (w.empty()) return "1";
  std::string s;
  for (int l : w) s += l < n ? "s" + std::to_string(l) : l == n ? "T" : "T'";
  return s;
}

}  // namespace detail

/// The defining relations as word pairs.
inline std::vector<detail::Rule> presentation_rules(int n) {
  std::vector<detail::Rule> r;
  const int T = n, Ti = n + 1;
  r.push_back({{T, Ti}, {}});
  for (int i = 1; i < n; ++i) r.push_back({{i, i}, {}});
  for (int i = 1; i + 1 < n; ++i) r.push_back({{i, i + 1, i}, {i + 1, i, i + 1}});
  for (int i = 1; i < n; ++i)
    for (int j = i + 2; j < n; ++j) r.push_back({{i, j}, {j, i}});
  for (int i = 1; i < n - 1; ++i) r.push_back({{T, i}, {i, T}});
  const int s = n - 1;
  r.push_back({{T, s, T, s}, {s, T, s, T}});
  return r;
}

namespace detail {

inline std::vector<int> invert_word(int n, const std::vector<int>& w) {
  std::vector<int> v(w.rbegin(), w.rend());
  for (int& l : v)
    if (l == n)
      l = n + 1;
    else if (l == n + 1)
      l = n;
  return v;
}

/// Every equation p = q obtained from a relator r = lhs rhs^{-1} by cyclic
/// rotation of r or r^{-1} and splitting the rotation as p q^{-1}.
inline std::map<std::vector<int>, std::set<std::vector<int>>> symmetrized_rules(int n, const std::vector<Rule>& base) {
  std::map<std::vector<int>, std::set<std::vector<int>>> out;
  for (const auto& rule : base) {
    std::vector<int> rel = rule.lhs;
    const auto tail = invert_word(n, rule.rhs);
    rel.insert(rel.end(), tail.begin(), tail.end());
    for (const auto& r : {rel, invert_word(n, rel)})
      for (std::size_t rot = 0; rot < r.size(); ++rot) {
        std::vector<int> c(r.begin() + static_cast<std::ptrdiff_t>(rot), r.end());
        c.insert(c.end(), r.begin(), r.begin() + static_cast<std::ptrdiff_t>(rot));
        for (std::size_t k = 0; k <= c.size(); ++k) {
          std::vector<int> p(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(k));
          const auto q = invert_word(n, std::vector<int>(c.begin() + static_cast<std::ptrdiff_t>(k), c.end()));
          if (p == q) continue;
          out[p].insert(q);
          out[q].insert(p);
        }
      }
  }
  return out;
}

}  // namespace detail

/// Checks every defining relation in the matrix model, the identity
/// tau s tau s = tau_{n-2}, and that words of length <= max_len with equal
/// matrices are connected by rewriting with the (symmetrized) relations
/// inside that length.
/// As verify_presentation, with an explicit relation list.
inline Report verify_presentation_with(int n, const std::vector<detail::Rule>& relations, int max_len) {
  if (n < 2 || n > 6) throw InvalidArgument("verify_presentation supports 2 <= n <= 6");
  if (max_len < 0 || max_len > 15) throw InvalidArgument("word length bound must lie in 0..15");
  Report rep;
  for (const auto& rule : relations) {
    const bool ok = detail::evaluate(n, detail::make_word(rule.lhs)) == detail::evaluate(n, detail::make_word(rule.rhs));
    rep.add("relation " + detail::word_string(n, rule.lhs) + " = " + detail::word_string(n, rule.rhs), ok);
  }
  {
    const int T = n, s = n - 1;
    const auto x = detail::evaluate(n, detail::make_word({T, s, T, s}));
    const auto y = detail::evaluate(n, detail::make_word({s, T, s, T}));
    const auto target = ExtAffineElement::tau(n, n - 2);
    rep.add("tau s tau s = s tau s tau = tau_{n-2}", x == target && y == target, x.to_string());
  }
  {
    // tau_{j-1} = tau_j * (s_j ... s_{n-1}) tau (s_{n-1} ... s_j)
    const auto tau = ExtAffineElement::tau(n, n - 1);
    ExtAffineElement cur = tau;
    bool ok = true;
    for (int j = n - 1; j >= 1; --j) {
      ExtAffineElement c = tau;
      for (int k = n - 1; k >= j; --k) c = ExtAffineElement::simple(n, k) * c * ExtAffineElement::simple(n, k);
      cur = cur * c;
      ok = ok && cur == ExtAffineElement::tau(n, j - 1);
    }
    rep.add("tau_0..tau_{n-1} are words in tau and the s_i", ok);
  }

  // Bounded injectivity: union-find over all words of length <= max_len.
  std::vector<detail::Word> words{detail::Word{}};
  std::unordered_map<std::uint64_t, std::size_t> index{{detail::key(words[0]), 0}};
  for (std::size_t start = 0, end = 1, len = 1; len <= static_cast<std::size_t>(max_len); ++len) {
    for (std::size_t k = start; k < end; ++k)
      for (int l = 1; l <= n + 1; ++l) {
        detail::Word w = words[k];
        w.code |= static_cast<std::uint64_t>(l) << (4 * w.len++);
        index.emplace(detail::key(w), words.size());
        words.push_back(w);
      }
    start = end;
    end = words.size();
  }
  std::unordered_map<std::uint64_t, std::vector<detail::Word>> rules;
  for (const auto& [from, tos] : detail::symmetrized_rules(n, relations))
    for (const auto& to : tos) rules[detail::key(detail::make_word(from))].push_back(detail::make_word(to));

  std::vector<std::size_t> parent(words.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto for_each_rewrite = [&](const detail::Word& w, int bound, auto&& visit) {
    for (int pos = 0; pos < w.len; ++pos)
      for (int len = 1; pos + len <= w.len; ++len) {
        const detail::Word sub{(w.code >> (4 * pos)) & ((1ULL << (4 * len)) - 1), len};
        const auto it = rules.find(detail::key(sub));
        if (it == rules.end()) continue;
        for (const auto& to : it->second) {
          if (w.len - len + to.len > bound) continue;
          const std::uint64_t low = w.code & ((1ULL << (4 * pos)) - 1);
          const std::uint64_t high = w.code >> (4 * (pos + len));
          visit(detail::Word{low | (to.code << (4 * pos)) | (high << (4 * (pos + to.len))), w.len - len + to.len});
        }
      }
  };
  for (std::size_t k = 0; k < words.size(); ++k)
    for_each_rewrite(words[k], max_len, [&](const detail::Word& v) { parent[find(k)] = find(index.at(detail::key(v))); });

  // Classes still split at this length: search from one component through
  // intermediate words of length up to max_len + slack.
  constexpr int kSlack = 2;
  constexpr std::size_t kSearchCap = 400000;
  std::map<ExtAffineElement, std::vector<std::size_t>> components;
  for (std::size_t k = 0; k < words.size(); ++k) {
    auto& roots = components[detail::evaluate(n, words[k])];
    const std::size_t r = find(k);
    if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
  }
  std::size_t searched = 0;
  for (auto& [m, roots] : components) {
    if (roots.size() < 2) continue;
    ++searched;
    std::unordered_set<std::uint64_t> seen{detail::key(words[roots[0]])};
    std::vector<detail::Word> frontier{words[roots[0]]};
    const std::size_t origin = roots[0];
    std::size_t remaining = roots.size() - 1;
    while (!frontier.empty() && remaining > 0 && seen.size() < kSearchCap) {
      const detail::Word w = frontier.back();
      frontier.pop_back();
      for_each_rewrite(w, max_len + kSlack, [&](const detail::Word& v) {
        if (!seen.insert(detail::key(v)).second) return;
        frontier.push_back(v);
        if (v.len > max_len) return;
        const std::size_t a = find(origin), b = find(index.at(detail::key(v)));
        if (a != b) {
          parent[b] = a;
          --remaining;
        }
      });
    }
  }
  std::map<ExtAffineElement, std::size_t> class_root;
  std::size_t unconnected = 0;
  std::string example;
  for (std::size_t k = 0; k < words.size(); ++k) {
    const auto m = detail::evaluate(n, words[k]);
    auto [it, fresh] = class_root.emplace(m, k);
    if (fresh || find(it->second) == find(k)) continue;
    ++unconnected;
    if (example.empty())
      example = detail::word_string(n, detail::letters(words[k])) + " vs " +
                detail::word_string(n, detail::letters(words[it->second]));
    parent[find(k)] = find(it->second);
  }
  rep.add("words of length <= " + std::to_string(max_len) + " with equal matrices are equal modulo the relations",
          unconnected == 0,
          std::to_string(words.size()) + " words, " + std::to_string(class_root.size()) + " elements, " +
              std::to_string(searched) + " classes joined through words of length <= " +
              std::to_string(max_len + kSlack) +
              (example.empty() ? "" : ", first unconnected pair: " + example));
  return rep;
}

inline Report verify_presentation(int n, int max_len = 6) { return verify_presentation_with(n, presentation_rules(n), max_len); }

/// The finite Weyl group identities, exhaustively over S_n: length as a root
/// count, the step rule, minimal coset representatives (unique for n <= 5),
/// additivity of length, the displacement identity, and w tau_i w^-1 =
/// tau_P^-1 tau_Q as monomial matrices.
inline Report verify_weyl_identities(int n) {
  using weyl::Permutation;
  Report rep;
  const auto perms = weyl::all_permutations(n);
  const std::string count = std::to_string(perms.size()) + " elements";

  std::size_t bad = 0;
  for (const auto& w : perms) {
    const Permutation wi = w.inverse();
    int c = 0;
    for (const auto& b : weyl::positive_roots(n))
      if (!weyl::act(wi, b).positive()) ++c;
    if (c != weyl::length(w)) ++bad;
  }
  rep.add("l(w) = |Phi+ cap w Phi-|", bad == 0, count);

  bad = 0;
  for (const auto& w : perms)
    for (int i = 1; i < n; ++i) {
      const bool up = weyl::act(w, weyl::Root{i, i + 1}).positive();
      if (weyl::length(w * Permutation::simple(n, i)) != weyl::length(w) + (up ? 1 : -1)) ++bad;
    }
  rep.add("l(w s_i) = l(w) + 1 iff w(alpha_i) > 0", bad == 0, count);

  std::size_t unique_bad = 0, add_bad = 0, cosets = 0;
  for (std::uint32_t m = 0; m < (1u << (n - 1)); ++m) {
    const weyl::SimpleSubset p(n, m << 1);
    const auto wp = p.parabolic_elements();
    for (const auto& w : weyl::min_coset_reps(n, p)) {
      ++cosets;
      for (const auto& u : wp) {
        if (weyl::length(w * u) != weyl::length(w) + weyl::length(u)) ++add_bad;
        if (n <= 5 && !u.is_identity() && weyl::length(w * u) <= weyl::length(w)) ++unique_bad;
      }
    }
  }
  if (n <= 5)
    rep.add("minimal coset representatives are unique", unique_bad == 0, std::to_string(cosets) + " cosets");
  rep.add("l(w u) = l(w) + l(u) for w minimal, u in W_P", add_bad == 0, std::to_string(cosets) + " cosets");

  bad = 0;
  std::size_t tried = 0;
  const auto& f = GaloisField::get(2);
  for (int i = 1; i < n; ++i)
    for (const auto& w : weyl::min_coset_reps(n, weyl::hat(n, i))) {
      ++tried;
      if (!weyl::length_displacement_identity(w, i)) ++bad;
    }
  rep.add("sum (h - w(h)) = l(w) for w minimal in w W_alpha-hat", bad == 0, std::to_string(tried) + " pairs");

  bad = 0;
  for (const auto& w : perms)
    for (int i = 1; i < n; ++i) {
      const auto s = weyl::pq_sets(w, i);
      const auto idx = s.p.indices();
      const auto ew = ExtAffineElement::perm(w);
      const auto lhs = ew.to_group(f) * ExtAffineElement::tau(n, i).to_group(f) * ew.inverse().to_group(f);
      const auto rhs = ExtAffineElement::tau_set(n, std::set<int>(idx.begin(), idx.end())).inverse().to_group(f) *
                       ExtAffineElement::tau_set(n, s.q).to_group(f);
      if (!(lhs.matrix() == rhs.matrix())) ++bad;
    }
  rep.add("w tau_i w^-1 = tau_P^-1 tau_Q", bad == 0, std::to_string(perms.size() * static_cast<std::size_t>(n - 1)) + " pairs");
  return rep;
}

}  // namespace hecke::affine
