#pragma once

// Type-A root system and symmetric group combinatorics.
//
// Indices are 1-based everywhere: a permutation of rank n acts on {1..n},
// roots are alpha_{ij} with i != j in 1..n, and the simple reflection s_i
// swaps i and i+1. Composition is (w * v)(i) = w(v(i)); for instance in
// S_3, s_1 * s_2 sends 1 -> s_1(1) = 2, 2 -> s_1(3) = 3, 3 -> s_1(2) = 1,
// i.e. images (2 3 1), which has length 2.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "hecke/errors.hpp"

namespace hecke::weyl {

inline constexpr int kMaxRank = 8;

class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(int n) {
    check_rank(n);
    Permutation p;
    p.n_ = n;
    for (int i = 0; i < n; ++i) p.img_[i] = static_cast<std::uint8_t>(i + 1);
    return p;
  }

  /// s_i, the transposition (i, i+1), 1 <= i < n.
  static Permutation simple(int n, int i) {
    if (i < 1 || i >= n) throw InvalidSimpleRoot("s_" + std::to_string(i) + " in rank " + std::to_string(n));
    Permutation p = identity(n);
    std::swap(p.img_[i - 1], p.img_[i]);
    return p;
  }

  static Permutation from_images(const std::vector<int>& images) {
    const int n = static_cast<int>(images.size());
    check_rank(n);
    Permutation p;
    p.n_ = n;
    std::vector<bool> seen(n + 1, false);
    for (int i = 0; i < n; ++i) {
      const int v = images[i];
      if (v < 1 || v > n || seen[v]) throw InvalidArgument("images are not a permutation of 1..n");
      seen[v] = true;
      p.img_[i] = static_cast<std::uint8_t>(v);
    }
    return p;
  }

  int rank() const { return n_; }
  int operator()(int i) const { return img_[i - 1]; }

  std::vector<int> images() const { return std::vector<int>(img_.begin(), img_.begin() + n_); }

  friend Permutation operator*(const Permutation& w, const Permutation& v) {
    Permutation r;
    r.n_ = w.n_;
    for (int i = 0; i < w.n_; ++i) r.img_[i] = w.img_[v.img_[i] - 1];
    return r;
  }

  Permutation inverse() const {
    Permutation r;
    r.n_ = n_;
    for (int i = 0; i < n_; ++i) r.img_[img_[i] - 1] = static_cast<std::uint8_t>(i + 1);
    return r;
  }

  bool is_identity() const {
    for (int i = 0; i < n_; ++i)
      if (img_[i] != i + 1) return false;
    return true;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

  std::string to_string() const {
    std::string s = "(";
    for (int i = 0; i < n_; ++i) s += (i ? " " : "") + std::to_string(img_[i]);
    return s + ")";
  }

  friend std::ostream& operator<<(std::ostream& os, const Permutation& p) { return os << p.to_string(); }

 private:
  static void check_rank(int n) {
    if (n < 1 || n > kMaxRank) throw InvalidArgument("rank " + std::to_string(n) + " outside 1..8");
  }

  int n_ = 0;
  std::array<std::uint8_t, kMaxRank> img_{};
};

/// Root alpha_{ij}.
struct Root {
  int i = 1;
  int j = 2;

  bool positive() const { return i < j; }
  bool simple() const { return j == i + 1; }
  Root negated() const { return {j, i}; }

  friend bool operator==(const Root&, const Root&) = default;
  friend auto operator<=>(const Root&, const Root&) = default;
};

inline Root act(const Permutation& w, Root a) { return {w(a.i), w(a.j)}; }

/// Number of inversions.
inline int length(const Permutation& w) {
  int l = 0;
  for (int i = 1; i <= w.rank(); ++i)
    for (int j = i + 1; j <= w.rank(); ++j)
      if (w(i) > w(j)) ++l;
  return l;
}

inline std::vector<Root> positive_roots(int n) {
  std::vector<Root> r;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) r.push_back({i, j});
  return r;
}

inline std::vector<Root> all_roots(int n) {
  std::vector<Root> r;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j) r.push_back({i, j});
  return r;
}

/// All n! permutations in lexicographic order of their image arrays.
inline std::vector<Permutation> all_permutations(int n) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 1);
  std::vector<Permutation> out;
  do {
    out.push_back(Permutation::from_images(img));
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

/// A subset P of the simple roots, stored as a bit mask over {1..n-1}
/// (bit i set iff alpha_{i,i+1} is in P).
class SimpleSubset {
 public:
  SimpleSubset() = default;
  SimpleSubset(int n, std::uint32_t mask) : n_(n), mask_(mask & full_mask(n)) {}

  static SimpleSubset empty(int n) { return {n, 0}; }
  static SimpleSubset all(int n) { return {n, full_mask(n)}; }

  static SimpleSubset of(int n, std::initializer_list<int> idx) {
    return of(n, std::vector<int>(idx));
  }

  static SimpleSubset of(int n, const std::vector<int>& idx) {
    std::uint32_t m = 0;
    for (int i : idx) {
      if (i < 1 || i >= n) throw InvalidSimpleRoot("index " + std::to_string(i));
      m |= 1u << i;
    }
    return {n, m};
  }

  int rank() const { return n_; }
  std::uint32_t mask() const { return mask_; }
  bool contains(int i) const { return i >= 1 && i < n_ && ((mask_ >> i) & 1u); }

  /// The complement P-hat in Sigma.
  SimpleSubset complement() const { return {n_, full_mask(n_) & ~mask_}; }

  std::vector<int> indices() const {
    std::vector<int> v;
    for (int i = 1; i < n_; ++i)
      if (contains(i)) v.push_back(i);
    return v;
  }

  /// alpha_{hk} (either sign) lies in Phi_P iff every s_i between h and k is in P.
  bool in_phi(Root a) const {
    const int lo = std::min(a.i, a.j), hi = std::max(a.i, a.j);
    for (int i = lo; i < hi; ++i)
      if (!contains(i)) return false;
    return true;
  }

  std::vector<Root> phi_plus() const {
    std::vector<Root> r;
    for (auto a : positive_roots(n_))
      if (in_phi(a)) r.push_back(a);
    return r;
  }

  std::vector<Root> psi_plus() const {
    std::vector<Root> r;
    for (auto a : positive_roots(n_))
      if (!in_phi(a)) r.push_back(a);
    return r;
  }

  std::vector<Root> psi_minus() const {
    std::vector<Root> r;
    for (auto a : psi_plus()) r.push_back(a.negated());
    return r;
  }

  /// Block index of each position: positions i and i+1 share a block iff s_i in P.
  std::vector<int> blocks() const {
    std::vector<int> b(n_ + 1, 0);
    for (int i = 2; i <= n_; ++i) b[i] = contains(i - 1) ? b[i - 1] : b[i - 1] + 1;
    return b;
  }

  /// w lies in W_P iff it preserves each block.
  bool in_parabolic(const Permutation& w) const {
    auto b = blocks();
    for (int i = 1; i <= n_; ++i)
      if (b[w(i)] != b[i]) return false;
    return true;
  }

  std::vector<Permutation> parabolic_elements() const {
    std::vector<Permutation> out;
    for (const auto& w : all_permutations(n_))
      if (in_parabolic(w)) out.push_back(w);
    return out;
  }

  friend bool operator==(const SimpleSubset&, const SimpleSubset&) = default;

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (int i : indices()) {
      s += (first ? "" : ",") + std::to_string(i);
      first = false;
    }
    return s + "}";
  }

 private:
  static std::uint32_t full_mask(int n) { return n <= 1 ? 0u : ((1u << n) - 2u); }

  int n_ = 0;
  std::uint32_t mask_ = 0;
};

/// alpha-hat = Sigma \ {alpha_{i,i+1}}.
inline SimpleSubset hat(int n, int i) { return SimpleSubset::of(n, {i}).complement(); }

/// The minimal-length element of w W_P, by greedy descent: right-multiply by
/// s_i in P whenever that shortens (w(i) > w(i+1)).
inline Permutation min_coset_rep(Permutation w, const SimpleSubset& p) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i : p.indices())
      if (w(i) > w(i + 1)) {
        w = w * Permutation::simple(w.rank(), i);
        changed = true;
      }
  }
  return w;
}

inline bool is_min_coset_rep(const Permutation& w, const SimpleSubset& p) {
  for (int i : p.indices())
    if (w(i) > w(i + 1)) return false;
  return true;
}

/// Minimal representatives of W / W_P, in lexicographic order.
inline std::vector<Permutation> min_coset_reps(int n, const SimpleSubset& p) {
  std::vector<Permutation> out;
  for (const auto& w : all_permutations(n))
    if (is_min_coset_rep(w, p)) out.push_back(w);
  return out;
}

/// The index sets A, B, P', P, Q attached to (w, alpha_{i,i+1}).
/// A, B, P', Q are subsets of {0..n}; P is P' with n removed, read as a
/// subset of the simple roots.
struct PQSets {
  std::set<int> a, b, p_prime, q;
  SimpleSubset p;
};

inline PQSets pq_sets(const Permutation& w, int i) {
  const int n = w.rank();
  if (i < 1 || i >= n) throw InvalidSimpleRoot("alpha_{" + std::to_string(i) + "," + std::to_string(i + 1) + "}");
  PQSets s;
  for (int j = i + 1; j <= n; ++j) {
    s.a.insert(w(j));
    s.b.insert(w(j) - 1);
  }
  std::set_difference(s.a.begin(), s.a.end(), s.b.begin(), s.b.end(),
                      std::inserter(s.p_prime, s.p_prime.end()));
  std::set_difference(s.b.begin(), s.b.end(), s.a.begin(), s.a.end(),
                      std::inserter(s.q, s.q.end()));
  std::vector<int> p;
  for (int x : s.p_prime)
    if (x >= 1 && x <= n - 1) p.push_back(x);
  s.p = SimpleSubset::of(n, p);
  return s;
}

/// Sum_{h=i+1}^{n} (h - w(h)) == l(w) for w minimal in w W_{alpha-hat}.
inline bool length_displacement_identity(const Permutation& w, int i) {
  const int n = w.rank();
  if (i < 1 || i >= n) throw InvalidSimpleRoot("index " + std::to_string(i));
  if (!is_min_coset_rep(w, hat(n, i)))
    throw NotMinimalRepresentative(w.to_string() + " in w W_{alpha_" + std::to_string(i) + "-hat}");
  int sum = 0;
  for (int h = i + 1; h <= n; ++h) sum += h - w(h);
  return sum == length(w);
}

}  // namespace hecke::weyl
