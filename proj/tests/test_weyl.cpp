#include <map>
#include <set>

#include <gtest/gtest.h>

#include "hecke/weyl.hpp"

using namespace hecke::weyl;
using hecke::InvalidSimpleRoot;
using hecke::NotMinimalRepresentative;

namespace {

Permutation s(int n, int i) { return Permutation::simple(n, i); }

// |Phi+ ∩ w Phi-|: positive roots beta with w^{-1} beta negative.
int length_by_roots(const Permutation& w) {
  const Permutation wi = w.inverse();
  int c = 0;
  for (const auto& b : positive_roots(w.rank()))
    if (!act(wi, b).positive()) ++c;
  return c;
}

int length_by_negative_roots(const Permutation& w) {
  const Permutation wi = w.inverse();
  int c = 0;
  for (const auto& b : positive_roots(w.rank()))
    if (act(wi, b.negated()).positive()) ++c;
  return c;
}

std::vector<SimpleSubset> all_subsets(int n) {
  std::vector<SimpleSubset> out;
  for (std::uint32_t m = 0; m < (1u << (n - 1)); ++m) out.emplace_back(n, m << 1);
  return out;
}

}  // namespace

TEST(Weyl, LengthExamples) {
  EXPECT_EQ(length(Permutation::identity(3)), 0);
  EXPECT_EQ(length(s(3, 1)), 1);
  const auto w = s(3, 1) * s(3, 2);
  EXPECT_EQ(w.images(), (std::vector<int>{2, 3, 1}));
  EXPECT_EQ(length(w), 2);
}

TEST(Weyl, ActExamples) {
  EXPECT_EQ(act(Permutation::identity(2), Root{1, 2}), (Root{1, 2}));
  EXPECT_EQ(act(s(2, 1), Root{1, 2}), (Root{2, 1}));
  EXPECT_EQ(act(s(3, 2), Root{1, 3}), (Root{1, 2}));
}

TEST(Weyl, LengthEqualsRootCountsExhaustive) {
  for (int n = 2; n <= 6; ++n)
    for (const auto& w : all_permutations(n)) {
      ASSERT_EQ(length(w), length_by_roots(w)) << w;
      ASSERT_EQ(length(w), length_by_negative_roots(w)) << w;
    }
}

TEST(Weyl, LengthStepRuleExhaustive) {
  for (int n = 2; n <= 6; ++n)
    for (const auto& w : all_permutations(n))
      for (int i = 1; i < n; ++i) {
        const bool up = act(w, Root{i, i + 1}).positive();
        ASSERT_EQ(length(w * s(n, i)), length(w) + (up ? 1 : -1));
      }
}

TEST(Weyl, MinCosetRepAgainstBruteForce) {
  for (int n = 2; n <= 5; ++n)
    for (const auto& p : all_subsets(n)) {
      const auto wp = p.parabolic_elements();
      std::map<std::set<Permutation>, int> minima_per_coset;
      for (const auto& w : all_permutations(n)) {
        std::set<Permutation> coset;
        Permutation best = w;
        for (const auto& u : wp) {
          coset.insert(w * u);
          if (length(w * u) < length(best)) best = w * u;
        }
        const auto m = min_coset_rep(w, p);
        ASSERT_EQ(m, best);
        ASSERT_EQ(min_coset_rep(m, p), m);
        int minima = 0;
        for (const auto& x : coset)
          if (length(x) == length(best)) ++minima;
        ASSERT_EQ(minima, 1);
        for (const auto& u : wp) {
          ASSERT_EQ(min_coset_rep(w * u, p), m);
          ASSERT_EQ(length(m * u), length(m) + length(u));
        }
        for (const auto& a : p.phi_plus()) ASSERT_TRUE(act(m, a).positive());
      }
    }
  EXPECT_EQ(min_coset_rep(s(3, 1), SimpleSubset::of(3, {1})), Permutation::identity(3));
  EXPECT_EQ(min_coset_rep(s(3, 2), SimpleSubset::empty(3)), s(3, 2));
}

TEST(Weyl, PsiPhiPartition) {
  for (int n = 2; n <= 6; ++n)
    for (const auto& p : all_subsets(n)) {
      auto a = p.phi_plus(), b = p.psi_plus();
      EXPECT_EQ(a.size() + b.size(), positive_roots(n).size());
      for (const auto& r : b) EXPECT_EQ(std::count(a.begin(), a.end(), r), 0);
    }
}

TEST(Weyl, PqSetsExamples) {
  for (int n = 2; n <= 6; ++n)
    for (int i = 1; i < n; ++i) {
      const auto id = pq_sets(Permutation::identity(n), i);
      std::set<int> a, b;
      for (int j = i + 1; j <= n; ++j) a.insert(j);
      for (int j = i; j <= n - 1; ++j) b.insert(j);
      EXPECT_EQ(id.a, a);
      EXPECT_EQ(id.b, b);
      EXPECT_EQ(id.p_prime, std::set<int>{n});
      EXPECT_TRUE(id.p.indices().empty());
      EXPECT_EQ(id.q, std::set<int>{i});
    }
  for (int n = 4; n <= 6; ++n)
    for (int i = 2; i < n - 1; ++i) {
      const auto r = pq_sets(s(n, i), i);
      EXPECT_EQ(r.p.indices(), std::vector<int>{i});
      EXPECT_EQ(r.q, (std::set<int>{i - 1, i + 1}));
    }
  EXPECT_THROW(pq_sets(Permutation::identity(3), 3), InvalidSimpleRoot);
}

TEST(Weyl, LengthDisplacementIdentityExhaustive) {
  EXPECT_TRUE(length_displacement_identity(Permutation::identity(4), 2));
  EXPECT_TRUE(length_displacement_identity(s(4, 2), 2));
  for (int n = 2; n <= 6; ++n)
    for (int i = 1; i < n; ++i)
      for (const auto& w : min_coset_reps(n, hat(n, i))) ASSERT_TRUE(length_displacement_identity(w, i));
  EXPECT_THROW(length_displacement_identity(s(3, 2), 1), NotMinimalRepresentative);
}

TEST(Weyl, RootsLemmaSpecialization) {
  // For w minimal in w W_{alpha-hat}: Phi+ ∩ w Psi-_{alpha-hat} = Phi+ ∩ w Phi-.
  for (int n = 2; n <= 6; ++n)
    for (int i = 1; i < n; ++i) {
      const auto h = hat(n, i);
      for (const auto& w : min_coset_reps(n, h)) {
        std::set<Root> lhs, rhs;
        for (const auto& r : h.psi_minus())
          if (act(w, r).positive()) lhs.insert(act(w, r));
        for (const auto& r : positive_roots(n))
          if (act(w, r.negated()).positive()) rhs.insert(act(w, r.negated()));
        ASSERT_EQ(lhs, rhs);
      }
    }
}
