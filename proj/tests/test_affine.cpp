#include <chrono>
#include <random>

#include <gtest/gtest.h>

#include "hecke/affine.hpp"

using namespace hecke;
using namespace hecke::affine;
using weyl::Permutation;
using weyl::SimpleSubset;

TEST(Delta, PofTau) {
  EXPECT_EQ(DeltaElement::identity(4).p_of_tau(), SimpleSubset::all(4));
  for (int i = 1; i < 4; ++i) EXPECT_EQ(DeltaElement::tau(4, i).p_of_tau(), weyl::hat(4, i));
  for (std::uint32_t m = 0; m < 8; ++m) {
    const SimpleSubset p(4, m << 1);
    EXPECT_EQ(DeltaElement::tau_p(p).p_of_tau(), p.complement());
  }
  EXPECT_THROW(DeltaElement::monoid({2, 1}), NotInMonoid);
  EXPECT_THROW(DeltaElement::group({-1, 0}).p_of_tau(), NotInMonoid);
}

TEST(Delta, FactorizationRoundTrip) {
  std::mt19937 rng(1);
  std::uniform_int_distribution<int> d(0, 3);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<int> f{d(rng), d(rng), d(rng)};
    const auto t = DeltaElement::from_factorization(4, f);
    EXPECT_EQ(t.factorization(), f);
    DeltaElement prod = DeltaElement::identity(4);
    for (int j = 1; j <= 3; ++j)
      for (int k = 0; k < f[static_cast<std::size_t>(j - 1)]; ++k) prod = prod * DeltaElement::tau(4, j);
    EXPECT_EQ(prod, t);
  }
}

TEST(ExtAffine, GroupLawMatchesMatrices) {
  const auto& f = GaloisField::get(3);
  std::mt19937 rng(2);
  std::uniform_int_distribution<int> e(-2, 2);
  const auto perms = weyl::all_permutations(3);
  std::uniform_int_distribution<std::size_t> pick(0, perms.size() - 1);
  for (int trial = 0; trial < 100; ++trial) {
    const ExtAffineElement x(perms[pick(rng)], {e(rng), e(rng), e(rng)});
    const ExtAffineElement y(perms[pick(rng)], {e(rng), e(rng), e(rng)});
    EXPECT_EQ((x * y).to_group(f).matrix(), (x.to_group(f) * y.to_group(f)).matrix());
    EXPECT_EQ(ExtAffineElement::from_group(x.to_group(f)), x);
    EXPECT_EQ(x * x.inverse(), ExtAffineElement::identity(3));
    EXPECT_EQ(x * ExtAffineElement::identity(3), x);
  }
}

TEST(ExtAffine, TauCommuteAndConjugation) {
  for (int n = 2; n <= 5; ++n)
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j)
        EXPECT_EQ(ExtAffineElement::tau(n, i) * ExtAffineElement::tau(n, j),
                  ExtAffineElement::tau(n, j) * ExtAffineElement::tau(n, i));
  // s_i tau_i s_i = tau_i^{-1} tau_{i-1} tau_{i+1}
  const int n = 5;
  for (int i = 2; i < n - 1; ++i) {
    const auto s = ExtAffineElement::simple(n, i);
    const auto lhs = s * ExtAffineElement::tau(n, i) * s;
    const auto rhs = ExtAffineElement::tau(n, i).inverse() * ExtAffineElement::tau(n, i - 1) * ExtAffineElement::tau(n, i + 1);
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(ExtAffine, ConjugationIdentityExhaustive) {
  for (int n = 2; n <= 6; ++n)
    for (int i = 1; i < n; ++i)
      for (const auto& w : weyl::min_coset_reps(n, weyl::hat(n, i))) ASSERT_TRUE(conjugation_identity(w, i)) << w;
}

TEST(Presentation, AllRanks) {
  for (int n = 2; n <= 6; ++n) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto rep = verify_presentation(n);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (const auto& c : rep.checks()) EXPECT_TRUE(c.pass) << "n=" << n << ": " << c.name << " " << c.detail;
    std::cout << "n=" << n << " presentation checked in " << secs << " s: " << rep.checks().back().detail << "\n";
  }
}

TEST(Presentation, BraidAndTauExample) {
  const int n = 3;
  const auto s1 = ExtAffineElement::simple(n, 1), s2 = ExtAffineElement::simple(n, 2);
  EXPECT_EQ(s1 * s2 * s1, s2 * s1 * s2);
  const auto t = ExtAffineElement::tau(n, 2);
  EXPECT_EQ(t * s2 * t * s2, ExtAffineElement::diagonal({0, 1, 1}));
  EXPECT_EQ(s2 * t * s2 * t, ExtAffineElement::tau(n, 1));
}

TEST(Presentation, DetectsMissingRelation) {
  const int n = 3;
  auto rules = presentation_rules(n);
  rules.pop_back();  // drop tau s tau s = s tau s tau
  const auto rep = verify_presentation_with(n, rules, 5);
  EXPECT_FALSE(rep.checks().back().pass);
}

TEST(WeylIdentities, ExhaustiveUpToSix) {
  for (int n = 2; n <= 6; ++n) {
    const auto r = verify_weyl_identities(n);
    EXPECT_EQ(r.checks().size(), n <= 5 ? 6u : 5u);
    for (const auto& c : r.checks()) EXPECT_TRUE(c.pass) << n << ": " << c.name << " " << c.detail;
  }
}
