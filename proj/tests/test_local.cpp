#include <random>

#include <gtest/gtest.h>

#include "hecke/local_group.hpp"

using namespace hecke;

namespace {

const GaloisField& F2 = GaloisField::get(2);
const GaloisField& F3 = GaloisField::get(3);

Laurent t_pow(const GaloisField& f, int k) { return Laurent::monomial(f, 1, k); }

Laurent random_series(const GaloisField& f, std::mt19937& rng, int val, int len) {
  std::uniform_int_distribution<int> d(0, f.q() - 1), nz(1, f.q() - 1);
  std::vector<int> c{nz(rng)};
  for (int i = 1; i < len; ++i) c.push_back(d(rng));
  return Laurent::series(f, val, c, val + len);
}

GroupElement from_rows(const GaloisField& f, const std::vector<std::vector<Laurent>>& rows) {
  const int n = static_cast<int>(rows.size());
  LocalMatrix m(f, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rows[i][j];
  return GroupElement::from_matrix(m, 8);
}

GroupElement random_k1(const GaloisField& f, int n, std::mt19937& rng, int prec) {
  std::uniform_int_distribution<int> d(0, f.q() - 1);
  LocalMatrix m(f, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<int> c;
      for (int k = 1; k < prec; ++k) c.push_back(d(rng));
      Laurent x = Laurent::series(f, 1, c);
      if (i == j) x = x + Laurent::one(f);
      m(i, j) = x;
    }
  return GroupElement::from_matrix(m, prec);
}

}  // namespace

TEST(Gf, FieldAxioms) {
  for (int q : {2, 3, 4}) {
    const auto& f = GaloisField::get(q);
    for (int a = 0; a < q; ++a) {
      if (a) EXPECT_EQ(f.mul(a, f.inv(a)), 1);
      for (int b = 0; b < q; ++b)
        for (int c = 0; c < q; ++c) {
          EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
          EXPECT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        }
    }
  }
  EXPECT_THROW(GaloisField::get(5), ConfigError);
}

TEST(Gf, GeneralLinearGroupOrders) {
  EXPECT_EQ(general_linear_group(F2, 2).size(), 6u);
  EXPECT_EQ(general_linear_group(F3, 2).size(), 48u);
  EXPECT_EQ(general_linear_group(F2, 3).size(), 168u);
  EXPECT_EQ(general_linear_group(GaloisField::get(4), 2).size(), 180u);
}

TEST(Laurent, Basics) {
  EXPECT_EQ(t_pow(F2, 1) * t_pow(F2, -1), Laurent::one(F2));
  // (1 + t) (1 - t + t^2 - ...) = 1 + O(t^6)
  const auto one_plus_t = Laurent::series(F3, 0, {1, 1});
  const auto inv = one_plus_t.inverse(6);
  EXPECT_EQ(inv.abs_prec(), 6);
  const auto prod = one_plus_t * inv;
  EXPECT_EQ(prod.abs_prec(), 6);
  EXPECT_TRUE(prod.agrees_mod(Laurent::one(F3), 6));
  EXPECT_THROW(Laurent::big_o(F2, 3).valuation(), PrecisionExhausted);
  EXPECT_THROW(Laurent::zero(F2).inverse(3), DivisionByZero);
}

TEST(Laurent, ValuationAdditivityRandomized) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> v(-4, 4), len(1, 6);
  for (int trial = 0; trial < 500; ++trial) {
    const auto& f = trial % 2 ? F2 : F3;
    const auto a = random_series(f, rng, v(rng), len(rng));
    const auto b = random_series(f, rng, v(rng), len(rng));
    EXPECT_EQ((a * b).valuation(), a.valuation() + b.valuation());
    const auto ai = a.inverse(8);
    EXPECT_TRUE((a * ai).agrees_mod(Laurent::one(f), a.relative_precision() > 0 ? 1 : 0));
  }
}

TEST(Laurent, NeverFabricatesDigits) {
  const auto a = Laurent::series(F2, 0, {1, 1}, 2);  // 1 + t + O(t^2)
  const auto b = Laurent::series(F2, 0, {1, 1, 1}, 5);
  EXPECT_EQ((a + b).abs_prec(), 2);
  EXPECT_EQ((a * b).abs_prec(), 2);
  EXPECT_TRUE((a - a).is_unresolved());
}

TEST(LocalGroup, MonomialInverse) {
  const auto w = weyl::Permutation::from_images({2, 3, 1});
  const auto g = GroupElement::monomial(F3, w, {1, -2, 0});
  const auto gi = g.inverse(4);
  EXPECT_TRUE(gi.matrix().is_exact());
  EXPECT_EQ((g * gi).matrix(), LocalMatrix::identity(F3, 3));
  EXPECT_EQ(gi.det_valuation(), 1);
}

TEST(LocalGroup, UnipotentInverseIsFiniteSeries) {
  LocalMatrix m = LocalMatrix::identity(F2, 3);
  m(0, 1) = t_pow(F2, 1);
  m(1, 2) = t_pow(F2, 1);
  const auto g = GroupElement::from_matrix(m, 6);
  const auto gi = g.inverse(6);
  EXPECT_TRUE(gi.matrix().is_exact());
  EXPECT_EQ(gi(0, 2), t_pow(F2, 2));
  EXPECT_EQ((g * gi).matrix(), LocalMatrix::identity(F2, 3));
}

TEST(LocalGroup, RandomK1RoundTrip) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = random_k1(trial % 2 ? F2 : F3, 3, rng, 6);
    const auto gi = g.inverse(6);
    EXPECT_TRUE((g * gi).matrix().agrees_mod(LocalMatrix::identity(g.field(), 3), 5));
    EXPECT_TRUE(member(gi, SubgroupKind::K1));
  }
}

TEST(LocalGroup, CartanDecompositionSimple) {
  const auto tau = GroupElement::diagonal_powers(F2, {0, 1});
  auto cd = cartan_decomposition(tau.matrix(), 4);
  EXPECT_EQ(cd.cartan, (std::vector<int>{0, 1}));
  // swapped diagonal gets sorted
  const auto swapped = GroupElement::diagonal_powers(F2, {2, -1});
  cd = cartan_decomposition(swapped.matrix(), 6);
  EXPECT_EQ(cd.cartan, (std::vector<int>{-1, 2}));
  EXPECT_EQ(swapped.det_valuation(), 1);
  LocalMatrix sing(F2, 2);
  sing(0, 0) = Laurent::one(F2);
  EXPECT_THROW(GroupElement::from_matrix(sing, 4), NotInvertible);
}

TEST(LocalGroup, MembershipExamples) {
  const int n = 2;
  const auto id = GroupElement::identity(F2, n);
  for (auto k : {SubgroupKind::K, SubgroupKind::K1, SubgroupKind::I1, SubgroupKind::ITilde1, SubgroupKind::U,
                 SubgroupKind::UMinus, SubgroupKind::CalU, SubgroupKind::CalUMinus, SubgroupKind::M, SubgroupKind::Z,
                 SubgroupKind::WBold, SubgroupKind::Delta, SubgroupKind::DeltaHat})
    EXPECT_TRUE(member(id, k));
  const auto tau = GroupElement::diagonal_powers(F2, {0, 1});
  EXPECT_TRUE(member(tau, SubgroupKind::Delta));
  EXPECT_FALSE(member(tau, SubgroupKind::K));
  LocalMatrix m = LocalMatrix::identity(F2, 2);
  m(1, 0) = t_pow(F2, 1);
  const auto g = GroupElement::from_matrix(m, 4);
  EXPECT_TRUE(member(g, SubgroupKind::K1));
  EXPECT_TRUE(member(g, SubgroupKind::ITilde1));
  EXPECT_FALSE(member(g, SubgroupKind::U));
  const auto inv_tau = GroupElement::diagonal_powers(F2, {0, -1});
  EXPECT_FALSE(member(inv_tau, SubgroupKind::Delta));
  EXPECT_TRUE(member(inv_tau, SubgroupKind::DeltaHat));
}

TEST(LocalGroup, MembershipNeedsPrecision) {
  LocalMatrix m = LocalMatrix::identity(F2, 2);
  m(0, 1) = Laurent::big_o(F2, 0);
  const GroupElement g = GroupElement::from_matrix(LocalMatrix::identity(F2, 2), 4) * GroupElement::identity(F2, 2);
  (void)g;
  EXPECT_THROW(detail::in_ideal(Laurent::big_o(F2, 0), 1), PrecisionExhausted);
  EXPECT_TRUE(detail::in_ideal(Laurent::big_o(F2, 3), 1));
}

TEST(LocalGroup, SubgroupInclusionsRandomized) {
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> d(0, 1);
  for (int trial = 0; trial < 200; ++trial) {
    // Random element of I~1 as lower(tO) * diag(1+tO) * upper(O).
    LocalMatrix lo = LocalMatrix::identity(F2, 3), di = LocalMatrix::identity(F2, 3), up = LocalMatrix::identity(F2, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const auto r = Laurent::series(F2, 0, {d(rng), d(rng), d(rng)});
        if (i > j) lo(i, j) = r.shifted(1);
        if (i < j) up(i, j) = r;
        if (i == j) di(i, i) = Laurent::one(F2) + r.shifted(1);
      }
    const auto x = GroupElement::from_matrix(lo * di * up, 6);
    EXPECT_TRUE(member(x, SubgroupKind::ITilde1));
    EXPECT_TRUE(member(x, SubgroupKind::K));
    if (member(x, SubgroupKind::K1)) EXPECT_TRUE(member(x, SubgroupKind::I1));
    EXPECT_TRUE(member(GroupElement::from_matrix(lo, 6), SubgroupKind::ITilde1));
    EXPECT_TRUE(member(GroupElement::from_matrix(up, 6), SubgroupKind::U));
    EXPECT_TRUE(member(GroupElement::from_matrix(di, 6), SubgroupKind::M));
  }
  for (const auto& a : weyl::positive_roots(3)) {
    LocalMatrix m = LocalMatrix::identity(F2, 3);
    m(a.i - 1, a.j - 1) = Laurent::series(F2, 0, {1, 1});
    const auto u = GroupElement::from_matrix(m, 6);
    EXPECT_TRUE(member(u, SubgroupSpec{SubgroupKind::UAlpha, {}, a}));
    EXPECT_TRUE(member(u, SubgroupKind::U));
  }
}
