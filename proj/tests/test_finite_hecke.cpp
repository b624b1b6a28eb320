#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "hecke/finite_hecke.hpp"

using namespace hecke;
using namespace hecke::finite;

namespace {

const Field QQ = Field::rationals();

std::vector<int> everything(const FiniteGroup& g) {
  std::vector<int> all(static_cast<std::size_t>(g.order()));
  std::iota(all.begin(), all.end(), 0);
  return all;
}

int index_of_transposition(const FiniteGroup& g, int i, int j) {
  return g.index_of(FiniteGroup::transposition(g.degree(), i, j));
}

}  // namespace

TEST(FiniteGroup, Orders) {
  EXPECT_EQ(FiniteGroup::symmetric(3).order(), 6);
  EXPECT_EQ(FiniteGroup::symmetric(4).order(), 24);
  EXPECT_EQ(FiniteGroup::cyclic(5).order(), 5);
  EXPECT_EQ(FiniteGroup::gl2(2).order(), 6);
  EXPECT_EQ(FiniteGroup::gl2(3).order(), 48);
  EXPECT_EQ(FiniteGroup::symmetric(3).conjugacy_classes().size(), 3u);
  EXPECT_EQ(FiniteGroup::gl2(3).conjugacy_classes().size(), 8u);
  EXPECT_THROW(FiniteGroup::gl2_perm(2, 1, 1, 1, 1), InvalidArgument);
}

TEST(FiniteGroup, CosetCounts) {
  const auto g = FiniteGroup::symmetric(3);
  const auto h = g.subgroup({index_of_transposition(g, 0, 1)});
  EXPECT_EQ(h.size(), 2u);
  EXPECT_EQ(left_coset_reps(g, h).size(), 3u);
  EXPECT_EQ(right_coset_reps(g, h).size(), 3u);
  EXPECT_EQ(right_coset_reps(g, h).front(), 0);
  EXPECT_EQ(double_coset_reps(g, h).size(), 2u);
}

TEST(FiniteGroup, RepresentationsAreChecked) {
  const auto g = FiniteGroup::symmetric(3);
  const auto all = everything(g);
  EXPECT_NO_THROW(Rep::permutation(g, all, QQ));
  EXPECT_NO_THROW(Rep::regular(g, Field::prime(5)));
  // x -> 2 is not multiplicative
  EXPECT_THROW(Rep::make(g, all, QQ, 1, [&](int x) {
                 Matrix m(QQ, 1, 1);
                 m(0, 0) = Coefficient::from_int(QQ, x == 0 ? 1 : 2);
                 return m;
               }),
               InvalidArgument);
}

TEST(FiniteHecke, IntertwiningSpaceAgreesWithEnumeration) {
  const auto g = FiniteGroup::symmetric(3);
  const int s1 = index_of_transposition(g, 0, 1), s2 = index_of_transposition(g, 1, 2);
  const auto h = g.subgroup({s1});
  for (std::uint32_t ell : {3u, 5u, 7u}) {
    const Field f = Field::prime(ell);
    const Rep sigma = Rep::sign(g, h, f);
    for (int x = 0; x < g.order(); ++x) {
      std::size_t count = 0;
      for (std::uint64_t m = 0; m < ell; ++m) {
        const Coefficient c = Coefficient::residue(f, m);
        bool ok = true;
        for (int y : h) {
          const int z = g.mul(g.mul(x, y), g.inv(x));
          if (sigma.defined_at(z)) ok = ok && c * sigma(y)(0, 0) == sigma(z)(0, 0) * c;
        }
        if (ok) ++count;
      }
      const std::size_t dim = intertwining_space(x, sigma).size();
      std::size_t expect = 1;
      for (std::size_t k = 0; k < dim; ++k) expect *= ell;
      EXPECT_EQ(count, expect) << "x = " << x << " over F_" << ell;
    }
    // s2 does not normalize <s1>: the intersection is trivial, no condition
    EXPECT_EQ(intertwining_space(s2, sigma).size(), 1u);
  }
  // g = 1 gives End_H(sigma); trivial sigma intertwines everywhere
  const Rep triv = Rep::trivial(g, h, QQ);
  for (int x = 0; x < g.order(); ++x) EXPECT_EQ(intertwining_space(x, triv).size(), 1u);
}

TEST(FiniteHecke, DimensionsForS3) {
  const auto g = FiniteGroup::symmetric(3);
  const auto h = g.subgroup({index_of_transposition(g, 0, 1)});
  const FiniteHeckeAlgebra alg(Rep::trivial(g, h, QQ));
  EXPECT_EQ(alg.dim(), 2u);
  EXPECT_EQ(alg.endomorphisms().size(), 2u);
  EXPECT_EQ(alg.induced().dim(), 3u);
  // the permutation action on 3 points is the induced representation
  EXPECT_EQ(hom_space(alg.induced().rep(), Rep::permutation(g, everything(g), QQ)).size(), 2u);
}

TEST(FiniteHecke, IdentityAndAssociativity) {
  const auto g = FiniteGroup::gl2(3);
  const auto borel = g.subgroup({g.index_of(FiniteGroup::gl2_perm(3, 1, 1, 0, 1)),
                                 g.index_of(FiniteGroup::gl2_perm(3, 2, 0, 0, 1)),
                                 g.index_of(FiniteGroup::gl2_perm(3, 1, 0, 0, 2))});
  ASSERT_EQ(borel.size(), 12u);
  const FiniteHeckeAlgebra alg(Rep::trivial(g, borel, QQ));
  ASSERT_EQ(alg.dim(), 2u);
  std::mt19937 rng(4);
  std::uniform_int_distribution<long> c(-3, 3);
  auto random = [&] {
    FiniteHeckeElement x = alg.zero();
    for (const auto& b : alg.basis()) x = x + Coefficient::from_int(QQ, c(rng)) * b;
    return x;
  };
  for (int k = 0; k < 3; ++k) {
    const auto a = random(), b = random(), d = random();
    EXPECT_EQ(alg.convolve(a, alg.identity()), a);
    EXPECT_EQ(alg.convolve(alg.convolve(a, b), d), alg.convolve(a, alg.convolve(b, d)));
    EXPECT_EQ(alg.xi(alg.convolve(a, b)), alg.xi(a) * alg.xi(b));
  }
  // T_s^2 = (q - 1) T_s + q for the Iwahori-Hecke algebra of GL_2(F_3)
  const auto& ts = alg.basis()[1];
  EXPECT_EQ(alg.convolve(ts, ts), Coefficient::from_int(QQ, 2) * ts + Coefficient::from_int(QQ, 3) * alg.identity());
}

TEST(FiniteHecke, NormalSubgroupGivesGroupAlgebraOfQuotient) {
  const auto g = FiniteGroup::symmetric(3);
  const auto a3 = g.subgroup({g.index_of({1, 2, 0})});
  const FiniteHeckeAlgebra alg(Rep::trivial(g, a3, QQ));
  ASSERT_EQ(alg.dim(), 2u);
  // characteristic functions of cosets multiply as the cosets do
  const auto reps = alg.double_coset_reps();
  auto coset_of = [&](int x) {
    for (std::size_t k = 0; k < reps.size(); ++k)
      for (int h : a3)
        if (g.mul(reps[k], h) == x) return k;
    return reps.size();
  };
  for (int x : reps)
    for (int y : reps) {
      const auto fx = alg.extend(x, Matrix::identity(QQ, 1)), fy = alg.extend(y, Matrix::identity(QQ, 1));
      EXPECT_EQ(alg.convolve(fx, fy), alg.extend(reps[coset_of(g.mul(x, y))], Matrix::identity(QQ, 1)));
    }

  const auto c6 = FiniteGroup::cyclic(6);
  const auto sub = c6.subgroup({c6.index_of({3, 4, 5, 0, 1, 2})});
  const FiniteHeckeAlgebra calg(Rep::trivial(c6, sub, Field::prime(5)));
  EXPECT_EQ(calg.dim(), 3u);
  for (int x : calg.double_coset_reps())
    for (int y : calg.double_coset_reps()) {
      const auto prod = calg.convolve(calg.extend(x, Matrix::identity(calg.field(), 1)),
                                      calg.extend(y, Matrix::identity(calg.field(), 1)));
      EXPECT_TRUE(prod(c6.mul(x, y))(0, 0).is_one()) << x << " " << y;
    }
}

TEST(FiniteHecke, XiIsInverseToXiInverse) {
  const auto g = FiniteGroup::symmetric(4);
  const auto h = g.subgroup({index_of_transposition(g, 0, 1), index_of_transposition(g, 1, 2)});
  const Rep sigma = direct_sum(Rep::trivial(g, h, QQ), Rep::sign(g, h, QQ));
  const FiniteHeckeAlgebra alg(sigma);
  EXPECT_EQ(alg.dim(), alg.endomorphisms().size());
  for (const auto& th : alg.endomorphisms()) EXPECT_EQ(alg.xi(alg.xi_inverse(th)), th);
  for (const auto& b : alg.basis()) {
    EXPECT_TRUE(alg.is_element(b));
    EXPECT_EQ(alg.xi_inverse(alg.xi(b)), b);
  }
}

TEST(FiniteHecke, VSigmaAndGenerated) {
  const auto g = FiniteGroup::symmetric(3);
  const auto h = g.subgroup({index_of_transposition(g, 0, 1)});
  const auto all = everything(g);
  const Rep perm = Rep::permutation(g, all, QQ);
  // sigma trivial: V^sigma = K-fixed vectors, here spanned by e1 + e2 and e3
  EXPECT_EQ(v_sigma(perm, Rep::trivial(g, h, QQ)).dim(), 2u);
  EXPECT_EQ(v_sigma(perm, Rep::sign(g, h, QQ)).dim(), 1u);
  const Rep sigma = Rep::sign(g, h, QQ);
  const InducedRep ind(sigma);
  EXPECT_EQ(v_sigma_generated(ind.rep(), sigma).dim(), ind.dim());
  EXPECT_EQ(v_sigma(Rep::trivial(g, all, QQ), sigma).dim(), 0u);
  EXPECT_EQ(v_sigma_generated(Rep::trivial(g, all, QQ), sigma).dim(), 0u);
}

TEST(FiniteHecke, MSigma) {
  const auto g = FiniteGroup::symmetric(3);
  const auto h = g.subgroup({index_of_transposition(g, 0, 1)});
  const auto all = everything(g);
  const FiniteHeckeAlgebra alg(Rep::sign(g, h, QQ));
  EXPECT_EQ(m_sigma(alg, alg.induced().rep()).module.dim, alg.dim());
  EXPECT_EQ(m_sigma(alg, Rep::trivial(g, all, QQ)).module.dim, 0u);
  EXPECT_EQ(m_sigma(alg, Rep::sign(g, all, QQ)).module.dim, 1u);
  const FiniteHeckeAlgebra bad(Rep::sign(g, h, Field::prime(2)));
  EXPECT_THROW(m_sigma(bad, Rep::trivial(g, all, Field::prime(2))), BadCharacteristic);
}

TEST(FiniteHecke, SubrepresentationLattices) {
  const auto g = FiniteGroup::symmetric(3);
  const auto all = everything(g);
  // over Q: trivial + standard, two pieces, four subrepresentations
  EXPECT_EQ(subrepresentations(Rep::permutation(g, all, QQ)).size(), 4u);
  // over F_3 the permutation module is uniserial: 0 < <(1,1,1)> < sum zero < V
  EXPECT_EQ(subrepresentations(Rep::permutation(g, all, Field::prime(3))).size(), 4u);
  // trivial + trivial over F_5 has 5 + 1 lines
  const Rep t5 = Rep::trivial(g, all, Field::prime(5));
  EXPECT_EQ(subrepresentations(direct_sum(t5, t5)).size(), 8u);
  EXPECT_THROW(subrepresentations(direct_sum(Rep::trivial(g, all, QQ), Rep::trivial(g, all, QQ))), LatticeTooLarge);
  EXPECT_THROW(subrepresentations(Rep::regular(g, Field::prime(7)), 1000), LatticeTooLarge);
}

TEST(FiniteHecke, TfaeExamples) {
  const auto g = FiniteGroup::symmetric(3);
  const auto h = g.subgroup({index_of_transposition(g, 0, 1)});
  const auto all = everything(g);
  {
    const FiniteHeckeAlgebra alg(Rep::trivial(g, h, QQ));
    const auto t = check_tfae(alg, alg.induced().rep());
    EXPECT_TRUE(t.agree());
    EXPECT_TRUE(t.irreducible_seen);
  }
  {
    const FiniteHeckeAlgebra alg(Rep::sign(g, h, QQ));
    const auto t = check_tfae(alg, Rep::trivial(g, all, QQ));
    EXPECT_TRUE(t.agree());
    EXPECT_FALSE(t.irreducible_seen);
    const auto mixed = check_tfae(alg, direct_sum(Rep::sign(g, all, QQ), Rep::trivial(g, all, QQ)));
    EXPECT_TRUE(mixed.agree());
    EXPECT_FALSE(mixed.subreps_generated);
  }
  {
    // modular: the permutation module over F_3 has the sign as a subquotient
    const FiniteHeckeAlgebra alg(Rep::trivial(g, h, Field::prime(3)));
    const auto t = check_tfae(alg, alg.induced().rep());
    EXPECT_TRUE(t.agree());
    EXPECT_FALSE(t.irreducible_seen);
    EXPECT_EQ(v_sigma_generated(alg.induced().rep(), alg.sigma()).dim(), 3u);
  }
}

TEST(FiniteHecke, UnitAndCounit) {
  const auto g = FiniteGroup::symmetric(3);
  const auto h = g.subgroup({index_of_transposition(g, 0, 1)});
  const FiniteHeckeAlgebra alg(Rep::trivial(g, h, QQ));
  const auto xis = xi_basis(alg);
  EXPECT_TRUE(check_counit(alg, xis, alg.induced().rep()).ok());
  for (const auto& [name, w] : test_modules(alg)) {
    EXPECT_TRUE(is_right_module(alg, w)) << name;
    const auto r = check_unit(alg, xis, w);
    for (const auto& c : r.checks()) EXPECT_TRUE(c.pass) << name << ": " << c.name << " " << c.detail;
  }
  EXPECT_GE(test_modules(alg).size(), 2u);
}

TEST(FiniteHecke, Instances) {
  for (const auto& name : instance_names())
    for (std::uint32_t ell : {0u, 3u, 5u, 7u}) {
      const auto in = make_instance(name, Field::from_ell(ell));
      const auto r = run_instance(in);
      for (const auto& c : r.checks()) EXPECT_TRUE(c.pass) << name << " ell=" << ell << ": " << c.name << " " << c.detail;
    }
  EXPECT_THROW(make_instance("nope", QQ), ConfigError);
}
