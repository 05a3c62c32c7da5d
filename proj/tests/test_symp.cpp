#include <gtest/gtest.h>

#include "oracle.hpp"
#include "stabrel/symp.hpp"

using namespace stabrel;

TEST(Symp, OmegaValues) {
  Prime p(5);
  EXPECT_EQ(omega(p, {1, 0}, {0, 1}), 1u);
  EXPECT_EQ(omega(p, {0, 1}, {1, 0}), 4u);
  EXPECT_EQ(omega(p, {2, 3}, {2, 3}), 0u);
}

TEST(Symp, ComplementMatchesBruteForce) {
  std::mt19937 rng(5);
  for (Elem q : {2u, 3u}) {
    Prime p(q);
    for (std::size_t n = 1; n <= 2; ++n)
      for (int t = 0; t < 40; ++t) {
        std::vector<Vec> gens;
        for (int i = 0; i < t % 4; ++i) gens.push_back(oracle::random_vec(rng, p, 2 * n));
        Subspace l = Subspace::span(p, 2 * n, gens);
        auto c = symp_complement(l);
        EXPECT_EQ(oracle::subspace_points(c), oracle::symp_complement(p, oracle::subspace_points(l), n));
        EXPECT_EQ(symp_complement(c), l);
        EXPECT_EQ(c.dim() + l.dim(), 2 * n);
      }
  }
}

TEST(Symp, ClassifyExamples) {
  Prime p(3);
  EXPECT_EQ(classify(Subspace::span(p, 2, {{1, 0}})), SympClass::lagrangian);
  EXPECT_EQ(classify(Subspace(p, 2)), SympClass::isotropic);
  EXPECT_EQ(classify(Subspace::full(p, 2)), SympClass::coisotropic);
  EXPECT_EQ(classify(Subspace::span(p, 4, {{1, 0, 0, 0}, {0, 0, 1, 0}})), SympClass::none);
  EXPECT_EQ(classify(Subspace::span(p, 4, {{1, 1, 0, 0}})), SympClass::isotropic);
  EXPECT_EQ(classify(GradedSubspace::empty(p, 1)), SympClass::none);
  EXPECT_EQ(to_string(SympClass::lagrangian), "lagrangian");
}

TEST(Symp, ClassifyAgreesWithBruteForce) {
  std::mt19937 rng(6);
  Prime p(2);
  for (int t = 0; t < 200; ++t) {
    std::vector<Vec> gens;
    for (int i = 0; i < t % 5; ++i) gens.push_back(oracle::random_vec(rng, p, 4));
    Subspace l = Subspace::span(p, 4, gens);
    auto pl = oracle::subspace_points(l);
    auto pc = oracle::symp_complement(p, pl, 2);
    bool iso = oracle::subset(pl, pc), co = oracle::subset(pc, pl);
    SympClass expect = iso && co ? SympClass::lagrangian
                       : iso     ? SympClass::isotropic
                       : co      ? SympClass::coisotropic
                                 : SympClass::none;
    EXPECT_EQ(classify(l), expect);
  }
}

TEST(Symp, GradedShiftReduced) {
  Prime p(3);
  Subspace l = Subspace::span(p, 2, {{1, 0}});
  GradedSubspace a(l, {2, 1}), b(l, {0, 1});
  EXPECT_EQ(a, b);
  EXPECT_TRUE(a.contains({1, 1}));
  EXPECT_FALSE(a.contains({1, 0}));
  EXPECT_EQ(symp_complement(a).shift(), a.shift());
}

TEST(Symp, RandomGeneratorsHaveTheirClass) {
  std::mt19937 rng(7);
  for (Elem q : {2u, 3u, 5u}) {
    Prime p(q);
    for (int t = 0; t < 30; ++t) {
      auto iso = oracle::random_isotropic(rng, p, 3, t % 4);
      auto c = classify(iso);
      EXPECT_TRUE(c == SympClass::isotropic || c == SympClass::lagrangian);
      auto co = oracle::random_coisotropic(rng, p, 3);
      auto cc = classify(co);
      EXPECT_TRUE(cc == SympClass::coisotropic || cc == SympClass::lagrangian);
    }
  }
}
