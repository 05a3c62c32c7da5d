#include <gtest/gtest.h>

#include "oracle.hpp"
#include "stabrel/dilation.hpp"

using namespace stabrel;

namespace {

GradedRelation op_graph(Prime p, const SympOp& op, std::size_t n) {
  std::vector<Vec> images;
  for (std::size_t i = 0; i < 2 * n; ++i) {
    Vec e(2 * n, 0);
    e[i] = 1;
    images.push_back(apply(p, op, e));
  }
  return graph_of(p, n, images);
}

GradedSubspace image_state(const GradedRelation& r) {
  auto img = image(r).rel();
  if (img.is_empty()) return GradedSubspace::empty(r.field(), r.cod_types().size());
  return GradedSubspace(img.linear_part(), *img.particular_point());
}

}  // namespace

TEST(Dilation, OpsPreserveOmega) {
  std::mt19937 rng(21);
  Prime p(5);
  std::vector<SympOp> ops{{SympOp::Kind::fourier, 1, 0, 0},
                          {SympOp::Kind::controlled_add, 0, 2, 3},
                          {SympOp::Kind::shear, 2, 0, 4},
                          {SympOp::Kind::pair_shear, 1, 2, 2}};
  for (const auto& op : ops)
    for (int t = 0; t < 50; ++t) {
      Vec v = oracle::random_vec(rng, p, 6), w = oracle::random_vec(rng, p, 6);
      EXPECT_EQ(omega(p, apply(p, op, v), apply(p, op, w)), omega(p, v, w));
      EXPECT_EQ(apply_inverse(p, op, apply(p, op, v)), v);
    }
}

TEST(Dilation, RealizedOpsMatchTheirMatrices) {
  for (Elem q : {2u, 3u, 5u}) {
    Prime p(q);
    std::vector<SympOp> ops{{SympOp::Kind::fourier, 2, 0, 0},
                            {SympOp::Kind::controlled_add, 0, 2, 1},
                            {SympOp::Kind::controlled_add, 2, 1, q - 1},
                            {SympOp::Kind::shear, 1, 0, 1},
                            {SympOp::Kind::pair_shear, 0, 1, 1},
                            {SympOp::Kind::pair_shear, 2, 0, q - 1}};
    for (const auto& op : ops) EXPECT_EQ(realize(p, op, 3), op_graph(p, op, 3));
  }
}

TEST(Dilation, RepetitionCode) {
  Prime p(2);
  // S = {x : x1 = x2 = x3}: generated by all z and x = (1,1,1).
  Subspace lin = Subspace::span(p, 6, {{1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0}, {0, 0, 0, 1, 1, 1}});
  auto d = stinespring_dilate(GradedSubspace::linear(lin));
  EXPECT_EQ(d.logical_wires, std::vector<std::size_t>{0});
  EXPECT_EQ(d.ancilla_wires, (std::vector<std::size_t>{1, 2}));
  ASSERT_EQ(d.syndrome_basis.size(), 2u);
  EXPECT_EQ(d.syndrome_basis[0], (Vec{1, 1, 0, 0, 0, 0}));
  EXPECT_EQ(d.syndrome_basis[1], (Vec{1, 0, 1, 0, 0, 0}));
  EXPECT_EQ(image_state(d.encoder), GradedSubspace::linear(lin));
  EXPECT_EQ(compose(d.encoder, dagger(d.encoder)), identity(p, quantum_wires(1)));
}

TEST(Dilation, RandomCoisotropicSubspaces) {
  std::mt19937 rng(22);
  for (Elem q : {2u, 3u, 5u}) {
    Prime p(q);
    for (std::size_t n = 1; n <= 4; ++n)
      for (int t = 0; t < 12; ++t) {
        auto s = oracle::random_coisotropic(rng, p, n);
        auto d = stinespring_dilate(s);
        const std::size_t m = d.logical_wires.size();
        EXPECT_EQ(m + d.ancilla_wires.size(), n);
        EXPECT_EQ(image_state(d.encoder), s);
        EXPECT_EQ(compose(d.encoder, dagger(d.encoder)), identity(p, quantum_wires(m)));
        EXPECT_EQ(compose(d.unitary, dagger(d.unitary)), identity(p, quantum_wires(n)));
        EXPECT_EQ(classify(d.unitary), SympClass::lagrangian);
        Subspace span_b = Subspace::span(p, 2 * n, d.syndrome_basis);
        EXPECT_EQ(span_b, symp_complement(s.linear_part()));
        for (std::size_t i = 0; i + 1 < d.ancilla_wires.size(); ++i)
          EXPECT_LT(d.ancilla_wires[i], d.ancilla_wires[i + 1]);
      }
  }
}

TEST(Dilation, LagrangianGivesAState) {
  Prime p(3);
  auto s = GradedSubspace(Subspace::span(p, 2, {{0, 1}}), {2, 0});
  auto d = stinespring_dilate(s);
  EXPECT_TRUE(d.logical_wires.empty());
  EXPECT_EQ(image_state(d.encoder), s);
}

TEST(Dilation, RejectsNonCoisotropic) {
  Prime p(3);
  auto s = GradedSubspace::linear(Subspace::span(p, 4, {{1, 0, 0, 0}}));
  EXPECT_THROW(stinespring_dilate(s), std::invalid_argument);
}
