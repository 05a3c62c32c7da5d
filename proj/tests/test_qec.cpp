#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracle.hpp"
#include "stabrel/qec.hpp"

using namespace stabrel;
namespace fs = std::filesystem;

namespace {

const fs::path fixtures = STABREL_FIXTURES_DIR;

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

StabilizerCode repetition() { return build_code(parse_code(slurp(fixtures / "repetition3.code"))); }

Vec xerr(std::size_t n, std::size_t wire, Elem a = 1) {
  Vec e(2 * n, 0);
  e[n + wire] = a;
  return e;
}

Vec zerr(std::size_t n, std::size_t wire, Elem a = 1) {
  Vec e(2 * n, 0);
  e[wire] = a;
  return e;
}

Vec add(Prime p, Vec a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = p.add(a[i], b[i]);
  return a;
}

Vec random_vec(std::mt19937& rng, Prime p, std::size_t d) {
  std::uniform_int_distribution<Elem> e(0, p.value() - 1);
  Vec v(d);
  for (auto& x : v) x = e(rng);
  return v;
}

// n - k independent, pairwise commuting generators.
StabilizerCode random_code(std::mt19937& rng, Prime p, std::size_t n, std::size_t k) {
  while (true) {
    std::vector<Vec> gens;
    for (int tries = 0; tries < 50 && gens.size() < n - k; ++tries) {
      Vec v = random_vec(rng, p, 2 * n);
      bool ok = true;
      for (const auto& g : gens) ok = ok && omega(p, g, v) == 0;
      auto trial = gens;
      trial.push_back(v);
      if (ok && Subspace::span(p, 2 * n, trial).dim() == trial.size()) gens = trial;
    }
    if (gens.size() == n - k) return code_from_generators(p, n, gens, random_vec(rng, p, n - k));
  }
}

}  // namespace

TEST(Qec, RepetitionSyndromes) {
  auto code = repetition();
  EXPECT_EQ(code.k, 1u);
  EXPECT_EQ(syndrome(code, Vec(6, 0)), (Vec{0, 0}));
  EXPECT_EQ(syndrome(code, xerr(3, 0)), (Vec{1, 1}));
  EXPECT_EQ(syndrome(code, xerr(3, 1)), (Vec{1, 0}));
  EXPECT_EQ(syndrome(code, xerr(3, 2)), (Vec{0, 1}));
  EXPECT_EQ(syndrome(code, zerr(3, 1)), (Vec{0, 0}));
}

TEST(Qec, RelationalSyndromeAgreesWithSymplecticForm) {
  auto code = repetition();
  for (const auto& e : oracle::all_vectors(code.p, 6)) EXPECT_EQ(syndrome(code, e), symplectic_syndrome(code, e));
}

TEST(Qec, UndetectableExactlyOnCodeSpace) {
  auto code = repetition();
  std::size_t count = 0;
  for (const auto& e : oracle::all_vectors(code.p, 6)) {
    EXPECT_EQ(undetectable(code, e), in_code_space(code, e)) << format_symplectic(e);
    count += undetectable(code, e);
  }
  EXPECT_EQ(count, 16u);
}

TEST(Qec, SyndromeIsLinear) {
  std::mt19937 rng(5);
  Prime p(3);
  for (int t = 0; t < 4; ++t) {
    auto code = random_code(rng, p, 3, 1);
    for (int s = 0; s < 6; ++s) {
      Vec a = random_vec(rng, p, 6), b = random_vec(rng, p, 6);
      EXPECT_EQ(syndrome(code, add(p, a, b)), add(p, syndrome(code, a), syndrome(code, b)));
    }
  }
}

TEST(Qec, RandomCodesMatchSymplecticSyndrome) {
  std::mt19937 rng(17);
  Prime p(3);
  for (int t = 0; t < 6; ++t) {
    auto code = random_code(rng, p, 3, 1);
    EXPECT_EQ(code.syndrome_size(), 2u);
    EXPECT_EQ(classify(code.subspace), SympClass::coisotropic);
    for (int s = 0; s < 10; ++s) {
      Vec e = random_vec(rng, p, 6);
      EXPECT_EQ(syndrome(code, e), symplectic_syndrome(code, e));
      EXPECT_EQ(undetectable(code, e), in_code_space(code, e));
    }
  }
}

TEST(Qec, GeneratorPhasesFixTheShift) {
  Prime p(3);
  std::vector<Vec> gens{{1, 2, 0, 0, 0, 0}, {0, 0, 0, 1, 1, 1}};
  auto code = code_from_generators(p, 3, gens, {2, 1});
  const Vec& a = code.subspace.shift();
  EXPECT_EQ(omega(p, gens[0], a), 2u);
  EXPECT_EQ(omega(p, gens[1], a), 1u);
  EXPECT_THROW(code_from_generators(p, 3, {{1, 0, 0, 0, 0, 0}, {0, 0, 0, 1, 0, 0}}, {0, 0}), std::invalid_argument);
}

TEST(Qec, WeightOneCorrectedWeightTwoNot) {
  auto code = repetition();
  auto table = parse_table(code.p, 3, 2, slurp(fixtures / "repetition3.table"));
  auto w1 = verify_correction(code, parse_errors(code.p, 3, slurp(fixtures / "repetition3_weight1.errors")), table);
  EXPECT_TRUE(w1.all_pass());
  EXPECT_EQ(w1.branches.size(), 4u);
  auto w2 = verify_correction(code, {xerr(3, 0)}, table);
  EXPECT_TRUE(w2.all_pass());
  auto both = verify_correction(code, {add(code.p, xerr(3, 0), xerr(3, 1))}, table);
  ASSERT_EQ(both.branches.size(), 1u);
  EXPECT_FALSE(both.branches[0].pass);
  EXPECT_EQ(both.branches[0].syndrome, (Vec{0, 1}));
}

TEST(Qec, MissingTableEntryFails) {
  auto code = repetition();
  CorrectionTable t;
  t.entries[{0, 0}] = Vec(6, 0);
  auto rep = verify_correction(code, {Vec(6, 0), xerr(3, 2)}, t);
  EXPECT_TRUE(rep.branches[0].pass);
  EXPECT_FALSE(rep.branches[1].pass);
  EXPECT_EQ(rep.branches[1].reason, "no table entry for syndrome (0,1)");
}

TEST(Qec, EmptyErrorSetPasses) {
  auto rep = verify_correction(repetition(), {}, CorrectionTable{});
  EXPECT_TRUE(rep.branches.empty());
  EXPECT_TRUE(rep.all_pass());
}

TEST(Qec, TrivialCodeHasNoSyndrome) {
  Prime p(3);
  auto code = code_from_subspace(GradedSubspace::linear(Subspace::full(p, 4)));
  EXPECT_EQ(code.k, 2u);
  EXPECT_EQ(syndrome(code, {1, 2, 0, 1}), Vec{});
  EXPECT_EQ(measurement_circuit(code), identity(p, quantum_wires(2)));
  EXPECT_FALSE(verify_correction(code, {{1, 0, 0, 0}}, CorrectionTable{{{Vec{}, Vec(4, 0)}}}).all_pass());
  EXPECT_TRUE(verify_correction(code, {Vec(4, 0)}, CorrectionTable{{{Vec{}, Vec(4, 0)}}}).all_pass());
}

TEST(Qec, MeasurementIsRepeatable) {
  for (Elem q : {2u, 3u}) {
    std::mt19937 rng(q);
    auto code = random_code(rng, Prime(q), 3, 1);
    const Prime p = code.p;
    const std::size_t n = code.n, r = code.syndrome_size();
    GradedRelation m = measurement_circuit(code);
    Network twice(p), copied(p);
    auto in1 = add_ports(twice, quantum_wires(n));
    auto mid = add_ports(twice, quantum_wires(n));
    auto c1 = add_ports(twice, classical_wires(r));
    auto out1 = add_ports(twice, quantum_wires(n));
    auto c2 = add_ports(twice, classical_wires(r));
    auto join = [](std::vector<Port> a, const std::vector<Port>& b) {
      a.insert(a.end(), b.begin(), b.end());
      return a;
    };
    attach(twice, m, in1, join(mid, c1));
    attach(twice, m, mid, join(out1, c2));
    auto in2 = add_ports(copied, quantum_wires(n));
    auto out2 = add_ports(copied, quantum_wires(n));
    auto c = add_ports(copied, classical_wires(r));
    auto d1 = add_ports(copied, classical_wires(r));
    auto d2 = add_ports(copied, classical_wires(r));
    attach(copied, m, in2, join(out2, c));
    for (std::size_t i = 0; i < r; ++i) attach(copied, cl_z_spider(p, 1, 2), {c[i]}, {d1[i], d2[i]});
    EXPECT_EQ(project(twice, in1, join(join(out1, c1), c2)), project(copied, in2, join(join(out2, d1), d2)));
  }
}

TEST(Qec, DecodedWeylShiftCarriesTheSyndrome) {
  std::mt19937 rng(23);
  for (Elem q : {2u, 3u, 5u}) {
    Prime p(q);
    auto code = random_code(rng, p, 3, 1);
    const GradedRelation& u = code.dilation.unitary;
    for (int t = 0; t < 5; ++t) {
      Vec e = random_vec(rng, p, 6);
      GradedRelation conj = compose_all({u, weyl(p, Vec(e.begin(), e.begin() + 3), Vec(e.begin() + 3, e.end())), dagger(u)});
      EXPECT_EQ(conj.rel().linear_part(), identity(p, quantum_wires(3)).rel().linear_part());
      Vec pt = *conj.rel().particular_point();
      Vec shift(6);
      for (std::size_t i = 0; i < 6; ++i) shift[i] = p.sub(pt[6 + i], pt[i]);
      EXPECT_EQ(conj, weyl(p, Vec(shift.begin(), shift.begin() + 3), Vec(shift.begin() + 3, shift.end())));
      Vec d = symplectic_syndrome(code, e);
      for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(shift[3 + code.k + i], d[i]);
    }
  }
}

TEST(Qec, AffineFit) {
  Prime p(3);
  CorrectionTable t;
  t.entries[{0}] = {0, 0};
  t.entries[{1}] = {1, 2};
  t.entries[{2}] = {2, 1};
  auto f = affine_fit(p, 1, 1, t);
  ASSERT_TRUE(f);
  for (const auto& [d, c] : t.entries) EXPECT_EQ((*f)(d), c);
  t.entries[{2}] = {2, 2};
  EXPECT_FALSE(affine_fit(p, 1, 1, t));
  auto rep = affine_fit(Prime(2), 3, 2, parse_table(Prime(2), 3, 2, slurp(fixtures / "repetition3.table")));
  EXPECT_FALSE(rep);
}

TEST(Qec, AffineProtocolMatchesBranches) {
  std::mt19937 rng(41);
  for (Elem q : {2u, 3u}) {
    Prime p(q);
    for (int t = 0; t < 3; ++t) {
      auto code = random_code(rng, p, 3, 1);
      FpMatrix m(p, 6, 2);
      for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 2; ++j) m.set(i, j, random_vec(rng, p, 1)[0]);
      AffineMap f{m, random_vec(rng, p, 6)};
      for (int s = 0; s < 4; ++s) {
        Vec e = random_vec(rng, p, 6);
        Vec d = syndrome(code, e);
        EXPECT_EQ(protocol_with_error(code, f, e), branch_relation(code, e, f(d)));
      }
    }
  }
}

TEST(Qec, LinearZShiftCode) {
  Prime p(3);
  auto code = code_from_generators(p, 3, {{0, 0, 0, 1, 2, 0}, {0, 0, 0, 0, 1, 2}}, {0, 0});
  std::vector<Vec> errors{Vec(6, 0)};
  for (Elem a : {1u, 2u})
    for (std::size_t w : {0u, 1u}) errors.push_back(zerr(3, w, a));
  CorrectionTable t;
  for (const auto& e : errors) {
    Vec d = syndrome(code, e);
    ASSERT_FALSE(t.entries.count(d));
    t.entries[d] = e;
  }
  EXPECT_TRUE(verify_correction(code, errors, t).all_pass());
  auto f = affine_fit(p, 3, 2, t);
  ASSERT_TRUE(f);
  for (const auto& e : errors)
    EXPECT_EQ(protocol_with_error(code, *f, e),
              tensor(identity(p, quantum_wires(1)), cl_point(p, syndrome(code, e))));
  EXPECT_NE(protocol_with_error(code, *f, zerr(3, 2)),
            tensor(identity(p, quantum_wires(1)), cl_point(p, syndrome(code, zerr(3, 2)))));
}

TEST(Qec, FileFormats) {
  Prime p(5);
  EXPECT_EQ(parse_symplectic(p, 2, "1 -1 | 0 4"), (Vec{1, 4, 0, 4}));
  EXPECT_THROW(parse_symplectic(p, 2, "1 1 0 | 0 0"), std::invalid_argument);
  EXPECT_EQ(format_tuple({1, 0}), "(1,0)");
  EXPECT_EQ(format_symplectic({0, 0, 0, 1, 0, 0}), "(0,0,0|1,0,0)");
  auto s = parse_subspace(slurp(fixtures / "shifted_lagrangian.subspace"));
  EXPECT_EQ(classify(s.subspace), SympClass::lagrangian);
  EXPECT_TRUE(s.subspace.contains({0, 0, 2, 0}));
  EXPECT_FALSE(s.subspace.contains({0, 0, 0, 0}));
  try {
    parse_code("p=2\nn=3\nk=1\n1 1 0 | 0 0\n");
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_EQ(std::string(e.what()).rfind("line 4: ", 0), 0u);
  }
  EXPECT_THROW(build_code(parse_code("p=2\nn=3\nk=2\n1 1 0 | 0 0 0\n1 0 1 | 0 0 0\n")), std::invalid_argument);
}
