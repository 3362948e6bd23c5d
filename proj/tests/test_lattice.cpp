#include <gtest/gtest.h>

#include <random>
#include <set>

#include "mpw/mpw.hpp"

using namespace mpw;

namespace {

LatticeMatrix random_matrix(std::mt19937_64& rng, int r, int range) {
  std::uniform_int_distribution<long> u(-range, range);
  LatticeMatrix M(r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) M(i, j) = u(rng);
  return M;
}

long det(const LatticeMatrix& M) {
  // Laplace expansion; r <= 4.
  const int r = M.r;
  if (r == 1) return M(0, 0);
  long s = 0;
  for (int j = 0; j < r; ++j) {
    LatticeMatrix m(r - 1);
    for (int i = 1; i < r; ++i)
      for (int k = 0, c = 0; k < r; ++k)
        if (k != j) m(i - 1, c++) = M(i, k);
    s += (j % 2 ? -1 : 1) * M(0, j) * det(m);
  }
  return s;
}

}  // namespace

TEST(LatticeVector, ArithmeticAndOrder) {
  const LatticeVector a{1, -2}, b{0, 3};
  EXPECT_EQ(a + b, (LatticeVector{1, 1}));
  EXPECT_EQ(a - b, (LatticeVector{1, -5}));
  EXPECT_EQ(2 * a, (LatticeVector{2, -4}));
  EXPECT_EQ(a.max_abs(), 2);
  EXPECT_TRUE(a.lex_positive());
  EXPECT_FALSE((-a).lex_positive());
  EXPECT_LT(b, a);
  EXPECT_THROW(LatticeVector(kMaxRank + 1), UnsupportedError);
}

TEST(SmithNormalForm, RandomMatricesDecompose) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const int r = 1 + trial % 4;
    const LatticeMatrix M = random_matrix(rng, r, 6);
    const SmithForm s = smith_normal_form(M);
    const LatticeMatrix D = s.P * M * s.R;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) ASSERT_EQ(D(i, j), i == j ? s.d[i] : 0);
    ASSERT_EQ(s.P * s.Pinv, LatticeMatrix::identity(r));
    ASSERT_EQ(s.R * s.Rinv, LatticeMatrix::identity(r));
    for (int i = 0; i + 1 < r; ++i) {
      ASSERT_GE(s.d[i], 0);
      if (s.d[i] != 0) ASSERT_EQ(s.d[i + 1] % s.d[i], 0);
      else ASSERT_EQ(s.d[i + 1], 0);
    }
    long prod = 1;
    for (long x : s.d) prod *= x;
    ASSERT_EQ(prod, std::abs(det(M)));
  }
}

TEST(Sublattice, GeneratorsBelongAndIndexIsDeterminant) {
  std::mt19937_64 rng(5);
  int tested = 0;
  while (tested < 200) {
    const int r = 1 + tested % 3;
    const LatticeMatrix G = random_matrix(rng, r, 4);
    const long d = std::abs(det(G));
    if (d == 0) continue;
    std::vector<LatticeVector> gens;
    for (int j = 0; j < r; ++j) gens.push_back(G.column(j));
    const Sublattice L = Sublattice::from_generators(r, gens);
    ASSERT_EQ(L.index(), d);
    for (const auto& g : gens) ASSERT_TRUE(L.contains(g));
    for (const auto& b : L.basis()) ASSERT_TRUE(L.contains(b));
    ASSERT_TRUE(L.contains(d * LatticeVector::unit(r, 0)));
    ++tested;
  }
}

TEST(Sublattice, CosetIndicesPartitionTheBox) {
  const Sublattice L = Sublattice::from_generators(2, {LatticeVector{2, 0}, LatticeVector{1, 3}});
  ASSERT_EQ(L.index(), 6);
  std::set<long> seen;
  for (long a = 0; a < 6; ++a)
    for (long b = 0; b < 6; ++b) {
      const LatticeVector v{a, b};
      const long k = L.coset_index(v);
      ASSERT_GE(k, 0);
      ASSERT_LT(k, 6);
      seen.insert(k);
      ASSERT_EQ(L.coset_index(v + LatticeVector{2, 0}), k);
      ASSERT_EQ(L.coset_index(v - LatticeVector{1, 3}), k);
    }
  EXPECT_EQ(seen.size(), 6u);
}

TEST(Sublattice, RejectsRankDeficientGenerators) {
  EXPECT_THROW(Sublattice::from_generators(2, {LatticeVector{1, 1}, LatticeVector{2, 2}}), DomainError);
}

TEST(LaurentPoly, SubstitutionIsRingHomomorphism) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> e(-3, 3);
  std::uniform_int_distribution<int> c(-3, 3);
  const RelativeRootDatum D = build_datum("A2", {});
  auto rand_poly = [&]() {
    LaurentPoly p(2);
    for (int k = 0; k < 4; ++k) p.add_term(LatticeVector{e(rng), e(rng)}, Scalar(c(rng)) * Scalar::q_pow(c(rng)));
    return p;
  };
  for (int trial = 0; trial < 200; ++trial) {
    const LaurentPoly f = rand_poly(), g = rand_poly();
    for (const auto& w : D.elements()) {
      ASSERT_EQ((f * g).substituted(w.matrix), f.substituted(w.matrix) * g.substituted(w.matrix));
      ASSERT_EQ((f + g).substituted(w.matrix), f.substituted(w.matrix) + g.substituted(w.matrix));
      ASSERT_EQ(f.substituted(w.matrix).substituted(D.inverse(w).matrix), f);
    }
  }
}

TEST(LaurentPoly, SplitUnitNormalizes) {
  LaurentPoly p(1);
  p.add_term(LatticeVector{2}, Scalar(3));
  p.add_term(LatticeVector{4}, Scalar(-6));
  const auto [unit, rest] = p.split_unit();
  EXPECT_EQ(rest.coeff(LatticeVector{0}), Scalar(1));
  EXPECT_EQ(rest.coeff(LatticeVector{2}), Scalar(-2));
  EXPECT_EQ(unit * rest, p);
}
