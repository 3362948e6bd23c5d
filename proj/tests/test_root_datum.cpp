#include <gtest/gtest.h>

#include <set>

#include "mpw/mpw.hpp"

using namespace mpw;

namespace {

struct TypeFacts {
  const char* type;
  std::size_t order;
  std::size_t positive;
};

// Independent facts about finite Weyl groups: |W| and |Phi+|.
const TypeFacts kFacts[] = {
    {"A1", 2, 1},    {"A2", 6, 3},  {"A3", 24, 6},  {"A4", 120, 10}, {"B2", 8, 4},  {"C2", 8, 4},
    {"B3", 48, 9},   {"C3", 48, 9}, {"G2", 12, 6},  {"D4", 192, 12}, {"F4", 1152, 24},
    {"A1xA1", 4, 2}, {"A2xA1", 12, 4}, {"B2xA1", 16, 5},
};

}  // namespace

TEST(RootDatum, OrdersAndPositiveCoroots) {
  for (const auto& f : kFacts) {
    const RelativeRootDatum D = build_datum(f.type);
    EXPECT_EQ(D.order(), f.order) << f.type;
    EXPECT_EQ(D.positive_coroots().size(), f.positive) << f.type;
    EXPECT_EQ(static_cast<std::size_t>(D.longest().length()), f.positive) << f.type;
  }
}

TEST(RootDatum, SpecExamples) {
  const RelativeRootDatum A1 = build_datum("A1");
  EXPECT_EQ(A1.rank(), 1);
  EXPECT_EQ(A1.positive_coroots().size(), 1u);
  const RelativeRootDatum su3 = build_datum("A1", {Marker{GaussKind::SU3, 1}});
  EXPECT_EQ(su3.rank(), 1);
  EXPECT_EQ(su3.marker(0).kind, GaussKind::SU3);
}

TEST(RootDatum, Errors) {
  EXPECT_THROW(build_datum("Z3"), UnsupportedError);
  EXPECT_THROW(build_datum("A5"), UnsupportedError);
  EXPECT_THROW(build_datum("A2xA3"), UnsupportedError);
  EXPECT_THROW(build_datum("hello"), ConfigError);
  EXPECT_THROW(build_datum("F4", {}, 100), UnsupportedError);
  EXPECT_THROW(build_datum("A2", {Marker{}}), ConfigError);
  // Conjugate simple roots must carry the same marker.
  EXPECT_THROW(build_datum("A2", {Marker{GaussKind::SL2, 1}, Marker{GaussKind::SL2, 2}}), ConfigError);
}

TEST(RootDatum, ReflectionsAreInvolutionsAndBraid) {
  for (const char* t : {"A2", "B2", "G2", "A3", "C3", "B2xA1"}) {
    const RelativeRootDatum D = build_datum(t);
    const int r = D.rank();
    for (int i = 0; i < r; ++i) {
      EXPECT_EQ(D.simple_matrix(i) * D.simple_matrix(i), LatticeMatrix::identity(r));
      EXPECT_EQ(D.simple_matrix(i) * LatticeVector::unit(r, i), -LatticeVector::unit(r, i));
      for (int j = 0; j < r; ++j) {
        const int m = D.braid_order(i, j);
        LatticeMatrix p = LatticeMatrix::identity(r);
        for (int k = 0; k < m; ++k) p = p * D.simple_matrix(i) * D.simple_matrix(j);
        EXPECT_EQ(p, LatticeMatrix::identity(r)) << t << " " << i << " " << j;
      }
    }
  }
}

TEST(RootDatum, CanonicalWordsAreReducedAndDistinct) {
  for (const char* t : {"A2", "B2", "G2", "A3", "B3"}) {
    const RelativeRootDatum D = build_datum(t);
    std::set<LatticeMatrix> seen;
    for (const auto& w : D.elements()) {
      EXPECT_TRUE(seen.insert(w.matrix).second);
      EXPECT_EQ(D.word_matrix(w.word), w.matrix);
      EXPECT_EQ(static_cast<std::size_t>(w.length()), D.inversion_set(w).size()) << t;
      EXPECT_EQ(w.sign(), w.length() % 2 ? -1 : 1);
    }
    // Longest element sends every positive coroot to a negative one.
    for (const auto& b : D.positive_coroots()) EXPECT_FALSE(RelativeRootDatum::is_positive(D.longest().matrix * b));
  }
}

TEST(RootDatum, ExchangeCondition) {
  // l(s_i w) = l(w) - 1 exactly when w^{-1} alpha_i < 0.
  for (const char* t : {"A2", "B2", "G2", "A3"}) {
    const RelativeRootDatum D = build_datum(t);
    for (const auto& w : D.elements())
      for (int i = 0; i < D.rank(); ++i) {
        const WeylElem& sw = D.multiply(D.from_word({i}), w);
        const bool negative = !RelativeRootDatum::is_positive(D.inverse(w).matrix * LatticeVector::unit(D.rank(), i));
        EXPECT_EQ(sw.length() == w.length() - 1, negative);
        EXPECT_EQ(std::abs(sw.length() - w.length()), 1);
      }
  }
}

TEST(RootDatum, ReducedWordsShareLengthAndElement) {
  const RelativeRootDatum D = build_datum("A2");
  const auto words = D.reduced_words(D.longest());
  EXPECT_EQ(words.size(), 2u);  // s1 s2 s1 and s2 s1 s2
  for (const auto& w : words) {
    EXPECT_EQ(w.size(), 3u);
    EXPECT_EQ(D.word_matrix(w), D.longest().matrix);
  }
  EXPECT_EQ(build_datum("B2").reduced_words(build_datum("B2").longest()).size(), 2u);
  EXPECT_EQ(build_datum("A3").reduced_words(build_datum("A3").longest()).size(), 16u);
}

TEST(RootDatum, CorootsAreWOrbitsOfSimpleCoroots) {
  for (const char* t : {"A2", "B2", "G2", "C3"}) {
    const RelativeRootDatum D = build_datum(t);
    std::set<LatticeVector> orbit;
    for (const auto& w : D.elements())
      for (int i = 0; i < D.rank(); ++i) {
        const LatticeVector v = w.matrix * LatticeVector::unit(D.rank(), i);
        if (RelativeRootDatum::is_positive(v)) orbit.insert(v);
      }
    EXPECT_EQ(orbit, std::set<LatticeVector>(D.positive_coroots().begin(), D.positive_coroots().end())) << t;
  }
}
