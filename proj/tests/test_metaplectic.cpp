#include <gtest/gtest.h>

#include <set>

#include "mpw/mpw.hpp"

using namespace mpw;

namespace {

// Independent oracle: Lambda by brute force over a box, using the coroot congruences.
bool in_lambda_brute(const MetaplecticStructure& m, const LatticeVector& v) {
  const auto& D = m.datum();
  const auto& pos = D.positive_coroots();
  for (std::size_t k = 0; k < pos.size(); ++k) {
    const long c = D.marker(D.coroot_orbit(k)).kind == GaussKind::SU3 ? 2 : 1;
    if (pos_mod(m.bilinear_B(pos[k], v) / c, m.n()) != 0) return false;
  }
  return true;
}

const Marker kSU3{GaussKind::SU3, 1};

}  // namespace

TEST(Metaplectic, SpecExamples) {
  const auto a1n2 = make_cover("A1", 2, {1});
  EXPECT_EQ(a1n2.cosets().size(), 1u);
  EXPECT_EQ(a1n2.n_alpha(0), 2);
  const auto a1n4 = make_cover("A1", 4, {1});
  EXPECT_EQ(a1n4.cosets().size(), 2u);
  EXPECT_EQ(a1n4.n_alpha(0), 4);
  EXPECT_TRUE(a1n4.cosets().contains(LatticeVector{2}));
  EXPECT_FALSE(a1n4.cosets().contains(LatticeVector{1}));
  EXPECT_EQ(a1n4.cosets().reps(), (std::vector<LatticeVector>{LatticeVector{0}, LatticeVector{1}}));
}

TEST(Metaplectic, DerivedCosetCounts) {
  EXPECT_EQ(make_cover("A2", 1, {1}).cosets().size(), 1u);
  EXPECT_EQ(make_cover("A2", 2, {1}).cosets().size(), 4u);
  EXPECT_EQ(make_cover("A2", 3, {1}).cosets().size(), 3u);
  EXPECT_EQ(make_cover("A2", 4, {1}).cosets().size(), 16u);
  EXPECT_EQ(make_cover("A1", 3, {2}).cosets().size(), 3u);
  EXPECT_EQ(make_cover("A1", 4, {2}).cosets().size(), 1u);
}

TEST(Metaplectic, NAlphaAndEpsilon) {
  const auto m = make_cover("A2", 4, {2});
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_EQ(m.Q_pos(k), 2);
    EXPECT_EQ(m.n_pos(k), 2);
    EXPECT_EQ(m.eps_pos(k), 1);
  }
  const auto b2 = make_cover("B2", 4, {1, 2});
  std::multiset<long> ns;
  for (std::size_t k = 0; k < 4; ++k) ns.insert(b2.n_pos(k));
  EXPECT_EQ(ns, (std::multiset<long>{2, 2, 4, 4}));
  EXPECT_EQ(make_cover("A1", 3, {1}).eps_alpha(0), -1);
}

TEST(Metaplectic, LambdaMatchesBruteForce) {
  struct Cfg {
    const char* type;
    int n;
    std::vector<long> Q;
    std::vector<Marker> markers;
  };
  const std::vector<Cfg> cfgs = {
      {"A1", 4, {1}, {}},       {"A2", 2, {1}, {}},         {"A2", 6, {1}, {}},         {"B2", 4, {1, 2}, {}},
      {"G2", 3, {3, 1}, {}},    {"A1", 2, {1}, {kSU3}},     {"A1", 4, {2}, {kSU3}},
      {"C2", 3, {4, 2}, {Marker{GaussKind::SL2, 2}, kSU3}}, {"A1xA1", 6, {1, 2}, {}},
  };
  for (const auto& c : cfgs) {
    const auto m = make_cover(c.type, c.n, c.Q, c.markers);
    const int r = m.rank();
    long count = 0, total = 0;
    LatticeVector v(r);
    // Box [0, 2n)^r holds (2n)^r / |Gamma| lattice points when Lambda contains 2n X.
    const long side = 2L * c.n;
    std::vector<long> idx(r, 0);
    for (;;) {
      for (int i = 0; i < r; ++i) v[i] = idx[i];
      const bool brute = in_lambda_brute(m, v);
      ASSERT_EQ(m.cosets().contains(v), brute) << c.type << " n=" << c.n << " " << to_string(v);
      count += brute;
      ++total;
      int i = r - 1;
      while (i >= 0 && ++idx[i] == side) idx[i--] = 0;
      if (i < 0) break;
    }
    EXPECT_EQ(count * static_cast<long>(m.cosets().size()), total) << c.type;
  }
}

TEST(Metaplectic, LambdaIsWStableAndContainsNAlphaAlpha) {
  for (const char* t : {"A1", "A2", "A3", "B2", "G2"})
    for (int n : {1, 2, 3, 4, 6}) {
      const std::vector<long> Q = std::string(t) == "B2" ? std::vector<long>{1, 2}
                                 : std::string(t) == "G2" ? std::vector<long>{3, 1}
                                                          : std::vector<long>{1};
      const auto m = make_cover(t, n, Q);
      const auto& D = m.datum();
      for (const auto& w : D.elements())
        for (const auto& b : m.cosets().lattice().basis()) ASSERT_TRUE(m.cosets().contains(w.matrix * b));
      for (std::size_t k = 0; k < D.positive_coroots().size(); ++k)
        ASSERT_TRUE(m.cosets().contains(m.n_pos(k) * D.positive_coroots()[k])) << t << " n=" << n;
      // n X is inside Lambda.
      for (int i = 0; i < D.rank(); ++i) ASSERT_TRUE(m.cosets().contains(static_cast<long>(n) * LatticeVector::unit(D.rank(), i)));
    }
}

TEST(Metaplectic, CosetRepsArePairwiseDistinct) {
  const auto m = make_cover("A2", 4, {1});
  const auto& reps = m.cosets().reps();
  for (std::size_t a = 0; a < reps.size(); ++a) {
    EXPECT_EQ(m.cosets().position(reps[a]), a);
    for (std::size_t b = a + 1; b < reps.size(); ++b) EXPECT_FALSE(m.cosets().same_coset(reps[a], reps[b]));
  }
}

TEST(Metaplectic, ConfigErrors) {
  EXPECT_THROW(make_cover("A1", 0, {1}), ConfigError);
  EXPECT_THROW(make_cover("A2", 2, {1, 2, 3}), ConfigError);
  EXPECT_THROW(make_cover("A2", 2, {0}), ConfigError);
  EXPECT_THROW(make_cover("B2", 2, {1}), ConfigError);    // not W-invariant
  EXPECT_THROW(make_cover("A2", 2, {1, 2}), ConfigError); // conjugate roots need equal Q
  try {
    make_cover("B2", 2, {1});
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "Q");
  }
}
