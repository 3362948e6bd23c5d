// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Tolerances and time budgets are pinned below and never read from the environment.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "checks.hpp"
#include "mpw/mpw.hpp"

using namespace mpw;

namespace {

constexpr double kRouteRelTol = 1e-9;
constexpr double kGaussAbsTol = 1e-9;
constexpr int kRouteTrials = 100;
constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

std::vector<LatticeVector> box(int r, long b) { return cli::box_vectors(r, b); }

std::vector<LatticeVector> dominant(const RelativeRootDatum& D, long b) {
  std::vector<LatticeVector> out;
  for (const auto& l : box(D.rank(), b))
    if (D.is_dominant(l)) out.push_back(l);
  return out;
}

RatFunc fraction(std::initializer_list<std::pair<long, Scalar>> num, std::initializer_list<std::pair<long, Scalar>> den) {
  LaurentPoly a(1), b(1);
  for (const auto& [e, c] : num) a.add_term(LatticeVector{e}, c);
  for (const auto& [e, c] : den) b.add_term(LatticeVector{e}, c);
  return RatFunc::fraction(a, b);
}

// 1: c_simple against hand-encoded golden rank-one forms.
Outcome c1_gindikin_karpelevic() {
  Outcome o;
  const Scalar one(1), qi = Scalar::q_pow(-1), qi2 = Scalar::q_pow(-2);
  for (long na : {1L, 2L, 3L}) {
    const auto m = make_cover("A1", static_cast<int>(na), {1});
    const RatFunc golden = fraction({{0, one}, {na, -qi}}, {{0, one}, {na, Scalar(-1)}});
    o.require(c_simple(m, 0) == golden, "SL2 n_alpha=" + std::to_string(na));
  }
  const Marker su3{GaussKind::SU3, 1};
  {
    // n_alpha = 1: (1 - q^-1 x)(1 + q^-2 x) / (1 - x^2).
    const auto m = make_cover("A1", 1, {1}, {su3});
    const RatFunc golden = fraction({{0, one}, {1, -qi}}, {{0, one}, {2, Scalar(-1)}}) * fraction({{0, one}, {1, qi2}}, {{0, one}});
    o.require(c_simple(m, 0) == golden, "SU3 n_alpha=1");
  }
  {
    // n_alpha = 2: (1 + q^-1 x^2)(1 - q^-2 x^2) / (1 - x^4).
    const auto m = make_cover("A1", 2, {1}, {su3});
    const RatFunc golden = fraction({{0, one}, {2, qi}}, {{0, one}, {4, Scalar(-1)}}) * fraction({{0, one}, {2, -qi2}}, {{0, one}});
    o.require(c_simple(m, 0) == golden, "SU3 n_alpha=2");
  }
  return o;
}

// 2: s o s o f = f and the A2 braid identity on monomials, |lambda|_inf <= 3.
Outcome c2_action_axioms() {
  Outcome o;
  for (int n : {1, 2, 3})
    for (long Q : {1L, 2L})
      for (const char* t : {"A1", "A2"}) {
        const auto m = make_cover(t, n, {Q});
        for (const auto& l : box(m.rank(), 3)) {
          const RatFunc f = RatFunc::monomial(l);
          const std::string at = std::string(t) + " n=" + std::to_string(n) + " Q=" + std::to_string(Q) + " " + to_string(l);
          for (int i = 0; i < m.rank(); ++i) o.require(act_simple(m, i, act_simple(m, i, f)) == f, "involution " + at);
          if (m.rank() == 2) o.require(act_word(m, {0, 1, 0}, f) == act_word(m, {1, 0, 1}, f), "braid " + at);
        }
      }
  return o;
}

// 3: Dtilde_{w1 w2} = Dtilde_{w1}^{w2} Dtilde_{w2} on length-additive pairs.
Outcome c3_cocycle() {
  Outcome o;
  for (const char* t : {"A1", "A2"})
    for (int n : {2, 4}) {
      const auto m = make_cover(t, n, {1});
      const auto& D = m.datum();
      std::vector<TauMatrix> Dt;
      for (const auto& w : D.elements()) Dt.push_back(dtilde(m, w));
      for (std::size_t a = 0; a < D.order(); ++a)
        for (std::size_t b = 0; b < D.order(); ++b) {
          const WeylElem& w = D.multiply(D.element(a), D.element(b));
          if (w.length() != D.element(a).length() + D.element(b).length()) continue;
          o.require(Dt[D.index_of(w)] == Dt[a].substituted(D.inverse(D.element(b)).matrix) * Dt[b],
                    std::string(t) + " n=" + std::to_string(n));
        }
    }
  return o;
}

// 4: closed-form act_simple at s chi versus the tau~-matrix action, numerically.
Outcome c4_route_consistency() {
  Outcome o;
  struct Cfg {
    const char* type;
    int n;
    std::vector<long> Q;
    std::vector<Marker> markers;
  };
  const Marker su3{GaussKind::SU3, 1};
  std::vector<Cfg> cfgs = {{"A2", 2, {1}, {}}, {"A2", 3, {1}, {}}};
  for (int n : {1, 2, 3, 4})
    for (long Q : {1L, 2L}) cfgs.push_back({"A1", n, {Q}, {su3}});
  for (int n : {1, 2, 3}) cfgs.push_back({"C2", n, {4, 2}, {Marker{GaussKind::SL2, 2}, su3}});

  double worst = 0.0;
  for (const auto& c : cfgs) {
    const auto m = make_cover(c.type, c.n, c.Q, c.markers);
    const auto& D = m.datum();
    const CosetSpace& C = m.cosets();
    std::vector<TauMatrix> Dt;
    for (int i = 0; i < D.rank(); ++i) Dt.push_back(dtilde_simple(m, i));
    std::mt19937_64 rng(kSeed);
    std::uniform_int_distribution<long> coord(-3, 3);
    int done = 0;
    for (int attempt = 0; done < kRouteTrials && attempt < 20 * kRouteTrials; ++attempt) {
      LatticeVector l(m.rank());
      for (int i = 0; i < m.rank(); ++i) l[i] = coord(rng);
      const RatFunc f = RatFunc::monomial(l) + RatFunc::monomial(LatticeVector(m.rank()), Scalar::q_pow(-1));
      const Specialization chi = random_character(m.rank(), m.n(), rng());
      try {
        for (int i = 0; i < D.rank(); ++i) {
          const cplx lhs = specialize(act_simple(m, i, f), chi.twisted(D.simple_matrix(i)));
          cplx rhs = 0;
          for (std::size_t b = 0; b < C.size(); ++b) {
            const RatFunc part = project_coset(f, C.lattice(), C.reps()[b]);
            if (part.is_zero()) continue;
            cplx col = 0;
            for (std::size_t a = 0; a < C.size(); ++a)
              if (!Dt[i].at(a, b).is_zero()) col += specialize(Dt[i].at(a, b), chi);
            rhs += col * specialize(part, chi);
          }
          const double dev = rel_diff(lhs, rhs);
          worst = std::max(worst, dev);
          o.require(dev <= kRouteRelTol, std::string(c.type) + " n=" + std::to_string(c.n) + " dev=" + std::to_string(dev));
        }
        ++done;
      } catch (const ResampleError&) {
      }
    }
    o.require(done >= kRouteTrials, std::string(c.type) + " n=" + std::to_string(c.n) + ": too many resamples");
  }
  if (o.ok) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%zu configs, max rel dev %.2e", cfgs.size(), worst);
    o.detail = buf;
  }
  return o;
}

// 5: n = 1 Whittaker values equal the Weyl-character oracle after calibration.
Outcome c5_classical_limit() {
  Outcome o;
  const Calibration cal = calibrate();
  o.require(cal == kFrozenCalibration, "calibration differs from the frozen convention");
  for (const char* t : {"A1", "A2"}) {
    const auto m = make_cover(t, 1, {1});
    for (const auto& l : dominant(m.datum(), 3))
      o.require(whittaker_normalized(m, l).value == classical_cs_oracle(m.datum(), l, cal), std::string(t) + " " + to_string(l));
  }
  return o;
}

// 6: W = x^{w0 lambda} N with N a polynomial, on the dominant grid.
Outcome c6_final_theorem() {
  Outcome o;
  for (const char* t : {"A1", "A2"})
    for (int n : {1, 2}) {
      const auto m = make_cover(t, n, {1});
      for (const auto& l : dominant(m.datum(), 2))
        o.require(check_final_theorem(m, l), std::string(t) + " n=" + std::to_string(n) + " " + to_string(l));
    }
  return o;
}

// 7: g(t) = -1 for n | t and |g(t)| = sqrt(q) otherwise.
Outcome c7_gauss_facts() {
  Outcome o;
  for (long q : {5L, 13L, 17L}) {
    const FiniteField F(q, 1);
    for (int n = 1; n <= 4; ++n) {
      if ((q - 1) % n != 0) continue;
      for (long t = -n; t <= 2 * n; ++t) {
        const cplx g = gauss_sl2_numeric(F, t, n);
        const double dev = pos_mod(t, n) == 0 ? std::abs(g + 1.0) : std::abs(std::abs(g) - std::sqrt(static_cast<double>(q)));
        o.require(dev <= kGaussAbsTol, "q=" + std::to_string(q) + " n=" + std::to_string(n) + " t=" + std::to_string(t));
      }
    }
  }
  return o;
}

// 8: "0 unless" support laws for tau, the action and the Whittaker function.
Outcome c8_support_laws() {
  Outcome o;
  for (const char* t : {"A1", "A2"})
    for (int n : {1, 2, 3, 4}) {
      const auto m = make_cover(t, n, {1});
      const auto& D = m.datum();
      const CosetSpace& C = m.cosets();
      const std::string at = std::string(t) + " n=" + std::to_string(n);
      for (int i = 0; i < D.rank(); ++i) {
        const LatticeVector a = LatticeVector::unit(m.rank(), i);
        // tau^1 targets the coset of nu, tau^2 that of s nu + alpha.
        for (const auto& nu : box(m.rank(), 3)) {
          const auto [t1, t2] = tau_sl2(m, nu, i);
          o.require(C.same_coset(t1.target, nu), "tau1 target " + at);
          o.require(C.same_coset(t2.target, D.simple_matrix(i) * nu + a), "tau2 target " + at);
          const RatFunc out = act_simple(m, i, RatFunc::monomial(nu));
          for (const auto& [e, c] : out.num().terms())
            o.require(C.same_coset(e, nu) || C.same_coset(e, D.simple_matrix(i) * nu + a), "action support " + at);
        }
        const TauMatrix S = dtilde_simple(m, i);
        for (std::size_t b = 0; b < C.size(); ++b) {
          const auto [t1, t2] = tau_sl2(m, C.reps()[b], i);
          for (std::size_t row = 0; row < C.size(); ++row)
            if (row != C.position(t1.target) && row != C.position(t2.target))
              o.require(S.at(row, b).is_zero(), "dtilde support " + at);
        }
      }
      for (const auto& l : box(m.rank(), 2)) {
        const RatFunc w = whittaker_normalized(m, l).value;
        if (!D.is_dominant(l)) o.require(w.is_zero(), "dominance " + at + " " + to_string(l));
      }
    }
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "gindikin-karpelevic forms", 1.0, c1_gindikin_karpelevic},
      {2, "action axioms", 60.0, c2_action_axioms},
      {3, "cocycle identity", 30.0, c3_cocycle},
      {4, "route consistency", 60.0, c4_route_consistency},
      {5, "classical limit", 30.0, c5_classical_limit},
      {6, "final theorem", 120.0, c6_final_theorem},
      {7, "gauss facts", 1.0, c7_gauss_facts},
      {8, "support laws", 30.0, c8_support_laws},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.budget_seconds;
    const bool pass = o.ok && in_time;
    if (!pass) ++failed;
    std::string detail = o.detail;
    if (!in_time) detail += (detail.empty() ? "" : "; ") + std::string("over time budget");
    std::printf("%s criterion %d %s (%.3f s / %.0f s)%s%s\n", pass ? "PASS" : "FAIL", c.id, c.name, secs, c.budget_seconds,
                detail.empty() ? "" : ": ", detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
