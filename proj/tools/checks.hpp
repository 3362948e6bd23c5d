#pragma once

// Invariant suite behind `mpw check`.  Every check reports cases, failures and,
// for numeric checks, the largest relative deviation seen.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "mpw/mpw.hpp"

namespace mpw::cli {

struct CheckResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  double max_dev = 0.0;
  bool skipped = false;
  std::string note;
  double seconds = 0.0;
  bool passed() const { return skipped || failures == 0; }
};

struct CheckOptions {
  bool numeric = false;
  std::uint64_t seed = 1;
  int trials = 100;
  long box = 2;          // monomials x^lambda with |lambda|_inf <= box
  long dominant_box = 2; // final theorem / classical limit grid
  std::size_t max_pairs_order = 48;  // cocycle and word checks need |W| at most this
  unsigned workers = 1;
};

/// All lambda with |lambda_i| <= b.
inline std::vector<LatticeVector> box_vectors(int r, long b) {
  std::vector<LatticeVector> out;
  LatticeVector v(r);
  for (int i = 0; i < r; ++i) v[i] = -b;
  for (;;) {
    out.push_back(v);
    int i = r - 1;
    while (i >= 0 && ++v[i] > b) v[i--] = -b;
    if (i < 0) break;
  }
  return out;
}

inline bool all_sl2(const MetaplecticStructure& m) {
  for (const auto& mk : m.datum().markers())
    if (mk.kind != GaussKind::SL2) return false;
  return true;
}

/// Symbol values satisfying the relations the SU3 involution needs:
/// G(0) = -q^-d, G(n/2) = 1, G(t) G(-t) = q^d; SL2 symbols keep their character-sum values.
inline void assign_su3_involutive_values(Specialization& s, int n, int degree, std::mt19937_64& rng) {
  const double qd = std::pow(static_cast<double>(s.q()), degree);
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  for (int t = 0; t < n; ++t) {
    const GaussSym g = GaussSym::make(GaussKind::SU3, t, n, degree);
    if (t == 0) {
      s.set_symbol(g, -1.0 / qd);
    } else if (2 * t == n) {
      s.set_symbol(g, 1.0);
    } else if (t < n - t) {
      const double th = angle(rng);
      s.set_symbol(g, std::polar(std::sqrt(qd), th));
      s.set_symbol(GaussSym::make(GaussKind::SU3, n - t, n, degree), std::polar(std::sqrt(qd), -th));
    }
  }
}

class CheckRunner {
 public:
  CheckRunner(const MetaplecticStructure& m, CheckOptions opt) : m_(m), opt_(opt) {}

  std::vector<CheckResult> run() {
    const auto& D = m_.datum();
    const bool small = D.order() <= opt_.max_pairs_order;
    timed("coset_partition", [&](CheckResult& r) { coset_partition(r); });
    timed("lambda_w_stable", [&](CheckResult& r) { lambda_w_stable(r); });
    timed("n_alpha_in_lambda", [&](CheckResult& r) { n_alpha_in_lambda(r); });
    timed("involution", [&](CheckResult& r) { involution(r); });
    timed("braid", [&](CheckResult& r) { braid(r); });
    timed("route_exact", [&](CheckResult& r) { route_exact(r); });
    timed("support_law", [&](CheckResult& r) { support_law(r); });
    timed("cocycle", [&](CheckResult& r) {
      if (!small) return skip(r, "Weyl group too large for the pair sweep");
      cocycle(r);
    });
    timed("c_w_word_independence", [&](CheckResult& r) {
      if (!small) return skip(r, "Weyl group too large for the word sweep");
      word_independence(r);
    });
    timed("c_w0_positive_product", [&](CheckResult& r) { c_w0_product(r); });
    timed("dominance", [&](CheckResult& r) { dominance(r); });
    timed("final_theorem", [&](CheckResult& r) { final_theorem(r); });
    timed("classical_limit", [&](CheckResult& r) { classical_limit(r); });
    if (opt_.numeric) {
      timed("gauss_numeric", [&](CheckResult& r) { gauss_numeric(r); });
      timed("symbol_value_consistency", [&](CheckResult& r) { symbol_consistency(r); });
      timed("route_numeric", [&](CheckResult& r) { route_numeric(r); });
      timed("su3_involution_numeric", [&](CheckResult& r) { su3_involution_numeric(r); });
    }
    return std::move(results_);
  }

 private:
  void timed(const std::string& name, const std::function<void(CheckResult&)>& body) {
    CheckResult r;
    r.name = name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      body(r);
    } catch (const Error& e) {
      ++r.failures;
      r.note = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    results_.push_back(std::move(r));
  }
  static void skip(CheckResult& r, std::string why) {
    r.skipped = true;
    r.note = std::move(why);
  }
  static void tally(CheckResult& r, bool ok) {
    ++r.cases;
    if (!ok) ++r.failures;
  }

  std::vector<LatticeVector> box() const { return box_vectors(m_.rank(), opt_.box); }

  RatFunc random_poly(std::mt19937_64& rng, int terms) const {
    std::uniform_int_distribution<long> coord(-opt_.box, opt_.box), coef(-3, 3);
    LaurentPoly p(m_.rank());
    for (int k = 0; k < terms; ++k) {
      LatticeVector e(m_.rank());
      for (int i = 0; i < m_.rank(); ++i) e[i] = coord(rng);
      p.add_term(e, Scalar(coef(rng)) * Scalar::q_pow(static_cast<int>(coef(rng))));
    }
    return RatFunc(p);
  }

  void coset_partition(CheckResult& r) {
    std::mt19937_64 rng(opt_.seed);
    const CosetSpace& C = m_.cosets();
    for (int k = 0; k < 20; ++k) {
      RatFunc f = random_poly(rng, 6);
      RatFunc sum(m_.rank());
      for (const auto& rep : C.reps()) sum += project_coset(f, C.lattice(), rep);
      tally(r, sum == f);
    }
  }

  void lambda_w_stable(CheckResult& r) {
    const auto basis = m_.cosets().lattice().basis();
    for (const auto& w : m_.datum().elements())
      for (const auto& b : basis) tally(r, m_.cosets().contains(w.matrix * b));
  }

  void n_alpha_in_lambda(CheckResult& r) {
    const auto& pos = m_.datum().positive_coroots();
    for (std::size_t k = 0; k < pos.size(); ++k) tally(r, m_.cosets().contains(m_.n_pos(k) * pos[k]));
  }

  std::vector<RatFunc> test_functions() const {
    std::vector<RatFunc> fs;
    for (const auto& l : box()) fs.push_back(RatFunc::monomial(l));
    // One function with a denominator supported on the sublattice.
    const auto basis = m_.cosets().lattice().basis();
    LaurentPoly den(m_.rank(), Scalar(1));
    den.add_term(basis.front(), -Scalar::q_pow(-1));
    LaurentPoly num = LaurentPoly::monomial(LatticeVector::unit(m_.rank(), 0));
    num.add_term(LatticeVector(m_.rank()), Scalar(2));
    fs.push_back(RatFunc::fraction(num, den));
    return fs;
  }

  void involution(CheckResult& r) {
    const auto& D = m_.datum();
    bool any = false;
    for (int i = 0; i < D.rank(); ++i) {
      if (D.marker(i).kind != GaussKind::SL2) continue;
      any = true;
      for (const auto& f : test_functions()) tally(r, act_simple(m_, i, act_simple(m_, i, f)) == f);
    }
    if (!any) skip(r, "no SL2 node; SU3 involution needs symbol relations (see su3_involution_numeric)");
    else if (!all_sl2(m_)) r.note = "SL2 nodes only; SU3 nodes are covered by su3_involution_numeric";
  }

  void braid(CheckResult& r) {
    const auto& D = m_.datum();
    if (!all_sl2(m_)) return skip(r, "braid relations with SU3 nodes need symbol relations");
    for (int i = 0; i < D.rank(); ++i)
      for (int j = i + 1; j < D.rank(); ++j) {
        const int mij = D.braid_order(i, j);
        std::vector<int> a, b;
        for (int k = 0; k < mij; ++k) {
          a.push_back(k % 2 == 0 ? i : j);
          b.push_back(k % 2 == 0 ? j : i);
        }
        for (const auto& f : test_functions()) tally(r, act_word(m_, a, f) == act_word(m_, b, f));
      }
    if (D.rank() == 1) skip(r, "rank one");
  }

  void route_exact(CheckResult& r) {
    const auto& D = m_.datum();
    const bool all = D.order() <= opt_.max_pairs_order;
    for (const auto& f : test_functions()) {
      if (all) {
        for (const auto& w : D.elements()) tally(r, act(m_, w, f) == act_via_matrix(m_, w, f));
      } else {
        for (int i = 0; i < D.rank(); ++i) {
          const WeylElem& s = D.from_word({i});
          tally(r, act(m_, s, f) == act_via_matrix(m_, s, f));
        }
      }
    }
  }

  void support_law(CheckResult& r) {
    const auto& D = m_.datum();
    const CosetSpace& C = m_.cosets();
    for (int i = 0; i < D.rank(); ++i) {
      const LatticeVector a = LatticeVector::unit(m_.rank(), i);
      const long shift = D.marker(i).kind == GaussKind::SL2 ? 1 : 2;
      for (const auto& l : box()) {
        const LatticeVector sl = D.simple_matrix(i) * l;
        const RatFunc out = act_simple(m_, i, RatFunc::monomial(l));
        bool ok = true;
        for (const auto& [e, c] : out.num().terms())
          ok = ok && (C.same_coset(e, l) || C.same_coset(e, sl + shift * a));
        tally(r, ok);
      }
      // Dtilde columns: nonzero rows only at the two targets.
      const TauMatrix Dt = dtilde_simple(m_, i);
      for (std::size_t b = 0; b < C.size(); ++b) {
        auto [t1, t2] = tau_pair(m_, C.reps()[b], i);
        for (std::size_t row = 0; row < C.size(); ++row) {
          const bool target = row == C.position(t1.target) || row == C.position(t2.target);
          tally(r, target || Dt.at(row, b).is_zero());
        }
      }
    }
  }

  void cocycle(CheckResult& r) {
    // Reduced words of different shape meet in the product; with SU3 nodes that needs braid relations.
    if (!all_sl2(m_) && m_.n() > 1) return skip(r, "with SU3 nodes the cocycle needs braid relations among SU3 symbols");
    const auto& D = m_.datum();
    std::vector<TauMatrix> Dt(D.order());
    for (std::size_t k = 0; k < D.order(); ++k) Dt[k] = dtilde(m_, D.element(k));
    for (std::size_t a = 0; a < D.order(); ++a)
      for (std::size_t b = 0; b < D.order(); ++b) {
        const WeylElem& w1 = D.element(a);
        const WeylElem& w2 = D.element(b);
        const WeylElem& w = D.multiply(w1, w2);
        if (w.length() != w1.length() + w2.length()) continue;
        tally(r, Dt[D.index_of(w)] == Dt[a].substituted(D.inverse(w2).matrix) * Dt[b]);
      }
  }

  void word_independence(CheckResult& r) {
    for (const auto& w : m_.datum().elements()) {
      const RatFunc ref = c_w(m_, w);
      for (const auto& word : m_.datum().reduced_words(w)) tally(r, c_w_factored(m_, word).to_ratfunc() == ref);
    }
  }

  void c_w0_product(CheckResult& r) {
    if (!all_sl2(m_)) return skip(r, "product formula is stated for SL2 nodes");
    tally(r, c_w(m_, m_.datum().longest()) == positive_product(m_).to_ratfunc());
  }

  void dominance(CheckResult& r) {
    for (const auto& l : box()) {
      if (m_.datum().is_dominant(l)) continue;
      tally(r, whittaker_normalized(m_, l, opt_.workers).value.is_zero());
    }
  }

  std::vector<LatticeVector> dominant_grid() const {
    std::vector<LatticeVector> out;
    for (const auto& l : box_vectors(m_.rank(), opt_.dominant_box))
      if (m_.datum().is_dominant(l)) out.push_back(l);
    return out;
  }

  void final_theorem(CheckResult& r) {
    if (!all_sl2(m_)) return skip(r, "N(chi, lambda) is defined for SL2 nodes only");
    for (const auto& l : dominant_grid()) tally(r, check_final_theorem(m_, l, opt_.workers));
  }

  void classical_limit(CheckResult& r) {
    if (m_.n() != 1 || !all_sl2(m_)) return skip(r, "needs n = 1 and SL2 nodes");
    for (const auto& l : dominant_grid())
      tally(r, whittaker_normalized(m_, l, opt_.workers).value == classical_cs_oracle(m_.datum(), l));
  }

  void gauss_numeric(CheckResult& r) {
    for (long p : admissible_primes(m_.n(), 60)) {
      const FiniteField F(p, 1);
      for (int t = 0; t < m_.n(); ++t) {
        const cplx g = gauss_sl2_numeric(F, t, m_.n());
        const double dev = t == 0 ? std::abs(g + 1.0) : std::abs(std::abs(g) - std::sqrt(static_cast<double>(p)));
        r.max_dev = std::max(r.max_dev, dev);
        tally(r, dev <= kRelTol);
      }
    }
  }

  void symbol_consistency(CheckResult& r) {
    for (long p : admissible_primes(m_.n(), 60)) {
      Specialization s(p, m_.n(), std::vector<cplx>(m_.rank(), 1.0));
      const FiniteField F(p, 1);
      for (int t = 0; t < m_.n(); ++t) {
        const cplx direct = gauss_sl2_numeric(F, t, m_.n());
        const cplx canon = s.scalar(gauss_reduce(GaussSym::make(GaussKind::SL2, t, m_.n(), 1)));
        const double dev = rel_diff(direct, canon);
        r.max_dev = std::max(r.max_dev, dev);
        tally(r, dev <= kRelTol);
      }
    }
  }

  // act_simple at s chi versus sum_{a,b} tau~_{a,b}(chi) pi_b(f)(chi).
  void route_numeric(CheckResult& r) {
    const auto& D = m_.datum();
    const CosetSpace& C = m_.cosets();
    std::mt19937_64 rng(opt_.seed);
    const auto fs = test_functions();
    std::vector<TauMatrix> Dt;
    for (int i = 0; i < D.rank(); ++i) Dt.push_back(dtilde_simple(m_, i));
    std::uniform_int_distribution<std::size_t> pick(0, fs.size() - 1);
    for (int trial = 0; trial < opt_.trials; ++trial) {
      const std::uint64_t seed = rng();
      const RatFunc& f = fs[pick(rng)];
      for (int i = 0; i < D.rank(); ++i) {
        for (int attempt = 0;; ++attempt) {
          try {
            const Specialization chi = random_character(m_.rank(), m_.n(), seed + 7919u * attempt);
            const cplx lhs = specialize(act_simple(m_, i, f), chi.twisted(D.simple_matrix(i)));
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
            r.max_dev = std::max(r.max_dev, dev);
            tally(r, dev <= kRelTol);
            break;
          } catch (const ResampleError&) {
            if (attempt > 20) throw;
          }
        }
      }
    }
  }

  void su3_involution_numeric(CheckResult& r) {
    const auto& D = m_.datum();
    std::mt19937_64 rng(opt_.seed ^ 0x5u);
    bool any = false;
    for (int i = 0; i < D.rank(); ++i) {
      if (D.marker(i).kind != GaussKind::SU3) continue;
      any = true;
      for (const auto& f : test_functions()) {
        const RatFunc back = act_simple(m_, i, act_simple(m_, i, f));
        for (int t = 0; t < std::max(1, opt_.trials / 10); ++t) {
          Specialization chi = random_character(m_.rank(), m_.n(), rng());
          assign_su3_involutive_values(chi, m_.n(), D.marker(i).degree, rng);
          try {
            const double dev = rel_diff(specialize(back, chi), specialize(f, chi));
            r.max_dev = std::max(r.max_dev, dev);
            tally(r, dev <= kRelTol);
          } catch (const ResampleError&) {
          }
        }
      }
    }
    if (!any) skip(r, "no SU3 node");
  }

  const MetaplecticStructure& m_;
  CheckOptions opt_;
  std::vector<CheckResult> results_;
};

inline std::vector<CheckResult> run_checks(const MetaplecticStructure& m, const CheckOptions& opt) {
  return CheckRunner(m, opt).run();
}

}  // namespace mpw::cli
