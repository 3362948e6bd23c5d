#pragma once

// c-functions, the normalized spherical Whittaker value, the pipe actions,
// the p-part N(chi, lambda), and the classical (n = 1) oracle.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mpw/action.hpp"
#include "mpw/parallel.hpp"

namespace mpw {

/// unit * prod factor^k with signed multiplicities; factors normalized as in RatFunc.
class Factored {
 public:
  explicit Factored(int rank) : unit_(rank, Scalar(1)) {}

  int rank() const { return unit_.rank(); }
  const RatFunc::Factors& factors() const { return f_; }

  Factored& mul(const LaurentPoly& p, int k = 1) {
    auto [u, g] = p.split_unit();
    const auto& [e, c] = *u.terms().begin();
    for (int j = 0; j < std::abs(k); ++j)
      unit_ = k > 0 ? unit_.shifted(e).scaled(c) : unit_.shifted(-e).scaled(Scalar(1) / c);
    if (!g.is_one()) {
      int& m = f_[std::move(g)];
      m += k;
    }
    prune();
    return *this;
  }

  Factored substituted(const LatticeMatrix& M) const {
    Factored out(rank());
    out.unit_ = unit_.substituted(M);
    for (const auto& [g, k] : f_) out.mul(g.substituted(M), k);
    return out;
  }
  Factored inverse() const {
    Factored out(rank());
    const auto& [e, c] = *unit_.terms().begin();
    out.unit_ = LaurentPoly::monomial(-e, Scalar(1) / c);
    for (const auto& [g, k] : f_) out.f_[g] = -k;
    return out;
  }
  friend Factored operator*(Factored a, const Factored& b) {
    const auto& [e, c] = *b.unit_.terms().begin();
    a.unit_ = a.unit_.shifted(e).scaled(c);
    for (const auto& [g, k] : b.f_) a.f_[g] += k;
    a.prune();
    return a;
  }

  RatFunc to_ratfunc() const {
    LaurentPoly num = unit_;
    std::vector<LaurentPoly> den;
    for (const auto& [g, k] : f_) {
      for (int j = 0; j < k; ++j) num *= g;
      for (int j = 0; j < -k; ++j) den.push_back(g);
    }
    return RatFunc::from_factors(std::move(num), den);
  }

 private:
  void prune() {
    for (auto it = f_.begin(); it != f_.end();) it = it->second == 0 ? f_.erase(it) : std::next(it);
  }

  LaurentPoly unit_;
  RatFunc::Factors f_;
};

// ---------------------------------------------------------------- c-functions

/// c_{s_i}: (1 - q^-1 x^n)/(1 - x^n) for SL2, (1 + e q^-1 x^n)(1 - e q^-2 x^n)/(1 - x^{2n}) for SU3.
inline Factored c_simple_factored(const MetaplecticStructure& m, int i) {
  using detail::binom;
  using detail::qd;
  const int r = m.rank();
  const int d = m.datum().marker(i).degree;
  const long n = m.n_alpha(i);
  Factored c(r);
  if (m.datum().marker(i).kind == GaussKind::SL2) {
    c.mul(binom(r, i, n, -qd(-1, d)));
    c.mul(binom(r, i, n, Scalar(-1)), -1);
  } else {
    const Scalar e(m.eps_alpha(i));
    c.mul(binom(r, i, n, e * qd(-1, d)));
    c.mul(binom(r, i, n, -e * qd(-2, d)));
    c.mul(binom(r, i, 2 * n, Scalar(-1)), -1);
  }
  return c;
}

inline RatFunc c_simple(const MetaplecticStructure& m, int i) { return c_simple_factored(m, i).to_ratfunc(); }

/// c_w = prod_j c_{s_{i_j}}(tail_j chi), tail_j = s_{i_{j+1}} ... s_{i_k}.
inline Factored c_w_factored(const MetaplecticStructure& m, const std::vector<int>& word) {
  const auto& D = m.datum();
  Factored c(m.rank());
  LatticeMatrix tail_inv = LatticeMatrix::identity(m.rank());
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    c = c * c_simple_factored(m, *it).substituted(tail_inv);
    tail_inv = tail_inv * D.simple_matrix(*it);
  }
  return c;
}

inline RatFunc c_w(const MetaplecticStructure& m, const WeylElem& w) { return c_w_factored(m, w.word).to_ratfunc(); }

// ---------------------------------------------------------------- Whittaker value

struct WhittakerTerm {
  std::vector<int> word;
  RatFunc value;  // c_{w0}(w^{-1} chi) * (w o m_t)
};

struct WhittakerResult {
  LatticeVector lambda;
  RatFunc value;
  std::vector<WhittakerTerm> terms;
};

/// w o f for all w, computed level by level (same length in parallel).
inline std::vector<RatFunc> act_all_parallel(const MetaplecticStructure& m, const RatFunc& f, unsigned workers = worker_count()) {
  const auto& D = m.datum();
  std::vector<RatFunc> out(D.order());
  out[0] = f;
  std::map<int, std::vector<std::size_t>> levels;
  for (std::size_t k = 1; k < D.order(); ++k) levels[D.element(k).length()].push_back(k);
  for (const auto& [len, idx] : levels) {
    parallel_for(
        idx.size(),
        [&](std::size_t j) {
          const WeylElem& w = D.element(idx[j]);
          std::vector<int> rest(w.word.begin() + 1, w.word.end());
          out[idx[j]] = act_simple(m, w.word.front(), out[D.index_of(D.word_matrix(rest))]);
        },
        workers);
  }
  return out;
}

/// m_t for t = pi^lambda: the monomial x^{w0 lambda}.
inline LatticeVector m_t_exponent(const MetaplecticStructure& m, const LatticeVector& lambda) {
  return m.datum().longest().matrix * lambda;
}

inline WhittakerResult whittaker_normalized(const MetaplecticStructure& m, const LatticeVector& lambda,
                                            unsigned workers = worker_count()) {
  const auto& D = m.datum();
  if (lambda.rank() != m.rank()) throw ConfigError("lambda", "length must equal the rank " + std::to_string(m.rank()));
  WhittakerResult res{lambda, RatFunc(m.rank()), {}};
  if (!D.is_dominant(lambda)) return res;
  const std::vector<RatFunc> acts = act_all_parallel(m, RatFunc::monomial(m_t_exponent(m, lambda)), workers);
  const Factored C = c_w_factored(m, D.longest().word);
  res.terms.resize(D.order());
  parallel_for(
      D.order(),
      [&](std::size_t k) {
        const WeylElem& w = D.element(k);
        res.terms[k] = WhittakerTerm{w.word, C.substituted(w.matrix).to_ratfunc() * acts[k]};
      },
      workers);
  for (const auto& t : res.terms) res.value += t.value;
  return res;
}

// ---------------------------------------------------------------- pipe actions

/// sum_{beta in Phi(w)} n_beta beta
inline LatticeVector inversion_weight(const MetaplecticStructure& m, const WeylElem& w) {
  LatticeVector s(m.rank());
  for (const auto& b : m.datum().inversion_set(w)) s += m.n_of(b) * b;
  return s;
}

/// f || w = sgn(w) x^{-sum_{Phi(w)} n_b b} (c_{w0}(w^{-1} chi) / c_{w0}(chi)) (w o f).
/// A left action: (f || w1) || w2 = f || (w2 w1).
inline RatFunc pipe_action(const MetaplecticStructure& m, const WeylElem& w, const RatFunc& f) {
  const Factored C = c_w_factored(m, m.datum().longest().word);
  const RatFunc ratio = (C.substituted(w.matrix) * C.inverse()).to_ratfunc();
  return (ratio * act(m, w, f)).shifted(-inversion_weight(m, w)).scaled(Scalar(w.sign()));
}

/// f |_lambda w = x^{-w0 lambda} ((x^{w0 lambda} f) || w), lambda dominant.
inline RatFunc restricted_action(const MetaplecticStructure& m, const WeylElem& w, const RatFunc& f, const LatticeVector& lambda) {
  if (!m.datum().is_dominant(lambda)) throw DomainError("restricted action needs a dominant lambda");
  const LatticeVector t = m_t_exponent(m, lambda);
  return pipe_action(m, w, f.shifted(t)).shifted(-t);
}

// ---------------------------------------------------------------- p-part

inline void require_split_nodes(const MetaplecticStructure& m, const char* what) {
  for (const auto& mk : m.datum().markers())
    if (mk.kind != GaussKind::SL2) throw UnsupportedError(std::string(what) + " is defined for SL2-type nodes only");
}

/// prod_{beta > 0} (1 - q_beta^-1 x^{n_beta beta}) / (1 - x^{n_beta beta}).
inline Factored positive_product(const MetaplecticStructure& m) {
  const auto& D = m.datum();
  Factored P(m.rank());
  const auto& pos = D.positive_coroots();
  for (std::size_t k = 0; k < pos.size(); ++k) {
    const int d = D.marker(D.coroot_orbit(k)).degree;
    const LatticeVector e = m.n_pos(k) * pos[k];
    LaurentPoly num(m.rank(), Scalar(1)), den(m.rank(), Scalar(1));
    num.add_term(e, -Scalar::q_pow(-d));
    den.add_term(e, Scalar(-1));
    P.mul(num);
    P.mul(den, -1);
  }
  return P;
}

/// N(chi, lambda) = P * sum_w sgn(w) x^{sum_{Phi(w)} n_b b} (1 |_lambda w).
inline RatFunc n_poly(const MetaplecticStructure& m, const LatticeVector& lambda, unsigned workers = worker_count()) {
  require_split_nodes(m, "N(chi, lambda)");
  const auto& D = m.datum();
  if (lambda.rank() != m.rank()) throw ConfigError("lambda", "length must equal the rank " + std::to_string(m.rank()));
  if (!D.is_dominant(lambda)) throw DomainError("n_poly needs a dominant lambda");
  const RatFunc one(m.rank(), Scalar(1));
  std::vector<RatFunc> terms(D.order());
  parallel_for(
      D.order(),
      [&](std::size_t k) {
        const WeylElem& w = D.element(k);
        terms[k] = restricted_action(m, w, one, lambda).shifted(inversion_weight(m, w)).scaled(Scalar(w.sign()));
      },
      workers);
  RatFunc sum(m.rank());
  for (const auto& t : terms) sum += t;
  return positive_product(m).to_ratfunc() * sum;
}

/// whittaker_normalized(lambda) == x^{w0 lambda} N(chi, lambda), exactly.
inline bool check_final_theorem(const MetaplecticStructure& m, const LatticeVector& lambda, unsigned workers = worker_count()) {
  const RatFunc lhs = whittaker_normalized(m, lambda, workers).value;
  const RatFunc rhs = n_poly(m, lambda, workers).shifted(m_t_exponent(m, lambda));
  return lhs == rhs;
}

// ---------------------------------------------------------------- classical oracle

/// Which of prod(1 - q^-1 x^{+beta}) or prod(1 - q^-1 x^{-beta}) multiplies the character.
enum class Calibration { PositiveCoroots, NegativeCoroots };

inline const char* to_string(Calibration c) {
  return c == Calibration::PositiveCoroots ? "positive-coroots" : "negative-coroots";
}

/// Fixed once by matching (A1, n = 1, lambda = 0); see calibrate().
inline constexpr Calibration kFrozenCalibration = Calibration::PositiveCoroots;

/// Weyl character chi_lambda = sum_w sgn(w) x^{w(lambda+rho)-rho} / prod_{beta>0} (1 - x^{-beta}).
inline RatFunc weyl_character(const RelativeRootDatum& D, const LatticeVector& lambda) {
  const int r = D.rank();
  LatticeVector two_rho(r);
  for (const auto& b : D.positive_coroots()) two_rho += b;
  LaurentPoly num(r);
  for (const auto& w : D.elements()) {
    LatticeVector shift = w.matrix * two_rho - two_rho;
    for (int i = 0; i < r; ++i) shift[i] /= 2;
    num.add_term(w.matrix * lambda + shift, Scalar(w.sign()));
  }
  std::vector<LaurentPoly> den;
  for (const auto& b : D.positive_coroots()) {
    LaurentPoly f(r, Scalar(1));
    f.add_term(-b, Scalar(-1));
    den.push_back(std::move(f));
  }
  RatFunc chi = RatFunc::from_factors(std::move(num), den);
  if (!chi.is_polynomial()) throw DomainError("internal: Weyl character did not divide exactly");
  return chi;
}

inline RatFunc classical_cs_oracle(const RelativeRootDatum& D, const LatticeVector& lambda,
                                   Calibration cal = kFrozenCalibration) {
  if (!D.is_dominant(lambda)) throw DomainError("classical oracle needs a dominant lambda");
  for (const auto& mk : D.markers())
    if (mk.kind != GaussKind::SL2) throw UnsupportedError("classical oracle needs split (SL2-type) nodes");
  const int r = D.rank();
  LaurentPoly prod(r, Scalar(1));
  const auto& pos = D.positive_coroots();
  for (std::size_t k = 0; k < pos.size(); ++k) {
    LaurentPoly f(r, Scalar(1));
    f.add_term(cal == Calibration::PositiveCoroots ? pos[k] : -pos[k], -Scalar::q_pow(-D.marker(D.coroot_orbit(k)).degree));
    prod *= f;
  }
  return RatFunc(prod) * weyl_character(D, lambda);
}

/// The convention under which (A1, n = 1, lambda = 0) matches; throws if neither does.
inline Calibration calibrate() {
  const MetaplecticStructure m = make_cover("A1", 1, {1});
  const LatticeVector zero(1);
  const RatFunc w = whittaker_normalized(m, zero, 1).value;
  for (Calibration c : {Calibration::PositiveCoroots, Calibration::NegativeCoroots})
    if (w == classical_cs_oracle(m.datum(), zero, c)) return c;
  throw DomainError("calibration failed: no convention matches (A1, n = 1, lambda = 0)");
}

}  // namespace mpw
