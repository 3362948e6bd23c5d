#pragma once

// The twisted Weyl group action w o f on rational functions.
//
// Monomials follow the closed forms (q = q^d, n = n_alpha, x = x_alpha,
// p = <alpha, lambda>):
//
//   SL2:  s o x^l = x^{s l} / (1 - q^-1 x^-n)
//                   * [ (1 - q^-1) x^{p - n ceil(p/n)} + q^-1 g(Q(p-1)) (x - x^{1-n}) ]
//
//   SU3:  s o x^l = x^{s l} / ((1 - e q^-1 x^-n)(1 + e q^-2 x^-n))
//                   * [ (1 - q^-3) x^{p - 2n ceil(p/2n)} + K x^{p - e2}
//                       + q^-2 G(Q(p/2-1)) (x^2 - x^{2-2n}) ]
//
// with e = (-1)^n, K = su3_tau1_constant(e), e2 = (2 ceil((p+n-1)/2n) - 1) n.
// Both are the tau~-matrix route twisted by s; general f is handled by
// linearity over the subfield generated by the sublattice:
// w o (b f) = b(w^{-1} chi) (w o f).

#include <map>
#include <utility>
#include <vector>

#include "mpw/tau.hpp"

namespace mpw {

namespace detail {

/// Numerator bracket of the closed form, as a polynomial in x_alpha, with the
/// denominator factors; both before multiplying by x^{s lambda}.
struct SimpleClosedForm {
  LaurentPoly bracket;
  std::vector<LaurentPoly> den;
};

inline SimpleClosedForm closed_form(const MetaplecticStructure& m, int i, const LatticeVector& lambda) {
  const auto& D = m.datum();
  const int r = m.rank();
  const int d = D.marker(i).degree;
  const long n = m.n_alpha(i);
  const long Q = m.Q(i);
  const long p = D.pairing(i, lambda);
  SimpleClosedForm cf{LaurentPoly(r), {}};
  if (D.marker(i).kind == GaussKind::SL2) {
    const Scalar g = gauss_reduce(GaussSym::make(GaussKind::SL2, Q * (p - 1), m.n(), d));
    const Scalar c = qd(-1, d) * g;
    cf.bracket.add_term((p - n * ceil_div(p, n)) * LatticeVector::unit(r, i), Scalar(1) - qd(-1, d));
    cf.bracket.add_term(LatticeVector::unit(r, i), c);
    cf.bracket.add_term((1 - n) * LatticeVector::unit(r, i), -c);
    cf.den.push_back(binom(r, i, -n, -qd(-1, d)));
  } else {
    if ((Q * p) % 2 != 0) throw DomainError("SU3 action: B(alpha, lambda) must be even");
    const int e = m.eps_alpha(i);
    const long e2 = (2 * ceil_div(p + n - 1, 2 * n) - 1) * n;
    const Scalar g = gauss_reduce(GaussSym::make(GaussKind::SU3, Q * p / 2 - Q, m.n(), d));
    const Scalar c = qd(-2, d) * g;
    cf.bracket.add_term((p - 2 * n * ceil_div(p, 2 * n)) * LatticeVector::unit(r, i), Scalar(1) - qd(-3, d));
    cf.bracket.add_term((p - e2) * LatticeVector::unit(r, i), su3_tau1_constant(e, d));
    cf.bracket.add_term(2 * LatticeVector::unit(r, i), c);
    cf.bracket.add_term((2 - 2 * n) * LatticeVector::unit(r, i), -c);
    cf.den.push_back(binom(r, i, -n, Scalar(-e) * qd(-1, d)));
    cf.den.push_back(binom(r, i, -n, Scalar(e) * qd(-2, d)));
  }
  return cf;
}

}  // namespace detail

/// s_i o f.
inline RatFunc act_simple(const MetaplecticStructure& m, int i, const RatFunc& f) {
  if (i < 0 || i >= m.rank()) throw DomainError("simple reflection index out of range");
  if (f.is_zero()) return f;
  if (!f.den_supported_on(m.cosets().lattice()))
    throw DomainError("act: denominator is not supported on the sublattice");
  const LatticeMatrix& s = m.datum().simple_matrix(i);
  LaurentPoly num(m.rank());
  std::vector<LaurentPoly> den;
  // The bracket depends on lambda only through p.
  std::map<long, detail::SimpleClosedForm> cache;
  for (const auto& [lambda, c] : f.num().terms()) {
    const long p = m.datum().pairing(i, lambda);
    auto it = cache.find(p);
    if (it == cache.end()) it = cache.emplace(p, detail::closed_form(m, i, lambda)).first;
    if (den.empty()) den = it->second.den;
    num += it->second.bracket.shifted(s * lambda).scaled(c);
  }
  if (den.empty()) den = detail::closed_form(m, i, LatticeVector(m.rank())).den;
  for (const auto& [g, k] : f.den_factors())
    for (int j = 0; j < k; ++j) den.push_back(g.substituted(s));
  return RatFunc::from_factors(std::move(num), den);
}

/// w o f along the reduced word, rightmost reflection first.
inline RatFunc act(const MetaplecticStructure& m, const WeylElem& w, RatFunc f) {
  for (auto it = w.word.rbegin(); it != w.word.rend(); ++it) f = act_simple(m, *it, f);
  return f;
}

inline RatFunc act_word(const MetaplecticStructure& m, const std::vector<int>& word, RatFunc f) {
  for (auto it = word.rbegin(); it != word.rend(); ++it) f = act_simple(m, *it, f);
  return f;
}

/// w o f through the matrix route: the w-twist of sum_{a,b} Dtilde_w[a][b] pi_b(f).
inline RatFunc act_via_matrix(const MetaplecticStructure& m, const WeylElem& w, const RatFunc& f) {
  return apply(m, dtilde(m, w), f).substituted(w.matrix);
}

/// w o f for every w, indexed like datum().elements().  Uses w = s_{word[0]} * rest.
inline std::vector<RatFunc> act_all(const MetaplecticStructure& m, const RatFunc& f) {
  const auto& D = m.datum();
  std::vector<RatFunc> out(D.order());
  out[0] = f;
  for (std::size_t k = 1; k < D.order(); ++k) {
    const WeylElem& w = D.element(k);
    std::vector<int> rest(w.word.begin() + 1, w.word.end());
    out[k] = act_simple(m, w.word.front(), out[D.index_of(D.word_matrix(rest))]);
  }
  return out;
}

}  // namespace mpw
