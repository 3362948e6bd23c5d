#pragma once

// Rank-one tau coefficients and the normalized matrices Dtilde_w.
//
// For a simple coroot alpha = e_i and a coset representative mu, with
// p = <alpha, mu> = B(alpha, mu) / Q(alpha), the nonzero coefficients sit at
//   tau1: target mu            (= s mu + p alpha)
//   tau2: target s mu + alpha  (SL2)  or  s mu + 2 alpha  (SU3).
// The normalized entry is tau~ = x^{s^{-1} target - mu} * tau, i.e. x_alpha^{-p}
// for tau1 and x_alpha^{-1} (SL2) or x_alpha^{-2} (SU3) for tau2.
// Every q below stands for q^d, d the residue degree of the node.

#include <string>
#include <utility>
#include <vector>

#include "mpw/metaplectic.hpp"
#include "mpw/ratfunc.hpp"

namespace mpw {

enum class TauKind { TAU1, TAU2 };

struct TauPair {
  LatticeVector target;
  RatFunc coeff;
  TauKind kind;
};

namespace detail {

/// 1 + c x_alpha^k in rank r.
inline LaurentPoly binom(int r, int i, long k, const Scalar& c) {
  LaurentPoly p(r, Scalar(1));
  p.add_term(k * LatticeVector::unit(r, i), c);
  return p;
}

inline LaurentPoly xpow(int r, int i, long k, const Scalar& c = Scalar(1)) {
  return LaurentPoly::monomial(k * LatticeVector::unit(r, i), c);
}

struct RankOneData {
  int r, i, d;
  long n_a, Q, p, B;
  int eps;
};

inline RankOneData rank_one(const MetaplecticStructure& m, const LatticeVector& mu, int i, GaussKind expect) {
  const auto& D = m.datum();
  if (i < 0 || i >= D.rank()) throw DomainError("simple root index out of range");
  if (D.marker(i).kind != expect)
    throw DomainError(std::string("node ") + std::to_string(i) + " is not marked " + to_string(expect));
  RankOneData o{};
  o.r = D.rank();
  o.i = i;
  o.d = D.marker(i).degree;
  o.n_a = m.n_alpha(i);
  o.Q = m.Q(i);
  o.p = D.pairing(i, mu);
  o.B = o.Q * o.p;
  o.eps = m.eps_alpha(i);
  return o;
}

inline Scalar qd(int k, int d) { return Scalar::q_pow(k * d); }

}  // namespace detail

/// Coefficient constant of the second tau1 monomial in the SU3 case.
inline Scalar su3_tau1_constant(int eps, int d) {
  return Scalar(-eps) * (detail::qd(-1, d) - detail::qd(-2, d));
}

inline std::pair<TauPair, TauPair> tau_sl2(const MetaplecticStructure& m, const LatticeVector& mu, int i) {
  using namespace detail;
  const RankOneData o = rank_one(m, mu, i, GaussKind::SL2);
  const LatticeVector a = LatticeVector::unit(o.r, i);
  const LatticeVector smu = mu - o.p * a;
  const LaurentPoly den = binom(o.r, i, o.n_a, -qd(-1, o.d));
  const Scalar g = gauss_reduce(GaussSym::make(GaussKind::SL2, o.B - o.Q, m.n(), o.d));

  RatFunc t1 = RatFunc::fraction(xpow(o.r, i, o.n_a * ceil_div(o.p, o.n_a), Scalar(1) - qd(-1, o.d)), den);
  RatFunc t2 = RatFunc::fraction(binom(o.r, i, o.n_a, Scalar(-1)).scaled(qd(-1, o.d) * g), den);
  return {TauPair{smu + o.p * a, std::move(t1), TauKind::TAU1}, TauPair{smu + a, std::move(t2), TauKind::TAU2}};
}

inline std::pair<TauPair, TauPair> tau_su3(const MetaplecticStructure& m, const LatticeVector& mu, int i) {
  using namespace detail;
  const RankOneData o = rank_one(m, mu, i, GaussKind::SU3);
  if (o.B % 2 != 0) throw DomainError("tau_su3: B(alpha, mu) must be even");
  const LatticeVector a = LatticeVector::unit(o.r, i);
  const LatticeVector smu = mu - o.p * a;
  const long n = o.n_a;
  const Scalar eps(o.eps);
  const std::vector<LaurentPoly> den = {binom(o.r, i, n, -eps * qd(-1, o.d)), binom(o.r, i, n, eps * qd(-2, o.d))};
  const long e1 = 2 * n * ceil_div(o.B, 2 * n * o.Q);
  const long e2 = (2 * ceil_div(o.B + n * o.Q - o.Q, 2 * n * o.Q) - 1) * n;
  const Scalar g = gauss_reduce(GaussSym::make(GaussKind::SU3, o.B / 2 - o.Q, m.n(), o.d));

  LaurentPoly num1 = xpow(o.r, i, e1, Scalar(1) - qd(-3, o.d));
  num1 += xpow(o.r, i, e2, su3_tau1_constant(o.eps, o.d));
  RatFunc t1 = RatFunc::from_factors(std::move(num1), den);
  RatFunc t2 = RatFunc::from_factors(binom(o.r, i, 2 * n, Scalar(-1)).scaled(qd(-2, o.d) * g), den);
  return {TauPair{smu + o.p * a, std::move(t1), TauKind::TAU1}, TauPair{smu + 2 * a, std::move(t2), TauKind::TAU2}};
}

inline std::pair<TauPair, TauPair> tau_pair(const MetaplecticStructure& m, const LatticeVector& mu, int i) {
  return m.datum().marker(i).kind == GaussKind::SL2 ? tau_sl2(m, mu, i) : tau_su3(m, mu, i);
}

/// tau~ = x^{s(target) - mu} * tau for a simple reflection.
inline RatFunc tau_tilde(const MetaplecticStructure& m, const TauPair& t, const LatticeVector& mu, int i) {
  const LatticeVector s_target = m.datum().simple_matrix(i) * t.target;
  return t.coeff.shifted(s_target - mu);
}

/// Gamma x Gamma matrix; rows and columns follow cosets().reps().
class TauMatrix {
 public:
  TauMatrix() = default;
  TauMatrix(std::size_t size, int rank) : size_(size), e_(size * size, RatFunc(rank)) {}
  static TauMatrix identity(std::size_t size, int rank) {
    TauMatrix t(size, rank);
    for (std::size_t k = 0; k < size; ++k) t.at(k, k) = RatFunc(rank, Scalar(1));
    return t;
  }

  std::size_t size() const { return size_; }
  const RatFunc& at(std::size_t a, std::size_t b) const { return e_[a * size_ + b]; }
  RatFunc& at(std::size_t a, std::size_t b) { return e_[a * size_ + b]; }

  TauMatrix substituted(const LatticeMatrix& M) const {
    TauMatrix out = *this;
    for (auto& x : out.e_)
      if (!x.is_zero()) x = x.substituted(M);
    return out;
  }

  friend TauMatrix operator*(const TauMatrix& A, const TauMatrix& B) {
    const std::size_t n = A.size_;
    TauMatrix C(n, A.e_.empty() ? 0 : A.e_[0].rank());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        const RatFunc& a = A.at(i, k);
        if (a.is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j) {
          const RatFunc& b = B.at(k, j);
          if (!b.is_zero()) C.at(i, j) += a * b;
        }
      }
    return C;
  }

  friend bool operator==(const TauMatrix& A, const TauMatrix& B) {
    if (A.size_ != B.size_) return false;
    for (std::size_t k = 0; k < A.e_.size(); ++k)
      if (!(A.e_[k] == B.e_[k])) return false;
    return true;
  }

 private:
  std::size_t size_ = 0;
  std::vector<RatFunc> e_;
};

inline TauMatrix dtilde_simple(const MetaplecticStructure& m, int i) {
  const CosetSpace& C = m.cosets();
  TauMatrix D(C.size(), m.rank());
  for (std::size_t b = 0; b < C.size(); ++b) {
    const LatticeVector& mu = C.reps()[b];
    auto [t1, t2] = tau_pair(m, mu, i);
    for (const TauPair* t : {&t1, &t2}) {
      if (t->coeff.is_zero()) continue;
      D.at(C.position(t->target), b) += tau_tilde(m, *t, mu, i);
    }
  }
  return D;
}

/// Dtilde along the canonical reduced word:
/// Dtilde_{w1 w2}(chi) = Dtilde_{w1}(w2 chi) Dtilde_{w2}(chi).
inline TauMatrix dtilde(const MetaplecticStructure& m, const WeylElem& w) {
  const auto& D = m.datum();
  TauMatrix out = TauMatrix::identity(m.cosets().size(), m.rank());
  LatticeMatrix tail_inv = LatticeMatrix::identity(m.rank());  // matrix of tail^{-1}
  for (auto it = w.word.rbegin(); it != w.word.rend(); ++it) {
    out = dtilde_simple(m, *it).substituted(tail_inv) * out;
    tail_inv = tail_inv * D.simple_matrix(*it);
  }
  return out;
}

/// sum_{a,b} Dtilde[a][b] * pi_b(f), as a function of chi (before the w-twist).
inline RatFunc apply(const MetaplecticStructure& m, const TauMatrix& D, const RatFunc& f) {
  const CosetSpace& C = m.cosets();
  RatFunc acc(m.rank());
  for (std::size_t b = 0; b < C.size(); ++b) {
    RatFunc col(m.rank());
    for (std::size_t a = 0; a < C.size(); ++a) col += D.at(a, b);
    if (col.is_zero()) continue;
    RatFunc part = project_coset(f, C.lattice(), C.reps()[b]);
    if (!part.is_zero()) acc += col * part;
  }
  return acc;
}

}  // namespace mpw
