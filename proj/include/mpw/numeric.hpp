#pragma once

// Finite fields, Gauss sums as character sums, and complex specialization of
// symbolic values.
//
// SU3 residue model: the sum runs over (x, y) in F_{q^2}^2 with y != 0 and
// x xbar + y + ybar = 0, weighted by eta(N(y))^t psi(Tr(c x / y)), with c = 1 and
// Tr the absolute trace.  It is a consistency model only.

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "mpw/ratfunc.hpp"

namespace mpw {

using cplx = std::complex<double>;

inline constexpr double kRelTol = 1e-9;
inline constexpr double kDenTol = 1e-12;

/// Raised when a denominator evaluates to (numerically) zero; pick another point.
class ResampleError : public Error {
 public:
  using Error::Error;
};

inline bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

/// F_{p^k} with elements encoded as base-p digit strings 0 .. p^k - 1.
class FiniteField {
 public:
  FiniteField(long p, int k) : p_(p), k_(k) {
    if (!is_prime(p)) throw DomainError("field characteristic must be prime");
    if (k < 1) throw DomainError("field degree must be positive");
    size_ = 1;
    for (int i = 0; i < k; ++i) size_ *= p;
    if (size_ > 2'000'000) throw UnsupportedError("finite field too large");
    build_tables();
  }

  long p() const { return p_; }
  int degree() const { return k_; }
  long size() const { return size_; }
  long zero() const { return 0; }
  long one() const { return 1; }

  long add(long a, long b) const {
    long out = 0, mul = 1;
    for (int i = 0; i < k_; ++i) {
      out += ((a % p_ + b % p_) % p_) * mul;
      a /= p_;
      b /= p_;
      mul *= p_;
    }
    return out;
  }
  long neg(long a) const {
    long out = 0, mul = 1;
    for (int i = 0; i < k_; ++i) {
      out += ((p_ - a % p_) % p_) * mul;
      a /= p_;
      mul *= p_;
    }
    return out;
  }
  long mul(long a, long b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[(log_[a] + log_[b]) % (size_ - 1)];
  }
  long inv(long a) const {
    if (a == 0) throw DivisionByZero("finite field inverse");
    return exp_[(size_ - 1 - log_[a]) % (size_ - 1)];
  }
  long pow(long a, long e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    const long m = size_ - 1;
    return exp_[static_cast<std::size_t>(((log_[a] * (e % m)) % m + m) % m)];
  }
  /// Discrete log to the fixed generator (a != 0).
  long log(long a) const { return log_[a]; }
  long generator() const { return exp_[1]; }
  /// Absolute trace to F_p.
  long trace(long a) const {
    long acc = 0, x = a;
    for (int i = 0; i < k_; ++i) {
      acc = add(acc, x);
      x = pow(x, p_);
    }
    return acc;  // lies in F_p = {0, ..., p - 1}
  }

 private:
  // Multiplication of digit-encoded polynomials modulo the chosen modulus.
  long poly_mul(long a, long b) const {
    std::vector<long> A(k_), Bv(k_), C(2 * k_, 0);
    for (int i = 0; i < k_; ++i) {
      A[i] = a % p_;
      a /= p_;
      Bv[i] = b % p_;
      b /= p_;
    }
    for (int i = 0; i < k_; ++i)
      for (int j = 0; j < k_; ++j) C[i + j] = (C[i + j] + A[i] * Bv[j]) % p_;
    for (int i = 2 * k_ - 1; i >= k_; --i) {
      const long c = C[i];
      if (c == 0) continue;
      C[i] = 0;
      for (int j = 0; j < k_; ++j) C[i - k_ + j] = ((C[i - k_ + j] - c * modulus_[j]) % p_ + p_) % p_;
    }
    long out = 0, mul = 1;
    for (int i = 0; i < k_; ++i) {
      out += C[i] * mul;
      mul *= p_;
    }
    return out;
  }

  bool generates(long g) {
    exp_.assign(size_ - 1, 0);
    log_.assign(size_, -1);
    long x = 1;
    for (long e = 0; e < size_ - 1; ++e) {
      if (log_[x] != -1) return false;
      exp_[e] = x;
      log_[x] = e;
      x = poly_mul(x, g);
    }
    return x == 1;
  }

  void build_tables() {
    // Monic moduli in order; the first admitting a generator of all nonzero elements is a field.
    const long count = size_;
    for (long code = 0; code < count; ++code) {
      modulus_.assign(k_, 0);
      long c = code;
      for (int i = 0; i < k_; ++i) {
        modulus_[i] = c % p_;
        c /= p_;
      }
      if (modulus_[0] == 0 && k_ > 1) continue;
      // Primitive elements are dense; a failed short search means a reducible modulus.
      for (long g = 1; g < std::min<long>(size_, 64); ++g)
        if (generates(g)) return;
    }
    throw DomainError("internal: no primitive element found");
  }

  long p_;
  int k_;
  long size_;
  std::vector<long> modulus_;  // x^k = -sum modulus_[j] x^j
  std::vector<long> exp_, log_;
};

inline cplx root_of_unity(long k, long m) {
  const double a = 2.0 * std::numbers::pi * static_cast<double>(pos_mod(k, m)) / static_cast<double>(m);
  return {std::cos(a), std::sin(a)};
}

/// sum_{u in F^x} eta(u)^t psi(u), eta of exact order n, psi(u) = e(Tr(u)/p).
inline cplx gauss_sl2_numeric(const FiniteField& F, long t, int n) {
  if ((F.size() - 1) % n != 0) throw DomainError("eta of order n needs n | |F^x|");
  cplx s = 0;
  for (long u = 1; u < F.size(); ++u) s += root_of_unity(t * F.log(u), n) * root_of_unity(F.trace(u), F.p());
  return s;
}

/// The SU3 residue model over F = F_{q^2} (q = sqrt|F|); eta has order n on F_q^x.
inline cplx gauss_su3_numeric(const FiniteField& F, long t, int n) {
  if (F.degree() % 2 != 0) throw DomainError("SU3 model needs a quadratic extension");
  long q = 1;
  for (int i = 0; i < F.degree() / 2; ++i) q *= F.p();
  if ((q - 1) % n != 0) throw DomainError("eta of order n needs n | q - 1");
  // Bucket x by its norm x^{q+1}; the inner sum runs over one bucket.
  std::vector<std::vector<long>> by_norm(F.size());
  for (long x = 0; x < F.size(); ++x) by_norm[F.mul(x, F.pow(x, q))].push_back(x);
  cplx s = 0;
  for (long y = 1; y < F.size(); ++y) {
    const long ybar = F.pow(y, q);
    const long ny = F.mul(y, ybar);  // in F_q^x; log is a multiple of q + 1
    const long k = F.log(ny) / (q + 1);
    const cplx eta = root_of_unity(t * k, n);
    const long target = F.neg(F.add(y, ybar));
    const long yinv = F.inv(y);
    for (long x : by_norm[target]) s += eta * root_of_unity(F.trace(F.mul(x, yinv)), F.p());
  }
  return s;
}

/// A point at which symbolic values are evaluated.
class Specialization {
 public:
  Specialization(long p, int n, std::vector<cplx> x) : p_(p), n_(n), x_(std::move(x)) {
    if (!is_prime(p)) throw DomainError("specialization: q must be prime");
    if ((p - 1) % (2 * n) != 0) throw DomainError("specialization: q must be 1 mod 2n");
  }

  long q() const { return p_; }
  int n() const { return n_; }
  const std::vector<cplx>& x() const { return x_; }

  /// Overrides the value of one symbol (used for SU3 symbols whose model is uncertain).
  void set_symbol(const GaussSym& s, cplx v) { cache_[s] = v; }

  cplx symbol(const GaussSym& s) const {
    auto it = cache_.find(s);
    if (it != cache_.end()) return it->second;
    if (s.modulus != n_) throw DomainError("specialization: symbol modulus differs from n");
    cplx v;
    if (s.kind == GaussKind::SL2) {
      v = gauss_sl2_numeric(field(s.degree), s.residue, n_);
    } else {
      v = gauss_su3_numeric(field(2 * s.degree), s.residue, n_);
    }
    cache_.emplace(s, v);
    return v;
  }

  cplx scalar(const Scalar& c) const {
    const double q = static_cast<double>(p_);
    auto gv = [&](const GaussSym& s) { return symbol(s); };
    const cplx den = c.den().evaluate(q, gv);
    if (std::abs(den) < kDenTol) throw ResampleError("scalar denominator vanishes");
    return c.num().evaluate(q, gv) / den;
  }

  cplx monomial(const LatticeVector& e) const {
    if (e.rank() != static_cast<int>(x_.size())) throw DomainError("specialization: rank mismatch");
    cplx v = 1;
    for (int i = 0; i < e.rank(); ++i) v *= std::pow(x_[i], static_cast<int>(e[i]));
    return v;
  }

  cplx poly(const LaurentPoly& f) const {
    cplx s = 0;
    for (const auto& [e, c] : f.terms()) s += scalar(c) * monomial(e);
    return s;
  }

  /// The character w chi: x^{e_j} -> chi(pi^{w^{-1} e_j}); Minv is the matrix of w^{-1}.
  Specialization twisted(const LatticeMatrix& Minv) const {
    Specialization out = *this;
    for (int j = 0; j < Minv.r; ++j) out.x_[j] = monomial(Minv.column(j));
    return out;
  }

 private:
  const FiniteField& field(int k) const {
    auto it = fields_->find(k);
    if (it == fields_->end()) it = fields_->emplace(k, FiniteField(p_, k)).first;
    return it->second;
  }

  long p_;
  int n_;
  std::vector<cplx> x_;
  mutable std::map<GaussSym, cplx> cache_;
  std::shared_ptr<std::map<int, FiniteField>> fields_ = std::make_shared<std::map<int, FiniteField>>();
};

inline cplx specialize(const RatFunc& f, const Specialization& s) {
  cplx den = 1;
  for (const auto& [g, k] : f.den_factors()) den *= std::pow(s.poly(g), k);
  if (std::abs(den) < kDenTol) throw ResampleError("denominator vanishes at the sample point");
  return s.poly(f.num()) / den;
}

/// Primes q = 1 mod 2n below `limit`.
inline std::vector<long> admissible_primes(int n, long limit = 200) {
  std::vector<long> out;
  for (long p = 2; p < limit; ++p)
    if (is_prime(p) && (p - 1) % (2 * n) == 0) out.push_back(p);
  return out;
}

/// Random unit-modulus character values and an admissible prime, from `seed`.
inline Specialization random_character(int rank, int n, std::uint64_t seed, long prime_limit = 60) {
  std::mt19937_64 rng(seed);
  auto primes = admissible_primes(n, prime_limit);
  if (primes.empty()) primes = admissible_primes(n, 100000);
  std::uniform_int_distribution<std::size_t> pick(0, primes.size() - 1);
  const long p = primes[std::min<std::size_t>(pick(rng), primes.size() - 1)];
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<cplx> x(rank);
  for (auto& v : x) v = std::polar(1.0, angle(rng));
  return Specialization(p, n, std::move(x));
}

/// |a - b| / max(1, |a|, |b|)
inline double rel_diff(cplx a, cplx b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace mpw
