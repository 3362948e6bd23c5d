#pragma once

// Quotients num / prod(factor^k) of Laurent polynomials.
//
// Every denominator factor is stored normalized: its lex-least term is 1 * x^0,
// so a binomial factor reads 1 + a x^v with v lex-positive.  Units of the group
// algebra (c x^e) never appear in the denominator; they are absorbed into num.
// No gcds are taken.  reduce() only cancels binomial factors that divide num
// exactly, and equality is decided by cross-multiplication over the lcm of the
// two factor multisets.

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "mpw/laurent.hpp"

namespace mpw {

namespace detail {

/// Exact quotient of N by (1 + a x^v), v lex-positive; nullopt when it does not divide.
inline std::optional<LaurentPoly> divide_binomial(const LaurentPoly& N, const Scalar& a, const LatticeVector& v) {
  int p = 0;
  while (v[p] == 0) ++p;
  std::map<LatticeVector, std::map<long, Scalar>> lines;
  for (const auto& [e, c] : N.terms()) {
    const long k = floor_div(e[p], v[p]);
    lines[e - k * v].emplace(k, c);
  }
  LaurentPoly Q(N.rank());
  for (const auto& [base, coeffs] : lines) {
    const long kmin = coeffs.begin()->first;
    const long kmax = coeffs.rbegin()->first;
    if (kmin == kmax) return std::nullopt;
    Scalar prev(0);
    auto it = coeffs.begin();
    for (long k = kmin; k <= kmax; ++k) {
      Scalar cur = -(a * prev);
      if (it != coeffs.end() && it->first == k) {
        cur += it->second;
        ++it;
      }
      if (k == kmax) {
        if (!cur.is_zero()) return std::nullopt;
        break;
      }
      if (!cur.is_zero()) Q.add_term(base + k * v, cur);
      prev = std::move(cur);
    }
  }
  return Q;
}

}  // namespace detail

class RatFunc {
 public:
  using Factors = std::map<LaurentPoly, int, LaurentLess>;

  RatFunc() = default;
  explicit RatFunc(int rank) : num_(rank) {}
  RatFunc(LaurentPoly num) : num_(std::move(num)) {}  // NOLINT(google-explicit-constructor)
  RatFunc(int rank, const Scalar& c) : num_(rank, c) {}

  static RatFunc monomial(const LatticeVector& e, const Scalar& c = Scalar(1)) {
    return RatFunc(LaurentPoly::monomial(e, c));
  }

  /// num / den, den nonzero.
  static RatFunc fraction(LaurentPoly num, const LaurentPoly& den) {
    RatFunc f(std::move(num));
    f.divide_by_poly(den);
    f.reduce();
    return f;
  }
  /// num / prod(den_factors); each factor is normalized on entry.
  static RatFunc from_factors(LaurentPoly num, const std::vector<LaurentPoly>& den_factors) {
    RatFunc f(std::move(num));
    for (const auto& d : den_factors) f.divide_by_poly(d);
    f.reduce();
    return f;
  }

  int rank() const { return num_.rank(); }
  const LaurentPoly& num() const { return num_; }
  const Factors& den_factors() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.empty(); }

  LaurentPoly den() const {
    LaurentPoly d(rank(), Scalar(1));
    for (const auto& [f, k] : den_)
      for (int i = 0; i < k; ++i) d *= f;
    return d;
  }

  /// Cancels binomial denominator factors dividing the numerator.  Idempotent.
  RatFunc& reduce() {
    if (num_.is_zero()) {
      den_.clear();
      return *this;
    }
    for (auto it = den_.begin(); it != den_.end();) {
      const LaurentPoly& f = it->first;
      if (f.size() == 2) {
        const auto& [v, a] = *std::next(f.terms().begin());
        while (it->second > 0) {
          auto q = detail::divide_binomial(num_, a, v);
          if (!q) break;
          num_ = std::move(*q);
          --it->second;
        }
      } else if (num_ == f) {
        num_ = LaurentPoly(rank(), Scalar(1));
        --it->second;
      }
      it = it->second == 0 ? den_.erase(it) : std::next(it);
    }
    return *this;
  }

  RatFunc& operator+=(const RatFunc& o) { return *this = combine(*this, o, false); }
  RatFunc& operator-=(const RatFunc& o) { return *this = combine(*this, o, true); }
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) { return combine(a, b, false); }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return combine(a, b, true); }
  friend RatFunc operator-(RatFunc a) {
    a.num_ = -a.num_;
    return a;
  }

  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    RatFunc out(a.num_ * b.num_);
    if (out.num_.is_zero()) return RatFunc(a.rank() ? a.rank() : b.rank());
    out.den_ = a.den_;
    for (const auto& [f, k] : b.den_) out.den_[f] += k;
    out.reduce();
    return out;
  }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw DivisionByZero("rational function");
    RatFunc out(a.num_);
    out.den_ = a.den_;
    for (const auto& [f, k] : b.den_)
      for (int i = 0; i < k; ++i) out.num_ *= f;
    out.divide_by_poly(b.num_);
    out.reduce();
    return out;
  }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  RatFunc scaled(const Scalar& s) const {
    RatFunc out = *this;
    out.num_ = num_.scaled(s);
    if (out.num_.is_zero()) out.den_.clear();
    return out;
  }
  RatFunc shifted(const LatticeVector& e) const {
    RatFunc out = *this;
    out.num_ = num_.shifted(e);
    return out;
  }

  /// x^lambda -> x^{M lambda} in numerator and every factor.
  RatFunc substituted(const LatticeMatrix& M) const {
    RatFunc out(num_.substituted(M));
    for (const auto& [f, k] : den_)
      for (int i = 0; i < k; ++i) out.divide_by_poly(f.substituted(M));
    return out;
  }

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    if (a.den_.size() == b.den_.size() &&
        std::equal(a.den_.begin(), a.den_.end(), b.den_.begin(), [](const auto& x, const auto& y) {
          return x.second == y.second && compare(x.first, y.first) == 0;
        }))
      return a.num_ == b.num_;
    return lifted_num(a, lcm(a, b)) == lifted_num(b, lcm(a, b));
  }

  /// True iff every denominator exponent lies in L.
  bool den_supported_on(const Sublattice& L) const {
    for (const auto& [f, k] : den_)
      for (const auto& [e, c] : f.terms())
        if (!L.contains(e)) return false;
    return true;
  }

 private:
  // *this /= d, with d's unit moved into the numerator.
  void divide_by_poly(const LaurentPoly& d) {
    if (d.is_zero()) throw DivisionByZero("rational function denominator");
    auto [unit, factor] = d.split_unit();
    const auto& [e, c] = *unit.terms().begin();
    num_ = num_.shifted(-e).scaled(Scalar(1) / c);
    if (num_.rank() == 0) num_ = LaurentPoly(d.rank());
    if (!factor.is_one()) den_[std::move(factor)] += 1;
  }

  static Factors lcm(const RatFunc& a, const RatFunc& b) {
    Factors L = a.den_;
    for (const auto& [f, k] : b.den_) {
      int& m = L[f];
      m = std::max(m, k);
    }
    return L;
  }

  // num * prod(L / den): the numerator of f over the common denominator L.
  static LaurentPoly lifted_num(const RatFunc& f, const Factors& L) {
    LaurentPoly n = f.num_;
    for (const auto& [g, k] : L) {
      auto it = f.den_.find(g);
      const int have = it == f.den_.end() ? 0 : it->second;
      for (int i = have; i < k; ++i) n *= g;
    }
    return n;
  }

  static RatFunc combine(const RatFunc& a, const RatFunc& b, bool subtract) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return subtract ? -b : b;
    Factors L = lcm(a, b);
    LaurentPoly na = lifted_num(a, L);
    LaurentPoly nb = lifted_num(b, L);
    RatFunc out(subtract ? na - nb : na + nb);
    if (out.num_.is_zero()) return RatFunc(a.rank());
    out.den_ = std::move(L);
    out.reduce();
    return out;
  }

  LaurentPoly num_;
  Factors den_;
};

/// f(w chi) under x^lambda -> x^{M lambda}; M is the matrix of w^{-1}.
inline RatFunc subst(const RatFunc& f, const LatticeMatrix& M) { return f.substituted(M); }

/// Sub-sum of numerator terms whose exponent lies in the coset of `rep`.
inline RatFunc project_coset(const RatFunc& f, const Sublattice& L, const LatticeVector& rep) {
  if (!f.den_supported_on(L)) throw DomainError("project_coset: denominator not supported on the sublattice");
  LaurentPoly part(f.rank());
  for (const auto& [e, c] : f.num().terms())
    if (L.same_coset(e, rep)) part.add_term(e, c);
  if (part.is_zero()) return RatFunc(f.rank());
  std::vector<LaurentPoly> facs;
  for (const auto& [g, k] : f.den_factors())
    for (int i = 0; i < k; ++i) facs.push_back(g);
  return RatFunc::from_factors(std::move(part), facs);
}

inline std::string to_string(const RatFunc& f) {
  if (f.is_polynomial()) return to_string(f.num());
  std::string s = "(" + to_string(f.num()) + ")/(";
  bool first = true;
  for (const auto& [g, k] : f.den_factors()) {
    if (!first) s += " * ";
    first = false;
    s += "(" + to_string(g) + ")";
    if (k != 1) s += "^" + std::to_string(k);
  }
  return s + ")";
}

}  // namespace mpw
