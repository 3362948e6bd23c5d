#pragma once

// Exact coefficient arithmetic.
//
// A Scalar is a quotient of two polynomials over Q in the indeterminate q
// (Laurent: negative powers allowed) and in finitely many formal Gauss-sum
// symbols.  Monomials are kept in a normal form for the relations
//
//   g_SL2(0)              = -1
//   g_SL2(t) * g_SL2(-t)  = q^d      (t != 0 mod n, same degree d)
//
// so that syntactic equality of canonical numerators decides equality when the
// denominator is 1.  SU3 symbols are free generators (no relations known).

#include <gmpxx.h>

#include <algorithm>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mpw/error.hpp"

namespace mpw {

using Rational = mpq_class;

inline long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline long ceil_div(long a, long b) { return -floor_div(-a, b); }

inline long pos_mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

enum class GaussKind : std::uint8_t { SL2 = 0, SU3 = 1 };

inline const char* to_string(GaussKind k) { return k == GaussKind::SL2 ? "SL2" : "SU3"; }

/// Formal Gauss sum g_kind(residue mod modulus) over a residue field with q^degree elements.
struct GaussSym {
  GaussKind kind = GaussKind::SL2;
  int degree = 1;
  int modulus = 1;
  int residue = 0;

  static GaussSym make(GaussKind kind, long t, int modulus, int degree) {
    if (modulus < 1) throw DomainError("Gauss symbol modulus must be positive");
    if (degree < 1) throw DomainError("Gauss symbol degree must be positive");
    return GaussSym{kind, degree, modulus, static_cast<int>(pos_mod(t, modulus))};
  }

  auto operator<=>(const GaussSym&) const = default;
};

/// q^q_exp * prod g^e.  `gauss` is sorted by symbol with nonzero exponents.
struct SymMono {
  int q_exp = 0;
  std::vector<std::pair<GaussSym, int>> gauss;

  bool is_one() const { return q_exp == 0 && gauss.empty(); }
  auto operator<=>(const SymMono&) const = default;
};

namespace detail {

// Rewrites `m` into normal form; returns the sign picked up from g_SL2(0) = -1.
inline int canonicalize(SymMono& m) {
  int sign = 1;
  std::map<GaussSym, int> acc;
  for (const auto& [s, e] : m.gauss) {
    if (e == 0) continue;
    if (s.kind == GaussKind::SL2) {
      const int n = s.modulus;
      const int t = s.residue;
      if (t == 0) {
        if (e % 2 != 0) sign = -sign;
        continue;
      }
      if (2 * t != n && t > n - t) {
        // g(t) = q^d / g(n - t)
        m.q_exp += s.degree * e;
        GaussSym partner = s;
        partner.residue = n - t;
        acc[partner] -= e;
        continue;
      }
    }
    acc[s] += e;
  }
  m.gauss.clear();
  for (auto [s, e] : acc) {
    if (s.kind == GaussKind::SL2 && 2 * s.residue == s.modulus) {
      // g(n/2)^2 = q^d
      const long k = floor_div(e, 2);
      m.q_exp += static_cast<int>(s.degree * k);
      e = static_cast<int>(e - 2 * k);
    }
    if (e != 0) m.gauss.emplace_back(s, e);
  }
  return sign;
}

inline SymMono multiply_raw(const SymMono& a, const SymMono& b) {
  SymMono r;
  r.q_exp = a.q_exp + b.q_exp;
  r.gauss.reserve(a.gauss.size() + b.gauss.size());
  std::merge(a.gauss.begin(), a.gauss.end(), b.gauss.begin(), b.gauss.end(),
             std::back_inserter(r.gauss));
  return r;
}

}  // namespace detail

/// Polynomial over Q in q^{+-1} and Gauss symbols, in relation-normal form.
class SymPoly {
 public:
  using Terms = std::map<SymMono, Rational>;

  SymPoly() = default;
  SymPoly(long c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) terms_.emplace(SymMono{}, Rational(c));
  }
  SymPoly(const Rational& c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) terms_.emplace(SymMono{}, c);
  }

  static SymPoly monomial(SymMono m, Rational c) {
    SymPoly p;
    const int sign = detail::canonicalize(m);
    if (sign < 0) c = -c;
    if (c != 0) p.terms_.emplace(std::move(m), std::move(c));
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }
  bool is_one() const { return is_constant() && !terms_.empty() && terms_.begin()->second == 1; }

  void add_term(const SymMono& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  SymPoly& operator+=(const SymPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  SymPoly& operator-=(const SymPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend SymPoly operator+(SymPoly a, const SymPoly& b) { return a += b; }
  friend SymPoly operator-(SymPoly a, const SymPoly& b) { return a -= b; }
  friend SymPoly operator-(SymPoly a) {
    for (auto& [m, c] : a.terms_) c = -c;
    return a;
  }

  friend SymPoly operator*(const SymPoly& a, const SymPoly& b) {
    SymPoly r;
    if (a.is_zero() || b.is_zero()) return r;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        SymMono m = detail::multiply_raw(ma, mb);
        const int sign = detail::canonicalize(m);
        Rational c = ca * cb;
        if (sign < 0) c = -c;
        r.add_term(m, c);
      }
    }
    return r;
  }
  SymPoly& operator*=(const SymPoly& o) { return *this = *this * o; }

  SymPoly scaled(const Rational& c) const {
    if (c == 0) return {};
    SymPoly r = *this;
    for (auto& [m, v] : r.terms_) v *= c;
    return r;
  }

  /// Inverse of a single-term polynomial (monomials are units of the ring).
  SymPoly inverse_monomial() const {
    if (terms_.size() != 1) throw DomainError("inverse_monomial on a non-monomial");
    const auto& [m, c] = *terms_.begin();
    SymMono inv;
    inv.q_exp = -m.q_exp;
    for (const auto& [s, e] : m.gauss) inv.gauss.emplace_back(s, -e);
    return monomial(std::move(inv), Rational(1) / c);
  }

  friend bool operator==(const SymPoly& a, const SymPoly& b) { return a.terms_ == b.terms_; }

  template <class GaussValue>
  std::complex<double> evaluate(double q, const GaussValue& gauss_value) const {
    std::complex<double> acc = 0.0;
    for (const auto& [m, c] : terms_) {
      std::complex<double> v = c.get_d() * std::pow(q, m.q_exp);
      for (const auto& [s, e] : m.gauss) v *= std::pow(gauss_value(s), e);
      acc += v;
    }
    return acc;
  }

 private:
  Terms terms_;
};

/// Element of Frac(SymPoly).  Single-term denominators are folded into the
/// numerator, so most scalars have denominator 1.
class Scalar {
 public:
  Scalar() : den_(1) {}
  Scalar(long c) : num_(c), den_(1) {}               // NOLINT(google-explicit-constructor)
  Scalar(const Rational& c) : num_(c), den_(1) {}    // NOLINT(google-explicit-constructor)
  Scalar(SymPoly num) : num_(std::move(num)), den_(1) {}  // NOLINT(google-explicit-constructor)
  Scalar(SymPoly num, SymPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DivisionByZero("scalar denominator");
    normalize();
  }

  /// q^k
  static Scalar q_pow(int k) {
    SymMono m;
    m.q_exp = k;
    return SymPoly::monomial(std::move(m), 1);
  }
  /// The atomic symbol itself, without applying any reduction rule.
  static Scalar gauss(const GaussSym& s) {
    SymMono m;
    m.gauss.emplace_back(s, 1);
    return SymPoly::monomial(std::move(m), 1);
  }

  const SymPoly& num() const { return num_; }
  const SymPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool has_unit_den() const { return den_.is_one(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  /// A unit of the polynomial ring: rational times monomial, denominator 1.
  bool is_monomial() const { return has_unit_den() && num_.size() == 1; }

  Scalar& operator+=(const Scalar& o) {
    if (has_unit_den() && o.has_unit_den()) {
      num_ += o.num_;
      return *this;
    }
    *this = Scalar(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    if (has_unit_den() && o.has_unit_den()) {
      num_ -= o.num_;
      return *this;
    }
    *this = Scalar(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    if (has_unit_den() && o.has_unit_den()) {
      num_ *= o.num_;
      return *this;
    }
    *this = Scalar(num_ * o.num_, den_ * o.den_);
    return *this;
  }
  Scalar& operator/=(const Scalar& o) {
    if (o.is_zero()) throw DivisionByZero("scalar");
    *this = Scalar(num_ * o.den_, den_ * o.num_);
    return *this;
  }
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend Scalar operator-(Scalar a) {
    a.num_ = -a.num_;
    return a;
  }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.has_unit_den() && b.has_unit_den()) return a.num_ == b.num_;
    return a.num_ * b.den_ == b.num_ * a.den_;
  }

  template <class GaussValue>
  std::complex<double> evaluate(double q, const GaussValue& gauss_value) const {
    return num_.evaluate(q, gauss_value) / den_.evaluate(q, gauss_value);
  }

  /// Invokes f on every Gauss symbol occurring in numerator or denominator.
  template <class F>
  void for_each_symbol(F&& f) const {
    for (const SymPoly* p : {&num_, &den_})
      for (const auto& [m, c] : p->terms())
        for (const auto& [s, e] : m.gauss) f(s);
  }

 private:
  void normalize() {
    if (num_.is_zero()) {
      den_ = SymPoly(1);
      return;
    }
    if (den_.size() == 1) {
      num_ = num_ * den_.inverse_monomial();
      den_ = SymPoly(1);
      return;
    }
    const Rational lead = den_.terms().begin()->second;
    if (lead != 1) {
      num_ = num_.scaled(Rational(1) / lead);
      den_ = den_.scaled(Rational(1) / lead);
    }
  }

  SymPoly num_;
  SymPoly den_;
};

/// SL2 symbols with residue 0 become -1; every other symbol stays atomic.
inline Scalar gauss_reduce(const GaussSym& s) {
  if (s.kind == GaussKind::SL2 && s.residue == 0) return Scalar(-1);
  return Scalar::gauss(s);
}

// ---------------------------------------------------------------- printing

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline std::string to_string(const GaussSym& s) {
  std::ostringstream os;
  os << "g_" << to_string(s.kind) << "(" << s.residue << " mod " << s.modulus;
  if (s.degree != 1) os << "; d=" << s.degree;
  os << ")";
  return os.str();
}

inline std::string to_string(const SymPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    Rational a = c;
    if (!first) {
      os << (a < 0 ? " - " : " + ");
      a = abs(a);
    }
    first = false;
    const bool bare = m.is_one();
    if (bare || a != 1) {
      if (a == -1 && !bare) {
        os << "-";
      } else {
        os << a.get_str();
        if (!bare) os << "*";
      }
    }
    bool sep = false;
    if (m.q_exp != 0) {
      os << "q";
      if (m.q_exp != 1) os << "^" << m.q_exp;
      sep = true;
    }
    for (const auto& [s, e] : m.gauss) {
      if (sep) os << "*";
      os << to_string(s);
      if (e != 1) os << "^" << e;
      sep = true;
    }
  }
  return os.str();
}

inline std::string to_string(const Scalar& s) {
  if (s.has_unit_den()) return to_string(s.num());
  return "(" + to_string(s.num()) + ")/(" + to_string(s.den()) + ")";
}

}  // namespace mpw
