#pragma once

// Group-algebra elements sum_lambda c_lambda x^lambda with Scalar coefficients.

#include <map>
#include <string>
#include <utility>

#include "mpw/lattice.hpp"
#include "mpw/scalar.hpp"

namespace mpw {

class LaurentPoly {
 public:
  using Terms = std::map<LatticeVector, Scalar>;

  LaurentPoly() = default;
  explicit LaurentPoly(int rank) : r_(rank) {}
  LaurentPoly(int rank, const Scalar& c) : r_(rank) {
    if (!c.is_zero()) terms_.emplace(LatticeVector(rank), c);
  }
  static LaurentPoly monomial(const LatticeVector& e, const Scalar& c = Scalar(1)) {
    LaurentPoly p(e.rank());
    if (!c.is_zero()) p.terms_.emplace(e, c);
    return p;
  }

  int rank() const { return r_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_one() const {
    return terms_.size() == 1 && terms_.begin()->first.is_zero() && terms_.begin()->second.is_one();
  }
  /// Coefficient of x^e (zero when absent).
  Scalar coeff(const LatticeVector& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  void add_term(const LatticeVector& e, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    adopt_rank(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    adopt_rank(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator-(LaurentPoly a) {
    for (auto& [e, c] : a.terms_) c = -c;
    return a;
  }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out(a.r_ ? a.r_ : b.r_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
    return out;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  LaurentPoly scaled(const Scalar& s) const {
    LaurentPoly out(r_);
    if (s.is_zero()) return out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, c * s);
    return out;
  }
  /// x^shift * this
  LaurentPoly shifted(const LatticeVector& shift) const {
    LaurentPoly out(r_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e + shift, c);
    return out;
  }
  /// x^lambda -> x^{M lambda}
  LaurentPoly substituted(const LatticeMatrix& M) const {
    LaurentPoly out(r_);
    for (const auto& [e, c] : terms_) out.add_term(M * e, c);
    return out;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

  /// The unique factorization this = u * p with u = c x^e a unit and p having
  /// lex-least term 1 * x^0.
  std::pair<LaurentPoly, LaurentPoly> split_unit() const {
    if (is_zero()) throw DivisionByZero("normalizing zero polynomial");
    const auto& [e0, c0] = *terms_.begin();
    LaurentPoly p(r_);
    const Scalar inv = Scalar(1) / c0;
    for (const auto& [e, c] : terms_) p.terms_.emplace(e - e0, c * inv);
    return {monomial(e0, c0), std::move(p)};
  }

 private:
  void adopt_rank(const LaurentPoly& o) {
    if (r_ == 0) r_ = o.r_;
  }

  int r_ = 0;
  Terms terms_;
};

/// Strict weak order on polynomials in canonical form (used only for container keys).
inline int compare(const SymPoly& a, const SymPoly& b) {
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  for (; ia != a.terms().end() && ib != b.terms().end(); ++ia, ++ib) {
    if (auto c = ia->first <=> ib->first; c != 0) return c < 0 ? -1 : 1;
    if (int c = cmp(ia->second, ib->second); c != 0) return c < 0 ? -1 : 1;
  }
  if (ia != a.terms().end()) return 1;
  if (ib != b.terms().end()) return -1;
  return 0;
}

inline int compare(const Scalar& a, const Scalar& b) {
  if (int c = compare(a.num(), b.num()); c != 0) return c;
  return compare(a.den(), b.den());
}

inline int compare(const LaurentPoly& a, const LaurentPoly& b) {
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  for (; ia != a.terms().end() && ib != b.terms().end(); ++ia, ++ib) {
    if (auto c = ia->first <=> ib->first; c != 0) return c < 0 ? -1 : 1;
    if (int c = compare(ia->second, ib->second); c != 0) return c;
  }
  if (ia != a.terms().end()) return 1;
  if (ib != b.terms().end()) return -1;
  return 0;
}

struct LaurentLess {
  bool operator()(const LaurentPoly& a, const LaurentPoly& b) const { return compare(a, b) < 0; }
};

inline std::string to_string(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    if (!first) s += " + ";
    first = false;
    s += "(" + to_string(c) + ")";
    if (!e.is_zero()) s += "*x^" + to_string(e);
  }
  return s;
}

}  // namespace mpw
