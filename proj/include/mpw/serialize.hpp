#pragma once

// Canonical JSON for Scalar / LaurentPoly / RatFunc, and a LaTeX emitter.
//
//   Scalar      {"num": [term], "den": [term]}
//   term        {"c": "a/b", "q": k, "g": [{"kind", "t", "n", "d", "e"}]}
//   LaurentPoly {"terms": [{"exp": [..], "coeff": Scalar}]}   (exp ascending lex)
//   RatFunc     {"num": LaurentPoly, "den": LaurentPoly, "den_factors": [{"factor", "mult"}]}
//
// A parsed RatFunc prefers den_factors and falls back to den.

#include <nlohmann/json.hpp>

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mpw/ratfunc.hpp"

namespace mpw {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------- JSON out

inline json to_json(const SymPoly& p) {
  json arr = json::array();
  for (const auto& [m, c] : p.terms()) {
    json g = json::array();
    for (const auto& [s, e] : m.gauss)
      g.push_back({{"kind", to_string(s.kind)}, {"t", s.residue}, {"n", s.modulus}, {"d", s.degree}, {"e", e}});
    arr.push_back({{"c", c.get_str()}, {"q", m.q_exp}, {"g", std::move(g)}});
  }
  return arr;
}

inline json to_json(const Scalar& s) { return {{"num", to_json(s.num())}, {"den", to_json(s.den())}}; }

inline json to_json(const LaurentPoly& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back({{"exp", e.to_vector()}, {"coeff", to_json(c)}});
  return {{"rank", p.rank()}, {"terms", std::move(terms)}};
}

inline json to_json(const RatFunc& f) {
  json facs = json::array();
  for (const auto& [g, k] : f.den_factors()) facs.push_back({{"factor", to_json(g)}, {"mult", k}});
  return {{"num", to_json(f.num())}, {"den", to_json(f.den())}, {"den_factors", std::move(facs)}};
}

// ---------------------------------------------------------------- JSON in

inline SymPoly sympoly_from_json(const json& j) {
  if (!j.is_array()) throw ConfigError("json", "polynomial must be an array of terms");
  SymPoly out;
  for (const auto& t : j) {
    SymMono m;
    m.q_exp = t.at("q").get<int>();
    for (const auto& g : t.at("g")) {
      const std::string kind = g.at("kind").get<std::string>();
      if (kind != "SL2" && kind != "SU3") throw ConfigError("json", "unknown Gauss symbol kind '" + kind + "'");
      const int n = g.at("n").get<int>(), d = g.at("d").get<int>();
      if (n < 1 || d < 1) throw ConfigError("json", "Gauss symbol needs n >= 1 and d >= 1");
      m.gauss.emplace_back(GaussSym::make(kind == "SL2" ? GaussKind::SL2 : GaussKind::SU3, g.at("t").get<long>(), n, d),
                           g.at("e").get<int>());
    }
    std::sort(m.gauss.begin(), m.gauss.end());
    Rational c;
    try {
      c = Rational(t.at("c").get<std::string>());
    } catch (const std::invalid_argument&) {
      throw ConfigError("json", "malformed rational coefficient");
    }
    if (c.get_den() == 0) throw ConfigError("json", "rational coefficient has zero denominator");
    c.canonicalize();
    out += SymPoly::monomial(std::move(m), c);
  }
  return out;
}

inline Scalar scalar_from_json(const json& j) { return Scalar(sympoly_from_json(j.at("num")), sympoly_from_json(j.at("den"))); }

inline LaurentPoly laurent_from_json(const json& j) {
  const int r = j.at("rank").get<int>();
  LaurentPoly p(r);
  for (const auto& t : j.at("terms")) {
    const auto exp = t.at("exp").get<std::vector<long>>();
    if (static_cast<int>(exp.size()) != r) throw ConfigError("json", "exponent length differs from rank");
    p.add_term(LatticeVector::from(exp), scalar_from_json(t.at("coeff")));
  }
  return p;
}

inline RatFunc ratfunc_from_json(const json& j) {
  LaurentPoly num = laurent_from_json(j.at("num"));
  if (j.contains("den_factors")) {
    std::vector<LaurentPoly> facs;
    for (const auto& f : j.at("den_factors")) {
      LaurentPoly g = laurent_from_json(f.at("factor"));
      for (int k = 0; k < f.at("mult").get<int>(); ++k) facs.push_back(g);
    }
    return RatFunc::from_factors(std::move(num), facs);
  }
  return RatFunc::fraction(std::move(num), laurent_from_json(j.at("den")));
}

// ---------------------------------------------------------------- LaTeX

namespace detail {

inline std::string latex_rational(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return "\\tfrac{" + r.get_num().get_str() + "}{" + r.get_den().get_str() + "}";
}

inline std::string latex_mono(const SymMono& m) {
  std::string s;
  if (m.q_exp != 0) s += m.q_exp == 1 ? "q" : "q^{" + std::to_string(m.q_exp) + "}";
  for (const auto& [g, e] : m.gauss) {
    s += std::string("\\mathfrak{g}_{") + (g.kind == GaussKind::SL2 ? "SL_2" : "SU_3") +
         (g.degree != 1 ? "," + std::to_string(g.degree) : "") + "}(" + std::to_string(g.residue) + ")";
    if (e != 1) s += "^{" + std::to_string(e) + "}";
  }
  return s;
}

inline std::string latex_sympoly(const SymPoly& p, bool& single) {
  single = p.size() <= 1;
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    Rational a = c;
    if (!first) {
      s += a < 0 ? " - " : " + ";
      a = abs(a);
    } else if (a < 0) {
      s += "-";
      a = -a;
    }
    first = false;
    const std::string mono = latex_mono(m);
    if (mono.empty()) {
      s += latex_rational(a);
    } else {
      if (a != 1) s += latex_rational(a);
      s += mono;
    }
  }
  return s;
}

inline std::string latex_x(const LatticeVector& e) {
  std::string s;
  for (int i = 0; i < e.rank(); ++i) {
    if (e[i] == 0) continue;
    s += "x_{\\alpha_{" + std::to_string(i + 1) + "}}";
    if (e[i] != 1) s += "^{" + std::to_string(e[i]) + "}";
  }
  return s;
}

}  // namespace detail

inline std::string to_latex(const Scalar& c) {
  bool single = false;
  const std::string n = detail::latex_sympoly(c.num(), single);
  if (c.has_unit_den()) return n;
  bool dummy = false;
  return "\\frac{" + n + "}{" + detail::latex_sympoly(c.den(), dummy) + "}";
}

inline std::string to_latex(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    std::string coef = to_latex(c);
    const std::string x = detail::latex_x(e);
    const bool compound = !(c.has_unit_den() && c.num().size() == 1);
    bool negative = false;
    if (!compound && coef.size() > 0 && coef[0] == '-') {
      negative = true;
      coef = coef.substr(1);
    }
    if (!first) s += negative ? " - " : " + ";
    else if (negative) s += "-";
    first = false;
    if (x.empty()) {
      s += compound ? "\\left(" + coef + "\\right)" : coef;
    } else {
      if (compound) s += "\\left(" + coef + "\\right)";
      else if (coef != "1") s += coef;
      s += x;
    }
  }
  return s;
}

inline std::string to_latex(const RatFunc& f) {
  if (f.is_polynomial()) return to_latex(f.num());
  std::string den;
  for (const auto& [g, k] : f.den_factors()) {
    den += "\\left(" + to_latex(g) + "\\right)";
    if (k != 1) den += "^{" + std::to_string(k) + "}";
  }
  return "\\frac{" + to_latex(f.num()) + "}{" + den + "}";
}

}  // namespace mpw
