#pragma once

// Reduced relative root systems, their Weyl groups, and the action on the
// coroot lattice.
//
// Coordinates are taken in the basis of simple coroots.  cartan(i, j) is
// <alpha_i^vee, alpha_j>, so pairing(i, lambda) = sum_j lambda_j cartan(j, i)
// and s_i(lambda) = lambda - pairing(i, lambda) e_i.

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <string>
#include <vector>

#include "mpw/error.hpp"
#include "mpw/lattice.hpp"

namespace mpw {

inline constexpr std::size_t kDefaultWeylBound = 1152;

/// Rank-one piece attached to a simple relative root.
struct Marker {
  GaussKind kind = GaussKind::SL2;
  int degree = 1;
  friend bool operator==(const Marker&, const Marker&) = default;
};

struct WeylElem {
  std::vector<int> word;  // reduced
  LatticeMatrix matrix;   // product of s_{word[0]} ... s_{word[k-1]}
  int length() const { return static_cast<int>(word.size()); }
  int sign() const { return length() % 2 == 0 ? 1 : -1; }
};

namespace detail {

inline LatticeMatrix cartan_of(char family, int n) {
  LatticeMatrix A(n);
  for (int i = 0; i < n; ++i) A(i, i) = 2;
  auto link = [&](int i, int j) { A(i, j) = A(j, i) = -1; };
  switch (family) {
    case 'A':
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      break;
    case 'B':
      if (n < 2) throw UnsupportedError("B_n needs n >= 2");
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      A(n - 1, n - 2) = -2;
      break;
    case 'C':
      if (n < 2) throw UnsupportedError("C_n needs n >= 2");
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      A(n - 2, n - 1) = -2;
      break;
    case 'D':
      if (n != 4) throw UnsupportedError("only D4 is supported among type D");
      link(0, 1);
      link(1, 2);
      link(1, 3);
      break;
    case 'F':
      if (n != 4) throw UnsupportedError("type F requires rank 4");
      link(0, 1);
      link(1, 2);
      link(2, 3);
      A(2, 1) = -2;
      break;
    case 'G':
      if (n != 2) throw UnsupportedError("type G requires rank 2");
      A(0, 1) = -3;
      A(1, 0) = -1;
      break;
    default:
      throw UnsupportedError(std::string("unknown Cartan family '") + family + "'");
  }
  return A;
}

}  // namespace detail

/// Parses "A2", "B3", "A1xA1", ... into a block-diagonal Cartan matrix.
inline LatticeMatrix parse_cartan_type(const std::string& type) {
  std::vector<LatticeMatrix> blocks;
  std::size_t pos = 0;
  while (pos < type.size()) {
    std::size_t end = type.find_first_of("xX", pos);
    if (end == std::string::npos) end = type.size();
    const std::string part = type.substr(pos, end - pos);
    if (part.size() < 2 || !std::isalpha(static_cast<unsigned char>(part[0])) ||
        !std::all_of(part.begin() + 1, part.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
      throw ConfigError("type", "cannot parse Cartan type '" + type + "'");
    const int n = std::stoi(part.substr(1));
    if (n < 1 || n > kMaxRank) throw UnsupportedError("rank of '" + part + "' exceeds bound " + std::to_string(kMaxRank));
    blocks.push_back(detail::cartan_of(static_cast<char>(std::toupper(static_cast<unsigned char>(part[0]))), n));
    pos = end + 1;
  }
  int r = 0;
  for (const auto& b : blocks) r += b.r;
  if (r == 0) throw ConfigError("type", "empty Cartan type");
  if (r > kMaxRank) throw UnsupportedError("total rank " + std::to_string(r) + " exceeds bound " + std::to_string(kMaxRank));
  LatticeMatrix A(r);
  int off = 0;
  for (const auto& b : blocks) {
    for (int i = 0; i < b.r; ++i)
      for (int j = 0; j < b.r; ++j) A(off + i, off + j) = b(i, j);
    off += b.r;
  }
  return A;
}

class RelativeRootDatum {
 public:
  RelativeRootDatum(std::string name, const LatticeMatrix& cartan, std::vector<Marker> markers,
                    std::size_t weyl_bound = kDefaultWeylBound)
      : name_(std::move(name)), cartan_(cartan), markers_(std::move(markers)) {
    const int r = cartan_.r;
    if (markers_.empty()) markers_.assign(r, Marker{});
    if (static_cast<int>(markers_.size()) != r)
      throw ConfigError("markers", "expected " + std::to_string(r) + " markers, got " + std::to_string(markers_.size()));
    for (const auto& m : markers_)
      if (m.degree < 1) throw ConfigError("markers", "degree must be >= 1");
    check_cartan();
    for (int i = 0; i < r; ++i) {
      LatticeMatrix s = LatticeMatrix::identity(r);
      for (int j = 0; j < r; ++j) s(i, j) -= cartan_(j, i);
      simple_.push_back(s);
    }
    enumerate_weyl(weyl_bound);
    enumerate_coroots();
    check_markers();
  }

  const std::string& name() const { return name_; }
  int rank() const { return cartan_.r; }
  const LatticeMatrix& cartan() const { return cartan_; }
  const Marker& marker(int i) const { return markers_.at(i); }
  const std::vector<Marker>& markers() const { return markers_; }

  /// <alpha_i, lambda>
  long pairing(int i, const LatticeVector& lambda) const {
    long s = 0;
    for (int j = 0; j < rank(); ++j) s += lambda[j] * cartan_(j, i);
    return s;
  }
  bool is_dominant(const LatticeVector& lambda) const {
    for (int i = 0; i < rank(); ++i)
      if (pairing(i, lambda) < 0) return false;
    return true;
  }
  const LatticeMatrix& simple_matrix(int i) const { return simple_.at(i); }
  LatticeVector simple_coroot(int i) const { return LatticeVector::unit(rank(), i); }

  // ---- Weyl group
  std::size_t order() const { return elems_.size(); }
  const std::vector<WeylElem>& elements() const { return elems_; }
  const WeylElem& element(std::size_t k) const { return elems_.at(k); }
  const WeylElem& identity() const { return elems_.front(); }
  const WeylElem& longest() const { return elems_.back(); }
  std::size_t index_of(const LatticeMatrix& m) const {
    auto it = index_.find(m);
    if (it == index_.end()) throw DomainError("matrix is not a Weyl group element");
    return it->second;
  }
  std::size_t index_of(const WeylElem& w) const { return index_of(w.matrix); }
  const WeylElem& multiply(const WeylElem& a, const WeylElem& b) const { return elems_[index_of(a.matrix * b.matrix)]; }
  const WeylElem& inverse(const WeylElem& w) const {
    LatticeMatrix m = LatticeMatrix::identity(rank());
    for (auto it = w.word.rbegin(); it != w.word.rend(); ++it) m = m * simple_[*it];
    return elems_[index_of(m)];
  }
  /// Element of an arbitrary (not necessarily reduced) word.
  const WeylElem& from_word(const std::vector<int>& word) const {
    LatticeMatrix m = LatticeMatrix::identity(rank());
    for (int i : word) {
      if (i < 0 || i >= rank()) throw ConfigError("word", "simple reflection index " + std::to_string(i) + " out of range");
      m = m * simple_[i];
    }
    return elems_[index_of(m)];
  }
  LatticeMatrix word_matrix(const std::vector<int>& word) const {
    LatticeMatrix m = LatticeMatrix::identity(rank());
    for (int i : word) m = m * simple_.at(i);
    return m;
  }

  // ---- roots
  /// Positive coroots in simple-coroot coordinates, sorted by height then lex.
  const std::vector<LatticeVector>& positive_coroots() const { return pos_; }
  /// Index of a simple coroot W-conjugate to positive_coroots()[k].
  int coroot_orbit(std::size_t k) const { return orbit_.at(k); }
  bool is_positive_coroot(const LatticeVector& v) const { return std::binary_search(pos_sorted_.begin(), pos_sorted_.end(), v); }
  std::size_t coroot_index(const LatticeVector& v) const {
    auto it = std::find(pos_.begin(), pos_.end(), v);
    if (it == pos_.end()) throw DomainError("not a positive coroot: " + to_string(v));
    return static_cast<std::size_t>(it - pos_.begin());
  }

  static bool is_positive(const LatticeVector& v) {
    bool nz = false;
    for (int i = 0; i < v.r; ++i) {
      if (v[i] < 0) return false;
      nz = nz || v[i] != 0;
    }
    return nz;
  }

  /// Phi(w) = { beta > 0 : w^{-1} beta < 0 }.
  std::vector<LatticeVector> inversion_set(const WeylElem& w) const {
    const LatticeMatrix& winv = inverse(w).matrix;
    std::vector<LatticeVector> out;
    for (const auto& b : pos_)
      if (!is_positive(winv * b)) out.push_back(b);
    return out;
  }

  /// (length, sign)
  std::pair<int, int> length_sign(const WeylElem& w) const { return {w.length(), w.sign()}; }

  /// Order of s_i s_j.
  int braid_order(int i, int j) const {
    if (i == j) return 1;
    switch (cartan_(i, j) * cartan_(j, i)) {
      case 0: return 2;
      case 1: return 3;
      case 2: return 4;
      case 3: return 6;
      default: throw DomainError("Cartan entries are not of finite type");
    }
  }

  /// Every reduced word of w, lexicographically sorted.
  std::vector<std::vector<int>> reduced_words(const WeylElem& w) const {
    std::vector<std::vector<int>> out;
    if (w.length() == 0) return {{}};
    for (int i = 0; i < rank(); ++i) {
      const WeylElem& v = elems_[index_of(w.matrix * simple_[i])];
      if (v.length() >= w.length()) continue;
      for (auto word : reduced_words(v)) {
        word.push_back(i);
        out.push_back(std::move(word));
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  void check_cartan() const {
    const int r = rank();
    for (int i = 0; i < r; ++i) {
      if (cartan_(i, i) != 2) throw ConfigError("cartan", "diagonal entries must be 2");
      for (int j = 0; j < r; ++j) {
        if (i == j) continue;
        if (cartan_(i, j) > 0) throw ConfigError("cartan", "off-diagonal entries must be <= 0");
        if ((cartan_(i, j) == 0) != (cartan_(j, i) == 0)) throw ConfigError("cartan", "zero pattern must be symmetric");
      }
    }
  }

  void enumerate_weyl(std::size_t bound) {
    const int r = rank();
    elems_.push_back(WeylElem{{}, LatticeMatrix::identity(r)});
    index_.emplace(elems_[0].matrix, 0);
    for (std::size_t k = 0; k < elems_.size(); ++k) {
      for (int i = 0; i < r; ++i) {
        LatticeMatrix m = elems_[k].matrix * simple_[i];
        if (index_.count(m)) continue;
        if (elems_.size() >= bound)
          throw UnsupportedError("Weyl group exceeds bound " + std::to_string(bound) + " (type not of finite type or too large)");
        std::vector<int> word = elems_[k].word;
        word.push_back(i);
        index_.emplace(m, elems_.size());
        elems_.push_back(WeylElem{std::move(word), m});
      }
    }
  }

  void enumerate_coroots() {
    std::map<LatticeVector, int> seen;
    for (int i = 0; i < rank(); ++i) {
      for (const auto& w : elems_) {
        LatticeVector v = w.matrix * simple_coroot(i);
        if (is_positive(v)) seen.try_emplace(v, i);
      }
    }
    std::vector<std::pair<LatticeVector, int>> all(seen.begin(), seen.end());
    std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
      long ha = 0, hb = 0;
      for (int i = 0; i < a.first.r; ++i) {
        ha += a.first[i];
        hb += b.first[i];
      }
      if (ha != hb) return ha < hb;
      return a.first > b.first;
    });
    for (auto& [v, o] : all) {
      pos_.push_back(v);
      orbit_.push_back(o);
    }
    pos_sorted_ = pos_;
    std::sort(pos_sorted_.begin(), pos_sorted_.end());
    if (static_cast<std::size_t>(longest().length()) != pos_.size())
      throw DomainError("internal: length of longest element differs from number of positive coroots");
  }

  void check_markers() const {
    for (int i = 0; i < rank(); ++i)
      for (int j = 0; j < rank(); ++j)
        if (i != j && cartan_(i, j) == -1 && cartan_(j, i) == -1 && !(markers_[i] == markers_[j]))
          throw ConfigError("markers", "W-conjugate simple roots " + std::to_string(i) + " and " + std::to_string(j) +
                                           " carry different markers");
  }

  std::string name_;
  LatticeMatrix cartan_;
  std::vector<Marker> markers_;
  std::vector<LatticeMatrix> simple_;
  std::vector<WeylElem> elems_;
  std::map<LatticeMatrix, std::size_t> index_;
  std::vector<LatticeVector> pos_, pos_sorted_;
  std::vector<int> orbit_;
};

/// Datum from a type string such as "A2" or "B2xA1".
inline RelativeRootDatum build_datum(const std::string& type, std::vector<Marker> markers = {},
                                     std::size_t weyl_bound = kDefaultWeylBound) {
  return RelativeRootDatum(type, parse_cartan_type(type), std::move(markers), weyl_bound);
}

inline LatticeVector act(const WeylElem& w, const LatticeVector& v) { return w.matrix * v; }

}  // namespace mpw
