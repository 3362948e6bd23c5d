#pragma once

// Small integer lattices: vectors and square matrices of rank <= kMaxRank,
// Smith normal form, and full-rank sublattices with coset enumeration.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "mpw/error.hpp"
#include "mpw/scalar.hpp"

namespace mpw {

inline constexpr int kMaxRank = 4;

/// Integer vector of fixed length r; unused slots stay zero.
struct LatticeVector {
  std::array<long, kMaxRank> c{};
  int r = 0;

  LatticeVector() = default;
  explicit LatticeVector(int rank) : r(rank) {
    if (rank < 0 || rank > kMaxRank) throw UnsupportedError("rank " + std::to_string(rank) + " exceeds bound");
  }
  LatticeVector(std::initializer_list<long> xs) : LatticeVector(static_cast<int>(xs.size())) {
    std::copy(xs.begin(), xs.end(), c.begin());
  }
  static LatticeVector from(const std::vector<long>& xs) {
    LatticeVector v(static_cast<int>(xs.size()));
    std::copy(xs.begin(), xs.end(), v.c.begin());
    return v;
  }
  static LatticeVector unit(int rank, int i) {
    LatticeVector v(rank);
    v.c[i] = 1;
    return v;
  }

  int rank() const { return r; }
  long operator[](int i) const { return c[i]; }
  long& operator[](int i) { return c[i]; }
  std::vector<long> to_vector() const { return {c.begin(), c.begin() + r}; }

  bool is_zero() const {
    return std::all_of(c.begin(), c.begin() + r, [](long x) { return x == 0; });
  }
  /// First nonzero coordinate is positive.
  bool lex_positive() const {
    for (int i = 0; i < r; ++i)
      if (c[i] != 0) return c[i] > 0;
    return false;
  }
  long max_abs() const {
    long m = 0;
    for (int i = 0; i < r; ++i) m = std::max(m, std::abs(c[i]));
    return m;
  }

  LatticeVector& operator+=(const LatticeVector& o) {
    for (int i = 0; i < r; ++i) c[i] += o.c[i];
    return *this;
  }
  LatticeVector& operator-=(const LatticeVector& o) {
    for (int i = 0; i < r; ++i) c[i] -= o.c[i];
    return *this;
  }
  LatticeVector& operator*=(long k) {
    for (int i = 0; i < r; ++i) c[i] *= k;
    return *this;
  }
  friend LatticeVector operator+(LatticeVector a, const LatticeVector& b) { return a += b; }
  friend LatticeVector operator-(LatticeVector a, const LatticeVector& b) { return a -= b; }
  friend LatticeVector operator*(long k, LatticeVector a) { return a *= k; }
  friend LatticeVector operator-(LatticeVector a) { return a *= -1; }

  friend bool operator==(const LatticeVector&, const LatticeVector&) = default;
  friend auto operator<=>(const LatticeVector& a, const LatticeVector& b) {
    if (auto cmp = a.r <=> b.r; cmp != 0) return cmp;
    return a.c <=> b.c;
  }
};

inline std::string to_string(const LatticeVector& v) {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < v.r; ++i) os << (i ? "," : "") << v.c[i];
  os << ")";
  return os.str();
}

/// Square integer matrix acting on column vectors.
struct LatticeMatrix {
  std::array<std::array<long, kMaxRank>, kMaxRank> a{};
  int r = 0;

  LatticeMatrix() = default;
  explicit LatticeMatrix(int rank) : r(rank) {
    if (rank < 0 || rank > kMaxRank) throw UnsupportedError("rank " + std::to_string(rank) + " exceeds bound");
  }
  static LatticeMatrix identity(int rank) {
    LatticeMatrix m(rank);
    for (int i = 0; i < rank; ++i) m.a[i][i] = 1;
    return m;
  }

  long operator()(int i, int j) const { return a[i][j]; }
  long& operator()(int i, int j) { return a[i][j]; }

  LatticeVector operator*(const LatticeVector& v) const {
    LatticeVector out(r);
    for (int i = 0; i < r; ++i) {
      long s = 0;
      for (int j = 0; j < r; ++j) s += a[i][j] * v.c[j];
      out.c[i] = s;
    }
    return out;
  }
  LatticeMatrix operator*(const LatticeMatrix& o) const {
    LatticeMatrix out(r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        long s = 0;
        for (int k = 0; k < r; ++k) s += a[i][k] * o.a[k][j];
        out.a[i][j] = s;
      }
    return out;
  }
  LatticeMatrix transpose() const {
    LatticeMatrix t(r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) t.a[i][j] = a[j][i];
    return t;
  }
  LatticeVector column(int j) const {
    LatticeVector v(r);
    for (int i = 0; i < r; ++i) v.c[i] = a[i][j];
    return v;
  }

  friend bool operator==(const LatticeMatrix&, const LatticeMatrix&) = default;
  friend auto operator<=>(const LatticeMatrix& x, const LatticeMatrix& y) {
    if (auto cmp = x.r <=> y.r; cmp != 0) return cmp;
    return x.a <=> y.a;
  }
};

/// P * M * R = D with P, R unimodular and D diagonal, d_i | d_{i+1}, d_i >= 0.
struct SmithForm {
  LatticeMatrix P, Pinv, R, Rinv;
  std::vector<long> d;
};

inline SmithForm smith_normal_form(const LatticeMatrix& M) {
  const int r = M.r;
  LatticeMatrix A = M;
  SmithForm s{LatticeMatrix::identity(r), LatticeMatrix::identity(r), LatticeMatrix::identity(r),
              LatticeMatrix::identity(r), std::vector<long>(r, 0)};

  // row_i += k * row_j  (left multiply by E); inverse updates Pinv on the right.
  auto row_add = [&](int i, int j, long k) {
    for (int c = 0; c < r; ++c) {
      A.a[i][c] += k * A.a[j][c];
      s.P.a[i][c] += k * s.P.a[j][c];
    }
    for (int c = 0; c < r; ++c) s.Pinv.a[c][j] -= k * s.Pinv.a[c][i];
  };
  auto row_swap = [&](int i, int j) {
    std::swap(A.a[i], A.a[j]);
    std::swap(s.P.a[i], s.P.a[j]);
    for (int c = 0; c < r; ++c) std::swap(s.Pinv.a[c][i], s.Pinv.a[c][j]);
  };
  auto row_neg = [&](int i) {
    for (int c = 0; c < r; ++c) {
      A.a[i][c] = -A.a[i][c];
      s.P.a[i][c] = -s.P.a[i][c];
      s.Pinv.a[c][i] = -s.Pinv.a[c][i];
    }
  };
  // col_j += k * col_i  (right multiply by E); inverse updates Rinv on the left.
  auto col_add = [&](int j, int i, long k) {
    for (int c = 0; c < r; ++c) {
      A.a[c][j] += k * A.a[c][i];
      s.R.a[c][j] += k * s.R.a[c][i];
    }
    for (int c = 0; c < r; ++c) s.Rinv.a[i][c] -= k * s.Rinv.a[j][c];
  };
  auto col_swap = [&](int i, int j) {
    for (int c = 0; c < r; ++c) {
      std::swap(A.a[c][i], A.a[c][j]);
      std::swap(s.R.a[c][i], s.R.a[c][j]);
    }
    std::swap(s.Rinv.a[i], s.Rinv.a[j]);
  };

  for (int t = 0; t < r; ++t) {
    for (;;) {
      // Pivot: smallest nonzero |entry| in the trailing block.
      int pi = -1, pj = -1;
      for (int i = t; i < r; ++i)
        for (int j = t; j < r; ++j)
          if (A.a[i][j] != 0 && (pi < 0 || std::abs(A.a[i][j]) < std::abs(A.a[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi < 0) break;
      if (pi != t) row_swap(pi, t);
      if (pj != t) col_swap(pj, t);
      bool clean = true;
      for (int i = t + 1; i < r; ++i) {
        long k = floor_div(A.a[i][t], A.a[t][t]);
        if (k != 0) row_add(i, t, -k);
        if (A.a[i][t] != 0) clean = false;
      }
      for (int j = t + 1; j < r; ++j) {
        long k = floor_div(A.a[t][j], A.a[t][t]);
        if (k != 0) col_add(j, t, -k);
        if (A.a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: fold any offending row into row t.
      bool divides = true;
      for (int i = t + 1; i < r && divides; ++i)
        for (int j = t + 1; j < r; ++j)
          if (A.a[i][j] % A.a[t][t] != 0) {
            row_add(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (A.a[t][t] < 0) row_neg(t);
    s.d[t] = A.a[t][t];
  }
  return s;
}

/// Full-rank sublattice L of Z^r: lambda in L  <=>  (U lambda)_i = 0 mod m_i for all i.
/// Square matrix whose rows span the same lattice as gens (full rank required).
inline LatticeMatrix row_basis(int rank, const std::vector<LatticeVector>& gens) {
  if (gens.empty()) throw DomainError("sublattice needs generators");
  std::vector<std::vector<long>> rows;
  for (const auto& g : gens) rows.push_back(g.to_vector());
  const int k = static_cast<int>(rows.size());
  int row = 0;
  for (int col = 0; col < rank && row < k; ++col) {
    for (;;) {
      int piv = -1;
      for (int i = row; i < k; ++i)
        if (rows[i][col] != 0 && (piv < 0 || std::abs(rows[i][col]) < std::abs(rows[piv][col]))) piv = i;
      if (piv < 0) break;
      std::swap(rows[piv], rows[row]);
      bool done = true;
      for (int i = row + 1; i < k; ++i) {
        long q = floor_div(rows[i][col], rows[row][col]);
        for (int j = 0; j < rank; ++j) rows[i][j] -= q * rows[row][j];
        if (rows[i][col] != 0) done = false;
      }
      if (done) {
        ++row;
        break;
      }
    }
  }
  if (row != rank) throw DomainError("sublattice is not of full rank");
  LatticeMatrix out(rank);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) out.a[i][j] = rows[i][j];
  return out;
}

class Sublattice {
 public:
  Sublattice() = default;
  Sublattice(LatticeMatrix U, LatticeMatrix Uinv, std::vector<long> m)
      : U_(std::move(U)), Uinv_(std::move(Uinv)), m_(std::move(m)) {
    for (long x : m_)
      if (x <= 0) throw DomainError("sublattice is not of full rank");
  }

  /// Lattice spanned by the given generators (must have full rank).
  static Sublattice from_generators(int rank, const std::vector<LatticeVector>& gens) {
    const LatticeMatrix rows = row_basis(rank, gens);
    LatticeMatrix G(rank);  // columns are the reduced generators
    for (int j = 0; j < rank; ++j)
      for (int i = 0; i < rank; ++i) G.a[i][j] = rows.a[j][i];
    // P G R = D  =>  L = G Z^r = Pinv D Z^r, so lambda in L iff (P lambda)_i = 0 mod d_i.
    SmithForm s = smith_normal_form(G);
    return Sublattice(s.P, s.Pinv, s.d);
  }

  int rank() const { return U_.r; }
  const std::vector<long>& moduli() const { return m_; }
  long index() const {
    long p = 1;
    for (long x : m_) p *= x;
    return p;
  }

  /// Coordinates of the coset of lambda in prod Z/m_i.
  std::vector<long> coset_id(const LatticeVector& v) const {
    LatticeVector y = U_ * v;
    std::vector<long> id(m_.size());
    for (std::size_t i = 0; i < m_.size(); ++i) id[i] = pos_mod(y[static_cast<int>(i)], m_[i]);
    return id;
  }
  /// Mixed-radix flattening of coset_id into [0, index()).
  long coset_index(const LatticeVector& v) const {
    LatticeVector y = U_ * v;
    long idx = 0;
    for (std::size_t i = 0; i < m_.size(); ++i) idx = idx * m_[i] + pos_mod(y[static_cast<int>(i)], m_[i]);
    return idx;
  }
  bool contains(const LatticeVector& v) const {
    LatticeVector y = U_ * v;
    for (std::size_t i = 0; i < m_.size(); ++i)
      if (y[static_cast<int>(i)] % m_[i] != 0) return false;
    return true;
  }
  bool same_coset(const LatticeVector& a, const LatticeVector& b) const { return contains(a - b); }

  /// Basis vectors of the sublattice (columns of Uinv * diag(m)).
  std::vector<LatticeVector> basis() const {
    std::vector<LatticeVector> out;
    for (int j = 0; j < rank(); ++j) out.push_back(m_[j] * Uinv_.column(j));
    return out;
  }

 private:
  LatticeMatrix U_, Uinv_;
  std::vector<long> m_;
};

}  // namespace mpw
