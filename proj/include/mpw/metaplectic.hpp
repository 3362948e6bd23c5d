#pragma once

// Combinatorial data of an n-fold cover: the W-invariant quadratic form Q, its
// bilinear form B, the integers n_alpha, and the congruence sublattice
//   Lambda = { lambda : B(beta, lambda) / c_beta = 0 mod n for every coroot beta }
// with c_beta = 2 on the W-orbits of SU3 nodes (the commutator exponent is
// B/2 there) and 1 otherwise, and the finite coset group Gamma = X / Lambda.
// Without SU3 nodes this is B(lambda, .) = 0 mod n.

#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "mpw/root_datum.hpp"

namespace mpw {

/// Lambda with one canonical representative per coset: the lex-least vector in [0, n)^r.
class CosetSpace {
 public:
  CosetSpace() = default;
  CosetSpace(Sublattice L, int n) : L_(std::move(L)) {
    const int r = L_.rank();
    by_index_.assign(static_cast<std::size_t>(L_.index()), LatticeVector());
    std::vector<bool> hit(by_index_.size(), false);
    std::size_t found = 0;
    LatticeVector v(r);
    // Lex enumeration of [0, n)^r, first coordinate most significant.
    for (;;) {
      const long k = L_.coset_index(v);
      if (!hit[k]) {
        hit[k] = true;
        by_index_[k] = v;
        reps_.push_back(v);
        if (++found == by_index_.size()) break;
      }
      int i = r - 1;
      while (i >= 0 && ++v[i] == n) v[i--] = 0;
      if (i < 0) break;
    }
    if (found != by_index_.size()) throw DomainError("internal: coset enumeration incomplete");
    for (std::size_t j = 0; j < reps_.size(); ++j) order_.push_back(static_cast<std::size_t>(L_.coset_index(reps_[j])));
  }

  const Sublattice& lattice() const { return L_; }
  std::size_t size() const { return reps_.size(); }
  /// Representatives in lex order.
  const std::vector<LatticeVector>& reps() const { return reps_; }
  /// Position of the coset of v within reps().
  std::size_t position(const LatticeVector& v) const {
    const long k = L_.coset_index(v);
    for (std::size_t j = 0; j < order_.size(); ++j)
      if (static_cast<long>(order_[j]) == k) return j;
    throw DomainError("internal: coset not found");
  }
  const LatticeVector& rep_of(const LatticeVector& v) const { return by_index_[L_.coset_index(v)]; }
  bool contains(const LatticeVector& v) const { return L_.contains(v); }
  bool same_coset(const LatticeVector& a, const LatticeVector& b) const { return L_.same_coset(a, b); }

 private:
  Sublattice L_;
  std::vector<LatticeVector> reps_;
  std::vector<LatticeVector> by_index_;
  std::vector<std::size_t> order_;
};

class MetaplecticStructure {
 public:
  /// Q holds Q(alpha_i^vee) per simple coroot; a single value is broadcast.
  MetaplecticStructure(std::shared_ptr<const RelativeRootDatum> datum, int n, std::vector<long> Q)
      : d_(std::move(datum)), n_(n), Q_(std::move(Q)) {
    const int r = d_->rank();
    if (n_ < 1) throw ConfigError("n", "cover degree must be >= 1");
    if (Q_.size() == 1 && r > 1) Q_.assign(r, Q_[0]);
    if (static_cast<int>(Q_.size()) != r)
      throw ConfigError("Q", "expected " + std::to_string(r) + " values, got " + std::to_string(Q_.size()));
    B_ = LatticeMatrix(r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) B_(i, j) = Q_[i] * d_->cartan()(j, i);
    validate_Q();
    const auto& pos = d_->positive_coroots();
    for (const auto& b : pos) {
      const long q = bilinear_B(b, b) / 2;
      const long na = n_ / std::gcd(static_cast<long>(n_), std::abs(q));
      Qpos_.push_back(q);
      npos_.push_back(na);
    }
    std::vector<LatticeVector> rows;
    for (std::size_t k = 0; k < pos.size(); ++k) {
      const long c = d_->marker(d_->coroot_orbit(k)).kind == GaussKind::SU3 ? 2 : 1;
      LatticeVector row(r);
      for (int j = 0; j < r; ++j) row[j] = bilinear_B(pos[k], LatticeVector::unit(r, j)) / c;
      rows.push_back(row);
    }
    SmithForm s = smith_normal_form(row_basis(r, rows));
    // Bn lambda = 0 mod n  <=>  D (Rinv lambda) = 0 mod n.
    std::vector<long> m(r);
    for (int i = 0; i < r; ++i) m[i] = n_ / std::gcd(static_cast<long>(n_), s.d[i]);
    cosets_ = CosetSpace(Sublattice(s.Rinv, s.R, m), n_);
  }

  const RelativeRootDatum& datum() const { return *d_; }
  std::shared_ptr<const RelativeRootDatum> datum_ptr() const { return d_; }
  int rank() const { return d_->rank(); }
  int n() const { return n_; }
  const std::vector<long>& Q() const { return Q_; }
  long Q(int i) const { return Q_.at(i); }
  /// B(e_i, e_j)
  const LatticeMatrix& B_matrix() const { return B_; }

  long bilinear_B(const LatticeVector& a, const LatticeVector& b) const {
    long s = 0;
    for (int i = 0; i < rank(); ++i)
      for (int j = 0; j < rank(); ++j) s += a[i] * B_(i, j) * b[j];
    return s;
  }
  long Q_of(const LatticeVector& v) const { return bilinear_B(v, v) / 2; }

  /// n_alpha for the simple coroot i.
  long n_alpha(int i) const { return n_ / std::gcd(static_cast<long>(n_), std::abs(Q_.at(i))); }
  int eps_alpha(int i) const { return n_alpha(i) % 2 == 0 ? 1 : -1; }
  /// Per positive coroot (same order as datum().positive_coroots()).
  long Q_pos(std::size_t k) const { return Qpos_.at(k); }
  long n_pos(std::size_t k) const { return npos_.at(k); }
  int eps_pos(std::size_t k) const { return npos_.at(k) % 2 == 0 ? 1 : -1; }
  long n_of(const LatticeVector& coroot) const { return n_pos(d_->coroot_index(coroot.lex_positive() ? coroot : -coroot)); }

  const CosetSpace& cosets() const { return cosets_; }

 private:
  void validate_Q() const {
    const int r = rank();
    for (int i = 0; i < r; ++i)
      if (Q_[i] == 0) throw ConfigError("Q", "Q values must be nonzero");
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        if (B_(i, j) != B_(j, i))
          throw ConfigError("Q", "Q is not W-invariant: B(alpha_" + std::to_string(i + 1) + ", alpha_" + std::to_string(j + 1) +
                                     ") is not symmetric");
    const auto& pos = d_->positive_coroots();
    for (std::size_t k = 0; k < pos.size(); ++k) {
      const int o = d_->coroot_orbit(k);
      if (bilinear_B(pos[k], pos[k]) != 2 * Q_[o])
        throw ConfigError("Q", "Q is not W-invariant on the coroot " + to_string(pos[k]));
    }
    for (int i = 0; i < r; ++i) {
      if (d_->marker(i).kind != GaussKind::SU3) continue;
      for (int j = 0; j < r; ++j)
        if (d_->cartan()(j, i) % 2 != 0 && j != i)
          throw ConfigError("markers", "SU3 node " + std::to_string(i + 1) + " needs B(alpha, mu)/2 divisible by Q(alpha)");
    }
  }

  std::shared_ptr<const RelativeRootDatum> d_;
  int n_;
  std::vector<long> Q_;
  LatticeMatrix B_;
  std::vector<long> Qpos_, npos_;
  CosetSpace cosets_;
};

inline long bilinear_B(const MetaplecticStructure& m, const LatticeVector& a, const LatticeVector& b) {
  return m.bilinear_B(a, b);
}
inline const CosetSpace& sublattice_and_cosets(const MetaplecticStructure& m) { return m.cosets(); }
inline bool same_coset(const CosetSpace& c, const LatticeVector& a, const LatticeVector& b) { return c.same_coset(a, b); }

inline MetaplecticStructure make_cover(const std::string& type, int n, std::vector<long> Q, std::vector<Marker> markers = {}) {
  return MetaplecticStructure(std::make_shared<const RelativeRootDatum>(build_datum(type, std::move(markers))), n, std::move(Q));
}

}  // namespace mpw
