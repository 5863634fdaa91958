#pragma once

#include <vector>

#include "qreflect/matrix.hpp"

namespace qreflect {

/// A finite-dimensional module with the full e_ij / ebar_ij generator tables.
///
/// Two families are provided: the fundamental module on C^N and the level-m
/// symmetric-tensor module realized on the truncated bosonic Fock basis
/// {(n_2,...,n_N) : sum n_k <= m}.  In float mode the symmetric-tensor
/// construction also accepts a non-integer label m with a hard cutoff L on
/// the total occupation; such modules carry truncated = true and relation
/// residuals are only meaningful on interior columns (see interior_mask).
struct Rep {
  int N = 0;  // algebra rank
  int D = 0;  // module dimension
  Mode mode = Mode::exact;
  Scalar q;

  Scalar m;            // highest-weight label (m, 0, ..., 0)
  long m_int = 0;      // valid when integral
  bool integral = true;
  bool truncated = false;  // hard occupation cutoff (non-integer m only)
  long cutoff = 0;         // max total occupation in the basis

  std::vector<std::vector<long>> wt;  // D x N integer weights (integral only)
  std::vector<long> tot;              // total occupation per basis vector

  /// e_ij and ebar_ij, 1-based indices.
  const Matrix& gen(int i, int j) const { return e_.at(idx(i, j)); }
  const Matrix& genbar(int i, int j) const { return ebar_.at(idx(i, j)); }
  Matrix& gen_mut(int i, int j) { return e_.at(idx(i, j)); }
  Matrix& genbar_mut(int i, int j) { return ebar_.at(idx(i, j)); }

  long weight(int v, int k) const { return wt.at(v).at(k - 1); }  // integral only

  /// sum_{k<=a} weight_k over the first a slots (integral only).
  long leading_sum(int v, int a) const;

  /// Diagonal base^{sum_k coeff_k e_kk + shift}.  coeff has length N.
  Matrix cartan_pow(const Scalar& base, const std::vector<long>& coeff, long shift = 0) const;
  Matrix cartan_qpow(const std::vector<long>& coeff, long shift = 0) const {
    return cartan_pow(q, coeff, shift);
  }

  /// Diagonal [h]_q for h = sum_k coeff_k e_kk + shift.
  Matrix qnum_cartan(const std::vector<long>& coeff, long shift = 0) const;

  /// Scalar exponent of a single basis vector: sum_k coeff_k weight_k + shift.
  Scalar cartan_exponent(int v, const std::vector<long>& coeff, long shift = 0) const;

  /// Columns whose total occupation stays at least `margin` below the cutoff
  /// (all-true for untruncated modules).
  std::vector<char> interior_mask(long margin = 4) const;

  std::vector<Matrix> e_, ebar_;

 private:
  size_t idx(int i, int j) const;
};

/// Fundamental module: D = N, e_ij = ebar_ij = E_ij.
Rep fundamental_rep(int N, const Scalar& q);

/// Level-m symmetric-tensor module on the truncated Fock basis (integer m >= 0).
Rep oscillator_rep(int N, long m, const Scalar& q);

/// Float-mode module with non-integer label m and hard occupation cutoff L.
Rep oscillator_rep_cutoff(int N, const Scalar& m, const Scalar& q, long L);

/// Rebuilds every |i-j| >= 2 generator from the simple-root generators via
/// the fixed-k ladder recursions; diagonal and simple-root entries are kept.
Rep derive_root_vectors(const Rep& in);

/// Basis enumeration used by the symmetric-tensor module: all occupation
/// vectors (n_2,...,n_N) with sum <= cap, graded lexicographic order.
std::vector<std::vector<int>> fock_basis(int N, long cap);

}  // namespace qreflect
