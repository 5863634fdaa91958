#pragma once

#include <vector>

#include "qreflect/scalar.hpp"

namespace qreflect {

/// Dense square matrix over Scalar.  All operators in this project act on a
/// single fixed space (a truncated module, C^N, or a tensor flattening), so
/// only square shapes are supported.
class Matrix {
 public:
  Matrix() : n_(0), mode_(Mode::exact) {}
  Matrix(int n, Mode mode) : n_(n), mode_(mode), a_(static_cast<size_t>(n) * n, Scalar::zero(mode)) {}

  static Matrix identity(int n, Mode mode);
  static Matrix diagonal(const std::vector<Scalar>& entries);

  int dim() const { return n_; }
  Mode mode() const { return mode_; }

  Scalar& at(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
  const Scalar& at(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

  bool is_diagonal() const;
  bool is_zero() const;
  double max_abs() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

  Matrix operator*(const Matrix& o) const;
  Matrix scaled(const Scalar& s) const;
  Matrix operator-() const;

  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  std::string str(const char* col_sep = " ", const char* row_sep = "\n") const;

 private:
  int n_;
  Mode mode_;
  std::vector<Scalar> a_;
};

/// [A, B] = AB - BA
Matrix comm(const Matrix& a, const Matrix& b);

/// [A, B]_alpha = AB - alpha BA
Matrix qcomm(const Matrix& a, const Matrix& b, const Scalar& alpha);

/// Kronecker product; composite row index is i_a * dim(b) + i_b.
Matrix kron(const Matrix& a, const Matrix& b);

/// max |(lhs - rhs)_ij| / (1 + max |lhs_ij|); exact inputs compare exactly
/// (returns 0.0 or the same ratio evaluated through double approximations).
double rel_residual(const Matrix& lhs, const Matrix& rhs);

}  // namespace qreflect
