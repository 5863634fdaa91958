#include "qreflect/matrix.hpp"

#include <algorithm>

namespace qreflect {

Matrix Matrix::identity(int n, Mode mode) {
  Matrix m(n, mode);
  for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one(mode);
  return m;
}

Matrix Matrix::diagonal(const std::vector<Scalar>& entries) {
  if (entries.empty()) throw math_error("diagonal matrix needs at least one entry");
  Matrix m(static_cast<int>(entries.size()), entries.front().mode());
  for (size_t i = 0; i < entries.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(i)) = entries[i];
  return m;
}

bool Matrix::is_diagonal() const {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (i != j && !at(i, j).is_zero()) return false;
  return true;
}

bool Matrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Scalar& s) { return s.is_zero(); });
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (const Scalar& s : a_) m = std::max(m, s.abs());
  return m;
}

namespace {

void check_compatible(const Matrix& a, const Matrix& b, const char* op) {
  if (a.dim() != b.dim())
    throw math_error(std::string("dimension mismatch in '") + op + "': " +
                     std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
  if (a.mode() != b.mode())
    throw mode_error(std::string("mode mismatch in '") + op + "': " + to_string(a.mode()) +
                     " vs " + to_string(b.mode()));
}

}  // namespace

Matrix& Matrix::operator+=(const Matrix& o) {
  check_compatible(*this, o, "+");
  for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  check_compatible(*this, o, "-");
  for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

Matrix Matrix::operator*(const Matrix& o) const {
  check_compatible(*this, o, "*");
  Matrix c(n_, mode_);
  for (int i = 0; i < n_; ++i) {
    for (int k = 0; k < n_; ++k) {
      const Scalar& aik = at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < n_; ++j) {
        const Scalar& bkj = o.at(k, j);
        if (bkj.is_zero()) continue;
        c.at(i, j) += aik * bkj;
      }
    }
  }
  return c;
}

Matrix Matrix::scaled(const Scalar& s) const {
  Matrix c(n_, mode_);
  if (s.is_zero()) return c;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (!at(i, j).is_zero()) c.at(i, j) = at(i, j) * s;
  return c;
}

Matrix Matrix::operator-() const { return scaled(-Scalar::one(mode_)); }

bool Matrix::operator==(const Matrix& o) const {
  check_compatible(*this, o, "==");
  for (size_t i = 0; i < a_.size(); ++i)
    if (a_[i] != o.a_[i]) return false;
  return true;
}

std::string Matrix::str(const char* col_sep, const char* row_sep) const {
  std::string out;
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      if (j) out += col_sep;
      out += at(i, j).str();
    }
    if (i + 1 < n_) out += row_sep;
  }
  return out;
}

Matrix comm(const Matrix& a, const Matrix& b) { return a * b - b * a; }

Matrix qcomm(const Matrix& a, const Matrix& b, const Scalar& alpha) {
  return a * b - (b * a).scaled(alpha);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  if (a.mode() != b.mode()) throw mode_error("mode mismatch in kron");
  const int na = a.dim(), nb = b.dim();
  Matrix c(na * nb, a.mode());
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j) {
      const Scalar& aij = a.at(i, j);
      if (aij.is_zero()) continue;
      for (int k = 0; k < nb; ++k)
        for (int l = 0; l < nb; ++l) {
          const Scalar& bkl = b.at(k, l);
          if (bkl.is_zero()) continue;
          c.at(i * nb + k, j * nb + l) = aij * bkl;
        }
    }
  return c;
}

double rel_residual(const Matrix& lhs, const Matrix& rhs) {
  check_compatible(lhs, rhs, "rel_residual");
  double diff = 0.0;
  for (int i = 0; i < lhs.dim(); ++i)
    for (int j = 0; j < lhs.dim(); ++j) {
      Scalar d = lhs.at(i, j) - rhs.at(i, j);
      diff = std::max(diff, d.abs());
    }
  return diff / (1.0 + lhs.max_abs());
}

}  // namespace qreflect
