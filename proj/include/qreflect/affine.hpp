#pragma once

#include <string>
#include <vector>

#include "qreflect/rep.hpp"
#include "qreflect/report.hpp"

namespace qreflect {

/// Integer gradation of the spectral parameter: one part s_i >= 0 per site
/// with positive total.  xi(k) = s_k + ... + s_N are the partial tails and
/// total() = xi(1) is the overall period.
struct Gradation {
  std::vector<long> s;

  explicit Gradation(std::vector<long> parts);
  static Gradation principal(int N);

  int size() const { return static_cast<int>(s.size()); }
  long part(int i) const { return s.at(i - 1); }
  long xi(int k) const;
  long total() const { return xi(1); }
  bool all_positive() const;
  std::string str() const;
};

/// Operator on module (x) auxiliary space: an N x N grid of D x D blocks,
/// block (k, j) being the coefficient of the auxiliary matrix unit E_kj.
struct BlockOp {
  int N = 0;
  int D = 0;
  Mode mode = Mode::exact;
  std::vector<Matrix> blocks;

  BlockOp(int N, int D, Mode mode);

  Matrix& block(int k, int j) { return blocks.at(static_cast<size_t>(k - 1) * N + (j - 1)); }
  const Matrix& block(int k, int j) const {
    return blocks.at(static_cast<size_t>(k - 1) * N + (j - 1));
  }

  /// Flat (D*N) x (D*N) matrix under the composite index (v, i) -> (v-1)*N + (i-1).
  Matrix flatten() const;
};

BlockOp unflatten(const Matrix& flat, int N, int D);

/// Laurent template in the spectral parameter: each block holds a list of
/// (exponent, coefficient-matrix) terms, so one construction serves every
/// evaluation point.
struct LTemplate {
  struct Term {
    long expo;
    Matrix coeff;
  };

  int N = 0;
  int D = 0;
  Mode mode = Mode::exact;
  std::vector<std::vector<Term>> terms;

  LTemplate(int N, int D, Mode mode);
  void add(int k, int j, long expo, Matrix coeff);
  BlockOp at(const Scalar& x) const;
  /// Constant term; requires every listed exponent to be >= 0.
  BlockOp at_zero() const;
  /// Constant term from the other side; requires every listed exponent <= 0.
  BlockOp at_infinity() const;
};

enum class EvVariant { ev, evbar };
std::string to_string(EvVariant v);

/// Images of the loop generators e_i, f_i, k_i (i = 1..N, index N closing
/// the cycle) on a finite module at spectral point x.
struct AffineGenSet {
  int N = 0;
  Mode mode = Mode::exact;
  Scalar q;
  Rep rep;
  Gradation grad;
  Scalar x;
  EvVariant variant = EvVariant::ev;
  std::vector<Matrix> e, f, k;

  AffineGenSet(const Rep& r, const Gradation& g, const Scalar& x_, EvVariant v);

  const Matrix& ei(int i) const { return e.at(i - 1); }
  const Matrix& fi(int i) const { return f.at(i - 1); }
  const Matrix& ki(int i) const { return k.at(i - 1); }
  /// Diagonal q^{sign * h_i} with h_i = k_i - k_{i+1}, site indices cyclic.
  Matrix qpow_h(int i, int sign) const;
};

/// Spectral-parameter evaluation of the loop generators on a module.  The
/// two variants differ only in the cycle-closing pair (e_N, f_N): `ev` uses
/// the unbarred long generators with inverse-power dressing, `evbar` the
/// barred ones with direct-power dressing.
AffineGenSet evaluate(const Rep& rep, const Gradation& grad, const Scalar& x, EvVariant variant);

LTemplate build_L_template(const Rep& rep, const Gradation& grad);
LTemplate build_Lbar_template(const Rep& rep, const Gradation& grad);
BlockOp build_L(const Rep& rep, const Gradation& grad, const Scalar& x);
BlockOp build_Lbar(const Rep& rep, const Gradation& grad, const Scalar& x);

/// N^2 x N^2 solution of the spectral Yang-Baxter equation in ratio form,
/// and its barred partner.
Matrix build_R(const Gradation& grad, const Scalar& q, const Scalar& x);
Matrix build_Rbar(const Gradation& grad, const Scalar& q, const Scalar& x);

/// Defining relations of the cyclic generator set: Cartan actions, e-f
/// pairings, distant commutations, cubic (rank >= 3) or quartic (rank 2)
/// Serre relations, and centrality of the level element.
std::vector<CheckResult> check_affine_serre(const AffineGenSet& g);

/// Coproduct intertwining of L and Lbar between a module evaluated at x and
/// the fundamental evaluated at y, at spectral ratio x/y.
std::vector<CheckResult> check_L_intertwining(const Rep& rep, const Gradation& grad,
                                              const Scalar& x, const Scalar& y);

/// The fundamental-module specialization of L / Lbar reproduces the closed
/// R / Rbar forms, including both constant-term limits.
std::vector<CheckResult> check_R_consistency(const Gradation& grad, const Scalar& q,
                                             const Scalar& x);

/// Spectral Yang-Baxter equation for R in ratio form on three legs.
/// Asserted at the principal gradation; reported as a finding otherwise.
std::vector<CheckResult> check_ybe(const Gradation& grad, const Scalar& q, const Scalar& x,
                                   const Scalar& y, const Scalar& z);

/// Index-reversal transport: rebuilding L from the literal generator table
/// with flipped indices, barred generators, and negated-reversed gradation
/// parts reproduces Lbar at the original gradation.
std::vector<CheckResult> check_transLb(const Rep& rep, const Gradation& grad, const Scalar& x);

/// Structural properties of the templates: weight-zero block pattern, the
/// two constant-term limits, and the diagonal-similarity covariance that
/// moves any gradation to the principal one at rescaled spectral point.
std::vector<CheckResult> check_L_structure(const Rep& rep, const Gradation& grad, const Scalar& t);

/// Product identity for L(x) times a dressed Lbar: diagonal blocks reduce to
/// the scalar -x^s - x^{-s} plus the dressing element G_i, off-diagonal
/// blocks close on the mixed-index composites A and C.  Requires the module
/// deformation parameter to equal q_root^total.
std::vector<CheckResult> check_LLbar_product(const Rep& rep, const Gradation& grad,
                                             const Scalar& x, const Scalar& q_root);

/// The two evaluation variants agree on the finite part and differ on the
/// cycle-closing pair by the fixed power q^{-+2(m-1)}.
std::vector<CheckResult> check_ev_evbar(const Rep& rep, const Gradation& grad, const Scalar& x);

}  // namespace qreflect
