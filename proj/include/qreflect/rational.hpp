#pragma once

#include <vector>

#include "qreflect/affine.hpp"
#include "qreflect/report.hpp"

namespace qreflect {

/// Oscillator realization at q = 1: generators obey the classical
/// [e_ij, e_kl] = d_jk e_il - d_li e_kj, and the barred copies coincide
/// with the plain ones.
Rep classical_rep(int N, long m);

/// Additive-parameter operators on module (x) auxiliary space:
/// block (i, j) of the first is s*u*d_ij + e_ji, of the second -s*u*d_ij + e_ji.
BlockOp rational_L(const Rep& rep, long s, const Scalar& u);
BlockOp rational_Lbar(const Rep& rep, long s, const Scalar& u);

/// Diagonal boundary matrix: entry k is s*u + p below the split, -s*u + p above.
Matrix rational_k_matrix(int N, int a, long s, const Scalar& u, const Scalar& p, Mode mode);

/// Normalized diagonal boundary operator, as a finite product of shifted
/// linear factors in the block weight sums (a ratio of two gamma functions
/// up to a weight-independent constant). `solution` selects which block the
/// numerator argument tracks: 1 uses the leading-block sum, 2 the trailing
/// one with the sign of p flipped. Throws vanishing_factor when a factor in
/// the denominator product is zero.
Matrix rational_k_operator(const Rep& rep, int a, long s, const Scalar& u, const Scalar& p,
                           int solution = 1);

/// q-deformed gamma function evaluated numerically for 0 < q < 1.
/// terms <= 0 selects a truncation adaptive to q; otherwise exactly `terms`
/// factors are kept in each infinite product.
double q_gamma(double x, double q, long terms = 0);

/// Classical defining relations, coincidence of the barred copy, and the
/// central element acting by m.
std::vector<CheckResult> check_classical_defining(const Rep& rep);

/// Boundary-operator transport: same-block generators commute with the
/// operator, and cross-block generators satisfy the additive two-sided
/// exchange with quadratic tails. Both solutions are exercised.
std::vector<CheckResult> check_rational_intertwining(const Rep& rep, int a, long s,
                                                     const Scalar& u, const Scalar& p);

/// Additive-parameter boundary consistency equation on module (x) auxiliary
/// space, for both operator solutions. `perturb` spoils one boundary
/// eigenvalue and is expected to fail (negative control).
std::vector<CheckResult> check_rational_reflection(const Rep& rep, int a, long s, const Scalar& u,
                                                   const Scalar& v, const Scalar& p,
                                                   bool perturb = false);

/// Quadratic sufficiency conditions on the realization, block by block, and
/// the contraction identity sum_k e_ki e_jk = (m-1) e_ji across blocks.
std::vector<CheckResult> check_rational_conditions(const Rep& rep, int a);

/// Floating-point degeneration rows: the multiplicative-parameter operators,
/// boundary matrix, and boundary operator all converge to their additive
/// counterparts as q -> 1, and the q-gamma function approaches the classical
/// one under adaptive truncation (a fixed 400-factor truncation does not,
/// reported as a finding).
std::vector<CheckResult> check_rational_limits(int N, long m, int a, const Scalar& u,
                                               const Scalar& p_plus, const Scalar& p_minus);

}  // namespace qreflect
