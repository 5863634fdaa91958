#include "qreflect/rep.hpp"

#include <map>

namespace qreflect {

size_t Rep::idx(int i, int j) const {
  if (i < 1 || i > N || j < 1 || j > N)
    throw math_error("generator index out of range: (" + std::to_string(i) + "," +
                     std::to_string(j) + ") for N = " + std::to_string(N));
  return static_cast<size_t>(i - 1) * N + (j - 1);
}

long Rep::leading_sum(int v, int a) const {
  if (!integral) throw math_error("leading_sum needs integer weights");
  long s = 0;
  for (int k = 1; k <= a; ++k) s += weight(v, k);
  return s;
}

Scalar Rep::cartan_exponent(int v, const std::vector<long>& coeff, long shift) const {
  if (static_cast<int>(coeff.size()) != N) throw math_error("cartan coefficient length != N");
  if (integral) {
    long e = shift;
    for (int k = 0; k < N; ++k) e += coeff[k] * wt[v][k];
    return mode == Mode::exact ? Scalar::exact(e) : Scalar::floating(static_cast<double>(e));
  }
  long epart = shift;
  for (int k = 1; k < N; ++k) epart += coeff[k] * wt[v][k];
  Scalar e = Scalar::floating(static_cast<double>(epart));
  if (coeff[0] != 0)
    e += Scalar::floating(static_cast<double>(coeff[0])) *
         (m - Scalar::floating(static_cast<double>(tot[v])));
  return e;
}

Matrix Rep::cartan_pow(const Scalar& base, const std::vector<long>& coeff, long shift) const {
  if (static_cast<int>(coeff.size()) != N) throw math_error("cartan coefficient length != N");
  std::vector<Scalar> vals;
  vals.reserve(D);
  const bool needs_label = !integral && coeff[0] != 0;
  for (int v = 0; v < D; ++v) {
    if (!needs_label) {
      long e = shift;
      if (integral) {
        for (int k = 0; k < N; ++k) e += coeff[k] * wt[v][k];
      } else {
        for (int k = 1; k < N; ++k) e += coeff[k] * wt[v][k];
      }
      vals.push_back(base.pow(e));
    } else {
      vals.push_back(base.pow_general(cartan_exponent(v, coeff, shift)));
    }
  }
  return Matrix::diagonal(vals);
}

Matrix Rep::qnum_cartan(const std::vector<long>& coeff, long shift) const {
  std::vector<Scalar> vals;
  vals.reserve(D);
  const bool needs_label = !integral && coeff[0] != 0;
  for (int v = 0; v < D; ++v) {
    if (!needs_label) {
      long e = shift;
      if (integral) {
        for (int k = 0; k < N; ++k) e += coeff[k] * wt[v][k];
      } else {
        for (int k = 1; k < N; ++k) e += coeff[k] * wt[v][k];
      }
      vals.push_back(qnum(e, q));
    } else {
      Scalar e = cartan_exponent(v, coeff, shift);
      vals.push_back((q.pow_general(e) - q.pow_general(-e)) / (q - q.inv()));
    }
  }
  return Matrix::diagonal(vals);
}

std::vector<char> Rep::interior_mask(long margin) const {
  std::vector<char> mask(D, 1);
  if (!truncated) return mask;
  for (int v = 0; v < D; ++v) mask[v] = (tot[v] + margin <= cutoff) ? 1 : 0;
  return mask;
}

std::vector<std::vector<int>> fock_basis(int N, long cap) {
  const int slots = N - 1;
  std::vector<std::vector<int>> out;
  std::vector<int> cur(slots, 0);
  auto rec = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == slots - 1) {
      cur[pos] = remaining;
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      cur[pos] = v;
      self(self, pos + 1, remaining - v);
    }
  };
  for (long t = 0; t <= cap; ++t) {
    if (slots == 0) {
      if (t == 0) out.push_back({});
      continue;
    }
    rec(rec, 0, static_cast<int>(t));
  }
  return out;
}

Rep fundamental_rep(int N, const Scalar& q) {
  if (N < 2) throw math_error("fundamental_rep needs N >= 2");
  Rep r;
  r.N = N;
  r.D = N;
  r.mode = q.mode();
  r.q = q;
  r.m = Scalar::one(q.mode());
  r.m_int = 1;
  r.integral = true;
  r.cutoff = 1;
  r.wt.assign(N, std::vector<long>(N, 0));
  r.tot.assign(N, 0);
  for (int v = 0; v < N; ++v) {
    r.wt[v][v] = 1;
    r.tot[v] = (v == 0) ? 0 : 1;
  }
  r.e_.assign(static_cast<size_t>(N) * N, Matrix(N, r.mode));
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j) r.gen_mut(i, j).at(i - 1, j - 1) = Scalar::one(r.mode);
  r.ebar_ = r.e_;
  return r;
}

namespace {

/// Shared construction for the symmetric-tensor module; in the integral case
/// cap == m and the top occupation layer is annihilated by the [e_11]_q
/// factor before any raising operator acts, so the truncation is exact.
Rep build_oscillator(int N, const Scalar& m, long m_int, bool integral, long cap, const Scalar& q) {
  if (N < 2) throw math_error("symmetric-tensor module needs N >= 2");
  if (q.is_zero()) throw math_error("q must be nonzero");
  Rep r;
  r.N = N;
  r.mode = q.mode();
  r.q = q;
  r.m = m;
  r.m_int = m_int;
  r.integral = integral;
  r.truncated = !integral;
  r.cutoff = cap;

  const auto basis = fock_basis(N, cap);
  r.D = static_cast<int>(basis.size());
  const int D = r.D;
  const Mode mode = r.mode;

  std::map<std::vector<int>, int> index;
  for (int v = 0; v < D; ++v) index[basis[v]] = v;

  r.wt.assign(D, std::vector<long>(N, 0));
  r.tot.assign(D, 0);
  for (int v = 0; v < D; ++v) {
    long t = 0;
    for (int k = 2; k <= N; ++k) {
      r.wt[v][k - 1] = basis[v][k - 2];
      t += basis[v][k - 2];
    }
    r.tot[v] = t;
    r.wt[v][0] = integral ? (m_int - t) : 0;
  }

  // Ladder matrices over the truncated basis: c_k lowers slot k with weight
  // [n_k]_q, cd_k raises it with weight 1 (entries beyond the cap drop out).
  std::vector<Matrix> C(N + 1, Matrix(D, mode)), Cd(N + 1, Matrix(D, mode));
  for (int k = 2; k <= N; ++k) {
    for (int v = 0; v < D; ++v) {
      const int nk = basis[v][k - 2];
      if (nk > 0) {
        std::vector<int> lower = basis[v];
        lower[k - 2] -= 1;
        C[k].at(index.at(lower), v) = qnum(nk, q);
      }
      if (r.tot[v] + 1 <= cap) {
        std::vector<int> upper = basis[v];
        upper[k - 2] += 1;
        Cd[k].at(index.at(upper), v) = Scalar::one(mode);
      }
    }
  }

  // Diagonal q^{sign * sum_{k=lo}^{hi} n_k}; exponents are occupation counts,
  // hence integers even when the label m is not.
  auto occ_qpow = [&](int lo, int hi, int sign) {
    std::vector<Scalar> vals;
    vals.reserve(D);
    for (int v = 0; v < D; ++v) {
      long e = 0;
      for (int k = lo; k <= hi; ++k) e += basis[v][k - 2];
      vals.push_back(q.pow(sign * e));
    }
    return Matrix::diagonal(vals);
  };

  // [e_11]_q = [m - sum n_k]_q; vanishes on the top layer of an integral
  // module, which is what keeps the truncated cd_i action exact.
  std::vector<Scalar> top_vals;
  top_vals.reserve(D);
  for (int v = 0; v < D; ++v) {
    if (integral) {
      top_vals.push_back(qnum(m_int - r.tot[v], q));
    } else {
      Scalar e = m - Scalar::floating(static_cast<double>(r.tot[v]));
      top_vals.push_back((q.pow_general(e) - q.pow_general(-e)) / (q - q.inv()));
    }
  }
  const Matrix e11_qnum = Matrix::diagonal(top_vals);

  r.e_.assign(static_cast<size_t>(N) * N, Matrix(D, mode));
  r.ebar_.assign(static_cast<size_t>(N) * N, Matrix(D, mode));

  for (int k = 1; k <= N; ++k) {
    std::vector<Scalar> diag;
    diag.reserve(D);
    for (int v = 0; v < D; ++v) {
      if (k == 1) {
        diag.push_back(integral
                           ? (mode == Mode::exact ? Scalar::exact(m_int - r.tot[v])
                                                  : Scalar::floating(static_cast<double>(m_int - r.tot[v])))
                           : m - Scalar::floating(static_cast<double>(r.tot[v])));
      } else {
        diag.push_back(mode == Mode::exact ? Scalar::exact(r.wt[v][k - 1])
                                           : Scalar::floating(static_cast<double>(r.wt[v][k - 1])));
      }
    }
    r.gen_mut(k, k) = Matrix::diagonal(diag);
    r.genbar_mut(k, k) = r.gen(k, k);
  }

  for (int j = 2; j <= N; ++j) {
    r.gen_mut(1, j) = C[j] * occ_qpow(2, j - 1, +1);
    r.genbar_mut(1, j) = C[j] * occ_qpow(2, j - 1, -1);
  }
  for (int i = 2; i <= N; ++i) {
    r.gen_mut(i, 1) = Cd[i] * (e11_qnum * occ_qpow(2, i - 1, -1));
    r.genbar_mut(i, 1) = Cd[i] * (e11_qnum * occ_qpow(2, i - 1, +1));
  }
  for (int i = 2; i <= N; ++i)
    for (int j = 2; j <= N; ++j) {
      if (i == j) continue;
      if (i < j) {
        r.gen_mut(i, j) = Cd[i] * C[j] * occ_qpow(i + 1, j - 1, +1);
        r.genbar_mut(i, j) = Cd[i] * C[j] * occ_qpow(i + 1, j - 1, -1);
      } else {
        r.gen_mut(i, j) = Cd[i] * C[j] * occ_qpow(j + 1, i - 1, -1);
        r.genbar_mut(i, j) = Cd[i] * C[j] * occ_qpow(j + 1, i - 1, +1);
      }
    }
  return r;
}

}  // namespace

Rep oscillator_rep(int N, long m, const Scalar& q) {
  if (m < 0) throw math_error("symmetric-tensor label m must be >= 0");
  Scalar label = q.mode() == Mode::exact ? Scalar::exact(m) : Scalar::floating(static_cast<double>(m));
  return build_oscillator(N, label, m, true, m, q);
}

Rep oscillator_rep_cutoff(int N, const Scalar& m, const Scalar& q, long L) {
  if (m.mode() != Mode::floating || q.mode() != Mode::floating)
    throw mode_error("cutoff module is float-mode only");
  if (L < 0) throw math_error("cutoff must be >= 0");
  return build_oscillator(N, m, -1, false, L, q);
}

Rep derive_root_vectors(const Rep& in) {
  Rep r = in;
  const Scalar qv = r.q;
  const Scalar qinv = qv.inv();
  for (int d = 2; d <= r.N - 1; ++d) {
    for (int j = 1; j + d <= r.N; ++j) {
      const int i = j + d;
      // lower triangle, distance d
      r.gen_mut(i, j) = qcomm(r.gen(i, j + 1), r.gen(j + 1, j), qv);
      r.genbar_mut(i, j) = qcomm(r.genbar(i, j + 1), r.genbar(j + 1, j), qinv);
      // upper triangle, distance d
      r.gen_mut(j, i) = qcomm(r.gen(j, j + 1), r.gen(j + 1, i), qinv);
      r.genbar_mut(j, i) = qcomm(r.genbar(j, j + 1), r.genbar(j + 1, i), qv);
    }
  }
  return r;
}

}  // namespace qreflect
