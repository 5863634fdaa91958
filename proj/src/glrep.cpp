#include "qreflect/glrep.hpp"

#include <string>

#include "qreflect/relcheck.hpp"

namespace qreflect {
namespace {

Scalar small_int(Mode mode, long v) {
  return mode == Mode::exact ? Scalar::exact(v) : Scalar::floating(static_cast<double>(v));
}

std::vector<long> pair_coeff(int N, int i, long si, int j, long sj) {
  std::vector<long> c(N, 0);
  c[i - 1] += si;
  c[j - 1] += sj;
  return c;
}

/// Entries of g inconsistent with the weight shift of a generator carrying
/// index pair (i,j); the result must vanish for a weight-graded module.
Matrix weight_violations(const Rep& rep, const Matrix& g, int i, int j) {
  Matrix out = g;
  for (int r = 0; r < rep.D; ++r)
    for (int c = 0; c < rep.D; ++c) {
      if (out.at(r, c).is_zero()) continue;
      bool consistent = true;
      for (int k = 1; k <= rep.N; ++k) {
        const long expect = rep.weight(c, k) + (k == i ? 1 : 0) - (k == j ? 1 : 0);
        if (rep.weight(r, k) != expect) {
          consistent = false;
          break;
        }
      }
      if (consistent) out.at(r, c) = Scalar::zero(out.mode());
    }
  return out;
}

/// The thirteen exchange families over all admissible index tuples at the
/// module's rank.  `bar` runs the mirrored catalogue: barred generators with
/// the deformation parameter inverted.
void exchange_families(RelChecker& C, const Rep& rep, bool bar) {
  const int N = rep.N;
  const Scalar Q = bar ? rep.q.inv() : rep.q;
  const Scalar w = Q - Q.inv();
  const std::string sfx = bar ? "b" : "";
  auto E = [&](int i, int j) -> const Matrix& { return bar ? rep.genbar(i, j) : rep.gen(i, j); };
  auto P = [&](int i, long si, int j, long sj) {
    return rep.cartan_pow(Q, pair_coeff(N, i, si, j, sj));
  };

  for (int a = 3; a <= N; ++a)
    for (int c = 2; c < a; ++c)
      for (int b = 1; b < c; ++b)
        C.equal("a1.1" + sfx, inst3("a", a, "c", c, "b", b), E(a, b), qcomm(E(a, c), E(c, b), Q));

  for (int a = 1; a <= N - 2; ++a)
    for (int c = a + 1; c <= N - 1; ++c)
      for (int b = c + 1; b <= N; ++b)
        C.equal("a1.2" + sfx, inst3("a", a, "c", c, "b", b), E(a, b),
                qcomm(E(a, c), E(c, b), Q.inv()));

  for (int a = 1; a <= N; ++a)
    for (int b = a + 1; b <= N; ++b) {
      const Matrix rhs = (P(a, 1, b, -1) - P(a, -1, b, 1)).scaled(w.inv());
      C.equal("a1.3" + sfx, inst2("a", a, "b", b), comm(E(a, b), E(b, a)), rhs);
    }

  for (int a = 1; a <= N; ++a)
    for (int b = 1; b <= N; ++b)
      for (int c = 1; c <= N; ++c)
        for (int d = 1; d <= N; ++d) {
          const bool p1 = b < d && d < a && a < c;
          const bool p2 = a < c && c < b && b < d;
          if (!p1 && !p2) continue;
          C.equal("a1.4" + sfx, inst4(a, b, c, d), comm(E(d, c), E(b, a)),
                  (E(d, a) * E(b, c)).scaled(-w));
        }

  for (int a = 1; a <= N; ++a)
    for (int b = 1; b <= N; ++b)
      for (int c = 1; c <= N; ++c)
        for (int d = 1; d <= N; ++d) {
          const bool vanish = (d < c && c < b && b < a) || (d > c && c > b && b > a) ||
                              (d < b && b < a && a < c) || (d > b && b > a && a > c) ||
                              (d < c && c <= a && a < b) || (c < d && d <= b && b < a) ||
                              (d < a && a < b && b < c) || (c < b && b < a && a < d);
          if (!vanish) continue;
          C.zero("a1.5" + sfx, inst4(a, b, c, d), comm(E(d, c), E(b, a)));
        }

  for (int d = 1; d <= N; ++d)
    for (int a = d + 1; a <= N; ++a)
      for (int c = a + 1; c <= N; ++c)
        for (int b = c + 1; b <= N; ++b)
          C.equal("a1.6" + sfx, inst4(a, b, c, d), comm(E(d, c), E(b, a)),
                  (P(a, 1, c, -1) * E(d, a) * E(b, c)).scaled(-w));

  for (int a = 1; a <= N; ++a)
    for (int d = a + 1; d <= N; ++d)
      for (int b = d + 1; b <= N; ++b)
        for (int c = b + 1; c <= N; ++c)
          C.equal("a1.7" + sfx, inst4(a, b, c, d), comm(E(d, c), E(b, a)),
                  (E(d, a) * E(b, c) * P(b, 1, d, -1)).scaled(w));

  for (int a = 1; a <= N; ++a)
    for (int b = a + 1; b <= N; ++b)
      for (int c = b + 1; c <= N; ++c)
        C.equal("a1.8" + sfx, inst3("a", a, "b", b, "c", c), comm(E(b, a), E(a, c)),
                E(b, c) * P(b, 1, a, -1));

  for (int a = 1; a <= N; ++a)
    for (int c = a + 1; c <= N; ++c)
      for (int b = c + 1; b <= N; ++b)
        C.equal("a1.9" + sfx, inst3("a", a, "b", b, "c", c), comm(E(b, a), E(a, c)),
                P(a, 1, c, -1) * E(b, c));

  for (int a = 1; a <= N; ++a)
    for (int d = a + 1; d <= N; ++d)
      for (int b = d + 1; b <= N; ++b)
        C.equal("a1.10" + sfx, inst3("a", a, "d", d, "b", b), comm(E(d, b), E(b, a)),
                E(d, a) * P(b, 1, d, -1));

  for (int d = 1; d <= N; ++d)
    for (int a = d + 1; a <= N; ++a)
      for (int b = a + 1; b <= N; ++b)
        C.equal("a1.11" + sfx, inst3("a", a, "d", d, "b", b), comm(E(d, b), E(b, a)),
                P(a, 1, b, -1) * E(d, a));

  for (int a = 1; a <= N; ++a)
    for (int b = 1; b <= N; ++b)
      for (int d = 1; d <= N; ++d) {
        if (!((a < b && b < d) || (b < d && d < a))) continue;
        C.zero("a1.12" + sfx, inst3("a", a, "b", b, "d", d), qcomm(E(d, a), E(b, a), Q.inv()));
      }

  for (int a = 1; a <= N; ++a)
    for (int b = 1; b <= N; ++b)
      for (int c = 1; c <= N; ++c) {
        if (!((c < a && a < b) || (b < c && c < a))) continue;
        C.zero("a1.13" + sfx, inst3("a", a, "b", b, "c", c), qcomm(E(b, c), E(b, a), Q));
      }
}

/// Resummation chains mixing the two generator families, plus the bracket
/// shift identities.  Diagonal factors multiply on the right throughout.
void mixed_chains(RelChecker& C, const Rep& rep) {
  const int N = rep.N;
  const Scalar& q = rep.q;
  const Scalar w = q - q.inv();
  const Scalar q2 = q.pow(2);
  const Scalar qm2 = q.pow(-2);
  auto term = [&](int k, int i, int j) { return rep.gen(k, i) * rep.genbar(j, k); };
  auto qpow = [&](int i, long si, int j, long sj, long shift) {
    return rep.cartan_qpow(pair_coeff(N, i, si, j, sj), shift);
  };

  for (int j = 1; j <= N; ++j)
    for (int i = j + 1; i <= N; ++i)
      for (int l = j; l <= i - 1; ++l) {
        Matrix A = rep.gen(j, i);
        for (int k = j + 1; k <= l; ++k) A -= term(k, i, j).scaled(w);
        Matrix B = rep.genbar(j, i);
        for (int k = l + 1; k <= i - 1; ++k) B += term(k, i, j).scaled(w);
        const Matrix closed = (l == i - 1)
                                  ? rep.genbar(j, i)
                                  : qcomm(rep.genbar(j, l + 1), rep.gen(l + 1, i), q.inv());
        const std::string inst = inst3("j", j, "i", i, "l", l);
        C.equal("eeb1", inst + " split", A, B);
        C.equal("eeb1", inst + " closed", A, closed);
      }

  for (int i = 1; i <= N; ++i)
    for (int j = i + 1; j <= N; ++j)
      for (int l = i; l <= j - 1; ++l) {
        Matrix A = rep.genbar(j, i);
        for (int k = i + 1; k <= l; ++k) A -= term(k, i, j).scaled(w);
        Matrix B = rep.gen(j, i);
        for (int k = l + 1; k <= j - 1; ++k) B += term(k, i, j).scaled(w);
        const Matrix closed = (l == j - 1)
                                  ? rep.gen(j, i)
                                  : qcomm(rep.genbar(j, l + 1), rep.gen(l + 1, i), q.inv());
        const std::string inst = inst3("j", j, "i", i, "l", l);
        C.equal("eeb1-2", inst + " split", A, B);
        C.equal("eeb1-2", inst + " closed", A, closed);
      }

  for (int l = 1; l <= N; ++l)
    for (int j = l + 1; j <= N; ++j)
      for (int i = j + 1; i <= N; ++i) {
        Matrix lhs = rep.gen(j, i);
        for (int k = l; k <= j - 1; ++k) lhs += (term(k, i, j) * qpow(k, 1, j, -1, -1)).scaled(w);
        const Matrix rhs = qcomm(rep.genbar(j, l), rep.gen(l, i), qm2) * qpow(l, 1, j, -1, 0);
        C.equal("eeb2", inst3("l", l, "j", j, "i", i), lhs, rhs);
      }

  for (int l = 1; l <= N; ++l)
    for (int i = l + 1; i <= N; ++i)
      for (int j = i + 1; j <= N; ++j) {
        Matrix lhs = rep.genbar(j, i);
        for (int k = l; k <= i - 1; ++k) lhs += (term(k, i, j) * qpow(k, 1, i, -1, 0)).scaled(w);
        const Matrix rhs = qcomm(rep.genbar(j, l), rep.gen(l, i), qm2) * qpow(l, 1, i, -1, 1);
        C.equal("eeb2-2", inst3("l", l, "j", j, "i", i), lhs, rhs);
      }

  for (int j = 1; j <= N; ++j)
    for (int i = j + 1; i <= N; ++i)
      for (int l = i + 1; l <= N; ++l) {
        Matrix lhs = rep.genbar(j, i);
        for (int k = i + 1; k <= l; ++k) lhs -= (term(k, i, j) * qpow(i, 1, k, -1, 0)).scaled(w);
        const Matrix rhs = qcomm(rep.genbar(j, l), rep.gen(l, i), q2) * qpow(i, 1, l, -1, -1);
        C.equal("eeb3", inst3("j", j, "i", i, "l", l), lhs, rhs);
      }

  for (int i = 1; i <= N; ++i)
    for (int j = i + 1; j <= N; ++j)
      for (int l = j + 1; l <= N; ++l) {
        Matrix lhs = rep.gen(j, i);
        for (int k = j + 1; k <= l; ++k) lhs -= (term(k, i, j) * qpow(j, 1, k, -1, 1)).scaled(w);
        const Matrix rhs = qcomm(rep.genbar(j, l), rep.gen(l, i), q2) * qpow(j, 1, l, -1, 0);
        C.equal("eeb3-2", inst3("j", j, "i", i, "l", l), lhs, rhs);
      }

  for (int l = 1; l <= N - 1; ++l)
    for (int i = 1; i < l; ++i)
      for (int j = 1; j < l; ++j) {
        if (i == j) continue;
        const Matrix lhs = qcomm(rep.genbar(j, l), rep.gen(l, i), q2);
        const Matrix rhs =
            comm(rep.genbar(j, l + 1), rep.gen(l + 1, i)) * qpow(l, 1, l + 1, -1, 0);
        C.equal("brabra1", inst3("i", i, "j", j, "l", l), lhs, rhs);
      }

  for (int l = 2; l <= N; ++l)
    for (int i = l + 1; i <= N; ++i)
      for (int j = l + 1; j <= N; ++j) {
        if (i == j) continue;
        const Matrix lhs = qcomm(rep.genbar(j, l), rep.gen(l, i), qm2);
        const Matrix rhs =
            comm(rep.genbar(j, l - 1), rep.gen(l - 1, i)) * qpow(l - 1, 1, l, -1, 0);
        C.equal("brabra2", inst3("i", i, "j", j, "l", l), lhs, rhs);
      }

  for (int l = 2; l <= N; ++l)
    for (int i = 1; i <= N; ++i)
      for (int j = 1; j <= N; ++j) {
        if (!((i < l - 1 && l < j) || (j < l - 1 && l < i))) continue;
        const Matrix lhs = qcomm(rep.genbar(j, l - 1), rep.gen(l - 1, i), q);
        const Matrix rhs = qcomm(rep.genbar(j, l), rep.gen(l, i), q.inv());
        C.equal("brabra3", inst3("i", i, "j", j, "l", l), lhs, rhs);
      }
}

}  // namespace

std::vector<CheckResult> check_gl_relations(const Rep& rep) {
  const int N = rep.N;
  const Scalar& q = rep.q;
  RelChecker C("glrep.defining", rep);

  for (int i = 1; i <= N; ++i)
    for (int j = i + 1; j <= N; ++j)
      C.zero("cartan-comm", inst2("i", i, "j", j), comm(rep.gen(i, i), rep.gen(j, j)));

  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N - 1; ++j) {
      const long coeff = (i == j ? 1 : 0) - (i == j + 1 ? 1 : 0);
      const Scalar cs = small_int(rep.mode, coeff);
      C.equal("cartan-raise", inst2("i", i, "j", j), comm(rep.gen(i, i), rep.gen(j, j + 1)),
              rep.gen(j, j + 1).scaled(cs));
      C.equal("cartan-lower", inst2("i", i, "j", j), comm(rep.gen(i, i), rep.gen(j + 1, j)),
              rep.gen(j + 1, j).scaled(-cs));
    }

  for (int i = 1; i <= N - 1; ++i)
    for (int j = 1; j <= N - 1; ++j) {
      const Matrix lhs = comm(rep.gen(i, i + 1), rep.gen(j + 1, j));
      if (i == j)
        C.equal("raise-lower", inst2("i", i, "j", j), lhs,
                rep.qnum_cartan(pair_coeff(N, i, 1, i + 1, -1)));
      else
        C.zero("raise-lower", inst2("i", i, "j", j), lhs);
    }

  for (int i = 1; i <= N - 1; ++i)
    for (int j = i + 2; j <= N - 1; ++j) {
      C.zero("distant-raise", inst2("i", i, "j", j),
             comm(rep.gen(i, i + 1), rep.gen(j, j + 1)));
      C.zero("distant-lower", inst2("i", i, "j", j),
             comm(rep.gen(i + 1, i), rep.gen(j + 1, j)));
    }

  for (int i = 1; i <= N - 1; ++i)
    for (int j = 1; j <= N - 1; ++j) {
      if (i + 1 != j && j + 1 != i) continue;
      const Matrix& ei = rep.gen(i, i + 1);
      const Matrix& ej = rep.gen(j, j + 1);
      const Matrix& fi = rep.gen(i + 1, i);
      const Matrix& fj = rep.gen(j + 1, j);
      C.zero("serre-raise", inst2("i", i, "j", j), qcomm(ei, qcomm(ei, ej, q), q.inv()));
      C.zero("serre-lower", inst2("i", i, "j", j), qcomm(fi, qcomm(fi, fj, q.inv()), q));
    }

  {
    Matrix sum(rep.D, rep.mode);
    for (int i = 1; i <= N; ++i) sum += rep.gen(i, i);
    C.equal("central", "sum_i e_ii", sum, Matrix::identity(rep.D, rep.mode).scaled(rep.m));
  }

  for (int i = 1; i <= N; ++i) {
    C.equal("bar-match", inst2("i", i, "j", i), rep.gen(i, i), rep.genbar(i, i));
    if (i <= N - 1) {
      C.equal("bar-match", inst2("i", i, "j", i + 1), rep.gen(i, i + 1), rep.genbar(i, i + 1));
      C.equal("bar-match", inst2("i", i + 1, "j", i), rep.gen(i + 1, i), rep.genbar(i + 1, i));
    }
  }

  if (rep.integral) {
    for (int i = 1; i <= N; ++i)
      for (int j = 1; j <= N; ++j) {
        C.zero("weight-pattern", inst2("i", i, "j", j),
               weight_violations(rep, rep.gen(i, j), i, j));
        C.zero("weight-pattern-bar", inst2("i", i, "j", j),
               weight_violations(rep, rep.genbar(i, j), i, j));
      }
  }

  for (int j = 1; j <= N; ++j)
    for (int i = j + 2; i <= N; ++i)
      for (int k = j + 1; k < i; ++k) {
        C.equal("split-lower", inst3("i", i, "j", j, "k", k), rep.gen(i, j),
                qcomm(rep.gen(i, k), rep.gen(k, j), q));
        C.equal("split-lower-bar", inst3("i", i, "j", j, "k", k), rep.genbar(i, j),
                qcomm(rep.genbar(i, k), rep.genbar(k, j), q.inv()));
      }
  for (int i = 1; i <= N; ++i)
    for (int j = i + 2; j <= N; ++j)
      for (int k = i + 1; k < j; ++k) {
        C.equal("split-upper", inst3("i", i, "j", j, "k", k), rep.gen(i, j),
                qcomm(rep.gen(i, k), rep.gen(k, j), q.inv()));
        C.equal("split-upper-bar", inst3("i", i, "j", j, "k", k), rep.genbar(i, j),
                qcomm(rep.genbar(i, k), rep.genbar(k, j), q));
      }

  return C.ck.take();
}

std::vector<CheckResult> check_appendix_relations(const Rep& rep) {
  RelChecker C("glrep.appendix", rep);
  exchange_families(C, rep, false);
  exchange_families(C, rep, true);
  mixed_chains(C, rep);
  return C.ck.take();
}

}  // namespace qreflect
