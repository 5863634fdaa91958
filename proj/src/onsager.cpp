#include "qreflect/onsager.hpp"

#include <stdexcept>

#include "qreflect/relcheck.hpp"

namespace qreflect {
namespace {

std::vector<long> pair_coeff(int N, int i, long si, int j, long sj) {
  std::vector<long> c(N, 0);
  c[i - 1] += si;
  c[j - 1] += sj;
  return c;
}

void require_ladder(const AffineGenSet& g, int i, int j, const char* who) {
  if (i < 1 || j > g.N - 1 || i > j)
    throw std::invalid_argument(std::string(who) + ": ladder range out of bounds");
}

/// [A, [A, B]_{a1}]_{a2}
Matrix cub(const Matrix& A, const Matrix& B, const Scalar& a1, const Scalar& a2) {
  return qcomm(A, qcomm(A, B, a1), a2);
}

/// [A, [A, [A, B]_{a1}]_{a2}]_{a3}
Matrix quart(const Matrix& A, const Matrix& B, const Scalar& a1, const Scalar& a2,
             const Scalar& a3) {
  return qcomm(A, qcomm(A, qcomm(A, B, a1), a2), a3);
}

Scalar small_int(Mode mode, long v) {
  return mode == Mode::exact ? Scalar::exact(v) : Scalar::floating(static_cast<double>(v));
}

}  // namespace

Matrix root_e(const AffineGenSet& g, int i, int j) {
  require_ladder(g, i, j, "root_e");
  const Scalar qi = g.q.inv();
  Matrix acc = g.ei(j);
  for (int k = j - 1; k >= i; --k) acc = qcomm(g.ei(k), acc, qi);
  return acc;
}

Matrix root_ebar(const AffineGenSet& g, int i, int j) {
  require_ladder(g, i, j, "root_ebar");
  Matrix acc = g.ei(j);
  for (int k = j - 1; k >= i; --k) acc = qcomm(g.ei(k), acc, g.q);
  return acc;
}

Matrix root_f(const AffineGenSet& g, int i, int j) {
  require_ladder(g, i, j, "root_f");
  Matrix acc = g.fi(i);
  for (int k = i + 1; k <= j; ++k) acc = qcomm(g.fi(k), acc, g.q);
  return acc;
}

Matrix root_fbar(const AffineGenSet& g, int i, int j) {
  require_ladder(g, i, j, "root_fbar");
  const Scalar qi = g.q.inv();
  Matrix acc = g.fi(i);
  for (int k = i + 1; k <= j; ++k) acc = qcomm(g.fi(k), acc, qi);
  return acc;
}

Matrix khat_plus(const AffineGenSet& g, const BoundaryParams& bp, int j, int i) {
  const int N = g.N;
  if (!(1 <= j && j <= bp.a && bp.a < i && i <= N))
    throw std::invalid_argument("khat_plus: need j <= a < i");
  std::vector<long> c(N, 0);
  for (int l = 1; l <= j; ++l) c[l - 1] += 1;
  for (int l = i; l <= N; ++l) c[l - 1] -= 1;
  return g.rep.cartan_qpow(c).scaled(bp.eps_plus);
}

Matrix khat_minus(const AffineGenSet& g, const BoundaryParams& bp, int j, int i) {
  const int N = g.N;
  if (!(1 <= j && j <= bp.a && bp.a < i && i <= N))
    throw std::invalid_argument("khat_minus: need j <= a < i");
  std::vector<long> c(N, 0);
  for (int l = j; l <= bp.a; ++l) c[l - 1] -= 1;
  for (int l = bp.a + 1; l <= i; ++l) c[l - 1] += 1;
  return g.rep.cartan_qpow(c).scaled(bp.eps_minus);
}

Matrix build_Z(const AffineGenSet& g, const BoundaryParams& bp, int j, int i) {
  const int N = g.N;
  const int a = bp.a;
  if (j < 1 || j > N || i < 1 || i > N) throw std::invalid_argument("build_Z: index out of range");
  const Scalar qi = g.q.inv();
  auto cartan = [&](const std::vector<long>& c, long shift) {
    return g.rep.cartan_qpow(c, shift);
  };

  if (j == i) return g.ki(j);
  const bool j_low = j <= a, i_low = i <= a;
  if (j_low == i_low) {
    if (j < i) return root_e(g, j, i - 1);
    return root_f(g, i, j - 1);
  }

  if (j_low) {
    Matrix zp = [&] {
      if (j >= 2 && i <= N - 1)
        return qcomm(qcomm(root_fbar(g, 1, j - 1), g.fi(N), qi), root_f(g, i, N - 1), g.q) *
               cartan(pair_coeff(N, j, 1, i, -1), 1);
      if (j == 1 && i <= N - 1)
        return qcomm(g.fi(N), root_f(g, i, N - 1), g.q) * cartan(pair_coeff(N, 1, 1, i, -1), 1);
      if (j >= 2)
        return qcomm(root_fbar(g, 1, j - 1), g.fi(N), qi) * cartan(pair_coeff(N, j, 1, N, -1), 1);
      return g.fi(N) * cartan(pair_coeff(N, 1, 1, N, -1), 1);
    }();
    Matrix zm = (i > a + 1) ? qcomm(root_ebar(g, j, a), root_e(g, a + 1, i - 1), qi)
                            : root_ebar(g, j, a);
    return zp.scaled(bp.eps_plus) + zm.scaled(bp.eps_minus);
  }

  Matrix zp = [&] {
    if (i >= 2 && j <= N - 1)
      return qcomm(root_ebar(g, j, N - 1), qcomm(g.ei(N), root_e(g, 1, i - 1), qi), g.q);
    if (i == 1 && j <= N - 1) return qcomm(root_ebar(g, j, N - 1), g.ei(N), g.q);
    if (i >= 2) return qcomm(g.ei(N), root_e(g, 1, i - 1), qi);
    return g.ei(N);
  }();
  Matrix zm = (j > a + 1)
                  ? qcomm(root_fbar(g, a + 1, j - 1), root_f(g, i, a), qi) *
                        cartan(pair_coeff(N, j, 1, i, -1), 1)
                  : root_f(g, i, a) * cartan(pair_coeff(N, a + 1, 1, i, -1), 1);
  return zp.scaled(bp.eps_plus) + zm.scaled(bp.eps_minus);
}

std::vector<CheckResult> check_Z_intertwining(const Rep& rep, const Gradation& grad,
                                              const Scalar& x, const BoundaryParams& bp) {
  const int N = rep.N;
  RelChecker C("onsager.intertwine", rep);
  const AffineGenSet g_inv = evaluate(rep, grad, x.inv(), EvVariant::ev);
  const AffineGenSet g_bar = evaluate(rep, grad, x, EvVariant::evbar);
  const Matrix khat = k_operator(rep, grad, x, bp);

  for (int j = 1; j <= N; ++j)
    for (int i = 1; i <= N; ++i)
      C.equal("intertwine", bp.str() + " " + inst2("j", j, "i", i),
              build_Z(g_inv, bp, j, i) * khat, khat * build_Z(g_bar, bp, j, i));

  for (const AffineGenSet* g : {&g_inv, &g_bar})
    for (int j = bp.a + 2; j <= N; ++j) {
      const Matrix general =
          qcomm(root_fbar(*g, bp.a + 1, j - 1), g->fi(bp.a), g->q.inv()) *
          rep.cartan_qpow(pair_coeff(N, j, 1, bp.a, -1), 1);
      const Matrix folded = root_fbar(*g, bp.a, j - 1) *
                            rep.cartan_qpow(pair_coeff(N, j, 1, bp.a, -1), 1);
      C.equal("z-case-overlap",
              bp.str() + " var=" + to_string(g->variant) + " " + inst2("j", j, "i", bp.a),
              general, folded);
    }

  return C.ck.take();
}

std::vector<CheckResult> check_onsager_relations(const Rep& rep, const Gradation& grad,
                                                 const Scalar& x, const BoundaryParams& bp,
                                                 bool asserted) {
  const int N = rep.N;
  const int a = bp.a;
  if (a < 1 || a > N - 1)
    throw std::invalid_argument("check_onsager_relations: need 1 <= a <= N-1");
  RelChecker C("onsager.relations", rep);
  const AffineGenSet g = evaluate(rep, grad, x, EvVariant::ev);
  const Scalar q = rep.q;
  const Scalar qi = q.inv();
  const Scalar rho = (q.pow(3) - q.pow(-3)) * (q.pow(2) - q.pow(-2));
  const Scalar rho_t = rho / (q - qi);
  const Scalar one = Scalar::one(rep.mode);

  auto put = [&](const std::string& tag, const std::string& inst, const Matrix& lhs,
                 const Matrix& rhs) {
    if (asserted) {
      C.equal(tag, inst, lhs, rhs);
      return;
    }
    const double res = rel_residual(lhs, rhs);
    if (res <= 1e-9)
      C.equal(tag, inst, lhs, rhs);
    else
      C.ck.finding(tag, inst, "residual " + std::to_string(res));
  };

  std::vector<std::vector<Matrix>> Z(N + 1, std::vector<Matrix>(N + 1));
  for (int j = 1; j <= N; ++j)
    for (int i = 1; i <= N; ++i) Z[j][i] = build_Z(g, bp, j, i);

  std::vector<std::pair<int, int>> cross;
  for (int j = 1; j <= a; ++j)
    for (int i = a + 1; i <= N; ++i) cross.emplace_back(j, i);

  for (auto [j, i] : cross) {
    const Matrix kp = khat_plus(g, bp, j, i);
    const Matrix km = khat_minus(g, bp, j, i);
    for (auto [r, s] : cross) {
      const std::string inst =
          bp.str() + " " + inst2("j", j, "i", i) + " " + inst2("r", r, "s", s);
      put("khat-comm", inst + " kind=pm", comm(kp, khat_minus(g, bp, r, s)),
          Matrix(rep.D, rep.mode));
      put("khat-comm", inst + " kind=pp", comm(kp, khat_plus(g, bp, r, s)),
          Matrix(rep.D, rep.mode));
      put("khat-comm", inst + " kind=mm", comm(km, khat_minus(g, bp, r, s)),
          Matrix(rep.D, rep.mode));
    }
    for (int l = 1; l <= N; ++l) {
      put("khat-cartan", bp.str() + " " + inst3("j", j, "i", i, "l", l) + " kind=p",
          comm(kp, g.ki(l)), Matrix(rep.D, rep.mode));
      put("khat-cartan", bp.str() + " " + inst3("j", j, "i", i, "l", l) + " kind=m",
          comm(km, g.ki(l)), Matrix(rep.D, rep.mode));
    }
  }

  for (int l = 1; l <= N; ++l)
    for (int j = 1; j <= N; ++j)
      for (int i = 1; i <= N; ++i)
        put("cartan-Z", bp.str() + " " + inst3("l", l, "j", j, "i", i), comm(g.ki(l), Z[j][i]),
            Z[j][i].scaled(small_int(rep.mode, (l == j ? 1 : 0) - (i == l ? 1 : 0))));

  for (auto [j, i] : cross) {
    const Matrix kp = khat_plus(g, bp, j, i);
    const Matrix km = khat_minus(g, bp, j, i);
    for (int r = 1; r <= N; ++r)
      for (int s = 1; s <= N; ++s) {
        const long ep = (r <= j ? 1 : 0) - (r >= i ? 1 : 0) - (s <= j ? 1 : 0) + (s >= i ? 1 : 0);
        const long em = -(j <= r && r <= a ? 1 : 0) + (a + 1 <= r && r <= i ? 1 : 0) +
                        (j <= s && s <= a ? 1 : 0) - (a + 1 <= s && s <= i ? 1 : 0);
        const std::string inst =
            bp.str() + " " + inst2("j", j, "i", i) + " " + inst2("r", r, "s", s);
        put("aorel1.1", inst, kp * Z[r][s], (Z[r][s] * kp).scaled(q.pow(ep)));
        put("aorel1.2", inst, km * Z[r][s], (Z[r][s] * km).scaled(q.pow(em)));
      }
  }

  const Matrix& Ea = Z[a][a + 1];
  const Matrix& Fa = Z[a + 1][a];
  const Matrix& EN = Z[N][1];
  const Matrix& FN = Z[1][N];
  const Matrix kpa = khat_plus(g, bp, a, a + 1);
  const Matrix kma = khat_minus(g, bp, a, a + 1);
  const Matrix kpN = khat_plus(g, bp, 1, N);
  const Matrix kmN = khat_minus(g, bp, 1, N);
  const Scalar q2 = q.pow(2);
  const Scalar qm2 = q.pow(-2);

  {
    const std::string inst = bp.str();
    put("aorel2.1", inst, quart(Ea, Fa, q2, one, qm2),
        (Ea * (kpa * kpa - kma * kma) * Ea).scaled(rho_t));
    put("aorel2.2", inst, quart(EN, FN, q2, one, qm2),
        (EN * (kmN * kmN - kpN * kpN) * EN).scaled(rho_t));
    put("aorel2.3", inst, quart(Fa, Ea, q2, one, qm2),
        (Fa * (kma * kma - kpa * kpa) * Fa).scaled(rho_t));
    put("aorel2.4", inst, quart(FN, EN, q2, one, qm2),
        (FN * (kpN * kpN - kmN * kmN) * FN).scaled(rho_t));
  }

  if (2 <= a && a <= N - 2) {
    const std::string inst = bp.str();
    const Matrix zero(rep.D, rep.mode);
    put("aorel3.1", inst, quart(Ea, EN, q2, one, qm2), zero);
    put("aorel3.2", inst, quart(Fa, FN, q2, one, qm2), zero);
    put("aorel3.3", inst, quart(EN, Ea, q2, one, qm2), zero);
    put("aorel3.4", inst, quart(FN, Fa, q2, one, qm2), zero);
    put("aorel3.5", inst, qcomm(FN, Ea, qm2), zero);
    put("aorel3.6", inst, qcomm(EN, Fa, q2), zero);
  }

  if (a >= 2) {
    const std::string inst = bp.str();
    const Matrix zero(rep.D, rep.mode);
    put("aorel4.1", inst, cub(g.ei(a - 1), Ea, q, qi), zero);
    put("aorel4.2", inst, cub(Ea, g.ei(a - 1), q, qi), zero);
    put("aorel4.3", inst, cub(g.fi(a - 1), Fa, one, q2), zero);
    put("aorel4.4", inst, cub(Fa, g.fi(a - 1), one, qm2), zero);
    put("aorel4.5", inst, cub(g.ei(1), EN, q, qi), zero);
    put("aorel4.6", inst, cub(EN, g.ei(1), q, qi), zero);
    put("aorel4.7", inst, cub(g.fi(1), FN, one, q2), zero);
    put("aorel4.8", inst, cub(FN, g.fi(1), one, qm2), zero);
    put("aorel4.9", inst, qcomm(g.ei(a - 1), Fa, qi), zero);
    put("aorel4.10", inst, qcomm(g.ei(1), FN, qi), zero);
  }

  if (a <= N - 2) {
    const std::string inst = bp.str();
    const Matrix zero(rep.D, rep.mode);
    put("aorel5.1", inst, cub(g.ei(a + 1), Ea, q, qi), zero);
    put("aorel5.2", inst, cub(Ea, g.ei(a + 1), q, qi), zero);
    put("aorel5.3", inst, cub(g.fi(a + 1), Fa, one, q2), zero);
    put("aorel5.4", inst, cub(Fa, g.fi(a + 1), one, qm2), zero);
    put("aorel5.5", inst, cub(g.ei(N - 1), EN, q, qi), zero);
    put("aorel5.6", inst, cub(EN, g.ei(N - 1), q, qi), zero);
    put("aorel5.7", inst, cub(g.fi(N - 1), FN, one, q2), zero);
    put("aorel5.8", inst, cub(FN, g.fi(N - 1), one, qm2), zero);
    put("aorel5.9", inst, qcomm(g.ei(a + 1), Fa, qi), zero);
    put("aorel5.10", inst, qcomm(g.ei(N - 1), FN, qi), zero);
  }

  {
    const Matrix zero(rep.D, rep.mode);
    for (int i = 1; i <= N - 1; ++i) {
      const std::string inst = bp.str() + " " + kv("i", i);
      if (i <= a - 2 || i >= a + 2) {
        put("aorel6.1", inst, comm(g.ei(i), Ea), zero);
        put("aorel6.2", inst, comm(g.ei(i), Fa), zero);
        put("aorel6.3", inst, comm(g.fi(i), Fa), zero);
      }
      if ((2 <= i && i <= a - 1) || (a + 1 <= i && i <= N - 2)) {
        put("aorel7.1", inst, comm(g.ei(i), EN), zero);
        put("aorel7.2", inst, comm(g.ei(i), FN), zero);
        put("aorel7.3", inst, comm(g.fi(i), FN), zero);
      }
      if (i != a) {
        put("aorel8.1", inst, comm(g.fi(i), Ea), zero);
        put("aorel8.2", inst, comm(g.fi(i), EN), zero);
      }
    }
  }

  for (int i = 2; i <= a; ++i)
    for (int j = a + 1; j <= N; ++j) {
      const std::string inst = bp.str() + " " + inst2("i", i, "j", j);
      put("aorel9.1", inst, qcomm(g.ei(i - 1), Z[i][j], q), Z[i - 1][j]);
      put("aorel9.2", inst, comm(Z[j][i], g.fi(i - 1)),
          Z[j][i - 1] * rep.cartan_qpow(pair_coeff(N, i - 1, 1, i, -1), -1));
    }

  for (int i = 1; i <= a; ++i)
    for (int j = a + 1; j <= N - 1; ++j) {
      const std::string inst = bp.str() + " " + inst2("i", i, "j", j);
      put("aorel10.1", inst, qcomm(Z[i][j], g.ei(j), qi), Z[i][j + 1]);
      put("aorel10.2", inst, comm(g.fi(j), Z[j][i]),
          Z[j + 1][i] * rep.cartan_qpow(pair_coeff(N, j, 1, j + 1, -1)));
    }

  if (a == 1 && N > 2) {
    const std::string inst = bp.str();
    const Matrix km1 = khat_minus(g, bp, 1, 2);
    const Matrix tailN2 = Z[N][2] * rep.cartan_qpow(pair_coeff(N, N, 1, 2, -1));
    put("LBBBa.1", inst, quart(Fa, FN, q.pow(3), q, qi),
        (Fa * km1 * km1 * Fa * Z[2][N]).scaled(rho * qi));
    put("LBBBa.2", inst, quart(FN, Fa, q.pow(-3), qi, q),
        (FN * km1 * km1 * FN * Z[2][N]).scaled(-(rho * q.pow(-4))));
    put("LBBBa.3", inst, quart(Ea, EN, q.pow(3), q, qi),
        (Ea * kpN * kpN * Ea * tailN2).scaled(-(rho * q.pow(5))));
    put("LBBBa.4", inst, quart(EN, Ea, q.pow(-3), qi, q),
        (EN * kpN * kpN * EN * tailN2).scaled(rho * q2));
  }

  if (a == N - 1 && N > 2) {
    const std::string inst = bp.str();
    const Matrix tail_low = Z[1][N - 1] * rep.cartan_qpow(pair_coeff(N, 1, 2, 1, 0));
    const Matrix tail_high = Z[N - 1][1] * rep.cartan_qpow(pair_coeff(N, 1, -1, N - 1, -1));
    put("BBBaR.1", inst, quart(Fa, FN, q.pow(3), q, qi),
        (Fa * kmN * kmN * Fa * tail_low).scaled(-(rho * q2)));
    put("BBBaR.2", inst, quart(FN, Fa, q.pow(-3), qi, q),
        (FN * kmN * kmN * FN * tail_low).scaled(rho * q));
    put("BBBaR.3", inst, quart(Ea, EN, q.pow(3), q, qi),
        (Ea * kpa * kpa * Ea * tail_high).scaled(rho));
    put("BBBaR.4", inst, quart(EN, Ea, q.pow(-3), qi, q),
        (EN * kpa * kpa * EN * tail_high).scaled(-(rho * qi)));
  }

  return C.ck.take();
}

}  // namespace qreflect
