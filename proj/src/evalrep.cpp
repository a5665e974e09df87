#include "qalg/evalrep.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <cmath>
#include <stdexcept>

#include "qalg/errors.hpp"

namespace qalg {

namespace {

cplx sh(cplx z) { return std::sinh(z); }

cplx checked_sh(cplx z, const char* where) {
  cplx s = std::sinh(z);
  if (std::abs(s) < 1e-12) throw pole_error(where);
  return s;
}

double max_abs(const MatX& m) { return m.cwiseAbs().maxCoeff(); }

// max-norm of the difference, scaled by the larger of the two sides
double norm_resid(const MatX& a, const MatX& b) {
  double scale = std::max(max_abs(a), max_abs(b));
  if (scale < 1e-30) return max_abs(a - b);
  return max_abs(a - b) / scale;
}

MatX kron2(const MatX& a, const MatX& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

}  // namespace

double q_bracket(double p, const AlgebraParams& par) {
  double a = M_PI * par.eta * par.hbar;
  return std::sin(a * p) / std::sin(a);
}

UqSl2Module build_module(int n, const AlgebraParams& p) {
  if (n < 0) throw std::invalid_argument("build_module: n < 0");
  if (std::abs(std::sin(M_PI * p.eta * p.hbar)) < 1e-12)
    throw std::invalid_argument("build_module: degenerate q (pi eta hbar "
                                "is a multiple of pi)");
  UqSl2Module m;
  m.n = n;
  m.params = p;
  m.h_mat = MatX::Zero(n + 1, n + 1);
  m.e_mat = MatX::Zero(n + 1, n + 1);
  m.f_mat = MatX::Zero(n + 1, n + 1);
  for (int k = 0; k <= n; ++k) {
    m.h_mat(k, k) = double(n - 2 * k);
    if (k >= 1) m.e_mat(k - 1, k) = q_bracket(double(k), p);
    if (k < n) m.f_mat(k + 1, k) = q_bracket(double(n - k), p);
  }
  return m;
}

MatX ev_generator(char kind, char sign, cplx u, cplx z, const UqSl2Module& m) {
  if (sign == '-') {
    // shift relations: e^-(u) = -e^+(u - i/eta''), f^- likewise, h^- even
    cplx us = u - cplx(0.0, 1.0 / m.params.eta_dprime);
    MatX base = ev_generator(kind, '+', us, z, m);
    return (kind == 'h') ? base : MatX(-base);
  }
  if (sign != '+') throw std::invalid_argument("ev_generator: bad sign");

  const AlgebraParams& p = m.params;
  int n = m.n;
  double pe = M_PI * p.eta;
  cplx ih(0.0, p.hbar);
  cplx w = u - z;
  cplx she = sh(cplx(0.0, M_PI * p.eta * p.hbar));  // sh(i pi eta hbar)
  MatX out = MatX::Zero(n + 1, n + 1);

  if (kind == 'e') {
    for (int k = 1; k <= n; ++k) {
      double mk = double(n - 2 * k);
      cplx den = checked_sh(pe * (w + ih * (mk + 1.0) / 2.0),
                            "ev_generator: e pole");
      out(k - 1, k) = -she / den * q_bracket(double(k), p);
    }
  } else if (kind == 'f') {
    for (int k = 0; k < n; ++k) {
      double mk = double(n - 2 * k);
      cplx den = checked_sh(pe * (w + ih * (mk - 1.0) / 2.0),
                            "ev_generator: f pole");
      out(k + 1, k) = -she / den * q_bracket(double(n - k), p);
    }
  } else if (kind == 'h') {
    cplx num = sh(pe * (w - ih * (n + 1.0) / 2.0)) *
               sh(pe * (w + ih * (n + 1.0) / 2.0));
    for (int k = 0; k <= n; ++k) {
      double mk = double(n - 2 * k);
      cplx den = checked_sh(pe * (w + ih * (mk + 1.0) / 2.0),
                            "ev_generator: h pole") *
                 checked_sh(pe * (w + ih * (mk - 1.0) / 2.0),
                            "ev_generator: h pole");
      out(k, k) = num / den;
    }
  } else {
    throw std::invalid_argument("ev_generator: kind must be e, f or h");
  }
  return out;
}

bool strip_ok(char sign, cplx u, const AlgebraParams& p) {
  double lo, hi;
  if (sign == '+') {
    lo = -1.0 / p.eta - p.hbar * p.c / 4.0;
    hi = -p.hbar * p.c / 4.0;
  } else {
    lo = p.hbar * p.c / 4.0;
    hi = p.hbar * p.c / 4.0 + 1.0 / p.eta;
  }
  return u.imag() > lo && u.imag() < hi;
}

LOperatorRep pi1_L(cplx z, cplx u, char sign, const AlgebraParams& p,
                   int trunc) {
  RMatrixValue r = r_full(u - z, sign, p, trunc);
  LOperatorRep L;
  L.u = u;
  L.z = z;
  L.sign = sign;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      MatX blk = MatX::Zero(2, 2);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) blk(i, j) = r.entries(2 * a + i, 2 * b + j);
      L.blocks[a][b] = blk;
    }
  return L;
}

LOperatorRep ev_L(cplx z, cplx u, char sign, const UqSl2Module& m) {
  const AlgebraParams& p = m.params;
  int n = m.n;
  double pe = M_PI * p.eta;
  cplx ih(0.0, p.hbar);
  cplx w = u - z;
  cplx num = sh(pe * (w - ih * (n + 1.0) / 2.0)) *
             sh(pe * (w + ih * (n + 1.0) / 2.0));

  MatX k1 = MatX::Zero(n + 1, n + 1), k2 = MatX::Zero(n + 1, n + 1);
  for (int k = 0; k <= n; ++k) {
    double mk = double(n - 2 * k);
    k2(k, k) = sh(pe * (w + ih * (mk - 1.0) / 2.0));
    k1(k, k) = num / checked_sh(pe * (w + ih * (mk + 1.0) / 2.0),
                                "ev_L: k1 pole");
  }
  MatX e = ev_generator('e', '+', u, z, m);
  MatX f = ev_generator('f', '+', u, z, m);

  LOperatorRep L;
  L.u = u;
  L.z = z;
  L.sign = sign;
  L.blocks[0][0] = k1 + f * k2 * e;
  L.blocks[0][1] = f * k2;
  L.blocks[1][0] = k2 * e;
  L.blocks[1][1] = k2;
  return L;
}

GaussCoords gauss_decompose(const LOperatorRep& L, const AlgebraParams& p) {
  const MatX& lmm = L.blocks[1][1];
  Eigen::FullPivLU<MatX> lu(lmm);
  if (!lu.isInvertible())
    throw std::invalid_argument("gauss_decompose: L_{--} is singular");
  GaussCoords g;
  g.k2 = lmm;
  g.e_coord = lu.solve(L.blocks[1][0]);
  g.f_coord = L.blocks[0][1] * lu.inverse();
  g.k1 = L.blocks[0][0] - g.f_coord * g.k2 * g.e_coord;
  Eigen::FullPivLU<MatX> lu2(g.k2);
  g.h_coord = lu2.solve(g.k1);
  g.h_tilde = (p.eta / p.eta_prime) *
              (std::sin(M_PI * p.eta_prime * p.hbar) /
               std::sin(M_PI * p.eta * p.hbar)) *
              g.h_coord;
  return g;
}

double gauss_roundtrip_residual(const LOperatorRep& L,
                                const AlgebraParams& p) {
  GaussCoords g = gauss_decompose(L, p);
  MatX b00 = g.k1 + g.f_coord * g.k2 * g.e_coord;
  MatX b01 = g.f_coord * g.k2;
  MatX b10 = g.k2 * g.e_coord;
  MatX b11 = g.k2;
  double r = 0.0;
  r = std::max(r, norm_resid(b00, L.blocks[0][0]));
  r = std::max(r, norm_resid(b01, L.blocks[0][1]));
  r = std::max(r, norm_resid(b10, L.blocks[1][0]));
  r = std::max(r, norm_resid(b11, L.blocks[1][1]));
  return r;
}

MatX qdet(const std::function<LOperatorRep(cplx)>& L_builder, cplx u,
          const AlgebraParams& p) {
  LOperatorRep at_u = L_builder(u);
  LOperatorRep shifted = L_builder(u - cplx(0.0, p.hbar));
  return shifted.blocks[0][0] * at_u.blocks[1][1] -
         shifted.blocks[0][1] * at_u.blocks[1][0];
}

namespace {

// residual of R L1 L2 = L2 L1 R on aux (x) aux (x) quantum space
double rll_blocks(const Mat4& r4, const LOperatorRep& La,
                  const LOperatorRep& Lb) {
  int d = int(La.blocks[0][0].rows());
  MatX id2 = MatX::Identity(2, 2), idd = MatX::Identity(d, d);
  MatX rhat = kron2(MatX(r4), idd);
  MatX l1 = MatX::Zero(4 * d, 4 * d), l2 = MatX::Zero(4 * d, 4 * d);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      MatX eab = MatX::Zero(2, 2);
      eab(a, b) = 1.0;
      l1 += kron2(kron2(eab, id2), La.blocks[a][b]);
      l2 += kron2(kron2(id2, eab), Lb.blocks[a][b]);
    }
  MatX lhs = rhat * l1 * l2;
  MatX rhs = l2 * l1 * rhat;
  return norm_resid(lhs, rhs);
}

}  // namespace

double rll_residual(cplx z1, cplx u1, cplx u2, const char* sign_pair, int n,
                    const AlgebraParams& p, int trunc) {
  char s1 = sign_pair[0], s2 = sign_pair[1];
  LOperatorRep La, Lb;
  if (n == 1) {
    La = pi1_L(z1, u1, s1, p, trunc);
    Lb = pi1_L(z1, u2, s2, p, trunc);
  } else {
    UqSl2Module m = build_module(n, p);
    La = ev_L(z1, u1, s1, m);
    Lb = ev_L(z1, u2, s2, m);
  }
  // any overall scalar on R cancels between the two sides, so the
  // untwisted kernel is used; it stays finite at u1 = u2
  Mat4 r4 = r_untwisted(u1 - u2, p, trunc);
  return rll_blocks(r4, La, Lb);
}

double loperator_shift_residual(cplx u, cplx z, const AlgebraParams& p,
                                int trunc) {
  LOperatorRep lp = pi1_L(z, u - cplx(0.0, 1.0 / p.eta_dprime), '+', p, trunc);
  LOperatorRep lm = pi1_L(z, u, '-', p, trunc);
  double sgn[2] = {1.0, -1.0};
  double num = 0.0, den = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      MatX rhs = sgn[a] * sgn[b] * lm.blocks[a][b];
      num = std::max(num, max_abs(lp.blocks[a][b] - rhs));
      den = std::max({den, max_abs(lp.blocks[a][b]), max_abs(rhs)});
    }
  return num / std::max(den, 1e-30);
}

namespace {

struct BlockL {
  MatX b[2][2];
};

// Delta L_{ij}(u) = sum_k L_{kj}(u) (x) L_{ik}(u) at c = 0
BlockL coproduct_blocks(const BlockL& first, const BlockL& second) {
  BlockL out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      MatX acc = kron2(first.b[0][j], second.b[i][0]);
      acc += kron2(first.b[1][j], second.b[i][1]);
      out.b[i][j] = acc;
    }
  return out;
}

BlockL to_blocks(const LOperatorRep& L) {
  BlockL out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.b[i][j] = L.blocks[i][j];
  return out;
}

LOperatorRep from_blocks(const BlockL& B, cplx u) {
  LOperatorRep out;
  out.u = u;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.blocks[i][j] = B.b[i][j];
  return out;
}

}  // namespace

CoproductResiduals coproduct_residuals(cplx z1, cplx z2, cplx u1, cplx u2,
                                       const AlgebraParams& p, int trunc) {
  auto delta_at = [&](cplx u) {
    BlockL a = to_blocks(pi1_L(z1, u, '+', p, trunc));
    BlockL b = to_blocks(pi1_L(z2, u, '+', p, trunc));
    return from_blocks(coproduct_blocks(a, b), u);
  };

  CoproductResiduals out;
  Mat4 r4 = r_untwisted(u1 - u2, p, trunc);
  out.rll = rll_blocks(r4, delta_at(u1), delta_at(u2));

  MatX qd = qdet(delta_at, u1, p);
  out.qdet_prim = max_abs(qd - MatX::Identity(4, 4));

  cplx z3 = 0.5 * (z1 + z2) + cplx(0.37, -0.11);
  BlockL a = to_blocks(pi1_L(z1, u1, '+', p, trunc));
  BlockL b = to_blocks(pi1_L(z2, u1, '+', p, trunc));
  BlockL c = to_blocks(pi1_L(z3, u1, '+', p, trunc));
  BlockL left = coproduct_blocks(coproduct_blocks(a, b), c);
  BlockL right = coproduct_blocks(a, coproduct_blocks(b, c));
  double num = 0.0, den = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      num = std::max(num, max_abs(left.b[i][j] - right.b[i][j]));
      den = std::max({den, max_abs(left.b[i][j]), max_abs(right.b[i][j])});
    }
  out.coassoc = num / std::max(den, 1e-30);
  return out;
}

double SklyaninResiduals::max() const {
  return std::max({ef_vs_h0, s0_h0, casimir, s0_e0, h0_e0, s0_f0, h0_f0,
                   h0_vs_qnumber});
}

SklyaninResiduals sklyanin_residuals(int n, cplx z, const AlgebraParams& p) {
  (void)z;  // zero modes do not depend on the evaluation point
  UqSl2Module m = build_module(n, p);
  double a = M_PI * p.eta * p.hbar;
  int d = n + 1;
  MatX id = MatX::Identity(d, d);

  MatX s0 = MatX::Zero(d, d), hq = MatX::Zero(d, d);
  for (int k = 0; k <= n; ++k) {
    double mk = double(n - 2 * k);
    s0(k, k) = std::cos(a * mk);
    hq(k, k) = std::sin(a * mk) / std::sin(a);
  }
  const MatX& e0 = m.e_mat;
  const MatX& f0 = m.f_mat;
  MatX h0 = e0 * f0 - f0 * e0;

  auto comm = [](const MatX& x, const MatX& y) { return MatX(x * y - y * x); };
  auto anti = [](const MatX& x, const MatX& y) { return MatX(x * y + y * x); };
  double st = std::sin(a) * std::tan(a);
  double ts = std::tan(a) / std::sin(a);

  SklyaninResiduals r;
  r.ef_vs_h0 = norm_resid(comm(e0, f0), h0);
  r.s0_h0 = max_abs(comm(s0, h0));
  r.casimir = norm_resid(s0 * s0 + std::sin(a) * std::sin(a) * h0 * h0, id);
  // With [h,e] = 2e the S0-commutator relations pick up a sign relative
  // to the lowering convention: [S0,e0] = -sin tg {h0,e0} and
  // [S0,f0] = +sin tg {h0,f0}; the {S0,.} relations keep their signs.
  r.s0_e0 = norm_resid(comm(s0, e0), MatX(-st * anti(h0, e0)));
  r.h0_e0 = norm_resid(comm(h0, e0), ts * anti(s0, e0));
  r.s0_f0 = norm_resid(comm(s0, f0), st * anti(h0, f0));
  r.h0_f0 = norm_resid(comm(h0, f0), MatX(-ts * anti(s0, f0)));
  r.h0_vs_qnumber = norm_resid(h0, hq);
  return r;
}

double ExchangeResiduals::max() const {
  return std::max({ef, he, hf, ee, ff, hh});
}

ExchangeResiduals exchange_residuals(cplx u1, cplx u2, cplx z,
                                     const UqSl2Module& m) {
  const AlgebraParams& p = m.params;
  double pe = M_PI * p.eta, pep = M_PI * p.eta_prime;
  cplx ih(0.0, p.hbar);
  cplx u = u1 - u2;
  cplx she = sh(cplx(0.0, M_PI * p.eta * p.hbar));
  cplx shep = sh(cplx(0.0, M_PI * p.eta_prime * p.hbar));
  double tilde_scale = (p.eta / p.eta_prime) *
                       (std::sin(M_PI * p.eta_prime * p.hbar) /
                        std::sin(M_PI * p.eta * p.hbar));

  MatX e1 = ev_generator('e', '+', u1, z, m);
  MatX e2 = ev_generator('e', '+', u2, z, m);
  MatX f1 = ev_generator('f', '+', u1, z, m);
  MatX f2 = ev_generator('f', '+', u2, z, m);
  MatX h1 = ev_generator('h', '+', u1, z, m);
  MatX h2 = ev_generator('h', '+', u2, z, m);

  ExchangeResiduals r;
  r.ef = norm_resid(e1 * f2 - f2 * e1,
                    shep / sh(pep * u) * h1 - she / sh(pe * u) *
                        (tilde_scale * h2));
  r.he = norm_resid(sh(pe * (u + ih)) * h1 * e2 - sh(pe * (u - ih)) * e2 * h1,
                    she * (h1 * e1 + e1 * h1));
  r.hf = norm_resid(sh(pep * (u - ih)) * h1 * f2 - sh(pep * (u + ih)) * f2 * h1,
                    MatX(-shep * (h1 * f1 + f1 * h1)));
  r.ee = norm_resid(sh(pe * (u + ih)) * e1 * e2 - sh(pe * (u - ih)) * e2 * e1,
                    she * (e1 * e1 + e2 * e2));
  r.ff = norm_resid(sh(pep * (u - ih)) * f1 * f2 - sh(pep * (u + ih)) * f2 * f1,
                    MatX(-shep * (f1 * f1 + f2 * f2)));
  cplx ratio = sh(pe * (u + ih)) * sh(pep * (u - ih)) /
               (sh(pep * (u + ih)) * sh(pe * (u - ih)));
  r.hh = norm_resid(ratio * h1 * h2, h2 * h1);
  return r;
}

}  // namespace qalg
