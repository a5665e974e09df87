#include "qalg/rmatrix.hpp"

#include <cmath>

namespace qalg {

namespace {

cplx sh(cplx z) { return std::sinh(z); }

}  // namespace

std::pair<cplx, cplx> rbar_entries(cplx u, const AlgebraParams& p) {
  cplx den = sh(M_PI * p.eta * (u - cplx(0.0, p.hbar)));
  if (std::abs(den) < 1e-12)
    throw pole_error("rbar_entries: sh(pi eta (u - i hbar)) vanishes");
  cplx b = sh(M_PI * p.eta * u) / den;
  cplx c = -sh(cplx(0.0, M_PI * p.eta * p.hbar)) / den;
  return {b, c};
}

Mat4 rbar_matrix(cplx u, const AlgebraParams& p) {
  auto [b, c] = rbar_entries(u, p);
  Mat4 m = Mat4::Zero();
  m(0, 0) = 1.0;
  m(3, 3) = 1.0;
  m(1, 1) = b;
  m(2, 2) = b;
  m(1, 2) = c;
  m(2, 1) = c;
  return m;
}

namespace {

// l(p) = ln R_p(u) + ln R_p(i hbar - u) - ln R_p(0) - ln R_p(i hbar):
// the summand of the log of the normalized product.  Decays like p^-3.
cplx log_product_term(double b, double pval, cplx q, cplx qc) {
  double pb = 2.0 * pval * b;
  auto term = [&](cplx arg) {
    return log_gamma(pb + arg) + log_gamma(1.0 + pb + arg) -
           log_gamma(pb + b + arg) - log_gamma(1.0 + pb - b + arg);
  };
  return term(q) + term(qc) - term(0.0) - term(cplx(-b, 0.0));
}

// Large-argument psi''' (fourth log-Gamma derivative), asymptotic series.
// Good to ~1e-9 relative already at |z| ~ 7.
cplx psi3_asym(cplx z) {
  cplx w = 1.0 / z, w2 = w * w;
  return w2 * w *
         (2.0 + w * (3.0 + w * (2.0 + w2 * (-1.0 + w2 * (4.0 / 3.0 +
          w2 * (-3.0 + w2 * 10.0))))));
}

// l(p) written as a fourth-order finite difference of ln Gamma with steps
// (b, 1-b, q, -(b+q)) at base 2pb, and evaluated through its exact
// four-fold integral representation over psi'''.  Unlike the direct
// 16-term log-Gamma sum this form has no cancellation, so it stays
// accurate at the huge arguments the tail estimate needs.
cplx log_product_term_tail(double b, double pval, cplx q) {
  static const double n4[4] = {0.0694318442029737124, 0.3300094782075718676,
                               0.6699905217924281324, 0.9305681557970262876};
  static const double w4[4] = {0.1739274225687269287, 0.3260725774312730713,
                               0.3260725774312730713, 0.1739274225687269287};
  double pb = 2.0 * pval * b;
  cplx h3 = q, h4 = -(b + q);
  cplx acc = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int m = 0; m < 4; ++m)
          acc += w4[i] * w4[j] * w4[k] * w4[m] *
                 psi3_asym(pb + b * n4[i] + (1.0 - b) * n4[j] + h3 * n4[k] +
                           h4 * n4[m]);
  return -b * (1.0 - b) * h3 * h4 * acc;
}

}  // namespace

cplx r_scalar_bare(cplx u, const AlgebraParams& p, int trunc) {
  if (trunc < 1) throw std::invalid_argument("r_scalar: trunc < 1");
  double b = p.hbar * p.eta;
  cplx q = cplx(0.0, 1.0) * p.eta * u;             // i eta u
  cplx qc = -b - q;                                // i eta (i hbar - u)
  cplx acc = log_gamma(cplx(b, 0.0)) + log_gamma(1.0 + q) - log_gamma(b + q);
  for (int pp = 1; pp <= trunc; ++pp)
    acc += log_product_term(b, double(pp), q, qc);
  return std::exp(acc);
}

cplx r_scalar(cplx u, const AlgebraParams& p, int trunc) {
  if (trunc < 4) throw std::invalid_argument("r_scalar: trunc < 4");
  double b = p.hbar * p.eta;
  // the tail expansion needs 2*N*b well into the asymptotic regime
  if (2.0 * trunc * b < 8.0)
    throw convergence_error("r_scalar: trunc too small for this hbar*eta");
  cplx q = cplx(0.0, 1.0) * p.eta * u;
  cplx qc = -b - q;
  cplx acc = log_gamma(cplx(b, 0.0)) + log_gamma(1.0 + q) - log_gamma(b + q);
  for (int pp = 1; pp <= trunc; ++pp)
    acc += log_product_term(b, double(pp), q, qc);

  // Euler-Maclaurin tail: sum_{p>N} l(p) =
  //   int_N^inf l - l(N)/2 - l'(N)/12 + l'''(N)/720 - ...
  auto l = [&](double t) { return log_product_term_tail(b, t, q); };
  double N = double(trunc);
  cplx lN = l(N);
  if (std::abs(lN) > 0.05)
    throw convergence_error("r_scalar: truncation too small for tail estimate");
  cplx integral = integrate_gl(
      [&](double s) { return l(N / s) * N / (s * s); }, 0.0, 1.0, 0.1);
  cplx d1 = 0.5 * (l(N + 1.0) - l(N - 1.0));
  cplx d3 = 0.5 * (l(N + 2.0) - 2.0 * l(N + 1.0) + 2.0 * l(N - 1.0) -
                   l(N - 2.0));
  acc += integral - 0.5 * lN - d1 / 12.0 + d3 / 720.0;
  return std::exp(acc);
}

Mat4 r_untwisted(cplx u, const AlgebraParams& p, int trunc) {
  return r_scalar(u, p, trunc) * rbar_matrix(u, p);
}

RMatrixValue r_full(cplx u, char sign, const AlgebraParams& p, int trunc) {
  cplx arg = M_PI * u / (2.0 * p.hbar);
  cplx tau;
  if (sign == '+') {
    cplx s = std::sinh(arg);
    if (std::abs(s) < 1e-12)
      throw pole_error("r_full: tau+ pole at u = 0 mod 2 i hbar");
    tau = std::cosh(arg) / s;
  } else if (sign == '-') {
    cplx ch = std::cosh(arg);
    if (std::abs(ch) < 1e-12)
      throw pole_error("r_full: tau- pole at u = i hbar mod 2 i hbar");
    tau = std::sinh(arg) / ch;
  } else {
    throw std::invalid_argument("r_full: sign must be '+' or '-'");
  }
  RMatrixValue out;
  out.entries = tau * r_untwisted(u, p, trunc);
  out.u = u;
  out.sign = sign;
  out.truncation = trunc;
  return out;
}

RMatrixValue smatrix_zz(cplx beta, double xi, int trunc) {
  AlgebraParams p(M_PI, 1.0 / xi, 0.0);
  Mat4 r = r_untwisted(beta, p, trunc);
  Eigen::Vector4d szl(1.0, 1.0, -1.0, -1.0);   // sz (x) 1
  Eigen::Vector4d szr(1.0, -1.0, 1.0, -1.0);   // 1 (x) sz
  Mat4 s;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) s(i, j) = -szl(i) * r(i, j) * szr(j);
  RMatrixValue out;
  out.entries = s;
  out.u = beta;
  out.sign = 'b';
  out.truncation = trunc;
  return out;
}

double check_unitarity(cplx u, const AlgebraParams& p, int trunc) {
  Mat4 m = r_untwisted(u, p, trunc) * r_untwisted(-u, p, trunc);
  return (m - Mat4::Identity()).cwiseAbs().maxCoeff();
}

double check_crossing(cplx u, const AlgebraParams& p, int trunc) {
  Mat4 r = r_untwisted(u, p, trunc);
  Mat4 rc = r_untwisted(cplx(0.0, p.hbar) - u, p, trunc);
  Eigen::Matrix2cd ct;
  ct << 0.0, 1.0, -1.0, 0.0;
  Mat4 k = Mat4::Zero();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int a = 0; a < 2; ++a) k(2 * i + a, 2 * j + a) = ct(i, j);
  Mat4 lhs = k * r * k;
  Mat4 rhs;  // partial transpose on the first factor
  for (int i = 0; i < 2; ++i)
    for (int a = 0; a < 2; ++a)
      for (int j = 0; j < 2; ++j)
        for (int b = 0; b < 2; ++b)
          rhs(2 * i + a, 2 * j + b) = rc(2 * j + a, 2 * i + b);
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

namespace {

using Mat8 = Eigen::Matrix<cplx, 8, 8>;

// embed a two-site matrix into sites (s, t) of a three-site chain
Mat8 embed(const Mat4& r, int s, int t) {
  Mat8 m = Mat8::Zero();
  int pos[3];
  for (int row = 0; row < 8; ++row) {
    int r2 = row;
    for (int k = 2; k >= 0; --k) {
      pos[k] = r2 & 1;
      r2 >>= 1;
    }
    for (int col = 0; col < 8; ++col) {
      int c2 = col;
      int cpos[3];
      for (int k = 2; k >= 0; --k) {
        cpos[k] = c2 & 1;
        c2 >>= 1;
      }
      int other = 3 - s - t;
      if (pos[other] != cpos[other]) continue;
      m(row, col) = r(2 * pos[s] + pos[t], 2 * cpos[s] + cpos[t]);
    }
  }
  return m;
}

double ybe_residual(const Mat4& r12v, const Mat4& r13v, const Mat4& r23v) {
  Mat8 a = embed(r12v, 0, 1) * embed(r13v, 0, 2) * embed(r23v, 1, 2);
  Mat8 b = embed(r23v, 1, 2) * embed(r13v, 0, 2) * embed(r12v, 0, 1);
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

double check_ybe(cplx u1, cplx u2, cplx u3, const AlgebraParams& p,
                 int trunc) {
  return ybe_residual(r_untwisted(u1 - u2, p, trunc),
                      r_untwisted(u1 - u3, p, trunc),
                      r_untwisted(u2 - u3, p, trunc));
}

double check_ybe_bare(cplx u1, cplx u2, cplx u3, const AlgebraParams& p) {
  return ybe_residual(rbar_matrix(u1 - u2, p), rbar_matrix(u1 - u3, p),
                      rbar_matrix(u2 - u3, p));
}

double check_quasiperiodicity(cplx z, const AlgebraParams& p, int trunc) {
  Mat4 lhs = r_full(z - cplx(0.0, 1.0 / p.eta), '+', p, trunc).entries;
  Mat4 rm = r_full(z, '-', p, trunc).entries;
  Eigen::Vector4d szl(1.0, 1.0, -1.0, -1.0);
  Mat4 rhs;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) rhs(i, j) = szl(i) * rm(i, j) * szl(j);
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

}  // namespace qalg
