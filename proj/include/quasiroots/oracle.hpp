#pragma once

// Brute-force references that share no fast path with the solver: global
// Aberth iteration on the whole polynomial, dense-grid condition estimates,
// and derivative bounds from explicit powers of the tridiagonal matrix A.

#include <gmp.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "bigfloat.hpp"
#include "covering.hpp"
#include "errors.hpp"
#include "polynomial.hpp"
#include "smallroots.hpp"

namespace quasiroots {

struct OracleResult {
  std::vector<BigComplex> roots;
  long double residual_bound = 0;
  long double sum_residual = 0;      // |sum roots + a_{d-1}/a_d|
  long double product_residual = 0;  // |prod roots - (-1)^d a_0/a_d| / |a_0/a_d|
  long double agreement = 0;         // worst disagreement between initializations
  Bits precision = 0;
};

namespace detail {

// Aberth sweeps at `prec` bits starting from `z` until the largest relative
// correction is below 2^-target or the sweep budget runs out.
inline void aberth_refine(const std::vector<BigComplex>& a, std::vector<BigComplex>& z, Bits prec, long target,
                          int sweeps) {
  const int d = static_cast<int>(a.size()) - 1;
  BigComplex f(prec), fp(prec), s(prec), t(prec), ratio(prec), corr(prec), one(std::complex<double>(1, 0), prec);
  for (int it = 0; it < sweeps; ++it) {
    long double worst = 0;
    for (int j = 0; j < d; ++j) {
      horner_with_derivative(a, z[j], prec, f, fp);
      if (f.is_zero()) continue;
      div_to(ratio, f, fp);
      s.set_zero();
      for (int k = 0; k < d; ++k) {
        if (k == j) continue;
        sub_to(t, z[j], z[k]);
        div_to(t, one, t);
        s += t;
      }
      // corr = ratio / (1 - ratio s)
      mul_to(t, ratio, s);
      sub_to(t, one, t);
      div_to(corr, ratio, t);
      z[j] -= corr;
      worst = std::max(worst, abs_ld(corr) / std::max(1.0L, abs_ld(z[j])));
    }
    if (worst < std::ldexp(1.0L, -static_cast<int>(target))) return;
  }
}

inline long double greedy_match(const std::vector<BigComplex>& a, const std::vector<BigComplex>& b) {
  std::vector<std::complex<long double>> bl;
  for (const auto& x : b) bl.push_back(x.to_ld());
  std::vector<bool> used(b.size(), false);
  long double worst = 0;
  for (const auto& x : a) {
    const auto xl = x.to_ld();
    std::size_t best = 0;
    long double bd = INFINITY;
    for (std::size_t i = 0; i < bl.size(); ++i)
      if (!used[i] && std::abs(bl[i] - xl) < bd) bd = std::abs(bl[i] - xl), best = i;
    used[best] = true;
    worst = std::max(worst, abs_ld(x - b[best]) / std::max(1.0L, abs_ld(x)));
  }
  return worst;
}

}  // namespace detail

// All d roots at 4W bits from three initializations that must agree to 2^-W.
inline OracleResult reference_roots(const Polynomial& p, Bits W) {
  const int d = p.degree();
  if (d > 2048) throw Error(ErrorKind::Parameter, "reference_roots is limited to d <= 2048");
  OracleResult out;
  out.precision = 4 * W;
  if (d == 0) return out;
  const Bits hp = 4 * W;
  Polynomial mono = p.monomial_form(hp);
  std::vector<BigComplex> a;
  for (const auto& x : mono.coeffs()) a.emplace_back(x, hp);
  // radius from the coefficient extremes
  const long double a0 = abs_ld(a[0]), ad = abs_ld(a[d]);
  const long double base = a0 > 0 ? std::pow(a0 / ad, 1.0L / d) : 0.5L;
  std::vector<detail::cd> ad_;
  long double big = 0;
  for (const auto& x : a) big = std::max(big, abs_ld(x));
  for (const auto& x : a) {
    const auto v = x.to_ld() / big;
    ad_.emplace_back(static_cast<double>(v.real()), static_cast<double>(v.imag()));
  }
  const long double radii[3] = {1.0L, 0.7L, 1.4L};
  std::vector<std::vector<BigComplex>> runs;
  for (int r = 0; r < 3; ++r) {
    SmallRootOptions opt;
    opt.seed = 0x0a11ce + 7919 * r;
    opt.init_radius = std::clamp(base * radii[r], 1e-3L, 1e3L);
    opt.max_iterations = 400;
    auto z0 = detail::aberth(ad_, opt).first;
    std::vector<BigComplex> z;
    for (auto v : z0) z.emplace_back(std::complex<double>(v), hp);
    detail::aberth_refine(a, z, hp, 2 * static_cast<long>(W) + 8, 60);
    runs.push_back(std::move(z));
  }
  const long double tol = std::ldexp(1.0L, -static_cast<int>(W));
  out.agreement = std::max(detail::greedy_match(runs[0], runs[1]), detail::greedy_match(runs[0], runs[2]));
  if (!(out.agreement <= tol)) throw Error(ErrorKind::OracleUnstable, "reference root initializations disagree");
  out.roots = std::move(runs[0]);

  // Vieta checks
  BigComplex sum(hp), prod(std::complex<double>(1, 0), hp);
  long double mass = 0;
  for (const auto& z : out.roots) {
    sum += z;
    prod = prod * z;
    mass += abs_ld(z);
  }
  sum += a[d - 1] / a[d];
  out.sum_residual = abs_ld(sum);
  BigComplex c0 = a[0] / a[d];
  if (d % 2 == 1) c0 = -c0;
  const long double c0a = abs_ld(c0);
  out.product_residual = c0a > 0 ? abs_ld(prod - c0) / c0a : abs_ld(prod);
  out.residual_bound = tol * (d + mass);
  if (!(out.sum_residual <= out.residual_bound) || !(out.product_residual <= tol * d))
    throw Error(ErrorKind::OracleUnstable, "reference roots fail the Vieta checks");
  return out;
}

namespace detail {

using cld = std::complex<long double>;

inline void horner_ld(const std::vector<cld>& a, cld z, cld& f, cld& fp) {
  const int d = static_cast<int>(a.size()) - 1;
  f = a[d];
  fp = 0;
  for (int k = d - 1; k >= 0; --k) {
    fp = fp * z + f;
    f = f * z + a[k];
  }
}

// min(c/|f|, scale c/|f'|) at x in [0, 1] along the ray e^{i theta}.
struct ConditionProbe {
  std::vector<cld> a;  // monomial coefficients
  long double c = 0;
  int d = 0;
  bool elliptic = false;

  long double at(long double x, long double theta) const {
    const cld rot = std::polar(1.0L, theta);
    cld f, fp;
    horner_ld(a, x * rot, f, fp);
    fp *= rot;  // d/dx of p(x e^{i theta})
    if (!elliptic) return std::min(c / std::abs(f), d * c / std::abs(fp));
    // f(t) = cos^d(t) p(tan t), x = tan t:
    // f'(t) = cos^d(t) ((1 + x^2) p'(x) - d x p(x))
    const long double cd = std::pow(1 + x * x, -0.5L * d);
    const long double fv = cd * std::abs(f);
    const long double fd = cd * std::abs((1 + x * x) * fp - static_cast<long double>(d) * x * f);
    return std::min(c / fv, std::sqrt(static_cast<long double>(d)) * c / fd);
  }
};

}  // namespace detail

// Lower estimate of the condition number from a dense grid plus local
// ternary refinement. Real cases use the segment [0, 1] (x = tan t for the
// elliptic basis); disk cases take the max over `angles` rays.
inline long double reference_condition(const Polynomial& p, CoverCase kind, int grid, int angles = 0) {
  const int d = p.degree();
  if (grid < 16 * d) throw Error(ErrorKind::Parameter, "condition grid must have at least 16 d points");
  detail::ConditionProbe pr;
  pr.d = d;
  pr.elliptic = is_elliptic(kind);
  pr.c = natural_norm(p, 64).to_ld();
  if (!(pr.c > 0)) throw Error(ErrorKind::UndefinedCondition, "condition number of the zero polynomial");
  const Polynomial mono = p.monomial_form(128);
  for (const auto& x : mono.coeffs()) pr.a.push_back(x.to_ld());
  const bool real = is_real_domain(kind);
  const int nt = real ? 1 : (angles > 0 ? angles : std::max(64, 4 * d));
  const long double pi = std::numbers::pi_v<long double>;
  long double best = 0, bx = 0, bt = 0;
  for (int j = 0; j < nt; ++j) {
    const long double th = real ? 0 : 2 * pi * j / nt;
    for (int i = 0; i <= grid; ++i) {
      const long double x = static_cast<long double>(i) / grid;
      const long double v = pr.at(x, th);
      if (v > best || !std::isfinite(v)) best = v, bx = x, bt = th;
      if (!std::isfinite(v)) break;
    }
    if (!std::isfinite(best)) break;
  }
  if (!std::isfinite(best)) return best;
  // ternary refinement in x around the arg-max, then in theta
  auto refine = [&](auto fn, long double lo, long double hi) {
    for (int it = 0; it < 60; ++it) {
      const long double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
      if (fn(m1) < fn(m2)) lo = m1;
      else hi = m2;
    }
    return (lo + hi) / 2;
  };
  const long double h = 1.0L / grid;
  for (int round = 0; round < 2; ++round) {
    const long double x = refine([&](long double t) { return pr.at(t, bt); }, std::max(0.0L, bx - h), std::min(1.0L, bx + h));
    const long double v = pr.at(x, bt);
    if (v > best) best = v, bx = x;
    if (real) break;
    const long double ht = 2 * pi / nt;
    const long double th = refine([&](long double t) { return pr.at(bx, t); }, bt - ht, bt + ht);
    const long double vt = pr.at(bx, th);
    if (vt > best) best = vt, bt = th;
  }
  return best;
}

struct DerivativeBoundReport {
  bool holds = true;
  long double worst_ratio = 0;  // max over k of |f^(k)/k!| / bound_k
  int worst_k = 0;
};

// f^(k)(x) = b . A^k v(x) with v(x) from the closed form, checked against
// ||b|| max(4, 2 sqrt(e d / k))^k.
inline DerivativeBoundReport derivative_bound_check(const Polynomial& p, long double x, int kmax) {
  if (p.basis() != Basis::Elliptic) throw Error(ErrorKind::BasisMismatch, "derivative_bound_check needs the elliptic basis");
  const int d = p.degree();
  if (d > 256) throw Error(ErrorKind::Parameter, "derivative_bound_check is limited to d <= 256");
  kmax = std::min(kmax, d);
  const Bits prec = static_cast<Bits>(128 + (kmax + 2) * std::ceil(std::log2(d + 2.0)) + 64);
  BigFloat s = sin(BigFloat(x, prec)), c = cos(BigFloat(x, prec));
  std::vector<BigComplex> v;
  for (int k = 0; k <= d; ++k) {
    BigFloat t(1L, prec);
    for (int i = 0; i < k; ++i) t *= s;
    for (int i = 0; i < d - k; ++i) t *= c;
    mpz_t bin;
    mpz_init(bin);
    mpz_bin_uiui(bin, static_cast<unsigned long>(d), static_cast<unsigned long>(k));
    BigFloat bf(prec);
    mpfr_set_z(bf.get(), bin, MPFR_RNDN);
    mpz_clear(bin);
    t *= sqrt(bf);
    v.emplace_back(std::move(t), BigFloat(prec));
  }
  std::vector<BigFloat> alpha(static_cast<std::size_t>(d) + 2, BigFloat(prec));
  for (int k = 1; k <= d; ++k) alpha[k] = sqrt(BigFloat(static_cast<long>(k) * (d + 1 - k), prec));
  const BigFloat bnorm = norm_weyl(p, prec);
  DerivativeBoundReport rep;
  BigFloat fact(1L, prec);
  const long double e = std::numbers::e_v<long double>;
  std::vector<BigComplex> next(v.size(), BigComplex(prec));
  for (int k = 0; k <= kmax; ++k) {
    if (k > 0) {
      // next = A v: (Av)_j = alpha_j v_{j-1} - alpha_{j+1} v_{j+1}
      for (int j = 0; j <= d; ++j) {
        BigComplex t(prec);
        if (j >= 1) t += v[j - 1] * alpha[j];
        if (j + 1 <= d) t -= v[j + 1] * alpha[j + 1];
        next[j] = std::move(t);
      }
      std::swap(v, next);
      fact *= static_cast<long>(k);
    }
    BigComplex f(prec);
    for (int j = 0; j <= d; ++j) f += BigComplex(p[j], prec) * v[j];
    BigFloat lhs = abs(f) / fact;
    BigFloat bound = bnorm;
    if (k > 0) {
      const long double base = std::max(4.0L, 2 * std::sqrt(e * d / k));
      BigFloat bb(base, prec);
      for (int i = 0; i < k; ++i) bound *= bb;
    }
    const long double ratio = (lhs / bound).to_ld();
    if (ratio > rep.worst_ratio) rep.worst_ratio = ratio, rep.worst_k = k;
    if (ratio > 1) rep.holds = false;
  }
  return rep;
}

}  // namespace quasiroots
