#pragma once

// Step B and the interpolation half of Step C: evaluate the target function
// on the P-th roots of unity of each (rotated) disk and interpolate local
// models g with g(x) ~ f(gamma + rho x).
//
// Loop order follows the fast paths: for each of the P ring points z the
// values at all rotations z e^{2 pi i j/M} come from one fold modulo
// X^M - 1 and one length-M DFT.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "bigfloat.hpp"
#include "covering.hpp"
#include "errors.hpp"
#include "fft.hpp"
#include "parallel.hpp"
#include "params.hpp"
#include "polynomial.hpp"

namespace quasiroots {

struct BatchValues {
  std::vector<BigComplex> values;
  long double err = 0;        // absolute, uniform over the batch
  bool full_support = false;  // elliptic: window could not be used
  int support_lo = 0, support_hi = 0;
};

namespace detail {

// Accumulates sum_k coeff_k * pw_k into bins k mod M, with pw_k = z^k
// generated on the fly. Returns the accumulated absolute error.
inline long double fold_powers(const std::vector<BigComplex>& a, int upto, const BigComplex& z, long M, Bits w,
                               std::vector<BigComplex>& bins) {
  const long double u = unit_roundoff(w);
  const long double az = abs_ld(z) * (1 + 0x1p-60L);
  bins.assign(static_cast<std::size_t>(M), BigComplex(w));
  BigComplex zk(w);
  zk.re.assign(1.0);
  long double ez = 0, err = 0, run = 0;
  for (int k = 0; k <= upto; ++k) {
    const long double ak = abs_ld(a[k]);
    const long double azk = abs_ld(zk);
    err += ak * ez;
    BigComplex& bin = bins[static_cast<std::size_t>(k % M)];
    mul_add_to(bin, a[k], zk);
    // running bound: the product rounds relative to itself, the addition
    // relative to the new partial sum (componentwise, so sqrt 2 < 1.5)
    run += ak * azk + abs_ld(bin);
    if (k < upto) {
      mul_to(zk, zk, z);
      ez = ez * az + u * abs_ld(zk);
    }
  }
  err += 1.5L * u * run;
  return err * bound_slack(upto + 2);
}

inline long double l1_ld(const std::vector<BigComplex>& a, int upto) {
  long double s = 0;
  for (int k = 0; k <= upto; ++k) s += abs_ld(a[k]);
  return s;
}

}  // namespace detail

// values[j] ~ p(z e^{2 pi i j / Nrot}); needs |z| <= 1 + tau/d.
inline BatchValues batch_eval_ring_near_circle(const Polynomial& p, const BigComplex& z, long Nrot, int mprec,
                                               const SolverParams& sp) {
  (void)mprec;
  if (p.basis() != Basis::Hyperbolic) throw Error(ErrorKind::BasisMismatch, "ring evaluation needs the hyperbolic basis");
  if (Nrot < 1) throw Error(ErrorKind::Parameter, "rotation count must be positive");
  const int d = p.degree();
  if (abs_ld(z) > 1 + sp.tau / d) throw Error(ErrorKind::Precondition, "|z| > 1 + tau/d for ring evaluation");
  BatchValues out;
  const long double fold_err = detail::fold_powers(p.coeffs(), d, z, Nrot, sp.W, out.values);
  const long double dft_err = dft_inplace(out.values, +1, sp.W);
  out.err = fold_err + dft_err;
  out.support_hi = d;
  return out;
}

// Degree after which |z|^k <= 2^-mprec for |z| <= 1 - 2^-n.
inline int inner_truncation_degree(int n, int mprec) {
  return static_cast<int>(std::ceil(std::numbers::ln2 * mprec * std::ldexp(1.0, n)));
}

// values[j] ~ p(z e^{2 pi i j / Nrot}); needs |z| <= 1 - 2^-n and Nrot <= 2^{n+4}.
inline BatchValues batch_eval_inner_disk(const Polynomial& p, const BigComplex& z, int n, long Nrot, int mprec,
                                         Bits w) {
  if (p.basis() != Basis::Hyperbolic) throw Error(ErrorKind::BasisMismatch, "ring evaluation needs the hyperbolic basis");
  if (n < 0 || Nrot < 1) throw Error(ErrorKind::Parameter, "bad ring parameters");
  if (n < 60 && Nrot > (1L << (n + 4))) throw Error(ErrorKind::Precondition, "Nrot > 2^(n+4) for inner-disk evaluation");
  const long double az = abs_up(z);
  if (az > 1 - std::ldexp(1.0L, -n)) throw Error(ErrorKind::Precondition, "|z| > 1 - 2^-n for inner-disk evaluation");
  const int d = p.degree();
  const int dn = std::min(d, inner_truncation_degree(n, mprec));
  BatchValues out;
  long double tail = 0;
  if (dn < d) {
    long double rest = 0;
    for (int k = dn + 1; k <= d; ++k) rest += abs_ld(p[k]);
    tail = rest * std::pow(az, static_cast<long double>(dn + 1)) * (1 + 1e-15L);
  }
  const long double fold_err = detail::fold_powers(p.coeffs(), dn, z, Nrot, w, out.values);
  const long double dft_err = dft_inplace(out.values, +1, w);
  out.err = fold_err + dft_err + tail;
  out.support_hi = dn;
  return out;
}

// values[j] ~ sum_k b_k v_k(z) e^{2 pi i jk / M}. Inside the band
// |Im z| <= sqrt(ln2 tau / d) the sum is truncated to the Hoeffding window
// first; outside it the full support is used and flagged.
inline BatchValues batch_eval_elliptic_sector(const Polynomial& p, const EllipticEvaluator& ev, const BigComplex& z,
                                              long M, int mprec, const SolverParams& sp) {
  if (p.basis() != Basis::Elliptic) throw Error(ErrorKind::BasisMismatch, "sector evaluation needs the elliptic basis");
  if (M < 1) throw Error(ErrorKind::Parameter, "sector count must be positive");
  const int d = p.degree();
  const Bits w = sp.W;
  BatchValues out;
  int lo = 0, hi = d;
  long double tail = 0;
  const auto zl = z.to_ld();
  if (std::fabs(zl.imag()) <= truncation_band(d, static_cast<int>(std::max<long double>(1, std::floor(sp.tau))))) {
    TruncationWindow win = truncation_window(d, zl, mprec);
    lo = win.lower;
    hi = win.upper;
    tail = norm_weyl(p, 64).to_ld_up() * win.tail_factor;
  } else {
    out.full_support = true;
  }
  auto vals = ev.evaluate(z, lo, hi);
  const long double u = unit_roundoff(w);
  out.values.assign(static_cast<std::size_t>(M), BigComplex(w));
  long double run = 0, rel = 0;
  for (int k = lo; k <= hi; ++k) {
    const BigComplex& v = vals.v[static_cast<std::size_t>(k - lo)];
    const long double t = abs_ld(p[k]) * abs_ld(v);
    rel += t * vals.relerr(k);
    BigComplex& bin = out.values[static_cast<std::size_t>(k % M)];
    mul_add_to(bin, p[k], v);
    run += t + abs_ld(bin);
  }
  const long double fold_err = (rel + 1.5L * u * run) * detail::bound_slack(hi - lo + 2);
  const long double dft_err = dft_inplace(out.values, +1, w);
  out.err = fold_err + dft_err + tail;
  out.support_lo = lo;
  out.support_hi = hi;
  return out;
}

struct LocalModel {
  Disk disk;
  std::size_t disk_index = 0;
  long rotation_index = 0;
  long rotation_count = 1;
  BigComplex rotation;          // e^{2 pi i j / M}
  std::vector<BigComplex> g;    // g_0 .. g_{P-1}
  long double coeff_err = 0;    // |g_k - f_k| <= coeff_err
  long double c = 0;            // norm scale
  long double decay_ratio = 0.5L;  // |f_k| <= c q^k for k > tau
  bool direct = false;          // g is p itself on D(0,1)
};

// Inverse DFT of P values f(gamma + rho w_p) into a LocalModel.
inline LocalModel interpolate_local_model(std::vector<BigComplex> values, long double valerr, const Disk& disk,
                                          long rotation_index, long rotation_count, const SolverParams& sp,
                                          long double decay_ratio = 0.5L) {
  if (!is_pow2(values.size()) || static_cast<int>(values.size()) != sp.P)
    throw Error(ErrorKind::Parameter, "local model needs exactly P values with P a power of two");
  LocalModel lm;
  lm.disk = disk;
  lm.rotation_index = rotation_index;
  lm.rotation_count = rotation_count;
  lm.rotation = unit_root(rotation_index, rotation_count, sp.W);
  lm.c = sp.c;
  lm.decay_ratio = decay_ratio;
  Transform t = interpolate_from_roots_of_unity(std::move(values), sp.W);
  lm.g = std::move(t.values);
  const long double alias = sp.c * std::pow(decay_ratio, static_cast<long double>(sp.P)) / (1 - decay_ratio);
  lm.coeff_err = (valerr + t.err + alias) * (1 + 1e-15L);
  return lm;
}

// |g_k| <= c q^k + coeff_err for all k > tau.
inline bool decay_check(const LocalModel& lm, const SolverParams& sp) {
  if (lm.direct) return true;
  const int k0 = static_cast<int>(std::floor(sp.tau)) + 1;
  for (int k = k0; k < static_cast<int>(lm.g.size()); ++k) {
    const long double bound = lm.c * std::pow(lm.decay_ratio, static_cast<long double>(k)) + lm.coeff_err;
    if (abs_ld(lm.g[k]) > bound * (1 + 1e-12L)) return false;
  }
  return true;
}

// Everything Step B needs about one problem instance.
struct LocalizeContext {
  const Polynomial* p = nullptr;        // hyperbolic a_k, or elliptic b_k
  const Polynomial* monomial = nullptr; // monomial form, for the direct scheme
  const SolverParams* sp = nullptr;
  const CoverScheme* cs = nullptr;
  const EllipticEvaluator* ev = nullptr;
  int threads = 1;
};

inline long double decay_ratio_for(const CoverScheme& cs, const Disk& dk) {
  if (is_elliptic(cs.kind)) return std::max(0.5L, 4 * dk.radius);
  return 0.5L;
}

// The direct scheme: g = p itself (monomial form) on D(0,1).
inline LocalModel direct_model(const Polynomial& monomial, const SolverParams& sp) {
  LocalModel lm;
  lm.disk = {0, 1};
  lm.rotation = unit_root(0, 1, sp.W);
  lm.c = norm_one(monomial, 64).to_ld_up();
  lm.direct = true;
  const long double u = unit_roundoff(sp.W);
  long double worst = 0;
  for (const auto& a : monomial.coeffs()) {
    lm.g.emplace_back(a, sp.W);
    worst = std::max(worst, abs_ld(a));
  }
  lm.coeff_err = monomial.precision() > sp.W ? worst * u * 2 : 0;
  return lm;
}

namespace detail {

// Upper bound for |f'| on the closed disk, used to charge the rounding of the
// interpolation nodes to the value error.
inline long double derivative_bound_on_disk(const Polynomial& p, const SolverParams& sp, const Disk& dk) {
  const int d = p.degree();
  if (p.basis() == Basis::Hyperbolic) {
    const long double R = (dk.center + dk.radius) * (1 + 0x1p-50L);
    long double s = 0, rk = 1;
    for (int k = 1; k <= d; ++k) {
      s += k * abs_ld(p[k]) * rk;
      rk *= R;
    }
    return s * 1.001L;
  }
  // |f'(t)| <= ||A|| ||b|| ||v(t)|| with ||A|| <= d+1, ||v(t)||^2 = cosh(2 Im t)^d
  return sp.c * (d + 1) * std::exp(d * dk.radius * dk.radius) * 1.001L;
}

// Smallest n' with |z| <= 1 - 2^-n' and Nrot <= 2^(n'+4).
inline int inner_ring_index(const BigComplex& z, long Nrot) {
  const long double az = abs_up(z);
  if (!(az < 1)) return -1;
  int n = static_cast<int>(std::ceil(-std::log2(1 - az)));
  n = std::max(n, 0);
  while (n < 60 && Nrot > (1L << (n + 4))) ++n;
  while (n < 60 && az > 1 - std::ldexp(1.0L, -n)) ++n;
  return n < 60 ? n : -1;
}

}  // namespace detail

// Evaluates f at gamma + rho w_p for every rotated copy of a disk; for each
// copy j the result is one row of P values.
struct DiskSamples {
  std::vector<std::vector<BigComplex>> rows;  // rows[j][p]
  long double valerr = 0;
  long full_support_points = 0;
};

inline DiskSamples sample_disk(const LocalizeContext& ctx, std::size_t n) {
  const SolverParams& sp = *ctx.sp;
  const CoverScheme& cs = *ctx.cs;
  const Polynomial& p = *ctx.p;
  const Disk dk = cs.disks[n];
  const long M = cs.copies(n);
  const auto P = static_cast<std::size_t>(sp.P);
  const Bits w = sp.W;
  const int mprec = sp.P;
  const bool ell = is_elliptic(cs.kind);
  if (ell && !ctx.ev) throw Error(ErrorKind::Parameter, "elliptic localization needs an evaluator");
  std::vector<BatchValues> batches(P);
  parallel_for(P, ctx.threads, [&](std::size_t k) {
    BigComplex z = unit_root(static_cast<long>(k), static_cast<long>(P), w);
    z *= BigFloat(dk.radius, w);
    z.re += BigFloat(dk.center, w);
    if (ell) {
      batches[k] = batch_eval_elliptic_sector(p, *ctx.ev, z, M, mprec, sp);
      return;
    }
    const int ring = detail::inner_ring_index(z, M);
    if (ring >= 0 && inner_truncation_degree(ring, mprec) < p.degree())
      batches[k] = batch_eval_inner_disk(p, z, ring, M, mprec, w);
    else
      batches[k] = batch_eval_ring_near_circle(p, z, M, mprec, sp);
  });
  DiskSamples out;
  out.rows.assign(static_cast<std::size_t>(M), std::vector<BigComplex>());
  for (auto& r : out.rows) r.reserve(P);
  long double worst = 0;
  for (auto& b : batches) {
    worst = std::max(worst, b.err);
    if (b.full_support) ++out.full_support_points;
    for (long j = 0; j < M; ++j) out.rows[static_cast<std::size_t>(j)].push_back(std::move(b.values[static_cast<std::size_t>(j)]));
  }
  // nodes carry a few ulps of error; |f(z~) - f(z)| <= sup|f'| |z~ - z|
  const long double node = 8 * unit_roundoff(w) * (1 + dk.center + dk.radius);
  out.valerr = (worst + detail::derivative_bound_on_disk(p, sp, dk) * node) * (1 + 1e-15L);
  return out;
}

// Builds the models of every rotated copy of disk n.
inline std::vector<LocalModel> localize_disk(const LocalizeContext& ctx, std::size_t n) {
  const SolverParams& sp = *ctx.sp;
  const CoverScheme& cs = *ctx.cs;
  if (cs.direct) {
    if (!ctx.monomial) throw Error(ErrorKind::Parameter, "direct scheme needs the monomial form");
    LocalModel lm = direct_model(*ctx.monomial, sp);
    lm.disk_index = n;
    return {std::move(lm)};
  }
  DiskSamples ds = sample_disk(ctx, n);
  const Disk dk = cs.disks[n];
  const long M = cs.copies(n);
  const long double q = decay_ratio_for(cs, dk);
  std::vector<LocalModel> out(static_cast<std::size_t>(M));
  parallel_for(static_cast<std::size_t>(M), ctx.threads, [&](std::size_t j) {
    out[j] = interpolate_local_model(std::move(ds.rows[j]), ds.valerr, dk, static_cast<long>(j), M, sp, q);
    out[j].disk_index = n;
  });
  return out;
}

}  // namespace quasiroots
