#pragma once

// Roots of a local model g in (a slight enlargement of) the unit disk:
// Aberth-Ehrlich in double precision on a tail-truncated copy of g, then
// Newton polishing of each candidate on the full g at the working precision.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "bigfloat.hpp"
#include "errors.hpp"
#include "polynomial.hpp"

namespace quasiroots {

struct SmallRootSet {
  std::vector<BigComplex> roots;
  std::vector<long double> residuals;  // |g(root)| / c
  std::vector<bool> converged;
  long double min_distance = std::numeric_limits<long double>::infinity();
  int collapsed = 0;  // candidates merged because they were within 2^-P
};

struct SmallRootOptions {
  long double margin = 0;      // keep |eta| <= 1 + margin
  int max_iterations = 200;    // Aberth sweeps
  std::uint64_t seed = 0x5eed;
  long double init_radius = 0.95L;
};

using ValueAndDerivative = std::function<std::pair<BigComplex, BigComplex>(const BigComplex&)>;

// z - f(z)/f'(z); refuses to divide by a derivative below c 2^(-W/2).
inline BigComplex newton_step(const ValueAndDerivative& eval, const BigComplex& z, long double c, Bits w) {
  auto [f, fp] = eval(z);
  const long double floor = c * std::ldexp(1.0L, -static_cast<int>(w / 2));
  if (!(abs_ld(fp) > floor)) throw Error(ErrorKind::DivisionHazard, "derivative below c 2^(-W/2) in a Newton step");
  BigComplex q(w);
  div_to(q, f, fp);
  BigComplex out(w);
  sub_to(out, BigComplex(z, w), q);
  return out;
}

namespace detail {

using cd = std::complex<double>;

// f/f' for the polynomial a (double coefficients), switching to the reversed
// polynomial outside the unit disk so Horner stays bounded.
inline cd newton_ratio(const std::vector<cd>& a, cd z) {
  const int D = static_cast<int>(a.size()) - 1;
  if (std::abs(z) <= 1) {
    cd p = a[D], dp = 0;
    for (int k = D - 1; k >= 0; --k) {
      dp = dp * z + p;
      p = p * z + a[k];
    }
    if (dp == cd(0)) return p == cd(0) ? cd(0) : cd(1e-3);
    return p / dp;
  }
  const cd w = 1.0 / z;
  cd q = a[0], dq = 0;
  for (int k = 1; k <= D; ++k) {
    dq = dq * w + q;
    q = q * w + a[k];
  }
  // p'/p = w (D - w q'/q)
  if (q == cd(0)) return 0;
  const cd den = w * (static_cast<double>(D) - w * dq / q);
  if (den == cd(0)) return cd(1e-3);
  return 1.0 / den;
}

// Aberth-Ehrlich with Gauss-Seidel updates. Returns the approximations and
// per-root convergence flags.
inline std::pair<std::vector<cd>, std::vector<bool>> aberth(const std::vector<cd>& a, const SmallRootOptions& opt) {
  const int D = static_cast<int>(a.size()) - 1;
  std::vector<cd> z(static_cast<std::size_t>(D));
  std::vector<bool> done(static_cast<std::size_t>(D), false);
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> jitter(-1e-3, 1e-3);
  const double pi = std::numbers::pi;
  for (int j = 0; j < D; ++j) {
    const double ang = 2 * pi * (j + 0.25) / D + jitter(rng);
    z[j] = std::polar(static_cast<double>(opt.init_radius), ang);
  }
  for (int it = 0; it < opt.max_iterations; ++it) {
    bool all = true;
    for (int j = 0; j < D; ++j) {
      if (done[j]) continue;
      const cd r = newton_ratio(a, z[j]);
      cd s = 0;
      for (int k = 0; k < D; ++k)
        if (k != j) s += 1.0 / (z[j] - z[k]);
      cd corr = r / (1.0 - r * s);
      if (!std::isfinite(corr.real()) || !std::isfinite(corr.imag())) corr = r;
      z[j] -= corr;
      if (std::abs(corr) <= 4e-16 * std::max(1.0, std::abs(z[j]))) done[j] = true;
      else all = false;
    }
    if (all) break;
  }
  return {std::move(z), std::move(done)};
}

inline void horner_with_derivative(const std::vector<BigComplex>& g, const BigComplex& z, Bits w, BigComplex& f,
                                   BigComplex& fp) {
  const int D = static_cast<int>(g.size()) - 1;
  f = BigComplex(g[D], w);
  fp = BigComplex(w);
  for (int k = D - 1; k >= 0; --k) {
    mul_to(fp, fp, z);
    fp += f;
    mul_to(f, f, z);
    f += g[k];
  }
}

}  // namespace detail

// All roots eta of g with |eta| <= 1 + margin, each polished to |step| < 2^(-P-2).
inline SmallRootSet roots_unit_disk(const std::vector<BigComplex>& g_in, long double c, int P, Bits w,
                                    const SmallRootOptions& opt = {}) {
  if (P < 1 || P > 4096) throw Error(ErrorKind::Parameter, "P must lie in [1, 4096]");
  if (static_cast<int>(g_in.size()) > P) throw Error(ErrorKind::Parameter, "deg g must be below P");
  SmallRootSet out;
  // coefficients below c 2^(-P-4) are noise
  const long double noise = c * std::ldexp(1.0L, -P - 4);
  int D = static_cast<int>(g_in.size()) - 1;
  while (D >= 0 && abs_ld(g_in[D]) <= noise) --D;
  if (D <= 0) return out;
  std::vector<BigComplex> g(g_in.begin(), g_in.begin() + D + 1);

  // double-precision copy, scaled and cut where the tail is below 2^-60
  long double big = 0;
  for (const auto& x : g) big = std::max(big, abs_ld(x));
  int Dt = D;
  {
    long double tail = 0;
    while (Dt > 1) {
      tail += abs_ld(g[Dt]);
      if (tail > big * 0x1p-60L) break;
      --Dt;
    }
  }
  std::vector<detail::cd> a;
  for (int k = 0; k <= Dt; ++k) {
    const auto v = g[k].to_ld() / big;
    a.emplace_back(static_cast<double>(v.real()), static_cast<double>(v.imag()));
  }
  while (Dt > 0 && a[Dt] == detail::cd(0)) --Dt;
  a.resize(static_cast<std::size_t>(Dt) + 1);
  if (Dt <= 0) return out;
  auto approx = detail::aberth(a, opt).first;

  const long double keep = 1 + opt.margin;
  const long double step_goal = std::ldexp(1.0L, -P - 2);
  BigComplex f(w), fp(w);
  const ValueAndDerivative eval = [&](const BigComplex& z) {
    detail::horner_with_derivative(g, z, w, f, fp);
    return std::make_pair(f, fp);
  };
  std::vector<BigComplex> found;
  std::vector<bool> conv;
  for (std::size_t j = 0; j < approx.size(); ++j) {
    const detail::cd z0 = approx[j];
    if (!std::isfinite(z0.real()) || !std::isfinite(z0.imag())) continue;
    if (std::abs(z0) > keep + 1e-6) continue;
    BigComplex z(std::complex<double>(z0), w);
    bool converged = false;
    try {
      for (int it = 0; it < 64; ++it) {
        BigComplex nz = newton_step(eval, z, c, w);
        const long double step = abs_ld(nz - z);
        z = std::move(nz);
        if (step < step_goal) {
          converged = true;
          break;
        }
        if (abs_ld(z) > 2) break;
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DivisionHazard) throw;
    }
    if (abs_ld(z) > keep) continue;
    found.push_back(std::move(z));
    // a root Aberth left unsettled still counts once Newton has converged
    conv.push_back(converged);
  }
  // collapse copies within 2^-P
  const long double merge = std::ldexp(1.0L, -P);
  for (std::size_t i = 0; i < found.size(); ++i) {
    bool dup = false;
    for (const auto& r : out.roots)
      if (abs_ld(r - found[i]) <= merge) dup = true;
    if (dup) {
      ++out.collapsed;
      continue;
    }
    detail::horner_with_derivative(g, found[i], w, f, fp);
    out.residuals.push_back(abs_ld(f) / c);
    out.roots.push_back(std::move(found[i]));
    out.converged.push_back(conv[i]);
  }
  for (std::size_t i = 0; i < out.roots.size(); ++i)
    for (std::size_t k = i + 1; k < out.roots.size(); ++k)
      out.min_distance = std::min(out.min_distance, abs_ld(out.roots[i] - out.roots[k]));
  return out;
}

}  // namespace quasiroots
