#pragma once

// Discrete Fourier transforms over BigComplex.
//
// Power-of-two sizes use an iterative radix-2 transform; other sizes go
// through Bluestein's chirp-z reduction to a power-of-two convolution.
// Twiddles and chirps are computed once per (size, precision) and shared.

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "bigfloat.hpp"
#include "errors.hpp"
#include "polynomial.hpp"

namespace quasiroots {

inline bool is_pow2(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

inline std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

inline int ilog2(std::size_t n) {
  int l = 0;
  while ((std::size_t{1} << l) < n) ++l;
  return l;
}

namespace detail {

// out = a * conj(w). Alias-safe on out/a.
inline void mul_conj_to(BigComplex& out, const BigComplex& a, const BigComplex& w) {
  BigFloat& t = scratch(0, out.prec());
  mpfr_fmma(t.get(), a.re.get(), w.re.get(), a.im.get(), w.im.get(), MPFR_RNDN);
  mpfr_fmms(out.im.get(), a.im.get(), w.re.get(), a.re.get(), w.im.get(), MPFR_RNDN);
  mpfr_swap(out.re.get(), t.get());
}

struct Radix2Plan {
  std::size_t n = 0;
  Bits prec = 0;
  std::vector<BigComplex> twiddle;  // e^{2 pi i k / n}, k < n/2
  std::vector<std::size_t> bitrev;

  Radix2Plan(std::size_t size, Bits p) : n(size), prec(p) {
    twiddle.reserve(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) twiddle.push_back(unit_root(static_cast<long>(k), static_cast<long>(n), p));
    bitrev.resize(n);
    const int lg = ilog2(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t r = 0;
      for (int b = 0; b < lg; ++b)
        if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (lg - 1 - b);
      bitrev[i] = r;
    }
  }

  void run(std::vector<BigComplex>& a, int sign) const {
    for (std::size_t i = 0; i < n; ++i)
      if (i < bitrev[i]) std::swap(a[i], a[bitrev[i]]);
    BigComplex t(prec);
    for (std::size_t len = 2; len <= n; len <<= 1) {
      const std::size_t half = len / 2, stride = n / len;
      for (std::size_t start = 0; start < n; start += len) {
        for (std::size_t j = 0; j < half; ++j) {
          BigComplex& x = a[start + j];
          BigComplex& y = a[start + j + half];
          if (j == 0) {
            t.assign(y);
          } else if (sign > 0) {
            mul_to(t, y, twiddle[j * stride]);
          } else {
            mul_conj_to(t, y, twiddle[j * stride]);
          }
          sub_to(y, x, t);
          add_to(x, x, t);
        }
      }
    }
  }
};

struct BluesteinPlan {
  std::size_t n = 0, len = 0;
  Bits prec = 0;
  std::vector<BigComplex> chirp;      // e^{i pi j^2 / n}
  std::vector<BigComplex> kernel_hat; // transform of conj(chirp) laid out circularly

  BluesteinPlan(std::size_t size, Bits p, const Radix2Plan& r2) : n(size), len(r2.n), prec(p) {
    chirp.reserve(n);
    const long two_n = static_cast<long>(2 * n);
    for (std::size_t j = 0; j < n; ++j) {
      const long e = static_cast<long>((static_cast<unsigned long long>(j) * j) % static_cast<unsigned long long>(two_n));
      chirp.push_back(unit_root(e, two_n, p));
    }
    kernel_hat.assign(len, BigComplex(p));
    for (std::size_t m = 0; m < n; ++m) {
      kernel_hat[m] = conj(chirp[m]);
      if (m > 0) kernel_hat[len - m] = conj(chirp[m]);
    }
    r2.run(kernel_hat, +1);
  }
};

class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache c;
    return c;
  }

  std::shared_ptr<const Radix2Plan> radix2(std::size_t n, Bits prec) {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(n, prec);
    auto it = r2_.find(key);
    if (it != r2_.end()) return it->second;
    auto plan = std::make_shared<const Radix2Plan>(n, prec);
    r2_.emplace(key, plan);
    return plan;
  }

  std::shared_ptr<const BluesteinPlan> bluestein(std::size_t n, Bits prec) {
    auto r2 = radix2(next_pow2(2 * n - 1), prec);
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(n, prec);
    auto it = bs_.find(key);
    if (it != bs_.end()) return it->second;
    auto plan = std::make_shared<const BluesteinPlan>(n, prec, *r2);
    bs_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mu_;
  std::map<std::pair<std::size_t, Bits>, std::shared_ptr<const Radix2Plan>> r2_;
  std::map<std::pair<std::size_t, Bits>, std::shared_ptr<const BluesteinPlan>> bs_;
};

inline long double l1_norm(const std::vector<BigComplex>& a) {
  long double s = 0;
  for (const auto& z : a) s += abs_ld(z);
  return s * (1.0L + 0x1p-58L);
}

}  // namespace detail

// In place: x_j <- sum_k x_k e^{sign 2 pi i jk/n}, computed at `prec` bits.
// Returns a bound on the absolute rounding error added to each output.
// Input errors e_k propagate to at most sum_k e_k per output.
inline long double dft_inplace(std::vector<BigComplex>& x, int sign, Bits prec) {
  const std::size_t n = x.size();
  if (n == 0) throw Error(ErrorKind::Parameter, "empty DFT");
  const long double u = unit_roundoff(prec);
  const long double l1 = detail::l1_norm(x);
  for (auto& z : x)
    if (z.prec() != prec) z.round_to(prec);
  if (n == 1) return u * l1;
  if (is_pow2(n)) {
    auto plan = detail::PlanCache::instance().radix2(n, prec);
    plan->run(x, sign);
    return l1 * u * (6.0L * (ilog2(n) + 1) + 1);
  }
  auto plan = detail::PlanCache::instance().bluestein(n, prec);
  auto r2 = detail::PlanCache::instance().radix2(plan->len, prec);
  std::vector<BigComplex> a(plan->len, BigComplex(prec));
  for (std::size_t k = 0; k < n; ++k) {
    if (sign > 0) {
      mul_to(a[k], x[k], plan->chirp[k]);
    } else {
      detail::mul_conj_to(a[k], x[k], plan->chirp[k]);
    }
  }
  if (sign > 0) {
    r2->run(a, +1);
    for (std::size_t j = 0; j < plan->len; ++j) mul_to(a[j], a[j], plan->kernel_hat[j]);
    r2->run(a, -1);
  } else {
    // conjugated problem: transform conj(a) against the same kernel, conjugate back
    for (auto& z : a) mpfr_neg(z.im.get(), z.im.get(), MPFR_RNDN);
    r2->run(a, +1);
    for (std::size_t j = 0; j < plan->len; ++j) mul_to(a[j], a[j], plan->kernel_hat[j]);
    r2->run(a, -1);
    for (auto& z : a) mpfr_neg(z.im.get(), z.im.get(), MPFR_RNDN);
  }
  const long lg = ilog2(plan->len);
  for (std::size_t j = 0; j < n; ++j) {
    mpfr_div_2ui(a[j].re.get(), a[j].re.get(), static_cast<unsigned long>(lg), MPFR_RNDN);
    mpfr_div_2ui(a[j].im.get(), a[j].im.get(), static_cast<unsigned long>(lg), MPFR_RNDN);
    if (sign > 0) {
      mul_to(x[j], a[j], plan->chirp[j]);
    } else {
      detail::mul_conj_to(x[j], a[j], plan->chirp[j]);
    }
  }
  return l1 * u * static_cast<long double>(2 * n) * (20.0L * (lg + 1) + 24);
}

struct Transform {
  std::vector<BigComplex> values;
  long double err = 0;  // rounding added by the transform, per entry
};

// values_j = q(e^{2 pi i j/n}) for q(X) = sum coeffs_k X^k.
inline Transform evaluate_at_roots_of_unity(std::vector<BigComplex> coeffs, Bits prec) {
  Transform t;
  t.err = dft_inplace(coeffs, +1, prec);
  t.values = std::move(coeffs);
  return t;
}

// coeffs_k = (1/n) sum_j values_j e^{-2 pi i jk/n}; n must be a power of two.
inline Transform interpolate_from_roots_of_unity(std::vector<BigComplex> values, Bits prec) {
  const std::size_t n = values.size();
  if (!is_pow2(n)) throw Error(ErrorKind::Parameter, "interpolation size must be a power of two");
  Transform t;
  t.err = dft_inplace(values, -1, prec);
  const unsigned long lg = static_cast<unsigned long>(ilog2(n));
  for (auto& z : values) {
    mpfr_div_2ui(z.re.get(), z.re.get(), lg, MPFR_RNDN);
    mpfr_div_2ui(z.im.get(), z.im.get(), lg, MPFR_RNDN);
  }
  t.err = std::ldexp(t.err, -static_cast<int>(lg));
  t.values = std::move(values);
  return t;
}

}  // namespace quasiroots
