#pragma once

// Independent reference computations for the tests. Everything here is
// deliberately naive: straight sums and products at generous precision, no
// fast paths shared with the library.

#include <gmp.h>

#include <complex>
#include <random>
#include <vector>

#include "quasiroots/bigfloat.hpp"
#include "quasiroots/polynomial.hpp"

namespace qtest {

using namespace quasiroots;

inline std::vector<std::complex<double>> gaussian_complex(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<std::complex<double>> out;
  for (int i = 0; i < n; ++i) out.emplace_back(g(rng), g(rng));
  return out;
}

inline std::vector<double> gaussian_real(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(g(rng));
  return out;
}

// Horner with plain operators at `prec` bits.
inline BigComplex horner(const std::vector<BigComplex>& a, const BigComplex& z, Bits prec) {
  BigComplex acc(prec);
  BigComplex zz(z, prec);
  for (int k = static_cast<int>(a.size()) - 1; k >= 0; --k) {
    acc = acc * zz;
    acc = acc + BigComplex(a[static_cast<std::size_t>(k)], prec);
  }
  return acc;
}

inline BigFloat binomial(long n, long k, Bits prec) {
  mpz_t b;
  mpz_init(b);
  mpz_bin_uiui(b, static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  BigFloat r(prec);
  mpfr_set_z(r.get(), b, MPFR_RNDN);
  mpz_clear(b);
  return r;
}

// sqrt(C(d,k)) sin^k(z) cos^(d-k)(z) by direct powers, sin/cos from exp.
inline BigComplex weyl_basis(int d, int k, const BigComplex& z, Bits prec) {
  BigComplex zz(z, prec);
  BigComplex iz(-zz.im, zz.re);
  BigComplex e1 = exp(iz);
  BigComplex e2 = exp(-iz);
  BigComplex s = (e1 - e2);
  // sin = (e^{iz} - e^{-iz}) / (2i), cos = (e^{iz} + e^{-iz}) / 2
  s = BigComplex(ldexp(s.im, -1), ldexp(-s.re, -1));
  BigComplex c = e1 + e2;
  c = BigComplex(ldexp(c.re, -1), ldexp(c.im, -1));
  BigComplex r(prec);
  r.re.assign(1.0);
  for (int i = 0; i < k; ++i) r = r * s;
  for (int i = 0; i < d - k; ++i) r = r * c;
  BigFloat w = sqrt(binomial(d, k, prec));
  return r * w;
}

inline BigComplex weyl_full_sum(const std::vector<BigComplex>& b, const BigComplex& z, Bits prec) {
  const int d = static_cast<int>(b.size()) - 1;
  BigComplex acc(prec);
  for (int k = 0; k <= d; ++k) acc = acc + BigComplex(b[k], prec) * weyl_basis(d, k, z, prec);
  return acc;
}

// Taylor coefficients of p(gamma + rho x) via the binomial expansion.
inline std::vector<BigComplex> taylor_shift(const std::vector<BigComplex>& a, const BigComplex& gamma,
                                            const BigFloat& rho, Bits prec) {
  const int d = static_cast<int>(a.size()) - 1;
  std::vector<BigComplex> gpow;
  BigComplex g(prec);
  g.re.assign(1.0);
  for (int i = 0; i <= d; ++i) {
    gpow.push_back(g);
    g = g * BigComplex(gamma, prec);
  }
  std::vector<BigComplex> c;
  BigFloat rk(1L, prec);
  for (int k = 0; k <= d; ++k) {
    BigComplex s(prec);
    for (int i = k; i <= d; ++i) s = s + BigComplex(a[i], prec) * gpow[i - k] * binomial(i, k, prec);
    c.push_back(s * rk);
    rk = rk * BigFloat(rho, prec);
  }
  return c;
}

inline long double dist(const BigComplex& a, const BigComplex& b) {
  return abs(a - b).to_ld();
}

}  // namespace qtest
