#pragma once

// Polynomials in the monomial ("hyperbolic") and Weyl ("elliptic") bases,
// their norms, and evaluation with forward error bounds.
//
// Hyperbolic: p(x) = sum a_k x^k.
// Elliptic:   p(x) = sum sqrt(C(d,k)) b_k x^k, studied through
//             f(t) = cos^d(t) p(tan t) = sum b_k v_k(t),
//             v_k(t) = sqrt(C(d,k)) sin^k(t) cos^(d-k)(t).

#include <gmp.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "bigfloat.hpp"
#include "errors.hpp"

namespace quasiroots {

enum class Basis { Hyperbolic, Elliptic };

inline const char* to_string(Basis b) { return b == Basis::Hyperbolic ? "hyperbolic" : "elliptic"; }

// Unit roundoff for round-to-nearest at w bits.
inline long double unit_roundoff(Bits w) { return std::ldexp(1.0L, -static_cast<int>(w)); }

// sqrt(C(d,k)) at prec bits; the binomial itself is exact.
inline BigFloat sqrt_binomial(long d, long k, Bits prec) {
  mpz_t b;
  mpz_init(b);
  mpz_bin_uiui(b, static_cast<unsigned long>(d), static_cast<unsigned long>(k));
  BigFloat r(prec);
  mpfr_set_z(r.get(), b, MPFR_RNDN);
  mpfr_sqrt(r.get(), r.get(), MPFR_RNDN);
  mpz_clear(b);
  return r;
}

class Polynomial {
 public:
  Polynomial() = default;

  // Trailing zero coefficients are trimmed. For the elliptic basis the
  // remaining b_k are re-weighted so that the represented polynomial is
  // unchanged at the lower degree.
  Polynomial(std::vector<BigComplex> coeffs, Basis basis) : c_(std::move(coeffs)), basis_(basis) {
    if (c_.empty()) throw Error(ErrorKind::Input, "polynomial without coefficients");
    while (c_.size() > 1 && c_.back().is_zero()) {
      c_.pop_back();
      if (basis_ == Basis::Elliptic) {
        const long d = static_cast<long>(c_.size());  // old degree
        for (long k = 0; k < d; ++k) {
          Bits p = c_[k].prec() + 16;
          BigFloat w(static_cast<long>(d), p);
          w /= BigFloat(static_cast<long>(d - k), p);
          w = sqrt(w);
          BigComplex t(c_[k], p);
          t *= w;
          t.round_to(c_[k].prec());
          c_[k] = std::move(t);
        }
      }
    }
    if (c_.size() == 1 && c_[0].is_zero()) throw Error(ErrorKind::Input, "zero polynomial");
  }

  static Polynomial from_doubles(const std::vector<std::complex<double>>& coeffs, Basis basis,
                                 Bits prec = 64) {
    std::vector<BigComplex> c;
    c.reserve(coeffs.size());
    for (auto z : coeffs) c.emplace_back(z, prec);
    return Polynomial(std::move(c), basis);
  }
  static Polynomial from_reals(const std::vector<double>& coeffs, Basis basis, Bits prec = 64) {
    std::vector<std::complex<double>> c(coeffs.begin(), coeffs.end());
    return from_doubles(c, basis, prec);
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Basis basis() const { return basis_; }
  const std::vector<BigComplex>& coeffs() const { return c_; }
  const BigComplex& operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }

  bool is_real() const {
    return std::all_of(c_.begin(), c_.end(), [](const BigComplex& z) { return z.im.is_zero(); });
  }

  Bits precision() const {
    Bits p = 2;
    for (const auto& z : c_) p = std::max(p, z.prec());
    return p;
  }

  // Same polynomial written in the monomial basis (a_k = sqrt(C(d,k)) b_k).
  Polynomial monomial_form(Bits prec) const {
    std::vector<BigComplex> a;
    a.reserve(c_.size());
    const int d = degree();
    for (int k = 0; k <= d; ++k) {
      BigComplex t(c_[k], prec);
      if (basis_ == Basis::Elliptic) t *= sqrt_binomial(d, k, prec + 8);
      a.push_back(std::move(t));
    }
    return Polynomial(std::move(a), Basis::Hyperbolic);
  }

  // x^d p(1/x). Both bases are symmetric under k -> d-k, so this is a plain
  // reversal of the coefficient list.
  Polynomial reversed() const {
    std::vector<BigComplex> r(c_.rbegin(), c_.rend());
    return Polynomial(std::move(r), basis_);
  }

  // p(-x)
  Polynomial reflected() const {
    std::vector<BigComplex> r = c_;
    for (std::size_t k = 1; k < r.size(); k += 2) r[k] = -r[k];
    return Polynomial(std::move(r), basis_);
  }

  // p(x * e^{2 pi i j / M}), i.e. coefficients scaled by w^k.
  Polynomial rotated(long j, long M) const {
    std::vector<BigComplex> r;
    r.reserve(c_.size());
    for (std::size_t k = 0; k < c_.size(); ++k) {
      BigComplex w = unit_root(static_cast<long>((j * static_cast<long>(k)) % M), M, c_[k].prec() + 8);
      BigComplex t(c_[k].prec());
      mul_to(t, c_[k], w);
      r.push_back(std::move(t));
    }
    return Polynomial(std::move(r), basis_);
  }

 private:
  std::vector<BigComplex> c_;
  Basis basis_ = Basis::Hyperbolic;
};

// sum |a_k|, rounded up.
inline BigFloat norm_one(const Polynomial& p, Bits w) {
  if (p.basis() != Basis::Hyperbolic) throw Error(ErrorKind::BasisMismatch, "norm_one needs the hyperbolic basis");
  // accumulate with guard bits so the single final rounding dominates
  const Bits wi = w + 2 * static_cast<Bits>(std::log2(p.degree() + 2.0)) + 16;
  BigFloat s(wi), t(wi);
  for (const auto& a : p.coeffs()) {
    mpfr_hypot(t.get(), a.re.get(), a.im.get(), MPFR_RNDU);
    mpfr_add(s.get(), s.get(), t.get(), MPFR_RNDU);
  }
  mpfr_prec_round(s.get(), w, MPFR_RNDU);
  return s;
}

// sqrt(sum |b_k|^2), rounded up.
inline BigFloat norm_weyl(const Polynomial& p, Bits w) {
  if (p.basis() != Basis::Elliptic) throw Error(ErrorKind::BasisMismatch, "norm_weyl needs the elliptic basis");
  const Bits wi = w + 2 * static_cast<Bits>(std::log2(p.degree() + 2.0)) + 16;
  BigFloat s(wi), t(wi);
  for (const auto& b : p.coeffs()) {
    mpfr_sqr(t.get(), b.re.get(), MPFR_RNDU);
    mpfr_add(s.get(), s.get(), t.get(), MPFR_RNDU);
    mpfr_sqr(t.get(), b.im.get(), MPFR_RNDU);
    mpfr_add(s.get(), s.get(), t.get(), MPFR_RNDU);
  }
  mpfr_sqrt(s.get(), s.get(), MPFR_RNDU);
  mpfr_prec_round(s.get(), w, MPFR_RNDU);
  return s;
}

// The norm the algorithm scales by: ||a||_1 or ||b||_2.
inline BigFloat natural_norm(const Polynomial& p, Bits w) {
  return p.basis() == Basis::Hyperbolic ? norm_one(p, w) : norm_weyl(p, w);
}

struct Evaluation {
  BigComplex value;
  long double err = 0;  // |value - exact| <= err
};

struct EvaluationWithDerivative {
  BigComplex value;
  BigComplex deriv;
  long double err = 0;
  long double deriv_err = 0;
};

namespace detail {
// Long-double bookkeeping is itself rounded; this factor covers it.
inline long double bound_slack(long n) { return 1.0L + static_cast<long double>(4 * n + 16) * 0x1p-62L; }

inline void check_hyperbolic_eval(const Polynomial& p, const BigComplex& z, Bits w) {
  if (p.basis() != Basis::Hyperbolic) throw Error(ErrorKind::BasisMismatch, "eval_hyperbolic needs the hyperbolic basis");
  if (w < 53) throw Error(ErrorKind::Precondition, "working precision below 53 bits");
  if (abs_ld(z) > 2.0L) throw Error(ErrorKind::Precondition, "|z| > 2 in eval_hyperbolic");
}
}  // namespace detail

// Horner's scheme with a running error bound.
inline Evaluation eval_hyperbolic(const Polynomial& p, const BigComplex& z, Bits w) {
  detail::check_hyperbolic_eval(p, z, w);
  const long double u = unit_roundoff(w);
  const long double az = abs_ld(z) * (1.0L + 0x1p-60L);
  const int d = p.degree();
  Evaluation out{BigComplex(p[d], w), 0};
  long double e = p[d].prec() > w ? u * abs_ld(p[d]) : 0;
  for (int k = d - 1; k >= 0; --k) {
    const long double prod = abs_ld(out.value) * az;
    mul_to(out.value, out.value, z);
    add_to(out.value, out.value, p[k]);
    e = e * az + u * (prod + abs_ld(out.value));
  }
  out.err = e * detail::bound_slack(d);
  return out;
}

inline EvaluationWithDerivative eval_hyperbolic_with_derivative(const Polynomial& p, const BigComplex& z, Bits w) {
  detail::check_hyperbolic_eval(p, z, w);
  const long double u = unit_roundoff(w);
  const long double az = abs_ld(z) * (1.0L + 0x1p-60L);
  const int d = p.degree();
  EvaluationWithDerivative out{BigComplex(p[d], w), BigComplex(w), 0, 0};
  long double e = p[d].prec() > w ? u * abs_ld(p[d]) : 0, eq = 0;
  for (int k = d - 1; k >= 0; --k) {
    const long double qprod = abs_ld(out.deriv) * az;
    mul_to(out.deriv, out.deriv, z);
    add_to(out.deriv, out.deriv, out.value);
    eq = eq * az + e + u * (qprod + abs_ld(out.deriv));
    const long double prod = abs_ld(out.value) * az;
    mul_to(out.value, out.value, z);
    add_to(out.value, out.value, p[k]);
    e = e * az + u * (prod + abs_ld(out.value));
  }
  out.err = e * detail::bound_slack(d);
  out.deriv_err = eq * detail::bound_slack(d);
  return out;
}

// Generates v_lo(z), ..., v_hi(z) by v_{k+1} = r_k tan(z) v_k,
// r_k = sqrt((d-k)/(k+1)), starting from v_lo computed directly.
//
// The tridiagonal antisymmetric A with sub-diagonal alpha_k = sqrt(k(d+1-k))
// satisfies v' = A v, so (A v)_0 = -alpha_1 v_1 and
// (A v)_k = alpha_k v_{k-1} - alpha_{k+1} v_{k+1}.
class EllipticEvaluator {
 public:
  EllipticEvaluator(int d, Bits prec) : d_(d), prec_(prec) {
    if (d < 0) throw Error(ErrorKind::Parameter, "negative degree");
    ratio_.reserve(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
      BigFloat r(static_cast<long>(d - k), prec + 8);
      r /= BigFloat(static_cast<long>(k + 1), prec + 8);
      r = sqrt(r);
      r.round_to(prec);
      ratio_.push_back(std::move(r));
    }
  }

  int degree() const { return d_; }
  Bits precision() const { return prec_; }
  const BigFloat& ratio(int k) const { return ratio_[static_cast<std::size_t>(k)]; }

  BigFloat alpha(int k, Bits prec) const {
    return sqrt(BigFloat(static_cast<long>(k) * static_cast<long>(d_ + 1 - k), prec));
  }

  struct Values {
    int lo = 0;
    std::vector<BigComplex> v;  // v[k - lo]
    long double u = 0;          // unit roundoff used
    long double relerr(int k) const { return u * (4.0L + 5.0L * static_cast<long double>(k - lo)); }
  };

  // sqrt(C(d,k)) sin^k(z) cos^(d-k)(z), with the powers taken at extra precision.
  BigComplex direct(const BigComplex& z, int k) const {
    const Bits hp = prec_ + 8 + static_cast<Bits>(std::ceil(std::log2(d_ + 2.0)));
    BigComplex zz(z, hp), s, c;
    sin_cos(zz, s, c);
    BigComplex r = pow(s, static_cast<unsigned long>(k)) * pow(c, static_cast<unsigned long>(d_ - k));
    r *= sqrt_binomial(d_, k, hp);
    r.round_to(prec_);
    return r;
  }

  Values evaluate(const BigComplex& z, int lo, int hi) const {
    if (lo < 0 || hi > d_ || lo > hi) throw Error(ErrorKind::Parameter, "bad index range for elliptic evaluation");
    Values out;
    out.lo = lo;
    out.u = unit_roundoff(prec_);
    out.v.reserve(static_cast<std::size_t>(hi - lo + 1));
    out.v.push_back(direct(z, lo));
    if (hi > lo) {
      BigComplex t = tan(BigComplex(z, prec_ + 8));
      t.round_to(prec_);
      BigComplex step(prec_);
      for (int k = lo; k < hi; ++k) {
        mul_to(step, out.v.back(), t);
        mul_to(step, step, ratio_[static_cast<std::size_t>(k)]);
        out.v.push_back(step);
      }
    }
    return out;
  }

 private:
  int d_;
  Bits prec_;
  std::vector<BigFloat> ratio_;
};

struct TruncationWindow {
  int lower = 0;  // l
  int upper = 0;  // u
  long double x = 0;
  // Tail outside [l, u] is at most norm_weyl(b) * tail_factor.
  long double tail_factor = 0;
};

// Band of validity for the truncation lemma: |Im z| <= sqrt(ln 2 * m / d).
inline long double truncation_band(int d, int m) {
  return std::sqrt(std::numbers::ln2_v<long double> * m / static_cast<long double>(d));
}

inline TruncationWindow truncation_window(int d, const std::complex<long double>& z, int m) {
  if (d < 1 || m < 1) throw Error(ErrorKind::Parameter, "truncation window needs d >= 1 and m >= 1");
  const long double a = z.real(), b = z.imag();
  if (std::fabs(b) > truncation_band(d, m)) throw Error(ErrorKind::WindowInvalid, "Im z outside the truncation band");
  const long double sa = std::sin(a), shb = std::sinh(b);
  const long double ch2 = std::cosh(2 * b);
  TruncationWindow w;
  w.x = std::clamp((sa * sa + shb * shb) / ch2, 0.0L, 1.0L);
  const long double dd = d;
  // a hair wider than the exact half-width, so the rounding in x cannot shrink it
  const long double delta = std::sqrt(2 * std::numbers::ln2_v<long double> * dd * (m + 1)) + 1e-12L * (dd + 1);
  w.lower = static_cast<int>(std::max(0.0L, std::floor(w.x * dd - delta)));
  w.upper = static_cast<int>(std::min(dd, std::ceil(w.x * dd + delta)));
  // Hoeffding: binomial mass outside is <= 2 exp(-2 delta^2 / d); the weights
  // add cosh(2b)^(d/2) <= e^(d b^2).
  const long double mass = 2 * std::exp(-2 * delta * delta / dd);
  w.tail_factor = std::sqrt(mass) * std::exp(dd * b * b) * (1 + 1e-15L);
  return w;
}

inline TruncationWindow truncation_window(int d, const BigComplex& z, int m) {
  return truncation_window(d, z.to_ld(), m);
}

struct EllipticEvaluation : Evaluation {
  bool windowed = false;
  int lower = 0;
  int upper = 0;
};

namespace detail {
inline void check_elliptic(const Polynomial& p) {
  if (p.basis() != Basis::Elliptic) throw Error(ErrorKind::BasisMismatch, "elliptic evaluation needs the elliptic basis");
}

// sum_{k=lo..hi} coeffs[k] * v_k with a rounding bound.
inline Evaluation weighted_sum(const std::vector<BigComplex>& coeffs, const EllipticEvaluator::Values& vals, int hi,
                               Bits w) {
  Evaluation out{BigComplex(w), 0};
  const long double u = unit_roundoff(w);
  long double mass = 0, worst = 0;
  for (int k = vals.lo; k <= hi; ++k) {
    const BigComplex& v = vals.v[static_cast<std::size_t>(k - vals.lo)];
    const long double term = abs_ld(coeffs[static_cast<std::size_t>(k)]) * abs_ld(v);
    mass += term;
    worst += term * vals.relerr(k);
    mul_add_to(out.value, coeffs[static_cast<std::size_t>(k)], v);
  }
  const long double n = hi - vals.lo + 2;
  out.err = (worst + mass * 2 * n * u) * bound_slack(static_cast<long>(n));
  return out;
}
}  // namespace detail

// Windowed evaluation of f(z) = sum b_k v_k(z); falls back to the full
// support outside the band.
inline EllipticEvaluation eval_elliptic(const Polynomial& p, const EllipticEvaluator& ev, const BigComplex& z, int m,
                                        Bits w) {
  detail::check_elliptic(p);
  const int d = p.degree();
  if (ev.degree() != d) throw Error(ErrorKind::Parameter, "evaluator degree mismatch");
  EllipticEvaluation out;
  long double tail = 0;
  out.lower = 0;
  out.upper = d;
  if (d >= 1) {
    try {
      TruncationWindow win = truncation_window(d, z, m);
      out.lower = win.lower;
      out.upper = win.upper;
      out.windowed = true;
      tail = norm_weyl(p, 64).to_ld_up() * win.tail_factor;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::WindowInvalid) throw;
    }
  }
  auto vals = ev.evaluate(z, out.lower, out.upper);
  Evaluation s = detail::weighted_sum(p.coeffs(), vals, out.upper, w);
  out.value = std::move(s.value);
  out.err = s.err + tail;
  return out;
}

inline EllipticEvaluation eval_elliptic(const Polynomial& p, const BigComplex& z, int m, Bits w) {
  EllipticEvaluator ev(p.degree(), w);
  return eval_elliptic(p, ev, z, m, w);
}

// Coefficients c_j with f'(z) = sum c_j v_j(z):
// c_j = alpha_{j+1} b_{j+1} - alpha_j b_{j-1}.
inline std::vector<BigComplex> elliptic_derivative_coeffs(const std::vector<BigComplex>& b, Bits w) {
  const int d = static_cast<int>(b.size()) - 1;
  std::vector<BigComplex> c;
  c.reserve(b.size());
  auto alpha = [&](int k) { return sqrt(BigFloat(static_cast<long>(k) * (d + 1 - k), w + 8)); };
  for (int j = 0; j <= d; ++j) {
    BigComplex t(w + 8);
    if (j + 1 <= d) t += BigComplex(b[j + 1], w + 8) * alpha(j + 1);
    if (j - 1 >= 0) t -= BigComplex(b[j - 1], w + 8) * alpha(j);
    t.round_to(w);
    c.push_back(std::move(t));
  }
  return c;
}

// Full-support f and f' at z, for certification. `deriv_coeffs` comes from
// elliptic_derivative_coeffs on the same coefficient vector.
inline EvaluationWithDerivative eval_elliptic_with_derivative(const std::vector<BigComplex>& b,
                                                             const std::vector<BigComplex>& deriv_coeffs,
                                                             const EllipticEvaluator& ev, const BigComplex& z,
                                                             Bits w) {
  const int d = static_cast<int>(b.size()) - 1;
  auto vals = ev.evaluate(z, 0, d);
  Evaluation f = detail::weighted_sum(b, vals, d, w);
  Evaluation fp = detail::weighted_sum(deriv_coeffs, vals, d, w);
  // rounding in the derivative coefficients, measured against the unreduced terms
  long double coeff_slop = 0;
  const long double u = unit_roundoff(w);
  auto alpha = [d](int k) { return std::sqrt(static_cast<long double>(k) * (d + 1 - k)); };
  for (int j = 0; j <= d; ++j) {
    long double mag = 0;
    if (j + 1 <= d) mag += alpha(j + 1) * abs_ld(b[j + 1]);
    if (j >= 1) mag += alpha(j) * abs_ld(b[j - 1]);
    coeff_slop += 3 * u * mag * abs_ld(vals.v[j]);
  }
  return {std::move(f.value), std::move(fp.value), f.err, fp.err + coeff_slop};
}

}  // namespace quasiroots
