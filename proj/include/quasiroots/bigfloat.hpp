#pragma once

// Configurable-precision real and complex scalars on top of MPFR.
//
// Every value carries its own mantissa width. Binary operators produce a
// result at the wider of the two operand widths; compound and *_to helpers
// write at the width of their destination. Nothing here reads a global
// default precision.

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace quasiroots {

using Bits = mpfr_prec_t;

class BigFloat {
 public:
  BigFloat() : BigFloat(Bits{64}) {}
  explicit BigFloat(Bits prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  BigFloat(double x, Bits prec) {
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, x, MPFR_RNDN);
  }
  BigFloat(long double x, Bits prec) {
    mpfr_init2(v_, prec);
    mpfr_set_ld(v_, x, MPFR_RNDN);
  }
  BigFloat(long x, Bits prec) {
    mpfr_init2(v_, prec);
    mpfr_set_si(v_, x, MPFR_RNDN);
  }
  BigFloat(int x, Bits prec) : BigFloat(static_cast<long>(x), prec) {}
  BigFloat(const BigFloat& other, Bits prec) {
    mpfr_init2(v_, prec);
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }

  BigFloat(const BigFloat& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& other) noexcept {
    v_[0] = other.v_[0];
    other.v_[0]._mpfr_d = nullptr;
  }
  BigFloat& operator=(const BigFloat& other) {
    if (this != &other) {
      if (v_[0]._mpfr_d == nullptr) {
        mpfr_init2(v_, mpfr_get_prec(other.v_));
      } else if (mpfr_get_prec(v_) != mpfr_get_prec(other.v_)) {
        mpfr_set_prec(v_, mpfr_get_prec(other.v_));
      }
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& other) noexcept {
    std::swap(v_[0], other.v_[0]);
    return *this;
  }
  ~BigFloat() {
    if (v_[0]._mpfr_d != nullptr) mpfr_clear(v_);
  }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  Bits prec() const { return mpfr_get_prec(v_); }

  // Changes the width, rounding the current value to nearest.
  void round_to(Bits prec) { mpfr_prec_round(v_, prec, MPFR_RNDN); }

  // Assigns x rounded to this value's width (the width is kept).
  void assign(const BigFloat& x) { mpfr_set(v_, x.v_, MPFR_RNDN); }
  void assign(double x) { mpfr_set_d(v_, x, MPFR_RNDN); }
  void assign(long double x) { mpfr_set_ld(v_, x, MPFR_RNDN); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long double to_ld() const { return mpfr_get_ld(v_, MPFR_RNDN); }
  // Rounded toward +inf; used where a safe over-approximation is needed.
  long double to_ld_up() const { return mpfr_get_ld(v_, MPFR_RNDU); }

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  // Binary exponent e with 0.5 <= |x| / 2^e < 1; meaningless for zero.
  long exponent() const { return mpfr_get_exp(v_); }

  static BigFloat pi(Bits prec) {
    BigFloat r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }
  static BigFloat two_pow(long e, Bits prec) {
    BigFloat r(prec);
    mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
    return r;
  }

  BigFloat operator-() const {
    BigFloat r(prec());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

  BigFloat& operator+=(const BigFloat& o) {
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  BigFloat& operator-=(const BigFloat& o) {
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  BigFloat& operator*=(const BigFloat& o) {
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  BigFloat& operator/=(const BigFloat& o) {
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  BigFloat& operator*=(long k) {
    mpfr_mul_si(v_, v_, k, MPFR_RNDN);
    return *this;
  }
  BigFloat& operator/=(long k) {
    mpfr_div_si(v_, v_, k, MPFR_RNDN);
    return *this;
  }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
    BigFloat r(std::max(a.prec(), b.prec()));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
    BigFloat r(std::max(a.prec(), b.prec()));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
    BigFloat r(std::max(a.prec(), b.prec()));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
    BigFloat r(std::max(a.prec(), b.prec()));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator*(const BigFloat& a, long k) {
    BigFloat r(a.prec());
    mpfr_mul_si(r.v_, a.v_, k, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator/(const BigFloat& a, long k) {
    BigFloat r(a.prec());
    mpfr_div_si(r.v_, a.v_, k, MPFR_RNDN);
    return r;
  }

  friend int compare(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_); }
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_); }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_); }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_); }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.v_, b.v_); }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_); }

 private:
  mpfr_t v_;
};

// Real elementary functions at the argument's width (correctly rounded by MPFR).
namespace detail {
template <int (*F)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t)>
inline BigFloat apply1(const BigFloat& x) {
  BigFloat r(x.prec());
  F(r.get(), x.get(), MPFR_RNDN);
  return r;
}
}  // namespace detail

inline BigFloat abs(const BigFloat& x) { return detail::apply1<mpfr_abs>(x); }
inline BigFloat sqrt(const BigFloat& x) { return detail::apply1<mpfr_sqrt>(x); }
inline BigFloat sin(const BigFloat& x) { return detail::apply1<mpfr_sin>(x); }
inline BigFloat cos(const BigFloat& x) { return detail::apply1<mpfr_cos>(x); }
inline BigFloat tan(const BigFloat& x) { return detail::apply1<mpfr_tan>(x); }
inline BigFloat atan(const BigFloat& x) { return detail::apply1<mpfr_atan>(x); }
inline BigFloat sinh(const BigFloat& x) { return detail::apply1<mpfr_sinh>(x); }
inline BigFloat cosh(const BigFloat& x) { return detail::apply1<mpfr_cosh>(x); }
inline BigFloat exp(const BigFloat& x) { return detail::apply1<mpfr_exp>(x); }
inline BigFloat log(const BigFloat& x) { return detail::apply1<mpfr_log>(x); }
inline BigFloat atan2(const BigFloat& y, const BigFloat& x) {
  BigFloat r(std::max(x.prec(), y.prec()));
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}
inline BigFloat ldexp(const BigFloat& x, long e) {
  BigFloat r(x.prec());
  mpfr_mul_2si(r.get(), x.get(), e, MPFR_RNDN);
  return r;
}

// Decimal scientific notation with `digits` significant digits.
inline std::string to_decimal(const BigFloat& x, std::size_t digits) {
  if (mpfr_nan_p(x.get())) return "nan";
  if (mpfr_inf_p(x.get())) return x.sign() > 0 ? "inf" : "-inf";
  if (x.is_zero()) return "0";
  mpfr_exp_t e = 0;
  char* raw = mpfr_get_str(nullptr, &e, 10, digits, x.get(), MPFR_RNDN);
  std::string s(raw);
  mpfr_free_str(raw);
  std::string out;
  std::size_t i = 0;
  if (s[0] == '-') {
    out.push_back('-');
    i = 1;
  }
  out.push_back(s[i]);
  if (i + 1 < s.size()) {
    out.push_back('.');
    out.append(s, i + 1, std::string::npos);
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
  }
  if (e - 1 != 0) out += "e" + std::to_string(static_cast<long>(e - 1));
  return out;
}

// Significant decimal digits that round-trip a W-bit mantissa.
inline std::size_t decimal_digits_for(Bits w) {
  return static_cast<std::size_t>(std::ceil(static_cast<double>(w) * 0.30102999566398120)) + 2;
}

// Parses a decimal string ("-1.25e-3") at `prec` bits, or an exact binary
// pair "m*2^e" whose mantissa m is hexadecimal ("-0x1a3f*2^-12", "0x1.8*2^3")
// or decimal integer. Exact pairs ignore `prec` and keep every mantissa bit.
inline BigFloat parse_real(std::string_view text, Bits prec) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty()) throw std::invalid_argument("empty numeric token");
  auto star = text.find('*');
  std::string mant(text.substr(0, star));
  long shift = 0;
  Bits p = prec;
  if (star != std::string_view::npos) {
    std::string_view rest = text.substr(star + 1);
    if (rest.substr(0, 2) != "2^") throw std::invalid_argument("expected m*2^e, got '" + std::string(text) + "'");
    std::string ex(rest.substr(2));
    std::size_t used = 0;
    shift = std::stol(ex, &used);
    if (used != ex.size()) throw std::invalid_argument("bad exponent in '" + std::string(text) + "'");
    std::size_t digits = 0;
    for (char ch : mant) digits += std::isxdigit(static_cast<unsigned char>(ch)) ? 1 : 0;
    p = std::max<Bits>(static_cast<Bits>(4 * digits + 8), 64);
  }
  BigFloat r(p);
  char* end = nullptr;
  if (mpfr_strtofr(r.get(), mant.c_str(), &end, 0, MPFR_RNDN) != 0 && star != std::string_view::npos) {
    throw std::invalid_argument("inexact mantissa in '" + std::string(text) + "'");
  }
  if (end == mant.c_str() || *end != '\0') throw std::invalid_argument("bad number '" + std::string(text) + "'");
  if (shift != 0) mpfr_mul_2si(r.get(), r.get(), shift, MPFR_RNDN);
  return r;
}

// Exact "m*2^e" rendering of a value (hex mantissa), inverse of parse_real.
inline std::string to_exact_pair(const BigFloat& x) {
  if (x.is_zero()) return "0x0*2^0";
  mpz_t m;
  mpz_init(m);
  mpfr_exp_t e = mpfr_get_z_2exp(m, x.get());
  // strip trailing zero bits so the mantissa is minimal
  mp_bitcnt_t tz = mpz_scan1(m, 0);
  mpz_tdiv_q_2exp(m, m, tz);
  e += static_cast<mpfr_exp_t>(tz);
  char* raw = mpz_get_str(nullptr, 16, m);
  std::string s(raw);
  void (*freefunc)(void*, std::size_t);
  mp_get_memory_functions(nullptr, nullptr, &freefunc);
  freefunc(raw, std::strlen(raw) + 1);
  mpz_clear(m);
  std::string out;
  if (s[0] == '-') {
    out = "-0x" + s.substr(1);
  } else {
    out = "0x" + s;
  }
  return out + "*2^" + std::to_string(static_cast<long>(e));
}

class BigComplex {
 public:
  BigFloat re;
  BigFloat im;

  BigComplex() = default;
  explicit BigComplex(Bits prec) : re(prec), im(prec) {}
  BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
  BigComplex(std::complex<long double> z, Bits prec) : re(z.real(), prec), im(z.imag(), prec) {}
  BigComplex(std::complex<double> z, Bits prec) : re(z.real(), prec), im(z.imag(), prec) {}
  BigComplex(const BigComplex& z, Bits prec) : re(z.re, prec), im(z.im, prec) {}

  Bits prec() const { return re.prec(); }
  void round_to(Bits prec) {
    re.round_to(prec);
    im.round_to(prec);
  }
  void assign(const BigComplex& z) {
    re.assign(z.re);
    im.assign(z.im);
  }
  void set_zero() {
    mpfr_set_zero(re.get(), 1);
    mpfr_set_zero(im.get(), 1);
  }

  std::complex<long double> to_ld() const { return {re.to_ld(), im.to_ld()}; }
  std::complex<double> to_cd() const { return {re.to_double(), im.to_double()}; }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }

  BigComplex operator-() const { return {-re, -im}; }

  BigComplex& operator+=(const BigComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  BigComplex& operator-=(const BigComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  BigComplex& operator*=(const BigComplex& o);
  BigComplex& operator*=(const BigFloat& s) {
    re *= s;
    im *= s;
    return *this;
  }
  BigComplex& operator/=(const BigComplex& o);
};

namespace detail {
// Per-thread temporaries for allocation-free complex kernels.
inline BigFloat& scratch(int slot, Bits prec) {
  thread_local BigFloat pool[4] = {BigFloat(Bits{64}), BigFloat(Bits{64}), BigFloat(Bits{64}),
                                   BigFloat(Bits{64})};
  BigFloat& s = pool[slot];
  if (s.prec() != prec) mpfr_set_prec(s.get(), prec);
  return s;
}
}  // namespace detail

// out = a * b, each component correctly rounded at out's width. Alias-safe.
inline void mul_to(BigComplex& out, const BigComplex& a, const BigComplex& b) {
  BigFloat& t = detail::scratch(0, out.prec());
  mpfr_fmms(t.get(), a.re.get(), b.re.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_fmma(out.im.get(), a.re.get(), b.im.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_swap(out.re.get(), t.get());
}

// out = a * s for a real s. Alias-safe.
inline void mul_to(BigComplex& out, const BigComplex& a, const BigFloat& s) {
  mpfr_mul(out.re.get(), a.re.get(), s.get(), MPFR_RNDN);
  mpfr_mul(out.im.get(), a.im.get(), s.get(), MPFR_RNDN);
}

inline void add_to(BigComplex& out, const BigComplex& a, const BigComplex& b) {
  mpfr_add(out.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(out.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
}

inline void sub_to(BigComplex& out, const BigComplex& a, const BigComplex& b) {
  mpfr_sub(out.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_sub(out.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
}

// acc += a * b.
inline void mul_add_to(BigComplex& acc, const BigComplex& a, const BigComplex& b) {
  BigFloat& t = detail::scratch(1, acc.prec());
  mpfr_fmms(t.get(), a.re.get(), b.re.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_add(acc.re.get(), acc.re.get(), t.get(), MPFR_RNDN);
  mpfr_fmma(t.get(), a.re.get(), b.im.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(acc.im.get(), acc.im.get(), t.get(), MPFR_RNDN);
}

// out = a / b. Alias-safe.
inline void div_to(BigComplex& out, const BigComplex& a, const BigComplex& b) {
  const Bits p = out.prec() + 16;
  BigFloat& den = detail::scratch(2, p);
  BigFloat& nr = detail::scratch(3, p);
  mpfr_fmma(den.get(), b.re.get(), b.re.get(), b.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_fmma(nr.get(), a.re.get(), b.re.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  BigFloat& ni = detail::scratch(0, p);
  mpfr_fmms(ni.get(), a.im.get(), b.re.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_div(out.re.get(), nr.get(), den.get(), MPFR_RNDN);
  mpfr_div(out.im.get(), ni.get(), den.get(), MPFR_RNDN);
}

inline BigComplex& BigComplex::operator*=(const BigComplex& o) {
  mul_to(*this, *this, o);
  return *this;
}
inline BigComplex& BigComplex::operator/=(const BigComplex& o) {
  div_to(*this, *this, o);
  return *this;
}

inline BigComplex operator+(const BigComplex& a, const BigComplex& b) {
  BigComplex r(std::max(a.prec(), b.prec()));
  add_to(r, a, b);
  return r;
}
inline BigComplex operator-(const BigComplex& a, const BigComplex& b) {
  BigComplex r(std::max(a.prec(), b.prec()));
  sub_to(r, a, b);
  return r;
}
inline BigComplex operator*(const BigComplex& a, const BigComplex& b) {
  BigComplex r(std::max(a.prec(), b.prec()));
  mul_to(r, a, b);
  return r;
}
inline BigComplex operator*(const BigComplex& a, const BigFloat& s) {
  BigComplex r(std::max(a.prec(), s.prec()));
  mul_to(r, a, s);
  return r;
}
inline BigComplex operator*(const BigFloat& s, const BigComplex& a) { return a * s; }
inline BigComplex operator/(const BigComplex& a, const BigComplex& b) {
  BigComplex r(std::max(a.prec(), b.prec()));
  div_to(r, a, b);
  return r;
}
inline BigComplex operator/(const BigComplex& a, const BigFloat& s) {
  BigComplex r(std::max(a.prec(), s.prec()));
  mpfr_div(r.re.get(), a.re.get(), s.get(), MPFR_RNDN);
  mpfr_div(r.im.get(), a.im.get(), s.get(), MPFR_RNDN);
  return r;
}

inline BigComplex conj(const BigComplex& z) { return {z.re, -z.im}; }

// |z|^2
inline BigFloat norm(const BigComplex& z) {
  BigFloat r(z.prec());
  mpfr_fmma(r.get(), z.re.get(), z.re.get(), z.im.get(), z.im.get(), MPFR_RNDN);
  return r;
}

inline BigFloat abs(const BigComplex& z) {
  BigFloat r(z.prec());
  mpfr_hypot(r.get(), z.re.get(), z.im.get(), MPFR_RNDN);
  return r;
}

// |z| as a long double, rounded up. Used for error bookkeeping.
inline long double abs_up(const BigComplex& z) {
  BigFloat& r = detail::scratch(2, 64);
  mpfr_hypot(r.get(), z.re.get(), z.im.get(), MPFR_RNDU);
  return mpfr_get_ld(r.get(), MPFR_RNDU);
}

inline long double abs_ld(const BigComplex& z) { return std::abs(z.to_ld()); }
inline long double abs_ld(const std::complex<long double>& z) { return std::abs(z); }
inline long double abs_ld(const std::complex<double>& z) { return std::abs(z); }

// e^{i * 2 pi * num / den}
inline BigComplex unit_root(long num, long den, Bits prec) {
  BigFloat angle = BigFloat::pi(prec + 8);
  mpfr_mul_si(angle.get(), angle.get(), 2 * num, MPFR_RNDN);
  mpfr_div_si(angle.get(), angle.get(), den, MPFR_RNDN);
  BigComplex r(prec);
  mpfr_sin_cos(r.im.get(), r.re.get(), angle.get(), MPFR_RNDN);
  return r;
}

// Complex elementary functions, built from real MPFR primitives at the
// argument's width plus a few guard bits.
inline void sin_cos(const BigComplex& z, BigComplex& s, BigComplex& c) {
  const Bits p = z.prec() + 8;
  BigFloat sx(p), cx(p), shy(p), chy(p);
  mpfr_sin_cos(sx.get(), cx.get(), z.re.get(), MPFR_RNDN);
  mpfr_sinh_cosh(shy.get(), chy.get(), z.im.get(), MPFR_RNDN);
  s = BigComplex(z.prec());
  c = BigComplex(z.prec());
  mpfr_mul(s.re.get(), sx.get(), chy.get(), MPFR_RNDN);
  mpfr_mul(s.im.get(), cx.get(), shy.get(), MPFR_RNDN);
  mpfr_mul(c.re.get(), cx.get(), chy.get(), MPFR_RNDN);
  mpfr_mul(c.im.get(), sx.get(), shy.get(), MPFR_RNDN);
  mpfr_neg(c.im.get(), c.im.get(), MPFR_RNDN);
}

inline BigComplex sin(const BigComplex& z) {
  BigComplex s, c;
  sin_cos(z, s, c);
  return s;
}
inline BigComplex cos(const BigComplex& z) {
  BigComplex s, c;
  sin_cos(z, s, c);
  return c;
}

// tan(x+iy) = (sin 2x + i sinh 2y) / (cos 2x + cosh 2y)
inline BigComplex tan(const BigComplex& z) {
  const Bits p = z.prec() + 8;
  BigFloat x2(z.re, p), y2(z.im, p);
  mpfr_mul_2ui(x2.get(), x2.get(), 1, MPFR_RNDN);
  mpfr_mul_2ui(y2.get(), y2.get(), 1, MPFR_RNDN);
  BigFloat s(p), c(p), sh(p), ch(p);
  mpfr_sin_cos(s.get(), c.get(), x2.get(), MPFR_RNDN);
  mpfr_sinh_cosh(sh.get(), ch.get(), y2.get(), MPFR_RNDN);
  BigFloat den = c + ch;
  BigComplex r(z.prec());
  mpfr_div(r.re.get(), s.get(), den.get(), MPFR_RNDN);
  mpfr_div(r.im.get(), sh.get(), den.get(), MPFR_RNDN);
  return r;
}

inline BigComplex exp(const BigComplex& z) {
  const Bits p = z.prec() + 8;
  BigFloat m = exp(BigFloat(z.re, p));
  BigFloat s(p), c(p);
  mpfr_sin_cos(s.get(), c.get(), z.im.get(), MPFR_RNDN);
  BigComplex r(z.prec());
  mpfr_mul(r.re.get(), m.get(), c.get(), MPFR_RNDN);
  mpfr_mul(r.im.get(), m.get(), s.get(), MPFR_RNDN);
  return r;
}

inline BigComplex log(const BigComplex& z) {
  BigComplex r(z.prec());
  BigFloat a = abs(BigComplex(z, z.prec() + 8));
  mpfr_log(r.re.get(), a.get(), MPFR_RNDN);
  mpfr_atan2(r.im.get(), z.im.get(), z.re.get(), MPFR_RNDN);
  return r;
}

// atan(z) = (i/2) [log(1 - iz) - log(1 + iz)]
inline BigComplex atan(const BigComplex& z) {
  const Bits p = z.prec() + 16;
  BigComplex iz(BigFloat(-z.im, p), BigFloat(z.re, p));
  BigComplex one(p);
  one.re.assign(1.0);
  BigComplex d = log(one - iz) - log(one + iz);
  BigComplex r(z.prec());
  mpfr_div_2ui(r.re.get(), d.im.get(), 1, MPFR_RNDN);
  mpfr_neg(r.re.get(), r.re.get(), MPFR_RNDN);
  mpfr_div_2ui(r.im.get(), d.re.get(), 1, MPFR_RNDN);
  return r;
}

// z^n by binary powering.
inline BigComplex pow(const BigComplex& z, unsigned long n) {
  BigComplex result(z.prec());
  result.re.assign(1.0);
  BigComplex base(z, z.prec());
  while (n > 0) {
    if (n & 1UL) mul_to(result, result, base);
    n >>= 1;
    if (n > 0) mul_to(base, base, base);
  }
  return result;
}

inline std::string to_string(const BigComplex& z, std::size_t digits = 20) {
  return "(" + to_decimal(z.re, digits) + ", " + to_decimal(z.im, digits) + ")";
}

}  // namespace quasiroots
