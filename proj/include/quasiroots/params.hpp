#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "bigfloat.hpp"
#include "errors.hpp"
#include "fft.hpp"
#include "polynomial.hpp"

namespace quasiroots {

inline constexpr long double kMinKappa = 64;
inline constexpr long double kMinTau = 6 * std::numbers::e_v<long double>;

// Everything Step A derives from (d, kappa, ||p||).
struct SolverParams {
  int d = 0;
  long double kappa = kMinKappa;
  long double tau = kMinTau;  // log2(d kappa), clamped below at 6e
  int P = 0;                  // local degree bound and DFT size (power of two)
  long double s = 0;          // tau d 2^tau
  int m = 0;                  // ceil(2 log2(s kappa^2)) + 1
  long double c = 0;          // ||a||_1 or ||b||_2, rounded up
  Bits W = 0;                 // working precision

  // 1/(16 s kappa): Kantorovich inclusion radius in local coordinates.
  long double inclusion_radius() const { return 1.0L / (16 * s * kappa); }
  // 1/(2 s kappa): uniqueness radius.
  long double uniqueness_radius() const { return 1.0L / (2 * s * kappa); }

  std::string describe() const {
    std::ostringstream os;
    os << "d=" << d << " kappa=" << static_cast<double>(kappa) << " tau=" << static_cast<double>(tau) << " P=" << P
       << " m=" << m << " W=" << W;
    return os.str();
  }
};

inline SolverParams make_params(int d, long double kappa, long double c, std::optional<Bits> precision = {}) {
  if (d < 1) throw Error(ErrorKind::Parameter, "degree must be at least 1");
  if (!(kappa > 0) || !std::isfinite(static_cast<double>(kappa))) throw Error(ErrorKind::Parameter, "kappa must be positive");
  SolverParams sp;
  sp.d = d;
  sp.kappa = std::max(kappa, kMinKappa);
  sp.tau = std::max(std::log2(static_cast<long double>(d) * sp.kappa), kMinTau);
  const auto p_min = static_cast<std::size_t>(std::ceil(10 * sp.tau));
  sp.P = static_cast<int>(next_pow2(p_min));
  sp.s = sp.tau * d * std::exp2(sp.tau);
  sp.m = static_cast<int>(std::ceil(2 * std::log2(sp.s * sp.kappa * sp.kappa))) + 1;
  if (sp.m > sp.P) throw Error(ErrorKind::Parameter, "m exceeds P; kappa too large for this degree");
  sp.c = c;
  sp.W = static_cast<Bits>(sp.P + static_cast<int>(std::ceil(std::log2(d + 1.0))) + 32);
  if (precision) {
    if (*precision < 64) throw Error(ErrorKind::Parameter, "precision override below 64 bits");
    sp.W = *precision;
  }
  return sp;
}

inline SolverParams make_params(const Polynomial& p, long double kappa, std::optional<Bits> precision = {}) {
  const long double c = natural_norm(p, 64).to_ld_up();
  return make_params(p.degree(), kappa, c, precision);
}

}  // namespace quasiroots
