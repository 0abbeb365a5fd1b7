// Certifies the roots of (x - 1/4)(x - 1/2)(x - 3/4)(x + 2) in [0,1].

#include <cstdio>

#include "quasiroots/driver.hpp"

namespace qr = quasiroots;

int main() {
  // expanded monomial coefficients, lowest degree first
  const qr::Polynomial p = qr::Polynomial::from_reals({-0.1875, 1.28125, -2.3125, 0.5, 1}, qr::Basis::Hyperbolic);
  qr::SolveRequest req;
  req.domain = qr::Domain::Interval;
  req.adaptive = true;
  const qr::SolveReport r = qr::solve(p, req);
  std::printf("%s\n", r.params.describe().c_str());
  for (const auto& x : r.roots)
    std::printf("root %s  radius %.3Le  beta %.3Le\n", qr::to_decimal(x.point.re, 20).c_str(), x.inclusion_radius,
                x.kdata.beta);
  std::printf("validation: %s\n", r.validation.valid ? "passed" : "failed");
  return r.validation.valid ? 0 : 1;
}
