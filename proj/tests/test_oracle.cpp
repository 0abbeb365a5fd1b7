#include <gtest/gtest.h>

#include <cmath>

#include "quasiroots/oracle.hpp"
#include "test_support.hpp"

using namespace quasiroots;

namespace {

bool contains(const std::vector<BigComplex>& roots, std::complex<long double> z, long double tol) {
  for (const auto& r : roots)
    if (std::abs(r.to_ld() - z) < tol) return true;
  return false;
}

}  // namespace

TEST(ReferenceRoots, FactoredExamples) {
  OracleResult a = reference_roots(Polynomial::from_reals({-1, 0, 1}, Basis::Hyperbolic), 64);
  ASSERT_EQ(a.roots.size(), 2u);
  EXPECT_TRUE(contains(a.roots, 1, 1e-18L));
  EXPECT_TRUE(contains(a.roots, -1, 1e-18L));
  OracleResult b = reference_roots(Polynomial::from_reals({-6, 11, -6, 1}, Basis::Hyperbolic), 64);
  ASSERT_EQ(b.roots.size(), 3u);
  for (int k = 1; k <= 3; ++k) EXPECT_TRUE(contains(b.roots, k, 1e-18L)) << k;
}

TEST(ReferenceRoots, KostlanPassesVieta) {
  auto b = qtest::gaussian_complex(65, 5);
  Polynomial p = Polynomial::from_doubles(b, Basis::Elliptic);
  OracleResult r = reference_roots(p, 128);
  ASSERT_EQ(r.roots.size(), 64u);
  EXPECT_LE(r.sum_residual, r.residual_bound);
  EXPECT_LE(r.agreement, std::ldexp(1.0L, -128));
  // every root is a zero of the monomial form at the oracle precision
  Polynomial mono = p.monomial_form(512);
  for (const auto& z : r.roots) {
    BigComplex v = qtest::horner(mono.coeffs(), z, 512);
    long double scale = 0;
    for (const auto& a : mono.coeffs()) scale += abs_ld(a) * std::pow(std::max(1.0L, abs_ld(z)), 64.0L);
    EXPECT_LE(abs_ld(v), scale * std::ldexp(1.0L, -120));
  }
}

TEST(ReferenceCondition, Examples) {
  Polynomial lin = Polynomial::from_reals({-0.5, 1}, Basis::Hyperbolic);
  EXPECT_NEAR(static_cast<double>(reference_condition(lin, CoverCase::HypReal, 64)), 1.5, 1e-9);

  // no root in [0,1]: the value branch is the binding one
  Polynomial far = Polynomial::from_reals({4, 1}, Basis::Hyperbolic);
  EXPECT_NEAR(static_cast<double>(reference_condition(far, CoverCase::HypReal, 64)), 5.0 / 4, 1e-9);

  EXPECT_THROW(reference_condition(lin, CoverCase::HypReal, 8), Error);
}

TEST(ReferenceCondition, StableUnderGridDoubling) {
  auto b = qtest::gaussian_real(65, 3);
  Polynomial p = Polynomial::from_reals(b, Basis::Elliptic);
  const long double k1 = reference_condition(p, CoverCase::EllReal, 16 * 64);
  const long double k2 = reference_condition(p, CoverCase::EllReal, 32 * 64);
  EXPECT_GE(k2, k1 * (1 - 1e-12L));
  EXPECT_LE(std::fabs(k2 - k1), 0.01L * k2);
}

TEST(ReferenceCondition, MonotoneInGrid) {
  auto a = qtest::gaussian_complex(21, 8);
  Polynomial p = Polynomial::from_doubles(a, Basis::Hyperbolic);
  const long double k1 = reference_condition(p, CoverCase::HypDisk, 16 * 20, 32);
  const long double k2 = reference_condition(p, CoverCase::HypDisk, 32 * 20, 64);
  EXPECT_GE(k2, k1 * 0.999L);
}

TEST(DerivativeBound, HoldsForRandomWeights) {
  auto one = derivative_bound_check(Polynomial::from_reals({0.6, 0.8}, Basis::Elliptic), 0.7L, 0);
  EXPECT_TRUE(one.holds);
  EXPECT_LE(one.worst_ratio, 1.0L);

  auto b = qtest::gaussian_complex(33, 12);
  auto r = derivative_bound_check(Polynomial::from_doubles(b, Basis::Elliptic), 0.3L, 32);
  EXPECT_TRUE(r.holds);

  auto c = qtest::gaussian_complex(9, 4);
  auto s = derivative_bound_check(Polynomial::from_doubles(c, Basis::Elliptic), 0.5L, 8);
  EXPECT_TRUE(s.holds);
  EXPECT_GT(s.worst_ratio, 0);
}
