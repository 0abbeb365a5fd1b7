#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "quasiroots/smallroots.hpp"
#include "test_support.hpp"

using namespace quasiroots;

namespace {

std::vector<BigComplex> reals(const std::vector<double>& c, Bits w) {
  std::vector<BigComplex> out;
  for (double x : c) out.emplace_back(std::complex<double>(x, 0), w);
  return out;
}

// Expands prod (x - zeta_j) with plain operators at `prec` bits.
std::vector<BigComplex> from_roots(const std::vector<BigComplex>& zeta, Bits prec) {
  std::vector<BigComplex> c{BigComplex(std::complex<double>(1, 0), prec)};
  for (const auto& z : zeta) {
    std::vector<BigComplex> next(c.size() + 1, BigComplex(prec));
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] = next[k + 1] + c[k];
      next[k] = next[k] - c[k] * z;
    }
    c = std::move(next);
  }
  return c;
}

long double l1(const std::vector<BigComplex>& g) {
  long double s = 0;
  for (const auto& x : g) s += abs_ld(x);
  return s;
}

// Greedy nearest matching distance; with well separated roots this is the
// optimal matching.
long double match(const std::vector<BigComplex>& a, std::vector<BigComplex> b) {
  long double worst = 0;
  for (const auto& x : a) {
    std::size_t best = 0;
    long double bd = INFINITY;
    for (std::size_t i = 0; i < b.size(); ++i) {
      const long double dd = qtest::dist(x, b[i]);
      if (dd < bd) bd = dd, best = i;
    }
    worst = std::max(worst, bd);
    b.erase(b.begin() + static_cast<long>(best));
  }
  return worst;
}

}  // namespace

TEST(NewtonStep, Examples) {
  const Bits w = 128;
  auto sq = [&](const BigComplex& z) {
    BigComplex two(std::complex<double>(2, 0), w);
    return std::make_pair(z * z - two, z + z);
  };
  BigComplex z1 = newton_step(sq, BigComplex(std::complex<double>(1.5, 0), w), 1, w);
  EXPECT_NEAR(static_cast<double>(z1.re.to_ld()), 17.0 / 12, 1e-30);

  BigComplex a(std::complex<double>(0.3, -0.7), w);
  auto lin = [&](const BigComplex& z) { return std::make_pair(z - a, BigComplex(std::complex<double>(1, 0), w)); };
  EXPECT_LT(qtest::dist(newton_step(lin, BigComplex(std::complex<double>(5, 5), w), 1, w), a), 1e-35L);

  auto cube = [&](const BigComplex& z) {
    BigComplex one(std::complex<double>(1, 0), w), three(std::complex<double>(3, 0), w);
    return std::make_pair(z * z * z - one, three * z * z);
  };
  // direct formula: z - (z^3 - 1) / (3 z^2)
  const long double z0 = 1.2L, want = z0 - (z0 * z0 * z0 - 1) / (3 * z0 * z0);
  EXPECT_NEAR(static_cast<double>(newton_step(cube, BigComplex(std::complex<long double>(z0, 0), w), 1, w).re.to_ld()),
              static_cast<double>(want), 1e-15);

  auto flat = [&](const BigComplex& z) { return std::make_pair(z, BigComplex(w)); };
  EXPECT_THROW(newton_step(flat, BigComplex(std::complex<double>(1, 0), w), 1, w), Error);
}

TEST(SmallRoots, Examples) {
  const Bits w = 200;
  SmallRootSet a = roots_unit_disk(reals({-0.25, 0, 1}, w), 1.25L, 64, w);
  ASSERT_EQ(a.roots.size(), 2u);
  std::vector<BigComplex> half{BigComplex(std::complex<double>(0.5, 0), w), BigComplex(std::complex<double>(-0.5, 0), w)};
  EXPECT_LT(match(half, a.roots), std::ldexp(1.0L, -64));

  SmallRootSet b = roots_unit_disk(reals({0, -1, 0, 1}, w), 2, 64, w, {.margin = 1e-6L});
  ASSERT_EQ(b.roots.size(), 3u);
  for (bool c : b.converged) EXPECT_TRUE(c);

  EXPECT_TRUE(roots_unit_disk(reals({3}, w), 3, 64, w).roots.empty());
  // roots outside the enlarged disk are dropped
  EXPECT_EQ(roots_unit_disk(reals({-4, 0, 1}, w), 5, 64, w).roots.size(), 0u);
}

TEST(SmallRoots, ConstructedFromRoots) {
  const int P = 128;
  const Bits w = 200;
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = trial == 0 ? 20 : 2 + trial % 19;
    std::vector<BigComplex> zeta;
    while (static_cast<int>(zeta.size()) < n) {
      const double r = 0.9 * std::sqrt(u(rng)), t = 2 * M_PI * u(rng);
      BigComplex z(std::polar(r, t), 4 * w);
      bool far = true;
      for (const auto& y : zeta)
        if (qtest::dist(y, z) < std::ldexp(1.0L, -P / 4) + 1e-3L) far = false;
      if (far) zeta.push_back(z);
    }
    auto g = from_roots(zeta, 4 * w);
    std::vector<BigComplex> gw;
    for (const auto& x : g) gw.emplace_back(x, w);
    const long double c = l1(gw);
    SmallRootSet s = roots_unit_disk(gw, c, P, w, {.margin = 0.01L});
    ASSERT_EQ(s.roots.size(), zeta.size()) << trial;
    EXPECT_LT(match(zeta, s.roots), std::ldexp(1.0L, -P)) << trial;
    for (std::size_t i = 0; i < s.roots.size(); ++i) {
      EXPECT_TRUE(s.converged[i]);
      // backward check
      EXPECT_LE(s.residuals[i] * c, c * n * std::ldexp(1.0L, -P + 2));
    }
  }
}

TEST(SmallRoots, NoiseTailIsTrimmed) {
  const Bits w = 200;
  auto g = reals({-0.25, 0, 1}, w);
  g.emplace_back(std::complex<double>(std::ldexp(1.0, -80), 0), w);
  SmallRootSet s = roots_unit_disk(g, 1.25L, 64, w);
  EXPECT_EQ(s.roots.size(), 2u);
  EXPECT_THROW(roots_unit_disk(std::vector<BigComplex>(70, BigComplex(w)), 1, 64, w), Error);
}
