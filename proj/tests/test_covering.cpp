#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "quasiroots/covering.hpp"

using namespace quasiroots;

TEST(Params, DerivedQuantities) {
  auto sp = make_params(256, 1024, 1.0);
  EXPECT_NEAR(static_cast<double>(sp.tau), 18.0, 1e-12);
  EXPECT_EQ(sp.P, 256);
  EXPECT_GE(sp.P, std::ceil(10 * sp.tau));
  EXPECT_GT(sp.m, 2 * std::log2(sp.s * sp.kappa * sp.kappa));
  EXPECT_LE(sp.m, sp.P);
  EXPECT_EQ(sp.W, 256 + 9 + 32);
  auto low = make_params(4, 1, 1.0);
  EXPECT_EQ(low.kappa, 64);
  EXPECT_NEAR(static_cast<double>(low.tau), 6 * std::numbers::e, 1e-12);
  EXPECT_THROW(make_params(0, 64, 1.0), Error);
}

TEST(Cover, GoldenHyperbolicReal) {
  auto cs = build_cover(CoverCase::HypReal, 1000, 30);
  ASSERT_EQ(cs.N, 6);
  EXPECT_NEAR(static_cast<double>(cs.disks[0].center), 1.0 / 3, 1e-15);
  EXPECT_NEAR(static_cast<double>(cs.disks[0].radius), 1.0 / 3, 1e-15);
  EXPECT_NEAR(static_cast<double>(cs.disks[5].radius), 2.0 / 729, 1e-15);
  EXPECT_LE(cs.disks[5].radius, 30 / (2 * std::numbers::e * 1000));
  EXPECT_EQ(cs.total_models(), 6);
}

TEST(Cover, GoldenHyperbolicDisk) {
  auto cs = build_cover(CoverCase::HypDisk, 1000, 30);
  ASSERT_EQ(cs.N, 9);
  EXPECT_EQ(cs.disks[0].center, 0.25L);
  EXPECT_EQ(cs.disks[0].radius, 0.375L);
  EXPECT_EQ(cs.rotations[0], 16);
  EXPECT_EQ(cs.rotations[8], 1L << 11);
  EXPECT_EQ(cs.rotations[7], 1L << 11);
  EXPECT_EQ(cs.rotations[6], 1L << 10);
}

TEST(Cover, GoldenElliptic) {
  auto cs = build_cover(CoverCase::EllDisk, 1000, 30);
  EXPECT_EQ(cs.N, 30);
  EXPECT_EQ(cs.sectors, 170);
  EXPECT_LE(cs.sectors, std::ceil(4 * std::numbers::pi * std::sqrt(2 * std::numbers::e * 1000 / 30)));
  EXPECT_EQ(cs.disks.size(), 30u);  // the end cap is already reached
  auto er = build_cover(CoverCase::EllReal, 1000, 30);
  EXPECT_EQ(er.N, static_cast<int>(std::ceil(std::numbers::pi / 2 * std::sqrt(std::numbers::e * 1000 / 30))));
  EXPECT_GE(2 * er.N * er.disks[0].radius, std::numbers::pi / 4);
}

TEST(Cover, DegenerateAndInvalid) {
  auto cs = build_cover(CoverCase::HypDisk, 10, 20);
  EXPECT_TRUE(cs.direct);
  EXPECT_EQ(cs.disks.size(), 1u);
  EXPECT_EQ(verify_cover(cs, 1000).uncovered, 0);
  EXPECT_THROW(build_cover(CoverCase::HypReal, 100, 10), Error);
}

TEST(Cover, HyperbolicAbutmentIsExactInRationals) {
  // all quantities as integer numerators over 3^(n+1)
  for (int n = 1; n < 35; ++n) {
    long long den = 1;
    for (int i = 0; i <= n; ++i) den *= 3;
    const long long g = den - 2, r = 1;          // gamma_n, rho_n
    const long long g_prev = den - 6, r_prev = 3;  // gamma_{n-1}, rho_{n-1}
    EXPECT_EQ(g - r, g_prev + r_prev);
    EXPECT_EQ(g - r, den - 3);  // 1 - 3^-n
  }
}

TEST(Cover, HyperbolicDiskSectorBound) {
  for (int d : {1000, 10000}) {
    auto cs = build_cover(CoverCase::HypDisk, d, 30);
    for (int n = 0; n < cs.N; ++n) {
      const long double g = cs.disks[n].center, r = cs.disks[n].radius;
      const long double rn1 = n + 1 < cs.N ? 1 - std::ldexp(1.0L, -(n + 1)) : 1.0L;
      // half-angle at the origin subtended where the disk boundary meets |z| = r_{n+1}
      const long double cos_half = (g * g + rn1 * rn1 - r * r) / (2 * g * rn1);
      const long double sin_half = std::sqrt(1 - cos_half * cos_half);
      const int e = std::min(n + 3, cs.N + 1);
      EXPECT_GE(sin_half, std::sqrt(5.0L) * std::ldexp(1.0L, -e) * (1 - 1e-15L)) << n;
      EXPECT_GE(std::sqrt(5.0L) * std::ldexp(1.0L, -e), 2 * std::numbers::pi_v<long double> * std::ldexp(1.0L, -std::min(n + 5, cs.N + 3)));
    }
  }
}

TEST(Cover, DecayPreconditionOnEveryHyperbolicDisk) {
  for (auto kind : {CoverCase::HypReal, CoverCase::HypDisk}) {
    for (int d : {40, 1000, 10000}) {
      for (long double tau : {17.0L, 30.0L, 35.0L}) {
        auto cs = build_cover(kind, d, tau);
        if (cs.direct) continue;
        for (const auto& dk : cs.disks) {
          bool ok = 2 * dk.radius <= (1 - std::fabs(dk.center)) * (1 + 1e-15L) ||
                    dk.radius <= tau / (2 * std::numbers::e_v<long double> * d) * (1 + 1e-15L);
          EXPECT_TRUE(ok) << to_string(kind) << " d=" << d << " gamma=" << static_cast<double>(dk.center);
        }
      }
    }
  }
}

TEST(Cover, EllipticBandMapping) {
  // |atan(a+ib) - atan(a)| <= |b| for 0 <= b <= a
  for (int i = 1; i <= 50; ++i) {
    for (int j = 0; j <= 10; ++j) {
      const long double a = i / 50.0L, b = a * j / 10.0L;
      if (a * a + b * b > 1) continue;
      auto lhs = std::abs(std::atan(std::complex<long double>(a, b)) - std::atan(std::complex<long double>(a, 0)));
      EXPECT_LE(lhs, b + 1e-18L);
    }
  }
}

TEST(Cover, AllCasesCoverSmallDomains) {
  for (auto kind : {CoverCase::HypReal, CoverCase::HypDisk, CoverCase::EllReal, CoverCase::EllDisk}) {
    for (int d : {20, 64, 1000}) {
      auto cs = build_cover(kind, d, 17);
      auto rep = verify_cover(cs, 20000);
      EXPECT_EQ(rep.uncovered, 0) << to_string(kind) << " d=" << d;
    }
  }
}

TEST(Cover, EllipticPointNearOneIsCovered) {
  auto cs = build_cover(CoverCase::EllDisk, 1000, 30);
  EXPECT_GE(membership_margin(cs, {0.99L, 0}), 0);
  EXPECT_GE(membership_margin(cs, std::polar(1.0L, std::numbers::pi_v<long double> / cs.sectors)), -kCoverSlack);
}
