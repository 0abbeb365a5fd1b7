#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "quasiroots/driver.hpp"
#include "quasiroots/oracle.hpp"
#include "quasiroots/smallroots.hpp"
#include "test_support.hpp"

using namespace quasiroots;

namespace {

using cld = std::complex<long double>;

bool has_root(const std::vector<CertifiedRoot>& roots, cld z, long double tol) {
  for (const auto& r : roots)
    if (std::abs(r.point.to_ld() - z) <= tol) return true;
  return false;
}

// Oracle roots inside the domain, away from the boundary band.
std::vector<BigComplex> interior_oracle_roots(const OracleResult& o, bool real, long double band) {
  std::vector<BigComplex> out;
  for (const auto& z : o.roots) {
    const cld x = z.to_ld();
    if (real && std::fabs(x.imag()) > band) continue;
    const cld xr = real ? cld(x.real(), 0) : x;
    if (distance_outside(xr, real) > 0 || distance_to_boundary(xr, real) <= band) continue;
    out.push_back(z);
  }
  return out;
}

// Every interior oracle root has one certified root within tol, and every
// certified root away from the band has an oracle root within tol.
void expect_matches_oracle(const SolveReport& r, const Polynomial& p, bool real) {
  ASSERT_TRUE(r.validation.valid);
  OracleResult o = reference_roots(p, r.params.W);
  const long double tol = r.params.inclusion_radius();
  auto inner = interior_oracle_roots(o, real, tol);
  for (const auto& z : inner) {
    int hits = 0;
    for (const auto& c : r.roots) hits += qtest::dist(c.point, z) <= tol ? 1 : 0;
    EXPECT_EQ(hits, 1) << "oracle root " << to_string(z, 20);
  }
  for (const auto& c : r.roots) {
    if (distance_to_boundary(c.point.to_ld(), real) <= tol) continue;
    long double best = INFINITY;
    for (const auto& z : o.roots) best = std::min(best, qtest::dist(c.point, z));
    EXPECT_LE(best, tol);
  }
}

}  // namespace

TEST(Solve, LinearOnTheInterval) {
  SolveRequest req;
  req.kappa = 64;
  SolveReport r = solve(Polynomial::from_reals({-0.5, 1}, Basis::Hyperbolic), req);
  ASSERT_EQ(r.roots.size(), 1u);
  EXPECT_TRUE(r.validation.valid);
  EXPECT_TRUE(has_root(r.roots, 0.5L, 1e-30L));
  EXPECT_TRUE(r.direct);
}

TEST(Solve, KappaIsClamped) {
  SolveRequest req;
  req.kappa = 2;
  SolveReport r = solve(Polynomial::from_reals({-0.5, 1}, Basis::Hyperbolic), req);
  EXPECT_EQ(r.kappa_used, kMinKappa);
}

TEST(Solve, ZeroPolynomialIsAnInputError) {
  EXPECT_THROW(Polynomial::from_reals({0, 0}, Basis::Hyperbolic), Error);
}

TEST(Solve, KostlanDiskMatchesOracle) {
  Polynomial p = generate_ensemble(EnsembleKind::Kostlan, 128, 11);
  SolveRequest req;
  req.domain = Domain::Disk;
  req.adaptive = true;
  SolveReport r = solve(p, req);
  EXPECT_EQ(r.kind, CoverCase::EllDisk);
  expect_matches_oracle(r, p, false);
}

TEST(Solve, HyperbolicIntervalMatchesOracle) {
  Polynomial p = generate_ensemble(EnsembleKind::HyperbolicGaussian, 256, 12);
  SolveRequest req;
  req.adaptive = true;
  SolveReport r = solve(p, req);
  EXPECT_EQ(r.kind, CoverCase::HypReal);
  expect_matches_oracle(r, p, true);
}

TEST(Solve, EllipticIntervalMatchesOracle) {
  Polynomial p = generate_ensemble(EnsembleKind::Kostlan, 64, 13);
  // real coefficients so that real roots exist
  std::vector<BigComplex> c;
  for (const auto& b : p.coeffs()) c.emplace_back(BigFloat(b.re), BigFloat(64));
  Polynomial q(std::move(c), Basis::Elliptic);
  SolveRequest req;
  req.adaptive = true;
  SolveReport r = solve(q, req);
  EXPECT_EQ(r.kind, CoverCase::EllReal);
  expect_matches_oracle(r, q, true);
}

TEST(Solve, HyperbolicDiskMatchesOracle) {
  Polynomial p = generate_ensemble(EnsembleKind::HyperbolicGaussian, 64, 14);
  SolveRequest req;
  req.domain = Domain::Disk;
  req.adaptive = true;
  SolveReport r = solve(p, req);
  EXPECT_EQ(r.kind, CoverCase::HypDisk);
  expect_matches_oracle(r, p, false);
}

TEST(Solve, RunsAreBitIdentical) {
  Polynomial p = generate_ensemble(EnsembleKind::HyperbolicGaussian, 48, 3);
  SolveRequest req;
  req.adaptive = true;
  SolveReport a = solve(p, req);
  req.threads = 3;
  SolveReport b = solve(p, req);
  ASSERT_EQ(a.roots.size(), b.roots.size());
  for (std::size_t i = 0; i < a.roots.size(); ++i) {
    EXPECT_EQ(to_exact_pair(a.roots[i].point.re), to_exact_pair(b.roots[i].point.re));
    EXPECT_EQ(to_exact_pair(a.roots[i].point.im), to_exact_pair(b.roots[i].point.im));
  }
}

TEST(Solve, AdaptiveDoublingNeverLosesRoots) {
  Polynomial p = generate_ensemble(EnsembleKind::Kostlan, 40, 8);
  std::size_t last = 0;
  for (long double kappa = 64;; kappa *= 2) {
    SolveReport r = solve_fixed(p, false, kappa, std::nullopt, 1);
    EXPECT_GE(r.roots.size(), last) << static_cast<double>(kappa);
    last = r.roots.size();
    if (r.validation.valid || kappa > 1e7) break;
  }
}

TEST(ReduceDomain, Shapes) {
  Polynomial p = Polynomial::from_reals({1, 2, 3}, Basis::Hyperbolic);
  auto line = reduce_domain(p, Domain::RealLine);
  ASSERT_EQ(line.size(), 4u);
  // p(-x) = 1 - 2x + 3x^2, x^2 p(1/x) = 3 + 2x + x^2, x^2 p(-1/x) = 3 - 2x + x^2
  EXPECT_EQ(line[1].p[1].re.to_ld(), -2);
  EXPECT_EQ(line[2].p[0].re.to_ld(), 3);
  EXPECT_EQ(line[3].p[1].re.to_ld(), -2);
  EXPECT_EQ(line[3].p[2].re.to_ld(), 1);
  EXPECT_EQ(reduce_domain(p, Domain::Plane).size(), 2u);
  EXPECT_EQ(reduce_domain(p, Domain::Interval).size(), 1u);
}

TEST(ReduceDomain, RootOutsideTheIntervalViaReversal) {
  SolveRequest req;
  req.domain = Domain::RealLine;
  req.kappa = 64;
  SolveReport r = solve(Polynomial::from_reals({-4, 0, 1}, Basis::Hyperbolic), req);
  ASSERT_EQ(r.roots.size(), 2u);
  EXPECT_TRUE(has_root(r.roots, 2.0L, 1e-20L));
  EXPECT_TRUE(has_root(r.roots, -2.0L, 1e-20L));
}

TEST(ReduceDomain, PlaneSmallRoots) {
  SolveRequest req;
  req.domain = Domain::Plane;
  req.kappa = 64;
  SolveReport r = solve(Polynomial::from_reals({0.25, 0, 1}, Basis::Hyperbolic), req);
  ASSERT_EQ(r.roots.size(), 2u);
  EXPECT_TRUE(has_root(r.roots, cld(0, 0.5L), 1e-20L));
  EXPECT_TRUE(has_root(r.roots, cld(0, -0.5L), 1e-20L));
  EXPECT_TRUE(r.validation.valid);
}

TEST(ReduceDomain, PlaneMatchesAllOracleRoots) {
  Polynomial p = generate_ensemble(EnsembleKind::Kostlan, 64, 5);
  SolveRequest req;
  req.domain = Domain::Plane;
  req.adaptive = true;
  SolveReport r = solve(p, req);
  ASSERT_TRUE(r.validation.valid);
  ASSERT_EQ(r.roots.size(), 64u);
  OracleResult o = reference_roots(p, r.params.W);
  for (const auto& z : o.roots) {
    // inclusion radii scale by 1/|x|^2 under inversion
    long double best = INFINITY;
    const CertifiedRoot* hit = nullptr;
    for (const auto& c : r.roots) {
      const long double dd = qtest::dist(c.point, z);
      if (dd < best) best = dd, hit = &c;
    }
    ASSERT_NE(hit, nullptr);
    EXPECT_LE(best, hit->inclusion_radius) << to_string(z, 20);
  }
}

TEST(Ensemble, Deterministic) {
  Polynomial a = generate_ensemble(EnsembleKind::Kostlan, 20, 99);
  Polynomial b = generate_ensemble(EnsembleKind::Kostlan, 20, 99);
  Polynomial c = generate_ensemble(EnsembleKind::Kostlan, 20, 100);
  ASSERT_EQ(a.degree(), 20);
  EXPECT_EQ(a.basis(), Basis::Elliptic);
  bool differs = false;
  for (int k = 0; k <= 20; ++k) {
    EXPECT_TRUE((a[k].re == b[k].re && a[k].im == b[k].im));
    differs |= !((a[k].re == c[k].re && a[k].im == c[k].im));
  }
  EXPECT_TRUE(differs);
  EXPECT_EQ(generate_ensemble(EnsembleKind::HyperbolicGaussian, 5, 1).basis(), Basis::Hyperbolic);
  EXPECT_THROW(generate_ensemble(EnsembleKind::Kostlan, 0, 1), Error);
}

TEST(Ensemble, KostlanVarianceIsOne) {
  Polynomial p = generate_ensemble(EnsembleKind::Kostlan, 20000, 7);
  long double s = 0;
  for (const auto& b : p.coeffs()) s += std::norm(b.to_ld());
  EXPECT_NEAR(static_cast<double>(s / (p.degree() + 1)), 1.0, 0.05);
}

TEST(Ensemble, KostlanArgumentsAreUniform) {
  // roots of the monomial form x^k sqrt(C(d,k)) b_k by double Aberth
  const int d = 1000;
  Polynomial p = generate_ensemble(EnsembleKind::Kostlan, d, 1);
  std::vector<std::complex<double>> a;
  long double lb = 0;
  for (int k = 0; k <= d; ++k) {
    lb = k == 0 ? 0 : lb + std::log(static_cast<long double>(d - k + 1) / k);
    const auto b = p[k].to_ld();
    const long double w = std::exp(lb / 2 - 340);  // keep sqrt(C(d,k)) in range
    a.emplace_back(static_cast<double>(b.real() * w), static_cast<double>(b.imag() * w));
  }
  SmallRootOptions opt;
  opt.init_radius = 1;
  opt.max_iterations = 500;
  auto roots = detail::aberth(a, opt).first;
  const int bins = 20;
  std::vector<int> hist(bins, 0);
  for (auto z : roots) {
    const double t = (std::arg(z) + std::numbers::pi) / (2 * std::numbers::pi);
    ++hist[std::min(bins - 1, static_cast<int>(t * bins))];
  }
  double chi2 = 0;
  const double expect = static_cast<double>(d) / bins;
  for (int h : hist) chi2 += (h - expect) * (h - expect) / expect;
  // 19 degrees of freedom: 43.8 is the 0.001 upper quantile
  EXPECT_LT(chi2, 43.8);
  // radial law: |x| is the tangent of a spherical angle, so P(|x| <= 1) = 1/2
  int inside = 0;
  for (auto z : roots) inside += std::abs(z) <= 1 ? 1 : 0;
  EXPECT_NEAR(inside / static_cast<double>(d), 0.5, 0.1);
}

TEST(Ensemble, HyperbolicRealRootsCrowdTowardOne) {
  // sign changes on a fine grid count real roots of p
  int low = 0, high = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Polynomial p = generate_ensemble(EnsembleKind::HyperbolicGaussian, 1000, seed);
    std::vector<long double> a;
    for (const auto& c : p.coeffs()) a.push_back(c.re.to_ld());
    auto eval = [&](long double x) {
      long double s = 0;
      for (auto it = a.rbegin(); it != a.rend(); ++it) s = s * x + *it;
      return s;
    };
    const int n = 20000;
    long double prev = eval(0);
    for (int i = 1; i < n; ++i) {
      const long double x = static_cast<long double>(i) / n;
      const long double v = eval(x);
      if ((v < 0) != (prev < 0)) (x <= 0.5L ? low : high)++;
      prev = v;
    }
  }
  // the density 1/(pi (1 - t^2)) puts about 0.17 roots in [0, 1/2] and
  // about one in [1/2, 1 - 1/d] per instance
  EXPECT_GT(high, 2 * low);
  EXPECT_GT(high, 10);
}

TEST(Benchmark, ReportIsWellFormed) {
  BenchReport br = benchmark({16, 32}, 1, EnsembleKind::HyperbolicGaussian, Domain::Interval, std::nullopt, true, 1);
  ASSERT_EQ(br.rows.size(), 2u);
  ASSERT_EQ(br.ratios.size(), 1u);
  const std::string csv = br.csv();
  EXPECT_EQ(csv.rfind("d,trial,case,seconds,kappa_used,roots,valid,ratio\n", 0), 0u);
  EXPECT_NE(csv.find("\n32,0,hyperbolic-real,"), std::string::npos);
  EXPECT_THROW(benchmark({32, 16}, 1, EnsembleKind::Kostlan, Domain::Disk, std::nullopt, true, 1), Error);
}

TEST(Benchmark, RepeatedRunsGiveSameRoots) {
  BenchReport a = benchmark({24}, 1, EnsembleKind::Kostlan, Domain::Disk, std::nullopt, true, 1);
  BenchReport b = benchmark({24}, 1, EnsembleKind::Kostlan, Domain::Disk, std::nullopt, true, 1);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].roots, b.rows[i].roots);
    EXPECT_EQ(a.rows[i].kappa_used, b.rows[i].kappa_used);
  }
}
