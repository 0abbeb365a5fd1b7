#pragma once

// Orchestration: parameters and cover (Step A), batch evaluation (Step B),
// interpolation, small-root solving and lifting (Step C), then certification,
// deduplication and validation, with optional kappa doubling.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "certify.hpp"
#include "covering.hpp"
#include "errors.hpp"
#include "localize.hpp"
#include "parallel.hpp"
#include "params.hpp"
#include "polynomial.hpp"
#include "smallroots.hpp"

namespace quasiroots {

enum class Domain { Interval, Disk, RealLine, Plane };

inline const char* to_string(Domain d) {
  switch (d) {
    case Domain::Interval: return "interval";
    case Domain::Disk: return "disk";
    case Domain::RealLine: return "real-line";
    case Domain::Plane: return "plane";
  }
  return "?";
}

inline Domain parse_domain(const std::string& s) {
  if (s == "interval") return Domain::Interval;
  if (s == "disk") return Domain::Disk;
  if (s == "real-line") return Domain::RealLine;
  if (s == "plane") return Domain::Plane;
  throw Error(ErrorKind::Input, "unknown domain '" + s + "'");
}

inline Basis parse_basis(const std::string& s) {
  if (s == "hyperbolic") return Basis::Hyperbolic;
  if (s == "elliptic") return Basis::Elliptic;
  throw Error(ErrorKind::Input, "unknown basis '" + s + "'");
}

inline CoverCase cover_case(Basis b, bool real) {
  if (b == Basis::Hyperbolic) return real ? CoverCase::HypReal : CoverCase::HypDisk;
  return real ? CoverCase::EllReal : CoverCase::EllDisk;
}

inline constexpr long double kDefaultKappa = 1024;
inline constexpr int kMaxDoublings = 20;

struct SolveRequest {
  Domain domain = Domain::Interval;
  std::optional<long double> kappa;
  std::optional<Bits> precision;
  bool adaptive = false;
  int threads = 1;
};

struct StepTimings {
  double a = 0, b = 0, c = 0, certify = 0;  // seconds
  StepTimings& operator+=(const StepTimings& o) {
    a += o.a, b += o.b, c += o.c, certify += o.certify;
    return *this;
  }
};

// Inverse map applied to roots of a reduced subproblem.
enum class InverseMap { Identity, Negate, Invert, NegInvert };

inline const char* to_string(InverseMap m) {
  switch (m) {
    case InverseMap::Identity: return "x";
    case InverseMap::Negate: return "-x";
    case InverseMap::Invert: return "1/x";
    case InverseMap::NegInvert: return "-1/x";
  }
  return "?";
}

struct SolveReport {
  std::vector<CertifiedRoot> roots;
  std::vector<CertifiedRoot> boundary;
  std::vector<Rejection> rejections;
  long double kappa_used = 0;
  SolverParams params;
  CoverCase kind = CoverCase::HypReal;
  int N = 0;
  std::size_t disks = 0;
  long total_models = 0;
  bool direct = false;
  StepTimings timings;
  ValidationReport validation;
  int attempts = 0;
  long discarded = 0;
  long decay_failures = 0;
  std::vector<std::string> log;
};

namespace detail {

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline void finish(SolveReport& r, std::vector<CertifiedRoot> all_roots, std::vector<CertifiedRoot> all_boundary,
                   std::optional<std::size_t> expected) {
  r.roots = dedup_roots(std::move(all_roots), r.params);
  std::vector<CertifiedRoot> b = dedup_roots(std::move(all_boundary), r.params);
  const long double ur = r.params.uniqueness_radius();
  for (auto& c : b) {
    bool dup = false;
    for (const auto& x : r.roots)
      if (abs_ld(x.point - c.point) <= ur) dup = true;
    if (!dup) r.boundary.push_back(std::move(c));
  }
  r.validation = validate_run(r.roots, r.rejections, r.params, expected);
}

}  // namespace detail

// One pass of the algorithm at a fixed kappa, on [0,1] or the unit disk.
inline SolveReport solve_fixed(const Polynomial& p, bool real_domain, long double kappa, std::optional<Bits> precision,
                               int threads) {
  using clock = std::chrono::steady_clock;
  SolveReport rep;
  auto t0 = clock::now();
  rep.kind = cover_case(p.basis(), real_domain);
  rep.params = make_params(p, kappa, precision);
  const SolverParams& sp = rep.params;
  rep.kappa_used = sp.kappa;
  const CoverScheme cs = build_cover(rep.kind, p.degree(), sp.tau);
  rep.N = cs.N;
  rep.disks = cs.disks.size();
  rep.total_models = cs.total_models();
  rep.direct = cs.direct;
  std::optional<EllipticEvaluator> ev;
  if (p.basis() == Basis::Elliptic) ev.emplace(p.degree(), sp.W);
  std::optional<Polynomial> mono;
  if (cs.direct) mono = p.monomial_form(sp.W);
  LocalizeContext ctx{&p, mono ? &*mono : nullptr, &sp, &cs, ev ? &*ev : nullptr, threads};
  const FullFunction F(p, sp, ev ? &*ev : nullptr, real_domain);
  rep.timings.a = detail::seconds_since(t0);

  std::vector<CertifiedRoot> all, boundary;
  const long double budget = sp.c * std::ldexp(1.0L, -sp.m);
  SmallRootOptions opt;
  opt.margin = 1 / (4 * sp.s * sp.kappa);
  for (std::size_t n = 0; n < cs.disks.size(); ++n) {
    auto tb = clock::now();
    std::vector<LocalModel> models = localize_disk(ctx, n);
    rep.timings.b += detail::seconds_since(tb);
    auto tc = clock::now();
    std::vector<SmallRootSet> sets(models.size());
    std::vector<LiftResult> lifted(models.size());
    std::vector<int> bad(models.size(), 0);
    parallel_for(models.size(), threads, [&](std::size_t j) {
      const LocalModel& lm = models[j];
      if (!lm.direct && (lm.coeff_err > budget || !decay_check(lm, sp))) bad[j] = 1;
      const long double c = lm.direct ? lm.c : sp.c;
      sets[j] = roots_unit_disk(lm.g, c, sp.P, sp.W, opt);
    });
    rep.timings.c += detail::seconds_since(tc);
    auto tk = clock::now();
    parallel_for(models.size(), threads, [&](std::size_t j) { lifted[j] = lift_and_certify(sets[j], models[j], F); });
    rep.timings.certify += detail::seconds_since(tk);
    // deterministic reduction in (disk, rotation, root) order
    for (std::size_t j = 0; j < models.size(); ++j) {
      if (bad[j]) {
        ++rep.decay_failures;
        rep.rejections.push_back({"model-error-budget", std::complex<long double>(models[j].disk.center, 0), n,
                                  models[j].rotation_index, false});
      }
      for (std::size_t i = 0; i < sets[j].roots.size(); ++i)
        if (!sets[j].converged[i])
          rep.rejections.push_back({"small-root-unconverged", sets[j].roots[i].to_ld(), n, models[j].rotation_index, false});
      auto& L = lifted[j];
      rep.discarded += L.discarded;
      for (auto& r : L.roots) all.push_back(std::move(r));
      for (auto& r : L.boundary) boundary.push_back(std::move(r));
      for (auto& r : L.rejections) rep.rejections.push_back(std::move(r));
    }
  }
  auto tk = clock::now();
  detail::finish(rep, std::move(all), std::move(boundary), std::nullopt);
  rep.timings.certify += detail::seconds_since(tk);
  rep.attempts = 1;
  return rep;
}

// Kappa doubling until validation passes (at most 20 doublings).
inline SolveReport solve_adaptive(const Polynomial& p, bool real_domain, long double kappa0,
                                  std::optional<Bits> precision, int threads) {
  long double kappa = std::max(kappa0, kMinKappa);
  StepTimings total;
  std::vector<std::string> log;
  for (int i = 0; i <= kMaxDoublings; ++i) {
    SolveReport r = solve_fixed(p, real_domain, kappa, precision, threads);
    total += r.timings;
    std::ostringstream os;
    os << "kappa=" << static_cast<double>(kappa) << " roots=" << r.roots.size()
       << " valid=" << (r.validation.valid ? "yes" : "no");
    for (const auto& c : r.validation.causes) os << " " << c;
    log.push_back(os.str());
    if (r.validation.valid) {
      r.timings = total;
      r.attempts = i + 1;
      r.log = std::move(log);
      return r;
    }
    kappa *= 2;
  }
  std::string msg = "condition bound exceeded after 20 doublings:";
  for (const auto& l : log) msg += "\n  " + l;
  throw Error(ErrorKind::IllConditioned, msg);
}

struct Subproblem {
  Polynomial p;
  InverseMap map;
};

// Whole line: four problems on [0,1]; whole plane: two on the unit disk.
inline std::vector<Subproblem> reduce_domain(const Polynomial& p, Domain domain) {
  switch (domain) {
    case Domain::Interval:
    case Domain::Disk: return {{p, InverseMap::Identity}};
    case Domain::RealLine:
      return {{p, InverseMap::Identity},
              {p.reflected(), InverseMap::Negate},
              {p.reversed(), InverseMap::Invert},
              {p.reversed().reflected(), InverseMap::NegInvert}};
    case Domain::Plane: return {{p, InverseMap::Identity}, {p.reversed(), InverseMap::Invert}};
  }
  return {};
}

inline BigComplex apply_inverse(const BigComplex& z, InverseMap m) {
  const Bits w = z.prec();
  switch (m) {
    case InverseMap::Identity: return z;
    case InverseMap::Negate: return -z;
    case InverseMap::Invert: return BigComplex(std::complex<double>(1, 0), w) / z;
    case InverseMap::NegInvert: return -(BigComplex(std::complex<double>(1, 0), w) / z);
  }
  return z;
}

// Moves a certified root to the original coordinates; inclusion radii scale
// by |d(1/x)/dx| = 1/|x|^2 under inversion.
inline CertifiedRoot map_root(CertifiedRoot r, InverseMap m) {
  if (m == InverseMap::Invert || m == InverseMap::NegInvert) {
    const long double a = abs_ld(r.point);
    const long double lo = a - r.inclusion_radius;
    r.inclusion_radius = lo > 0 ? r.inclusion_radius / (lo * lo) : INFINITY;
  }
  r.point = apply_inverse(r.point, m);
  return r;
}

inline SolveReport solve(const Polynomial& p, const SolveRequest& req) {
  const bool real = req.domain == Domain::Interval || req.domain == Domain::RealLine;
  const long double kappa = req.kappa.value_or(kDefaultKappa);
  auto run = [&](const Polynomial& q) {
    return req.adaptive ? solve_adaptive(q, real, kappa, req.precision, req.threads)
                        : solve_fixed(q, real, kappa, req.precision, req.threads);
  };
  if (req.domain == Domain::Interval || req.domain == Domain::Disk) return run(p);

  SolveReport out;
  std::vector<CertifiedRoot> all;
  const auto subs = reduce_domain(p, req.domain);
  bool first = true;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    SolveReport r = run(subs[i].p);
    for (auto& c : r.roots) all.push_back(map_root(std::move(c), subs[i].map));
    for (auto& c : r.boundary) all.push_back(map_root(std::move(c), subs[i].map));
    for (auto& rj : r.rejections) {
      const BigComplex pt(rj.point, 64);
      rj.point = apply_inverse(pt, subs[i].map).to_ld();
      out.rejections.push_back(std::move(rj));
    }
    if (first || r.params.kappa > out.params.kappa) out.params = r.params;
    out.kappa_used = std::max(out.kappa_used, r.kappa_used);
    out.kind = r.kind;
    out.N += r.N;
    out.disks += r.disks;
    out.total_models += r.total_models;
    out.timings += r.timings;
    out.attempts = std::max(out.attempts, r.attempts);
    out.discarded += r.discarded;
    out.decay_failures += r.decay_failures;
    for (auto& l : r.log) out.log.push_back(std::string(to_string(subs[i].map)) + ": " + l);
    first = false;
  }
  // the subproblems meet on |x| = 1 and at 0; merge the copies found twice
  std::optional<std::size_t> expected;
  if (req.domain == Domain::Plane) expected = static_cast<std::size_t>(p.degree());
  detail::finish(out, std::move(all), {}, expected);
  return out;
}

enum class EnsembleKind { Kostlan, HyperbolicGaussian };

inline EnsembleKind parse_ensemble(const std::string& s) {
  if (s == "kostlan") return EnsembleKind::Kostlan;
  if (s == "hyperbolic-gaussian") return EnsembleKind::HyperbolicGaussian;
  throw Error(ErrorKind::Input, "unknown ensemble '" + s + "'");
}

inline const char* to_string(EnsembleKind k) {
  return k == EnsembleKind::Kostlan ? "kostlan" : "hyperbolic-gaussian";
}

// Kostlan: b_k standard complex Gaussian (E|b_k|^2 = 1) in the elliptic
// basis. Hyperbolic: a_k standard real Gaussian in the monomial basis.
inline Polynomial generate_ensemble(EnsembleKind kind, int d, std::uint64_t seed) {
  if (d < 1) throw Error(ErrorKind::Parameter, "ensemble degree must be at least 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<BigComplex> c;
  c.reserve(static_cast<std::size_t>(d) + 1);
  for (int k = 0; k <= d; ++k) {
    if (kind == EnsembleKind::Kostlan) {
      const double re = g(rng) * std::sqrt(0.5), im = g(rng) * std::sqrt(0.5);
      c.emplace_back(std::complex<double>(re, im), 64);
    } else {
      c.emplace_back(std::complex<double>(g(rng), 0), 64);
    }
  }
  // keep the requested degree even in the (measure-zero) event of a zero top coefficient
  if (c.back().is_zero()) c.back() = BigComplex(std::complex<double>(1, 0), 64);
  return Polynomial(std::move(c), kind == EnsembleKind::Kostlan ? Basis::Elliptic : Basis::Hyperbolic);
}

struct BenchRow {
  int d = 0;
  int trial = 0;
  double seconds = 0;
  long double kappa_used = 0;
  std::size_t roots = 0;
  bool valid = false;
};

struct BenchReport {
  std::string kind;
  std::vector<BenchRow> rows;
  std::vector<std::pair<int, double>> mean_seconds;  // per degree
  std::vector<double> ratios;                        // mean(d_i) / mean(d_{i-1})
  std::vector<std::string> warnings;

  std::string csv() const {
    std::ostringstream os;
    os << "d,trial,case,seconds,kappa_used,roots,valid,ratio\n";
    for (const auto& r : rows) {
      double ratio = 0;
      for (std::size_t i = 1; i < mean_seconds.size(); ++i)
        if (mean_seconds[i].first == r.d) ratio = ratios[i - 1];
      os << r.d << "," << r.trial << "," << kind << "," << r.seconds << "," << static_cast<double>(r.kappa_used) << ","
         << r.roots << "," << (r.valid ? 1 : 0) << ",";
      if (ratio > 0) os << ratio;
      os << "\n";
    }
    return os.str();
  }
};

// Wall time per (d, trial) on seeded ensembles; ratios of mean times between
// consecutive sizes expose the scaling.
inline BenchReport benchmark(const std::vector<int>& sizes, int trials, EnsembleKind kind, Domain domain,
                             std::optional<long double> kappa, bool adaptive, int threads, std::uint64_t seed = 1) {
  if (!std::is_sorted(sizes.begin(), sizes.end())) throw Error(ErrorKind::Parameter, "benchmark sizes must be sorted");
  BenchReport br;
  const Basis basis = kind == EnsembleKind::Kostlan ? Basis::Elliptic : Basis::Hyperbolic;
  br.kind = std::string(to_string(cover_case(basis, domain == Domain::Interval)));
  SolveRequest req;
  req.domain = domain;
  req.kappa = kappa;
  req.adaptive = adaptive;
  req.threads = threads;
  for (int d : sizes) {
    double sum = 0;
    for (int t = 0; t < trials; ++t) {
      Polynomial p = generate_ensemble(kind, d, seed + 1000003ULL * static_cast<std::uint64_t>(d) + static_cast<std::uint64_t>(t));
      auto t0 = std::chrono::steady_clock::now();
      SolveReport r = solve(p, req);
      BenchRow row;
      row.d = d;
      row.trial = t;
      row.seconds = detail::seconds_since(t0);
      row.kappa_used = r.kappa_used;
      row.roots = r.roots.size();
      row.valid = r.validation.valid;
      sum += row.seconds;
      br.rows.push_back(row);
    }
    br.mean_seconds.emplace_back(d, sum / std::max(1, trials));
  }
  for (std::size_t i = 1; i < br.mean_seconds.size(); ++i) {
    const double r = br.mean_seconds[i].second / br.mean_seconds[i - 1].second;
    br.ratios.push_back(r);
    if (r > 3.5) {
      std::ostringstream os;
      os << "time ratio " << r << " between d=" << br.mean_seconds[i - 1].first << " and d=" << br.mean_seconds[i].first
         << " exceeds 3.5";
      br.warnings.push_back(os.str());
    }
  }
  return br;
}

}  // namespace quasiroots
