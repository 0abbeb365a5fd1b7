#pragma once

// Disk coverings of [0,1] and of the unit disk, one per basis.
//
// Hyperbolic disks live in the x-plane. Elliptic disks live in the t-plane
// of f(t) = cos^d(t) p(tan t) and are mapped to the domain by tan. Centers
// are stored on the nonnegative real axis; rotated copies are implied by the
// rotation (hyperbolic disk) or sector (elliptic disk) counts.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "errors.hpp"
#include "params.hpp"

namespace quasiroots {

enum class CoverCase { HypReal, HypDisk, EllReal, EllDisk };

inline const char* to_string(CoverCase c) {
  switch (c) {
    case CoverCase::HypReal: return "hyperbolic-real";
    case CoverCase::HypDisk: return "hyperbolic-disk";
    case CoverCase::EllReal: return "elliptic-real";
    case CoverCase::EllDisk: return "elliptic-disk";
  }
  return "?";
}

inline bool is_elliptic(CoverCase c) { return c == CoverCase::EllReal || c == CoverCase::EllDisk; }
inline bool is_real_domain(CoverCase c) { return c == CoverCase::HypReal || c == CoverCase::EllReal; }

struct Disk {
  long double center = 0;  // gamma, on the real axis
  long double radius = 0;  // rho
};

struct CoverScheme {
  CoverCase kind = CoverCase::HypReal;
  int d = 0;
  long double tau = 0;
  int N = 0;                   // disk count from the closed-form formula
  std::vector<Disk> disks;     // may hold one extra end-cap disk (EllDisk)
  std::vector<long> rotations; // M_n per disk
  long sectors = 1;            // M, elliptic disk only
  // d < tau: one disk D(0,1) on which p itself (monomial form) is solved.
  bool direct = false;

  // Number of rotated copies of disk n that must be processed.
  long copies(std::size_t n) const { return kind == CoverCase::EllDisk && !direct ? sectors : rotations[n]; }

  long total_models() const {
    long t = 0;
    for (std::size_t n = 0; n < disks.size(); ++n) t += copies(n);
    return t;
  }
};

namespace detail {
inline long double e_const() { return std::numbers::e_v<long double>; }
inline long double pi_const() { return std::numbers::pi_v<long double>; }
}  // namespace detail

// Sector count and half-width for the elliptic disk case.
inline long double elliptic_band_theta(int d, long double tau) {
  return 0.25L * std::sqrt(tau / (2 * detail::e_const() * d));
}

inline CoverScheme build_cover(CoverCase kind, int d, long double tau) {
  if (d < 1) throw Error(ErrorKind::Parameter, "cover needs d >= 1");
  if (!(tau >= kMinTau * (1 - 1e-15L))) throw Error(ErrorKind::Parameter, "tau must be at least 6e");
  CoverScheme cs;
  cs.kind = kind;
  cs.d = d;
  cs.tau = tau;
  const long double e = detail::e_const(), pi = detail::pi_const();
  const long double dd = d;
  if (dd < tau) {
    cs.direct = true;
    cs.N = 1;
    cs.disks.push_back({0, 1});
    cs.rotations.push_back(1);
    return cs;
  }
  switch (kind) {
    case CoverCase::HypReal: {
      cs.N = static_cast<int>(std::ceil(std::log(4 * e * dd / tau) / std::log(3.0L)));
      for (int n = 0; n < cs.N; ++n) {
        const long double t = std::pow(3.0L, -n);
        const long double g = 1 - (2.0L / 3) * t;
        const long double r = n < cs.N - 1 ? t / 3 : 1 - g;
        cs.disks.push_back({g, r});
        cs.rotations.push_back(1);
      }
      break;
    }
    case CoverCase::HypDisk: {
      cs.N = static_cast<int>(std::ceil(std::log2(3 * e * dd / tau)));
      for (int n = 0; n < cs.N; ++n) {
        const long double t = std::ldexp(1.0L, -n);
        const bool last = n == cs.N - 1;
        const long double g = last ? 1 - t / 2 : 1 - 0.75L * t;
        const long double r = last ? 0.75L * t : 0.375L * t;
        cs.disks.push_back({g, r});
        cs.rotations.push_back(1L << std::min(n + 4, cs.N + 2));
      }
      break;
    }
    case CoverCase::EllReal: {
      cs.N = static_cast<int>(std::ceil(pi / 2 * std::sqrt(e * dd / tau)));
      const long double rho = 0.25L * std::sqrt(tau / (e * dd));
      for (int n = 0; n < cs.N; ++n) {
        cs.disks.push_back({(2 * n + 1) * rho, rho});
        cs.rotations.push_back(1);
      }
      break;
    }
    case CoverCase::EllDisk: {
      cs.N = static_cast<int>(std::ceil(pi * std::sqrt(e * dd / tau)));
      const long double rho = 0.25L * std::sqrt(tau / (e * dd));
      const long double theta = elliptic_band_theta(d, tau);
      cs.sectors = static_cast<long>(std::ceil(pi / theta));
      for (int n = 0; n < cs.N; ++n) {
        cs.disks.push_back({n * rho, rho});
        cs.rotations.push_back(1);
      }
      // The points of the unit circle map to Re t = pi/4 with |Im t| up to
      // h = atanh(tan(pi/(2M))); make sure the last disk reaches that corner.
      const long double h = std::atanh(std::tan(pi / (2 * cs.sectors)));
      const long double gap = pi / 4 - (cs.N - 1) * rho;
      if (gap * gap + h * h > rho * rho) {
        cs.disks.push_back({cs.N * rho, rho});
        cs.rotations.push_back(1);
      }
      break;
    }
  }
  return cs;
}

// Disk data is held in long double; points exactly on a shared boundary may
// miss by an ulp.
inline constexpr long double kCoverSlack = 1e-16L;

struct CoverReport {
  long samples = 0;
  long uncovered = 0;
  // min over samples of the best membership margin (radius minus distance);
  // below -kCoverSlack iff some sample is uncovered
  long double worst_margin = std::numeric_limits<long double>::infinity();
  std::vector<std::complex<long double>> uncovered_points;  // first few
};

namespace detail {

inline long double radical_inverse(unsigned long i, unsigned base) {
  long double f = 1, r = 0;
  while (i > 0) {
    f /= base;
    r += f * static_cast<long double>(i % base);
    i /= base;
  }
  return r;
}

// Best margin of z (domain coordinates) over all disks of the scheme.
inline long double membership_margin(const CoverScheme& cs, std::complex<long double> z) {
  using C = std::complex<long double>;
  const long double pi = pi_const();
  long double best = -std::numeric_limits<long double>::infinity();
  if (cs.direct) return cs.disks[0].radius - std::abs(z - C(cs.disks[0].center, 0));
  const bool ell = is_elliptic(cs.kind);
  const long double phi = std::arg(z);
  if (ell) {
    // every elliptic disk shares the same sector rotations, so map once
    const long M = cs.copies(0);
    const long j0 = std::lround(phi * M / (2 * pi));
    for (long dj = -1; dj <= 1; ++dj) {
      const long j = ((j0 + dj) % M + M) % M;
      const C w = std::atan(z * std::polar(1.0L, -2 * pi * static_cast<long double>(j) / M));
      for (const Disk& dk : cs.disks) best = std::max(best, dk.radius - std::abs(w - C(dk.center, 0)));
      if (M == 1) break;
    }
    return best;
  }
  for (std::size_t n = 0; n < cs.disks.size(); ++n) {
    const Disk& dk = cs.disks[n];
    const long M = cs.copies(n);
    const long j0 = std::lround(phi * M / (2 * pi));
    for (long dj = -1; dj <= 1; ++dj) {
      const long j = ((j0 + dj) % M + M) % M;
      const C rot = std::polar(1.0L, -2 * pi * static_cast<long double>(j) / M);
      const C w = z * rot;
      best = std::max(best, dk.radius - std::abs(w - C(dk.center, 0)));
      if (M == 1) break;
    }
  }
  return best;
}

}  // namespace detail

inline long double membership_margin(const CoverScheme& cs, std::complex<long double> z) {
  return detail::membership_margin(cs, z);
}

// Quasi-random sampling of the target domain ([0,1] or the closed unit disk).
inline CoverReport verify_cover(const CoverScheme& cs, long samples) {
  if (samples < 1) throw Error(ErrorKind::Parameter, "verify_cover needs at least one sample");
  CoverReport rep;
  const long double pi = detail::pi_const();
  const bool real = is_real_domain(cs.kind);
  for (long i = 0; i < samples; ++i) {
    std::complex<long double> z;
    if (real) {
      // endpoints first, then a van der Corput sequence
      z = i == 0 ? 0.0L : i == 1 ? 1.0L : detail::radical_inverse(static_cast<unsigned long>(i), 2);
    } else {
      const long double u = detail::radical_inverse(static_cast<unsigned long>(i + 1), 2);
      const long double v = detail::radical_inverse(static_cast<unsigned long>(i + 1), 3);
      // every 64th point sits on the boundary circle
      const long double r = i % 64 == 0 ? 1.0L : std::sqrt(u);
      z = std::polar(r, 2 * pi * v);
    }
    const long double mg = detail::membership_margin(cs, z);
    rep.worst_margin = std::min(rep.worst_margin, mg);
    if (mg < -kCoverSlack) {
      ++rep.uncovered;
      if (rep.uncovered_points.size() < 8) rep.uncovered_points.push_back(z);
    }
    ++rep.samples;
  }
  return rep;
}

}  // namespace quasiroots
