#pragma once

// Kantorovich certification of candidate roots against the full function,
// deduplication across overlapping disks, and run validation.
//
// Function coordinates: hyperbolic candidates are tested on p itself in the
// x-plane. Elliptic candidates are tested on f(t) = sum b_k w^k v_k(t), the
// rotated copy whose real axis carries the candidate's sector, and map back
// to the domain by x = w tan(t).

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "bigfloat.hpp"
#include "covering.hpp"
#include "errors.hpp"
#include "localize.hpp"
#include "params.hpp"
#include "polynomial.hpp"
#include "smallroots.hpp"

namespace quasiroots {

struct KantorovichData {
  long double beta = 0;      // |f(z)/f'(z)|, rounded up
  long double K = 0;         // sup |f''| / |f'(z)| over D(z, 2 beta)
  long double product = 0;   // 2 beta K
};

struct KantorovichResult {
  bool accepted = false;
  KantorovichData data;
  std::string cause;  // empty when accepted
};

// Certified magnitudes at one point: |f| <= f_up, |f'| >= fp_low, and
// sup |f''| <= second on the ball the test uses.
struct PointBounds {
  long double f_up = 0;
  long double fp_low = 0;
  long double second = 0;
};

// Accepts iff 2 beta K <= 1; a derivative below c/(2 kappa) breaks the
// condition-number promise and is reported as such.
inline KantorovichResult kantorovich_test(const PointBounds& b, long double c, long double kappa) {
  KantorovichResult r;
  if (!(b.fp_low >= c / (2 * kappa))) {
    r.cause = "derivative-too-small";
    return r;
  }
  r.data.beta = b.f_up / b.fp_low * (1 + 1e-18L);
  r.data.K = b.second / b.fp_low * (1 + 1e-18L);
  r.data.product = 2 * r.data.beta * r.data.K;
  r.accepted = r.data.product <= 1;
  if (!r.accepted) r.cause = "kantorovich-failed";
  return r;
}

struct CertifiedRoot {
  BigComplex point;              // domain coordinates
  BigComplex local;              // function coordinates (x, or t)
  BigComplex rotation;           // elliptic: w; hyperbolic: 1
  long double inclusion_radius = 0;
  KantorovichData kdata;
  std::size_t disk_index = 0;
  long rotation_index = 0;
  std::size_t root_index = 0;
};

struct Rejection {
  std::string cause;
  std::complex<long double> point;
  std::size_t disk_index = 0;
  long rotation_index = 0;
  bool boundary = false;  // inside the boundary band: not fatal
};

struct LiftResult {
  std::vector<CertifiedRoot> roots;     // inside the domain
  std::vector<CertifiedRoot> boundary;  // outside by at most the inclusion radius
  std::vector<Rejection> rejections;
  long discarded = 0;                   // mapped outside the domain
};

// The full function in function coordinates with certified evaluation.
class FullFunction {
 public:
  FullFunction(const Polynomial& p, const SolverParams& sp, const EllipticEvaluator* ev, bool real_domain)
      : p_(&p), sp_(&sp), ev_(ev), real_(real_domain) {
    if (p.basis() == Basis::Elliptic && !ev) throw Error(ErrorKind::Parameter, "elliptic certification needs an evaluator");
    const int d = p.degree();
    if (p.basis() == Basis::Hyperbolic) {
      for (int k = 2; k <= d; ++k) second_coeffs_.push_back(static_cast<long double>(k) * (k - 1) * abs_ld(p[k]));
    }
  }

  Basis basis() const { return p_->basis(); }
  bool real_domain() const { return real_; }
  const SolverParams& params() const { return *sp_; }

  // Elliptic coefficients b_k w^k and their derivative coefficients.
  struct Rotated {
    BigComplex omega;
    std::vector<BigComplex> b, db;
    long double coeff_err = 0;  // relative rounding of the rotated coefficients
  };

  Rotated rotate(const BigComplex& omega) const {
    Rotated r;
    const Bits w = sp_->W;
    r.omega = BigComplex(omega, w);
    BigComplex wk = unit_root(0, 1, w + 16);
    BigComplex om(omega, w + 16);
    for (int k = 0; k <= p_->degree(); ++k) {
      BigComplex t(w);
      mul_to(t, (*p_)[k], wk);
      r.b.push_back(std::move(t));
      if (k < p_->degree()) mul_to(wk, wk, om);
    }
    r.db = elliptic_derivative_coeffs(r.b, w);
    // powers of w carry about k ulps at w+16 bits; the final product one more
    r.coeff_err = unit_roundoff(w) * 2 + unit_roundoff(w + 16) * 4 * (p_->degree() + 1);
    return r;
  }

  // f and f' with absolute error bounds (derivative bounds included).
  EvaluationWithDerivative evaluate(const BigComplex& z, const Rotated* rot) const {
    if (basis() == Basis::Hyperbolic) return eval_hyperbolic_with_derivative(*p_, z, sp_->W);
    EvaluationWithDerivative e = eval_elliptic_with_derivative(rot->b, rot->db, *ev_, z, sp_->W);
    // rotated-coefficient rounding: |sum e_k b_k v_k| <= e ||b|| ||v||
    const long double vn = std::sqrt(cosh2_pow(z));
    const int d = p_->degree();
    e.err += rot->coeff_err * sp_->c * vn * 1.01L;
    e.deriv_err += rot->coeff_err * sp_->c * (d + 1) * vn * 2.02L;
    return e;
  }

  // sup |f''| over D(z, r), at least the analytic c s.
  long double second_bound(const BigComplex& z, long double r) const {
    const long double cs = sp_->c * sp_->s;
    const int d = p_->degree();
    if (basis() == Basis::Hyperbolic) {
      const long double R = std::max(1.0L, abs_ld(z) + r) * (1 + 1e-15L);
      long double s = 0, Rk = 1;
      for (long double ck : second_coeffs_) {
        s += ck * Rk;
        Rk *= R;
      }
      return std::max(cs, s * 1.001L);
    }
    // |f''(t)| <= ||A||^2 ||b|| ||v(t)||, ||v(t)||^2 = cosh(2 Im t)^d <= e^(2 d y^2)
    const long double y = std::fabs(z.im.to_ld()) + r;
    const long double local = static_cast<long double>(d + 1) * (d + 1) * sp_->c * std::exp(d * y * y) * 1.001L;
    return std::max(cs, local);
  }

  PointBounds bounds(const EvaluationWithDerivative& e, const BigComplex& z, long double radius) const {
    PointBounds b;
    b.f_up = (abs_ld(e.value) + e.err) * (1 + 1e-18L);
    b.fp_low = (abs_ld(e.deriv) - e.deriv_err) * (1 - 1e-18L);
    b.second = second_bound(z, radius);
    return b;
  }

  // Newton steps while they keep shrinking; stops at the precision floor.
  BigComplex polish(BigComplex z, const Rotated* rot, int steps) const {
    long double last = INFINITY;
    for (int i = 0; i < steps; ++i) {
      EvaluationWithDerivative e = evaluate(z, rot);
      if (e.deriv.is_zero()) break;
      BigComplex q(sp_->W);
      div_to(q, e.value, e.deriv);
      const long double step = abs_ld(q);
      if (!(step < last) || step == 0) break;
      last = step;
      z -= q;
      if (step < std::ldexp(abs_ld(z) + 1, -static_cast<int>(sp_->W) + 2)) break;
    }
    return z;
  }

  // Domain point for function coordinates u.
  BigComplex to_domain(const BigComplex& u, const Rotated* rot) const {
    if (basis() == Basis::Hyperbolic) return u;
    BigComplex t = tan(BigComplex(u, sp_->W + 8));
    t.round_to(sp_->W);
    return t * rot->omega;
  }

  // |d x / d t| on D(t, r), elliptic only.
  long double domain_scale(const BigComplex& u, long double r) const {
    if (basis() == Basis::Hyperbolic) return 1;
    const auto c = std::cos(u.to_ld());
    // |cos t' - cos t| <= |t' - t| cosh(Im t') and cosh stays below 2 in the band
    const long double m = std::abs(c) - 2 * r;
    if (!(m > 0)) return INFINITY;
    return 1 / (m * m) * 1.001L;
  }

 private:
  long double cosh2_pow(const BigComplex& z) const {
    const long double y = z.im.to_ld();
    return std::exp(2 * p_->degree() * y * y) * 1.001L;
  }

  const Polynomial* p_;
  const SolverParams* sp_;
  const EllipticEvaluator* ev_;
  bool real_;
  std::vector<long double> second_coeffs_;
};

// Distance from x to the domain (0 inside).
inline long double distance_outside(const std::complex<long double>& x, bool real_domain) {
  if (real_domain) {
    const long double re = std::clamp(x.real(), 0.0L, 1.0L);
    return std::abs(x - std::complex<long double>(re, 0));
  }
  return std::max(0.0L, std::abs(x) - 1);
}

// Distance from x to the domain boundary.
inline long double distance_to_boundary(const std::complex<long double>& x, bool real_domain) {
  if (real_domain) {
    const long double out = distance_outside(x, true);
    if (out > 0) return out;
    return std::min(x.real(), 1 - x.real());
  }
  return std::fabs(std::abs(x) - 1);
}

namespace detail {

// Certifies one candidate in function coordinates; fills either a root, a
// boundary root, a rejection or a discard.
inline void certify_candidate(const FullFunction& F, BigComplex u, const FullFunction::Rotated* rot,
                              std::size_t disk, long rot_index, std::size_t root_index, LiftResult& out) {
  const SolverParams& sp = F.params();
  const long double r_in = sp.inclusion_radius();
  const bool real = F.real_domain();
  {
    const auto x0 = F.to_domain(u, rot).to_ld();
    if (!std::isfinite(std::abs(x0)) || distance_outside(x0, real) > r_in) {
      ++out.discarded;
      return;
    }
  }
  try {
    u = F.polish(std::move(u), rot, 4);
  } catch (const Error& e) {
    // Newton left the region where the evaluator is defined
    if (e.kind() != ErrorKind::Precondition) throw;
    ++out.discarded;
    return;
  }
  if (F.basis() == Basis::Hyperbolic && abs_ld(u) > 2) {
    ++out.discarded;
    return;
  }
  auto test = [&](const BigComplex& z) {
    EvaluationWithDerivative e = F.evaluate(z, rot);
    PointBounds b = F.bounds(e, z, r_in);
    KantorovichResult k = kantorovich_test(b, sp.c, sp.kappa);
    // the ball actually used is D(z, 2 beta); r_in covers it whenever beta is small
    if (k.accepted && 2 * k.data.beta > r_in) {
      b.second = F.second_bound(z, 2 * k.data.beta);
      k = kantorovich_test(b, sp.c, sp.kappa);
    }
    return k;
  };
  KantorovichResult k = test(u);
  if (k.accepted && real) {
    const long double im = std::fabs(u.im.to_ld());
    if (im <= 2 * k.data.beta) {
      BigComplex proj(u.re, BigFloat(sp.W));
      KantorovichResult kp = test(proj);
      if (kp.accepted) {
        u = std::move(proj);
        k = kp;
      }
    } else {
      // the unique root near u is not real
      ++out.discarded;
      return;
    }
  }
  const BigComplex x = F.to_domain(u, rot);
  const auto xl = x.to_ld();
  const long double outside = distance_outside(xl, real);
  if (outside > r_in) {
    ++out.discarded;
    return;
  }
  if (!k.accepted) {
    Rejection rj{k.cause, xl, disk, rot_index, distance_to_boundary(xl, real) <= r_in};
    out.rejections.push_back(rj);
    return;
  }
  CertifiedRoot cr;
  cr.point = x;
  cr.local = std::move(u);
  cr.rotation = rot ? rot->omega : unit_root(0, 1, sp.W);
  cr.kdata = k.data;
  cr.inclusion_radius = std::max(2 * k.data.beta * F.domain_scale(cr.local, 2 * k.data.beta), r_in);
  cr.disk_index = disk;
  cr.rotation_index = rot_index;
  cr.root_index = root_index;
  if (outside > 0) out.boundary.push_back(std::move(cr));
  else out.roots.push_back(std::move(cr));
}

}  // namespace detail

// Maps the roots of one local model to the full function and certifies them.
inline LiftResult lift_and_certify(const SmallRootSet& model_roots, const LocalModel& model, const FullFunction& F) {
  LiftResult out;
  if (model_roots.roots.empty()) return out;
  const SolverParams& sp = F.params();
  const Bits w = sp.W;
  const bool ell = F.basis() == Basis::Elliptic;
  std::optional<FullFunction::Rotated> rot;
  if (ell && !model.direct) rot = F.rotate(model.rotation);
  for (std::size_t i = 0; i < model_roots.roots.size(); ++i) {
    const BigComplex& eta = model_roots.roots[i];
    if (model.direct) {
      // g is p in the monomial basis; eta is already a domain point
      if (!ell) {
        detail::certify_candidate(F, BigComplex(eta, w), nullptr, model.disk_index, 0, i, out);
        continue;
      }
      // elliptic: rotate so that eta lies on the positive real axis of the t-plane
      const auto el = eta.to_ld();
      const long double r = std::abs(el);
      BigComplex omega = unit_root(0, 1, w);
      if (r > 0) {
        omega = BigComplex(eta, w);
        omega = omega / abs(omega);
      }
      FullFunction::Rotated rr = F.rotate(omega);
      BigComplex t = atan(BigComplex(abs(eta), BigFloat(w)));
      detail::certify_candidate(F, std::move(t), &rr, model.disk_index, 0, i, out);
      continue;
    }
    BigComplex u = BigComplex(eta, w) * BigFloat(model.disk.radius, w);
    u.re += BigFloat(model.disk.center, w);
    if (!ell) u = u * model.rotation;
    detail::certify_candidate(F, std::move(u), rot ? &*rot : nullptr, model.disk_index, model.rotation_index, i, out);
  }
  return out;
}

// Merges candidates closer than the uniqueness radius, keeping the smaller
// beta. Input order is kept for the survivors.
inline std::vector<CertifiedRoot> dedup_roots(std::vector<CertifiedRoot> cands, const SolverParams& sp) {
  const long double r = sp.uniqueness_radius();
  std::vector<CertifiedRoot> out;
  std::vector<std::complex<long double>> pts;
  for (auto& c : cands) {
    const auto p = c.point.to_ld();
    bool merged = false;
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (std::abs(pts[i] - p) <= r) {
        if (c.kdata.beta < out[i].kdata.beta) {
          out[i] = std::move(c);
          pts[i] = p;
        }
        merged = true;
        break;
      }
    }
    if (!merged) {
      pts.push_back(p);
      out.push_back(std::move(c));
    }
  }
  return out;
}

struct ValidationReport {
  bool valid = false;
  bool all_certified = false;
  bool separated = false;
  std::size_t count = 0;
  std::optional<std::size_t> expected;
  long double min_separation = INFINITY;
  std::vector<std::string> causes;
};

inline ValidationReport validate_run(const std::vector<CertifiedRoot>& roots, const std::vector<Rejection>& rejections,
                                     const SolverParams& sp, std::optional<std::size_t> expected = {}) {
  ValidationReport v;
  v.count = roots.size();
  v.expected = expected;
  v.all_certified = true;
  for (const auto& r : roots)
    if (!(r.kdata.product <= 1)) v.all_certified = false;
  for (const auto& rj : rejections) {
    if (rj.boundary) continue;
    v.all_certified = false;
    v.causes.push_back(rj.cause);
  }
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t k = i + 1; k < roots.size(); ++k)
      v.min_separation = std::min(v.min_separation, abs_ld(roots[i].point - roots[k].point));
  v.separated = v.min_separation > sp.uniqueness_radius();
  if (!v.separated) v.causes.push_back("separation");
  if (expected && *expected != roots.size()) v.causes.push_back("count-mismatch");
  std::sort(v.causes.begin(), v.causes.end());
  v.causes.erase(std::unique(v.causes.begin(), v.causes.end()), v.causes.end());
  v.valid = v.all_certified && v.separated && (!expected || *expected == roots.size());
  return v;
}

}  // namespace quasiroots
