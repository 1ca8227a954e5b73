#include "biex/analytic.hpp"

#include <algorithm>
#include <cmath>

namespace biex {

static constexpr double kPi = 3.14159265358979323846;

long DivisorC::degree() const {
  long d = 0;
  for (auto& [pt, m] : terms) d += m;
  return d;
}

ExtrapolationResult richardson_limit(const std::vector<double>& samples, double tol) {
  size_t n = samples.size();
  if (n < 3) throw NumericalFailure("extrapolation needs at least 3 samples", 0.0);
  std::vector<std::vector<double>> R(n);
  for (size_t i = 0; i < n; ++i) {
    R[i].resize(i + 1);
    R[i][0] = samples[i];
    for (size_t m = 1; m <= i; ++m) {
      double w = std::pow(2.0, double(m));
      R[i][m] = R[i][m - 1] + (R[i][m - 1] - R[i - 1][m - 1]) / (w - 1.0);
    }
  }
  double best = R[n - 1][n - 1], best_err = 1e300;
  for (size_t m = 1; m < n; ++m) {
    double diff = std::fabs(R[n - 1][m] - R[n - 2][m - 1]);
    if (diff < best_err) {
      best_err = diff;
      best = R[n - 1][m];
    }
  }
  if (!(best_err < tol * 64.0))
    throw NumericalFailure("regularized limit did not converge", best_err);
  return {best, best_err};
}

Complex eval_laurent(const LaurentQ& s, Complex z) {
  if (s.is_zero()) return 0.0;
  Complex acc(0.0);
  long lo = s.order(), hi = s.precision();
  for (long k = hi - 1; k >= lo; --k) acc = acc * z + Complex(s.coeff(k).to_double());
  return acc * std::pow(z, Complex(double(lo)));
}

CurveIntegrand invariant_integrand() {
  return [](Complex, Complex Y) { return 1.0 / Y; };
}

Complex sheet_continue(const WeierstrassCurveC& E, const std::vector<PathSegment>& segs,
                       Complex y_start) {
  Complex y = y_start;
  for (const auto& seg : segs) {
    if (seg.kind == PathSegment::Kind::ZLine) {
      CurvePoint p = E.point_near_infinity(seg.at(1.0));
      y = E.big_y(p);
      continue;
    }
    SheetTracker tracker(E, seg, y);
    y = tracker.y_end();
  }
  return y;
}

namespace {

bool same_sheet(Complex y1, Complex y2) { return std::abs(y1 - y2) <= std::abs(y1 + y2); }

double min_branch_gap(const WeierstrassCurveC& E) {
  const auto& e = E.branch_points();
  double m = 1e300;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) m = std::min(m, std::abs(e[i] - e[j]));
  return m;
}

double clearance(const WeierstrassCurveC& E, const AnalyticParams& prm) {
  return prm.delta_path_factor * min_branch_gap(E);
}

struct AffinePole {
  Complex x;
  Complex bigY;
  long mult;
};

// Stadium around [a, b] that excludes `hard` points (branch points) from a
// neighbourhood of the boundary and keeps `soft` points (poles) off the
// boundary band; soft points may end up inside.
std::vector<PathSegment> safe_stadium(Complex a, Complex b, const std::vector<Complex>& hard,
                                      const std::vector<Complex>& soft) {
  double rho = 0.35 * std::abs(b - a);
  for (int tries = 0; tries < 60; ++tries) {
    bool ok = true;
    for (auto& h : hard) {
      double d = dist_point_segment(h, a, b);
      if (d < 1.6 * rho) ok = false;  // must stay well outside
    }
    for (auto& sft : soft) {
      double d = dist_point_segment(sft, a, b);
      if (d > 0.6 * rho && d < 1.6 * rho) ok = false;  // keep off the band
    }
    if (ok) return stadium(a, b, rho);
    rho *= 0.7;
  }
  throw NumericalFailure("could not place a cycle contour away from singular points", 0.0);
}

std::vector<PathSegment> flip_loop(const WeierstrassCurveC& E, Complex from,
                                   const std::vector<Complex>& avoid) {
  // loop around one branch point to switch sheets, then come back
  const auto& e = E.branch_points();
  int best = 0;
  double best_gap = -1.0;
  for (int i = 0; i < 3; ++i) {
    double gap = 1e300;
    for (int j = 0; j < 3; ++j)
      if (j != i) gap = std::min(gap, std::abs(e[i] - e[j]));
    for (auto& a : avoid) gap = std::min(gap, std::abs(e[i] - a));
    if (gap > best_gap) {
      best_gap = gap;
      best = i;
    }
  }
  double r = 0.3 * best_gap;
  Complex target = e[best] + r * (from - e[best]) / std::abs(from - e[best]);
  double phi = std::arg(target - e[best]);
  std::vector<PathSegment> segs;
  segs.push_back(PathSegment::line(from, target));
  segs.push_back(PathSegment::arc(e[best], r, phi, phi + 2.0 * kPi));
  segs.push_back(PathSegment::line(target, from));
  return segs;
}

}  // namespace

ThirdKindDifferential::ThirdKindDifferential(const WeierstrassCurveC& E, const DivisorC& residues,
                                             const AnalyticParams& prm)
    : E_(E), residues_(residues) {
  if (residues.degree() != 0)
    throw UnsupportedInput("third-kind differential: residue divisor must have degree 0");
  for (auto& [pt, m] : residues.terms) {
    if (m == 0) continue;
    if (!pt.infinite) {
      if (!E_.on_curve(pt)) throw UnsupportedInput("residue divisor point is not on the curve");
      affine_support_.push_back({pt.x, E_.big_y(pt), Complex(double(m))});
    }
  }

  // two independent cycles around pairs of branch points
  const auto& e = E_.branch_points();
  std::vector<Complex> pole_xs;
  for (auto& s : affine_support_) pole_xs.push_back(s[0]);
  cycles_[0] = safe_stadium(e[0], e[1], {e[2]}, pole_xs);
  cycles_[1] = safe_stadium(e[1], e[2], {e[0]}, pole_xs);

  CurveIntegrand seed = [this](Complex x, Complex Y) {
    Complex acc(0.0);
    for (auto& s : affine_support_) acc += s[2] * (Y + s[1]) / (2.0 * (x - s[0]));
    return acc / Y;
  };

  std::array<Complex, 2> A;
  for (int k = 0; k < 2; ++k) {
    IntegrationPath path;
    path.segments = cycles_[k];
    path.initial_big_y = std::sqrt(E_.g(path.segments[0].at(0.0)));
    auto vals = integrate_many(E_, {seed, invariant_integrand()}, path, prm.quad());
    A[k] = vals[0];
    omega_periods_[k] = vals[1];
  }

  // choose c with Re(A_k + c * omega_k) = 0 for both cycles
  double a11 = omega_periods_[0].real(), a12 = -omega_periods_[0].imag();
  double a21 = omega_periods_[1].real(), a22 = -omega_periods_[1].imag();
  double det = a11 * a22 - a12 * a21;
  double scale = std::abs(omega_periods_[0]) * std::abs(omega_periods_[1]);
  if (std::abs(det) < 1e-10 * scale)
    throw NumericalFailure("normalization system ill-conditioned (degenerate periods)",
                           std::abs(det));
  double r1 = -A[0].real(), r2 = -A[1].real();
  double c_re = (r1 * a22 - r2 * a12) / det;
  double c_im = (a11 * r2 - a21 * r1) / det;
  c_ = Complex(c_re, c_im);
  for (int k = 0; k < 2; ++k) {
    eta_periods_[k] = A[k] + c_ * omega_periods_[k];
    if (std::abs(eta_periods_[k].real()) > prm.im_tol * std::abs(eta_periods_[k]))
      throw NumericalFailure("third-kind normalization failed purity check",
                             std::abs(eta_periods_[k].real()));
  }
}

CurveIntegrand ThirdKindDifferential::integrand() const {
  auto support = affine_support_;
  Complex c = c_;
  return [support, c](Complex x, Complex Y) {
    Complex acc(c);
    for (auto& s : support) acc += s[2] * (Y + s[1]) / (2.0 * (x - s[0]));
    return acc / Y;
  };
}

Complex ThirdKindDifferential::residue_at(const CurvePoint& p, const AnalyticParams& prm) const {
  if (p.infinite) {
    // residue at infinity from the residue theorem on the affine ones
    Complex sum(0.0);
    for (auto& s : affine_support_) sum += s[2];
    return -sum;
  }
  double gap = 1e300;
  for (auto& e : E_.branch_points())
    if (std::abs(e - p.x) > 1e-12) gap = std::min(gap, std::abs(e - p.x));
  for (auto& s : affine_support_)
    if (std::abs(s[0] - p.x) > 1e-12) gap = std::min(gap, std::abs(s[0] - p.x));
  double r = 0.25 * std::min(gap, 1.0 + std::abs(p.x));
  Complex y_at = E_.big_y(p);
  bool two_torsion = std::abs(y_at) < 1e-9 * (1.0 + std::abs(p.x));

  IntegrationPath path;
  path.segments = circle(p.x, r);
  if (two_torsion) {
    path.segments.push_back(path.segments[0]);  // second lap closes the lift
    path.initial_big_y = std::sqrt(E_.g(p.x + r));
  } else {
    SheetTracker radial(E_, PathSegment::line(p.x, p.x + r), y_at);
    path.initial_big_y = radial.y_end();
  }
  Complex val = integrate_path(E_, integrand(), path, prm.quad());
  return val / Complex(0.0, 2.0 * kPi);
}

namespace {

// Builds a sheet-checked path between affine points, inserting a sheet flip
// when the straight route lands on the wrong branch.
std::vector<PathSegment> routed_path(const WeierstrassCurveC& E, Complex x_from, Complex x_to,
                                     Complex y_from, Complex y_to,
                                     const std::vector<Complex>& obstacles, double delta,
                                     int variant) {
  std::vector<Complex> obs = obstacles;
  for (auto& e : E.branch_points()) obs.push_back(e);
  std::vector<PathSegment> segs;
  if (variant > 0) {
    // force a detour through a displaced waypoint for path-independence tests
    Complex mid = 0.5 * (x_from + x_to) + Complex(0.0, 1.0) * (x_to - x_from) * 0.6;
    auto first = route_avoiding(x_from, mid, obs, delta);
    auto second = route_avoiding(mid, x_to, obs, delta);
    segs = first;
    segs.insert(segs.end(), second.begin(), second.end());
  } else {
    segs = route_avoiding(x_from, x_to, obs, delta);
  }
  Complex y_end = sheet_continue(E, segs, y_from);
  if (!same_sheet(y_end, y_to)) {
    auto loop = flip_loop(E, x_to, obstacles);
    segs.insert(segs.end(), loop.begin(), loop.end());
    y_end = sheet_continue(E, segs, y_from);
    if (!same_sheet(y_end, y_to))
      throw NumericalFailure("could not land on the requested sheet", std::abs(y_end - y_to));
  }
  return segs;
}

}  // namespace

double archimedean_disjoint_pairing(const WeierstrassCurveC& E, const DivisorC& first,
                                    const DivisorC& second, const AnalyticParams& prm) {
  if (first.degree() != 0 || second.degree() != 0)
    throw UnsupportedInput("local pairing needs degree-zero divisors");
  for (auto& [p1, m1] : first.terms) {
    if (m1 == 0) continue;
    for (auto& [p2, m2] : second.terms) {
      if (m2 == 0) continue;
      bool clash = (p1.infinite && p2.infinite) ||
                   (!p1.infinite && !p2.infinite && std::abs(p1.x - p2.x) < 1e-9 &&
                    std::abs(p1.y - p2.y) < 1e-9);
      if (clash)
        throw UnsupportedInput(
            "divisors share support; use the regularized pairing with cotangent data");
    }
  }
  ThirdKindDifferential eta(E, second, prm);

  std::vector<CurvePoint> pos, neg;
  for (auto& [pt, m] : first.terms) {
    for (long i = 0; i < m; ++i) pos.push_back(pt);
    for (long i = 0; i < -m; ++i) neg.push_back(pt);
  }
  if (pos.size() != neg.size()) throw UnsupportedInput("divisor of nonzero degree");

  std::vector<Complex> pole_xs;
  for (auto& [pt, m] : second.terms)
    if (!pt.infinite && m != 0) pole_xs.push_back(pt.x);
  double delta = clearance(E, prm);

  double total = 0.0;
  double zdir = 1.0;
  for (size_t i = 0; i < pos.size(); ++i) {
    CurvePoint from = neg[i], to = pos[i];
    IntegrationPath path;
    Complex x_from, y_from, x_to, y_to;
    std::vector<PathSegment> pre, post;
    if (from.infinite) {
      double z0 = 0.02;
      CurvePoint anchor = E.point_near_infinity(Complex(z0 * zdir));
      pre.push_back(PathSegment::zline(Complex(0.0), Complex(z0 * zdir)));
      x_from = anchor.x;
      y_from = E.big_y(anchor);
    } else {
      x_from = from.x;
      y_from = E.big_y(from);
    }
    if (to.infinite) {
      double z0 = 0.02;
      CurvePoint anchor = E.point_near_infinity(Complex(z0 * zdir));
      post.push_back(PathSegment::zline(Complex(z0 * zdir), Complex(0.0)));
      x_to = anchor.x;
      y_to = E.big_y(anchor);
    }
    if (!to.infinite) {
      x_to = to.x;
      y_to = E.big_y(to);
    }
    auto mid = routed_path(E, x_from, x_to, y_from, y_to, pole_xs, delta, prm.path_variant);
    path.segments = pre;
    path.segments.insert(path.segments.end(), mid.begin(), mid.end());
    path.segments.insert(path.segments.end(), post.begin(), post.end());
    path.initial_big_y = from.infinite ? y_from : E.big_y(from);
    total += integrate_path(E, eta.integrand(), path, prm.quad()).real();
  }
  return total;
}

namespace {

// Deterministic approach direction for the offset ray at an affine point.
Complex pick_direction(const WeierstrassCurveC& E, Complex x_at,
                       const std::vector<Complex>& avoid, double eps0, double delta, int variant) {
  static const double angles[] = {0.0, kPi / 2, kPi / 4, 3 * kPi / 4, kPi / 6, kPi / 3,
                                  2 * kPi / 3, 5 * kPi / 6, kPi, 3 * kPi / 2};
  int skip = variant;
  for (double th : angles) {
    Complex d(std::cos(th), std::sin(th));
    Complex a = x_at + 1e-7 * d, b = x_at + eps0 * d;
    bool ok = true;
    for (auto& ob : avoid) {
      if (std::abs(ob - x_at) < 1e-12) continue;
      if (dist_point_segment(ob, a, b) < delta) ok = false;
    }
    if (ok && skip-- == 0) return d;
  }
  throw NumericalFailure("no admissible approach direction", 0.0);
}

struct ApproachChain {
  std::vector<CurvePoint> pts;   // indexed by j - j0
  std::vector<Complex> uvals;    // coordinate values at the points
  Complex dir;
  bool at_infinity;
};

ApproachChain build_chain(const WeierstrassCurveC& E, const CurvePoint& base,
                          const LocalCoordinateC& coord, const std::vector<Complex>& avoid,
                          const AnalyticParams& prm, int variant) {
  ApproachChain ch;
  ch.at_infinity = base.infinite;
  double eps0 = std::pow(2.0, -double(prm.richardson_j0));
  if (base.infinite) {
    ch.dir = Complex(1.0);
    if (variant > 0) ch.dir = Complex(std::cos(0.4), std::sin(0.4));
    for (int j = prm.richardson_j0; j <= prm.richardson_j1; ++j) {
      Complex z = std::pow(2.0, -double(j)) * ch.dir;
      ch.pts.push_back(E.point_near_infinity(z));
      ch.uvals.push_back(coord.eval_z(z));
    }
    return ch;
  }
  double delta = clearance(E, prm);
  ch.dir = pick_direction(E, base.x, avoid, eps0, std::min(delta, eps0 / 8.0), variant);
  Complex y_ref = E.big_y(base);
  bool two_torsion = std::abs(y_ref) < 1e-9 * (1.0 + std::abs(base.x));
  for (int j = prm.richardson_j0; j <= prm.richardson_j1; ++j) {
    Complex x = base.x + std::pow(2.0, -double(j)) * ch.dir;
    Complex y_pred;
    if (j == prm.richardson_j0) {
      if (two_torsion)
        y_pred = std::sqrt(E.g(x));
      else {
        SheetTracker radial(E, PathSegment::line(base.x, x), y_ref);
        y_pred = radial.y_end();
      }
    } else {
      // continue inward along the ray from the previous approach point
      SheetTracker radial(E, PathSegment::line(ch.pts.back().x, x), E.big_y(ch.pts.back()));
      y_pred = radial.y_end();
    }
    CurvePoint pt = E.point_above(x, y_pred);
    ch.pts.push_back(pt);
    ch.uvals.push_back(coord.eval_affine(pt));
  }
  return ch;
}

}  // namespace

RegularizedValue regularized_integral(const WeierstrassCurveC& E, const CurvePoint& p,
                                      const CurvePoint& q, const LocalCoordinateC& u,
                                      const LocalCoordinateC& v, const AnalyticParams& prm) {
  if (p.infinite && q.infinite) throw UnsupportedInput("p and q must be distinct points");
  if (!p.infinite && !q.infinite && std::abs(p.x - q.x) < 1e-12 && std::abs(p.y - q.y) < 1e-12)
    throw UnsupportedInput("p and q must be distinct points");
  if (u.base_at_infinity != p.infinite || v.base_at_infinity != q.infinite)
    throw UnsupportedInput("coordinate data does not match the point at infinity");

  DivisorC div;
  div.terms = {{p, 1}, {q, -1}};
  ThirdKindDifferential eta(E, div, prm);

  std::vector<Complex> avoid;
  for (auto& e : E.branch_points()) avoid.push_back(e);
  if (!p.infinite) avoid.push_back(p.x);
  if (!q.infinite) avoid.push_back(q.x);

  ApproachChain cp = build_chain(E, p, u, avoid, prm, prm.path_variant);
  ApproachChain cq = build_chain(E, q, v, avoid, prm, prm.path_variant);

  int n = prm.richardson_j1 - prm.richardson_j0 + 1;
  std::vector<Complex> I(n);

  std::vector<Complex> pole_xs;
  if (!p.infinite) pole_xs.push_back(p.x);
  if (!q.infinite) pole_xs.push_back(q.x);
  double delta = clearance(E, prm);

  const CurvePoint &p0 = cp.pts[0], &q0 = cq.pts[0];
  auto trunk = routed_path(E, q0.x, p0.x, E.big_y(q0), E.big_y(p0), pole_xs, delta,
                           prm.path_variant);
  IntegrationPath tp;
  tp.segments = trunk;
  tp.initial_big_y = E.big_y(q0);
  I[0] = integrate_path(E, eta.integrand(), tp, prm.quad());

  auto f = eta.integrand();
  for (int i = 1; i < n; ++i) {
    // piece from q'(eps_i) out to q'(eps_{i-1})
    IntegrationPath qp;
    if (cq.at_infinity) {
      double e1 = std::pow(2.0, -double(prm.richardson_j0 + i));
      double e0 = std::pow(2.0, -double(prm.richardson_j0 + i - 1));
      qp.segments = {PathSegment::zline(e1 * cq.dir, e0 * cq.dir)};
    } else {
      qp.segments = {PathSegment::line(cq.pts[i].x, cq.pts[i - 1].x)};
    }
    qp.initial_big_y = E.big_y(cq.pts[i]);
    Complex dq = integrate_path(E, f, qp, prm.quad());

    // piece from p'(eps_{i-1}) in to p'(eps_i)
    IntegrationPath pp;
    if (cp.at_infinity) {
      double e1 = std::pow(2.0, -double(prm.richardson_j0 + i));
      double e0 = std::pow(2.0, -double(prm.richardson_j0 + i - 1));
      pp.segments = {PathSegment::zline(e0 * cp.dir, e1 * cp.dir)};
    } else {
      pp.segments = {PathSegment::line(cp.pts[i - 1].x, cp.pts[i].x)};
    }
    pp.initial_big_y = E.big_y(cp.pts[i - 1]);
    Complex dp = integrate_path(E, f, pp, prm.quad());

    I[i] = I[i - 1] + dq + dp;
  }

  std::vector<double> F(n);
  for (int i = 0; i < n; ++i) {
    double mod = std::abs(cp.uvals[i] * cq.uvals[i]);
    if (!(mod > 0.0)) throw NumericalFailure("coordinate function vanished off its base point", 0);
    F[i] = I[i].real() - std::log(mod);
  }
  auto ex = richardson_limit(F, prm.extrap_tol);
  return {ex.value, ex.error};
}

double genus0_regularized_integral(Complex p, Complex q, Complex s_p, Complex s_q) {
  if (std::abs(p - q) == 0.0) throw UnsupportedInput("p and q must be distinct");
  if (std::abs(s_p) == 0.0 || std::abs(s_q) == 0.0)
    throw UnsupportedInput("coordinate scales must be nonzero");
  return -2.0 * std::log(std::abs(p - q)) - std::log(std::abs(s_p)) - std::log(std::abs(s_q));
}

RegularizedValue regularized_integral_p1(Complex p, Complex q, const RatFn2& u, const RatFn2& v,
                                         const AnalyticParams& prm) {
  auto eta = [p, q](Complex z) { return 1.0 / (z - p) - 1.0 / (z - q); };
  int n = prm.richardson_j1 - prm.richardson_j0 + 1;

  Complex dp(1.0), dq(1.0);
  // keep the approach rays off the other pole
  if (std::abs((q - p).imag()) < 0.3 * std::abs(q - p)) dp = Complex(0.0, 1.0);
  if (std::abs((p - q).imag()) < 0.3 * std::abs(p - q)) dq = Complex(0.0, 1.0);
  if (prm.path_variant > 0) {
    dp *= Complex(std::cos(0.7), std::sin(0.7));
    dq *= Complex(std::cos(-0.5), std::sin(-0.5));
  }

  std::vector<Complex> I(n);
  auto at = [&](int i, bool is_p) {
    double eps = std::pow(2.0, -double(prm.richardson_j0 + i));
    return is_p ? p + eps * dp : q + eps * dq;
  };
  std::vector<PathSegment> trunk = route_avoiding(at(0, false), at(0, true), {p, q},
                                                  0.05 * std::abs(p - q));
  if (prm.path_variant > 0) {
    Complex mid = 0.5 * (p + q) + Complex(0.0, 1.0) * (p - q);
    auto a = route_avoiding(at(0, false), mid, {p, q}, 0.05 * std::abs(p - q));
    auto b = route_avoiding(mid, at(0, true), {p, q}, 0.05 * std::abs(p - q));
    trunk = a;
    trunk.insert(trunk.end(), b.begin(), b.end());
  }
  I[0] = integrate_plane(eta, trunk, prm.quad());
  for (int i = 1; i < n; ++i) {
    Complex dqv = integrate_plane(eta, {PathSegment::line(at(i, false), at(i - 1, false))},
                                  prm.quad());
    Complex dpv = integrate_plane(eta, {PathSegment::line(at(i - 1, true), at(i, true))},
                                  prm.quad());
    I[i] = I[i - 1] + dqv + dpv;
  }
  std::vector<double> F(n);
  for (int i = 0; i < n; ++i) {
    Complex uval = u.eval(at(i, true), Complex(0.0));
    Complex vval = v.eval(at(i, false), Complex(0.0));
    F[i] = I[i].real() - std::log(std::abs(uval * vval));
  }
  auto ex = richardson_limit(F, prm.extrap_tol);
  return {ex.value, ex.error};
}

}  // namespace biex
