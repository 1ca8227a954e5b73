#include "biex/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace biex {

PathSegment PathSegment::line(Complex a, Complex b) {
  PathSegment s;
  s.kind = Kind::Line;
  s.z0 = a;
  s.z1 = b;
  return s;
}

PathSegment PathSegment::arc(Complex c, double r, double a0, double a1) {
  PathSegment s;
  s.kind = Kind::Arc;
  s.center = c;
  s.radius = r;
  s.phi0 = a0;
  s.phi1 = a1;
  return s;
}

PathSegment PathSegment::zline(Complex a, Complex b) {
  PathSegment s;
  s.kind = Kind::ZLine;
  s.z0 = a;
  s.z1 = b;
  return s;
}

Complex PathSegment::at(double s) const {
  switch (kind) {
    case Kind::Line:
    case Kind::ZLine:
      return z0 + s * (z1 - z0);
    case Kind::Arc: {
      double phi = phi0 + s * (phi1 - phi0);
      return center + radius * Complex(std::cos(phi), std::sin(phi));
    }
  }
  return {};
}

Complex PathSegment::deriv(double s) const {
  switch (kind) {
    case Kind::Line:
    case Kind::ZLine:
      return z1 - z0;
    case Kind::Arc: {
      double phi = phi0 + s * (phi1 - phi0);
      return (phi1 - phi0) * radius * Complex(-std::sin(phi), std::cos(phi));
    }
  }
  return {};
}

// ---------------- sheet tracking ----------------

namespace {

Complex sqrt_matched(Complex g, Complex ref) {
  Complex r = std::sqrt(g);
  if (std::abs(r - ref) > std::abs(-r - ref)) r = -r;
  return r;
}

bool continuation_clear(Complex y0, Complex y1) {
  return std::abs(y1 - y0) <= 0.5 * (std::abs(y0) + std::abs(y1));
}

}  // namespace

SheetTracker::SheetTracker(const WeierstrassCurveC& E, const PathSegment& seg, Complex y_start)
    : E_(E), seg_(seg) {
  Complex y0 = sqrt_matched(E_.g(seg_.at(0.0)), y_start);
  backbone_.push_back({0.0, y0});
  extend(0.0, y0, 1.0, 0);
  std::sort(backbone_.begin(), backbone_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
}

void SheetTracker::extend(double s0, Complex y0, double s1, int depth) {
  if (depth > 40 || backbone_.size() > 200000)
    throw NumericalFailure("sheet tracking failed: path too close to a branch point", 0.0);
  Complex y1 = sqrt_matched(E_.g(seg_.at(s1)), y0);
  if (continuation_clear(y0, y1)) {
    backbone_.push_back({s1, y1});
    if (s1 < 1.0) return;
    return;
  }
  double mid = 0.5 * (s0 + s1);
  extend(s0, y0, mid, depth + 1);
  Complex ymid = y_at(mid);
  extend(mid, ymid, s1, depth + 1);
}

Complex SheetTracker::y_at(double s) const {
  // nearest backbone anchor not after s
  auto it = std::upper_bound(backbone_.begin(), backbone_.end(), s,
                             [](double v, const auto& p) { return v < p.first; });
  const auto& anchor = (it == backbone_.begin()) ? *it : *(it - 1);
  return sqrt_matched(E_.g(seg_.at(s)), anchor.second);
}

// ---------------- Gauss-Kronrod 15 ----------------

namespace {

const double kXgk[8] = {0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
                        0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
                        0.2077849550078985, 0.0};
const double kWgk[8] = {0.02293532201052922, 0.06309209262997855, 0.1047900103222502,
                        0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
                        0.2044329400752989, 0.2094821410847278};
const double kWg[4] = {0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
                       0.4179591836734694};

struct GkResult {
  Complex value;
  double error;
};

// One GK15 pass of f over [s0, s1] in the segment parameter.
template <typename Eval>
GkResult gk15(const Eval& f, double s0, double s1) {
  double h = 0.5 * (s1 - s0), c = 0.5 * (s0 + s1);
  Complex resk(0.0), resg(0.0);
  for (int j = 0; j < 8; ++j) {
    if (j == 7) {
      Complex v = f(c);
      resk += kWgk[7] * v;
      resg += kWg[3] * v;
      break;
    }
    Complex v1 = f(c - h * kXgk[j]);
    Complex v2 = f(c + h * kXgk[j]);
    resk += kWgk[j] * (v1 + v2);
    if (j % 2 == 1) resg += kWg[j / 2] * (v1 + v2);
  }
  resk *= h;
  resg *= h;
  double err = std::abs(resk - resg);
  return {resk, err};
}

struct AdaptiveCtx {
  double tol;
  long budget;
  long used = 0;
  double achieved = 0.0;
};

template <typename Eval>
Complex adaptive(const Eval& f, double s0, double s1, double tol, AdaptiveCtx& ctx, int depth) {
  ctx.used += 15;
  if (ctx.used > ctx.budget)
    throw NumericalFailure("quadrature node budget exhausted", ctx.achieved);
  GkResult r = gk15(f, s0, s1);
  if (r.error <= tol || depth >= 48) {
    ctx.achieved += r.error;
    return r.value;
  }
  double mid = 0.5 * (s0 + s1);
  return adaptive(f, s0, mid, 0.5 * tol, ctx, depth + 1) +
         adaptive(f, mid, s1, 0.5 * tol, ctx, depth + 1);
}

}  // namespace

std::vector<Complex> integrate_many(const WeierstrassCurveC& E,
                                    const std::vector<CurveIntegrand>& fs,
                                    const IntegrationPath& path, const QuadratureParams& prm,
                                    Complex* y_end_out) {
  std::vector<Complex> totals(fs.size(), Complex(0.0));
  Complex y_cursor = path.initial_big_y;
  AdaptiveCtx ctx{prm.quad_eps, prm.node_budget};
  double tol_per_seg = prm.quad_eps / std::max<size_t>(1, path.segments.size());
  for (const auto& seg : path.segments) {
    if (seg.kind == PathSegment::Kind::ZLine) {
      // z-chart leg: the sheet is read off from the chart point itself.
      auto point_of = [&](double s) { return E.point_near_infinity(seg.at(s)); };
      // dx/dz = -y^2 / (y - x y') with y' = -F_x/F_y on the curve
      auto dxdz = [&](const CurvePoint& p) {
        Complex fy = 2.0 * p.y + E.a()[0] * p.x + E.a()[2];
        Complex fx = E.a()[0] * p.y - (3.0 * p.x + 2.0 * E.a()[1]) * p.x - E.a()[3];
        Complex yprime = -fx / fy;
        return -p.y * p.y / (p.y - p.x * yprime);
      };
      for (size_t k = 0; k < fs.size(); ++k) {
        auto eval = [&](double s) {
          CurvePoint p = point_of(s);
          Complex Y = 2.0 * p.y + E.a()[0] * p.x + E.a()[2];
          return fs[k](p.x, Y) * dxdz(p) * seg.deriv(s);
        };
        totals[k] += adaptive(eval, 0.0, 1.0, tol_per_seg, ctx, 0);
      }
      CurvePoint pe = point_of(1.0);
      y_cursor = 2.0 * pe.y + E.a()[0] * pe.x + E.a()[2];
      continue;
    }
    SheetTracker tracker(E, seg, y_cursor);
    for (size_t k = 0; k < fs.size(); ++k) {
      auto eval = [&](double s) {
        Complex x = seg.at(s);
        return fs[k](x, tracker.y_at(s)) * seg.deriv(s);
      };
      totals[k] += adaptive(eval, 0.0, 1.0, tol_per_seg, ctx, 0);
    }
    y_cursor = tracker.y_end();
  }
  if (y_end_out) *y_end_out = y_cursor;
  return totals;
}

Complex integrate_path(const WeierstrassCurveC& E, const CurveIntegrand& f,
                       const IntegrationPath& path, const QuadratureParams& prm) {
  return integrate_many(E, {f}, path, prm)[0];
}

Complex integrate_plane(const std::function<Complex(Complex)>& f,
                        const std::vector<PathSegment>& segments, const QuadratureParams& prm) {
  AdaptiveCtx ctx{prm.quad_eps, prm.node_budget};
  Complex total(0.0);
  double tol_per_seg = prm.quad_eps / std::max<size_t>(1, segments.size());
  for (const auto& seg : segments) {
    auto eval = [&](double s) { return f(seg.at(s)) * seg.deriv(s); };
    total += adaptive(eval, 0.0, 1.0, tol_per_seg, ctx, 0);
  }
  return total;
}

std::vector<PathSegment> stadium(Complex a, Complex b, double rho) {
  Complex u = (b - a) / std::abs(b - a);
  double th = std::arg(u);
  Complex n_minus = rho * Complex(std::cos(th - M_PI_2), std::sin(th - M_PI_2));
  Complex n_plus = rho * Complex(std::cos(th + M_PI_2), std::sin(th + M_PI_2));
  std::vector<PathSegment> segs;
  segs.push_back(PathSegment::line(a + n_minus, b + n_minus));
  segs.push_back(PathSegment::arc(b, rho, th - M_PI_2, th + M_PI_2));
  segs.push_back(PathSegment::line(b + n_plus, a + n_plus));
  segs.push_back(PathSegment::arc(a, rho, th + M_PI_2, th + 3.0 * M_PI_2));
  return segs;
}

std::vector<PathSegment> circle(Complex c, double r) {
  return {PathSegment::arc(c, r, 0.0, 2.0 * M_PI)};
}

double dist_point_segment(Complex p, Complex a, Complex b) {
  Complex ab = b - a;
  double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  double t = std::clamp(((p - a) / ab).real(), 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

namespace {

void route_rec(Complex from, Complex to, const std::vector<Complex>& obstacles, double delta,
               std::vector<Complex>& waypoints, int depth) {
  if (depth > 12) {
    waypoints.push_back(to);
    return;
  }
  // nearest obstacle to the open segment, excluding ones hugging the endpoints
  double best = 1e300;
  Complex worst{};
  bool found = false;
  for (auto& ob : obstacles) {
    if (std::abs(ob - from) < 2.0 * delta || std::abs(ob - to) < 2.0 * delta) continue;
    double d = dist_point_segment(ob, from, to);
    if (d < delta && d < best) {
      best = d;
      worst = ob;
      found = true;
    }
  }
  if (!found) {
    waypoints.push_back(to);
    return;
  }
  Complex ab = to - from;
  Complex n = Complex(0.0, 1.0) * ab / std::abs(ab);
  // push the waypoint to the side of the segment the obstacle is closer to
  Complex rel = worst - from;
  double side = (rel / ab).imag() >= 0.0 ? -1.0 : 1.0;
  Complex w = worst + side * 3.0 * delta * n;
  route_rec(from, w, obstacles, delta, waypoints, depth + 1);
  route_rec(w, to, obstacles, delta, waypoints, depth + 1);
}

}  // namespace

std::vector<PathSegment> route_avoiding(Complex from, Complex to,
                                        const std::vector<Complex>& obstacles, double delta) {
  std::vector<Complex> pts{from};
  route_rec(from, to, obstacles, delta, pts, 0);
  std::vector<PathSegment> segs;
  for (size_t i = 0; i + 1 < pts.size(); ++i) segs.push_back(PathSegment::line(pts[i], pts[i + 1]));
  return segs;
}

}  // namespace biex
