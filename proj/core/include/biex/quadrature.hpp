#pragma once

#include <functional>
#include <vector>

#include "biex/curve_c.hpp"

namespace biex {

/// One leg of an integration path in the x-plane. ZLine legs live on the
/// z = -x/y chart near infinity and carry their own sheet information.
struct PathSegment {
  enum class Kind { Line, Arc, ZLine } kind = Kind::Line;
  Complex z0{0.0}, z1{0.0};   // Line / ZLine endpoints (x resp. z values)
  Complex center{0.0};        // Arc
  double radius = 0.0, phi0 = 0.0, phi1 = 0.0;

  static PathSegment line(Complex a, Complex b);
  static PathSegment arc(Complex c, double r, double a0, double a1);
  static PathSegment zline(Complex a, Complex b);

  Complex at(double s) const;     // s in [0, 1]
  Complex deriv(double s) const;  // d/ds of at()
};

/// A path on the curve: x-plane legs plus the branch of Y at the start.
/// Segments must be continuous; the sheet is continued across legs.
struct IntegrationPath {
  std::vector<PathSegment> segments;
  Complex initial_big_y{0.0};  // Y = 2y + a1 x + a3 at the start point
};

struct QuadratureParams {
  double quad_eps = 1e-12;     // absolute error target per integral
  long node_budget = 4000000;  // max integrand evaluations per call
};

/// Branch-continued Y = sqrt(g(x)) along one segment, seeded at s = 0.
class SheetTracker {
 public:
  SheetTracker(const WeierstrassCurveC& E, const PathSegment& seg, Complex y_start);
  Complex y_at(double s) const;
  Complex y_end() const { return y_at(1.0); }

 private:
  void extend(double s0, Complex y0, double s1, int depth);
  const WeierstrassCurveC& E_;
  const PathSegment& seg_;
  std::vector<std::pair<double, Complex>> backbone_;
};

/// Integrand on the curve: value of F where the differential is F(x, Y) dx.
using CurveIntegrand = std::function<Complex(Complex x, Complex bigY)>;

/// Integrates each integrand along the path with analytic sheet continuation.
/// Throws NumericalFailure when the node budget is exhausted.
std::vector<Complex> integrate_many(const WeierstrassCurveC& E,
                                    const std::vector<CurveIntegrand>& fs,
                                    const IntegrationPath& path, const QuadratureParams& prm,
                                    Complex* y_end = nullptr);

Complex integrate_path(const WeierstrassCurveC& E, const CurveIntegrand& f,
                       const IntegrationPath& path, const QuadratureParams& prm);

/// Integral of a plain complex function along x-plane legs (genus 0 use).
Complex integrate_plane(const std::function<Complex(Complex)>& f,
                        const std::vector<PathSegment>& segments, const QuadratureParams& prm);

/// Counterclockwise stadium contour around the segment [a, b] with clearance
/// rho.
std::vector<PathSegment> stadium(Complex a, Complex b, double rho);

/// Full counterclockwise circle, starting and ending at c + r.
std::vector<PathSegment> circle(Complex c, double r);

/// Polyline from `from` to `to` whose interior keeps distance >= delta from
/// every obstacle (endpoints themselves may sit close to obstacles).
std::vector<PathSegment> route_avoiding(Complex from, Complex to,
                                        const std::vector<Complex>& obstacles, double delta);

double dist_point_segment(Complex p, Complex a, Complex b);

}  // namespace biex
