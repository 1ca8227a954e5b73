#include "biex/curve_c.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace biex {

static constexpr double kPi = 3.14159265358979323846;

WeierstrassCurveC::WeierstrassCurveC(Complex a1, Complex a2, Complex a3, Complex a4, Complex a6)
    : a_{a1, a2, a3, a4, a6} {
  b2_ = a1 * a1 + 4.0 * a2;
  b4_ = 2.0 * a4 + a1 * a3;
  b6_ = a3 * a3 + 4.0 * a6;
  b8_ = a1 * a1 * a6 + 4.0 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  disc_ = -b2_ * b2_ * b8_ - 8.0 * b4_ * b4_ * b4_ - 27.0 * b6_ * b6_ + 9.0 * b2_ * b4_ * b6_;
  double scale = 1.0;
  for (auto& c : a_) scale = std::max(scale, std::abs(c));
  if (std::abs(disc_) <= 1e-14 * std::pow(scale, 12.0))
    throw UnsupportedInput("singular Weierstrass curve (discriminant vanishes)");

  // roots of g(x) = 4x^3 + b2 x^2 + 2 b4 x + b6 via companion matrix + polish
  Eigen::Matrix3cd comp;
  comp.setZero();
  comp(1, 0) = 1.0;
  comp(2, 1) = 1.0;
  comp(0, 2) = -b6_ / 4.0;
  comp(1, 2) = -b4_ / 2.0;
  comp(2, 2) = -b2_ / 4.0;
  Eigen::ComplexEigenSolver<Eigen::Matrix3cd> es(comp, false);
  for (int i = 0; i < 3; ++i) {
    Complex r = es.eigenvalues()(i);
    for (int it = 0; it < 3; ++it) r -= g(r) / g_prime(r);
    roots_[i] = r;
  }
  std::sort(roots_.begin(), roots_.end(), [](Complex u, Complex v) {
    if (u.real() != v.real()) return u.real() > v.real();
    return u.imag() > v.imag();
  });
}

bool WeierstrassCurveC::real_coefficients() const {
  for (auto& c : a_)
    if (c.imag() != 0.0) return false;
  return true;
}

Complex WeierstrassCurveC::g(Complex x) const {
  return ((4.0 * x + b2_) * x + 2.0 * b4_) * x + b6_;
}

Complex WeierstrassCurveC::g_prime(Complex x) const { return (12.0 * x + 2.0 * b2_) * x + 2.0 * b4_; }

bool WeierstrassCurveC::on_curve(const CurvePoint& p, double rel_tol) const {
  if (p.infinite) return true;
  Complex lhs = p.y * p.y + a_[0] * p.x * p.y + a_[2] * p.y;
  Complex rhs = ((p.x + a_[1]) * p.x + a_[3]) * p.x + a_[4];
  double scale = std::abs(p.y * p.y) + std::abs(a_[0] * p.x * p.y) + std::abs(a_[2] * p.y) +
                 std::abs(p.x * p.x * p.x) + std::abs(a_[1] * p.x * p.x) + std::abs(a_[3] * p.x) +
                 std::abs(a_[4]) + 1.0;
  return std::abs(lhs - rhs) <= rel_tol * scale;
}

CurvePoint WeierstrassCurveC::point_above(Complex x, Complex y_ref_bigY) const {
  Complex Y = std::sqrt(g(x));
  if (std::abs(Y - y_ref_bigY) > std::abs(-Y - y_ref_bigY)) Y = -Y;
  return CurvePoint(x, (Y - a_[0] * x - a_[2]) / 2.0);
}

CurvePoint WeierstrassCurveC::negate(const CurvePoint& p) const {
  if (p.infinite) return p;
  return CurvePoint(p.x, -p.y - a_[0] * p.x - a_[2]);
}

CurvePoint WeierstrassCurveC::point_near_infinity(Complex z) const {
  // w = z^3 + a1 z w + a2 z^2 w + a3 w^2 + a4 z w^2 + a6 w^3, then x = z/w.
  Complex w = z * z * z;
  for (int it = 0; it < 12; ++it)
    w = z * z * z + a_[0] * z * w + a_[1] * z * z * w + a_[2] * w * w + a_[3] * z * w * w +
        a_[4] * w * w * w;
  Complex y = -1.0 / w;
  // polish on F(-z*y, y) = 0 as a cubic in y
  for (int it = 0; it < 24; ++it) {
    Complex x = -z * y;
    Complex F = y * y + a_[0] * x * y + a_[2] * y - ((x + a_[1]) * x + a_[3]) * x - a_[4];
    // dF/dy with x = -z y: dx/dy = -z
    Complex Fy = 2.0 * y + a_[0] * x + a_[2] +
                 (-z) * (a_[0] * y - (3.0 * x + 2.0 * a_[1]) * x - a_[3]);
    Complex step = F / Fy;
    y -= step;
    if (std::abs(step) < 1e-15 * (1.0 + std::abs(y))) break;
  }
  CurvePoint p(-z * y, y);
  if (!on_curve(p, 1e-10)) throw NumericalFailure("point_near_infinity: polish failed", 0.0);
  return p;
}

Complex complex_agm(Complex a, Complex b) {
  for (int it = 0; it < 128; ++it) {
    if (std::abs(a - b) <= 1e-16 * std::abs(a)) break;
    Complex am = (a + b) / 2.0;
    Complex gm = std::sqrt(a * b);
    // optimal branch: |am - gm| <= |am + gm|, ties broken by Im(gm/am) > 0
    double d1 = std::abs(am - gm), d2 = std::abs(am + gm);
    if (d1 > d2 || (std::abs(d1 - d2) <= 1e-15 * d2 && (gm / am).imag() < 0.0)) gm = -gm;
    a = am;
    b = gm;
  }
  return a;
}

PeriodLattice period_lattice(const WeierstrassCurveC& E) {
  const auto& e = E.branch_points();
  Complex e1 = e[0], e2 = e[1], e3 = e[2];
  Complex u1 = kPi / complex_agm(std::sqrt(e1 - e3), std::sqrt(e1 - e2));
  Complex u3 = kPi / complex_agm(std::sqrt(e3 - e1), std::sqrt(e3 - e2));
  PeriodLattice L{u1, u3};
  if (E.real_coefficients() && E.discriminant().real() > 0.0) {
    // rectangular case: make omega1 the real period, omega2 dominantly imaginary
    if (std::abs(u1.imag()) > 1e-12 * std::abs(u1)) std::swap(L.omega1, L.omega2);
    L.omega1 = Complex(std::abs(L.omega1.real()), 0.0);
  }
  if (L.tau_im() < 0.0) L.omega2 = -L.omega2;
  if (L.tau_im() <= 0.0) throw NumericalFailure("period lattice degenerate", 0.0);
  return L;
}

PeriodLattice reduce_lattice(PeriodLattice L) {
  for (int it = 0; it < 64; ++it) {
    Complex tau = L.omega2 / L.omega1;
    double n = std::round(tau.real());
    if (n != 0.0) {
      L.omega2 -= n * L.omega1;
      tau = L.omega2 / L.omega1;
    }
    if (std::abs(tau) < 1.0 - 1e-15) {
      std::swap(L.omega1, L.omega2);
      if (L.tau_im() < 0.0) L.omega2 = -L.omega2;
      continue;
    }
    break;
  }
  return L;
}

std::pair<double, double> lattice_coordinates(const PeriodLattice& L, Complex z) {
  // solve z = m w1 + n w2 over R via 2x2 real system
  double a = L.omega1.real(), b = L.omega2.real();
  double c = L.omega1.imag(), d = L.omega2.imag();
  double det = a * d - b * c;
  double m = (z.real() * d - z.imag() * b) / det;
  double n = (-z.real() * c + z.imag() * a) / det;
  return {m, n};
}

}  // namespace biex
