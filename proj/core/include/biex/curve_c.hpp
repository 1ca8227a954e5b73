#pragma once

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "biex/errors.hpp"
#include "biex/poly.hpp"

namespace biex {

/// A point on a Weierstrass curve over C, affine or at infinity.
struct CurvePoint {
  bool infinite = true;
  Complex x{0.0}, y{0.0};

  CurvePoint() = default;
  CurvePoint(Complex px, Complex py) : infinite(false), x(px), y(py) {}
  static CurvePoint infinity() { return CurvePoint(); }
};

/// Basis of the period lattice of the invariant differential; Im(w2/w1) > 0.
struct PeriodLattice {
  Complex omega1{0.0}, omega2{0.0};
  double tau_im() const { return (omega2 / omega1).imag(); }
};

/// Smooth curve y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over C.
/// Analytic work happens on the completed-square model Y^2 = g(x) with
/// Y = 2y + a1 x + a3 and g = 4x^3 + b2 x^2 + 2 b4 x + b6.
class WeierstrassCurveC {
 public:
  WeierstrassCurveC(Complex a1, Complex a2, Complex a3, Complex a4, Complex a6);
  explicit WeierstrassCurveC(const std::array<Complex, 5>& a)
      : WeierstrassCurveC(a[0], a[1], a[2], a[3], a[4]) {}

  const std::array<Complex, 5>& a() const { return a_; }
  Complex b2() const { return b2_; }
  Complex b4() const { return b4_; }
  Complex b6() const { return b6_; }
  Complex b8() const { return b8_; }
  Complex discriminant() const { return disc_; }
  bool real_coefficients() const;

  Complex g(Complex x) const;             // 4x^3 + b2 x^2 + 2 b4 x + b6
  Complex g_prime(Complex x) const;
  /// Branch points of x: roots of g, polished, sorted by (Re, Im) descending.
  const std::array<Complex, 3>& branch_points() const { return roots_; }

  Complex big_y(const CurvePoint& p) const { return 2.0 * p.y + a_[0] * p.x + a_[2]; }
  /// Largest coefficient scale of the defining equation at the given x, y.
  bool on_curve(const CurvePoint& p, double rel_tol = 1e-12) const;
  /// The affine point above x whose Y-value is closest to y_ref.
  CurvePoint point_above(Complex x, Complex y_ref_bigY) const;
  CurvePoint negate(const CurvePoint& p) const;

  /// Point with local parameter z = -x/y near infinity (series + polish).
  CurvePoint point_near_infinity(Complex z) const;

 private:
  std::array<Complex, 5> a_;
  Complex b2_, b4_, b6_, b8_, disc_;
  std::array<Complex, 3> roots_;
};

/// Optimal-branch complex arithmetic-geometric mean.
Complex complex_agm(Complex a, Complex b);

/// Period lattice of dx/(2y + a1 x + a3) via the AGM. For real coefficients
/// with positive discriminant omega1 is real. Rejects singular curves.
PeriodLattice period_lattice(const WeierstrassCurveC& E);

/// Reduces a lattice basis so that tau = w2/w1 has |Re| <= 1/2, |tau| >= 1.
PeriodLattice reduce_lattice(PeriodLattice L);

/// Coordinates of z in the lattice basis: z = m w1 + n w2 over R.
std::pair<double, double> lattice_coordinates(const PeriodLattice& L, Complex z);

}  // namespace biex
