#pragma once

#include <array>
#include <optional>

#include "biex/curve_c.hpp"
#include "biex/poly.hpp"

namespace biex {

/// Rational point on an integral Weierstrass model, affine or at infinity.
struct PointQ {
  bool infinite = true;
  BigRational x, y;

  PointQ() = default;
  PointQ(BigRational px, BigRational py) : infinite(false), x(std::move(px)), y(std::move(py)) {}
  static PointQ infinity() { return PointQ(); }

  friend bool operator==(const PointQ& a, const PointQ& b) {
    if (a.infinite || b.infinite) return a.infinite == b.infinite;
    return a.x == b.x && a.y == b.y;
  }
  friend bool operator!=(const PointQ& a, const PointQ& b) { return !(a == b); }
};

/// Elliptic curve y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with integer
/// coefficients, assumed globally minimal (checked prime by prime on use).
class EllipticCurveQ {
 public:
  EllipticCurveQ(BigInt a1, BigInt a2, BigInt a3, BigInt a4, BigInt a6);
  explicit EllipticCurveQ(const std::array<BigInt, 5>& a)
      : EllipticCurveQ(a[0], a[1], a[2], a[3], a[4]) {}

  const std::array<BigInt, 5>& a() const { return a_; }
  const BigInt& b2() const { return b2_; }
  const BigInt& b4() const { return b4_; }
  const BigInt& b6() const { return b6_; }
  const BigInt& b8() const { return b8_; }
  const BigInt& c4() const { return c4_; }
  const BigInt& c6() const { return c6_; }
  const BigInt& discriminant() const { return disc_; }

  bool on_curve(const PointQ& p) const;
  /// F = y^2 + a1 xy + a3 y - x^3 - a2 x^2 - a4 x - a6 and its partials.
  BigRational F(const PointQ& p) const;
  BigRational Fx(const PointQ& p) const;
  BigRational Fy(const PointQ& p) const;

  PointQ negate(const PointQ& p) const;
  PointQ add(const PointQ& p, const PointQ& q) const;
  PointQ sub(const PointQ& p, const PointQ& q) const { return add(p, negate(q)); }
  PointQ mul(long n, const PointQ& p) const;
  /// Exact torsion test (orders over Q are bounded by 12).
  bool is_torsion(const PointQ& p, long* order = nullptr) const;

  WeierstrassCurveC to_complex() const;
  CurvePoint to_complex(const PointQ& p) const;

  /// Exact Laurent expansions of x and z-chart data at infinity in z = -x/y.
  std::pair<LaurentQ, LaurentQ> infinity_series(long prec) const;  // (x(z), y(z))

  /// Local branch parameterization at P: series (x(t), y(t)) where t is
  /// x - x_P off 2-torsion, y - y_P at 2-torsion, and z at infinity.
  struct BranchSeries {
    LaurentQ x, y;
  };
  BranchSeries branch_series(const PointQ& P, long prec) const;

  /// Expansion of a rational function along the branch through P.
  LaurentQ local_series(const RatFn2& f, const PointQ& P, long prec) const;

  /// Scale of the differential of u at P against the invariant differential:
  /// du|_P = scale * omega0|_P. Requires u(P) = 0; throws when the scale
  /// vanishes (degenerate coordinate).
  BigRational coordinate_scale(const RatFn2& u, const PointQ& P) const;

  /// Order of vanishing of f at P (negative for a pole) plus the leading
  /// coefficient of f with respect to the coordinate u at P.
  std::pair<long, BigRational> leading_coefficient(const RatFn2& f, const RatFn2& u,
                                                   const PointQ& P) const;

 private:
  std::array<BigInt, 5> a_;
  BigInt b2_, b4_, b6_, b8_, c4_, c6_, disc_;
};

}  // namespace biex
