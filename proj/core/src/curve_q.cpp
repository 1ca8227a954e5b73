#include "biex/curve_q.hpp"

#include <algorithm>

#include "biex/errors.hpp"

namespace biex {

EllipticCurveQ::EllipticCurveQ(BigInt a1, BigInt a2, BigInt a3, BigInt a4, BigInt a6)
    : a_{std::move(a1), std::move(a2), std::move(a3), std::move(a4), std::move(a6)} {
  b2_ = a_[0] * a_[0] + 4 * a_[1];
  b4_ = 2 * a_[3] + a_[0] * a_[2];
  b6_ = a_[2] * a_[2] + 4 * a_[4];
  b8_ = a_[0] * a_[0] * a_[4] + 4 * a_[1] * a_[4] - a_[0] * a_[2] * a_[3] +
        a_[1] * a_[2] * a_[2] - a_[3] * a_[3];
  c4_ = b2_ * b2_ - 24 * b4_;
  c6_ = -b2_ * b2_ * b2_ + 36 * b2_ * b4_ - 216 * b6_;
  disc_ = -b2_ * b2_ * b8_ - 8 * b4_ * b4_ * b4_ - 27 * b6_ * b6_ + 9 * b2_ * b4_ * b6_;
  if (sgn(disc_) == 0) throw UnsupportedInput("singular curve: discriminant is zero");
}

bool EllipticCurveQ::on_curve(const PointQ& p) const { return p.infinite || F(p).is_zero(); }

BigRational EllipticCurveQ::F(const PointQ& p) const {
  if (p.infinite) throw std::domain_error("F at infinity");
  const BigRational &x = p.x, &y = p.y;
  return y * y + BigRational(a_[0]) * x * y + BigRational(a_[2]) * y - x * x * x -
         BigRational(a_[1]) * x * x - BigRational(a_[3]) * x - BigRational(a_[4]);
}

BigRational EllipticCurveQ::Fx(const PointQ& p) const {
  const BigRational &x = p.x, &y = p.y;
  return BigRational(a_[0]) * y - BigRational(3) * x * x - BigRational(2 * a_[1]) * x -
         BigRational(a_[3]);
}

BigRational EllipticCurveQ::Fy(const PointQ& p) const {
  return BigRational(2) * p.y + BigRational(a_[0]) * p.x + BigRational(a_[2]);
}

PointQ EllipticCurveQ::negate(const PointQ& p) const {
  if (p.infinite) return p;
  return PointQ(p.x, -p.y - BigRational(a_[0]) * p.x - BigRational(a_[2]));
}

PointQ EllipticCurveQ::add(const PointQ& p, const PointQ& q) const {
  if (p.infinite) return q;
  if (q.infinite) return p;
  BigRational a1(a_[0]), a2(a_[1]), a3(a_[2]), a4(a_[3]), a6(a_[4]);
  BigRational lambda, nu;
  if (p.x == q.x) {
    if (p.y != q.y || Fy(p).is_zero()) return PointQ::infinity();  // q = -p
    BigRational den = Fy(p);
    lambda = (BigRational(3) * p.x * p.x + BigRational(2) * a2 * p.x + a4 - a1 * p.y) / den;
    nu = (-(p.x * p.x * p.x) + a4 * p.x + BigRational(2) * a6 - a3 * p.y) / den;
  } else {
    lambda = (q.y - p.y) / (q.x - p.x);
    nu = (p.y * q.x - q.y * p.x) / (q.x - p.x);
  }
  BigRational x3 = lambda * lambda + a1 * lambda - a2 - p.x - q.x;
  BigRational y3 = -(lambda + a1) * x3 - nu - a3;
  return PointQ(x3, y3);
}

PointQ EllipticCurveQ::mul(long n, const PointQ& p) const {
  if (n < 0) return mul(-n, negate(p));
  PointQ acc = PointQ::infinity(), base = p;
  while (n > 0) {
    if (n & 1) acc = add(acc, base);
    base = add(base, base);
    n >>= 1;
  }
  return acc;
}

bool EllipticCurveQ::is_torsion(const PointQ& p, long* order) const {
  if (p.infinite) {
    if (order) *order = 1;
    return true;
  }
  PointQ acc = p;
  for (long n = 2; n <= 12; ++n) {
    acc = add(acc, p);
    if (acc.infinite) {
      if (order) *order = n;
      return true;
    }
  }
  return false;
}

WeierstrassCurveC EllipticCurveQ::to_complex() const {
  return WeierstrassCurveC(Complex(a_[0].get_d()), Complex(a_[1].get_d()),
                           Complex(a_[2].get_d()), Complex(a_[3].get_d()),
                           Complex(a_[4].get_d()));
}

CurvePoint EllipticCurveQ::to_complex(const PointQ& p) const {
  if (p.infinite) return CurvePoint::infinity();
  return CurvePoint(Complex(p.x.to_double()), Complex(p.y.to_double()));
}

std::pair<LaurentQ, LaurentQ> EllipticCurveQ::infinity_series(long prec) const {
  //  w = z^3 + a1 z w + a2 z^2 w + a3 w^2 + a4 z w^2 + a6 w^3, x = z/w, y = -1/w
  long K = prec + 8;
  LaurentQ z = LaurentQ::z(K + 4);
  LaurentQ z2 = z * z, z3 = z2 * z;
  auto trunc = [&](const LaurentQ& s) {
    // keep exponents below K + 4 to stop swell
    std::vector<BigRational> c;
    long lo = s.is_zero() ? 0 : s.order();
    for (long k = lo; k < K + 4; ++k) c.push_back(s.coeff(k));
    return s.is_zero() ? s : LaurentQ(lo, std::move(c));
  };
  BigRational A1(a_[0]), A2(a_[1]), A3(a_[2]), A4(a_[3]), A6(a_[4]);
  LaurentQ w = z3;
  for (long it = 0; it < K + 2; ++it) {
    LaurentQ w2 = trunc(w * w);
    LaurentQ w3 = trunc(w2 * w);
    LaurentQ next = z3 + LaurentQ::constant(A1, 1) * z * w + LaurentQ::constant(A2, 1) * z2 * w +
                    LaurentQ::constant(A3, 1) * w2 + LaurentQ::constant(A4, 1) * z * w2 +
                    LaurentQ::constant(A6, 1) * w3;
    w = trunc(next);
  }
  LaurentQ x = trunc(z * w.inverse());
  LaurentQ y = trunc(-(w.inverse()));
  return {x, y};
}

namespace {

LaurentQ compose_poly(const Poly2Q& P, const LaurentQ& xs, const LaurentQ& ys, long prec) {
  LaurentQ acc;
  auto trunc = [&](const LaurentQ& s) {
    if (s.is_zero()) return s;
    std::vector<BigRational> c;
    long lo = s.order();
    for (long k = lo; k < prec; ++k) c.push_back(s.coeff(k));
    return LaurentQ(lo, std::move(c));
  };
  const auto& grid = P.grid();
  for (size_t i = 0; i < grid.size(); ++i) {
    for (size_t j = 0; j < grid[i].size(); ++j) {
      if (grid[i][j].is_zero()) continue;
      LaurentQ term = LaurentQ::constant(grid[i][j], 1);
      for (size_t k = 0; k < i; ++k) term = trunc(term * xs);
      for (size_t k = 0; k < j; ++k) term = trunc(term * ys);
      acc = acc + term;
    }
  }
  return trunc(acc);
}

}  // namespace

EllipticCurveQ::BranchSeries EllipticCurveQ::branch_series(const PointQ& P, long prec) const {
  BranchSeries out;
  if (P.infinite) {
    auto [xs, ys] = infinity_series(prec);
    out.x = xs;
    out.y = ys;
    return out;
  }
  BigRational a1(a_[0]), a2(a_[1]), a3(a_[2]), a4(a_[3]), a6(a_[4]);
  bool two_torsion = Fy(P).is_zero();
  LaurentQ t = LaurentQ::z(prec);
  auto trunc = [&](const LaurentQ& s) {
    if (s.is_zero()) return s;
    std::vector<BigRational> c;
    long lo = s.order();
    for (long k = lo; k < prec; ++k) c.push_back(s.coeff(k));
    return LaurentQ(lo, std::move(c));
  };
  if (!two_torsion) {
    // t = x - x_P; solve F(x_P + t, y(t)) = 0 by Newton from y_P
    out.x = LaurentQ::constant(P.x, prec) + t;
    LaurentQ y = LaurentQ::constant(P.y, prec);
    for (int it = 0; it < 12; ++it) {
      LaurentQ F = y * y + LaurentQ::constant(a1, 1) * out.x * y + LaurentQ::constant(a3, 1) * y -
                   out.x * out.x * out.x - LaurentQ::constant(a2, 1) * out.x * out.x -
                   LaurentQ::constant(a4, 1) * out.x - LaurentQ::constant(a6, 1);
      F = trunc(F);
      if (F.is_zero()) break;
      LaurentQ Fy = LaurentQ::constant(BigRational(2), 1) * y +
                    LaurentQ::constant(a1, 1) * out.x + LaurentQ::constant(a3, 1);
      y = trunc(y - F * Fy.inverse());
    }
    out.y = y;
  } else {
    // t = y - y_P; solve for x(t) by Newton from x_P (F_x(P) != 0 on a
    // smooth curve when F_y(P) = 0)
    out.y = LaurentQ::constant(P.y, prec) + t;
    LaurentQ x = LaurentQ::constant(P.x, prec);
    for (int it = 0; it < 12; ++it) {
      LaurentQ F = out.y * out.y + LaurentQ::constant(a1, 1) * x * out.y +
                   LaurentQ::constant(a3, 1) * out.y - x * x * x -
                   LaurentQ::constant(a2, 1) * x * x - LaurentQ::constant(a4, 1) * x -
                   LaurentQ::constant(a6, 1);
      F = trunc(F);
      if (F.is_zero()) break;
      LaurentQ Fx = LaurentQ::constant(a1, 1) * out.y -
                    LaurentQ::constant(BigRational(3), 1) * x * x -
                    LaurentQ::constant(BigRational(2) * a2, 1) * x - LaurentQ::constant(a4, 1);
      x = trunc(x - F * Fx.inverse());
    }
    out.x = x;
  }
  return out;
}

LaurentQ EllipticCurveQ::local_series(const RatFn2& f, const PointQ& P, long prec) const {
  BranchSeries bs = branch_series(P, prec + 8);
  LaurentQ num = compose_poly(f.num, bs.x, bs.y, prec + 8);
  LaurentQ den = compose_poly(f.den, bs.x, bs.y, prec + 8);
  if (den.is_zero()) throw std::domain_error("local_series: denominator vanishes identically");
  return num * den.inverse();
}

BigRational EllipticCurveQ::coordinate_scale(const RatFn2& u, const PointQ& P) const {
  if (!P.infinite) {
    if (!u.eval(P.x, P.y).is_zero())
      throw UnsupportedInput("coordinate function does not vanish at its base point");
    // du = (u_x F_y - u_y F_x) omega0 along the curve
    const Poly2Q &A = u.num, &B = u.den;
    BigRational Bv = B.eval(P.x, P.y);
    if (Bv.is_zero()) throw UnsupportedInput("coordinate function undefined at its base point");
    BigRational Ax = A.dx().eval(P.x, P.y), Ay = A.dy().eval(P.x, P.y);
    BigRational Bx = B.dx().eval(P.x, P.y), By = B.dy().eval(P.x, P.y);
    BigRational Av = A.eval(P.x, P.y);  // zero
    BigRational ux = (Ax * Bv - Av * Bx) / (Bv * Bv);
    BigRational uy = (Ay * Bv - Av * By) / (Bv * Bv);
    BigRational scale = ux * Fy(P) - uy * Fx(P);
    if (scale.is_zero()) throw UnsupportedInput("coordinate differential vanishes at base point");
    return scale;
  }
  // at infinity: compare the z-expansions of du and omega0 = (x'/F_y) dz
  long prec = 10;
  LaurentQ us = local_series(u, P, prec);
  if (us.is_zero() || us.order() != 1)
    throw UnsupportedInput("coordinate function must vanish to order one at infinity");
  auto [xs, ys] = infinity_series(prec);
  LaurentQ fy = LaurentQ::constant(BigRational(2), 1) * ys +
                LaurentQ::constant(BigRational(a_[0]), 1) * xs +
                LaurentQ::constant(BigRational(a_[2]), 1);
  LaurentQ w0 = xs.derivative() * fy.inverse();  // omega0 = w0(z) dz, w0(0) = 1
  LaurentQ du = us.derivative();
  BigRational scale = du.coeff(0) / w0.coeff(0);
  if (scale.is_zero()) throw UnsupportedInput("coordinate differential vanishes at base point");
  return scale;
}

std::pair<long, BigRational> EllipticCurveQ::leading_coefficient(const RatFn2& f, const RatFn2& u,
                                                                 const PointQ& P) const {
  long prec = 12;
  LaurentQ fs = local_series(f, P, prec);
  LaurentQ us = local_series(u, P, prec);
  if (fs.is_zero()) throw std::domain_error("leading_coefficient: function vanishes identically");
  if (us.is_zero() || us.order() != 1)
    throw UnsupportedInput("u is not a local coordinate at the point");
  long ord = fs.order();
  LaurentQ upow = LaurentQ::constant(BigRational(1), prec);
  for (long k = 0; k < std::labs(ord); ++k) upow = upow * us;
  LaurentQ ratio = (ord >= 0) ? fs * upow.inverse() : fs * upow;
  return {ord, ratio.coeff(0)};
}

}  // namespace biex
