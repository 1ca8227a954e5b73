#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "biex/rational.hpp"

namespace biex {

using Complex = std::complex<double>;

/// Dense univariate polynomial over Q, coefficients low-to-high.
class PolyQ {
 public:
  PolyQ() = default;
  explicit PolyQ(std::vector<BigRational> c) : c_(std::move(c)) { trim(); }
  static PolyQ constant(const BigRational& r) { return PolyQ({r}); }
  static PolyQ x() { return PolyQ({BigRational(0), BigRational(1)}); }

  long degree() const { return long(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const BigRational& coeff(size_t i) const;
  const std::vector<BigRational>& coeffs() const { return c_; }

  BigRational eval(const BigRational& v) const;
  Complex eval(const Complex& v) const;
  PolyQ derivative() const;
  PolyQ monic() const;

  friend PolyQ operator+(const PolyQ& a, const PolyQ& b);
  friend PolyQ operator-(const PolyQ& a, const PolyQ& b);
  friend PolyQ operator*(const PolyQ& a, const PolyQ& b);
  PolyQ operator-() const;

  /// Euclidean division; returns (quotient, remainder).
  std::pair<PolyQ, PolyQ> divmod(const PolyQ& d) const;
  static PolyQ gcd(PolyQ a, PolyQ b);  // monic gcd

 private:
  void trim();
  std::vector<BigRational> c_;
};

/// Dense bivariate polynomial over Q in (x, y); c[i][j] multiplies x^i y^j.
class Poly2Q {
 public:
  Poly2Q() = default;
  static Poly2Q constant(const BigRational& r);
  static Poly2Q x();
  static Poly2Q y();

  bool is_zero() const;
  BigRational eval(const BigRational& x, const BigRational& y) const;
  Complex eval(const Complex& x, const Complex& y) const;
  Poly2Q dx() const;
  Poly2Q dy() const;
  long deg_x() const;
  long deg_y() const;

  friend Poly2Q operator+(const Poly2Q& a, const Poly2Q& b);
  friend Poly2Q operator-(const Poly2Q& a, const Poly2Q& b);
  friend Poly2Q operator*(const Poly2Q& a, const Poly2Q& b);
  Poly2Q operator-() const;
  Poly2Q pow(long e) const;

  const std::vector<std::vector<BigRational>>& grid() const { return c_; }
  void set_coeff(size_t i, size_t j, const BigRational& v);

 private:
  void trim();
  std::vector<std::vector<BigRational>> c_;  // c_[i][j] x^i y^j
};

/// Rational function in (x, y) with rational coefficients, stored as num/den.
struct RatFn2 {
  Poly2Q num;
  Poly2Q den;  // nonzero

  RatFn2() : num(), den(Poly2Q::constant(1)) {}
  RatFn2(Poly2Q n, Poly2Q d);

  bool is_zero() const { return num.is_zero(); }
  /// Exact evaluation; throws std::domain_error when the denominator vanishes.
  BigRational eval(const BigRational& x, const BigRational& y) const;
  Complex eval(const Complex& x, const Complex& y) const;

  RatFn2 dx() const;
  RatFn2 dy() const;

  friend RatFn2 operator+(const RatFn2& a, const RatFn2& b);
  friend RatFn2 operator-(const RatFn2& a, const RatFn2& b);
  friend RatFn2 operator*(const RatFn2& a, const RatFn2& b);
  friend RatFn2 operator/(const RatFn2& a, const RatFn2& b);
  RatFn2 pow(long e) const;
};

/// Truncated Laurent series over Q: sum of c[k] z^(off+k).
class LaurentQ {
 public:
  LaurentQ() = default;
  LaurentQ(long off, std::vector<BigRational> c) : off_(off), c_(std::move(c)) { trim(); }
  static LaurentQ zero() { return LaurentQ(); }
  static LaurentQ constant(const BigRational& r, long prec);
  static LaurentQ z(long prec);  // z + O(z^prec)

  bool is_zero() const { return c_.empty(); }
  long order() const;           // exponent of the lowest nonzero term
  long precision() const { return off_ + long(c_.size()); }  // known up to z^(prec-1)
  BigRational coeff(long k) const;
  BigRational leading() const;

  friend LaurentQ operator+(const LaurentQ& a, const LaurentQ& b);
  friend LaurentQ operator-(const LaurentQ& a, const LaurentQ& b);
  friend LaurentQ operator*(const LaurentQ& a, const LaurentQ& b);
  LaurentQ operator-() const;
  LaurentQ inverse() const;  // leading term must be nonzero
  LaurentQ derivative() const;

 private:
  void trim();
  long off_ = 0;
  std::vector<BigRational> c_;
};

}  // namespace biex
