#pragma once

#include <array>
#include <optional>

#include "biex/rational.hpp"

namespace biex {

/// Arithmetic in Z/p^N for a fixed prime power modulus.
struct ZmodP {
  BigInt p;
  long N = 0;
  BigInt mod;  // p^N

  ZmodP(const BigInt& prime, long precision);

  BigInt reduce(const BigInt& a) const;
  /// Image of a p-integral rational (throws if p divides the denominator).
  BigInt reduce(const BigRational& r) const;
  BigInt inv(const BigInt& a) const;  // a must be a unit mod p
  BigInt mul(const BigInt& a, const BigInt& b) const { return reduce(a * b); }
  /// Valuation of a mod p^N, capped at N (val(0 mod p^N) = N).
  long val(const BigInt& a) const;
};

/// Square root mod an odd prime (Tonelli-Shanks). Input must be a QR.
BigInt sqrt_mod_prime(const BigInt& a, const BigInt& p);

/// Hensel lift of a simple root: f monic-agnostic with f'(root) a p-unit.
/// Coefficients low-to-high; root0 is a root of f mod p.
BigInt hensel_lift_root(const std::vector<BigInt>& f, const BigInt& root0, const ZmodP& zp);

/// Critical point of the Weierstrass polynomial F(x,y) near a given seed mod p,
/// solved to precision p^N by Newton on (F_x, F_y); requires the Hessian
/// determinant to be a unit at the seed (nodal tangent cone).
struct CriticalPoint {
  BigInt x0, y0;   // mod p^N
  BigInt f_value;  // F(x0, y0) mod p^N
};
CriticalPoint weierstrass_critical_point(const std::array<BigInt, 5>& a_inv,
                                         const BigInt& x_seed, const BigInt& y_seed,
                                         const ZmodP& zp);

}  // namespace biex
