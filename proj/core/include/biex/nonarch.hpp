#pragma once

#include <string>
#include <vector>

#include "biex/curve_q.hpp"
#include "biex/padic.hpp"
#include "biex/poly.hpp"

namespace biex {

enum class ReductionClass { Good, Multiplicative };

/// Reduction data at a prime; only good and multiplicative (I_n) types are in
/// scope, additive types raise UnsupportedInput naming the Kodaira type.
struct ReductionData {
  BigInt p;
  ReductionClass cls = ReductionClass::Good;
  std::string kodaira;  // "I0", "I1", ..., set for all supported types
  long components = 1;  // m_p: cycle length for I_n (n >= 1), 1 for good
  bool split = true;    // multiplicative only
  std::vector<std::vector<long>> intersection_matrix;  // components x components
  BigInt x0, y0;        // singular point of the reduction mod p (multiplicative)

  bool multiplicative() const { return cls == ReductionClass::Multiplicative; }
};

/// Kodaira classification at p via Tate-style invariants. Additive reduction
/// throws UnsupportedInput with the type name; a detectable non-minimal model
/// is also rejected.
ReductionData tate_reduce(const EllipticCurveQ& E, const BigInt& p);

/// Index in [0, m_p) of the special-fiber component met by the closure of P;
/// 0 is the identity component. Orientation of the I_n cycle is pinned by the
/// smallest-residue tangent slope at the node.
long component_index(const EllipticCurveQ& E, const PointQ& P, const BigInt& p);

/// Vertical Q-divisor Phi with (p-bar - q-bar + Phi) . F_i = 0 for all
/// components, gauge-fixed by coefficient 0 on the identity component.
struct VerticalQDivisor {
  BigInt p;
  std::vector<BigRational> coeff;
};
VerticalQDivisor phi_solver(const ReductionData& rd, long iP, long iQ);

/// iota_p(p-bar - q-bar, Phi), exact.
BigRational phi_pairing(const EllipticCurveQ& E, const PointQ& P, const PointQ& Q,
                        const BigInt& p);

/// Intersection multiplicity of the closures of two distinct rational points
/// on the minimal regular model over Z_p.
long section_intersection(const EllipticCurveQ& E, const PointQ& P, const PointQ& Q,
                          const BigInt& p);

/// val_p(du|_P) + val_p(dv|_Q), differentials measured against the invariant
/// differential of the minimal model along the sections.
long val_chi(const EllipticCurveQ& E, const PointQ& P, const PointQ& Q, const RatFn2& u,
             const RatFn2& v, const BigInt& p);

struct LocalPairingValue {
  BigInt p;
  BigRational multiple_of_log_p;  // val_chi + 2 iota - phi pairing, exact
  double value = 0.0;             // multiple * log p
};

/// Regularized local Neron pairing of p - q against itself at a finite prime.
LocalPairingValue nonarch_regularized_pairing(const EllipticCurveQ& E, const PointQ& P,
                                              const PointQ& Q, const RatFn2& u, const RatFn2& v,
                                              const BigInt& p);

/// Finite set of primes provably containing the support of the pairing.
std::vector<BigInt> pairing_support_primes(const EllipticCurveQ& E, const PointQ& P,
                                           const PointQ& Q, const RatFn2& u, const RatFn2& v);

}  // namespace biex
