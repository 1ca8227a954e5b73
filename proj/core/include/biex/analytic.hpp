#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "biex/poly.hpp"
#include "biex/quadrature.hpp"

namespace biex {

struct AnalyticParams {
  double quad_eps = 1e-12;
  double im_tol = 1e-9;            // purity tolerance for normalized periods
  long node_budget = 4000000;
  double delta_path_factor = 1e-3; // clearance = factor * min branch gap
  int richardson_j0 = 8;           // offsets 2^-j0 .. 2^-j1
  int richardson_j1 = 20;
  double extrap_tol = 1e-9;        // convergence threshold for extrapolation
  int path_variant = 0;            // alternative routing for independence tests

  QuadratureParams quad() const { return {quad_eps, node_budget}; }
};

/// Divisor on a curve over C; multiplicities are integers.
struct DivisorC {
  std::vector<std::pair<CurvePoint, long>> terms;
  long degree() const;
};

struct ExtrapolationResult {
  double value = 0.0;
  double error = 0.0;
};

/// Richardson extrapolation for samples F(eps0 * 2^-i) with an O(eps) error
/// model. Throws NumericalFailure when the tableau does not settle.
ExtrapolationResult richardson_limit(const std::vector<double>& samples, double tol);

Complex eval_laurent(const LaurentQ& s, Complex z);

/// Differential of the third kind with prescribed integer residue divisor and
/// purely imaginary periods. Immutable after construction.
class ThirdKindDifferential {
 public:
  ThirdKindDifferential(const WeierstrassCurveC& E, const DivisorC& residues,
                        const AnalyticParams& prm);

  const WeierstrassCurveC& curve() const { return E_; }
  const DivisorC& residue_divisor() const { return residues_; }
  Complex correction() const { return c_; }

  /// F with eta = F(x, Y) dx.
  CurveIntegrand integrand() const;
  /// The two cached cycle periods of eta (normalized, so Re is ~ 0).
  const std::array<Complex, 2>& cycle_periods() const { return eta_periods_; }
  const std::array<Complex, 2>& invariant_periods() const { return omega_periods_; }
  const std::array<std::vector<PathSegment>, 2>& cycles() const { return cycles_; }

  /// Numerical residue at a support point via a winding integral.
  Complex residue_at(const CurvePoint& p, const AnalyticParams& prm) const;

 private:
  WeierstrassCurveC E_;
  DivisorC residues_;
  std::vector<std::array<Complex, 3>> affine_support_;  // x, bigY, multiplicity
  Complex c_{0.0};
  std::array<Complex, 2> eta_periods_{};
  std::array<Complex, 2> omega_periods_{};
  std::array<std::vector<PathSegment>, 2> cycles_{};
};

/// F with omega0 = dx / Y, the invariant differential.
CurveIntegrand invariant_integrand();

/// Continues the sheet along the legs and returns the final Y value.
Complex sheet_continue(const WeierstrassCurveC& E, const std::vector<PathSegment>& segs,
                       Complex y_start);

/// Local coordinate data at a point of the curve: a rational function in
/// (x, y) vanishing there; for a base point at infinity the z-expansion is
/// carried along for well-conditioned evaluation.
struct LocalCoordinateC {
  RatFn2 fn;
  bool base_at_infinity = false;
  LaurentQ series_z;  // used only when base_at_infinity

  Complex eval_affine(const CurvePoint& p) const { return fn.eval(p.x, p.y); }
  Complex eval_z(Complex z) const { return eval_laurent(series_z, z); }
};

/// Archimedean local Neron pairing for degree-zero divisors with disjoint
/// support: Re of the integral of the normalized third-kind differential of
/// `second` over a 1-chain with boundary `first`.
double archimedean_disjoint_pairing(const WeierstrassCurveC& E, const DivisorC& first,
                                    const DivisorC& second, const AnalyticParams& prm);

struct RegularizedValue {
  double value = 0.0;
  double error = 0.0;
};

/// Regularized archimedean self-pairing of p - q against the coordinate data
/// (u at p, v at q): the limit of Re(int_{q'}^{p'} eta) - log|u(p') v(q')|.
RegularizedValue regularized_integral(const WeierstrassCurveC& E, const CurvePoint& p,
                                      const CurvePoint& q, const LocalCoordinateC& u,
                                      const LocalCoordinateC& v, const AnalyticParams& prm);

/// Closed form on P^1 for u = s_p (z - p) + ..., v = s_q (z - q) + ...:
///   -2 log|p - q| - log|s_p| - log|s_q|.
double genus0_regularized_integral(Complex p, Complex q, Complex s_p, Complex s_q);

/// The same limit on P^1 evaluated numerically from the defining limit with
/// u, v given as rational functions of z (the x variable of the parser).
RegularizedValue regularized_integral_p1(Complex p, Complex q, const RatFn2& u, const RatFn2& v,
                                         const AnalyticParams& prm);

}  // namespace biex
