#pragma once

#include <Eigen/Dense>

#include "biex/analytic.hpp"
#include "biex/heights.hpp"

namespace biex {

/// One-parameter pencil y^2 = q(x) + t with q a monic cubic over Q having
/// exactly one double root rho (and simple root sigma). The central fiber is
/// the nodal cubic; its normalization is P^1 via x = sigma + s^2,
/// y = s (s^2 - s0^2) with s0^2 = rho - sigma required to be a rational
/// square so the node preimages s = +-s0 are rational.
///
/// Node-adapted factorization: with w(x) = sqrt(x - sigma) expanded at rho,
/// (y - (x - rho) w)(y + (x - rho) w) = t exactly, which pins the coordinate
/// scales at the node preimages to 4 s0^2 ds on either branch.
class NodalFamily {
 public:
  static NodalFamily from_poly(const PolyQ& q);

  const PolyQ& q() const { return q_; }
  const BigRational& rho() const { return rho_; }
  const BigRational& sigma() const { return sigma_; }
  const BigRational& s0() const { return s0_; }
  double t_max() const { return t_max_; }

  /// Genus-1 fiber at t as a curve y^2 = q(x) + t.
  WeierstrassCurveC fiber(Complex t) const;
  /// mu(t) = s0 dx/y, normalized so the vanishing period tends to 2*pi*i.
  CurveIntegrand mu_integrand() const;

  /// Coordinate scale of the node-adapted coordinate at each node preimage,
  /// as a multiple of ds at s = +-s0 (both equal 4 s0^2).
  BigRational node_coordinate_scale() const;
  /// Closed-form prediction for Re I_chi on the normalization:
  /// -2 log|2 s0| - 2 log|4 s0^2|.
  double normalization_oracle() const;

 private:
  PolyQ q_;
  BigRational rho_, sigma_, s0_;
  double t_max_ = 0.0;
};

struct FiberPeriodData {
  Complex t;
  Complex vanishing;  // period of mu over the vanishing cycle, Im-positive
  Complex alpha;      // period over the alpha cycle, Re(alpha) ~ log|t|
};

/// Both periods of mu on the fiber at t (0 < |t| < t_max).
FiberPeriodData fiber_periods(const NodalFamily& fam, Complex t, const AnalyticParams& prm);

struct LmhsCorner {
  Complex value;                                // complex I_chi estimate
  double re_value = 0.0;                        // extrapolated Re I_chi
  double error = 0.0;
  std::vector<std::pair<double, double>> table; // (t, Re(alpha(t)) - log t)
};

/// Extrapolates I_chi = lim (alpha-period - log t) over a decreasing positive
/// real t sequence (at least 6 values).
LmhsCorner lmhs_corner(const NodalFamily& fam, const std::vector<double>& t_seq,
                       const AnalyticParams& prm);

std::vector<double> default_t_sequence();

/// Limit period matrix: genus-0 normalization, so the 1 x 2 matrix
/// (I_chi | 2*pi*i).
BiextensionPeriodMatrix lmhs_period_matrix(const NodalFamily& fam, const AnalyticParams& prm);

struct MonodromyReport {
  Eigen::Matrix2d transform;  // integer matrix in the (beta, alpha) basis
  long intersection = 0;      // coefficient of beta gained by alpha
  bool unipotent = false;     // (T - 1)^2 = 0
  double residual = 0.0;      // distance of the solved matrix from integers
};

/// Continues both periods around t0 * e^{i theta} and recovers the integer
/// monodromy matrix.
MonodromyReport monodromy_check(const NodalFamily& fam, Complex t0, const AnalyticParams& prm);

}  // namespace biex
