#include "biex/family.hpp"

#include <algorithm>
#include <cmath>

namespace biex {

static constexpr double kPi = 3.14159265358979323846;

namespace {

BigRational exact_sqrt(const BigRational& r) {
  if (r.sign() < 0) throw UnsupportedInput("node preimages are not rational (negative square)");
  BigInt num = r.num(), den = r.den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
    throw UnsupportedInput("node preimages are not rational (rho - sigma is not a square)");
  BigInt sn, sd;
  mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
  return BigRational(sn, sd);
}

}  // namespace

NodalFamily NodalFamily::from_poly(const PolyQ& q) {
  if (q.degree() != 3 || q.coeff(3) != BigRational(1))
    throw UnsupportedInput("family polynomial must be a monic cubic in x");
  PolyQ g = PolyQ::gcd(q, q.derivative());
  if (g.degree() != 1)
    throw UnsupportedInput("family must have exactly one double root (nodal central fiber)");
  NodalFamily fam;
  fam.q_ = q;
  fam.rho_ = -g.coeff(0) / g.coeff(1);
  // q = (x - rho)^2 (x - sigma)
  PolyQ lin = q.divmod(g.monic() * g.monic()).first;
  fam.sigma_ = -lin.coeff(0) / lin.coeff(1);
  if (fam.sigma_ == fam.rho_) throw UnsupportedInput("central fiber has a cusp, not a node");
  fam.s0_ = exact_sqrt(fam.rho_ - fam.sigma_);

  // validity: stay below the other critical value of -q
  PolyQ qp = q.derivative();
  // roots of q' = 3x^2 + ..., one is rho; the other by factoring out (x-rho)
  PolyQ other = qp.divmod(PolyQ({-fam.rho_, BigRational(1)})).first;
  BigRational xc = -other.coeff(0) / other.coeff(1);
  double tc = std::fabs(q.eval(xc).to_double());
  fam.t_max_ = 0.9 * tc;
  if (!(fam.t_max_ > 0.0)) throw UnsupportedInput("degenerate pencil: no validity disc");
  return fam;
}

WeierstrassCurveC NodalFamily::fiber(Complex t) const {
  return WeierstrassCurveC(0.0, Complex(q_.coeff(2).to_double()), 0.0,
                           Complex(q_.coeff(1).to_double()),
                           Complex(q_.coeff(0).to_double()) + t);
}

CurveIntegrand NodalFamily::mu_integrand() const {
  double s0 = s0_.to_double();
  return [s0](Complex, Complex Y) { return 2.0 * s0 / Y; };
}

BigRational NodalFamily::node_coordinate_scale() const {
  return BigRational(4) * s0_ * s0_;
}

double NodalFamily::normalization_oracle() const {
  double s0 = s0_.to_double();
  return genus0_regularized_integral(Complex(s0), Complex(-s0), Complex(4.0 * s0 * s0),
                                     Complex(4.0 * s0 * s0));
}

namespace {

struct FiberContours {
  std::array<Complex, 2> pair;  // colliding roots, pair[0] has Im >= Im(pair[1])
  Complex far_root;
  std::vector<PathSegment> beta;
  std::vector<PathSegment> alpha;
};

FiberContours fiber_contours(const NodalFamily& fam, const WeierstrassCurveC& E) {
  const auto& roots = E.branch_points();
  double rho = fam.rho().to_double();
  std::array<int, 3> idx = {0, 1, 2};
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return std::abs(roots[a] - rho) < std::abs(roots[b] - rho);
  });
  FiberContours fc;
  fc.pair = {roots[idx[0]], roots[idx[1]]};
  if (fc.pair[0].imag() < fc.pair[1].imag()) std::swap(fc.pair[0], fc.pair[1]);
  fc.far_root = roots[idx[2]];
  fc.beta = stadium(fc.pair[0], fc.pair[1], 0.4 * std::abs(fc.pair[0] - fc.pair[1]));
  // alpha encircles one colliding root and the far root, excluding the other
  Complex a = fc.pair[1], b = fc.far_root;
  double rho_a = 0.35 * std::abs(fc.pair[0] - fc.pair[1]);
  for (int tries = 0; tries < 50; ++tries) {
    if (dist_point_segment(fc.pair[0], a, b) > 1.7 * rho_a) break;
    rho_a *= 0.7;
  }
  fc.alpha = stadium(a, b, rho_a);
  return fc;
}

Complex contour_period(const WeierstrassCurveC& E, const CurveIntegrand& f,
                       const std::vector<PathSegment>& contour, const AnalyticParams& prm) {
  IntegrationPath path;
  path.segments = contour;
  path.initial_big_y = std::sqrt(E.g(contour[0].at(0.0)));
  return integrate_path(E, f, path, prm.quad());
}

}  // namespace

FiberPeriodData fiber_periods(const NodalFamily& fam, Complex t, const AnalyticParams& prm) {
  if (!(std::abs(t) > 0.0) || std::abs(t) >= fam.t_max())
    throw UnsupportedInput("t outside the validity disc of the family");
  WeierstrassCurveC E = fam.fiber(t);
  FiberContours fc = fiber_contours(fam, E);
  CurveIntegrand mu = fam.mu_integrand();
  FiberPeriodData out;
  out.t = t;
  out.vanishing = contour_period(E, mu, fc.beta, prm);
  if (out.vanishing.imag() < 0.0) out.vanishing = -out.vanishing;
  out.alpha = contour_period(E, mu, fc.alpha, prm);
  // orient the alpha cycle so its period tracks +log t
  if (std::fabs(out.alpha.real()) > 1.0) {
    if (out.alpha.real() > 0.0) out.alpha = -out.alpha;
  } else {
    // ambiguous at this size; decide by the slope towards smaller |t|
    WeierstrassCurveC E2 = fam.fiber(t * 0.5);
    FiberContours fc2 = fiber_contours(fam, E2);
    Complex a2 = contour_period(E2, mu, fc2.alpha, prm);
    auto slope_err = [&](Complex a1) {
      double d1 = std::fabs((a2 - a1).real() - std::log(0.5));
      double d2 = std::fabs((-a2 - a1).real() - std::log(0.5));
      return std::min(d1, d2);
    };
    if (slope_err(-out.alpha) < slope_err(out.alpha)) out.alpha = -out.alpha;
  }
  return out;
}

std::vector<double> default_t_sequence() {
  std::vector<double> t;
  for (int j = 2; j <= 8; ++j) t.push_back(std::pow(10.0, -j));
  return t;
}

LmhsCorner lmhs_corner(const NodalFamily& fam, const std::vector<double>& t_seq,
                       const AnalyticParams& prm) {
  if (t_seq.size() < 6)
    throw UnsupportedInput("t sequence must have at least 6 decreasing positive values");
  std::vector<double> ts = t_seq;
  std::sort(ts.begin(), ts.end(), std::greater<double>());
  for (double t : ts)
    if (!(t > 0.0) || t >= fam.t_max())
      throw UnsupportedInput("t sequence leaves the validity disc");

  CurveIntegrand mu = fam.mu_integrand();
  std::vector<Complex> alpha(ts.size());
  Complex prev;
  for (size_t i = 0; i < ts.size(); ++i) {
    WeierstrassCurveC E = fam.fiber(ts[i]);
    FiberContours fc = fiber_contours(fam, E);
    Complex a = contour_period(E, mu, fc.alpha, prm);
    if (i == 0) {
      FiberPeriodData fd = fiber_periods(fam, ts[0], prm);
      a = fd.alpha;
    } else {
      Complex predicted = prev + Complex(std::log(ts[i] / ts[i - 1]));
      if (std::abs(-a - predicted) < std::abs(a - predicted)) a = -a;
    }
    prev = a;
    alpha[i] = a;
  }

  LmhsCorner out;
  std::vector<double> f_re(ts.size()), f_im(ts.size());
  for (size_t i = 0; i < ts.size(); ++i) {
    Complex f = alpha[i] - Complex(std::log(ts[i]));
    f_re[i] = f.real();
    f_im[i] = f.imag();
    out.table.push_back({ts[i], f.real()});
  }

  // least-squares fit against the t log t error model
  auto fit = [&](const std::vector<double>& f, size_t lo) {
    size_t n = ts.size() - lo;
    Eigen::MatrixXd M(n, 5);
    Eigen::VectorXd rhs(n);
    for (size_t i = 0; i < n; ++i) {
      double t = ts[lo + i], lt = std::log(t);
      M(i, 0) = 1.0;
      M(i, 1) = t * lt;
      M(i, 2) = t;
      M(i, 3) = t * t * lt * lt;
      M(i, 4) = t * t;
      rhs(i) = f[lo + i];
    }
    Eigen::VectorXd sol = M.colPivHouseholderQr().solve(rhs);
    return sol(0);
  };
  double full = fit(f_re, 0);
  double tail = fit(f_re, ts.size() >= 7 ? 2 : 1);
  out.re_value = tail;
  out.error = std::fabs(full - tail);
  out.value = Complex(tail, fit(f_im, ts.size() >= 7 ? 2 : 1));
  if (!(out.error < 1e-4))
    throw NumericalFailure("limit extrapolation for the corner entry did not converge", out.error);
  return out;
}

BiextensionPeriodMatrix lmhs_period_matrix(const NodalFamily& fam, const AnalyticParams& prm) {
  LmhsCorner corner = lmhs_corner(fam, default_t_sequence(), prm);
  BiextensionPeriodMatrix P;
  P.k = 0;
  P.central.resize(0, 0);
  P.row_a.resize(0);
  P.col_b.resize(0);
  P.corner = corner.value;
  P.br = Complex(0.0, 2.0 * kPi);
  return P;
}

MonodromyReport monodromy_check(const NodalFamily& fam, Complex t0, const AnalyticParams& prm) {
  if (!(std::abs(t0) > 0.0) || std::abs(t0) >= fam.t_max())
    throw UnsupportedInput("t0 outside the validity disc of the family");
  CurveIntegrand mu = fam.mu_integrand();

  FiberPeriodData base = fiber_periods(fam, t0, prm);
  Complex Pb = base.vanishing, Pa = base.alpha;

  int steps = 64;
  Complex cb, ca;
  for (int attempt = 0; attempt < 4; ++attempt) {
    bool ok = true;
    cb = Pb;
    ca = Pa;
    std::array<Complex, 2> pair_prev{};
    for (int k = 1; k <= steps; ++k) {
      double th = 2.0 * kPi * double(k) / double(steps);
      Complex t = t0 * Complex(std::cos(th), std::sin(th));
      WeierstrassCurveC E = fam.fiber(t);
      // track roots by nearest-neighbour matching
      FiberContours fc = fiber_contours(fam, E);
      std::array<Complex, 2> pair_now = fc.pair;
      if (k > 1) {
        if (std::abs(pair_now[0] - pair_prev[0]) + std::abs(pair_now[1] - pair_prev[1]) >
            std::abs(pair_now[1] - pair_prev[0]) + std::abs(pair_now[0] - pair_prev[1]))
          std::swap(pair_now[0], pair_now[1]);
      }
      pair_prev = pair_now;
      auto beta_c = stadium(pair_now[0], pair_now[1], 0.4 * std::abs(pair_now[0] - pair_now[1]));
      double rho_a = 0.35 * std::abs(pair_now[0] - pair_now[1]);
      for (int tries = 0; tries < 50; ++tries) {
        if (dist_point_segment(pair_now[0], pair_now[1], fc.far_root) > 1.7 * rho_a) break;
        rho_a *= 0.7;
      }
      auto alpha_c = stadium(pair_now[1], fc.far_root, rho_a);

      Complex nb = contour_period(E, mu, beta_c, prm);
      Complex na = contour_period(E, mu, alpha_c, prm);
      if (std::abs(-nb - cb) < std::abs(nb - cb)) nb = -nb;
      if (std::abs(-na - ca) < std::abs(na - ca)) na = -na;
      if (std::abs(nb - cb) > 0.5 * (1.0 + std::abs(cb)) ||
          std::abs(na - ca) > 0.5 * (1.0 + std::abs(ca))) {
        ok = false;
        break;
      }
      cb = nb;
      ca = na;
    }
    if (ok) break;
    steps *= 2;
    if (attempt == 3) throw NumericalFailure("monodromy continuation failed", 0.0);
  }

  // express continued periods in the starting basis
  auto solve_int = [&](Complex val, double& resid) {
    Eigen::Matrix2d M;
    M << Pb.real(), Pa.real(), Pb.imag(), Pa.imag();
    Eigen::Vector2d rhs(val.real(), val.imag());
    Eigen::Vector2d sol = M.fullPivLu().solve(rhs);
    Eigen::Vector2d rounded(std::round(sol(0)), std::round(sol(1)));
    resid = std::max(resid, (sol - rounded).cwiseAbs().maxCoeff());
    return rounded;
  };
  MonodromyReport rep;
  rep.residual = 0.0;
  Eigen::Vector2d rb = solve_int(cb, rep.residual);
  Eigen::Vector2d ra = solve_int(ca, rep.residual);
  rep.transform << rb(0), rb(1), ra(0), ra(1);
  if (rep.residual > 1e-5)
    throw NumericalFailure("monodromy matrix is not integral", rep.residual);
  Eigen::Matrix2d N = rep.transform - Eigen::Matrix2d::Identity();
  rep.unipotent = (N * N).cwiseAbs().maxCoeff() < 1e-12;
  rep.intersection = long(rep.transform(1, 0));
  return rep;
}

}  // namespace biex
