#include "biex/heights.hpp"

#include <cmath>

namespace biex {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using CD = std::complex<double>;

static constexpr double kPi = 3.14159265358979323846;

MatrixXcd BiextensionPeriodMatrix::full() const {
  MatrixXcd m(k + 1, 2 * k + 2);
  m.setZero();
  m.block(0, 0, k, 1) = col_b;
  m.block(0, 1, k, 2 * k) = central;
  m(k, 0) = corner;
  m.block(k, 1, 1, 2 * k) = row_a;
  m(k, 2 * k + 1) = br;
  return m;
}

BiextensionPeriodMatrix BiextensionPeriodMatrix::from_full(const MatrixXcd& m) {
  long rows = m.rows(), cols = m.cols();
  if (cols != 2 * rows || rows < 1)
    throw UnsupportedInput("period matrix must have shape (k+1) x (2k+2)");
  long k = rows - 1;
  BiextensionPeriodMatrix P;
  P.k = k;
  P.col_b = m.block(0, 0, k, 1);
  P.central = m.block(0, 1, k, 2 * k);
  P.corner = m(k, 0);
  P.row_a = m.block(k, 1, 1, 2 * k);
  P.br = m(k, 2 * k + 1);
  double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (k > 0 && m.block(0, 2 * k + 1, k, 1).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw UnsupportedInput("period matrix: last column must vanish above the corner");
  return P;
}

namespace {

// Stacked real 2k x 2k matrix (Im P_H over Re P_H).
MatrixXd stacked(const MatrixXcd& central) {
  long k = central.rows();
  MatrixXd S(2 * k, 2 * k);
  S.topRows(k) = central.imag();
  S.bottomRows(k) = central.real();
  return S;
}

}  // namespace

double height(const BiextensionPeriodMatrix& P) {
  if (std::abs(P.br - CD(1.0)) > 1e-9)
    throw UnsupportedInput("height: matrix is not in biextension normal form (corner != 1)");
  if (P.k == 0) return -2.0 * kPi * P.corner.imag();
  MatrixXd S = stacked(P.central);
  Eigen::FullPivLU<MatrixXd> lu(S);
  lu.setThreshold(1e-12 * std::max(1.0, S.cwiseAbs().maxCoeff()));
  if (!lu.isInvertible()) throw UnsupportedInput("degenerate central periods");
  VectorXd rhs(2 * P.k);
  rhs.head(P.k) = P.col_b.imag();
  rhs.tail(P.k) = P.col_b.real();
  VectorXd w = lu.solve(rhs);
  double corr = P.row_a.imag() * w;
  return -2.0 * kPi * (P.corner.imag() - corr);
}

BiextensionPeriodMatrix twist(const BiextensionPeriodMatrix& P, long j) {
  CD two_pi_i(0.0, 2.0 * kPi);
  CD factor(1.0);
  for (long i = 0; i < j; ++i) factor /= two_pi_i;
  for (long i = 0; i < -j; ++i) factor *= two_pi_i;
  BiextensionPeriodMatrix Q = P;
  Q.central *= factor;
  Q.row_a *= factor;
  Q.col_b *= factor;
  Q.corner *= factor;
  Q.br *= factor;
  return Q;
}

double height_of_lmhs_matrix(const BiextensionPeriodMatrix& P_chi, double im_tol) {
  CD two_pi_i(0.0, 2.0 * kPi);
  if (std::abs(P_chi.br - two_pi_i) > 1e-9 * 2.0 * kPi)
    throw UnsupportedInput("limit period matrix must have corner entry 2*pi*i");
  double scale = std::max(1.0, std::abs(P_chi.corner));
  for (long j = 0; j < 2 * P_chi.k; ++j) scale = std::max(scale, std::abs(P_chi.row_a(j)));
  for (long j = 0; j < 2 * P_chi.k; ++j) {
    if (std::abs(P_chi.row_a(j).real()) > im_tol * scale)
      throw UnsupportedInput("unnormalized third-kind differential");
  }
  BiextensionPeriodMatrix B = twist(P_chi, 1);
  B.br = 1.0;  // exact by construction, clear rounding residue
  return height(B);
}

std::pair<MatrixXd, double> height_matrix_rank_m(const RankMBiextensionMatrix& P) {
  MatrixXd H;
  if (P.k == 0) {
    H = -2.0 * kPi * P.corner.imag();
  } else {
    MatrixXd S = stacked(P.central);
    Eigen::FullPivLU<MatrixXd> lu(S);
    lu.setThreshold(1e-12 * std::max(1.0, S.cwiseAbs().maxCoeff()));
    if (!lu.isInvertible()) throw UnsupportedInput("degenerate central periods");
    MatrixXd rhs(2 * P.k, P.m);
    rhs.topRows(P.k) = P.cols_b.imag();
    rhs.bottomRows(P.k) = P.cols_b.real();
    MatrixXd W = lu.solve(rhs);                 // 2k x m
    MatrixXd corr = P.rows_a.imag() * W;        // m x m
    H = -2.0 * kPi * (P.corner.imag() - corr);
  }
  return {H, H.sum()};
}

BiextensionPeriodMatrix change_basis(const BiextensionPeriodMatrix& P, const MatrixXd& U,
                                     const MatrixXcd& V) {
  long k = P.k;
  long n = 2 * k + 2;
  if (U.rows() != n || U.cols() != n) throw UnsupportedInput("change_basis: U has wrong shape");
  if (V.rows() != k + 1 || V.cols() != k + 1)
    throw UnsupportedInput("change_basis: V has wrong shape");

  MatrixXd Ur = U.array().round().matrix();
  if ((U - Ur).cwiseAbs().maxCoeff() > 1e-9)
    throw UnsupportedInput("change_basis: U must have integer entries");

  // Filtration compatibility: diagonal blocks (1, GL_2k(Z), 1), zeros above.
  if (std::abs(Ur(0, 0) - 1.0) > 0) throw UnsupportedInput("change_basis: U(0,0) must be 1");
  if (Ur.block(0, 1, 1, n - 1).cwiseAbs().maxCoeff() > 0)
    throw UnsupportedInput("change_basis: U must preserve W_0");
  if (k > 0 && Ur.block(1, n - 1, n - 2, 1).cwiseAbs().maxCoeff() > 0)
    throw UnsupportedInput("change_basis: U must preserve W_1");
  if (std::abs(Ur(n - 1, n - 1) - 1.0) > 0)
    throw UnsupportedInput("change_basis: U must fix the weight-0 generator");
  double det = Ur.block(1, 1, 2 * k, 2 * k).determinant();
  if (std::abs(std::abs(det) - 1.0) > 1e-6)
    throw UnsupportedInput("change_basis: central block of U must be unimodular");

  if (k > 0 && V.block(0, k, k, 1).cwiseAbs().maxCoeff() > 0)
    throw UnsupportedInput("change_basis: V must be block lower triangular");
  if (std::abs(V(k, k) - CD(1.0)) > 0)
    throw UnsupportedInput("change_basis: V must fix the F^0 weight-0 generator");
  if (k > 0) {
    Eigen::FullPivLU<MatrixXcd> vlu(V.block(0, 0, k, k));
    if (!vlu.isInvertible()) throw UnsupportedInput("change_basis: V diagonal block singular");
  }

  Eigen::FullPivLU<MatrixXd> ulu(Ur);
  MatrixXd Uinv = ulu.inverse().array().round().matrix();
  if ((Ur * Uinv - MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-9)
    throw UnsupportedInput("change_basis: U is not unimodular");

  MatrixXcd result = V * P.full() * Uinv.cast<CD>();
  return BiextensionPeriodMatrix::from_full(result);
}

}  // namespace biex
