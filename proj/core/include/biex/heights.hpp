#pragma once

#include <Eigen/Dense>
#include <complex>

#include "biex/errors.hpp"

namespace biex {

/// Period matrix of a biextension in the normal form
///
///       ( b | P_H | 0  )
///       ( c |  a  | br )
///
/// with central block P_H of shape k x 2k. In normal form br = 1; a Tate
/// twist scales the whole matrix, so br tracks the twist.
struct BiextensionPeriodMatrix {
  long k = 0;
  Eigen::MatrixXcd central;    // k x 2k
  Eigen::RowVectorXcd row_a;   // 1 x 2k
  Eigen::VectorXcd col_b;      // k x 1
  std::complex<double> corner = 0.0;
  std::complex<double> br = 1.0;

  /// Assembles the full (k+1) x (2k+2) matrix.
  Eigen::MatrixXcd full() const;
  /// Splits a full matrix back into blocks; validates the zero column.
  static BiextensionPeriodMatrix from_full(const Eigen::MatrixXcd& m);
};

/// Rank-m variant: a, b, c are matrix blocks and the bottom-right block is
/// the m x m identity (tracked up to a twist scalar like br above).
struct RankMBiextensionMatrix {
  long k = 0, m = 1;
  Eigen::MatrixXcd central;  // k x 2k
  Eigen::MatrixXcd rows_a;   // m x 2k
  Eigen::MatrixXcd cols_b;   // k x m
  Eigen::MatrixXcd corner;   // m x m
};

/// Height of a biextension period matrix:
///   -2*pi*( Im c - Im a . [Im P_H; Re P_H]^{-1} . [Im b; Re b] ).
/// Throws UnsupportedInput("degenerate central periods") when the stacked
/// real matrix is singular. Requires br == 1 (normal form).
double height(const BiextensionPeriodMatrix& P);

/// Multiplies every entry by (2*pi*i)^{-j}.
BiextensionPeriodMatrix twist(const BiextensionPeriodMatrix& P, long j);

/// Height of a limit period matrix (corner block 2*pi*i): checks the bottom
/// central row is purely imaginary within im_tol (relative to the largest
/// period) and evaluates height(twist(P, 1)), which then equals Re(corner).
double height_of_lmhs_matrix(const BiextensionPeriodMatrix& P_chi, double im_tol = 1e-9);

/// Entrywise height formula with matrix-valued a, b, c; also returns the sum
/// of the entries (the total height).
std::pair<Eigen::MatrixXd, double> height_matrix_rank_m(const RankMBiextensionMatrix& P);

/// Base change by U (integer, unimodular, filtration-compatible with diagonal
/// blocks (1, GL_2k(Z), 1)) on the lattice side and V (complex block lower
/// triangular with diagonal (GL_k(C), 1)) on the F^0 side. Returns V P U^{-1}.
BiextensionPeriodMatrix change_basis(const BiextensionPeriodMatrix& P, const Eigen::MatrixXd& U,
                                     const Eigen::MatrixXcd& V);

}  // namespace biex
