#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

namespace tailsitter {

struct LqrWeights {
  Eigen::MatrixXd Q;
  Eigen::MatrixXd R;
  Eigen::MatrixXd N;  // empty means zero

  static LqrWeights identity(int n, int m);
};

struct LqrDesign {
  Eigen::MatrixXd K;
  Eigen::MatrixXd S;
  std::vector<std::complex<double>> closed_loop_eigs;
  double care_residual = 0.0;  // ||residual||_F / ||S||_F
  int newton_iterations = 0;

  double spectral_abscissa() const;
};

/// Solves A^T X + X A + Q = 0 for a Hurwitz A.
Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Q);

/// A^T S + S A - (S B + N) R^-1 (B^T S + N^T) + Q = 0, K = R^-1 (B^T S + N^T).
/// Kleinman-Newton iteration from a Bass stabilizing gain. Throws NotStabilizable.
LqrDesign solve_care(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, const LqrWeights& w);

double care_residual(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, const LqrWeights& w,
                     const Eigen::MatrixXd& S);

/// Appends x_i' = p_ref - p for the selected rows. Returns (A_aug, B_aug).
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> augment_integrator(const Eigen::MatrixXd& A,
                                                               const Eigen::MatrixXd& B,
                                                               const std::vector<int>& rows = {0, 1, 2});

/// delta_x^T S delta_x with S symmetrized.
double lyapunov_value(const Eigen::MatrixXd& S, const Eigen::VectorXd& delta_x);

/// Inserts a zero column for the quaternion scalar part at the given index (gain on the
/// eps-reduced state seen on the full [p, v, q, omega] state).
Eigen::MatrixXd embed_eta_column(const Eigen::MatrixXd& K, int index = 6);

}  // namespace tailsitter
