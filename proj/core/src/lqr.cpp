#include "tailsitter/lqr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <unsupported/Eigen/KroneckerProduct>

#include "tailsitter/errors.hpp"

namespace tailsitter {

using Eigen::MatrixXd;

LqrWeights LqrWeights::identity(int n, int m) {
  return {MatrixXd::Identity(n, n), MatrixXd::Identity(m, m), MatrixXd::Zero(n, m)};
}

double LqrDesign::spectral_abscissa() const {
  double s = -std::numeric_limits<double>::infinity();
  for (const auto& e : closed_loop_eigs) s = std::max(s, e.real());
  return s;
}

MatrixXd solve_lyapunov(const MatrixXd& A, const MatrixXd& Q) {
  const Eigen::Index n = A.rows();
  const MatrixXd I = MatrixXd::Identity(n, n);
  const MatrixXd At = A.transpose();
  // vec(A^T X + X A) = (I (x) A^T + A^T (x) I) vec(X)
  const MatrixXd L = Eigen::kroneckerProduct(I, At) + Eigen::kroneckerProduct(At, I);
  const Eigen::VectorXd q = Eigen::Map<const Eigen::VectorXd>(Q.data(), n * n);
  const Eigen::VectorXd x = L.partialPivLu().solve(-q);
  MatrixXd X = Eigen::Map<const MatrixXd>(x.data(), n, n);
  return 0.5 * (X + X.transpose());
}

namespace {

double abscissa(const MatrixXd& M) {
  const Eigen::VectorXcd ev = M.eigenvalues();
  double s = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < ev.size(); ++i) s = std::max(s, ev(i).real());
  return s;
}

// Bass: with beta above the spectral radius, (A + beta I) Z + Z (A + beta I)^T = 2 B B^T
// has Z > 0 for controllable (A, B) and K = B^T Z^-1 stabilizes.
MatrixXd bass_gain(const MatrixXd& A, const MatrixXd& B) {
  const Eigen::Index n = A.rows();
  const double beta = A.norm() + 1.0;
  const MatrixXd Ab = A + beta * MatrixXd::Identity(n, n);
  // solve_lyapunov handles M^T X + X M + Q = 0; use M = -Ab^T
  const MatrixXd Z = solve_lyapunov(-Ab.transpose(), 2.0 * B * B.transpose());
  Eigen::LDLT<MatrixXd> ldlt(Z);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
    throw NotStabilizable("no stabilizing initial gain: (A, B) is not controllable");
  return B.transpose() * ldlt.solve(MatrixXd::Identity(n, n));
}

// Stable invariant subspace of the Hamiltonian [[A, -B R^-1 B^T], [-Q, -A^T]]: S = X2 X1^-1.
// Eigenvector based, so only used as a starting point for the Newton refinement.
std::optional<MatrixXd> hamiltonian_guess(const MatrixXd& A, const MatrixXd& G, const MatrixXd& Q) {
  const Eigen::Index n = A.rows();
  MatrixXd H(2 * n, 2 * n);
  H << A, -G, -Q, -A.transpose();
  Eigen::ComplexEigenSolver<MatrixXd> es(H);
  if (es.info() != Eigen::Success) return std::nullopt;
  Eigen::MatrixXcd V(2 * n, n);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < 2 * n && k < n; ++i)
    if (es.eigenvalues()(i).real() < 0.0) V.col(k++) = es.eigenvectors().col(i);
  if (k != n) return std::nullopt;
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(V.topRows(n).transpose());
  const MatrixXd S = lu.solve(V.bottomRows(n).transpose()).transpose().real();
  if (!S.allFinite()) return std::nullopt;
  return MatrixXd(0.5 * (S + S.transpose()));
}

}  // namespace

double care_residual(const MatrixXd& A, const MatrixXd& B, const LqrWeights& w, const MatrixXd& S) {
  const MatrixXd N = w.N.size() ? w.N : MatrixXd::Zero(A.rows(), B.cols());
  const MatrixXd G = S * B + N;
  const MatrixXd res = A.transpose() * S + S * A - G * w.R.ldlt().solve(G.transpose()) + w.Q;
  return res.norm() / std::max(S.norm(), 1e-300);
}

LqrDesign solve_care(const MatrixXd& A, const MatrixXd& B, const LqrWeights& w) {
  const Eigen::Index n = A.rows();
  const MatrixXd N = w.N.size() ? w.N : MatrixXd::Zero(n, B.cols());
  const auto Rinv = w.R.ldlt();
  // fold the cross term into A and Q
  const MatrixXd Ab = A - B * Rinv.solve(N.transpose());
  const MatrixXd Qb = w.Q - N * Rinv.solve(N.transpose());

  MatrixXd K;
  if (const auto S0 = hamiltonian_guess(Ab, B * Rinv.solve(B.transpose()), Qb)) {
    K = Rinv.solve(B.transpose() * *S0);
    if (!(abscissa(Ab - B * K) < 0.0)) K.resize(0, 0);
  }
  if (K.size() == 0) K = abscissa(Ab) < 0.0 ? MatrixXd::Zero(B.cols(), n) : bass_gain(Ab, B);
  if (!(abscissa(Ab - B * K) < 0.0)) throw NotStabilizable("initial gain is not stabilizing");

  MatrixXd S = MatrixXd::Zero(n, n);
  LqrDesign d;
  double last_change = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 100; ++it) {
    const MatrixXd Ak = Ab - B * K;
    const MatrixXd Sn = solve_lyapunov(Ak, Qb + K.transpose() * w.R * K);
    K = Rinv.solve(B.transpose() * Sn);
    const double change = (Sn - S).norm() / std::max(Sn.norm(), 1e-300);
    S = Sn;
    d.newton_iterations = it + 1;
    // quadratic phase over: stop once roundoff dominates
    if (change < 1e-14 || (change < 1e-10 && change >= 0.5 * last_change)) break;
    last_change = change;
  }
  d.S = S;
  d.K = Rinv.solve(B.transpose() * S + N.transpose());
  const Eigen::VectorXcd ev = (A - B * d.K).eigenvalues();
  d.closed_loop_eigs.assign(ev.data(), ev.data() + ev.size());
  std::sort(d.closed_loop_eigs.begin(), d.closed_loop_eigs.end(),
            [](auto a, auto b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
  d.care_residual = care_residual(A, B, w, S);
  if (!(d.spectral_abscissa() < 0.0)) throw NotStabilizable("Riccati iteration lost stability");
  return d;
}

std::pair<MatrixXd, MatrixXd> augment_integrator(const MatrixXd& A, const MatrixXd& B,
                                                 const std::vector<int>& rows) {
  const Eigen::Index n = A.rows(), m = B.cols(), k = static_cast<Eigen::Index>(rows.size());
  MatrixXd Aa = MatrixXd::Zero(n + k, n + k);
  MatrixXd Ba = MatrixXd::Zero(n + k, m);
  Aa.topLeftCorner(n, n) = A;
  Ba.topRows(n) = B;
  for (Eigen::Index i = 0; i < k; ++i) Aa(n + i, rows[i]) = -1.0;
  return {Aa, Ba};
}

double lyapunov_value(const MatrixXd& S, const Eigen::VectorXd& dx) {
  return dx.dot(0.5 * (S + S.transpose()) * dx);
}

MatrixXd embed_eta_column(const MatrixXd& K, int index) {
  MatrixXd out(K.rows(), K.cols() + 1);
  out.leftCols(index) = K.leftCols(index);
  out.col(index).setZero();
  out.rightCols(K.cols() - index) = K.rightCols(K.cols() - index);
  return out;
}

}  // namespace tailsitter
