#pragma once

#include <cmath>
#include <tuple>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Jacobi>

#include "speccalc/errors.hpp"
#include "speccalc/spectrum.hpp"

namespace speccalc {

/// Symmetric nonnegative weights with zero diagonal.
class AdjacencyMatrix {
 public:
  /// Throws InvariantError unless w is square, symmetric (exactly), nonnegative,
  /// with zero diagonal and at least one vertex.
  explicit AdjacencyMatrix(Eigen::MatrixXd w);

  /// 0-indexed edges (i, j, weight); repeated edges add up.
  static AdjacencyMatrix from_edges(int n, const std::vector<std::tuple<int, int, double>>& edges);

  int n() const { return static_cast<int>(w_.rows()); }
  const Eigen::MatrixXd& weights() const { return w_; }
  bool is_connected() const;
  /// Deg - A.
  Eigen::MatrixXd laplacian() const;

 private:
  Eigen::MatrixXd w_;
};

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, stopping once
/// the off-diagonal Frobenius norm drops below tol * max(1, ||A||_F).
/// Throws NoConvergence after max_sweeps sweeps.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> jacobi_eigenvalues(
    const Eigen::MatrixBase<Derived>& m, typename Derived::Scalar tol, int max_sweeps = 100) {
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Matrix a = m;
  const Eigen::Index n = a.rows();
  const Scalar threshold = tol * std::max(Scalar(1), a.norm());
  auto off = [&a, n] {
    Scalar s(0);
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index i = 0; i < n; ++i)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };
  for (int sweep = 0; off() >= threshold; ++sweep) {
    if (sweep == max_sweeps) {
      throw NoConvergence("Jacobi did not converge in " + std::to_string(max_sweeps) + " sweeps");
    }
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (a(p, q) == Scalar(0)) continue;
        Eigen::JacobiRotation<Scalar> rot;
        rot.makeJacobi(a, p, q);
        a.applyOnTheLeft(p, q, rot.adjoint());
        a.applyOnTheRight(p, q, rot);
      }
    }
  }
  return a.diagonal();
}

/// Spectrum of the combinatorial Laplacian. Eigenvalues below 10 tol in
/// modulus are set to 0 and values within relative 1e-9 are merged (cluster
/// mean). Throws ParameterError for n > 2000.
DiscreteSpectrum graph_laplacian_spectrum(const AdjacencyMatrix& a, double tol = 1e-12,
                                          int max_sweeps = 100);

}  // namespace speccalc
