#include "speccalc/laplacian.hpp"

#include <algorithm>
#include <queue>

namespace speccalc {

AdjacencyMatrix::AdjacencyMatrix(Eigen::MatrixXd w) : w_(std::move(w)) {
  if (w_.rows() == 0 || w_.rows() != w_.cols()) {
    throw InvariantError("adjacency matrix must be square with at least one vertex");
  }
  for (Eigen::Index i = 0; i < w_.rows(); ++i) {
    if (w_(i, i) != 0.0) throw InvariantError("adjacency diagonal must be zero");
    for (Eigen::Index j = 0; j < w_.cols(); ++j) {
      if (!std::isfinite(w_(i, j)) || w_(i, j) < 0) {
        throw InvariantError("adjacency weights must be finite and nonnegative");
      }
      if (w_(i, j) != w_(j, i)) throw InvariantError("adjacency matrix must be symmetric");
    }
  }
}

AdjacencyMatrix AdjacencyMatrix::from_edges(
    int n, const std::vector<std::tuple<int, int, double>>& edges) {
  if (n <= 0) throw InvariantError("graph needs at least one vertex");
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [i, j, weight] : edges) {
    if (i < 0 || j < 0 || i >= n || j >= n) throw InvariantError("edge endpoint out of range");
    if (i == j) throw InvariantError("self-loops are not allowed");
    w(i, j) += weight;
    w(j, i) += weight;
  }
  return AdjacencyMatrix(std::move(w));
}

bool AdjacencyMatrix::is_connected() const {
  std::vector<bool> seen(n(), false);
  std::queue<int> todo;
  todo.push(0);
  seen[0] = true;
  int reached = 1;
  while (!todo.empty()) {
    const int v = todo.front();
    todo.pop();
    for (int u = 0; u < n(); ++u) {
      if (!seen[u] && w_(v, u) > 0) {
        seen[u] = true;
        ++reached;
        todo.push(u);
      }
    }
  }
  return reached == n();
}

Eigen::MatrixXd AdjacencyMatrix::laplacian() const {
  Eigen::MatrixXd l = -w_;
  l.diagonal() = w_.rowwise().sum();
  return l;
}

DiscreteSpectrum graph_laplacian_spectrum(const AdjacencyMatrix& a, double tol, int max_sweeps) {
  if (a.n() > 2000) throw ParameterError("graph has more than 2000 vertices");
  if (!(tol > 0)) throw ParameterError("Jacobi tolerance must be > 0");
  Eigen::VectorXd ev = jacobi_eigenvalues(a.laplacian(), tol, max_sweeps);
  std::vector<double> v(ev.data(), ev.data() + ev.size());
  for (double& x : v) {
    if (std::abs(x) < 10 * tol) x = 0.0;
  }
  std::sort(v.begin(), v.end());
  std::vector<DiscreteSpectrum::Atom> atoms;
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i + 1;
    double sum = v[i];
    while (j < v.size() && std::abs(v[j] - v[i]) <= 1e-9 * std::max(std::abs(v[i]), std::abs(v[j]))) {
      sum += v[j++];
    }
    atoms.push_back({v[i] == 0.0 ? 0.0 : sum / static_cast<double>(j - i), j - i});
    i = j;
  }
  return DiscreteSpectrum::canonical(std::move(atoms), std::nullopt, "graph_laplacian");
}

}  // namespace speccalc
