#pragma once

#include <functional>
#include <vector>

#include "monolap/stencils.hpp"

namespace monolap {

struct EigenBasis {
  Eigen::MatrixXd H;  // axis factor (interior block)
  Eigen::MatrixXd S;
  Eigen::MatrixXd S_inv;
  Eigen::VectorXd lambda;
  double residual = 0.0;  // ||H S - S diag(lambda)||_max / ||H||_max
};

// Interior operator L_h = sum of axis factors combined by `rule(lambda_i, mu_j)`.
struct KronFactorization {
  Scheme scheme;
  std::shared_ptr<const QuadratureGrid> grid;
  EigenBasis x;
  EigenBasis y;  // unused in 1D
  std::function<double(double, double)> rule;
};

std::vector<double> solve_dense(const SparseMatrix& A, const std::vector<double>& rhs);
std::vector<double> solve_sparse(const SparseMatrix& A, const std::vector<double>& rhs);

bool has_kron_structure(Scheme s);
// Analytic sine basis for tridiag(1,4,1) of size n.
EigenBasis nine_point_basis(int n);
// Numerical eigendecomposition; throws UnsupportedConfiguration when the residual check fails.
EigenBasis numeric_basis(const Eigen::MatrixXd& H);

KronFactorization factor_kron(Scheme scheme, const QuadratureGrid& grid);
// Full-grid solve: boundary values taken from rhs, interior via the eigen transforms.
std::vector<double> solve_kron(const KronFactorization& f, const SparseMatrix& A, const std::vector<double>& rhs);

// kron when available and well conditioned, sparse LU otherwise
std::vector<double> solve_system(Scheme scheme, const System& sys);

}  // namespace monolap
