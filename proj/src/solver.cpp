#include "monolap/solver.hpp"

#include <fmt/format.h>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>
#include <cmath>
#include <numbers>

#include "monolap/errors.hpp"
#include "monolap/matrixcore.hpp"

namespace monolap {

namespace {

Eigen::MatrixXd interior_block(const SparseMatrix& D) {
  const int n = D.dim() - 2;
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
  for (int r = 1; r <= n; ++r)
    for (const auto& e : D.row(r))
      if (e.col >= 1 && e.col <= n) H(r - 1, e.col - 1) = e.val;
  return H;
}

Eigen::MatrixXd q3_axis_block(int cells, double h) {
  SurdMatrix U = q3_axis_unit_operator(cells);
  SparseMatrix D(U.dim());
  const double c = 4.0 / (h * h);
  for (int r = 0; r < U.dim(); ++r)
    for (const auto& e : U.row(r)) D.add(r, e.col, c * e.val.value());
  return interior_block(D);
}

double residual_of(const EigenBasis& b) {
  double hn = b.H.cwiseAbs().maxCoeff();
  Eigen::MatrixXd R = b.H * b.S - b.S * b.lambda.asDiagonal();
  return hn > 0 ? R.cwiseAbs().maxCoeff() / hn : R.cwiseAbs().maxCoeff();
}

}  // namespace

std::vector<double> solve_dense(const SparseMatrix& A, const std::vector<double>& rhs) {
  if (static_cast<int>(rhs.size()) != A.dim()) throw DimensionMismatch("solve_dense: rhs size mismatch");
  Eigen::MatrixXd M = to_dense(A);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
  double rc = lu.rcond();
  if (!(rc > 1e-15)) throw SingularMatrix(fmt::format("solve_dense: singular matrix (rcond {:.3e})", rc));
  Eigen::Map<const Eigen::VectorXd> b(rhs.data(), A.dim());
  Eigen::VectorXd x = lu.solve(b);
  double res = (M * x - b).cwiseAbs().maxCoeff();
  double bound = 1e-10 * (M.cwiseAbs().maxCoeff() * x.cwiseAbs().maxCoeff() + b.cwiseAbs().maxCoeff());
  if (!(res <= bound)) throw SingularMatrix(fmt::format("solve_dense: residual {:.3e} above bound {:.3e}", res, bound));
  return std::vector<double>(x.data(), x.data() + x.size());
}

std::vector<double> solve_sparse(const SparseMatrix& A, const std::vector<double>& rhs) {
  if (static_cast<int>(rhs.size()) != A.dim()) throw DimensionMismatch("solve_sparse: rhs size mismatch");
  Eigen::SparseMatrix<double> S = to_eigen(A);
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(S);
  if (lu.info() != Eigen::Success) throw SingularMatrix("solve_sparse: factorization failed");
  Eigen::Map<const Eigen::VectorXd> b(rhs.data(), A.dim());
  Eigen::VectorXd x = lu.solve(b);
  if (lu.info() != Eigen::Success || !x.allFinite()) throw SingularMatrix("solve_sparse: solve failed");
  return std::vector<double>(x.data(), x.data() + x.size());
}

bool has_kron_structure(Scheme s) { return s != Scheme::P2; }

EigenBasis nine_point_basis(int n) {
  if (n < 1) throw InvalidArgument("basis size must be positive");
  EigenBasis b;
  b.H = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    b.H(k, k) = 4.0;
    if (k > 0) b.H(k, k - 1) = 1.0;
    if (k + 1 < n) b.H(k, k + 1) = 1.0;
  }
  const double pi = std::numbers::pi;
  const double norm = std::sqrt(2.0 / (n + 1));
  b.S.resize(n, n);
  b.lambda.resize(n);
  for (int m = 1; m <= n; ++m) {
    b.lambda(m - 1) = 4.0 + 2.0 * std::cos(m * pi / (n + 1));
    for (int k = 1; k <= n; ++k) b.S(k - 1, m - 1) = norm * std::sin(m * pi * k / (n + 1));
  }
  b.S_inv = b.S;  // symmetric and orthonormal
  b.residual = residual_of(b);
  return b;
}

EigenBasis numeric_basis(const Eigen::MatrixXd& H) {
  EigenBasis b;
  b.H = H;
  Eigen::EigenSolver<Eigen::MatrixXd> es(H);
  if (es.info() != Eigen::Success) throw UnsupportedConfiguration("axis eigensolve failed");
  const double scale = H.cwiseAbs().maxCoeff();
  if (es.eigenvalues().imag().cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw UnsupportedConfiguration("axis factor has complex eigenvalues");
  b.lambda = es.eigenvalues().real();
  b.S = es.eigenvectors().real();
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(b.S);
  if (!(lu.rcond() > 1e-12)) throw UnsupportedConfiguration("axis factor is not diagonalizable to working accuracy");
  b.S_inv = lu.inverse();
  b.residual = residual_of(b);
  if (!(b.residual <= 1e-10)) throw UnsupportedConfiguration(fmt::format("eigen residual {:.3e} too large", b.residual));
  return b;
}

KronFactorization factor_kron(Scheme scheme, const QuadratureGrid& grid) {
  if (!has_kron_structure(scheme)) throw UnsupportedConfiguration(to_string(scheme) + " has no kron structure");
  if (grid.family() != family_of(scheme)) throw UnsupportedConfiguration("grid family does not match scheme");
  KronFactorization f;
  f.scheme = scheme;
  f.grid = std::make_shared<const QuadratureGrid>(grid);
  const bool two_d = grid.dim() == 2;
  auto sum_rule = [](double l, double m) { return l + m; };

  switch (scheme) {
    case Scheme::NinePoint:
    case Scheme::Compact: {
      if (!two_d) throw UnsupportedConfiguration("9-point scheme is two-dimensional");
      const double dx = grid.mesh().widths_x[0], dy = grid.mesh().widths_y[0];
      const double cx = 1.0 / (12 * dx * dx), cy = 1.0 / (12 * dy * dy);
      f.x = nine_point_basis(grid.nx() - 2);
      f.y = nine_point_basis(grid.ny() - 2);
      f.rule = [cx, cy](double l, double m) { return cx * (6 - l) * (m + 6) + cy * (l + 6) * (6 - m); };
      break;
    }
    case Scheme::BrambleHubbard:
      f.x = numeric_basis(interior_block(bramble_hubbard_axis_operator(grid.nx(), grid.mesh().widths_x[0])));
      if (two_d) f.y = numeric_basis(interior_block(bramble_hubbard_axis_operator(grid.ny(), grid.mesh().widths_y[0])));
      f.rule = sum_rule;
      break;
    case Scheme::Q2:
      f.x = numeric_basis(interior_block(q2_axis_operator(grid.mesh().widths_x)));
      if (two_d) f.y = numeric_basis(interior_block(q2_axis_operator(grid.mesh().widths_y)));
      f.rule = sum_rule;
      break;
    case Scheme::Q3: {
      const double h = grid.mesh().widths_x[0];
      f.x = numeric_basis(q3_axis_block(static_cast<int>(grid.mesh().widths_x.size()), h));
      if (two_d) f.y = numeric_basis(q3_axis_block(static_cast<int>(grid.mesh().widths_y.size()), h));
      f.rule = sum_rule;
      break;
    }
    case Scheme::P2:
      break;
  }
  if (!two_d) f.y = EigenBasis{};
  return f;
}

std::vector<double> solve_kron(const KronFactorization& f, const SparseMatrix& A, const std::vector<double>& rhs) {
  const QuadratureGrid& g = *f.grid;
  if (A.dim() != g.size() || static_cast<int>(rhs.size()) != g.size())
    throw DimensionMismatch("solve_kron: size mismatch with factorization grid");
  std::vector<double> x(g.size(), 0.0);
  for (int k : g.boundary_indices()) x[k] = rhs[k];

  // fold known boundary values into the interior right-hand side
  const int nxi = g.nx() - 2;
  const int nyi = g.dim() == 2 ? g.ny() - 2 : 1;
  Eigen::MatrixXd R(nyi, nxi);
  for (int k : g.interior_indices()) {
    double r = rhs[k];
    for (const auto& e : A.row(k))
      if (g.is_boundary(e.col)) r -= e.val * x[e.col];
    auto [i, j] = g.ij(k);
    R(g.dim() == 2 ? j - 1 : 0, i - 1) = r;
  }

  Eigen::MatrixXd Rh = R * f.x.S_inv.transpose();
  if (g.dim() == 2) Rh = f.y.S_inv * Rh;
  for (int j = 0; j < nyi; ++j)
    for (int i = 0; i < nxi; ++i) {
      double ev = g.dim() == 2 ? f.rule(f.x.lambda(i), f.y.lambda(j)) : f.rule(f.x.lambda(i), 0.0);
      if (ev == 0.0 || !std::isfinite(ev)) throw SingularOperator("combined eigenvalue is zero");
      Rh(j, i) /= ev;
    }
  Eigen::MatrixXd U = Rh * f.x.S.transpose();
  if (g.dim() == 2) U = f.y.S * U;

  for (int k : g.interior_indices()) {
    auto [i, j] = g.ij(k);
    x[k] = U(g.dim() == 2 ? j - 1 : 0, i - 1);
  }
  return x;
}

std::vector<double> solve_system(Scheme scheme, const System& sys) {
  const QuadratureGrid& g = *sys.op.grid;
  if (has_kron_structure(scheme)) {
    try {
      return solve_kron(factor_kron(scheme, g), sys.op.matrix, sys.rhs.values);
    } catch (const UnsupportedConfiguration&) {
      if (sys.op.dimension() <= dense_cap()) return solve_dense(sys.op.matrix, sys.rhs.values);
    }
  }
  return solve_sparse(sys.op.matrix, sys.rhs.values);
}

}  // namespace monolap
