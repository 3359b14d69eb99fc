#pragma once

#include <optional>
#include <string>
#include <vector>

#include "monolap/matrixcore.hpp"
#include "monolap/stencils.hpp"

namespace monolap {

struct LorenzCertificate {
  SparseMatrix Az;  // A^z <= 0
  SparseMatrix As;  // A^s <= 0, Az + As = negative off-diagonal part
  SparseMatrix Ap;  // positive off-diagonal part
  std::vector<double> d;       // A_d
  std::vector<double> d_star;  // A_d*, >= d
  std::vector<double> e;       // test vector, all ones by default
  double eps1 = 0.0;
  double eps2 = 0.0;
};

struct LorenzResult {
  Verdict m_matrix;     // A_d(*) + A^z is a nonsingular M-matrix
  Verdict product;      // A_a^+ <= A^z A_d(*)^{-1} A^s
  Verdict connectivity; // A e >= 0 and A^z or A^s connects N0(Ae) with N+(Ae)
  bool same_pattern = false;  // A^z has the sparsity pattern of A_a^-
  bool relaxed = false;

  bool pass() const { return m_matrix.pass && product.pass && connectivity.pass; }
};

// l(eps1, eps2) = 4 eps2 (1 - eps1)
double ell(double eps1, double eps2);

LorenzCertificate q2_decompose(const OperatorMatrix& A, double eps1, double eps2);
LorenzResult verify_lorenz(const SparseMatrix& A, const LorenzCertificate& cert, bool relaxed);

struct LocalConstraint {
  int i = 0, j = 0;
  PointClass cls = PointClass::Knot;
  double ha = 0, ha1 = 0, hb = 0, hb1 = 0;  // half widths: x right/left, y upper/lower
  double slack[4] = {0, 0, 0, 0};           // >= 0 when the inequality holds
  bool pass = true;
};

struct MeshConstraintReport {
  double ell = 4.0;
  std::vector<LocalConstraint> points;
  bool pass = true;  // every local inequality holds
  double global_ratio = 1.0;
  bool global_ratio_pass = true;  // global ratio <= 32/25
  int failures = 0;
};

// The four local inequalities at interior knots and edge centers, parametrized by l (default: the l -> 4 limit).
MeshConstraintReport check_q2_mesh_constraints(const TensorMesh& mesh, double ell = 4.0);
std::string to_csv(const MeshConstraintReport& r);

struct Q2CertifyOptions {
  std::optional<double> eps1;  // fixed value; otherwise the ladder below is tried in order
  double eps2 = 1.0;
  std::vector<double> eps1_ladder{0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625};
  int dense_check_limit = 900;  // dense cross-check when dimension is at most this
};

struct Q2Certification {
  MeshConstraintReport constraints;
  std::vector<std::pair<double, LorenzResult>> attempts;  // eps1 tried, in order
  double eps1 = 0.0;
  double eps2 = 1.0;
  std::optional<double> dense_min;           // min of the full inverse
  std::optional<double> dense_min_interior;  // min of the interior block inverse
  double dense_scale = 0.0;
  bool pass = false;
  std::string note;
};

Q2Certification certify_q2(const QuadratureGrid& grid, const Problem& problem, const Q2CertifyOptions& opt = {});
std::string report(const Q2Certification& c);

}  // namespace monolap
