#pragma once

#include <optional>
#include <string>
#include <vector>

#include "monolap/matrixcore.hpp"
#include "monolap/stencils.hpp"

namespace monolap {

enum class MeshKind { Uniform, Geometric };

struct MeshSpec {
  MeshKind kind = MeshKind::Uniform;
  double ratio = 1.0;  // geometric growth factor
  int dim = 2;
};

TensorMesh build_mesh(const MeshSpec& spec, int cells);

struct ConvergenceRow {
  std::string grid;  // "7x7", or "7" in 1D
  int cells = 0;
  double l2_error = 0.0;
  std::optional<double> l2_order;
  double linf_error = 0.0;
  std::optional<double> linf_order;
};

// Grid labels count interior points per axis (7, 15, 31, ... or 5, 11, 23, ... for Q3).
std::vector<ConvergenceRow> run_convergence(Scheme scheme, const Problem& problem, const std::vector<int>& labels,
                                            const MeshSpec& mesh = {});
std::string to_csv(const std::vector<ConvergenceRow>& rows);

struct ScanRow {
  double ratio = 1.0;  // h'/h
  double h = 0.0;
  double h_prime = 0.0;
  double min_inverse_entry = 0.0;
};

// 5x5-cell Q2 mesh: four outer cells of width 2h and a middle cell of width 2h' per axis.
TensorMesh scan_mesh(double ratio);
std::vector<ScanRow> run_constraint_scan(double step, double max_ratio);
std::string to_csv(const std::vector<ScanRow>& rows);
// index of the first row with a negative entry, if any
std::optional<std::size_t> first_negative(const std::vector<ScanRow>& rows);

struct AuditResult {
  Verdict verdict;
  double min_entry = 0.0;
  double scale = 0.0;  // max |entry| of the inverse
  int dimension = 0;
};

// Dense inverse of the full operator, boundary rows included.
AuditResult run_monotonicity_audit(Scheme scheme, const QuadratureGrid& grid, double rel_tol = 1e-12);
std::string report(const AuditResult& a);

}  // namespace monolap
