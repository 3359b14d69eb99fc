#include "monolap/experiments.hpp"

#include <fmt/format.h>

#include <cmath>
#include <tuple>

#include "monolap/errors.hpp"
#include "monolap/solver.hpp"

namespace monolap {

namespace {
constexpr double kExactFloor = 1e-14;
}

TensorMesh build_mesh(const MeshSpec& spec, int cells) {
  if (spec.kind == MeshKind::Geometric) return build_geometric_mesh(cells, spec.ratio, spec.dim);
  return build_uniform_mesh(cells, spec.dim);
}

std::vector<ConvergenceRow> run_convergence(Scheme scheme, const Problem& problem, const std::vector<int>& labels,
                                            const MeshSpec& mesh) {
  if (labels.empty()) throw InvalidArgument("no grids given");
  std::vector<ConvergenceRow> rows;
  for (int label : labels) {
    const int cells = cells_for_grid_label(family_of(scheme), label);
    QuadratureGrid g(build_mesh(mesh, cells), family_of(scheme));
    System sys = assemble(scheme, g, problem);
    std::vector<double> x = solve_system(scheme, sys);

    double sq = 0.0, mx = 0.0;
    int n = 0;
    for (int k : g.interior_indices()) {
      auto [i, j] = g.ij(k);
      double e = std::abs(x[k] - problem.u(g.coords_x()[i], g.dim() == 2 ? g.coords_y()[j] : 0.0));
      sq += e * e;
      mx = std::max(mx, e);
      ++n;
    }
    ConvergenceRow r;
    r.grid = g.dim() == 2 ? fmt::format("{}x{}", label, label) : std::to_string(label);
    r.cells = cells;
    r.l2_error = std::sqrt(sq / n);
    r.linf_error = mx;
    if (!rows.empty()) {
      // h scales as 1/cells for every family
      const double lr = std::log(static_cast<double>(cells) / rows.back().cells);
      auto order = [&](double coarse, double fine) -> std::optional<double> {
        // errors at roundoff level on an exactly reproduced solution carry no order
        if (coarse > kExactFloor && fine > kExactFloor) return std::log(coarse / fine) / lr;
        return std::nullopt;
      };
      r.l2_order = order(rows.back().l2_error, r.l2_error);
      r.linf_order = order(rows.back().linf_error, r.linf_error);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string to_csv(const std::vector<ConvergenceRow>& rows) {
  auto opt = [](const std::optional<double>& v) { return v ? fmt::format("{:.2f}", *v) : std::string(); };
  std::string s = "grid,l2_error,l2_order,linf_error,linf_order\n";
  for (const auto& r : rows)
    s += fmt::format("{},{:.2e},{},{:.2e},{}\n", r.grid, r.l2_error, opt(r.l2_order), r.linf_error, opt(r.linf_order));
  return s;
}

TensorMesh scan_mesh(double ratio) {
  if (!(ratio > 0.0)) throw InvalidArgument("scan ratio must be positive");
  const double h = 1.0 / (8.0 + 2.0 * ratio), hp = ratio * h;
  std::vector<double> w{2 * h, 2 * h, 2 * hp, 2 * h, 2 * h};
  return build_explicit_mesh(w, w);
}

std::vector<ScanRow> run_constraint_scan(double step, double max_ratio) {
  if (!(step > 0.0)) throw InvalidArgument("scan step must be positive");
  if (!(max_ratio >= 1.0)) throw InvalidArgument("max ratio must be at least 1");
  std::vector<ScanRow> rows;
  for (int k = 0;; ++k) {
    const double r = 1.0 + k * step;  // no accumulated drift
    if (r > max_ratio + 1e-9) break;
    QuadratureGrid g(scan_mesh(r), Family::Q2);
    OperatorMatrix A = assemble_operator(Scheme::Q2, g);
    ScanRow row;
    row.ratio = r;
    row.h = 1.0 / (8.0 + 2.0 * r);
    row.h_prime = r * row.h;
    row.min_inverse_entry = min_inverse_entry(restrict_to(A.matrix, g.interior_indices()));
    rows.push_back(row);
  }
  return rows;
}

std::string to_csv(const std::vector<ScanRow>& rows) {
  std::string s = "ratio,h,h_prime,min_inverse_entry\n";
  for (const auto& r : rows)
    s += fmt::format("{:.2f},{:.6f},{:.6f},{:.6e}\n", r.ratio, r.h, r.h_prime, r.min_inverse_entry);
  return s;
}

std::optional<std::size_t> first_negative(const std::vector<ScanRow>& rows) {
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].min_inverse_entry < 0.0) return i;
  return std::nullopt;
}

AuditResult run_monotonicity_audit(Scheme scheme, const QuadratureGrid& grid, double rel_tol) {
  OperatorMatrix A = assemble_operator(scheme, grid);
  if (A.dimension() > dense_cap())
    throw UnsupportedConfiguration(fmt::format("dimension {} exceeds the dense cap {}", A.dimension(), dense_cap()));
  AuditResult a;
  a.dimension = A.dimension();
  std::tie(a.min_entry, a.scale) = inverse_extremes(A.matrix);
  const double bound = -rel_tol * a.scale;
  a.verdict = a.min_entry >= bound ? Verdict::ok()
                                   : Verdict::fail(Witness{-1, -1, a.min_entry, bound, "inverse entry below tolerance"});
  return a;
}

std::string report(const AuditResult& a) {
  return fmt::format("dimension,{}\nmin_inverse_entry,{:.6e}\nscale,{:.6e}\naudit,{}\n", a.dimension, a.min_entry,
                     a.scale, a.verdict.pass ? "pass" : "fail");
}

}  // namespace monolap
