#include "monolap/lorenz.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <tuple>

#include "monolap/errors.hpp"

namespace monolap {

namespace {

// split a <= 0 into z + s with z ~ eps*a so that z + s == a exactly
std::pair<double, double> exact_split(double a, double eps) {
  if (eps >= 0.5) {
    double z = eps * a;
    return {z, a - z};
  }
  double s = (1.0 - eps) * a;
  return {a - s, s};
}

bool same_pattern(const SparseMatrix& Z, const SparseMatrix& N) {
  for (int r = 0; r < N.dim(); ++r) {
    for (const auto& e : N.row(r))
      if (Z.get(r, e.col) == 0.0) return false;
    for (const auto& e : Z.row(r))
      if (e.val != 0.0 && N.get(r, e.col) == 0.0) return false;
  }
  return true;
}

}  // namespace

double ell(double eps1, double eps2) { return 4.0 * eps2 * (1.0 - eps1); }

LorenzCertificate q2_decompose(const OperatorMatrix& A, double eps1, double eps2) {
  if (!(eps1 > 0.0 && eps1 <= 1.0) || !(eps2 > 0.0 && eps2 <= 1.0))
    throw InvalidArgument("eps1 and eps2 must lie in (0, 1]");
  if (!A.grid || A.grid->family() != Family::Q2 || A.grid->dim() != 2)
    throw UnsupportedConfiguration("q2_decompose needs a 2D Q2 operator");
  const QuadratureGrid& g = *A.grid;
  if (A.dimension() != g.size()) throw DimensionMismatch("operator and grid sizes differ");

  const int n = A.dimension();
  LorenzCertificate c;
  c.Az = SparseMatrix(n);
  c.As = SparseMatrix(n);
  c.Ap = SparseMatrix(n);
  c.d = diagonal(A.matrix);
  c.d_star = c.d;
  c.e.assign(n, 1.0);
  c.eps1 = eps1;
  c.eps2 = eps2;

  for (int r = 0; r < n; ++r) {
    auto [i, j] = g.ij(r);
    for (const auto& e : A.matrix.row(r)) {
      if (e.col == r) continue;
      if (e.val > 0.0) {
        c.Ap.add(r, e.col, e.val);
        continue;
      }
      if (e.val == 0.0) continue;
      auto [ic, jc] = g.ij(e.col);
      AxisRole role = jc == j ? g.role_x(i) : g.role_y(j);
      if (ic != i && jc != j) throw UnsupportedConfiguration("Q2 operator has a non-axial entry");
      double eps = role == AxisRole::Center ? eps1 : eps2;
      auto [z, s] = exact_split(e.val, eps);
      if (z != 0.0) c.Az.add(r, e.col, z);
      if (s != 0.0) c.As.add(r, e.col, s);
    }
    if (!g.is_boundary(i, j) && g.role_x(i) == AxisRole::Knot && g.role_y(j) == AxisRole::Knot) {
      auto [ha1, ha] = g.half_widths_x(i);
      auto [hb1, hb] = g.half_widths_y(j);
      c.d_star[r] = (8 * hb * hb1 + 8 * ha * ha1) / (2 * ha * ha1 * hb * hb1);
    }
  }
  return c;
}

LorenzResult verify_lorenz(const SparseMatrix& A, const LorenzCertificate& c, bool relaxed) {
  const int n = A.dim();
  if (c.Az.dim() != n || c.As.dim() != n || static_cast<int>(c.d.size()) != n ||
      static_cast<int>(c.d_star.size()) != n || static_cast<int>(c.e.size()) != n)
    throw DimensionMismatch("certificate and matrix dimensions differ");
  const double tol = 1e-12 * max_abs(A);
  const std::vector<double>& d = relaxed ? c.d_star : c.d;
  LorenzResult out;
  out.relaxed = relaxed;

  SparseMatrix B = c.Az;
  for (int r = 0; r < n; ++r) B.add(r, r, d[r]);
  out.m_matrix = is_m_matrix_rowsum(B, tol);

  SparseMatrix P = multiply(c.Az, left_divide_diagonal(d, c.As));
  out.product = mat_leq(c.Ap, P, tol);

  std::vector<double> s = apply(A, c.e);
  out.connectivity = Verdict::ok();
  for (int r = 0; r < n; ++r)
    if (s[r] < -tol) {
      out.connectivity = Verdict::fail(Witness{r, -1, s[r], 0.0, "A e must be non-negative"});
      break;
    }
  if (out.connectivity.pass) {
    std::vector<int> n0, np;
    classify_row_sums(s, tol, n0, np);
    Splitting sp = split(A);
    out.same_pattern = same_pattern(c.Az, sp.negative);
    Verdict vz = connects(c.Az, n0, np);
    if (vz.pass) {
      out.connectivity = Verdict::ok(out.same_pattern ? "A^z has the pattern of A_a^-" : "via A^z");
    } else {
      Verdict vs = connects(c.As, n0, np);
      out.connectivity = vs.pass ? Verdict::ok("via A^s") : vz;
    }
  }
  return out;
}

MeshConstraintReport check_q2_mesh_constraints(const TensorMesh& mesh, double l) {
  if (mesh.dim() != 2) throw InvalidArgument("mesh constraints need a 2D mesh");
  if (!(l > 1.0)) throw InvalidArgument("l must exceed 1");
  QuadratureGrid g(mesh, Family::Q2);
  MeshConstraintReport rep;
  rep.ell = l;
  const double ck = 7.0 / (4 * l - 4);
  const double ce = std::sqrt(1.0 / (l - 1));
  for (int j = 1; j < g.ny() - 1; ++j)
    for (int i = 1; i < g.nx() - 1; ++i) {
      PointClass cls = g.classify(i, j);
      if (cls == PointClass::CellCenter) continue;
      LocalConstraint p;
      p.i = i;
      p.j = j;
      p.cls = cls;
      std::tie(p.ha1, p.ha) = g.half_widths_x(i);
      std::tie(p.hb1, p.hb) = g.half_widths_y(j);
      const double ma = std::max(p.ha, p.ha1), mb = std::max(p.hb, p.hb1);
      p.slack[0] = p.ha * p.ha1 - ck * mb * mb;
      p.slack[1] = p.hb * p.hb1 - ck * ma * ma;
      p.slack[2] = std::min(p.ha, p.ha1) - ce * mb;
      p.slack[3] = std::min(p.hb, p.hb1) - ce * ma;
      // relative rounding allowance so equal widths at the boundary case do not flip
      const double eps = 1e-14 * std::max(ma, mb) * std::max(ma, mb);
      p.pass = p.slack[0] >= -eps && p.slack[1] >= -eps && p.slack[2] >= -1e-14 * mb && p.slack[3] >= -1e-14 * ma;
      if (!p.pass) ++rep.failures;
      rep.points.push_back(p);
    }
  rep.pass = rep.failures == 0;
  rep.global_ratio = mesh.max_ratio();
  rep.global_ratio_pass = rep.global_ratio <= 32.0 / 25.0 + 1e-14;
  return rep;
}

std::string to_csv(const MeshConstraintReport& r) {
  std::string out = "i,j,class,h_a,h_a_minus_1,h_b,h_b_minus_1,slack_1,slack_2,slack_3,slack_4,pass\n";
  for (const auto& p : r.points)
    out += fmt::format("{},{},{},{:.12e},{:.12e},{:.12e},{:.12e},{:.6e},{:.6e},{:.6e},{:.6e},{}\n", p.i, p.j,
                       to_string(p.cls), p.ha, p.ha1, p.hb, p.hb1, p.slack[0], p.slack[1], p.slack[2], p.slack[3],
                       p.pass ? 1 : 0);
  return out;
}

Q2Certification certify_q2(const QuadratureGrid& grid, const Problem& problem, const Q2CertifyOptions& opt) {
  if (grid.family() != Family::Q2 || grid.dim() != 2) throw UnsupportedConfiguration("certify_q2 needs a 2D Q2 grid");
  Q2Certification out;
  out.constraints = check_q2_mesh_constraints(grid.mesh());
  out.eps2 = opt.eps2;
  System sys = assemble_q2(grid, problem);

  std::vector<double> ladder = opt.eps1 ? std::vector<double>{*opt.eps1} : opt.eps1_ladder;
  for (double e1 : ladder) {
    LorenzCertificate cert = q2_decompose(sys.op, e1, opt.eps2);
    LorenzResult res = verify_lorenz(sys.op.matrix, cert, true);
    out.attempts.emplace_back(e1, res);
    out.eps1 = e1;
    if (res.pass()) {
      out.pass = true;
      break;
    }
  }

  if (sys.op.dimension() <= opt.dense_check_limit) {
    auto [mn, scale] = inverse_extremes(sys.op.matrix);
    out.dense_min = mn;
    out.dense_scale = scale;
    out.dense_min_interior = min_inverse_entry(restrict_to(sys.op.matrix, grid.interior_indices()));
    if (out.pass && mn < -1e-10 * scale) {
      out.pass = false;
      out.note = "certificate passed but the dense inverse has a negative entry";
    }
  }
  return out;
}

std::string report(const Q2Certification& c) {
  std::string s;
  s += fmt::format("mesh_constraints,{},{} failing points,global_ratio {:.6f} ({})\n", c.constraints.pass ? "pass" : "fail",
                   c.constraints.failures, c.constraints.global_ratio,
                   c.constraints.global_ratio_pass ? "within 32/25" : "exceeds 32/25");
  for (const auto& [e1, r] : c.attempts) {
    s += fmt::format("lorenz eps1={} eps2={} ell={}\n", e1, c.eps2, ell(e1, c.eps2));
    s += "  m_matrix: " + describe(r.m_matrix) + "\n";
    s += "  product: " + describe(r.product) + "\n";
    s += "  connectivity: " + describe(r.connectivity) + "\n";
  }
  if (c.dense_min)
    s += fmt::format("dense_min_inverse_entry,{:.6e},interior_block,{:.6e},scale,{:.6e}\n", *c.dense_min,
                     *c.dense_min_interior, c.dense_scale);
  if (!c.note.empty()) s += "note," + c.note + "\n";
  s += fmt::format("certificate,{}", c.pass ? "pass" : "fail");
  if (c.pass) s += fmt::format(",eps1={},eps2={}", c.eps1, c.eps2);
  s += "\n";
  return s;
}

}  // namespace monolap
