// Acceptance run: one line per criterion, tolerances fixed below.
// Exit status is 0 when every criterion passes, or when each failing one is in the
// documented known set and fails for the analyzed reason (see README).

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "monolap/experiments.hpp"
#include "monolap/lorenz.hpp"
#include "monolap/q3chain.hpp"
#include "monolap/solver.hpp"

using namespace monolap;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;     // printed after the verdict
  std::set<std::string> failures;     // tags of failing sub-checks
  bool known_cause = false;           // failure matches the documented analysis

  void check(bool ok, const std::string& tag, const std::string& detail) {
    if (!ok) {
      pass = false;
      failures.insert(tag);
    }
    notes.push_back(fmt::format("{} {}: {}", ok ? "ok  " : "FAIL", tag, detail));
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool within_factor(double got, double want, double f) { return got <= want * f && got >= want / f; }

QuadratureGrid grid_for(Scheme s, int label) {
  return QuadratureGrid(build_uniform_mesh(cells_for_grid_label(family_of(s), label), 2), family_of(s));
}

// --- criterion 1
Outcome c1() {
  Outcome o;
  auto t0 = Clock::now();
  auto rows = run_convergence(Scheme::Q2, get_problem("p11"), {7, 15, 31, 63});
  const double dt = seconds_since(t0);
  const double want[] = {4.01, 4.01, 4.00};
  for (int k = 1; k < 4; ++k) {
    const double p = rows[k].linf_order.value_or(NAN);
    o.check(std::abs(p - want[k - 1]) <= 0.1, "order " + rows[k].grid, fmt::format("{:.2f} vs {:.2f} +-0.1", p, want[k - 1]));
  }
  o.check(within_factor(rows[3].linf_error, 1.17e-5, 1.5), "linf 63x63", fmt::format("{:.3e} vs 1.17e-05 within 1.5x", rows[3].linf_error));
  o.check(dt <= 10.0, "runtime", fmt::format("{:.2f} s <= 10 s", dt));
  return o;
}

// --- criterion 2
Outcome c2() {
  Outcome o;
  auto rows = run_convergence(Scheme::NinePoint, get_problem("laplace-log"), {7, 15});
  o.check(within_factor(rows[1].linf_error, 5.51e-11, 1.5), "linf 15x15", fmt::format("{:.3e} vs 5.51e-11 within 1.5x", rows[1].linf_error));
  const double p = rows[1].linf_order.value_or(NAN);
  o.check(p >= 5.8, "order 7->15", fmt::format("{:.2f} >= 5.8", p));
  return o;
}

// --- criterion 3
Outcome c3() {
  Outcome o;
  auto rows = run_convergence(Scheme::Q3, get_problem("p11"), {23, 47});
  const double p = rows[1].linf_order.value_or(NAN);
  o.check(std::abs(p - 5.0) <= 0.15, "order 8->16 cells", fmt::format("{:.2f} vs 5.00 +-0.15", p));
  o.check(within_factor(rows[1].linf_error, 3.52e-6, 1.5), "linf 16x16 cells", fmt::format("{:.3e} vs 3.52e-06 within 1.5x", rows[1].linf_error));
  return o;
}

// --- criterion 4
struct Printed {
  Scheme scheme;
  const char* problem;
  double linf;
  double order;
};

Outcome c4() {
  Outcome o;
  const Printed table[] = {
      {Scheme::P2, "laplace-log", 1.41e-8, 3.85},       {Scheme::Compact, "laplace-log", 2.37e-13, 1.90},
      {Scheme::BrambleHubbard, "laplace-log", 2.77e-8, 3.80}, {Scheme::P2, "p11", 3.52e-5, 4.01},
      {Scheme::Compact, "p11", 1.47e-6, 4.00},          {Scheme::BrambleHubbard, "p11", 7.89e-6, 4.74},
      {Scheme::P2, "p12", 1.11e-3, 4.04},               {Scheme::Compact, "p12", 5.11e-5, 3.95},
      {Scheme::BrambleHubbard, "p12", 1.20e-3, 3.32},
  };
  double laplace_compact_31 = NAN;
  for (const Printed& t : table) {
    auto rows = run_convergence(t.scheme, get_problem(t.problem), {7, 15, 31, 63});
    const std::string tag = fmt::format("{} {} 63x63", to_string(t.scheme), t.problem);
    const double p = rows[3].linf_order.value_or(NAN);
    o.check(within_factor(rows[3].linf_error, t.linf, 2.0), tag + " linf",
            fmt::format("{:.3e} vs {:.2e} within 2x", rows[3].linf_error, t.linf));
    o.check(std::abs(p - t.order) <= 0.3, tag + " order", fmt::format("{:.2f} vs {:.2f} +-0.3", p, t.order));
    if (t.scheme == Scheme::Compact && std::string(t.problem) == "laplace-log") laplace_compact_31 = rows[2].linf_error;
  }
  // known: the printed 63x63 compact Laplace cell sits at the rounding floor
  const std::set<std::string> expected{"compact laplace-log 63x63 linf", "compact laplace-log 63x63 order"};
  if (!o.pass) {
    bool subset = std::includes(expected.begin(), expected.end(), o.failures.begin(), o.failures.end());
    o.known_cause = subset && laplace_compact_31 < 1e-12;
    o.notes.push_back(fmt::format("note: 31x31 compact Laplace error {:.2e}; both printed and computed 63x63 values are rounding-level",
                                  laplace_compact_31));
  }
  return o;
}

// --- criterion 5
Outcome c5() {
  Outcome o;
  auto t0 = Clock::now();
  struct Case {
    Scheme s;
    int label;
  };
  for (const Case& c : {Case{Scheme::NinePoint, 15}, Case{Scheme::Compact, 15}, Case{Scheme::BrambleHubbard, 15},
                        Case{Scheme::P2, 15}, Case{Scheme::Q2, 15}, Case{Scheme::Q3, 11}}) {
    AuditResult a = run_monotonicity_audit(c.s, grid_for(c.s, c.label), 1e-12);
    o.check(a.min_entry >= -1e-12 * a.scale, fmt::format("{} {}x{}", to_string(c.s), c.label, c.label),
            fmt::format("min {:.3e}, scale {:.3e}", a.min_entry, a.scale));
  }
  const double dt = seconds_since(t0);
  o.check(dt <= 30.0, "runtime", fmt::format("{:.2f} s <= 30 s", dt));
  return o;
}

// --- criterion 6
// rows of each class where A_a^+ exceeds A^z A_d*^-1 A^s
std::map<PointClass, int> product_failures(const QuadratureGrid& g, const LorenzCertificate& c) {
  SparseMatrix M = multiply(c.Az, left_divide_diagonal(c.d_star, c.As));
  std::map<PointClass, int> out;
  for (int k : g.interior_indices()) {
    bool bad = false;
    for (const auto& e : c.Ap.row(k)) bad = bad || e.val - M.get(k, e.col) > 1e-12 * e.val;
    if (bad) {
      auto [i, j] = g.ij(k);
      ++out[g.classify(i, j)];
    }
  }
  return out;
}

Outcome c6() {
  Outcome o;
  const Problem p = get_problem("p11");
  Q2CertifyOptions fixed;
  fixed.eps1 = 0.5;
  fixed.eps2 = 1.0;
  bool analyzed = true;
  struct Case {
    const char* tag;
    TensorMesh mesh;
  };
  for (const Case& c : {Case{"uniform 8x8", build_uniform_mesh(8, 2)}, Case{"geometric 1.01 8x8", build_geometric_mesh(8, 1.01)}}) {
    QuadratureGrid g(c.mesh, Family::Q2);
    Q2Certification r = certify_q2(g, p, fixed);
    std::string detail = fmt::format("(1/2, 1): {}", r.pass ? "pass" : "fail");
    if (!r.pass && !r.attempts.empty()) {
      const LorenzResult& lr = r.attempts.front().second;
      detail += fmt::format(", m_matrix {}, product {}, connectivity {}", lr.m_matrix.pass ? "pass" : "fail",
                            lr.product.pass ? "pass" : "fail", lr.connectivity.pass ? "pass" : "fail");
      auto fails = product_failures(g, q2_decompose(assemble_operator(Scheme::Q2, g), 0.5, 1.0));
      for (const auto& [cls, n] : fails) detail += fmt::format(", {} {} rows", n, to_string(cls));
      const int interior_knots = (g.nx() / 2 - 1) * (g.ny() / 2 - 1);
      // every interior knot falls short (l = 2 < 11/4); edge rows hold with equality on the uniform mesh
      analyzed = analyzed && lr.m_matrix.pass && lr.connectivity.pass && r.constraints.pass &&
                 fails[PointClass::Knot] == interior_knots && fails.count(PointClass::CellCenter) == 0;
      if (std::string(c.tag).rfind("uniform", 0) == 0) analyzed = analyzed && fails.size() == 1;
    }
    o.check(r.pass, std::string(c.tag) + " certificate", detail);

    Q2Certification ladder = certify_q2(g, p);
    o.notes.push_back(fmt::format("info {}: eps1 ladder {} at eps1 = {}", c.tag, ladder.pass ? "passes" : "fails", ladder.eps1));
    analyzed = analyzed && ladder.pass;
  }
  try {
    QuadratureGrid an(build_explicit_mesh(std::vector<double>(8, 0.125), std::vector<double>(8, 0.175)), Family::Q2);
    Q2Certification r = certify_q2(an, p, fixed);
    o.check(!r.pass && !r.constraints.pass, "anisotropic y = 1.4x reported",
            fmt::format("certificate {}, {} failing constraint points", r.pass ? "pass" : "fail", r.constraints.failures));
  } catch (const std::exception& e) {
    o.check(false, "anisotropic y = 1.4x reported", std::string("threw: ") + e.what());
  }
  const std::set<std::string> expected{"geometric 1.01 8x8 certificate", "uniform 8x8 certificate"};
  if (!o.pass)
    o.known_cause = analyzed && std::includes(expected.begin(), expected.end(), o.failures.begin(), o.failures.end());
  return o;
}

// --- criterion 7
Outcome c7() {
  Outcome o;
  auto rows = run_constraint_scan(0.05, 6.0);
  auto first = first_negative(rows);
  o.check(first.has_value(), "negative entry found", first ? "yes" : "no");
  if (first) {
    const ScanRow& r = rows[*first];
    o.check(std::abs(r.ratio - 5.35) <= 0.05 + 1e-9, "first ratio", fmt::format("{:.2f} vs 5.35 +-0.05", r.ratio));
    o.check(std::abs(r.min_inverse_entry / -6.14e-8 - 1.0) <= 0.05, "first value",
            fmt::format("{:.4e} vs -6.14e-08 within 5%", r.min_inverse_entry));
  }
  return o;
}

// --- criterion 8
Outcome c8() {
  Outcome o;
  for (int cells : {4, 8, 16}) {
    QuadratureGrid g(build_uniform_mesh(cells, 1), Family::Q3);
    SurdMatrix target = q3_chain_target(g);
    ChainCertificate c = verify_chain(target, build_chain_1d(g));
    const double tol = 1e-12 * max_abs(to_double(target));
    const double worst = *std::max_element(c.max_violation.begin(), c.max_violation.end());
    o.check(c.conclusion && worst <= tol, fmt::format("{} cells", cells),
            fmt::format("conclusion {}, max lhs-rhs {:.3e}", c.conclusion ? "pass" : "fail", worst));
  }
  QuadratureGrid g(build_uniform_mesh(8, 1), Family::Q3);
  auto steps = build_chain_1d(g);
  SurdMatrix Z = steps[1].Z;
  // left interior point of the second cell, entry toward its knot
  const int left = 4;
  const bool located = Z.get(left, left - 1) == Surd(Rational(-11, 10));
  Z.set(left, left - 1, Surd(-3));
  steps[1] = make_step(steps[1].A, Z);
  ChainCertificate c = verify_chain(q3_chain_target(g), steps);
  const Verdict& v = c.inequalities.at(1);
  const bool witness_ok = !v.pass && v.witness && v.witness->row == left && v.witness->col == left - 1;
  o.check(located && !c.conclusion && witness_ok, "perturbed Z1 rejected",
          v.witness ? fmt::format("witness row {} col {}", v.witness->row, v.witness->col) : std::string("no witness"));
  return o;
}

// --- criterion 9
Outcome c9() {
  Outcome o;
  HiddenResolution r = resolve_hidden_coefficients(QuadratureGrid(build_uniform_mesh(4, 2), Family::Q3));
  o.check(true, "hidden coefficients",
          fmt::format("a={} b={} c={} d={}", r.values.a.str(), r.values.b.str(), r.values.c.str(),
                      r.values.d.str()));
  for (int cells : {2, 4}) {
    QuadratureGrid g(build_uniform_mesh(cells, 2), Family::Q3);
    ChainCertificate c = verify_chain(q3_chain_target(g), build_chain_2d(g, r.values));
    auto [mn, scale] = inverse_extremes(assemble_operator(Scheme::Q3, g).matrix);
    o.check(c.conclusion, fmt::format("{0}x{0} chain", cells), c.conclusion ? "pass" : "fail");
    o.check(mn >= -1e-12 * scale, fmt::format("{0}x{0} dense", cells), fmt::format("min {:.3e}, scale {:.3e}", mn, scale));
  }
  return o;
}

// --- criterion 10
Outcome c10() {
  Outcome o;
  const Scheme all[] = {Scheme::NinePoint, Scheme::Compact, Scheme::BrambleHubbard, Scheme::P2, Scheme::Q2, Scheme::Q3};

  double worst_rowsum = 0.0;
  bool split_ok = true;
  for (Scheme s : all) {
    std::vector<TensorMesh> meshes{build_uniform_mesh(s == Scheme::Q3 ? 3 : 6, 2)};
    if (s == Scheme::Q2) meshes.push_back(build_geometric_mesh(6, 1.1));
    for (const TensorMesh& m : meshes) {
      QuadratureGrid g(m, family_of(s));
      SparseMatrix A = assemble_operator(s, g).matrix;
      std::vector<double> sums = row_sums(A);
      for (int k : g.interior_indices()) worst_rowsum = std::max(worst_rowsum, std::abs(sums[k]) / max_abs(A));
      Splitting sp = split(A);
      SparseMatrix R = add(add(sp.diag, sp.positive), sp.negative);
      for (int r = 0; r < A.dim(); ++r)
        for (const auto& e : A.row(r)) split_ok = split_ok && R.get(r, e.col) == e.val;
    }
  }
  o.check(worst_rowsum <= 1e-12, "constant annihilation", fmt::format("max relative interior row sum {:.2e}", worst_rowsum));
  o.check(split_ok, "split reconstruction", split_ok ? "exact" : "mismatch");

  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst_kron = 0.0;
  for (Scheme s : {Scheme::NinePoint, Scheme::Compact, Scheme::BrambleHubbard, Scheme::Q2, Scheme::Q3})
    for (int label : s == Scheme::Q3 ? std::vector<int>{5, 11, 23} : std::vector<int>{7, 15, 31}) {
      QuadratureGrid g = grid_for(s, label);
      SparseMatrix A = assemble_operator(s, g).matrix;
      std::vector<double> b(g.size());
      for (auto& v : b) v = u(rng);
      auto x = solve_kron(factor_kron(s, g), A, b);
      auto y = solve_dense(A, b);
      double d = 0.0, n = 0.0;
      for (std::size_t k = 0; k < x.size(); ++k) {
        d = std::max(d, std::abs(x[k] - y[k]));
        n = std::max(n, std::abs(y[k]));
      }
      worst_kron = std::max(worst_kron, d / n);
    }
  o.check(worst_kron <= 1e-9, "kron vs dense", fmt::format("max relative difference {:.2e}", worst_kron));

  double worst_quad = 0.0;
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; a + b <= 3; ++b) {
      auto f = [&](double x, double y) { return std::pow(x, a) * std::pow(y, b); };
      const double q = 2.0 / 3 * (f(1, 0) + f(-1, 0) + f(0, 1) + f(0, -1)) + 4.0 / 3 * f(0, 0);
      const double ex = (a % 2 ? 0.0 : 2.0 / (a + 1)) * (b % 2 ? 0.0 : 2.0 / (b + 1));
      worst_quad = std::max(worst_quad, std::abs(q - ex));
    }
  o.check(worst_quad <= 1e-14, "cubic quadrature exactness", fmt::format("max error {:.1e}", worst_quad));

  int mismatches = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + trial % 14;
    std::bernoulli_distribution edge(0.15);
    SparseMatrix A(n);
    std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i) {
      A.add(i, i, 1.0);
      reach[i][i] = 1;
      for (int j = 0; j < n; ++j)
        if (i != j && edge(rng)) {
          A.add(i, j, -1.0);
          reach[i][j] = 1;
        }
    }
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        if (reach[i][k])
          for (int j = 0; j < n; ++j) reach[i][j] |= reach[k][j];
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const int cut = 1 + static_cast<int>(rng() % static_cast<unsigned>(n - 1));
    std::vector<int> np(perm.begin(), perm.begin() + cut), n0(perm.begin() + cut, perm.end());
    bool brute = std::all_of(n0.begin(), n0.end(), [&](int i) {
      return std::any_of(np.begin(), np.end(), [&](int j) { return reach[i][j] != 0; });
    });
    if (brute != connects(A, n0, np).pass) ++mismatches;
  }
  o.check(mismatches == 0, "reachability vs closure", fmt::format("{} mismatches in 300 random graphs", mismatches));
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"Q2 convergence, uniform", c1},         {"9-point Laplace convergence", c2},
      {"Q3 convergence", c3},                  {"P2, compact and Bramble-Hubbard convergence", c4},
      {"monotonicity audits", c5},             {"Q2 certificate at (1/2, 1)", c6},
      {"constraint-necessity scan", c7},       {"Q3 chain, 1D", c8},
      {"Q3 chain, 2D", c9},                    {"property suites", c10},
  };
  int passed = 0, known = 0, unexplained = 0;
  std::vector<std::string> detail;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.notes.push_back(std::string("FAIL exception: ") + e.what());
    }
    std::string tag = o.pass ? "PASS" : (o.known_cause ? "FAIL (known, analyzed)" : "FAIL");
    fmt::print("criterion {:>2}: {}  {}\n", k + 1, tag, criteria[k].first);
    for (const auto& n : o.notes) detail.push_back(fmt::format("  [{}] {}", k + 1, n));
    if (o.pass)
      ++passed;
    else if (o.known_cause)
      ++known;
    else
      ++unexplained;
  }
  fmt::print("\n{} passed, {} known failures, {} unexplained failures\n\n", passed, known, unexplained);
  for (const auto& d : detail) fmt::print("{}\n", d);
  return unexplained == 0 ? 0 : 1;
}
