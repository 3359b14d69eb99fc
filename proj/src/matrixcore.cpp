#include "monolap/matrixcore.hpp"

#include <fmt/format.h>

#include <cmath>
#include <cstdlib>
#include <limits>

namespace monolap {

namespace {

int g_dense_cap = -1;

double default_tol(const SparseMatrix& A, double tol) { return tol >= 0.0 ? tol : 1e-12 * max_abs(A); }

// sign pattern shared by both M-matrix tests
std::optional<Witness> sign_pattern(const SparseMatrix& A) {
  for (int r = 0; r < A.dim(); ++r) {
    bool diag = false;
    for (const auto& e : A.row(r)) {
      if (e.col == r) {
        diag = true;
        if (!(e.val > 0.0)) return Witness{r, r, e.val, 0.0, "diagonal entry must be positive"};
      } else if (e.val > 0.0) {
        return Witness{r, e.col, e.val, 0.0, "off-diagonal entry must be non-positive"};
      }
    }
    if (!diag) return Witness{r, r, 0.0, 0.0, "diagonal entry must be positive"};
  }
  return std::nullopt;
}

Eigen::PartialPivLU<Eigen::MatrixXd> factor_dense(const SparseMatrix& A) {
  if (A.dim() > dense_cap())
    throw UnsupportedConfiguration(
        fmt::format("dense oracle: dimension {} exceeds cap {} (raise with --dense-cap)", A.dim(), dense_cap()));
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(to_dense(A));
  double rc = lu.rcond();
  if (!(rc > 1e-15) || !std::isfinite(rc)) throw SingularMatrix(fmt::format("matrix is singular (rcond {:.3e})", rc));
  return lu;
}

}  // namespace

std::string describe(const Verdict& v) {
  if (v.pass) return v.note.empty() ? "pass" : "pass (" + v.note + ")";
  if (!v.witness) return "fail";
  const Witness& w = *v.witness;
  return fmt::format("fail at row {} col {}: {} (lhs {:.6e}, rhs {:.6e})", w.row, w.col, w.condition, w.lhs, w.rhs);
}

Splitting split(const SparseMatrix& A) {
  Splitting s{SparseMatrix(A.dim()), SparseMatrix(A.dim()), SparseMatrix(A.dim())};
  for (int r = 0; r < A.dim(); ++r)
    for (const auto& e : A.row(r)) {
      if (e.col == r)
        s.diag.add(r, r, e.val);
      else if (e.val > 0.0)
        s.positive.add(r, e.col, e.val);
      else if (e.val < 0.0)
        s.negative.add(r, e.col, e.val);
    }
  return s;
}

std::vector<double> row_sums(const SparseMatrix& A) { return row_sums_of(A); }

Verdict is_m_matrix_rowsum(const SparseMatrix& A, double tol) {
  tol = default_tol(A, tol);
  if (auto w = sign_pattern(A)) return Verdict::fail(*w);
  bool strict = false;
  auto s = row_sums(A);
  for (int r = 0; r < A.dim(); ++r) {
    if (s[r] < -tol) return Verdict::fail(Witness{r, -1, s[r], 0.0, "row sum must be non-negative"});
    if (s[r] > tol) strict = true;
  }
  if (!strict) return Verdict::fail(Witness{-1, -1, 0.0, 0.0, "no row with positive sum"});
  // a zero-sum row set closed off from the positive rows is a singular block
  std::vector<int> n0, nplus;
  classify_row_sums(s, tol, n0, nplus);
  return connects(A, n0, nplus);
}

Verdict is_m_matrix_scaled(const SparseMatrix& A, const std::vector<double>& D, double tol) {
  if (static_cast<int>(D.size()) != A.dim()) throw DimensionMismatch("scaling diagonal has wrong length");
  for (double d : D)
    if (!(d > 0.0)) throw InvalidArgument("scaling diagonal must be positive");
  tol = default_tol(A, tol);
  if (auto w = sign_pattern(A)) return Verdict::fail(*w);
  for (int r = 0; r < A.dim(); ++r) {
    double s = 0.0;
    for (const auto& e : A.row(r)) s += e.val * D[e.col];
    if (!(s > tol)) return Verdict::fail(Witness{r, -1, s, 0.0, "row sum of A*D must be positive"});
  }
  Verdict v = Verdict::ok();
  v.evidence = D;
  return v;
}

Verdict mat_leq(const SparseMatrix& A, const SparseMatrix& B, double tol) {
  if (A.dim() != B.dim()) throw DimensionMismatch("mat_leq: dimension mismatch");
  if (tol < 0.0) tol = 1e-12 * std::max(max_abs(A), max_abs(B));
  for (int r = 0; r < A.dim(); ++r) {
    // walk the union of both sorted rows
    const auto& ra = A.row(r);
    const auto& rb = B.row(r);
    std::size_t ia = 0, ib = 0;
    while (ia < ra.size() || ib < rb.size()) {
      int ca = ia < ra.size() ? ra[ia].col : std::numeric_limits<int>::max();
      int cb = ib < rb.size() ? rb[ib].col : std::numeric_limits<int>::max();
      int c = std::min(ca, cb);
      double a = ca == c ? ra[ia++].val : 0.0;
      double b = cb == c ? rb[ib++].val : 0.0;
      if (a > b + tol) return Verdict::fail(Witness{r, c, a, b, "entry exceeds bound"});
    }
  }
  return Verdict::ok();
}

Verdict mat_leq(const SurdMatrix& A, const SurdMatrix& B) {
  if (A.dim() != B.dim()) throw DimensionMismatch("mat_leq: dimension mismatch");
  for (int r = 0; r < A.dim(); ++r) {
    const auto& ra = A.row(r);
    const auto& rb = B.row(r);
    std::size_t ia = 0, ib = 0;
    while (ia < ra.size() || ib < rb.size()) {
      int ca = ia < ra.size() ? ra[ia].col : std::numeric_limits<int>::max();
      int cb = ib < rb.size() ? rb[ib].col : std::numeric_limits<int>::max();
      int c = std::min(ca, cb);
      Surd a = ca == c ? ra[ia++].val : Surd{};
      Surd b = cb == c ? rb[ib++].val : Surd{};
      if (a > b) return Verdict::fail(Witness{r, c, a.value(), b.value(), "entry exceeds bound: " + a.str() + " > " + b.str()});
    }
  }
  return Verdict::ok();
}

void classify_row_sums(const std::vector<double>& s, double tol, std::vector<int>& n0, std::vector<int>& nplus) {
  n0.clear();
  nplus.clear();
  for (int r = 0; r < static_cast<int>(s.size()); ++r) {
    if (std::abs(s[r]) <= tol)
      n0.push_back(r);
    else if (s[r] > tol)
      nplus.push_back(r);
  }
}

int dense_cap() {
  if (g_dense_cap > 0) return g_dense_cap;
  if (const char* env = std::getenv("MONOLAP_DENSE_CAP")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 10000;
}

void set_dense_cap(int cap) { g_dense_cap = cap; }

Eigen::MatrixXd dense_inverse(const SparseMatrix& A) {
  auto lu = factor_dense(A);
  return lu.solve(Eigen::MatrixXd::Identity(A.dim(), A.dim()));
}

std::pair<double, double> inverse_extremes(const SparseMatrix& A) {
  Eigen::MatrixXd inv = dense_inverse(A);
  if (!inv.allFinite()) throw SingularMatrix("inverse has non-finite entries");
  return {inv.minCoeff(), inv.cwiseAbs().maxCoeff()};
}

double min_inverse_entry(const SparseMatrix& A) { return inverse_extremes(A).first; }

}  // namespace monolap
