#pragma once

#include <optional>
#include <string>
#include <vector>

#include "monolap/sparse.hpp"

namespace monolap {

struct Splitting {
  SparseMatrix diag;      // A_d
  SparseMatrix positive;  // A_a^+
  SparseMatrix negative;  // A_a^-
};

struct Witness {
  int row = -1;
  int col = -1;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string condition;
};

struct Verdict {
  bool pass = false;
  std::optional<Witness> witness;  // always set on failure
  std::vector<double> evidence;    // e.g. the scaling diagonal
  std::string note;

  explicit operator bool() const { return pass; }
  static Verdict ok(std::string note = {}) {
    Verdict v;
    v.pass = true;
    v.note = std::move(note);
    return v;
  }
  static Verdict fail(Witness w) {
    Verdict v;
    v.pass = false;
    v.witness = std::move(w);
    return v;
  }
};

std::string describe(const Verdict& v);

Splitting split(const SparseMatrix& A);

// tol defaults to 1e-12 * max |entry| when negative.
// The row-sum test also requires every zero-sum row to reach a positive-sum row.
Verdict is_m_matrix_rowsum(const SparseMatrix& A, double tol = -1.0);
Verdict is_m_matrix_scaled(const SparseMatrix& A, const std::vector<double>& D, double tol = -1.0);

// Every vertex of n0 reaches some vertex of nplus along edges i -> j with A(i,j) != 0.
// Breadth-first search from nplus over reversed edges; one pass covers all of n0.
template <class T>
Verdict connects(const BasicSparse<T>& A, const std::vector<int>& n0, const std::vector<int>& nplus) {
  const int n = A.dim();
  std::vector<std::vector<int>> rev(n);
  for (int i = 0; i < n; ++i)
    for (const auto& e : A.row(i))
      if (e.col != i && !(e.val == T{})) rev[e.col].push_back(i);
  std::vector<char> seen(n, 0);
  std::vector<int> queue;
  for (int j : nplus) {
    if (j < 0 || j >= n) throw DimensionMismatch("connects: index out of range");
    if (!seen[j]) {
      seen[j] = 1;
      queue.push_back(j);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (int i : rev[queue[head]])
      if (!seen[i]) {
        seen[i] = 1;
        queue.push_back(i);
      }
  for (int i : n0) {
    if (i < 0 || i >= n) throw DimensionMismatch("connects: index out of range");
    if (!seen[i]) return Verdict::fail(Witness{i, -1, 0.0, 0.0, "no path from row to the positive row-sum set"});
  }
  return Verdict::ok();
}

std::vector<double> row_sums(const SparseMatrix& A);
// A <= B + tol entrywise over the union pattern; tol < 0 means 1e-12 * max |entry| of both
Verdict mat_leq(const SparseMatrix& A, const SparseMatrix& B, double tol = -1.0);
// exact comparison
Verdict mat_leq(const SurdMatrix& A, const SurdMatrix& B);

// index sets from a row-sum vector: zero (|s| <= tol) and positive (s > tol)
void classify_row_sums(const std::vector<double>& s, double tol, std::vector<int>& n0, std::vector<int>& nplus);

// Dense oracle cap, default 10000; overridable via MONOLAP_DENSE_CAP or set_dense_cap.
int dense_cap();
void set_dense_cap(int cap);

Eigen::MatrixXd dense_inverse(const SparseMatrix& A);
double min_inverse_entry(const SparseMatrix& A);
// min entry and max |entry| of A^{-1}
std::pair<double, double> inverse_extremes(const SparseMatrix& A);

}  // namespace monolap
