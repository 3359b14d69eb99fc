#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <algorithm>
#include <iosfwd>
#include <string>
#include <vector>

#include "monolap/errors.hpp"
#include "monolap/surd.hpp"

namespace monolap {

// Square sparse matrix stored as column-sorted rows. Small stencil rows make
// binary-search insertion cheap enough for assembly.
template <class T>
class BasicSparse {
 public:
  struct Entry {
    int col;
    T val;
  };

  BasicSparse() = default;
  explicit BasicSparse(int n) : rows_(n) {}

  int dim() const { return static_cast<int>(rows_.size()); }
  const std::vector<Entry>& row(int r) const { return rows_[r]; }

  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
  }

  // accumulate v into (r, c); a structural entry is created even if v is zero
  void add(int r, int c, const T& v) {
    auto& row = rows_.at(r);
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, int col) { return e.col < col; });
    if (it != row.end() && it->col == c)
      it->val = it->val + v;
    else
      row.insert(it, Entry{c, v});
  }

  void set(int r, int c, const T& v) {
    auto& row = rows_.at(r);
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, int col) { return e.col < col; });
    if (it != row.end() && it->col == c)
      it->val = v;
    else
      row.insert(it, Entry{c, v});
  }

  T get(int r, int c) const {
    const auto& row = rows_.at(r);
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, int col) { return e.col < col; });
    if (it != row.end() && it->col == c) return it->val;
    return T{};
  }

  bool has(int r, int c) const {
    const auto& row = rows_.at(r);
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, int col) { return e.col < col; });
    return it != row.end() && it->col == c;
  }

  void clear_row(int r) { rows_.at(r).clear(); }

  // drop entries equal to T{}
  void prune() {
    for (auto& row : rows_)
      row.erase(std::remove_if(row.begin(), row.end(), [](const Entry& e) { return e.val == T{}; }), row.end());
  }

 private:
  std::vector<std::vector<Entry>> rows_;
};

using SparseMatrix = BasicSparse<double>;
using SurdMatrix = BasicSparse<Surd>;

template <class T>
BasicSparse<T> identity_matrix(int n, const T& one = T(1)) {
  BasicSparse<T> I(n);
  for (int k = 0; k < n; ++k) I.add(k, k, one);
  return I;
}

template <class T>
BasicSparse<T> multiply(const BasicSparse<T>& A, const BasicSparse<T>& B) {
  if (A.dim() != B.dim()) throw DimensionMismatch("multiply: dimension mismatch");
  BasicSparse<T> C(A.dim());
  for (int r = 0; r < A.dim(); ++r)
    for (const auto& a : A.row(r))
      for (const auto& b : B.row(a.col)) C.add(r, b.col, a.val * b.val);
  return C;
}

template <class T>
BasicSparse<T> add(const BasicSparse<T>& A, const BasicSparse<T>& B) {
  if (A.dim() != B.dim()) throw DimensionMismatch("add: dimension mismatch");
  BasicSparse<T> C = A;
  for (int r = 0; r < B.dim(); ++r)
    for (const auto& b : B.row(r)) C.add(r, b.col, b.val);
  return C;
}

template <class T>
BasicSparse<T> subtract(const BasicSparse<T>& A, const BasicSparse<T>& B) {
  if (A.dim() != B.dim()) throw DimensionMismatch("subtract: dimension mismatch");
  BasicSparse<T> C = A;
  for (int r = 0; r < B.dim(); ++r)
    for (const auto& b : B.row(r)) C.add(r, b.col, T{} - b.val);
  return C;
}

template <class T>
BasicSparse<T> scale(const BasicSparse<T>& A, const T& c) {
  BasicSparse<T> C(A.dim());
  for (int r = 0; r < A.dim(); ++r)
    for (const auto& a : A.row(r)) C.add(r, a.col, c * a.val);
  return C;
}

// D^{-1} A for a diagonal given as a vector
template <class T>
BasicSparse<T> left_divide_diagonal(const std::vector<T>& d, const BasicSparse<T>& A) {
  BasicSparse<T> C(A.dim());
  for (int r = 0; r < A.dim(); ++r)
    for (const auto& a : A.row(r)) C.add(r, a.col, a.val / d[r]);
  return C;
}

template <class T>
std::vector<T> diagonal(const BasicSparse<T>& A) {
  std::vector<T> d(A.dim());
  for (int r = 0; r < A.dim(); ++r) d[r] = A.get(r, r);
  return d;
}

template <class T>
std::vector<T> apply(const BasicSparse<T>& A, const std::vector<T>& x) {
  if (static_cast<int>(x.size()) != A.dim()) throw DimensionMismatch("apply: vector size mismatch");
  std::vector<T> y(A.dim());
  for (int r = 0; r < A.dim(); ++r) {
    T s{};
    for (const auto& a : A.row(r)) s = s + a.val * x[a.col];
    y[r] = s;
  }
  return y;
}

template <class T>
std::vector<T> row_sums_of(const BasicSparse<T>& A) {
  std::vector<T> s(A.dim());
  for (int r = 0; r < A.dim(); ++r) {
    T t{};
    for (const auto& a : A.row(r)) t = t + a.val;
    s[r] = t;
  }
  return s;
}

template <class T>
BasicSparse<T> permute(const BasicSparse<T>& A, const std::vector<int>& perm) {
  BasicSparse<T> C(A.dim());
  for (int r = 0; r < A.dim(); ++r)
    for (const auto& a : A.row(r)) C.add(perm[r], perm[a.col], a.val);
  return C;
}

// principal submatrix on the given (sorted) index set
template <class T>
BasicSparse<T> restrict_to(const BasicSparse<T>& A, const std::vector<int>& idx) {
  std::vector<int> pos(A.dim(), -1);
  for (int k = 0; k < static_cast<int>(idx.size()); ++k) pos[idx[k]] = k;
  BasicSparse<T> C(static_cast<int>(idx.size()));
  for (int k = 0; k < static_cast<int>(idx.size()); ++k)
    for (const auto& a : A.row(idx[k]))
      if (pos[a.col] >= 0) C.add(k, pos[a.col], a.val);
  return C;
}

SparseMatrix to_double(const SurdMatrix& A);
double max_abs(const SparseMatrix& A);
Eigen::MatrixXd to_dense(const SparseMatrix& A);
Eigen::SparseMatrix<double> to_eigen(const SparseMatrix& A);

void write_matrix_market(std::ostream& os, const SparseMatrix& A);
void write_matrix_market(const std::string& path, const SparseMatrix& A);
SparseMatrix read_matrix_market(std::istream& is);
SparseMatrix read_matrix_market(const std::string& path);

void write_vector(std::ostream& os, const std::vector<double>& v);
void write_vector(const std::string& path, const std::vector<double>& v);

}  // namespace monolap
