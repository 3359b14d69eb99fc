#include "monolap/sparse.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <sstream>

namespace monolap {

SparseMatrix to_double(const SurdMatrix& A) {
  SparseMatrix C(A.dim());
  for (int r = 0; r < A.dim(); ++r)
    for (const auto& a : A.row(r)) C.add(r, a.col, a.val.value());
  return C;
}

double max_abs(const SparseMatrix& A) {
  double m = 0.0;
  for (int r = 0; r < A.dim(); ++r)
    for (const auto& a : A.row(r)) m = std::max(m, std::abs(a.val));
  return m;
}

Eigen::MatrixXd to_dense(const SparseMatrix& A) {
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(A.dim(), A.dim());
  for (int r = 0; r < A.dim(); ++r)
    for (const auto& a : A.row(r)) D(r, a.col) = a.val;
  return D;
}

Eigen::SparseMatrix<double> to_eigen(const SparseMatrix& A) {
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(A.nnz());
  for (int r = 0; r < A.dim(); ++r)
    for (const auto& a : A.row(r)) t.emplace_back(r, a.col, a.val);
  Eigen::SparseMatrix<double> S(A.dim(), A.dim());
  S.setFromTriplets(t.begin(), t.end());
  S.makeCompressed();
  return S;
}

void write_matrix_market(std::ostream& os, const SparseMatrix& A) {
  os << "%%MatrixMarket matrix coordinate real general\n";
  os << A.dim() << ' ' << A.dim() << ' ' << A.nnz() << '\n';
  for (int r = 0; r < A.dim(); ++r)
    for (const auto& a : A.row(r)) os << fmt::format("{} {} {:.17g}\n", r + 1, a.col + 1, a.val);
}

void write_matrix_market(const std::string& path, const SparseMatrix& A) {
  std::ofstream f(path);
  if (!f) throw InvalidArgument("cannot open for writing: " + path);
  write_matrix_market(f, A);
}

SparseMatrix read_matrix_market(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("%%MatrixMarket", 0) != 0)
    throw InvalidArgument("missing Matrix Market header");
  std::istringstream hdr(line);
  std::string banner, object, format, field, symmetry;
  hdr >> banner >> object >> format >> field >> symmetry;
  if (object != "matrix" || format != "coordinate" || field != "real" || symmetry != "general")
    throw InvalidArgument("unsupported Matrix Market variant: " + line);
  while (std::getline(is, line))
    if (!line.empty() && line[0] != '%') break;
  std::istringstream sz(line);
  long rows = 0, cols = 0, nnz = 0;
  if (!(sz >> rows >> cols >> nnz) || rows != cols || rows < 0 || nnz < 0)
    throw InvalidArgument("bad Matrix Market size line: " + line);
  SparseMatrix A(static_cast<int>(rows));
  for (long k = 0; k < nnz; ++k) {
    long r, c;
    double v;
    if (!(is >> r >> c >> v)) throw InvalidArgument("truncated Matrix Market data");
    if (r < 1 || r > rows || c < 1 || c > cols) throw InvalidArgument("Matrix Market index out of range");
    A.add(static_cast<int>(r - 1), static_cast<int>(c - 1), v);
  }
  return A;
}

SparseMatrix read_matrix_market(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidArgument("cannot open: " + path);
  return read_matrix_market(f);
}

void write_vector(std::ostream& os, const std::vector<double>& v) {
  for (double x : v) os << fmt::format("{:.17g}\n", x);
}

void write_vector(const std::string& path, const std::vector<double>& v) {
  std::ofstream f(path);
  if (!f) throw InvalidArgument("cannot open for writing: " + path);
  write_vector(f, v);
}

}  // namespace monolap
