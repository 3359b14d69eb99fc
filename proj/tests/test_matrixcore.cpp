#include <doctest.h>

#include <cstdlib>

#include "monolap/errors.hpp"
#include "monolap/matrixcore.hpp"
#include "monolap/stencils.hpp"

using namespace monolap;

namespace {

SparseMatrix from_rows(const std::vector<std::vector<double>>& rows) {
  SparseMatrix A(static_cast<int>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      if (rows[r][c] != 0.0) A.add(static_cast<int>(r), static_cast<int>(c), rows[r][c]);
  return A;
}

SparseMatrix laplace_1d(int n) {
  SparseMatrix A(n);
  A.add(0, 0, 1.0);
  A.add(n - 1, n - 1, 1.0);
  for (int i = 1; i + 1 < n; ++i) {
    A.add(i, i - 1, -1.0);
    A.add(i, i, 2.0);
    A.add(i, i + 1, -1.0);
  }
  return A;
}

}  // namespace

TEST_CASE("split partitions by sign") {
  SparseMatrix T = from_rows({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}});
  Splitting s = split(T);
  CHECK(s.positive.nnz() == 0);
  CHECK(s.negative.nnz() == 4);
  CHECK(diagonal(s.diag) == std::vector<double>{2, 2, 2});

  Splitting id = split(identity_matrix<double>(4));
  CHECK(id.positive.nnz() == 0);
  CHECK(id.negative.nnz() == 0);

  QuadratureGrid g(build_uniform_mesh(2, 2), Family::Q2);
  SparseMatrix Q = assemble_operator(Scheme::Q2, g).matrix;
  Splitting q = split(Q);
  const int knot = g.index(2, 2);
  CHECK(q.positive.row(knot).size() == 4);
  for (const auto& e : q.positive.row(knot)) CHECK(e.val == doctest::Approx(0.25 / (0.25 * 0.25)));
}

TEST_CASE("row-sum M-matrix test") {
  CHECK(is_m_matrix_rowsum(laplace_1d(6)).pass);
  QuadratureGrid g(build_uniform_mesh(6, 2), Family::FD);
  CHECK(is_m_matrix_rowsum(assemble_operator(Scheme::NinePoint, g).matrix).pass);

  Verdict v = is_m_matrix_rowsum(from_rows({{2, 1}, {-1, 2}}));
  CHECK_FALSE(v.pass);
  REQUIRE(v.witness);
  CHECK(v.witness->row == 0);
  CHECK(v.witness->col == 1);

  // all row sums zero: singular, no strictly positive row
  CHECK_FALSE(is_m_matrix_rowsum(from_rows({{1, -1}, {-1, 1}})).pass);
  // rows 1 and 2 sum to zero and never reach row 0
  Verdict closed = is_m_matrix_rowsum(from_rows({{1, 0, 0}, {0, 1, -1}, {0, -1, 1}}));
  CHECK_FALSE(closed.pass);
  REQUIRE(closed.witness);
  CHECK(closed.witness->row == 1);
  CHECK(is_m_matrix_rowsum(from_rows({{1, 0, 0}, {-1, 2, -1}, {0, -1, 1}})).pass);
}

TEST_CASE("scaled M-matrix test") {
  SparseMatrix A = from_rows({{10, 0, 0}, {-10, 2, -10}, {0, 0, 10}});
  Verdict ok = is_m_matrix_scaled(A, {0.1, 2, 0.1});
  CHECK(ok.pass);
  CHECK(ok.evidence == std::vector<double>{0.1, 2, 0.1});
  Verdict bad = is_m_matrix_scaled(A, {1, 1, 1});
  CHECK_FALSE(bad.pass);
  REQUIRE(bad.witness);
  CHECK(bad.witness->row == 1);
  CHECK(bad.witness->lhs == doctest::Approx(-18));
  CHECK(is_m_matrix_scaled(laplace_1d(5), std::vector<double>(5, 1.0)).pass == false);  // interior sums are 0
  CHECK_THROWS_AS(is_m_matrix_scaled(A, {1, 0, 1}), InvalidArgument);
}

TEST_CASE("connects") {
  SparseMatrix A = laplace_1d(6);
  CHECK(connects(A, {}, {0}).pass);
  CHECK(connects(A, {1, 2, 3, 4}, {0, 5}).pass);

  SparseMatrix B = from_rows({{1, -1, 0, 0}, {-1, 1, 0, 0}, {0, 0, 1, -1}, {0, 0, -1, 1}});
  Verdict v = connects(B, {0, 1}, {2});
  CHECK_FALSE(v.pass);
  REQUIRE(v.witness);
  CHECK(v.witness->row == 0);
  CHECK_THROWS_AS(connects(B, {7}, {0}), DimensionMismatch);
}

TEST_CASE("dense inverse oracle") {
  CHECK(min_inverse_entry(from_rows({{2, -1}, {-1, 2}})) == doctest::Approx(1.0 / 3));
  auto [mn, mx] = inverse_extremes(from_rows({{2, -1}, {-1, 2}}));
  CHECK(mn == doctest::Approx(1.0 / 3));
  CHECK(mx == doctest::Approx(2.0 / 3));
  CHECK_THROWS_AS(min_inverse_entry(from_rows({{1, 1}, {1, 1}})), SingularMatrix);

  QuadratureGrid g(build_uniform_mesh(8, 2), Family::Q2);
  CHECK(min_inverse_entry(assemble_operator(Scheme::Q2, g).matrix) >= -1e-12);
}

TEST_CASE("dense cap") {
  const int old = dense_cap();
  set_dense_cap(3);
  CHECK_THROWS_AS(dense_inverse(laplace_1d(4)), UnsupportedConfiguration);
  set_dense_cap(old);
  CHECK_NOTHROW(dense_inverse(laplace_1d(4)));
}

TEST_CASE("row sums and entrywise comparison") {
  QuadratureGrid g(build_uniform_mesh(3, 2), Family::Q2);
  SparseMatrix A = assemble_operator(Scheme::Q2, g).matrix;
  std::vector<double> s = row_sums(A);
  for (int k = 0; k < g.size(); ++k) {
    if (g.is_boundary(k))
      CHECK(s[k] == 1.0);
    else
      CHECK(std::abs(s[k]) <= 1e-12 * max_abs(A));
  }
  CHECK(mat_leq(A, A, 0.0).pass);

  QuadratureGrid f(build_uniform_mesh(4, 2), Family::FD);
  Splitting sp = split(assemble_operator(Scheme::NinePoint, f).matrix);
  CHECK(mat_leq(sp.positive, SparseMatrix(f.size()), 0.0).pass);

  SparseMatrix B = A;
  B.add(3, 4, 1.0);
  Verdict v = mat_leq(B, A, 0.0);
  CHECK_FALSE(v.pass);
  REQUIRE(v.witness);
  CHECK(v.witness->row == 3);
  CHECK(v.witness->col == 4);
}

TEST_CASE("exact comparison of surd matrices") {
  SurdMatrix A(2), B(2);
  A.add(0, 1, surd(-5, 3, 4));
  B.add(0, 1, Surd(Rational(1, 2)));
  CHECK(mat_leq(A, B).pass);
  CHECK_FALSE(mat_leq(B, A).pass);
}

TEST_CASE("describe carries the witness") {
  Verdict v = Verdict::fail(Witness{2, 3, 1.5, 0.5, "entry exceeds bound"});
  std::string d = describe(v);
  CHECK(d.find("row 2") != std::string::npos);
  CHECK(d.find("entry exceeds bound") != std::string::npos);
  CHECK(describe(Verdict::ok()).rfind("pass", 0) == 0);
}
