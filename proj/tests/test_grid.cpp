#include <doctest.h>

#include <cmath>
#include <map>

#include "monolap/errors.hpp"
#include "monolap/grid.hpp"

using namespace monolap;

TEST_CASE("uniform mesh widths") {
  TensorMesh m = build_uniform_mesh(4, 1);
  REQUIRE(m.widths_x.size() == 4);
  for (double w : m.widths_x) CHECK(w == doctest::Approx(0.25));
  CHECK(m.dim() == 1);
  CHECK(m.widths_y.empty());

  TensorMesh one = build_uniform_mesh(1, 2);
  CHECK(one.widths_x == std::vector<double>{1.0});
  CHECK(one.widths_y == std::vector<double>{1.0});
  CHECK_THROWS_AS(build_uniform_mesh(0, 2), InvalidArgument);
}

TEST_CASE("geometric mesh") {
  TensorMesh m3 = build_geometric_mesh(3, 1.0);
  for (double w : m3.widths_x) CHECK(w == doctest::Approx(1.0 / 3).epsilon(1e-14));

  TensorMesh m4 = build_geometric_mesh(4, 1.01);
  const double w = 1.0 / (1 + 1.01 + 1.01 * 1.01 + 1.01 * 1.01 * 1.01);
  CHECK(m4.widths_x[0] == doctest::Approx(w).epsilon(1e-14));
  for (int k = 0; k + 1 < 4; ++k) CHECK(m4.widths_x[k + 1] / m4.widths_x[k] == doctest::Approx(1.01).epsilon(1e-14));
  CHECK(m4.extent_x() == doctest::Approx(1.0).epsilon(1e-14));

  TensorMesh m8 = build_geometric_mesh(8, 1.01);
  CHECK(m8.max_ratio() == doctest::Approx(std::pow(1.01, 7)).epsilon(1e-12));
  CHECK(m8.max_ratio() < 32.0 / 25.0);
  CHECK_THROWS_AS(build_geometric_mesh(4, 0.0), InvalidArgument);
}

TEST_CASE("explicit mesh validation") {
  CHECK_THROWS_AS(build_explicit_mesh({0.5, -0.5}), InvalidArgument);
  CHECK_THROWS_AS(build_explicit_mesh({}), InvalidArgument);
  TensorMesh m = build_explicit_mesh({0.25, 0.75}, {1.0});
  CHECK(m.dim() == 2);
  CHECK(m.max_ratio() == doctest::Approx(4.0));  // across both axes
}

TEST_CASE("Q2 grid sizes and classification") {
  QuadratureGrid g(build_uniform_mesh(8, 2), Family::Q2);
  CHECK(g.nx() - 2 == 15);
  CHECK(g.ny() - 2 == 15);

  QuadratureGrid g2(build_uniform_mesh(2, 2), Family::Q2);
  CHECK(g2.nx() == 5);
  CHECK(g2.classify(1, 1) == PointClass::CellCenter);
  CHECK(g2.classify(2, 2) == PointClass::Knot);
  CHECK(g2.classify(2, 1) == PointClass::EdgeCenterY);
  CHECK(g2.classify(1, 2) == PointClass::EdgeCenterX);
  for (int j = 0; j < 5; ++j) CHECK(g2.classify(0, j) == PointClass::Boundary);
  CHECK_THROWS_AS(g2.classify(5, 0), InvalidArgument);
  CHECK_THROWS_AS(g2.classify(-1, 0), InvalidArgument);

  std::map<PointClass, int> counts;
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) ++counts[g.classify(i, j)];
  CHECK(counts[PointClass::CellCenter] == 64);
  CHECK(counts[PointClass::Knot] == 49);
  CHECK(counts[PointClass::EdgeCenterX] == 8 * 7);
  CHECK(counts[PointClass::EdgeCenterY] == 8 * 7);
  CHECK(counts[PointClass::Boundary] == 17 * 17 - 15 * 15);
}

TEST_CASE("Q2 coordinates and half widths on a non-uniform mesh") {
  QuadratureGrid g(build_explicit_mesh({0.2, 0.3, 0.5}, {0.5, 0.5}), Family::Q2);
  const auto& x = g.coords_x();
  REQUIRE(x.size() == 7);
  CHECK(x[1] == doctest::Approx(0.1));
  CHECK(x[2] == doctest::Approx(0.2));
  CHECK(x[3] == doctest::Approx(0.35));
  CHECK(x.back() == doctest::Approx(1.0));
  for (std::size_t k = 1; k < x.size(); ++k) CHECK(x[k] > x[k - 1]);
  auto [l, r] = g.half_widths_x(2);
  CHECK(l == doctest::Approx(0.1));
  CHECK(r == doctest::Approx(0.15));
  auto [cl, cr] = g.half_widths_x(3);
  CHECK(cl == doctest::Approx(0.15));
  CHECK(cr == doctest::Approx(0.15));
}

TEST_CASE("Q3 points sit at the Gauss-Lobatto images") {
  const double h = 1.0;
  QuadratureGrid g1(build_uniform_mesh(1, 1), Family::Q3);
  const auto& x = g1.coords_x();
  REQUIRE(x.size() == 4);
  CHECK(x[0] == 0.0);
  CHECK(x[1] == doctest::Approx(h / 2 * (1 - 1 / std::sqrt(5.0))).epsilon(1e-14));
  CHECK(x[2] == doctest::Approx(h / 2 * (1 + 1 / std::sqrt(5.0))).epsilon(1e-14));
  CHECK(x[3] == 1.0);

  QuadratureGrid g(build_uniform_mesh(4, 1), Family::Q3);
  const double w = 0.25;
  for (int c = 0; c < 4; ++c) {
    const auto& p = g.coords_x();
    CHECK(p[3 * c + 1] - p[3 * c] == doctest::Approx(w / 2 * (1 - 1 / std::sqrt(5.0))).epsilon(1e-14));
    CHECK(p[3 * c + 2] - p[3 * c + 1] == doctest::Approx(w / std::sqrt(5.0)).epsilon(1e-14));
  }
  CHECK(g.classify(1, 0) == PointClass::Q3InteriorLeft);
  CHECK(g.classify(2, 0) == PointClass::Q3InteriorRight);
  CHECK(g.classify(3, 0) == PointClass::Q3Knot);
}

TEST_CASE("Q3 2x2 cells classification") {
  QuadratureGrid g(build_uniform_mesh(2, 2), Family::Q3);
  CHECK(g.nx() - 2 == 5);
  CHECK(g.classify(3, 3) == PointClass::Q3Knot);
  CHECK(g.classify(1, 3) == PointClass::Q3EdgePoint);
  CHECK(g.classify(3, 2) == PointClass::Q3EdgePoint);
  CHECK(g.classify(1, 1) == PointClass::Q3InteriorLeft);
  CHECK(g.classify(2, 4) == PointClass::Q3InteriorRight);
  int knots = 0, edges = 0, inner = 0;
  for (int j = 1; j < 6; ++j)
    for (int i = 1; i < 6; ++i) {
      PointClass c = g.classify(i, j);
      knots += c == PointClass::Q3Knot;
      edges += c == PointClass::Q3EdgePoint;
      inner += c == PointClass::Q3InteriorLeft || c == PointClass::Q3InteriorRight;
    }
  CHECK(knots == 1);
  CHECK(edges == 8);
  CHECK(inner == 16);
}

TEST_CASE("family preconditions") {
  CHECK_THROWS_AS(QuadratureGrid(build_geometric_mesh(4, 1.1), Family::P2), UnsupportedConfiguration);
  CHECK_THROWS_AS(QuadratureGrid(build_geometric_mesh(4, 1.1), Family::Q3), UnsupportedConfiguration);
  CHECK_NOTHROW(QuadratureGrid(build_geometric_mesh(4, 1.1), Family::Q2));
  CHECK_NOTHROW(QuadratureGrid(build_explicit_mesh({0.5, 0.5}, {0.7, 0.7}), Family::FD));
}

TEST_CASE("grid labels map to cell counts") {
  CHECK(cells_for_grid_label(Family::Q2, 15) == 8);
  CHECK(cells_for_grid_label(Family::P2, 63) == 32);
  CHECK(cells_for_grid_label(Family::Q3, 47) == 16);
  CHECK(cells_for_grid_label(Family::FD, 7) == 8);
  CHECK_THROWS_AS(cells_for_grid_label(Family::Q2, 8), InvalidArgument);
  CHECK_THROWS_AS(cells_for_grid_label(Family::Q3, 10), InvalidArgument);
}

TEST_CASE("index round trip") {
  QuadratureGrid g(build_uniform_mesh(3, 2), Family::Q2);
  for (int k = 0; k < g.size(); ++k) {
    auto [i, j] = g.ij(k);
    CHECK(g.index(i, j) == k);
  }
  CHECK(g.interior_indices().size() + g.boundary_indices().size() == static_cast<std::size_t>(g.size()));
}
