#pragma once

#include <string>
#include <utility>
#include <vector>

namespace monolap {

enum class Family { Q2, Q3, P2, FD };

enum class PointClass {
  Boundary,
  CellCenter,
  Knot,
  EdgeCenterY,  // knot abscissa, cell-center ordinate
  EdgeCenterX,  // cell-center abscissa, knot ordinate
  Q3Knot,
  Q3EdgePoint,
  Q3InteriorLeft,
  Q3InteriorRight,
};

// Role of one coordinate index along a single axis.
enum class AxisRole { Boundary, Knot, Center, Left, Right };

std::string to_string(Family f);
std::string to_string(PointClass c);
Family parse_family(const std::string& s);

struct TensorMesh {
  std::vector<double> widths_x;
  std::vector<double> widths_y;  // empty in 1D

  int dim() const { return widths_y.empty() ? 1 : 2; }
  double extent_x() const;
  double extent_y() const;
  bool uniform_x(double rtol = 1e-12) const;
  bool uniform_y(double rtol = 1e-12) const;
  bool is_uniform(double rtol = 1e-12) const;  // every width on both axes equal
  double max_ratio() const;                    // max width / min width over both axes
};

TensorMesh build_uniform_mesh(int cells_per_axis, int dim);
// Widths w, rw, r^2 w, ... normalized to sum 1, grown left to right; same on both axes.
TensorMesh build_geometric_mesh(int cells_per_axis, double ratio, int dim = 2);
TensorMesh build_explicit_mesh(std::vector<double> widths_x, std::vector<double> widths_y = {});

class QuadratureGrid {
 public:
  QuadratureGrid(TensorMesh mesh, Family family);

  Family family() const { return family_; }
  const TensorMesh& mesh() const { return mesh_; }
  int dim() const { return mesh_.dim(); }
  const std::vector<double>& coords_x() const { return x_; }
  const std::vector<double>& coords_y() const { return y_; }

  // point counts per axis including the two boundary points; ny() == 1 in 1D
  int nx() const { return static_cast<int>(x_.size()); }
  int ny() const { return dim() == 1 ? 1 : static_cast<int>(y_.size()); }
  int size() const { return nx() * ny(); }
  int index(int i, int j) const { return j * nx() + i; }
  std::pair<int, int> ij(int k) const { return {k % nx(), k / nx()}; }

  bool is_boundary(int i, int j) const;
  bool is_boundary(int k) const { auto [i, j] = ij(k); return is_boundary(i, j); }
  std::vector<int> interior_indices() const;
  std::vector<int> boundary_indices() const;

  AxisRole role_x(int i) const { return role(i, nx()); }
  AxisRole role_y(int j) const;
  PointClass classify(int i, int j) const;

  // Q2: half widths of the cells left and right of coordinate index i.
  // Equal for a center index; the adjacent cells' halves for a knot index.
  std::pair<double, double> half_widths_x(int i) const;
  std::pair<double, double> half_widths_y(int j) const;

 private:
  AxisRole role(int idx, int n) const;
  std::pair<double, double> half_widths(const std::vector<double>& w, int idx) const;

  TensorMesh mesh_;
  Family family_;
  std::vector<double> x_, y_;
};

QuadratureGrid build_quadrature_grid(const TensorMesh& mesh, Family family);
PointClass classify(const QuadratureGrid& grid, int i, int j);

// Number of mesh cells per axis that yields an n-by-n interior grid for the family.
int cells_for_grid_label(Family family, int interior_points);

}  // namespace monolap
