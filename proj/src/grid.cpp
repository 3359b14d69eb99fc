#include "monolap/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "monolap/errors.hpp"

namespace monolap {

namespace {

bool all_equal(const std::vector<double>& w, double rtol) {
  if (w.empty()) return true;
  auto [lo, hi] = std::minmax_element(w.begin(), w.end());
  return *hi - *lo <= rtol * *hi;
}

void check_widths(const std::vector<double>& w, const char* axis) {
  for (double v : w)
    if (!(v > 0.0) || !std::isfinite(v))
      throw InvalidArgument(std::string("non-positive cell width on axis ") + axis);
}

// Point coordinates along one axis for the given family.
std::vector<double> axis_points(const std::vector<double>& w, Family family) {
  std::vector<double> pts{0.0};
  double left = 0.0;
  const double s5 = 1.0 / std::sqrt(5.0);
  for (double cw : w) {
    switch (family) {
      case Family::Q2:
      case Family::P2:
        pts.push_back(left + 0.5 * cw);
        break;
      case Family::Q3:
        pts.push_back(left + 0.5 * cw * (1.0 - s5));
        pts.push_back(left + 0.5 * cw * (1.0 + s5));
        break;
      case Family::FD:
        break;
    }
    left += cw;
    pts.push_back(left);
  }
  return pts;
}

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::Q2: return "Q2";
    case Family::Q3: return "Q3";
    case Family::P2: return "P2";
    case Family::FD: return "FD";
  }
  return "?";
}

std::string to_string(PointClass c) {
  switch (c) {
    case PointClass::Boundary: return "Boundary";
    case PointClass::CellCenter: return "CellCenter";
    case PointClass::Knot: return "Knot";
    case PointClass::EdgeCenterY: return "EdgeCenterY";
    case PointClass::EdgeCenterX: return "EdgeCenterX";
    case PointClass::Q3Knot: return "Q3Knot";
    case PointClass::Q3EdgePoint: return "Q3EdgePoint";
    case PointClass::Q3InteriorLeft: return "Q3InteriorLeft";
    case PointClass::Q3InteriorRight: return "Q3InteriorRight";
  }
  return "?";
}

Family parse_family(const std::string& s) {
  if (s == "Q2" || s == "q2") return Family::Q2;
  if (s == "Q3" || s == "q3") return Family::Q3;
  if (s == "P2" || s == "p2") return Family::P2;
  if (s == "FD" || s == "fd") return Family::FD;
  throw InvalidArgument("unknown grid family: " + s);
}

double TensorMesh::extent_x() const { return std::accumulate(widths_x.begin(), widths_x.end(), 0.0); }
double TensorMesh::extent_y() const { return std::accumulate(widths_y.begin(), widths_y.end(), 0.0); }
bool TensorMesh::uniform_x(double rtol) const { return all_equal(widths_x, rtol); }
bool TensorMesh::uniform_y(double rtol) const { return all_equal(widths_y, rtol); }

bool TensorMesh::is_uniform(double rtol) const {
  std::vector<double> all = widths_x;
  all.insert(all.end(), widths_y.begin(), widths_y.end());
  return all_equal(all, rtol);
}

double TensorMesh::max_ratio() const {
  std::vector<double> all = widths_x;
  all.insert(all.end(), widths_y.begin(), widths_y.end());
  auto [lo, hi] = std::minmax_element(all.begin(), all.end());
  return *hi / *lo;
}

TensorMesh build_uniform_mesh(int cells_per_axis, int dim) {
  if (cells_per_axis < 1) throw InvalidArgument("cells_per_axis must be >= 1");
  if (dim != 1 && dim != 2) throw InvalidArgument("dim must be 1 or 2");
  std::vector<double> w(cells_per_axis, 1.0 / cells_per_axis);
  return TensorMesh{w, dim == 2 ? w : std::vector<double>{}};
}

TensorMesh build_geometric_mesh(int cells_per_axis, double ratio, int dim) {
  if (cells_per_axis < 1) throw InvalidArgument("cells_per_axis must be >= 1");
  if (!(ratio > 0.0)) throw InvalidArgument("ratio must be positive");
  if (dim != 1 && dim != 2) throw InvalidArgument("dim must be 1 or 2");
  std::vector<double> w(cells_per_axis);
  double p = 1.0, total = 0.0;
  for (int k = 0; k < cells_per_axis; ++k) {
    w[k] = p;
    total += p;
    p *= ratio;
  }
  for (double& v : w) v /= total;
  return TensorMesh{w, dim == 2 ? w : std::vector<double>{}};
}

TensorMesh build_explicit_mesh(std::vector<double> widths_x, std::vector<double> widths_y) {
  if (widths_x.empty()) throw InvalidArgument("mesh needs at least one x cell");
  check_widths(widths_x, "x");
  check_widths(widths_y, "y");
  return TensorMesh{std::move(widths_x), std::move(widths_y)};
}

QuadratureGrid::QuadratureGrid(TensorMesh mesh, Family family)
    : mesh_(std::move(mesh)), family_(family) {
  if (mesh_.widths_x.empty()) throw InvalidArgument("empty mesh");
  check_widths(mesh_.widths_x, "x");
  check_widths(mesh_.widths_y, "y");
  if (family_ == Family::P2 && !mesh_.is_uniform())
    throw UnsupportedConfiguration("P2 grid requires a uniform mesh");
  if (family_ == Family::Q3 && !mesh_.is_uniform())
    throw UnsupportedConfiguration("Q3 grid requires a uniform mesh");
  if (family_ == Family::FD && !(mesh_.uniform_x() && mesh_.uniform_y()))
    throw UnsupportedConfiguration("finite difference grid requires constant spacing per axis");
  x_ = axis_points(mesh_.widths_x, family_);
  if (mesh_.dim() == 2) y_ = axis_points(mesh_.widths_y, family_);
}

bool QuadratureGrid::is_boundary(int i, int j) const {
  if (i <= 0 || i >= nx() - 1) return true;
  if (dim() == 2 && (j <= 0 || j >= ny() - 1)) return true;
  return false;
}

std::vector<int> QuadratureGrid::interior_indices() const {
  std::vector<int> out;
  for (int k = 0; k < size(); ++k)
    if (!is_boundary(k)) out.push_back(k);
  return out;
}

std::vector<int> QuadratureGrid::boundary_indices() const {
  std::vector<int> out;
  for (int k = 0; k < size(); ++k)
    if (is_boundary(k)) out.push_back(k);
  return out;
}

AxisRole QuadratureGrid::role(int idx, int n) const {
  if (idx < 0 || idx >= n) throw InvalidArgument("grid index out of range");
  if (idx == 0 || idx == n - 1) return AxisRole::Boundary;
  switch (family_) {
    case Family::Q2:
    case Family::P2:
      return idx % 2 == 0 ? AxisRole::Knot : AxisRole::Center;
    case Family::Q3:
      return idx % 3 == 0 ? AxisRole::Knot : (idx % 3 == 1 ? AxisRole::Left : AxisRole::Right);
    case Family::FD:
      return AxisRole::Knot;
  }
  return AxisRole::Knot;
}

AxisRole QuadratureGrid::role_y(int j) const {
  if (dim() == 1) {
    if (j != 0) throw InvalidArgument("grid index out of range");
    return AxisRole::Knot;
  }
  return role(j, ny());
}

PointClass QuadratureGrid::classify(int i, int j) const {
  AxisRole rx = role_x(i), ry = role_y(j);
  if (rx == AxisRole::Boundary || ry == AxisRole::Boundary) return PointClass::Boundary;
  if (family_ == Family::Q3) {
    bool kx = rx == AxisRole::Knot, ky = ry == AxisRole::Knot || dim() == 1;
    if (dim() == 1) {
      if (kx) return PointClass::Q3Knot;
      return rx == AxisRole::Left ? PointClass::Q3InteriorLeft : PointClass::Q3InteriorRight;
    }
    if (kx && ky) return PointClass::Q3Knot;
    if (kx || ky) return PointClass::Q3EdgePoint;
    return rx == AxisRole::Left ? PointClass::Q3InteriorLeft : PointClass::Q3InteriorRight;
  }
  if (family_ == Family::FD) return PointClass::Knot;
  bool cx = rx == AxisRole::Center;
  if (dim() == 1) return cx ? PointClass::CellCenter : PointClass::Knot;
  bool cy = ry == AxisRole::Center;
  if (cx && cy) return PointClass::CellCenter;
  if (!cx && !cy) return PointClass::Knot;
  return cx ? PointClass::EdgeCenterX : PointClass::EdgeCenterY;
}

std::pair<double, double> QuadratureGrid::half_widths(const std::vector<double>& w, int idx) const {
  if (family_ != Family::Q2 && family_ != Family::P2)
    throw UnsupportedConfiguration("half widths are defined on Q2/P2 grids only");
  int n = 2 * static_cast<int>(w.size()) + 1;
  if (idx <= 0 || idx >= n - 1) throw InvalidArgument("half widths requested at a boundary index");
  if (idx % 2 == 1) {
    double h = 0.5 * w[(idx - 1) / 2];
    return {h, h};
  }
  return {0.5 * w[idx / 2 - 1], 0.5 * w[idx / 2]};
}

std::pair<double, double> QuadratureGrid::half_widths_x(int i) const { return half_widths(mesh_.widths_x, i); }

std::pair<double, double> QuadratureGrid::half_widths_y(int j) const {
  if (dim() == 1) throw InvalidArgument("1D grid has no y axis");
  return half_widths(mesh_.widths_y, j);
}

QuadratureGrid build_quadrature_grid(const TensorMesh& mesh, Family family) {
  return QuadratureGrid(mesh, family);
}

PointClass classify(const QuadratureGrid& grid, int i, int j) { return grid.classify(i, j); }

int cells_for_grid_label(Family family, int n) {
  if (n < 1) throw InvalidArgument("grid label must be positive");
  switch (family) {
    case Family::Q2:
    case Family::P2:
      if (n % 2 == 0) throw InvalidArgument("Q2/P2 grid labels must be odd");
      return (n + 1) / 2;
    case Family::Q3:
      if ((n + 1) % 3 != 0) throw InvalidArgument("Q3 grid labels must be 3N-1");
      return (n + 1) / 3;
    case Family::FD:
      return n + 1;
  }
  return n + 1;
}

}  // namespace monolap
