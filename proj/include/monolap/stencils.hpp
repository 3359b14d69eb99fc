#pragma once

#include <memory>
#include <string>
#include <vector>

#include "monolap/grid.hpp"
#include "monolap/problems.hpp"
#include "monolap/sparse.hpp"

namespace monolap {

enum class Scheme { NinePoint, Compact, BrambleHubbard, P2, Q2, Q3 };

std::string to_string(Scheme s);
Scheme parse_scheme(const std::string& s);  // 9point | compact | bramble | p2 | q2 | q3
Family family_of(Scheme s);

// Full-grid operator, boundary identity rows included.
struct OperatorMatrix {
  SparseMatrix matrix;
  std::shared_ptr<const QuadratureGrid> grid;

  int dimension() const { return matrix.dim(); }
};

struct RightHandSide {
  std::vector<double> values;
};

struct System {
  OperatorMatrix op;
  RightHandSide rhs;
};

enum class NinePointVariant { Classic, Compact };

System assemble_9point(const QuadratureGrid& grid, const Problem& problem, NinePointVariant variant);
System assemble_bramble_hubbard(const QuadratureGrid& grid, const Problem& problem);
System assemble_p2(const QuadratureGrid& grid, const Problem& problem);
System assemble_q2(const QuadratureGrid& grid, const Problem& problem);
System assemble_q3(const QuadratureGrid& grid, const Problem& problem);

System assemble(Scheme scheme, const QuadratureGrid& grid, const Problem& problem);
// operator only, zero forcing and data
OperatorMatrix assemble_operator(Scheme scheme, const QuadratureGrid& grid);

// One-dimensional axis operators over the full axis (boundary rows left empty).
SparseMatrix q2_axis_operator(const std::vector<double>& cell_widths);
SparseMatrix bramble_hubbard_axis_operator(int points, double spacing);
// Q3 coefficients in units of 4/h^2, exact.
SurdMatrix q3_axis_unit_operator(int cells);
// Q3 interior rows in units of 4/h^2 (tensor sum in 2D); boundary rows empty.
SurdMatrix q3_unit_operator(const QuadratureGrid& grid);

// Stencil footprint radius per axis used by a scheme's interior rows.
int stencil_radius(Scheme scheme);

}  // namespace monolap
