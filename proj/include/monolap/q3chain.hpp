#pragma once

#include <string>
#include <vector>

#include "monolap/matrixcore.hpp"
#include "monolap/stencils.hpp"

namespace monolap {

// All chain matrices carry exact p + q*sqrt5 entries in the scaled units A = (h^2/4) L.
struct ChainStep {
  SurdMatrix A;
  SurdMatrix Z;
  SurdMatrix L;  // I + diag(A)^{-1} Z
};

ChainStep make_step(SurdMatrix A, SurdMatrix Z);

// Scaled target A = (h^2/4) * L for a uniform Q3 grid; boundary rows carry h^2/4.
SurdMatrix q3_chain_target(const QuadratureGrid& grid);

std::vector<ChainStep> build_chain_1d(const QuadratureGrid& grid);

// The four coefficients left symbolic in the two-dimensional tables.
struct HiddenCoefficients {
  Surd a;  // A0 edge, toward the other interior point
  Surd b;  // A0/A1 edge, toward the knot
  Surd c;  // A0/A1 interior toward the other interior points, A2 interior toward the knots
  Surd d;  // A0/A1 interior, toward the knots
};

std::vector<ChainStep> build_chain_2d(const QuadratureGrid& grid, const HiddenCoefficients& hidden);

struct ChainCertificate {
  std::vector<ChainStep> steps;
  SurdMatrix target;
  Verdict base;                     // A0 passes the row-sum M-matrix test
  std::vector<Verdict> factors;     // L_i unit diagonal, off-diagonals and Z_i non-positive
  std::vector<Verdict> inequalities;  // A_{i+1} <= A_i L_i
  std::vector<double> max_violation;  // max over entries of lhs - rhs (<= 0 when the inequality holds)
  std::vector<Verdict> row_sums;      // A_i 1 >= 0, > 0 on boundary rows (target last)
  std::vector<Verdict> connectivity;  // A0 connects N0(A_i 1) with N+(A_i 1) (target last)
  bool conclusion = false;
};

ChainCertificate verify_chain(const SurdMatrix& A, const std::vector<ChainStep>& steps);
std::string report(const ChainCertificate& c);

// Tabulated entry of a product A_i L_i at a representative point, in local coordinates.
struct TabulatedEntry {
  int step;        // i in A_i L_i
  PointClass kind; // Q3Knot, Q3EdgePoint or an interior class
  int du, dv;      // local offsets: u toward the other interior point / v likewise; knots use x, y
  Surd value;
  std::string label;
};

std::vector<TabulatedEntry> tabulated_entries();

struct HiddenResolution {
  HiddenCoefficients values;
  std::vector<std::string> log;
};

// Pins each coefficient by the tabulated products (solving the ones that enter affinely, in rounds),
// checks lattice membership, reproduction of every tabulated entry, the full chain on 2x2 and 4x4
// cells and on `grid`, and dense inverse corroboration. Throws NoFeasibleAssignment otherwise.
HiddenResolution resolve_hidden_coefficients(const QuadratureGrid& grid);

// Chain feasibility for a given assignment, used as the search gate.
Verdict check_hidden_assignment(const QuadratureGrid& grid, const HiddenCoefficients& h);

// Value of a product entry (A_i L_i)(point, point + offset) on the 4x4-cell reference grid.
Surd product_entry(const std::vector<ChainStep>& steps, const QuadratureGrid& grid, const TabulatedEntry& t);

}  // namespace monolap
