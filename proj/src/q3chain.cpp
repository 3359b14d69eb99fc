#include "monolap/q3chain.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <limits>

#include "monolap/errors.hpp"

namespace monolap {

namespace {

const Surd k1 = surd(-25, -15, 8);  // knot, first neighbor
const Surd k2 = surd(-25, 15, 8);   // knot, second neighbor
const Surd k3 = Surd(Rational(-1, 4));
const Surd i_near = surd(-5, -3, 4);  // interior point, adjacent knot
const Surd i_far = surd(-5, 3, 4);    // interior point, knot beyond the other interior point
const Surd i_mid = Surd(Rational(-5, 2));

void require_q3(const QuadratureGrid& g, int dim) {
  if (g.family() != Family::Q3) throw UnsupportedConfiguration("chain needs a Q3 grid");
  if (g.dim() != dim) throw UnsupportedConfiguration(fmt::format("chain builder expects a {}D grid", dim));
  if (!g.mesh().is_uniform()) throw UnsupportedConfiguration("chain needs a uniform mesh");
  if (g.mesh().widths_x.size() < 2) throw UnsupportedConfiguration("chain needs at least 2 cells per axis");
}

Surd boundary_value(const QuadratureGrid& g) {
  // h = 1/N for the unit interval; boundary rows of (h^2/4) L carry h^2/4
  const auto n = static_cast<std::int64_t>(g.mesh().widths_x.size());
  const double h = g.mesh().widths_x[0];
  if (std::abs(h * static_cast<double>(n) - 1.0) > 1e-12)
    throw UnsupportedConfiguration("chain scaling assumes the unit domain");
  return Surd(Rational(1, 4 * n * n));
}

void set_boundary_rows(const QuadratureGrid& g, SurdMatrix& A) {
  Surd b = boundary_value(g);
  for (int k : g.boundary_indices()) {
    A.clear_row(k);
    A.add(k, k, b);
  }
}

// +1 when the other interior point of the cell lies in the positive direction
int axis_sign(AxisRole r) { return r == AxisRole::Left ? 1 : (r == AxisRole::Right ? -1 : 0); }

// Writes a row in local coordinates. Knots use plain offsets; for an edge point u runs along
// its interior axis and v along its knot axis; for an interior point u, v follow x, y.
class RowWriter {
 public:
  RowWriter(const QuadratureGrid& g, SurdMatrix& M, int i, int j) : g_(g), M_(M), i_(i), j_(j) {
    AxisRole rx = g.role_x(i), ry = g.dim() == 2 ? g.role_y(j) : AxisRole::Knot;
    sx_ = axis_sign(rx);
    sy_ = axis_sign(ry);
    swap_ = sx_ == 0 && sy_ != 0;  // edge point with interior y axis
  }

  void put(int du, int dv, const Surd& v) {
    if (v.is_zero()) return;
    int dx, dy;
    if (sx_ == 0 && sy_ == 0) {
      dx = du;
      dy = dv;
    } else if (swap_) {
      dx = dv;
      dy = sy_ * du;
    } else if (sy_ == 0) {
      dx = sx_ * du;
      dy = dv;
    } else {
      dx = sx_ * du;
      dy = sy_ * dv;
    }
    M_.add(g_.index(i_, j_), g_.index(i_ + dx, j_ + dy), v);
  }

  // knot-type axial entries on both axes
  void axial(int off, const Surd& v) {
    put(off, 0, v);
    put(-off, 0, v);
    if (g_.dim() == 2) {
      put(0, off, v);
      put(0, -off, v);
    }
  }

 private:
  const QuadratureGrid& g_;
  SurdMatrix& M_;
  int i_, j_;
  int sx_ = 0, sy_ = 0;
  bool swap_ = false;
};

enum class Kind { Knot, Edge, Interior };

Kind kind_of(const QuadratureGrid& g, int i, int j) {
  bool kx = g.role_x(i) == AxisRole::Knot;
  bool ky = g.dim() == 1 || g.role_y(j) == AxisRole::Knot;
  if (kx && ky) return Kind::Knot;
  if (kx || ky) return g.dim() == 1 ? Kind::Interior : Kind::Edge;
  return Kind::Interior;
}

Verdict exact_m_matrix_rowsum(const SurdMatrix& A) {
  bool strict = false;
  for (int r = 0; r < A.dim(); ++r) {
    Surd s;
    bool diag = false;
    for (const auto& e : A.row(r)) {
      if (e.col == r) {
        diag = true;
        if (e.val.sign() <= 0) return Verdict::fail(Witness{r, r, e.val.value(), 0.0, "diagonal entry must be positive"});
      } else if (e.val.sign() > 0) {
        return Verdict::fail(Witness{r, e.col, e.val.value(), 0.0, "off-diagonal entry must be non-positive"});
      }
      s += e.val;
    }
    if (!diag) return Verdict::fail(Witness{r, r, 0.0, 0.0, "diagonal entry must be positive"});
    if (s.sign() < 0) return Verdict::fail(Witness{r, -1, s.value(), 0.0, "row sum must be non-negative"});
    if (s.sign() > 0) strict = true;
  }
  if (!strict) return Verdict::fail(Witness{-1, -1, 0.0, 0.0, "no row with positive sum"});
  return Verdict::ok();
}

double max_excess(const SurdMatrix& A, const SurdMatrix& B) {
  double worst = -std::numeric_limits<double>::infinity();
  for (int r = 0; r < A.dim(); ++r) {
    for (const auto& e : A.row(r)) worst = std::max(worst, (e.val - B.get(r, e.col)).value());
    for (const auto& e : B.row(r))
      if (!A.has(r, e.col)) worst = std::max(worst, -e.val.value());
  }
  return worst;
}

QuadratureGrid reference_grid(int cells) { return QuadratureGrid(build_uniform_mesh(cells, 2), Family::Q3); }

// representative points, away from the boundary on grids with at least 4 cells per axis
std::pair<int, int> point_of(const QuadratureGrid& g, PointClass kind) {
  if (g.nx() < 13 || g.ny() < 13) throw InvalidArgument("product entries need at least 4x4 cells");
  const int c = 6;
  switch (kind) {
    case PointClass::Q3Knot: return {c, c};
    case PointClass::Q3EdgePoint: return {c - 1, c};
    default: return {c - 1, c + 1};
  }
}

bool in_lattice(const Rational& r) {
  constexpr std::int64_t lattice = 56 * 170 * 5;
  return lattice % r.den() == 0 && compare(r, Rational(8)) <= 0 && compare(r, Rational(-8)) >= 0;
}

}  // namespace

ChainStep make_step(SurdMatrix A, SurdMatrix Z) {
  if (A.dim() != Z.dim()) throw DimensionMismatch("chain step dimension mismatch");
  std::vector<Surd> d = diagonal(A);
  for (int r = 0; r < A.dim(); ++r)
    if (d[r].sign() <= 0) throw InvalidArgument(fmt::format("chain matrix has a non-positive diagonal at row {}", r));
  SurdMatrix L = add(identity_matrix<Surd>(A.dim()), left_divide_diagonal(d, Z));
  return ChainStep{std::move(A), std::move(Z), std::move(L)};
}

SurdMatrix q3_chain_target(const QuadratureGrid& g) {
  SurdMatrix A = q3_unit_operator(g);
  set_boundary_rows(g, A);
  return A;
}

std::vector<ChainStep> build_chain_1d(const QuadratureGrid& g) {
  require_q3(g, 1);
  const int n = g.size();
  SurdMatrix A0(n), A1(n), Z0(n), Z1(n);
  const Surd half = Surd(Rational(-1, 2)), d_int = Surd(Rational(24, 5));
  for (int i = 1; i < g.nx() - 1; ++i) {
    if (kind_of(g, i, 0) == Kind::Knot) {
      RowWriter a0(g, A0, i, 0), a1(g, A1, i, 0);
      a0.put(0, 0, Surd(15));
      a0.axial(1, Surd(-7));
      a1.put(0, 0, Surd(13));
      a1.axial(1, Surd(-7));
      a1.axial(2, k2);
    } else {
      RowWriter a0(g, A0, i, 0), a1(g, A1, i, 0), z0(g, Z0, i, 0), z1(g, Z1, i, 0);
      a0.put(-1, 0, half);
      a0.put(0, 0, d_int);
      a0.put(1, 0, half);
      a1.put(-1, 0, half);
      a1.put(0, 0, d_int);
      a1.put(1, 0, Surd(-2));
      z0.put(1, 0, Surd(Rational(-3, 2)));
      z1.put(-1, 0, Surd(Rational(-11, 10)));
      z1.put(1, 0, half);
    }
  }
  set_boundary_rows(g, A0);
  set_boundary_rows(g, A1);
  return {make_step(std::move(A0), std::move(Z0)), make_step(std::move(A1), std::move(Z1))};
}

std::vector<ChainStep> build_chain_2d(const QuadratureGrid& g, const HiddenCoefficients& h) {
  require_q3(g, 2);
  const int n = g.size();
  SurdMatrix T = q3_chain_target(g);
  SurdMatrix A0(n), A1(n), A2(n), Z0(n), Z1(n), Z2(n);
  const Surd m7 = Surd(-7), m514 = Surd(Rational(-5, 14));

  for (int j = 1; j < g.ny() - 1; ++j)
    for (int i = 1; i < g.nx() - 1; ++i) {
      const int k = g.index(i, j);
      RowWriter a0(g, A0, i, j), a1(g, A1, i, j), a2(g, A2, i, j);
      RowWriter z0(g, Z0, i, j), z1(g, Z1, i, j), z2(g, Z2, i, j);
      switch (kind_of(g, i, j)) {
        case Kind::Knot:
          a0.put(0, 0, Surd(30));
          a0.axial(1, k1);
          a1.put(0, 0, Surd(26));
          a1.axial(1, k1);
          a1.axial(2, k2);
          for (const auto& e : T.row(k)) A2.add(k, e.col, e.val);
          break;
        case Kind::Edge:
          a0.put(0, 0, Surd(17));
          a0.put(1, 0, -h.a);
          a0.put(-1, 0, -h.b);
          a0.put(0, 1, m7);
          a0.put(0, -1, m7);
          a1.put(0, 0, Surd(17));
          a1.put(1, 0, i_mid);
          a1.put(-1, 0, -h.b);
          a1.put(0, 1, m7);
          a1.put(0, -1, m7);
          a2.put(0, 0, Surd(17));
          a2.put(2, 0, i_far);
          a2.put(1, 0, i_mid);
          a2.put(-1, 0, i_near);
          a2.put(0, 1, m7);
          a2.put(0, -1, m7);
          for (int s : {-1, 1}) {
            a2.put(0, 2 * s, k2);
            a2.put(-1, 2 * s, Surd(Rational(1, 4)));
          }
          z0.put(1, 0, i_mid + h.a);
          z1.put(-1, 0, i_near + h.b);
          break;
        case Kind::Interior:
          for (RowWriter* a : {&a0, &a1}) {
            a->put(0, 0, Surd(10));
            a->put(1, 0, -h.c);
            a->put(0, 1, -h.c);
            a->put(-1, 0, -h.d);
            a->put(0, -1, -h.d);
          }
          a2.put(0, 0, Surd(10));
          a2.put(1, 0, i_mid);
          a2.put(0, 1, i_mid);
          a2.put(-1, 0, -h.c);
          a2.put(0, -1, -h.c);
          a2.put(-1, 1, m514);
          a2.put(1, -1, m514);
          z1.put(1, 0, i_mid + h.c);
          z1.put(0, 1, i_mid + h.c);
          z1.put(-1, 1, m514);
          z1.put(1, -1, m514);
          z2.put(-1, 0, Surd(-2));
          z2.put(0, -1, Surd(-2));
          break;
      }
    }
  for (SurdMatrix* A : {&A0, &A1, &A2}) set_boundary_rows(g, *A);
  for (SurdMatrix* Z : {&Z0, &Z1, &Z2}) Z->prune();
  return {make_step(std::move(A0), std::move(Z0)), make_step(std::move(A1), std::move(Z1)),
          make_step(std::move(A2), std::move(Z2))};
}

ChainCertificate verify_chain(const SurdMatrix& A, const std::vector<ChainStep>& steps) {
  if (steps.empty()) throw InvalidArgument("chain needs at least one step");
  for (const auto& s : steps)
    if (s.A.dim() != A.dim() || s.Z.dim() != A.dim() || s.L.dim() != A.dim())
      throw DimensionMismatch("chain step dimension differs from target");
  ChainCertificate c;
  c.steps = steps;
  c.target = A;
  c.base = exact_m_matrix_rowsum(steps[0].A);

  for (const auto& s : steps) {
    Verdict v = Verdict::ok();
    for (int r = 0; r < s.L.dim() && v.pass; ++r) {
      for (const auto& e : s.Z.row(r))
        if (e.val.sign() > 0) {
          v = Verdict::fail(Witness{r, e.col, e.val.value(), 0.0, "Z entry must be non-positive"});
          break;
        }
      for (const auto& e : s.L.row(r)) {
        if (!v.pass) break;
        if (e.col == r && !(e.val == Surd(1)))
          v = Verdict::fail(Witness{r, r, e.val.value(), 1.0, "L diagonal must be 1"});
        else if (e.col != r && e.val.sign() > 0)
          v = Verdict::fail(Witness{r, e.col, e.val.value(), 0.0, "L off-diagonal must be non-positive"});
      }
      if (v.pass && !s.L.has(r, r)) v = Verdict::fail(Witness{r, r, 0.0, 1.0, "L diagonal must be 1"});
    }
    c.factors.push_back(v);
  }

  for (std::size_t i = 0; i < steps.size(); ++i) {
    const SurdMatrix& next = i + 1 < steps.size() ? steps[i + 1].A : A;
    SurdMatrix P = multiply(steps[i].A, steps[i].L);
    c.inequalities.push_back(mat_leq(next, P));
    c.max_violation.push_back(max_excess(next, P));
  }

  std::vector<const SurdMatrix*> mats;
  for (const auto& s : steps) mats.push_back(&s.A);
  mats.push_back(&A);
  const auto boundary_row = [&](int r) {
    // boundary rows are the identity-pattern rows of the target
    return A.row(r).size() == 1 && A.row(r)[0].col == r && steps[0].A.row(r).size() == 1;
  };
  for (const SurdMatrix* M : mats) {
    std::vector<Surd> s = row_sums_of(*M);
    Verdict v = Verdict::ok();
    std::vector<int> n0, np;
    for (int r = 0; r < M->dim(); ++r) {
      int sg = s[r].sign();
      if (sg < 0 || (sg == 0 && boundary_row(r))) {
        v = Verdict::fail(Witness{r, -1, s[r].value(), 0.0,
                                  sg < 0 ? "row sum must be non-negative" : "boundary row sum must be positive"});
        break;
      }
      (sg == 0 ? n0 : np).push_back(r);
    }
    c.row_sums.push_back(v);
    c.connectivity.push_back(v.pass ? connects(steps[0].A, n0, np) : v);
  }

  auto all = [](const std::vector<Verdict>& vs) {
    return std::all_of(vs.begin(), vs.end(), [](const Verdict& v) { return v.pass; });
  };
  c.conclusion = c.base.pass && all(c.factors) && all(c.inequalities) && all(c.row_sums) && all(c.connectivity);
  return c;
}

std::string report(const ChainCertificate& c) {
  std::string s;
  s += fmt::format("dimension,{}\n", c.target.dim());
  s += "base A0 M-matrix: " + describe(c.base) + "\n";
  for (std::size_t i = 0; i < c.factors.size(); ++i) s += fmt::format("L{} factor: {}\n", i, describe(c.factors[i]));
  for (std::size_t i = 0; i < c.inequalities.size(); ++i) {
    std::string lhs = i + 1 < c.steps.size() ? fmt::format("A{}", i + 1) : std::string("A");
    s += fmt::format("{} <= A{} L{}: {} (max lhs-rhs {:.6e})\n", lhs, i, i, describe(c.inequalities[i]),
                     c.max_violation[i]);
  }
  for (std::size_t i = 0; i < c.row_sums.size(); ++i) {
    std::string m = i + 1 < c.row_sums.size() ? fmt::format("A{}", i) : std::string("A");
    s += fmt::format("{} 1 >= 0: {}; connectivity: {}\n", m, describe(c.row_sums[i]), describe(c.connectivity[i]));
  }
  s += fmt::format("conclusion,{}\n", c.conclusion ? "A^-1 >= 0" : "not established");
  return s;
}

std::vector<TabulatedEntry> tabulated_entries() {
  using P = PointClass;
  return {
      {0, P::Q3Knot, 2, 0, surd(1245, 747, 2720), "A0L0 knot, second neighbor"},
      {0, P::Q3EdgePoint, 0, 0, Surd(Rational(17)) + Surd(Rational(249, 170000)), "A0L0 edge diagonal"},
      {0, P::Q3InteriorRight, -1, 1, Surd(Rational(249, 3400)), "A0L0 interior corner"},
      {1, P::Q3Knot, 3, 0, surd(-505, 3, 2720), "A1L1 knot, third neighbor"},
      {1, P::Q3Knot, 0, 0, Surd(26) + Surd(4) * surd(1745, 747, 2720), "A1L1 knot diagonal"},
      {1, P::Q3EdgePoint, 2, 0, surd(124, 75, 680), "A1L1 edge, second neighbor"},
      {1, P::Q3InteriorRight, 0, 0, Surd(10) + Surd(Rational(2, 10)), "A1L1 interior diagonal"},
      {1, P::Q3InteriorRight, 2, 1, Surd(Rational(1, 56)), "A1L1 interior (2,1)"},
      {1, P::Q3InteriorRight, 1, 1, Surd(Rational(2, 10)), "A1L1 interior (1,1)"},
      {1, P::Q3InteriorRight, -1, -1, Surd(2) * surd(124, 75, 3400), "A1L1 interior (-1,-1)"},
      {2, P::Q3InteriorRight, 0, 2, Surd(Rational(1, 2)), "A2L2 interior (0,2)"},
      {2, P::Q3InteriorRight, -1, 1, Surd(Rational(-5, 14)) + Surd(Rational(1, 2)), "A2L2 interior (-1,1)"},
  };
}

Surd product_entry(const std::vector<ChainStep>& steps, const QuadratureGrid& g, const TabulatedEntry& t) {
  auto [i, j] = point_of(g, t.kind);
  int sx = axis_sign(g.role_x(i)), sy = axis_sign(g.role_y(j));
  int dx = t.du, dy = t.dv;
  if (t.kind == PointClass::Q3EdgePoint) {
    dx = sx * t.du;
  } else if (t.kind != PointClass::Q3Knot) {
    dx = sx * t.du;
    dy = sy * t.dv;
  }
  const int r = g.index(i, j), col = g.index(i + dx, j + dy);
  const ChainStep& s = steps.at(t.step);
  Surd v = s.A.get(r, col);
  for (const auto& e : s.A.row(r)) {
    Surd z = s.L.get(e.col, col);
    if (e.col == col) z = z - Surd(1);  // the identity part is already counted
    v += e.val * z;
  }
  return v;
}

Verdict check_hidden_assignment(const QuadratureGrid& grid, const HiddenCoefficients& h) {
  for (const QuadratureGrid& g : {reference_grid(2), reference_grid(4), grid}) {
    ChainCertificate c = verify_chain(q3_chain_target(g), build_chain_2d(g, h));
    if (c.conclusion) continue;
    if (!c.base.pass) return c.base;
    for (auto* vs : {&c.factors, &c.inequalities, &c.row_sums, &c.connectivity})
      for (std::size_t i = 0; i < vs->size(); ++i)
        if (!(*vs)[i].pass) {
          Verdict v = (*vs)[i];
          v.note = fmt::format("{}-cell grid, {} #{}", g.mesh().widths_x.size(),
                               vs == &c.inequalities ? "inequality" : vs == &c.factors ? "factor" :
                               vs == &c.row_sums ? "row sum" : "connectivity", i);
          if (v.witness) v.witness->condition += " [" + v.note + "]";
          return v;
        }
  }
  return Verdict::ok();
}

HiddenResolution resolve_hidden_coefficients(const QuadratureGrid& grid) {
  require_q3(grid, 2);
  HiddenResolution res;
  const QuadratureGrid ref = reference_grid(4);
  const auto tab = tabulated_entries();
  constexpr int K = 4;
  std::array<std::optional<Surd>, K> known;
  const char* names = "abcd";

  auto assemble_with = [&](const std::array<Surd, K>& v) {
    return build_chain_2d(ref, HiddenCoefficients{v[0], v[1], v[2], v[3]});
  };
  auto base_values = [&]() {
    std::array<Surd, K> v;
    for (int k = 0; k < K; ++k) v[k] = known[k] ? *known[k] : Surd(0);
    return v;
  };
  auto entries = [&](const std::array<Surd, K>& v) {
    auto steps = assemble_with(v);
    std::vector<Surd> out;
    for (const auto& t : tab) out.push_back(product_entry(steps, ref, t));
    return out;
  };

  for (int round = 0; round < K; ++round) {
    bool progress = false;
    for (int k = 0; k < K; ++k) {
      if (known[k]) continue;
      auto v0 = base_values();
      auto v1 = v0, v2 = v0;
      v1[k] = Surd(1);
      v2[k] = Surd(2);
      auto e0 = entries(v0), e1 = entries(v1), e2 = entries(v2);
      // entries that move with another unresolved coefficient are skipped this round
      std::vector<char> foreign(tab.size(), 0);
      for (int o = 0; o < K; ++o) {
        if (o == k || known[o]) continue;
        auto vo = v0;
        vo[o] = Surd(1);
        auto eo = entries(vo);
        for (std::size_t t = 0; t < tab.size(); ++t)
          if (!(eo[t] == e0[t])) foreign[t] = 1;
      }
      std::optional<Surd> solved;
      for (std::size_t t = 0; t < tab.size(); ++t) {
        if (foreign[t]) continue;
        Surd slope = e1[t] - e0[t];
        if (slope.is_zero() || !(e2[t] - e1[t] == slope)) continue;  // absent or not affine
        Surd x = (tab[t].value - e0[t]) / slope;
        if (solved && !(*solved == x))
          throw NoFeasibleAssignment(fmt::format("coefficient {}: tabulated entries disagree ({} vs {} from {})",
                                                 names[k], solved->str(), x.str(), tab[t].label));
        if (!solved)
          res.log.push_back(fmt::format("{} = {} from {}", names[k], x.str(), tab[t].label));
        solved = x;
      }
      if (solved) {
        if (!in_lattice(solved->p) || !in_lattice(solved->q))
          throw NoFeasibleAssignment(fmt::format("coefficient {} = {} lies outside the candidate lattice", names[k],
                                                 solved->str()));
        known[k] = *solved;
        progress = true;
      }
    }
    if (std::all_of(known.begin(), known.end(), [](const auto& o) { return o.has_value(); })) break;
    if (!progress) break;
  }
  for (int k = 0; k < K; ++k)
    if (!known[k]) throw NoFeasibleAssignment(fmt::format("coefficient {} is not pinned by any tabulated entry", names[k]));

  HiddenCoefficients h{*known[0], *known[1], *known[2], *known[3]};
  auto final_entries = entries(base_values());
  for (std::size_t t = 0; t < tab.size(); ++t)
    if (!(final_entries[t] == tab[t].value))
      throw NoFeasibleAssignment(fmt::format("{}: got {}, tabulated {}", tab[t].label, final_entries[t].str(),
                                             tab[t].value.str()));
  res.log.push_back(fmt::format("all {} tabulated entries reproduced exactly", tab.size()));

  Verdict gate = check_hidden_assignment(grid, h);
  if (!gate.pass) throw NoFeasibleAssignment("chain infeasible: " + describe(gate));
  res.log.push_back("chain verified on 2x2, 4x4 and the requested grid");

  for (int cells : {2, 4}) {
    QuadratureGrid g = reference_grid(cells);
    auto [mn, scale] = inverse_extremes(assemble_operator(Scheme::Q3, g).matrix);
    if (mn < -1e-12 * scale)
      throw NoFeasibleAssignment(fmt::format("dense inverse negative on {} cells: {:.3e}", cells, mn));
    res.log.push_back(fmt::format("dense min inverse entry on {}x{} cells: {:.3e} (scale {:.3e})", cells, cells, mn, scale));
  }
  res.values = h;
  return res;
}

}  // namespace monolap
