#include "monolap/stencils.hpp"

#include "monolap/errors.hpp"

namespace monolap {

namespace {

template <class T>
BasicSparse<T> tensor_sum(const QuadratureGrid& g, const BasicSparse<T>& Dx, const BasicSparse<T>* Dy) {
  BasicSparse<T> L(g.size());
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      if (g.is_boundary(i, j)) continue;
      int k = g.index(i, j);
      for (const auto& e : Dx.row(i)) L.add(k, g.index(e.col, j), e.val);
      if (Dy)
        for (const auto& e : Dy->row(j)) L.add(k, g.index(i, e.col), e.val);
    }
  return L;
}

void add_boundary_rows(const QuadratureGrid& g, SparseMatrix& L) {
  for (int k : g.boundary_indices()) {
    L.clear_row(k);
    L.add(k, k, 1.0);
  }
}

RightHandSide pointwise_rhs(const QuadratureGrid& g, const Problem& p) {
  RightHandSide r;
  r.values.resize(g.size());
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      double x = g.coords_x()[i], y = g.dim() == 2 ? g.coords_y()[j] : 0.0;
      r.values[g.index(i, j)] = g.is_boundary(i, j) ? p.g(x, y) : p.f(x, y);
    }
  return r;
}

System finish(const QuadratureGrid& g, SparseMatrix L, RightHandSide rhs) {
  add_boundary_rows(g, L);
  return System{OperatorMatrix{std::move(L), std::make_shared<const QuadratureGrid>(g)}, std::move(rhs)};
}

void require_family(const QuadratureGrid& g, Family f, const char* what) {
  if (g.family() != f)
    throw UnsupportedConfiguration(std::string(what) + " needs a " + to_string(f) + " grid, got " +
                                   to_string(g.family()));
}

}  // namespace

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::NinePoint: return "9point";
    case Scheme::Compact: return "compact";
    case Scheme::BrambleHubbard: return "bramble";
    case Scheme::P2: return "p2";
    case Scheme::Q2: return "q2";
    case Scheme::Q3: return "q3";
  }
  return "?";
}

Scheme parse_scheme(const std::string& s) {
  if (s == "9point" || s == "ninepoint") return Scheme::NinePoint;
  if (s == "compact") return Scheme::Compact;
  if (s == "bramble" || s == "bramble-hubbard" || s == "bh") return Scheme::BrambleHubbard;
  if (s == "p2") return Scheme::P2;
  if (s == "q2") return Scheme::Q2;
  if (s == "q3") return Scheme::Q3;
  throw InvalidArgument("unknown scheme: " + s);
}

Family family_of(Scheme s) {
  switch (s) {
    case Scheme::NinePoint:
    case Scheme::Compact:
    case Scheme::BrambleHubbard: return Family::FD;
    case Scheme::P2: return Family::P2;
    case Scheme::Q2: return Family::Q2;
    case Scheme::Q3: return Family::Q3;
  }
  return Family::FD;
}

int stencil_radius(Scheme s) {
  switch (s) {
    case Scheme::NinePoint:
    case Scheme::Compact: return 1;
    case Scheme::BrambleHubbard:
    case Scheme::P2:
    case Scheme::Q2: return 2;
    case Scheme::Q3: return 3;
  }
  return 3;
}

SparseMatrix q2_axis_operator(const std::vector<double>& w) {
  const int n = 2 * static_cast<int>(w.size()) + 1;
  SparseMatrix D(n);
  for (int i = 1; i < n - 1; ++i) {
    if (i % 2 == 1) {
      double h = 0.5 * w[(i - 1) / 2];
      double c = 1.0 / (h * h);
      D.add(i, i - 1, -c);
      D.add(i, i, 2 * c);
      D.add(i, i + 1, -c);
    } else {
      double hl = 0.5 * w[i / 2 - 1], hr = 0.5 * w[i / 2];
      double s = hl + hr;
      D.add(i, i - 2, 1.0 / (2 * hl * s));
      D.add(i, i - 1, -4.0 / (hl * s));
      D.add(i, i, 7.0 / (2 * hl * hr));
      D.add(i, i + 1, -4.0 / (hr * s));
      D.add(i, i + 2, 1.0 / (2 * hr * s));
    }
  }
  return D;
}

SparseMatrix bramble_hubbard_axis_operator(int points, double dx) {
  const int n = points - 2;
  if (n < 3) throw UnsupportedConfiguration("Bramble-Hubbard needs at least 3 interior points per axis");
  const double c = 1.0 / (dx * dx);
  SparseMatrix D(points);
  for (int i = 1; i <= n; ++i) {
    if (i == 1 || i == n) {
      D.add(i, i - 1, -c);
      D.add(i, i, 2 * c);
      D.add(i, i + 1, -c);
    } else {
      D.add(i, i - 2, c / 12);
      D.add(i, i - 1, -4 * c / 3);
      D.add(i, i, 5 * c / 2);
      D.add(i, i + 1, -4 * c / 3);
      D.add(i, i + 2, c / 12);
    }
  }
  return D;
}

SurdMatrix q3_axis_unit_operator(int cells) {
  if (cells < 1) throw InvalidArgument("Q3 axis needs at least one cell");
  const int n = 3 * cells + 1;
  const Surd k1 = surd(-25, -15, 8), k2 = surd(-25, 15, 8), k3 = Surd(Rational(-1, 4));
  const Surd near = surd(-5, -3, 4), far = surd(-5, 3, 4), mid = Surd(Rational(-5, 2));
  SurdMatrix D(n);
  for (int i = 1; i < n - 1; ++i) {
    switch (i % 3) {
      case 0:
        D.add(i, i - 3, k3);
        D.add(i, i - 2, k2);
        D.add(i, i - 1, k1);
        D.add(i, i, Surd(13));
        D.add(i, i + 1, k1);
        D.add(i, i + 2, k2);
        D.add(i, i + 3, k3);
        break;
      case 1:  // knot on the left
        D.add(i, i - 1, near);
        D.add(i, i, Surd(5));
        D.add(i, i + 1, mid);
        D.add(i, i + 2, far);
        break;
      default:  // knot on the right
        D.add(i, i - 2, far);
        D.add(i, i - 1, mid);
        D.add(i, i, Surd(5));
        D.add(i, i + 1, near);
        break;
    }
  }
  return D;
}

SurdMatrix q3_unit_operator(const QuadratureGrid& g) {
  require_family(g, Family::Q3, "Q3 assembly");
  SurdMatrix Dx = q3_axis_unit_operator(static_cast<int>(g.mesh().widths_x.size()));
  if (g.dim() == 1) return tensor_sum<Surd>(g, Dx, nullptr);
  SurdMatrix Dy = q3_axis_unit_operator(static_cast<int>(g.mesh().widths_y.size()));
  return tensor_sum<Surd>(g, Dx, &Dy);
}

System assemble_9point(const QuadratureGrid& g, const Problem& p, NinePointVariant variant) {
  require_family(g, Family::FD, "9-point assembly");
  if (g.dim() != 2) throw UnsupportedConfiguration("9-point scheme is two-dimensional");
  const double dx = g.mesh().widths_x[0], dy = g.mesh().widths_y[0];
  const double cx = 1.0 / (12 * dx * dx), cy = 1.0 / (12 * dy * dy);
  const double T[3] = {-1, 2, -1}, W[3] = {1, 10, 1};
  // F is sampled everywhere, boundary included
  std::vector<double> F(g.size());
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) F[g.index(i, j)] = p.f(g.coords_x()[i], g.coords_y()[j]);

  SparseMatrix L(g.size());
  RightHandSide rhs = pointwise_rhs(g, p);
  for (int j = 1; j < g.ny() - 1; ++j)
    for (int i = 1; i < g.nx() - 1; ++i) {
      int k = g.index(i, j);
      double r = 0.0;
      for (int b = -1; b <= 1; ++b)
        for (int a = -1; a <= 1; ++a) {
          double v = cx * T[a + 1] * W[b + 1] + cy * W[a + 1] * T[b + 1];
          if (v != 0.0) L.add(k, g.index(i + a, j + b), v);
          double wf = variant == NinePointVariant::Classic ? (a == 0 && b == 0 ? 8.0 : (a == 0 || b == 0 ? 1.0 : 0.0)) / 12
                                                            : W[a + 1] * W[b + 1] / 144;
          r += wf * F[g.index(i + a, j + b)];
        }
      rhs.values[k] = r;
    }
  return finish(g, std::move(L), std::move(rhs));
}

System assemble_bramble_hubbard(const QuadratureGrid& g, const Problem& p) {
  require_family(g, Family::FD, "Bramble-Hubbard assembly");
  SparseMatrix Dx = bramble_hubbard_axis_operator(g.nx(), g.mesh().widths_x[0]);
  SparseMatrix L;
  if (g.dim() == 1) {
    L = tensor_sum<double>(g, Dx, nullptr);
  } else {
    SparseMatrix Dy = bramble_hubbard_axis_operator(g.ny(), g.mesh().widths_y[0]);
    L = tensor_sum<double>(g, Dx, &Dy);
  }
  return finish(g, std::move(L), pointwise_rhs(g, p));
}

System assemble_p2(const QuadratureGrid& g, const Problem& p) {
  require_family(g, Family::P2, "P2 assembly");
  if (g.dim() != 2) throw UnsupportedConfiguration("P2 scheme is two-dimensional");
  const double h = 0.5 * g.mesh().widths_x[0];
  const double e = 1.0 / (h * h), v = 1.0 / (9 * h * h);
  SparseMatrix L(g.size());
  RightHandSide rhs = pointwise_rhs(g, p);
  for (int j = 1; j < g.ny() - 1; ++j)
    for (int i = 1; i < g.nx() - 1; ++i) {
      int k = g.index(i, j);
      if (g.classify(i, j) == PointClass::Knot) {
        L.add(k, k, 12 * v);
        for (int s : {-1, 1}) {
          L.add(k, g.index(i + s, j), -4 * v);
          L.add(k, g.index(i, j + s), -4 * v);
          L.add(k, g.index(i + 2 * s, j), v);
          L.add(k, g.index(i, j + 2 * s), v);
        }
        rhs.values[k] = 0.0;
      } else {
        L.add(k, k, 4 * e);
        for (int s : {-1, 1}) {
          L.add(k, g.index(i + s, j), -e);
          L.add(k, g.index(i, j + s), -e);
        }
      }
    }
  return finish(g, std::move(L), std::move(rhs));
}

System assemble_q2(const QuadratureGrid& g, const Problem& p) {
  require_family(g, Family::Q2, "Q2 assembly");
  SparseMatrix Dx = q2_axis_operator(g.mesh().widths_x);
  SparseMatrix L;
  if (g.dim() == 1) {
    L = tensor_sum<double>(g, Dx, nullptr);
  } else {
    SparseMatrix Dy = q2_axis_operator(g.mesh().widths_y);
    L = tensor_sum<double>(g, Dx, &Dy);
  }
  return finish(g, std::move(L), pointwise_rhs(g, p));
}

System assemble_q3(const QuadratureGrid& g, const Problem& p) {
  SurdMatrix U = q3_unit_operator(g);
  const double h = g.mesh().widths_x[0];
  const double c = 4.0 / (h * h);
  SparseMatrix L(g.size());
  for (int r = 0; r < U.dim(); ++r)
    for (const auto& e : U.row(r)) L.add(r, e.col, c * e.val.value());
  return finish(g, std::move(L), pointwise_rhs(g, p));
}

System assemble(Scheme scheme, const QuadratureGrid& g, const Problem& p) {
  switch (scheme) {
    case Scheme::NinePoint: return assemble_9point(g, p, NinePointVariant::Classic);
    case Scheme::Compact: return assemble_9point(g, p, NinePointVariant::Compact);
    case Scheme::BrambleHubbard: return assemble_bramble_hubbard(g, p);
    case Scheme::P2: return assemble_p2(g, p);
    case Scheme::Q2: return assemble_q2(g, p);
    case Scheme::Q3: return assemble_q3(g, p);
  }
  throw InvalidArgument("unknown scheme");
}

OperatorMatrix assemble_operator(Scheme scheme, const QuadratureGrid& g) {
  return assemble(scheme, g, get_problem("const")).op;
}

}  // namespace monolap
