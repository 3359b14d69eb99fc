#include "monolap/cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "monolap/errors.hpp"
#include "monolap/experiments.hpp"
#include "monolap/lorenz.hpp"
#include "monolap/q3chain.hpp"
#include "monolap/solver.hpp"

namespace monolap {

namespace {

const std::vector<std::string> kSubcommands{"assemble", "solve",   "convergence", "certify-q2",
                                            "chain-q3", "scan",    "audit"};

std::string trim(std::string s) {
  const char* ws = " \t\r";
  s.erase(0, s.find_first_not_of(ws));
  s.erase(s.find_last_not_of(ws) + 1);
  return s;
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T v{};
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || p != text.data() + text.size())
    throw InvalidArgument(fmt::format("config key '{}': cannot parse '{}'", key, text));
  return v;
}

template <class T>
std::vector<T> parse_list(const std::string& key, const std::string& text) {
  std::vector<T> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number<T>(key, trim(item)));
  return out;
}

template <class T>
std::string join(const std::vector<T>& v) {
  return fmt::format("{}", fmt::join(v, ","));
}

// single grid for the subcommands that act on one mesh
QuadratureGrid make_grid(const RunConfig& c, Family family) {
  if (c.mesh == "explicit") {
    if (c.widths_x.empty()) throw InvalidArgument("--widths-x is required with --mesh explicit");
    std::vector<double> wy = c.widths_y;
    if (c.dim == 2 && wy.empty()) wy = c.widths_x;
    if (c.dim == 1) wy.clear();
    return QuadratureGrid(build_explicit_mesh(c.widths_x, wy), family);
  }
  int cells = 4;
  if (!c.cells.empty())
    cells = c.cells.front();
  else if (!c.grids.empty())
    cells = cells_for_grid_label(family, c.grids.front());
  MeshSpec spec{c.mesh == "geometric" ? MeshKind::Geometric : MeshKind::Uniform, c.ratio, c.dim};
  return QuadratureGrid(build_mesh(spec, cells), family);
}

std::string grid_label(const QuadratureGrid& g) {
  return g.dim() == 2 ? fmt::format("{}x{}", g.nx() - 2, g.ny() - 2) : std::to_string(g.nx() - 2);
}

int cmd_assemble(const RunConfig& c, std::string& out) {
  Scheme s = parse_scheme(c.scheme);
  QuadratureGrid g = make_grid(c, family_of(s));
  System sys = assemble(s, g, get_problem(c.problem));
  out += fmt::format("scheme,{}\nproblem,{}\ngrid,{}\ndimension,{}\nnnz,{}\n", to_string(s), c.problem, grid_label(g),
                     sys.op.dimension(), sys.op.matrix.nnz());
  if (!c.export_path.empty()) {
    write_matrix_market(c.export_path, sys.op.matrix);
    write_vector(c.export_path + ".rhs", sys.rhs.values);
    out += fmt::format("exported,{}\n", c.export_path);
  }
  return 0;
}

int cmd_solve(const RunConfig& c, std::string& out) {
  Scheme s = parse_scheme(c.scheme);
  QuadratureGrid g = make_grid(c, family_of(s));
  Problem p = get_problem(c.problem);
  System sys = assemble(s, g, p);
  std::vector<double> x = solve_system(s, sys);
  double sq = 0.0, mx = 0.0;
  auto interior = g.interior_indices();
  for (int k : interior) {
    auto [i, j] = g.ij(k);
    double e = std::abs(x[k] - p.u(g.coords_x()[i], g.dim() == 2 ? g.coords_y()[j] : 0.0));
    sq += e * e;
    mx = std::max(mx, e);
  }
  out += fmt::format("scheme,{}\nproblem,{}\ngrid,{}\nl2_error,{:.6e}\nlinf_error,{:.6e}\n", to_string(s), c.problem,
                     grid_label(g), std::sqrt(sq / interior.size()), mx);
  if (!c.export_path.empty()) write_vector(c.export_path, x);
  return 0;
}

int cmd_convergence(const RunConfig& c, std::string& out) {
  Scheme s = parse_scheme(c.scheme);
  std::vector<int> labels = c.grids;
  if (labels.empty()) {
    if (c.cells.empty()) throw InvalidArgument("--grids or --cells is required");
    for (int n : c.cells) {
      switch (family_of(s)) {
        case Family::Q2:
        case Family::P2: labels.push_back(2 * n - 1); break;
        case Family::Q3: labels.push_back(3 * n - 1); break;
        case Family::FD: labels.push_back(n - 1); break;
      }
    }
  }
  if (c.mesh == "explicit") throw InvalidArgument("--mesh explicit is not available for convergence studies");
  MeshSpec spec{c.mesh == "geometric" ? MeshKind::Geometric : MeshKind::Uniform, c.ratio, c.dim};
  out += to_csv(run_convergence(s, get_problem(c.problem), labels, spec));
  return 0;
}

int cmd_certify(const RunConfig& c, std::string& out) {
  QuadratureGrid g = make_grid(c, Family::Q2);
  if (g.dim() != 2) throw InvalidArgument("certify-q2 needs --dim 2");
  Q2CertifyOptions opt;
  opt.eps1 = c.eps1;
  opt.eps2 = c.eps2;
  Q2Certification cert = certify_q2(g, get_problem(c.problem), opt);
  out += report(cert);
  if (!c.export_path.empty()) {
    std::ofstream f(c.export_path);
    if (!f) throw std::runtime_error("cannot open " + c.export_path);
    f << to_csv(cert.constraints);
  }
  return cert.pass ? 0 : 1;
}

int cmd_chain(const RunConfig& c, std::string& out) {
  RunConfig q = c;
  if (q.mesh != "explicit" && q.cells.empty() && q.grids.empty()) q.cells = {4};
  QuadratureGrid g = make_grid(q, Family::Q3);
  if (g.dim() == 1) {
    ChainCertificate cert = verify_chain(q3_chain_target(g), build_chain_1d(g));
    out += report(cert);
    return cert.conclusion ? 0 : 1;
  }
  HiddenResolution res;
  try {
    res = resolve_hidden_coefficients(g);
  } catch (const NoFeasibleAssignment& e) {
    out += fmt::format("hidden_coefficients,infeasible\nreason,{}\n", e.what());
    return 1;
  }
  out += fmt::format("hidden_coefficients,a={},b={},c={},d={}\n", res.values.a.str(), res.values.b.str(),
                     res.values.c.str(), res.values.d.str());
  for (const auto& line : res.log) out += "# " + line + "\n";
  ChainCertificate cert = verify_chain(q3_chain_target(g), build_chain_2d(g, res.values));
  out += report(cert);
  return cert.conclusion ? 0 : 1;
}

int cmd_scan(const RunConfig& c, std::string& out) {
  out += to_csv(run_constraint_scan(c.step, c.max_ratio));
  return 0;
}

int cmd_audit(const RunConfig& c, std::string& out) {
  Scheme s = parse_scheme(c.scheme);
  QuadratureGrid g = make_grid(c, family_of(s));
  AuditResult a = run_monotonicity_audit(s, g, c.tol);
  out += fmt::format("scheme,{}\ngrid,{}\n", to_string(s), grid_label(g));
  out += report(a);
  return a.verdict.pass ? 0 : 1;
}

void add_grid_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--grids", c.grids, "interior points per axis, comma separated")->delimiter(',');
  sub->add_option("--cells", c.cells, "mesh cells per axis, comma separated")->delimiter(',');
  sub->add_option("--mesh", c.mesh, "uniform, geometric or explicit")
      ->check(CLI::IsMember({"uniform", "geometric", "explicit"}));
  sub->add_option("--ratio", c.ratio, "geometric growth factor")->check(CLI::PositiveNumber);
  sub->add_option("--widths-x", c.widths_x, "explicit cell widths along x")->delimiter(',');
  sub->add_option("--widths-y", c.widths_y, "explicit cell widths along y")->delimiter(',');
  sub->add_option("--dim", c.dim, "spatial dimension")->check(CLI::IsMember({1, 2}));
}

void add_scheme_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--scheme", c.scheme, "9point, compact, bramble, p2, q2 or q3")
      ->check(CLI::IsMember({"9point", "compact", "bramble", "p2", "q2", "q3"}));
  sub->add_option("--problem", c.problem, "test problem")->check(CLI::IsMember(problem_names()));
}

}  // namespace

std::string to_text(const RunConfig& c) {
  std::string s;
  auto kv = [&s](const char* k, const std::string& v) { s += fmt::format("{} = {}\n", k, v); };
  kv("subcommand", c.subcommand);
  kv("scheme", c.scheme);
  kv("problem", c.problem);
  kv("grids", join(c.grids));
  kv("cells", join(c.cells));
  kv("mesh", c.mesh);
  kv("ratio", fmt::format("{}", c.ratio));
  kv("widths_x", join(c.widths_x));
  kv("widths_y", join(c.widths_y));
  kv("dim", std::to_string(c.dim));
  if (c.eps1) kv("eps1", fmt::format("{}", *c.eps1));
  kv("eps2", fmt::format("{}", c.eps2));
  kv("tol", fmt::format("{}", c.tol));
  kv("step", fmt::format("{}", c.step));
  kv("max_ratio", fmt::format("{}", c.max_ratio));
  kv("output", c.output);
  kv("export", c.export_path);
  if (c.dense_cap) kv("dense_cap", std::to_string(*c.dense_cap));
  return s;
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig c;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw InvalidArgument(fmt::format("config line {}: expected key = value", lineno));
    const std::string k = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
    if (k == "subcommand") c.subcommand = v;
    else if (k == "scheme") c.scheme = v;
    else if (k == "problem") c.problem = v;
    else if (k == "grids") c.grids = parse_list<int>(k, v);
    else if (k == "cells") c.cells = parse_list<int>(k, v);
    else if (k == "mesh") c.mesh = v;
    else if (k == "ratio") c.ratio = parse_number<double>(k, v);
    else if (k == "widths_x") c.widths_x = parse_list<double>(k, v);
    else if (k == "widths_y") c.widths_y = parse_list<double>(k, v);
    else if (k == "dim") c.dim = parse_number<int>(k, v);
    else if (k == "eps1") c.eps1 = parse_number<double>(k, v);
    else if (k == "eps2") c.eps2 = parse_number<double>(k, v);
    else if (k == "tol") c.tol = parse_number<double>(k, v);
    else if (k == "step") c.step = parse_number<double>(k, v);
    else if (k == "max_ratio") c.max_ratio = parse_number<double>(k, v);
    else if (k == "output") c.output = v;
    else if (k == "export") c.export_path = v;
    else if (k == "dense_cap") c.dense_cap = parse_number<int>(k, v);
    else throw InvalidArgument(fmt::format("config line {}: unknown key '{}'", lineno, k));
  }
  return c;
}

int execute(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    if (c.dense_cap) set_dense_cap(*c.dense_cap);
    std::string text;
    int code = 0;
    if (c.subcommand == "assemble") code = cmd_assemble(c, text);
    else if (c.subcommand == "solve") code = cmd_solve(c, text);
    else if (c.subcommand == "convergence") code = cmd_convergence(c, text);
    else if (c.subcommand == "certify-q2") code = cmd_certify(c, text);
    else if (c.subcommand == "chain-q3") code = cmd_chain(c, text);
    else if (c.subcommand == "scan") code = cmd_scan(c, text);
    else if (c.subcommand == "audit") code = cmd_audit(c, text);
    else {
      err << fmt::format("error: unknown subcommand '{}'\n", c.subcommand);
      return 2;
    }
    if (c.output.empty()) {
      out << text;
    } else {
      std::ofstream f(c.output, std::ios::binary);
      if (!f) {
        err << "error: cannot open output " << c.output << "\n";
        return 2;
      }
      f << text;
    }
    return code;
  } catch (const InvalidArgument& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedConfiguration& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Monotone high-order discrete Laplacians: assembly, certificates and experiments", "monolap"};
  app.require_subcommand(0, 1);
  RunConfig c;
  std::string config_path;
  bool print_config = false;
  app.add_option("--config", config_path, "run from a key = value config file");
  app.add_flag("--print-config", print_config, "print the parsed configuration instead of running");

  std::map<std::string, CLI::App*> subs;
  for (const auto& name : kSubcommands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--output", c.output, "report path (default standard output)");
    sub->add_option("--dense-cap", c.dense_cap, "dense oracle dimension cap")->check(CLI::PositiveNumber);
    subs[name] = sub;
  }
  subs["assemble"]->description("assemble a scheme and optionally export it in Matrix Market format");
  subs["solve"]->description("assemble and solve one grid, report errors against the exact solution");
  subs["convergence"]->description("grid refinement study as CSV");
  subs["certify-q2"]->description("mesh constraints and Lorenz certificate for the Q2 scheme");
  subs["chain-q3"]->description("chain factorization certificate for the Q3 scheme");
  subs["scan"]->description("Q2 constraint-necessity scan as CSV");
  subs["audit"]->description("dense inverse monotonicity audit");

  for (const char* n : {"assemble", "solve", "convergence", "audit"}) {
    add_scheme_options(subs[n], c);
    add_grid_options(subs[n], c);
  }
  for (const char* n : {"assemble", "solve", "certify-q2"})
    subs[n]->add_option("--export", c.export_path, "export path");
  add_grid_options(subs["certify-q2"], c);
  subs["certify-q2"]->add_option("--problem", c.problem)->check(CLI::IsMember(problem_names()));
  subs["certify-q2"]->add_option("--eps1", c.eps1, "fixed eps1 in (0, 1]");
  subs["certify-q2"]->add_option("--eps2", c.eps2, "eps2 in (0, 1]");
  add_grid_options(subs["chain-q3"], c);
  subs["scan"]->add_option("--step", c.step, "ratio increment")->check(CLI::PositiveNumber);
  subs["scan"]->add_option("--max-ratio", c.max_ratio, "last ratio scanned");
  subs["audit"]->add_option("--tol", c.tol, "relative tolerance on negative entries");

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  if (!config_path.empty()) {
    std::ifstream f(config_path);
    if (!f) {
      err << "usage error: --config: cannot read " << config_path << "\n";
      return 2;
    }
    std::stringstream ss;
    ss << f.rdbuf();
    try {
      c = parse_config_text(ss.str());
    } catch (const InvalidArgument& e) {
      err << "usage error: --config: " << e.what() << "\n";
      return 2;
    }
  } else {
    for (auto& [name, sub] : subs)
      if (sub->parsed()) c.subcommand = name;
  }
  if (c.subcommand.empty()) {
    err << "usage error: a subcommand is required (" << fmt::format("{}", fmt::join(kSubcommands, ", ")) << ")\n";
    return 2;
  }
  if (print_config) {
    out << to_text(c);
    return 0;
  }
  return execute(c, out, err);
}

}  // namespace monolap
