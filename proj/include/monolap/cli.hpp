#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace monolap {

struct RunConfig {
  std::string subcommand;
  std::string scheme = "q2";
  std::string problem = "p11";
  std::vector<int> grids;  // interior points per axis
  std::vector<int> cells;  // mesh cells per axis, alternative to grids
  std::string mesh = "uniform";  // uniform | geometric | explicit
  double ratio = 1.01;
  std::vector<double> widths_x;
  std::vector<double> widths_y;
  int dim = 2;
  std::optional<double> eps1;
  double eps2 = 1.0;
  double tol = 1e-12;
  double step = 0.05;
  double max_ratio = 6.0;
  std::string output;      // empty: standard output
  std::string export_path; // empty: no export
  std::optional<int> dense_cap;

  bool operator==(const RunConfig&) const = default;
};

// key = value lines; unknown keys and malformed values throw InvalidArgument
std::string to_text(const RunConfig& c);
RunConfig parse_config_text(const std::string& text);

int execute(const RunConfig& c, std::ostream& out, std::ostream& err);

// 0 success, 1 certificate or audit failure, 2 usage error
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace monolap
