#pragma once

#include <functional>
#include <string>
#include <vector>

namespace monolap {

using Field = std::function<double(double, double)>;

// -Laplace(u) = f in the domain, u = g on the boundary. 1D problems ignore y.
struct Problem {
  std::string name;
  Field u;
  Field f;
  Field g;
};

// laplace-log, p11, p12, plus exact-polynomial and 1D test problems
Problem get_problem(const std::string& name);
std::vector<std::string> problem_names();

// max |g - u| over boundary samples of the unit square
double boundary_mismatch(const Problem& p, int samples = 64);

}  // namespace monolap
