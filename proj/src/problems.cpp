#include "monolap/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "monolap/errors.hpp"

namespace monolap {

namespace {

constexpr double pi = std::numbers::pi;

Problem with_g(std::string name, Field u, Field f) {
  Field g = u;
  return Problem{std::move(name), std::move(u), std::move(f), std::move(g)};
}

}  // namespace

std::vector<std::string> problem_names() {
  return {"laplace-log", "p11", "p12", "const", "linear-x", "bilinear", "sine-1d"};
}

Problem get_problem(const std::string& name) {
  if (name == "laplace-log")
    return with_g(
        name,
        [](double x, double y) { return std::log((x + 1) * (x + 1) + (y + 1) * (y + 1)) + std::sin(y) * std::exp(x); },
        [](double, double) { return 0.0; });
  if (name == "p11")
    return with_g(
        name,
        [](double x, double y) { return std::sin(3 * pi * y) * std::sin(2 * pi * x) + x * y * (1 - x) * (1 - y); },
        [](double x, double y) {
          return 13 * pi * pi * std::sin(3 * pi * y) * std::sin(2 * pi * x) + 2 * y * (1 - y) + 2 * x * (1 - x);
        });
  if (name == "p12")
    return with_g(
        name,
        [](double x, double y) { return std::cos(5 * pi * x) * std::cos(7 * pi * y) + x * x + y * y; },
        // -Laplace of the solution; the constant is -4
        [](double x, double y) { return 74 * pi * pi * std::cos(5 * pi * x) * std::cos(7 * pi * y) - 4.0; });
  if (name == "const")
    return with_g(name, [](double, double) { return 1.0; }, [](double, double) { return 0.0; });
  if (name == "linear-x")
    return with_g(name, [](double x, double) { return x; }, [](double, double) { return 0.0; });
  if (name == "bilinear")
    return with_g(name, [](double x, double y) { return x * y; }, [](double, double) { return 0.0; });
  if (name == "sine-1d")
    return with_g(
        name, [](double x, double) { return std::sin(pi * x) + x * x; },
        [](double x, double) { return pi * pi * std::sin(pi * x) - 2.0; });
  throw InvalidArgument("unknown problem: " + name);
}

double boundary_mismatch(const Problem& p, int samples) {
  double m = 0.0;
  for (int k = 0; k <= samples; ++k) {
    double t = static_cast<double>(k) / samples;
    for (auto [x, y] : {std::pair{t, 0.0}, std::pair{t, 1.0}, std::pair{0.0, t}, std::pair{1.0, t}})
      m = std::max(m, std::abs(p.g(x, y) - p.u(x, y)));
  }
  return m;
}

}  // namespace monolap
