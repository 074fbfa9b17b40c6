#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gqft/synth.hpp"

namespace gqft {

struct CostRow {
  std::string group;
  int parameter = 0;
  int I = 1;
  int D = 0;
  int M = 1;
  double log2_order = 0.0;
  std::size_t gates = 0;
  std::uint64_t cost = 0;
};

// Group spec for one member of a family: Z_n, Z_{2^n} ("cyclic2"), S_n, D_n.
GroupSpec family_member(std::string_view family, int parameter);

// Synthesis only; one row per parameter in [from, to].
std::vector<CostRow> cost_report(std::string_view family, int from, int to, PlanKind plan = PlanKind::automatic);
std::string cost_csv(const std::vector<CostRow>& rows);

struct PolynomialFit {
  std::vector<double> coefficients;  // constant term first
  double relative_residual = 0.0;    // ||y - p(x)|| / ||y||
  double operator()(double x) const;
};

// Least-squares fit of the given degree.
PolynomialFit fit_polynomial(const std::vector<double>& xs, const std::vector<double>& ys, int degree);

// Empirical growth exponent k from a log-log least-squares fit, rounded up,
// and the smallest C with y <= C x^k at every sample.
struct PowerBound {
  double slope = 0.0;
  int degree = 0;
  double constant = 0.0;
  bool bounds_all = false;
};
PowerBound power_bound(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace gqft
