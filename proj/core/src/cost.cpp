#include "gqft/cost.hpp"

#include <cmath>
#include <sstream>

#include "gqft/errors.hpp"

namespace gqft {

GroupSpec family_member(std::string_view family, int parameter) {
  if (family == "cyclic") return GroupSpec::cyclic(parameter);
  if (family == "cyclic2") {
    if (parameter < 0 || parameter > 30) throw DomainError("cyclic2 exponent out of range");
    return GroupSpec::cyclic(1 << parameter);
  }
  if (family == "symmetric") return GroupSpec::symmetric(parameter);
  if (family == "dihedral") return GroupSpec::dihedral(parameter);
  throw DomainError("unknown family '" + std::string(family) + "' (cyclic, cyclic2, symmetric, dihedral)");
}

std::vector<CostRow> cost_report(std::string_view family, int from, int to, PlanKind plan) {
  std::vector<CostRow> rows;
  for (int n = from; n <= to; ++n) {
    const auto spec = family_member(family, n);
    const Synthesizer synth(QftContext::build(spec));
    const auto sp = synth.plan(plan);
    const auto circuit = synth.synthesize(sp);
    const auto st = synth.stats(circuit, sp);
    rows.push_back({spec.id(), n, st.I, st.D, st.M, st.log2_order, st.total_gates, st.total_cost});
  }
  return rows;
}

std::string cost_csv(const std::vector<CostRow>& rows) {
  std::ostringstream os;
  os << "group,parameter,I,D,M,log2_order,gates,cost\n";
  for (const auto& r : rows)
    os << r.group << ',' << r.parameter << ',' << r.I << ',' << r.D << ',' << r.M << ',' << r.log2_order << ','
       << r.gates << ',' << r.cost << '\n';
  return os.str();
}

double PolynomialFit::operator()(double x) const {
  double y = 0.0;
  for (std::size_t k = coefficients.size(); k-- > 0;) y = y * x + coefficients[k];
  return y;
}

PolynomialFit fit_polynomial(const std::vector<double>& xs, const std::vector<double>& ys, int degree) {
  if (xs.size() != ys.size() || xs.empty() || degree < 0) throw DomainError("bad fit input");
  const auto n = static_cast<Eigen::Index>(xs.size());
  Eigen::MatrixXd A(n, degree + 1);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double p = 1.0;
    for (int k = 0; k <= degree; ++k) {
      A(i, k) = p;
      p *= xs[static_cast<std::size_t>(i)];
    }
    b(i) = ys[static_cast<std::size_t>(i)];
  }
  const Eigen::VectorXd c = A.colPivHouseholderQr().solve(b);
  PolynomialFit fit;
  fit.coefficients.assign(c.data(), c.data() + c.size());
  const double norm = b.norm();
  fit.relative_residual = norm > 0 ? (A * c - b).norm() / norm : 0.0;
  return fit;
}

PowerBound power_bound(const std::vector<double>& xs, const std::vector<double>& ys) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] <= 0 || ys[i] <= 0) throw DomainError("power fit needs positive samples");
    lx.push_back(std::log(xs[i]));
    ly.push_back(std::log(ys[i]));
  }
  PowerBound pb;
  pb.slope = fit_polynomial(lx, ly, 1).coefficients[1];
  pb.degree = std::max(0, static_cast<int>(std::ceil(pb.slope - 1e-9)));
  for (std::size_t i = 0; i < xs.size(); ++i) pb.constant = std::max(pb.constant, ys[i] / std::pow(xs[i], pb.degree));
  pb.bounds_all = true;
  for (std::size_t i = 0; i < xs.size(); ++i)
    pb.bounds_all = pb.bounds_all && ys[i] <= pb.constant * std::pow(xs[i], pb.degree) * (1 + 1e-12);
  return pb;
}

}  // namespace gqft
