#include "gqft/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <nlohmann/json.hpp>

#include "gqft/errors.hpp"
#include "gqft/fourier.hpp"

namespace gqft {

std::vector<cplx> delta_function(const Tower& tower, std::size_t element) {
  std::vector<cplx> f(tower.order());
  f.at(element) = 1.0;
  return f;
}

std::vector<cplx> uniform_function(const Tower& tower) {
  return std::vector<cplx>(tower.order(), cplx{1.0 / std::sqrt(static_cast<double>(tower.order())), 0.0});
}

std::vector<cplx> random_function(const Tower& tower, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<cplx> f(tower.order());
  double n2 = 0.0;
  for (auto& v : f) {
    v = {normal(rng), normal(rng)};
    n2 += std::norm(v);
  }
  for (auto& v : f) v /= std::sqrt(n2);
  return f;
}

RunResult run_and_compare(const QftContext& ctx, const Simulator& sim, const Matrix& reference,
                          std::span<const cplx> f, Backend backend, std::uint64_t dense_cap) {
  auto state = encode_input(*ctx.tower, ctx.layout, f, backend, dense_cap);
  sim.run(state);
  RunResult r;
  r.decoded = decode_output(state, OutputMap(ctx.layout, *ctx.diagram));
  Eigen::VectorXcd x(static_cast<Eigen::Index>(f.size()));
  for (std::size_t i = 0; i < f.size(); ++i) x(static_cast<Eigen::Index>(i)) = f[i];
  const Eigen::VectorXcd y = reference * x;
  r.expected.assign(y.data(), y.data() + y.size());
  return r;
}

namespace {

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.size() != b.size()) return INFINITY;
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

VerificationReport verify_group(const GroupSpec& spec, const VerifyOptions& options) {
  const auto ctx = QftContext::build(spec);
  const Synthesizer synth(ctx);
  const auto& tower = *ctx->tower;

  VerificationReport rep;
  rep.group = spec.id();
  rep.plan = std::string(to_string(options.plan));
  rep.tolerance = options.tolerance;
  rep.leakage_bound = options.leakage_bound;
  rep.cross_tolerance = options.cross_tolerance;
  rep.stage_plan = synth.plan(options.plan);
  const Circuit circuit = synth.synthesize(rep.stage_plan);
  for (const auto& d : validate(circuit)) rep.diagnostics.push_back(d.str());
  rep.stats = synth.stats(circuit, rep.stage_plan);

  const Backend backend = options.backend.value_or(choose_backend(ctx->layout, options.dense_cap));
  rep.backend = std::string(to_string(backend));
  if (backend == Backend::dense && ctx->layout.dimension() > options.dense_cap)
    throw CapabilityError(rep.group + ": state dimension " + std::to_string(ctx->layout.dimension()) +
                          " exceeds the dense cap");

  const Matrix reference = dense_qft_matrix(*ctx->table);
  rep.reference_unitarity = unitarity_residual(reference);

  // Inputs: every column, or a seeded sample plus delta_e and uniform.
  std::vector<std::pair<std::string, std::vector<cplx>>> inputs;
  const std::size_t order = tower.order();
  const auto& elements = tower.elements();
  auto delta_name = [&](std::size_t g) { return "delta:" + tower.group().format(elements[g]); };
  if (order <= options.exhaustive_limit) {
    for (std::size_t g = 0; g < order; ++g) inputs.emplace_back(delta_name(g), delta_function(tower, g));
  } else {
    std::vector<std::size_t> idx(order);
    std::iota(idx.begin(), idx.end(), 0);
    std::mt19937_64 rng(options.seed);
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(std::min(options.sample_size, order));
    std::sort(idx.begin(), idx.end());
    const std::size_t e = tower.element_index(tower.group().identity());
    if (std::find(idx.begin(), idx.end(), e) == idx.end()) idx.insert(idx.begin(), e);
    for (auto g : idx) inputs.emplace_back(delta_name(g), delta_function(tower, g));
    inputs.emplace_back("uniform", uniform_function(tower));
  }

  const Simulator sim(circuit);
  std::vector<std::vector<cplx>> outputs;
  for (const auto& [name, f] : inputs) {
    const auto r = run_and_compare(*ctx, sim, reference, f, backend, options.dense_cap);
    ColumnResult c{name, max_diff(r.decoded.amplitudes, r.expected), r.decoded.leakage};
    rep.max_deviation = std::max(rep.max_deviation, c.deviation);
    rep.max_leakage = std::max(rep.max_leakage, c.leakage);
    rep.columns.push_back(std::move(c));
    outputs.push_back(r.decoded.amplitudes);
  }

  if (options.cross_check && spec.family == Family::metacyclic) {
    const PlanKind other = rep.stage_plan.levels.back().strategy == Strategy::homothetic ? PlanKind::beals
                                                                                          : PlanKind::homothetic;
    rep.cross_plan = std::string(to_string(other));
    const Circuit alt = synth.synthesize(other);
    const Simulator alt_sim(alt);
    double worst = 0.0;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      const auto r = run_and_compare(*ctx, alt_sim, reference, inputs[i].second, backend, options.dense_cap);
      worst = std::max({worst, max_diff(r.decoded.amplitudes, outputs[i]), std::sqrt(r.decoded.leakage)});
    }
    rep.cross_deviation = worst;
  }

  rep.passed = rep.diagnostics.empty() && rep.max_deviation <= options.tolerance &&
               rep.max_leakage <= options.leakage_bound &&
               (!rep.cross_deviation || *rep.cross_deviation <= options.cross_tolerance);
  return rep;
}

nlohmann::json VerificationReport::to_json() const {
  auto cols = nlohmann::json::array();
  for (const auto& c : columns) cols.push_back({{"input", c.input}, {"deviation", c.deviation}, {"leakage", c.leakage}});
  nlohmann::json j = {{"group", group},
                      {"plan", plan},
                      {"backend", backend},
                      {"stages", stage_plan.to_json()},
                      {"stats", stats.to_json()},
                      {"columns", std::move(cols)},
                      {"max_deviation", max_deviation},
                      {"max_leakage", max_leakage},
                      {"reference_unitarity", reference_unitarity},
                      {"diagnostics", diagnostics},
                      {"tolerance", tolerance},
                      {"leakage_bound", leakage_bound},
                      {"passed", passed}};
  if (cross_plan) {
    j["cross_plan"] = *cross_plan;
    j["cross_deviation"] = *cross_deviation;
    j["cross_tolerance"] = cross_tolerance;
  }
  return j;
}

}  // namespace gqft
