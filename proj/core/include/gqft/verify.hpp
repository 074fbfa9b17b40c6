#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gqft/simulator.hpp"
#include "gqft/synth.hpp"

namespace gqft {

struct VerifyOptions {
  PlanKind plan = PlanKind::automatic;
  double tolerance = 1e-8;
  double leakage_bound = 1e-12;
  std::uint64_t seed = 1;
  std::optional<Backend> backend;  // default: choose_backend(layout, dense_cap)
  std::uint64_t dense_cap = kDefaultDenseCap;
  std::size_t exhaustive_limit = 30;  // every column when |G| <= this
  std::size_t sample_size = 24;       // otherwise this many seeded columns + delta_e + uniform
  // For metacyclic groups also run the other plan (beals <-> homothetic) and
  // compare outputs within cross_tolerance.
  bool cross_check = false;
  double cross_tolerance = 1e-9;
};

struct ColumnResult {
  std::string input;  // "delta:<element>" or "uniform"
  double deviation = 0.0;
  double leakage = 0.0;
};

struct VerificationReport {
  std::string group;
  std::string plan;
  std::string backend;
  StagePlan stage_plan;
  SynthStats stats;
  std::vector<ColumnResult> columns;
  double max_deviation = 0.0;
  double max_leakage = 0.0;
  double reference_unitarity = 0.0;
  std::vector<std::string> diagnostics;  // circuit validation problems
  std::optional<std::string> cross_plan;
  std::optional<double> cross_deviation;
  double tolerance = 0.0;
  double leakage_bound = 0.0;
  double cross_tolerance = 0.0;
  bool passed = false;

  nlohmann::json to_json() const;
};

// Runs the synthesized circuit on the selected inputs and compares the
// decoded Fourier-side amplitudes with the dense reference. Throws
// CapabilityError when the state cannot be simulated.
VerificationReport verify_group(const GroupSpec& spec, const VerifyOptions& options = {});

// Input functions on G, canonical element order.
std::vector<cplx> delta_function(const Tower& tower, std::size_t element);
std::vector<cplx> uniform_function(const Tower& tower);
std::vector<cplx> random_function(const Tower& tower, std::uint64_t seed);

// Outputs for one input function, FourierIndex order.
struct RunResult {
  DecodedOutput decoded;
  std::vector<cplx> expected;
};
RunResult run_and_compare(const QftContext& ctx, const Simulator& sim, const Matrix& reference,
                          std::span<const cplx> f, Backend backend, std::uint64_t dense_cap = kDefaultDenseCap);

}  // namespace gqft
