#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gqft/circuit.hpp"

namespace gqft {

// Everything derived from a group spec that synthesis, simulation and
// verification share.
struct QftContext {
  std::shared_ptr<const Group> group;
  std::shared_ptr<const Tower> tower;
  std::shared_ptr<const RepresentationTable> table;
  std::shared_ptr<const BratteliDiagram> diagram;
  RegisterLayout layout;

  static std::shared_ptr<const QftContext> build(const GroupSpec& spec);
};

enum class Strategy { beals, homothetic, nonsplit_cyclic };
std::string_view to_string(Strategy s);

enum class PlanKind { automatic, beals, homothetic };
std::string_view to_string(PlanKind k);
PlanKind plan_kind_from_string(std::string_view s);

struct LevelPlan {
  int level = 1;
  Strategy strategy = Strategy::beals;
  int index = 1;                    // [G_level : G_level-1]
  bool split = false;               // transversal is a subgroup
  bool abelian_transverse = false;  // and it is cyclic
  std::vector<int> orbit_sizes;     // per node of level-1 (homothetic only)
  std::string note;
};

struct StagePlan {
  std::vector<LevelPlan> levels;  // entry 0 is level 1
  nlohmann::json to_json() const;
};

// A_{sigma,rho} = sqrt(|G_{i-1}|/|G_i| * d_rho/d_sigma) for every out-edge of
// every node below the top level.
class ScaleFactorTable {
 public:
  ScaleFactorTable(const RepresentationTable& table, const BratteliDiagram& diagram);
  // Level i edges leave nodes of level i-1; e is 1-based.
  double at(int level, int sigma, int e) const;
  const std::vector<double>& row(int level, int sigma) const;
  // max over nodes of |sum_e A^2 - 1|.
  double normalization_residual() const;

 private:
  std::vector<std::vector<std::vector<double>>> a_;  // a_[level-1][sigma][e-1]
};

struct StageStats {
  int level = 0;
  Strategy strategy = Strategy::beals;
  std::size_t gates = 0;
  std::uint64_t cost = 0;
};

struct SynthStats {
  int I = 1;
  int D = 0;
  int M = 1;  // largest Schur block over the Beals levels
  double log2_order = 0.0;
  std::vector<StageStats> stages;
  std::size_t total_gates = 0;
  std::uint64_t total_cost = 0;
  nlohmann::json to_json() const;
};

class Synthesizer {
 public:
  explicit Synthesizer(std::shared_ptr<const QftContext> ctx);

  const QftContext& context() const { return *ctx_; }
  const ScaleFactorTable& scale_factors() const { return scale_; }

  StagePlan plan(PlanKind kind) const;
  // Throws PlanError when a level cannot use the requested strategy.
  LevelPlan certify(int level, Strategy strategy) const;

  std::vector<Gate> embedding_U(int level) const;
  Gate valpha(int level, int position) const;
  // One StructuredUnitary per letter of the transversal word of T_level[position].
  std::vector<Gate> twiddle(int level, int position, bool inverse) const;
  std::vector<Gate> beals_stage(int level) const;
  std::vector<Gate> homothetic_stage(int level) const;
  std::vector<Gate> nonsplit_cyclic_stage(int level) const;
  std::vector<Gate> stage(const LevelPlan& plan) const;

  Circuit synthesize(const StagePlan& plan) const;
  Circuit synthesize(PlanKind kind) const { return synthesize(plan(kind)); }

  SynthStats stats(const Circuit& circuit, const StagePlan& plan) const;

 private:
  struct OrbitData;
  OrbitData orbit_data(int level) const;
  StructuredUnitary generator_gate(int level, int generator, bool inverse) const;

  std::shared_ptr<const QftContext> ctx_;
  ScaleFactorTable scale_;
  mutable std::mutex cache_mutex_;
  mutable std::map<std::tuple<int, int, bool>, StructuredUnitary> cache_;
};

Circuit synth_qft(const GroupSpec& spec, PlanKind kind = PlanKind::automatic);

}  // namespace gqft
