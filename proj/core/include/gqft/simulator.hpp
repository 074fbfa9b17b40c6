#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <unordered_map>
#include <vector>

#include "gqft/circuit.hpp"

namespace gqft {

// dense: full amplitude array, capped by dense_cap.
// sparse: hash map of nonzero amplitudes, for layouts too large to store
// densely whose reachable states stay small (e.g. long cyclic towers).
enum class Backend { dense, sparse };

std::string_view to_string(Backend b);
Backend backend_from_string(std::string_view s);

inline constexpr std::uint64_t kDefaultDenseCap = std::uint64_t{1} << 24;

// Dense when the layout fits under the cap, sparse otherwise.
Backend choose_backend(const RegisterLayout& layout, std::uint64_t dense_cap = kDefaultDenseCap);

class StateVector {
 public:
  // All-zero state. Throws CapabilityError when a dense state exceeds the cap.
  StateVector(RegisterLayout layout, Backend backend, std::uint64_t dense_cap = kDefaultDenseCap);

  const RegisterLayout& layout() const { return layout_; }
  Backend backend() const { return backend_; }
  std::uint64_t dimension() const { return layout_.dimension(); }

  cplx get(std::uint64_t index) const;
  void set(std::uint64_t index, cplx value);
  double norm() const;
  std::size_t nonzeros() const;
  // fn(index, amplitude) for every stored nonzero amplitude.
  void for_each_nonzero(const std::function<void(std::uint64_t, cplx)>& fn) const;

  std::vector<cplx>& dense() { return dense_; }
  const std::vector<cplx>& dense() const { return dense_; }
  std::unordered_map<std::uint64_t, cplx>& sparse() { return sparse_; }
  const std::unordered_map<std::uint64_t, cplx>& sparse() const { return sparse_; }

 private:
  RegisterLayout layout_;
  Backend backend_;
  std::vector<cplx> dense_;
  std::unordered_map<std::uint64_t, cplx> sparse_;
};

// A gate lowered to its action on the local space of its registers: dense
// blocks on disjoint index sets plus a monomial map; everything else fixed.
struct CompiledGate {
  struct Block {
    std::vector<std::uint32_t> index;  // local indices
    std::vector<cplx> matrix;          // row-major, index.size()^2
  };
  struct Move {
    std::uint32_t src = 0;
    std::uint32_t dst = 0;
    cplx phase{1.0, 0.0};
  };
  std::vector<int> registers;
  std::vector<std::uint64_t> local_offsets;  // local index -> global offset
  std::vector<Block> blocks;
  std::vector<Move> moves;
  std::vector<std::int32_t> owner;  // local index -> block (>=0), -1 fixed, -2-k move k
};

CompiledGate compile(const RegisterLayout& layout, const GateOp& op);
void apply(const CompiledGate& gate, StateVector& state);

struct SimulatorOptions {
  bool check_norm = false;  // throw ExecutionError if a gate moves the norm by > 1e-10
};

// Compiles every gate of a circuit once so many inputs can be pushed through.
class Simulator {
 public:
  explicit Simulator(const Circuit& circuit, SimulatorOptions options = {});
  const RegisterLayout& layout() const { return layout_; }
  std::size_t gate_count() const { return compiled_.size(); }
  void run(StateVector& state) const { run(state, 0, compiled_.size()); }
  // Gates [begin, end).
  void run(StateVector& state, std::size_t begin, std::size_t end) const;
  void run_gate(StateVector& state, std::size_t index) const;

 private:
  RegisterLayout layout_;
  SimulatorOptions options_;
  std::vector<CompiledGate> compiled_;
};

// Apply every gate in order. Throws ExecutionError on layout mismatch.
void apply(const Circuit& circuit, StateVector& state, SimulatorOptions options = {});
void apply(const Gate& gate, StateVector& state);

// Amplitude f(g) at alpha digits from coset_factorize(g) (position + 1) and
// s = t = 0. f is indexed by canonical element order and must have unit
// norm within 1e-10 (NormalizationError otherwise).
StateVector encode_input(const Tower& tower, const RegisterLayout& layout, std::span<const cplx> f,
                         Backend backend, std::uint64_t dense_cap = kDefaultDenseCap);

// Basis index of every Fourier slot (node, row, col) of the top level, in
// FourierIndex order: alpha = 0, s = path to row, t = path to col.
class OutputMap {
 public:
  OutputMap(const RegisterLayout& layout, const BratteliDiagram& diagram);
  std::size_t size() const { return index_.size(); }
  std::uint64_t basis_index(std::size_t slot) const { return index_[slot]; }
  const GTPath& s_path(std::size_t slot) const { return s_[slot]; }
  const GTPath& t_path(std::size_t slot) const { return t_[slot]; }

 private:
  std::vector<std::uint64_t> index_;
  std::vector<GTPath> s_, t_;
};

struct DecodedOutput {
  std::vector<cplx> amplitudes;  // FourierIndex order
  double leakage = 0.0;          // probability outside the output slots
};

DecodedOutput decode_output(const StateVector& state, const OutputMap& map);

// Probability outside the pattern expected once levels 1..level have been
// transformed: alpha[1..level] = 0, alpha above nonzero, s/t prefixes of
// length `level` forming valid co-terminal paths, higher edge registers 0.
double mass_outside_stage_pattern(const StateVector& state, const BratteliDiagram& diagram, int level);

}  // namespace gqft
