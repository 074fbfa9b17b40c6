#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gqft/bratteli.hpp"
#include "gqft/group.hpp"
#include "gqft/schur.hpp"

namespace gqft {

enum class RegisterRole { alpha, s_edge, t_edge };

std::string_view to_string(RegisterRole r);

struct Register {
  RegisterRole role = RegisterRole::alpha;
  int level = 1;
  int radix = 2;
  std::string name() const;
  friend bool operator==(const Register&, const Register&) = default;
};

// Ordered registers; the first register is the most significant digit of a
// basis index. The layout built for a tower is alpha[m..1], s[1..m], t[1..m].
class RegisterLayout {
 public:
  RegisterLayout() = default;
  explicit RegisterLayout(std::vector<Register> registers);

  // alpha[i] has radix |T_i|+1 (0 = consumed, k+1 = k-th transversal
  // element); s[i], t[i] have radix (max out-degree at level i-1)+1.
  static RegisterLayout for_tower(const Tower& tower, const BratteliDiagram& diagram);

  int size() const { return static_cast<int>(registers_.size()); }
  int levels() const { return levels_; }
  const Register& at(int index) const { return registers_.at(static_cast<std::size_t>(index)); }
  const std::vector<Register>& registers() const { return registers_; }
  int radix(int index) const { return at(index).radix; }
  // Register index for a role/level; -1 when absent.
  int find(RegisterRole role, int level) const;
  int index_of(RegisterRole role, int level) const;  // throws DomainError when absent
  std::uint64_t dimension() const { return dimension_; }
  std::uint64_t stride(int index) const { return strides_.at(static_cast<std::size_t>(index)); }
  int digit(std::uint64_t basis, int index) const;
  // Basis index from one value per register.
  std::uint64_t compose(const std::vector<int>& values) const;
  std::vector<int> decompose(std::uint64_t basis) const;
  // Local index of values on a register subset, first register most
  // significant; local_dimension is the product of the subset's radices.
  std::uint64_t local_dimension(const std::vector<int>& regs) const;
  std::vector<int> local_values(const std::vector<int>& regs, std::uint64_t local) const;
  std::uint64_t local_index(const std::vector<int>& regs, const std::vector<int>& values) const;

  friend bool operator==(const RegisterLayout& a, const RegisterLayout& b) { return a.registers_ == b.registers_; }

 private:
  std::vector<Register> registers_;
  std::vector<std::uint64_t> strides_;
  std::uint64_t dimension_ = 1;
  int levels_ = 0;
};

// Unitary on `targets`, chosen per branch by the values of `controls`.
// Control tuples matched by no branch leave the targets untouched.
struct ConditionedUnitary {
  struct Branch {
    std::vector<std::vector<int>> when;  // allowed control value tuples
    Matrix matrix;
    friend bool operator==(const Branch&, const Branch&);
  };
  std::vector<int> targets;
  std::vector<int> controls;
  std::vector<Branch> branches;
  friend bool operator==(const ConditionedUnitary&, const ConditionedUnitary&) = default;
};

// |x> -> |image[x]> on the local space of `registers`.
struct ClassicalPermutation {
  std::vector<int> registers;
  std::vector<std::uint32_t> image;
  friend bool operator==(const ClassicalPermutation&, const ClassicalPermutation&) = default;
};

// |x> -> omega_modulus^{exponents[x]} |x> on the local space of `registers`.
struct Phase {
  std::vector<int> registers;
  int modulus = 1;
  std::vector<int> exponents;
  friend bool operator==(const Phase&, const Phase&) = default;
};

// |offset+x> -> order^{-1/2} sum_y omega_order^{±xy} |offset+y> for x, y in
// [0, order); other values fixed. With controls, acts only when the control
// tuple is listed in `when`.
struct PrimitiveCyclicQFT {
  int target = 0;
  int order = 2;
  int offset = 0;
  bool inverse = false;
  std::vector<int> controls;
  std::vector<std::vector<int>> when;
  friend bool operator==(const PrimitiveCyclicQFT&, const PrimitiveCyclicQFT&) = default;
};

// ⊕_rho rho(gamma^{±1}) acting on the row index of a level-`level` path held
// in s[1..level]. Register tuples that are not complete paths are fixed.
struct StructuredUnitary {
  struct PathEntry {
    std::vector<int> values;  // one value per register
    int node = 0;
    int row = 0;
    friend bool operator==(const PathEntry&, const PathEntry&) = default;
  };
  int level = 1;
  int generator = 0;
  bool inverse = false;
  std::vector<int> registers;
  std::vector<PathEntry> paths;
  std::vector<Matrix> node_matrices;
  std::vector<SchurBlock> blocks;
  friend bool operator==(const StructuredUnitary&, const StructuredUnitary&);
};

using GateOp = std::variant<ConditionedUnitary, ClassicalPermutation, Phase, PrimitiveCyclicQFT, StructuredUnitary>;

struct Provenance {
  std::string stage;     // e.g. "level 3"
  std::string strategy;  // beals | homothetic | nonsplit-cyclic
  int level = 0;
  int iteration = -1;  // coset iteration within a Beals stage
  std::string role;    // twiddle-inverse, embed, swap, ...
  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct Gate {
  GateOp op;
  Provenance provenance;
  friend bool operator==(const Gate&, const Gate&) = default;
};

std::string_view gate_kind(const GateOp& op);
// Registers the gate reads or writes, in the gate's local order.
std::vector<int> gate_registers(const GateOp& op);

struct Circuit {
  RegisterLayout layout;
  std::vector<Gate> gates;
  std::optional<GroupSpec> group;
  friend bool operator==(const Circuit&, const Circuit&) = default;
};

struct Diagnostic {
  int gate = -1;  // -1 for layout-level problems
  std::string message;
  std::string str() const;
};

std::vector<Diagnostic> validate(const Circuit& circuit);
bool is_valid(const Circuit& circuit);

std::uint64_t gate_cost(const GateOp& op);
// Throws ValidationError when the circuit is invalid.
std::uint64_t cost(const Circuit& circuit);

Gate adjoint(const Gate& gate);
Circuit adjoint(const Circuit& circuit);

nlohmann::json to_json(const Circuit& circuit);
Circuit circuit_from_json(const nlohmann::json& doc);
std::string serialize(const Circuit& circuit);
// Throws ParseError naming the byte offset or JSON path of the problem.
Circuit deserialize(std::string_view text);

std::string to_dot(const Circuit& circuit);

}  // namespace gqft
