#include "gqft/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "gqft/errors.hpp"

namespace gqft {

namespace {

bool same_matrix(const Matrix& a, const Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a.size() == 0 || a == b);
}

bool same_blocks(const std::vector<SchurBlock>& a, const std::vector<SchurBlock>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].node != b[i].node || a[i].m != b[i].m || a[i].d != b[i].d || a[i].rows != b[i].rows ||
        !same_matrix(a[i].small, b[i].small))
      return false;
  return true;
}

int ceil_log2(double x) { return x <= 1.0 ? 0 : static_cast<int>(std::ceil(std::log2(x) - 1e-12)); }

}  // namespace

bool operator==(const ConditionedUnitary::Branch& a, const ConditionedUnitary::Branch& b) {
  return a.when == b.when && same_matrix(a.matrix, b.matrix);
}

bool operator==(const StructuredUnitary& a, const StructuredUnitary& b) {
  if (a.level != b.level || a.generator != b.generator || a.inverse != b.inverse || a.registers != b.registers ||
      a.paths != b.paths || a.node_matrices.size() != b.node_matrices.size())
    return false;
  for (std::size_t i = 0; i < a.node_matrices.size(); ++i)
    if (!same_matrix(a.node_matrices[i], b.node_matrices[i])) return false;
  return same_blocks(a.blocks, b.blocks);
}

std::string_view to_string(RegisterRole r) {
  switch (r) {
    case RegisterRole::alpha:
      return "alpha";
    case RegisterRole::s_edge:
      return "s";
    case RegisterRole::t_edge:
      return "t";
  }
  return "?";
}

std::string Register::name() const { return std::string(to_string(role)) + "[" + std::to_string(level) + "]"; }

RegisterLayout::RegisterLayout(std::vector<Register> registers) : registers_(std::move(registers)) {
  std::set<std::pair<RegisterRole, int>> seen;
  for (const auto& r : registers_) {
    if (r.radix < 2) throw DomainError("register " + r.name() + " has radix < 2");
    if (r.level < 1) throw DomainError("register level must be >= 1");
    if (!seen.insert({r.role, r.level}).second) throw DomainError("duplicate register " + r.name());
    levels_ = std::max(levels_, r.level);
  }
  strides_.assign(registers_.size(), 1);
  long double total = 1;
  for (std::size_t i = registers_.size(); i-- > 0;) {
    strides_[i] = dimension_;
    total *= registers_[i].radix;
    if (total > 4.0e18L) throw CapabilityError("register layout dimension overflows 64 bits");
    dimension_ *= static_cast<std::uint64_t>(registers_[i].radix);
  }
}

RegisterLayout RegisterLayout::for_tower(const Tower& tower, const BratteliDiagram& diagram) {
  const int m = tower.levels();
  std::vector<Register> regs;
  for (int i = m; i >= 1; --i) regs.push_back({RegisterRole::alpha, i, tower.index(i) + 1});
  for (RegisterRole role : {RegisterRole::s_edge, RegisterRole::t_edge})
    for (int i = 1; i <= m; ++i) regs.push_back({role, i, diagram.max_out_degree(i - 1) + 1});
  return RegisterLayout(std::move(regs));
}

int RegisterLayout::find(RegisterRole role, int level) const {
  for (int i = 0; i < size(); ++i)
    if (registers_[static_cast<std::size_t>(i)].role == role && registers_[static_cast<std::size_t>(i)].level == level)
      return i;
  return -1;
}

int RegisterLayout::index_of(RegisterRole role, int level) const {
  const int i = find(role, level);
  if (i < 0) throw DomainError("layout has no register " + Register{role, level, 2}.name());
  return i;
}

int RegisterLayout::digit(std::uint64_t basis, int index) const {
  return static_cast<int>((basis / stride(index)) % static_cast<std::uint64_t>(radix(index)));
}

std::uint64_t RegisterLayout::compose(const std::vector<int>& values) const {
  if (static_cast<int>(values.size()) != size()) throw DomainError("value count != register count");
  std::uint64_t out = 0;
  for (int i = 0; i < size(); ++i) {
    const int v = values[static_cast<std::size_t>(i)];
    if (v < 0 || v >= radix(i)) throw DomainError("value out of range for " + at(i).name());
    out += static_cast<std::uint64_t>(v) * strides_[static_cast<std::size_t>(i)];
  }
  return out;
}

std::vector<int> RegisterLayout::decompose(std::uint64_t basis) const {
  std::vector<int> out(registers_.size());
  for (int i = 0; i < size(); ++i) out[static_cast<std::size_t>(i)] = digit(basis, i);
  return out;
}

std::uint64_t RegisterLayout::local_dimension(const std::vector<int>& regs) const {
  std::uint64_t d = 1;
  for (int r : regs) d *= static_cast<std::uint64_t>(radix(r));
  return d;
}

std::vector<int> RegisterLayout::local_values(const std::vector<int>& regs, std::uint64_t local) const {
  std::vector<int> out(regs.size());
  for (std::size_t k = regs.size(); k-- > 0;) {
    const auto r = static_cast<std::uint64_t>(radix(regs[k]));
    out[k] = static_cast<int>(local % r);
    local /= r;
  }
  return out;
}

std::uint64_t RegisterLayout::local_index(const std::vector<int>& regs, const std::vector<int>& values) const {
  if (regs.size() != values.size()) throw DomainError("value count != register count");
  std::uint64_t out = 0;
  for (std::size_t k = 0; k < regs.size(); ++k) {
    const int r = radix(regs[k]);
    if (values[k] < 0 || values[k] >= r) throw DomainError("value out of range for " + at(regs[k]).name());
    out = out * static_cast<std::uint64_t>(r) + static_cast<std::uint64_t>(values[k]);
  }
  return out;
}

std::string_view gate_kind(const GateOp& op) {
  struct V {
    std::string_view operator()(const ConditionedUnitary&) const { return "conditioned_unitary"; }
    std::string_view operator()(const ClassicalPermutation&) const { return "classical_permutation"; }
    std::string_view operator()(const Phase&) const { return "phase"; }
    std::string_view operator()(const PrimitiveCyclicQFT&) const { return "cyclic_qft"; }
    std::string_view operator()(const StructuredUnitary&) const { return "structured_unitary"; }
  };
  return std::visit(V{}, op);
}

std::vector<int> gate_registers(const GateOp& op) {
  struct V {
    std::vector<int> operator()(const ConditionedUnitary& g) const {
      auto out = g.controls;
      out.insert(out.end(), g.targets.begin(), g.targets.end());
      return out;
    }
    std::vector<int> operator()(const ClassicalPermutation& g) const { return g.registers; }
    std::vector<int> operator()(const Phase& g) const { return g.registers; }
    std::vector<int> operator()(const PrimitiveCyclicQFT& g) const {
      auto out = g.controls;
      out.push_back(g.target);
      return out;
    }
    std::vector<int> operator()(const StructuredUnitary& g) const { return g.registers; }
  };
  return std::visit(V{}, op);
}

std::string Diagnostic::str() const {
  return gate < 0 ? message : "gate " + std::to_string(gate) + ": " + message;
}

namespace {

constexpr double kUnitaryTol = 1e-12;
constexpr double kCertificateTol = 1e-10;

class Validator {
 public:
  Validator(const RegisterLayout& layout, std::vector<Diagnostic>& out, int gate)
      : layout_(layout), out_(out), gate_(gate) {}

  void fail(std::string msg) { out_.push_back({gate_, std::move(msg)}); }

  // False when any register is unknown or repeated.
  bool registers(const std::vector<int>& regs) {
    bool ok = true;
    std::set<int> seen;
    for (int r : regs) {
      if (r < 0 || r >= layout_.size()) {
        fail("unknown register " + std::to_string(r));
        ok = false;
      } else if (!seen.insert(r).second) {
        fail("register " + layout_.at(r).name() + " used twice");
        ok = false;
      }
    }
    return ok;
  }

  bool tuples(const std::vector<int>& controls, const std::vector<std::vector<int>>& when,
              std::set<std::vector<int>>& seen) {
    for (const auto& t : when) {
      if (t.size() != controls.size()) {
        fail("condition tuple has " + std::to_string(t.size()) + " values for " + std::to_string(controls.size()) +
             " controls");
        return false;
      }
      for (std::size_t k = 0; k < t.size(); ++k)
        if (t[k] < 0 || t[k] >= layout_.radix(controls[k])) {
          fail("condition value out of range for " + layout_.at(controls[k]).name());
          return false;
        }
      if (!seen.insert(t).second) {
        fail("condition tuple listed twice");
        return false;
      }
    }
    return true;
  }

  void operator()(const ConditionedUnitary& g) {
    if (g.targets.empty()) fail("conditioned unitary without targets");
    auto all = gate_registers(g);
    if (!registers(all)) return;
    const auto d = static_cast<Eigen::Index>(layout_.local_dimension(g.targets));
    if (g.controls.empty() && g.branches.size() > 1) fail("unconditioned gate with several branches");
    std::set<std::vector<int>> seen;
    for (const auto& b : g.branches) {
      if (b.matrix.rows() != d || b.matrix.cols() != d) {
        fail("branch matrix is " + std::to_string(b.matrix.rows()) + "x" + std::to_string(b.matrix.cols()) +
             ", target space has dimension " + std::to_string(d));
        continue;
      }
      if (!is_unitary(b.matrix, kUnitaryTol)) fail("branch matrix not unitary");
      if (g.controls.empty() && (b.when.size() != 1 || !b.when[0].empty()))
        fail("unconditioned branch must list exactly one empty tuple");
      else
        tuples(g.controls, b.when, seen);
    }
  }

  void operator()(const ClassicalPermutation& g) {
    if (!registers(g.registers)) return;
    const auto d = layout_.local_dimension(g.registers);
    if (g.image.size() != d) {
      fail("permutation table has " + std::to_string(g.image.size()) + " entries, expected " + std::to_string(d));
      return;
    }
    std::vector<bool> hit(d, false);
    for (auto v : g.image) {
      if (v >= d || hit[v]) {
        fail("permutation map is not a bijection");
        return;
      }
      hit[v] = true;
    }
  }

  void operator()(const Phase& g) {
    if (!registers(g.registers)) return;
    if (g.modulus < 1) fail("phase modulus must be positive");
    const auto d = layout_.local_dimension(g.registers);
    if (g.exponents.size() != d)
      fail("phase table has " + std::to_string(g.exponents.size()) + " entries, expected " + std::to_string(d));
  }

  void operator()(const PrimitiveCyclicQFT& g) {
    if (!registers(gate_registers(g))) return;
    if (g.order < 1) fail("cyclic transform order must be positive");
    if (g.offset < 0 || g.offset + g.order > layout_.radix(g.target))
      fail("cyclic transform range exceeds radix of " + layout_.at(g.target).name());
    std::set<std::vector<int>> seen;
    if (g.controls.empty() && !g.when.empty()) fail("condition tuples without controls");
    if (!g.controls.empty()) tuples(g.controls, g.when, seen);
  }

  void operator()(const StructuredUnitary& g) {
    if (!registers(g.registers)) return;
    if (static_cast<int>(g.registers.size()) != g.level) {
      fail("structured unitary must act on s[1.." + std::to_string(g.level) + "]");
      return;
    }
    for (int k = 0; k < g.level; ++k) {
      const auto& r = layout_.at(g.registers[static_cast<std::size_t>(k)]);
      if (r.role != RegisterRole::s_edge || r.level != k + 1) {
        fail("structured unitary must act on s[1.." + std::to_string(g.level) + "], got " + r.name());
        return;
      }
    }
    std::vector<std::vector<bool>> covered;
    for (const auto& m : g.node_matrices) {
      if (m.rows() != m.cols() || m.rows() == 0) {
        fail("node matrix is not square");
        return;
      }
      if (!is_unitary(m, kUnitaryTol)) fail("node matrix not unitary");
      covered.emplace_back(static_cast<std::size_t>(m.rows()), false);
    }
    std::set<std::vector<int>> tuples_seen;
    for (const auto& p : g.paths) {
      if (p.values.size() != g.registers.size()) {
        fail("path entry has the wrong number of values");
        return;
      }
      for (std::size_t k = 0; k < p.values.size(); ++k)
        if (p.values[k] < 1 || p.values[k] >= layout_.radix(g.registers[k])) {
          fail("path value out of range");
          return;
        }
      if (p.node < 0 || p.node >= static_cast<int>(covered.size()) || p.row < 0 ||
          p.row >= static_cast<int>(covered[static_cast<std::size_t>(p.node)].size()) ||
          covered[static_cast<std::size_t>(p.node)][static_cast<std::size_t>(p.row)]) {
        fail("path map does not index each node row exactly once");
        return;
      }
      covered[static_cast<std::size_t>(p.node)][static_cast<std::size_t>(p.row)] = true;
      if (!tuples_seen.insert(p.values).second) {
        fail("path tuple listed twice");
        return;
      }
    }
    for (const auto& c : covered)
      if (std::find(c.begin(), c.end(), false) != c.end()) {
        fail("path map misses a node row");
        return;
      }
    const double residual = certificate_residual(g.node_matrices, g.blocks);
    if (!(residual <= kCertificateTol)) {
      std::ostringstream os;
      os << "certificate violated (residual " << residual << ")";
      fail(os.str());
    }
  }

 private:
  const RegisterLayout& layout_;
  std::vector<Diagnostic>& out_;
  int gate_;
};

}  // namespace

std::vector<Diagnostic> validate(const Circuit& circuit) {
  std::vector<Diagnostic> out;
  for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
    Validator v(circuit.layout, out, static_cast<int>(i));
    std::visit(v, circuit.gates[i].op);
  }
  return out;
}

bool is_valid(const Circuit& circuit) { return validate(circuit).empty(); }

std::uint64_t gate_cost(const GateOp& op) {
  struct V {
    std::uint64_t operator()(const ConditionedUnitary& g) const {
      std::uint64_t c = 0;
      for (const auto& b : g.branches) {
        const auto d = static_cast<std::uint64_t>(b.matrix.rows());
        c += d * d;
      }
      return c;
    }
    std::uint64_t operator()(const ClassicalPermutation& g) const { return g.image.size(); }
    std::uint64_t operator()(const Phase& g) const { return g.exponents.size(); }
    std::uint64_t operator()(const PrimitiveCyclicQFT& g) const {
      const double n = g.order;
      return static_cast<std::uint64_t>(ceil_log2(n)) * static_cast<std::uint64_t>(ceil_log2(std::log2(n + 2.0)));
    }
    std::uint64_t operator()(const StructuredUnitary& g) const {
      std::uint64_t c = 0;
      for (const auto& b : g.blocks) c += static_cast<std::uint64_t>(b.m) * static_cast<std::uint64_t>(b.m);
      return c;
    }
  };
  return std::visit(V{}, op);
}

std::uint64_t cost(const Circuit& circuit) {
  const auto diags = validate(circuit);
  if (!diags.empty()) throw ValidationError(diags.front().str());
  std::uint64_t total = 0;
  for (const auto& g : circuit.gates) total += gate_cost(g.op);
  return total;
}

Gate adjoint(const Gate& gate) {
  struct V {
    GateOp operator()(ConditionedUnitary g) const {
      for (auto& b : g.branches) b.matrix = b.matrix.adjoint().eval();
      return g;
    }
    GateOp operator()(ClassicalPermutation g) const {
      std::vector<std::uint32_t> inv(g.image.size());
      for (std::size_t x = 0; x < g.image.size(); ++x) inv.at(g.image[x]) = static_cast<std::uint32_t>(x);
      g.image = std::move(inv);
      return g;
    }
    GateOp operator()(Phase g) const {
      for (auto& e : g.exponents) e = g.modulus > 0 ? ((-e) % g.modulus + g.modulus) % g.modulus : 0;
      return g;
    }
    GateOp operator()(PrimitiveCyclicQFT g) const {
      g.inverse = !g.inverse;
      return g;
    }
    GateOp operator()(StructuredUnitary g) const {
      g.inverse = !g.inverse;
      for (auto& m : g.node_matrices) m = m.adjoint().eval();
      for (auto& b : g.blocks) b.small = b.small.adjoint().eval();
      return g;
    }
  };
  Gate out;
  out.op = std::visit(V{}, gate.op);
  out.provenance = gate.provenance;
  auto& role = out.provenance.role;
  const std::string_view tag = "-adjoint";
  if (role == "adjoint")
    role.clear();
  else if (role.size() > tag.size() && std::string_view(role).substr(role.size() - tag.size()) == tag)
    role.resize(role.size() - tag.size());
  else
    role = role.empty() ? "adjoint" : role + "-adjoint";
  return out;
}

Circuit adjoint(const Circuit& circuit) {
  Circuit out;
  out.layout = circuit.layout;
  out.group = circuit.group;
  for (auto it = circuit.gates.rbegin(); it != circuit.gates.rend(); ++it) out.gates.push_back(adjoint(*it));
  return out;
}

std::string to_dot(const Circuit& circuit) {
  std::ostringstream os;
  os << "digraph circuit {\n  rankdir=LR;\n  node [shape=box, fontname=\"monospace\"];\n";
  os << "  layout [shape=record, label=\"";
  for (int r = 0; r < circuit.layout.size(); ++r)
    os << (r ? "|" : "") << circuit.layout.at(r).name() << " (" << circuit.layout.radix(r) << ")";
  os << "\"];\n";
  std::string prev = "layout";
  for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
    const auto& g = circuit.gates[i];
    os << "  g" << i << " [label=\"" << i << ": " << gate_kind(g.op);
    if (!g.provenance.role.empty()) os << "\\n" << g.provenance.role;
    if (!g.provenance.stage.empty()) os << "\\n" << g.provenance.stage << " " << g.provenance.strategy;
    os << "\\n";
    bool first = true;
    for (int r : gate_registers(g.op)) {
      os << (first ? "" : " ") << (r >= 0 && r < circuit.layout.size() ? circuit.layout.at(r).name() : "?");
      first = false;
    }
    os << "\"];\n  " << prev << " -> g" << i << ";\n";
    prev = "g" + std::to_string(i);
  }
  os << "}\n";
  return os.str();
}

}  // namespace gqft
