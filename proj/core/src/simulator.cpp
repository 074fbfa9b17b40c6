#include "gqft/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "gqft/errors.hpp"

namespace gqft {

std::string_view to_string(Backend b) { return b == Backend::dense ? "dense" : "sparse"; }

Backend backend_from_string(std::string_view s) {
  if (s == "dense") return Backend::dense;
  if (s == "sparse") return Backend::sparse;
  throw DomainError("unknown backend '" + std::string(s) + "'");
}

Backend choose_backend(const RegisterLayout& layout, std::uint64_t dense_cap) {
  return layout.dimension() <= dense_cap ? Backend::dense : Backend::sparse;
}

StateVector::StateVector(RegisterLayout layout, Backend backend, std::uint64_t dense_cap)
    : layout_(std::move(layout)), backend_(backend) {
  if (backend_ == Backend::dense) {
    if (layout_.dimension() > dense_cap)
      throw CapabilityError("state dimension " + std::to_string(layout_.dimension()) + " exceeds the dense cap " +
                            std::to_string(dense_cap));
    dense_.assign(layout_.dimension(), cplx{});
  }
}

cplx StateVector::get(std::uint64_t index) const {
  if (index >= dimension()) throw DomainError("basis index out of range");
  if (backend_ == Backend::dense) return dense_[index];
  auto it = sparse_.find(index);
  return it == sparse_.end() ? cplx{} : it->second;
}

void StateVector::set(std::uint64_t index, cplx value) {
  if (index >= dimension()) throw DomainError("basis index out of range");
  if (backend_ == Backend::dense) {
    dense_[index] = value;
  } else if (value == cplx{}) {
    sparse_.erase(index);
  } else {
    sparse_[index] = value;
  }
}

double StateVector::norm() const {
  double s = 0.0;
  if (backend_ == Backend::dense)
    for (const auto& a : dense_) s += std::norm(a);
  else
    for (const auto& [k, a] : sparse_) s += std::norm(a);
  return std::sqrt(s);
}

std::size_t StateVector::nonzeros() const {
  if (backend_ == Backend::sparse) return sparse_.size();
  return static_cast<std::size_t>(std::count_if(dense_.begin(), dense_.end(), [](cplx a) { return a != cplx{}; }));
}

void StateVector::for_each_nonzero(const std::function<void(std::uint64_t, cplx)>& fn) const {
  if (backend_ == Backend::dense) {
    for (std::uint64_t i = 0; i < dense_.size(); ++i)
      if (dense_[i] != cplx{}) fn(i, dense_[i]);
  } else {
    for (const auto& [k, a] : sparse_) fn(k, a);
  }
}

namespace {

// Index sets of the connected components of the nonzero pattern of m,
// skipping indices where m acts as the identity.
std::vector<std::vector<int>> components(const Matrix& m) {
  const auto n = static_cast<int>(m.rows());
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x)
      x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if (r != c && m(r, c) != cplx{}) parent[static_cast<std::size_t>(find(r))] = find(c);
  std::vector<std::vector<int>> groups(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) groups[static_cast<std::size_t>(find(i))].push_back(i);
  std::vector<std::vector<int>> out;
  for (auto& g : groups) {
    if (g.empty()) continue;
    if (g.size() == 1 && m(g[0], g[0]) == cplx{1.0, 0.0}) continue;
    out.push_back(std::move(g));
  }
  return out;
}

class Compiler {
 public:
  Compiler(const RegisterLayout& layout, CompiledGate& out) : layout_(layout), out_(out) {}

  void begin(std::vector<int> regs) {
    for (int r : regs)
      if (r < 0 || r >= layout_.size()) throw ExecutionError("gate refers to unknown register " + std::to_string(r));
    out_.registers = std::move(regs);
    const auto dim = layout_.local_dimension(out_.registers);
    if (dim > (std::uint64_t{1} << 31)) throw CapabilityError("gate local space too large to compile");
    out_.local_offsets.assign(dim, 0);
    for (std::uint64_t l = 0; l < dim; ++l) {
      const auto values = layout_.local_values(out_.registers, l);
      std::uint64_t off = 0;
      for (std::size_t k = 0; k < values.size(); ++k)
        off += static_cast<std::uint64_t>(values[k]) * layout_.stride(out_.registers[k]);
      out_.local_offsets[l] = off;
    }
    out_.owner.assign(dim, -1);
  }

  std::uint64_t local(const std::vector<int>& values) const { return layout_.local_index(out_.registers, values); }

  void add_matrix(const Matrix& m, const std::vector<std::uint32_t>& index) {
    for (const auto& comp : components(m)) {
      CompiledGate::Block b;
      for (int i : comp) b.index.push_back(index[static_cast<std::size_t>(i)]);
      b.matrix.resize(comp.size() * comp.size());
      for (std::size_t r = 0; r < comp.size(); ++r)
        for (std::size_t c = 0; c < comp.size(); ++c) b.matrix[r * comp.size() + c] = m(comp[r], comp[c]);
      const auto id = static_cast<std::int32_t>(out_.blocks.size());
      for (auto l : b.index) {
        if (out_.owner[l] != -1) throw ExecutionError("overlapping gate branches");
        out_.owner[l] = id;
      }
      out_.blocks.push_back(std::move(b));
    }
  }

  void add_move(std::uint32_t src, std::uint32_t dst, cplx phase) {
    if (out_.owner[src] != -1) throw ExecutionError("overlapping gate branches");
    out_.owner[src] = -2 - static_cast<std::int32_t>(out_.moves.size());
    out_.moves.push_back({src, dst, phase});
  }

  // Local indices for each tuple of `when` over the leading control
  // registers, followed by every value of the trailing target registers.
  std::vector<std::vector<std::uint32_t>> branch_indices(std::size_t n_controls, const std::vector<std::vector<int>>& when,
                                                         std::uint64_t target_dim) const {
    std::vector<std::vector<std::uint32_t>> out;
    const std::vector<std::vector<int>> tuples = n_controls == 0 ? std::vector<std::vector<int>>{{}} : when;
    for (const auto& t : tuples) {
      std::vector<int> ctrl_regs(out_.registers.begin(), out_.registers.begin() + static_cast<long>(n_controls));
      const auto base = (n_controls == 0 ? 0 : layout_.local_index(ctrl_regs, t)) * target_dim;
      std::vector<std::uint32_t> idx(target_dim);
      for (std::uint64_t x = 0; x < target_dim; ++x) idx[x] = static_cast<std::uint32_t>(base + x);
      out.push_back(std::move(idx));
    }
    return out;
  }

  void operator()(const ConditionedUnitary& g) {
    begin(gate_registers(g));
    const auto tdim = layout_.local_dimension(g.targets);
    for (const auto& b : g.branches) {
      if (static_cast<std::uint64_t>(b.matrix.rows()) != tdim || b.matrix.cols() != b.matrix.rows())
        throw ExecutionError("branch matrix does not match target registers");
      for (const auto& idx : branch_indices(g.controls.size(), b.when, tdim)) add_matrix(b.matrix, idx);
    }
  }

  void operator()(const ClassicalPermutation& g) {
    begin(g.registers);
    if (g.image.size() != out_.local_offsets.size()) throw ExecutionError("permutation table size mismatch");
    for (std::uint32_t l = 0; l < g.image.size(); ++l)
      if (g.image[l] != l) add_move(l, g.image[l], {1.0, 0.0});
  }

  void operator()(const Phase& g) {
    begin(g.registers);
    if (g.exponents.size() != out_.local_offsets.size()) throw ExecutionError("phase table size mismatch");
    for (std::uint32_t l = 0; l < g.exponents.size(); ++l) {
      const long long e = ((g.exponents[l] % g.modulus) + g.modulus) % g.modulus;
      if (e != 0) add_move(l, l, root_of_unity(g.modulus, e));
    }
  }

  void operator()(const PrimitiveCyclicQFT& g) {
    begin(gate_registers(g));
    const int radix = layout_.radix(g.target);
    if (g.offset < 0 || g.offset + g.order > radix) throw ExecutionError("cyclic transform exceeds radix");
    Matrix f = Matrix::Identity(radix, radix);
    const double scale = 1.0 / std::sqrt(static_cast<double>(g.order));
    for (int x = 0; x < g.order; ++x)
      for (int y = 0; y < g.order; ++y)
        f(g.offset + y, g.offset + x) = scale * root_of_unity(g.order, g.inverse ? -x * y : x * y);
    for (const auto& idx : branch_indices(g.controls.size(), g.when, static_cast<std::uint64_t>(radix)))
      add_matrix(f, idx);
  }

  void operator()(const StructuredUnitary& g) {
    begin(g.registers);
    std::vector<std::vector<std::uint32_t>> rows(g.node_matrices.size());
    for (std::size_t v = 0; v < g.node_matrices.size(); ++v)
      rows[v].assign(static_cast<std::size_t>(g.node_matrices[v].rows()), 0);
    for (const auto& p : g.paths)
      rows.at(static_cast<std::size_t>(p.node)).at(static_cast<std::size_t>(p.row)) =
          static_cast<std::uint32_t>(local(p.values));
    for (std::size_t v = 0; v < g.node_matrices.size(); ++v) add_matrix(g.node_matrices[v], rows[v]);
  }

 private:
  const RegisterLayout& layout_;
  CompiledGate& out_;
};

// Calls fn(base) for every assignment of the registers outside `regs`.
template <typename Fn>
void for_each_outer(const RegisterLayout& layout, const std::vector<int>& regs, Fn&& fn) {
  std::vector<int> rest;
  for (int r = 0; r < layout.size(); ++r)
    if (std::find(regs.begin(), regs.end(), r) == regs.end()) rest.push_back(r);
  std::vector<int> digit(rest.size(), 0);
  std::uint64_t base = 0;
  while (true) {
    fn(base);
    std::size_t k = rest.size();
    while (k > 0) {
      --k;
      const int r = rest[k];
      if (++digit[k] < layout.radix(r)) {
        base += layout.stride(r);
        break;
      }
      base -= static_cast<std::uint64_t>(digit[k] - 1) * layout.stride(r);
      digit[k] = 0;
      if (k == 0) return;
    }
    if (rest.empty()) return;
  }
}

void apply_dense(const CompiledGate& g, StateVector& state) {
  auto& a = state.dense();
  std::vector<cplx> x, tmp(g.moves.size());
  for_each_outer(state.layout(), g.registers, [&](std::uint64_t base) {
    for (const auto& b : g.blocks) {
      const std::size_t n = b.index.size();
      x.resize(n);
      bool any = false;
      for (std::size_t i = 0; i < n; ++i) {
        x[i] = a[base + g.local_offsets[b.index[i]]];
        any = any || x[i] != cplx{};
      }
      if (!any) continue;
      for (std::size_t r = 0; r < n; ++r) {
        cplx s{};
        const cplx* row = &b.matrix[r * n];
        for (std::size_t c = 0; c < n; ++c) s += row[c] * x[c];
        a[base + g.local_offsets[b.index[r]]] = s;
      }
    }
    if (g.moves.empty()) return;
    for (std::size_t k = 0; k < g.moves.size(); ++k) tmp[k] = a[base + g.local_offsets[g.moves[k].src]];
    for (std::size_t k = 0; k < g.moves.size(); ++k)
      a[base + g.local_offsets[g.moves[k].dst]] = g.moves[k].phase * tmp[k];
  });
}

void apply_sparse(const CompiledGate& g, StateVector& state) {
  const auto& layout = state.layout();
  std::vector<std::uint64_t> local_stride(g.registers.size(), 1);
  for (std::size_t k = g.registers.size(); k-- > 1;)
    local_stride[k - 1] = local_stride[k] * static_cast<std::uint64_t>(layout.radix(g.registers[k]));

  struct Entry {
    std::uint32_t local;
    cplx amp;
  };
  std::unordered_map<std::uint64_t, std::vector<Entry>> groups;
  for (const auto& [index, amp] : state.sparse()) {
    std::uint64_t l = 0;
    for (std::size_t k = 0; k < g.registers.size(); ++k)
      l += static_cast<std::uint64_t>(layout.digit(index, g.registers[k])) * local_stride[k];
    groups[index - g.local_offsets[l]].push_back({static_cast<std::uint32_t>(l), amp});
  }

  std::unordered_map<std::uint64_t, cplx> out;
  out.reserve(state.sparse().size() * 2);
  auto emit = [&](std::uint64_t index, cplx v) {
    if (v != cplx{}) out[index] = v;
  };
  std::vector<std::int32_t> pending;
  std::unordered_map<std::uint32_t, cplx> lookup;
  std::vector<cplx> x;
  for (const auto& [base, entries] : groups) {
    pending.clear();
    lookup.clear();
    for (const auto& e : entries) {
      const auto own = g.owner[e.local];
      if (own == -1) {
        emit(base + g.local_offsets[e.local], e.amp);
      } else if (own < -1) {
        const auto& mv = g.moves[static_cast<std::size_t>(-2 - own)];
        emit(base + g.local_offsets[mv.dst], mv.phase * e.amp);
      } else {
        pending.push_back(own);
        lookup[e.local] = e.amp;
      }
    }
    std::sort(pending.begin(), pending.end());
    pending.erase(std::unique(pending.begin(), pending.end()), pending.end());
    for (auto id : pending) {
      const auto& b = g.blocks[static_cast<std::size_t>(id)];
      const std::size_t n = b.index.size();
      x.assign(n, cplx{});
      for (std::size_t i = 0; i < n; ++i) {
        auto it = lookup.find(b.index[i]);
        if (it != lookup.end()) x[i] = it->second;
      }
      for (std::size_t r = 0; r < n; ++r) {
        cplx s{};
        for (std::size_t c = 0; c < n; ++c) s += b.matrix[r * n + c] * x[c];
        emit(base + g.local_offsets[b.index[r]], s);
      }
    }
  }
  state.sparse() = std::move(out);
}

}  // namespace

CompiledGate compile(const RegisterLayout& layout, const GateOp& op) {
  CompiledGate out;
  Compiler c(layout, out);
  std::visit(c, op);
  return out;
}

void apply(const CompiledGate& gate, StateVector& state) {
  if (state.backend() == Backend::dense)
    apply_dense(gate, state);
  else
    apply_sparse(gate, state);
}

Simulator::Simulator(const Circuit& circuit, SimulatorOptions options) : layout_(circuit.layout), options_(options) {
  compiled_.reserve(circuit.gates.size());
  for (const auto& g : circuit.gates) compiled_.push_back(compile(layout_, g.op));
}

void Simulator::run_gate(StateVector& state, std::size_t index) const {
  if (!(state.layout() == layout_)) throw ExecutionError("state layout does not match circuit layout");
  const double before = options_.check_norm ? state.norm() : 0.0;
  apply(compiled_.at(index), state);
  if (options_.check_norm) {
    const double after = state.norm();
    if (std::abs(after - before) > 1e-10)
      throw ExecutionError("gate " + std::to_string(index) + " changed the state norm by " +
                           std::to_string(after - before));
  }
}

void Simulator::run(StateVector& state, std::size_t begin, std::size_t end) const {
  if (!(state.layout() == layout_)) throw ExecutionError("state layout does not match circuit layout");
  for (std::size_t i = begin; i < end && i < compiled_.size(); ++i) run_gate(state, i);
}

void apply(const Circuit& circuit, StateVector& state, SimulatorOptions options) {
  Simulator(circuit, options).run(state);
}

void apply(const Gate& gate, StateVector& state) { apply(compile(state.layout(), gate.op), state); }

StateVector encode_input(const Tower& tower, const RegisterLayout& layout, std::span<const cplx> f, Backend backend,
                         std::uint64_t dense_cap) {
  if (f.size() != tower.order()) throw DomainError("input function length != |G|");
  double n2 = 0.0;
  for (auto v : f) n2 += std::norm(v);
  if (std::abs(std::sqrt(n2) - 1.0) > 1e-10)
    throw NormalizationError("input function has norm " + std::to_string(std::sqrt(n2)) + ", expected 1");
  StateVector state(layout, backend, dense_cap);
  const auto& elements = tower.elements();
  std::vector<int> values(static_cast<std::size_t>(layout.size()), 0);
  for (std::size_t g = 0; g < elements.size(); ++g) {
    if (f[g] == cplx{}) continue;
    const auto pos = tower.coset_positions(elements[g]);
    std::fill(values.begin(), values.end(), 0);
    for (int i = 1; i <= tower.levels(); ++i)
      values[static_cast<std::size_t>(layout.index_of(RegisterRole::alpha, i))] = pos[static_cast<std::size_t>(i - 1)] + 1;
    state.set(layout.compose(values), f[g]);
  }
  return state;
}

OutputMap::OutputMap(const RegisterLayout& layout, const BratteliDiagram& diagram) {
  const int m = diagram.levels();
  std::vector<int> values(static_cast<std::size_t>(layout.size()), 0);
  for (int v = 0; v < diagram.node_count(m); ++v) {
    const auto paths = diagram.paths_to(m, v);
    for (const auto& s : paths)
      for (const auto& t : paths) {
        std::fill(values.begin(), values.end(), 0);
        for (int l = 1; l <= m; ++l) {
          values[static_cast<std::size_t>(layout.index_of(RegisterRole::s_edge, l))] = s[static_cast<std::size_t>(l - 1)];
          values[static_cast<std::size_t>(layout.index_of(RegisterRole::t_edge, l))] = t[static_cast<std::size_t>(l - 1)];
        }
        index_.push_back(layout.compose(values));
        s_.push_back(s);
        t_.push_back(t);
      }
  }
}

DecodedOutput decode_output(const StateVector& state, const OutputMap& map) {
  DecodedOutput out;
  out.amplitudes.reserve(map.size());
  std::vector<std::uint64_t> valid;
  valid.reserve(map.size());
  for (std::size_t i = 0; i < map.size(); ++i) {
    out.amplitudes.push_back(state.get(map.basis_index(i)));
    valid.push_back(map.basis_index(i));
  }
  std::sort(valid.begin(), valid.end());
  if (state.backend() == Backend::dense) {
    const auto& a = state.dense();
    std::size_t next = 0;
    for (std::uint64_t i = 0; i < a.size(); ++i) {
      if (next < valid.size() && valid[next] == i) {
        ++next;
        continue;
      }
      out.leakage += std::norm(a[i]);
    }
  } else {
    for (const auto& [i, amp] : state.sparse())
      if (!std::binary_search(valid.begin(), valid.end(), i)) out.leakage += std::norm(amp);
  }
  return out;
}

double mass_outside_stage_pattern(const StateVector& state, const BratteliDiagram& diagram, int level) {
  const auto& layout = state.layout();
  const int m = layout.levels();
  std::set<std::pair<std::vector<int>, std::vector<int>>> valid;
  if (level == 0) {
    valid.insert({{}, {}});
  } else {
    for (int v = 0; v < diagram.node_count(level); ++v) {
      const auto paths = diagram.paths_to(level, v);
      for (const auto& s : paths)
        for (const auto& t : paths) valid.insert({s, t});
    }
  }
  double outside = 0.0;
  std::vector<int> sp, tp;
  state.for_each_nonzero([&](std::uint64_t index, cplx amp) {
    bool ok = true;
    for (int i = 1; i <= m && ok; ++i) {
      const int a = layout.digit(index, layout.index_of(RegisterRole::alpha, i));
      ok = i <= level ? a == 0 : a != 0;
      if (i > level) {
        ok = ok && layout.digit(index, layout.index_of(RegisterRole::s_edge, i)) == 0 &&
             layout.digit(index, layout.index_of(RegisterRole::t_edge, i)) == 0;
      }
    }
    if (ok) {
      sp.clear();
      tp.clear();
      for (int i = 1; i <= level; ++i) {
        sp.push_back(layout.digit(index, layout.index_of(RegisterRole::s_edge, i)));
        tp.push_back(layout.digit(index, layout.index_of(RegisterRole::t_edge, i)));
      }
      ok = valid.count({sp, tp}) > 0;
    }
    if (!ok) outside += std::norm(amp);
  });
  return outside;
}

}  // namespace gqft
