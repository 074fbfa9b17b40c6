#include <benchmark/benchmark.h>

#include "gqft/verify.hpp"

using namespace gqft;

namespace {

GroupSpec spec_for(int family, int n) {
  switch (family) {
    case 0: return GroupSpec::symmetric(n);
    case 1: return GroupSpec::dihedral(n);
    default: return GroupSpec::cyclic(1 << n);
  }
}

void BM_BuildContext(benchmark::State& state) {
  const auto spec = spec_for(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(QftContext::build(spec));
}
BENCHMARK(BM_BuildContext)->Args({0, 4})->Args({0, 5})->Args({0, 6})->Args({1, 13})->Unit(benchmark::kMillisecond);

void BM_Synthesize(benchmark::State& state) {
  const Synthesizer s(QftContext::build(spec_for(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)))));
  std::size_t gates = 0;
  for (auto _ : state) {
    const auto c = s.synthesize(PlanKind::automatic);
    gates = c.gates.size();
    benchmark::DoNotOptimize(c);
  }
  state.counters["gates"] = static_cast<double>(gates);
}
BENCHMARK(BM_Synthesize)->Args({0, 4})->Args({0, 5})->Args({0, 6})->Args({1, 13})->Args({2, 8})->Unit(benchmark::kMillisecond);

void BM_Compile(benchmark::State& state) {
  const auto c = synth_qft(spec_for(static_cast<int>(state.range(0)), static_cast<int>(state.range(1))));
  for (auto _ : state) benchmark::DoNotOptimize(Simulator(c));
}
BENCHMARK(BM_Compile)->Args({0, 4})->Args({1, 13})->Unit(benchmark::kMillisecond);

// Full circuit on one delta input.
void BM_RunCircuit(benchmark::State& state) {
  const auto spec = spec_for(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const auto ctx = QftContext::build(spec);
  const Simulator sim(Synthesizer(ctx).synthesize(PlanKind::automatic));
  const auto f = delta_function(*ctx->tower, 0);
  const Backend backend = state.range(2) ? Backend::sparse : Backend::dense;
  for (auto _ : state) {
    auto s = encode_input(*ctx->tower, ctx->layout, f, backend);
    sim.run(s);
    benchmark::DoNotOptimize(s);
  }
  state.counters["dimension"] = static_cast<double>(ctx->layout.dimension());
}
BENCHMARK(BM_RunCircuit)
    ->Args({0, 3, 0})
    ->Args({0, 4, 0})
    ->Args({0, 4, 1})
    ->Args({1, 13, 0})
    ->Args({1, 13, 1})
    ->Args({2, 8, 1})
    ->Unit(benchmark::kMillisecond);

// One gate of each kind, taken from the first circuit that has one.
void BM_ApplyGate(benchmark::State& state) {
  const auto kind = static_cast<std::size_t>(state.range(0));
  for (const auto& spec : {GroupSpec::symmetric(4), GroupSpec::dihedral(13), GroupSpec::cyclic(64)}) {
    const auto c = synth_qft(spec);
    for (std::size_t k = 0; k < c.gates.size(); ++k) {
      if (c.gates[k].op.index() != kind) continue;
      const Simulator sim(c);
      StateVector s(c.layout, Backend::dense);
      for (std::uint64_t i = 0; i < s.dimension(); i += 3) s.set(i, 1e-3);
      for (auto _ : state) sim.run_gate(s, k);
      state.SetLabel(spec.id() + " " + std::string(gate_kind(c.gates[k].op)));
      return;
    }
  }
  state.SkipWithError("no gate of this kind");
}
BENCHMARK(BM_ApplyGate)->DenseRange(0, 4)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
