#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "gqft/errors.hpp"
#include "gqft/fourier.hpp"
#include "gqft/verify.hpp"

using namespace gqft;

namespace {

StateVector random_state(const RegisterLayout& layout, std::uint64_t seed, Backend backend = Backend::dense) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  StateVector s(layout, backend);
  std::vector<cplx> v(layout.dimension());
  double n2 = 0.0;
  for (auto& x : v) {
    x = {n(rng), n(rng)};
    n2 += std::norm(x);
  }
  for (std::uint64_t i = 0; i < v.size(); ++i) s.set(i, v[i] / std::sqrt(n2));
  return s;
}

double distance(const StateVector& a, const StateVector& b) {
  double d = 0.0;
  for (std::uint64_t i = 0; i < a.dimension(); ++i) d = std::max(d, std::abs(a.get(i) - b.get(i)));
  return d;
}

}  // namespace

TEST(Simulator, EmptyCircuitLeavesStateAlone) {
  auto ctx = QftContext::build(GroupSpec::symmetric(3));
  Circuit c;
  c.layout = ctx->layout;
  auto s = random_state(c.layout, 1);
  const auto before = s;
  apply(c, s);
  EXPECT_EQ(distance(s, before), 0.0);
}

TEST(Simulator, TwoPointFourier) {
  const RegisterLayout L({{RegisterRole::alpha, 1, 2}});
  StateVector s(L, Backend::dense);
  s.set(0, 1.0);
  apply(Gate{PrimitiveCyclicQFT{0, 2, 0, false, {}, {}}, {}}, s);
  EXPECT_NEAR(s.get(0).real(), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(s.get(1).real(), 1 / std::sqrt(2.0), 1e-15);
}

TEST(Simulator, LayoutMismatch) {
  const RegisterLayout a({{RegisterRole::alpha, 1, 2}}), b({{RegisterRole::alpha, 1, 3}});
  Circuit c;
  c.layout = a;
  StateVector s(b, Backend::dense);
  EXPECT_THROW(apply(c, s), ExecutionError);
}

TEST(Simulator, DenseCap) {
  const RegisterLayout L({{RegisterRole::alpha, 1, 1024}, {RegisterRole::alpha, 2, 1024}});
  EXPECT_THROW(StateVector(L, Backend::dense, 1000), CapabilityError);
  EXPECT_EQ(choose_backend(L, 1000), Backend::sparse);
  EXPECT_EQ(choose_backend(L), Backend::dense);
}

TEST(Simulator, GateThenAdjointIsIdentity) {
  for (auto spec : {GroupSpec::symmetric(3), GroupSpec::dihedral(5), GroupSpec::cyclic(8), GroupSpec::metacyclic(7, 3, 2)}) {
    const auto c = synth_qft(spec);
    for (std::size_t k = 0; k < c.gates.size(); ++k) {
      auto s = random_state(c.layout, 100 + k);
      const auto before = s;
      apply(c.gates[k], s);
      apply(adjoint(c.gates[k]), s);
      ASSERT_LT(distance(s, before), 1e-10) << spec.id() << " gate " << k << " " << gate_kind(c.gates[k].op);
    }
  }
}

TEST(Simulator, NormPreservedByEveryGate) {
  for (auto spec : {GroupSpec::symmetric(4), GroupSpec::dihedral(7), GroupSpec::cyclic(12)}) {
    const auto c = synth_qft(spec);
    const Simulator sim(c, {.check_norm = true});
    auto s = random_state(c.layout, 3);
    for (std::size_t k = 0; k < sim.gate_count(); ++k) {
      sim.run_gate(s, k);
      ASSERT_NEAR(s.norm(), 1.0, 1e-10) << spec.id() << " gate " << k;
    }
  }
}

TEST(Simulator, DenseAndSparseAgree) {
  const auto c = synth_qft(GroupSpec::symmetric(3));
  auto ctx = QftContext::build(GroupSpec::symmetric(3));
  const auto f = random_function(*ctx->tower, 5);
  auto d = encode_input(*ctx->tower, c.layout, f, Backend::dense);
  auto s = encode_input(*ctx->tower, c.layout, f, Backend::sparse);
  apply(c, d);
  apply(c, s);
  EXPECT_LT(distance(d, s), 1e-13);
}

TEST(Encode, DeltaIdentity) {
  auto ctx = QftContext::build(GroupSpec::symmetric(3));
  const auto& T = *ctx->tower;
  const auto s = encode_input(T, ctx->layout, delta_function(T, T.element_index(T.group().identity())), Backend::dense);
  EXPECT_EQ(s.nonzeros(), 1u);
  std::vector<int> digits(static_cast<std::size_t>(ctx->layout.size()), 0);
  digits[0] = digits[1] = 1;
  EXPECT_EQ(s.get(ctx->layout.compose(digits)), cplx(1.0));
}

TEST(Encode, UniformZ6AndRandomS3Support) {
  auto z6 = QftContext::build(GroupSpec::cyclic(6));
  const auto u = encode_input(*z6->tower, z6->layout, uniform_function(*z6->tower), Backend::dense);
  EXPECT_EQ(u.nonzeros(), 6u);
  u.for_each_nonzero([](std::uint64_t, cplx a) { EXPECT_NEAR(std::abs(a), 1 / std::sqrt(6.0), 1e-15); });

  auto s3 = QftContext::build(GroupSpec::symmetric(3));
  const auto& T = *s3->tower;
  const auto r = encode_input(T, s3->layout, random_function(T, 2), Backend::dense);
  std::set<std::uint64_t> expected;
  for (const auto& g : T.elements()) {
    std::vector<int> digits(static_cast<std::size_t>(s3->layout.size()), 0);
    const auto pos = T.coset_positions(g);
    for (int l = 1; l <= T.levels(); ++l)
      digits[static_cast<std::size_t>(s3->layout.index_of(RegisterRole::alpha, l))] = pos[static_cast<std::size_t>(l - 1)] + 1;
    expected.insert(s3->layout.compose(digits));
  }
  std::set<std::uint64_t> support;
  r.for_each_nonzero([&](std::uint64_t i, cplx) { support.insert(i); });
  EXPECT_EQ(support, expected);
}

TEST(Encode, RejectsUnnormalised) {
  auto ctx = QftContext::build(GroupSpec::cyclic(4));
  std::vector<cplx> f(4, 1.0);
  EXPECT_THROW(encode_input(*ctx->tower, ctx->layout, f, Backend::dense), NormalizationError);
}

TEST(Decode, EncodedStateHasNoOutputMassUnlessIdentityCoset) {
  auto ctx = QftContext::build(GroupSpec::symmetric(3));
  const auto& T = *ctx->tower;
  const OutputMap map(ctx->layout, *ctx->diagram);
  const auto s = encode_input(T, ctx->layout, random_function(T, 4), Backend::dense);
  const auto d = decode_output(s, map);
  for (auto a : d.amplitudes) EXPECT_EQ(a, cplx(0.0));
  EXPECT_NEAR(d.leakage, 1.0, 1e-12);
}

TEST(Decode, S3DeltaIdentityIsDiagonal) {
  auto ctx = QftContext::build(GroupSpec::symmetric(3));
  const auto& T = *ctx->tower;
  auto s = encode_input(T, ctx->layout, delta_function(T, T.element_index(T.group().identity())), Backend::dense);
  apply(synth_qft(GroupSpec::symmetric(3)), s);
  const OutputMap map(ctx->layout, *ctx->diagram);
  const auto d = decode_output(s, map);
  EXPECT_LE(d.leakage, 1e-18);
  const FourierIndex idx(*ctx->table);
  for (int v = 0; v < idx.nodes(); ++v)
    for (int i = 0; i < idx.dim(v); ++i)
      for (int j = 0; j < idx.dim(v); ++j) {
        const auto slot = idx.flat(v, i, j);
        const double want = i == j ? std::sqrt(idx.dim(v) / 6.0) : 0.0;
        EXPECT_NEAR(std::abs(d.amplitudes[slot] - want), 0.0, 1e-12);
        EXPECT_EQ(map.s_path(slot) == map.t_path(slot), i == j);
      }
}
