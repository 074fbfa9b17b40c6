#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include <nlohmann/json.hpp>

#include "gqft/errors.hpp"
#include "gqft/synth.hpp"

using namespace gqft;

namespace {

RegisterLayout small_layout() {
  return RegisterLayout({{RegisterRole::alpha, 2, 3},
                         {RegisterRole::alpha, 1, 2},
                         {RegisterRole::s_edge, 1, 3},
                         {RegisterRole::s_edge, 2, 4},
                         {RegisterRole::t_edge, 1, 3},
                         {RegisterRole::t_edge, 2, 4}});
}

Matrix random_unitary(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Matrix a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = {n(rng), n(rng)};
  return Eigen::HouseholderQR<Matrix>(a).householderQ();
}

std::vector<int> pick_registers(int count, int total, std::mt19937_64& rng) {
  std::vector<int> all(static_cast<std::size_t>(total));
  std::iota(all.begin(), all.end(), 0);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(static_cast<std::size_t>(count));
  return all;
}

Gate random_gate(const RegisterLayout& layout, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 3);
  Gate g;
  g.provenance = {"level " + std::to_string(rng() % 3), "beals", static_cast<int>(rng() % 3), static_cast<int>(rng() % 4) - 1,
                  "random"};
  switch (kind(rng)) {
    case 0: {
      auto regs = pick_registers(2, layout.size(), rng);
      ConditionedUnitary cu;
      cu.targets = {regs[0]};
      cu.controls = {regs[1]};
      const int d = layout.radix(regs[0]);
      for (int v = 0; v < layout.radix(regs[1]); v += 2) cu.branches.push_back({{{v}}, random_unitary(d, rng)});
      g.op = cu;
      break;
    }
    case 1: {
      auto regs = pick_registers(2, layout.size(), rng);
      ClassicalPermutation p;
      p.registers = regs;
      p.image.resize(layout.local_dimension(regs));
      std::iota(p.image.begin(), p.image.end(), 0u);
      std::shuffle(p.image.begin(), p.image.end(), rng);
      g.op = p;
      break;
    }
    case 2: {
      auto regs = pick_registers(2, layout.size(), rng);
      Phase ph;
      ph.registers = regs;
      ph.modulus = 2 + static_cast<int>(rng() % 7);
      for (std::uint64_t x = 0; x < layout.local_dimension(regs); ++x)
        ph.exponents.push_back(static_cast<int>(rng() % static_cast<std::uint64_t>(ph.modulus)));
      g.op = ph;
      break;
    }
    default: {
      auto regs = pick_registers(2, layout.size(), rng);
      PrimitiveCyclicQFT q;
      q.target = regs[0];
      q.offset = 1;
      q.order = layout.radix(regs[0]) - 1;
      q.inverse = rng() % 2;
      if (rng() % 2) {
        q.controls = {regs[1]};
        q.when = {{0}, {1}};
      }
      g.op = q;
      break;
    }
  }
  return g;
}

Circuit random_circuit(std::uint64_t seed, int gates) {
  std::mt19937_64 rng(seed);
  Circuit c;
  c.layout = small_layout();
  for (int k = 0; k < gates; ++k) c.gates.push_back(random_gate(c.layout, rng));
  return c;
}

// A real twiddle gate: S_4, letter (3 4).
StructuredUnitary s4_generator_gate() {
  const Synthesizer s(QftContext::build(GroupSpec::symmetric(4)));
  const auto gates = s.twiddle(3, 1, false);
  return std::get<StructuredUnitary>(gates.at(0).op);
}

bool has_message(const std::vector<Diagnostic>& d, const std::string& needle) {
  for (const auto& x : d)
    if (x.message.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST(Layout, ForTower) {
  auto ctx = QftContext::build(GroupSpec::symmetric(3));
  const auto& L = ctx->layout;
  ASSERT_EQ(L.size(), 6);
  EXPECT_EQ(L.at(0).name(), "alpha[2]");
  EXPECT_EQ(L.at(0).radix, 4);
  EXPECT_EQ(L.at(1).radix, 3);
  EXPECT_EQ(L.index_of(RegisterRole::s_edge, 1), 2);
  EXPECT_EQ(L.index_of(RegisterRole::t_edge, 2), 5);
  EXPECT_EQ(L.find(RegisterRole::t_edge, 3), -1);
  EXPECT_THROW(L.index_of(RegisterRole::alpha, 7), DomainError);
  std::uint64_t dim = 1;
  for (const auto& r : L.registers()) dim *= static_cast<std::uint64_t>(r.radix);
  EXPECT_EQ(L.dimension(), dim);
}

TEST(Layout, ComposeDecompose) {
  const auto L = small_layout();
  for (std::uint64_t i = 0; i < L.dimension(); i += 7) {
    const auto v = L.decompose(i);
    EXPECT_EQ(L.compose(v), i);
    for (int r = 0; r < L.size(); ++r) EXPECT_EQ(L.digit(i, r), v[static_cast<std::size_t>(r)]);
  }
  const std::vector<int> regs{3, 0};
  for (std::uint64_t x = 0; x < L.local_dimension(regs); ++x) EXPECT_EQ(L.local_index(regs, L.local_values(regs, x)), x);
  EXPECT_EQ(L.stride(L.size() - 1), 1u);
}

TEST(Validate, EmptyCircuitIsValid) {
  Circuit c;
  c.layout = small_layout();
  EXPECT_TRUE(validate(c).empty());
  EXPECT_EQ(cost(c), 0u);
}

TEST(Validate, UnknownRegister) {
  Circuit c;
  c.layout = small_layout();
  c.gates.push_back({Phase{{17}, 2, {0, 1}}, {}});
  const auto d = validate(c);
  ASSERT_FALSE(d.empty());
  EXPECT_EQ(d[0].gate, 0);
  EXPECT_TRUE(has_message(d, "unknown register"));
  EXPECT_THROW(cost(c), ValidationError);
}

TEST(Validate, NonBijectivePermutationAndNonUnitary) {
  Circuit c;
  c.layout = small_layout();
  c.gates.push_back({ClassicalPermutation{{1}, {0, 0}}, {}});
  Matrix m = Matrix::Identity(2, 2);
  m(0, 0) = 2.0;
  c.gates.push_back({ConditionedUnitary{{1}, {}, {{{{}}, m}}}, {}});
  const auto d = validate(c);
  EXPECT_TRUE(has_message(d, "not a bijection"));
  EXPECT_TRUE(has_message(d, "not unitary"));
}

TEST(Validate, PerturbedCertificate) {
  auto g = s4_generator_gate();
  Circuit c;
  c.layout = QftContext::build(GroupSpec::symmetric(4))->layout;
  c.gates.push_back({g, {}});
  ASSERT_TRUE(validate(c).empty());

  // Put 1e-3 of mass on an entry no block claims.
  bool done = false;
  for (std::size_t v = 0; v < g.node_matrices.size() && !done; ++v) {
    const auto n = g.node_matrices[v].rows();
    std::vector<std::vector<bool>> claimed(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
    for (const auto& b : g.blocks) {
      if (b.node != static_cast<int>(v)) continue;
      for (int x = 0; x < b.d; ++x)
        for (int u = 0; u < b.m; ++u)
          for (int w = 0; w < b.m; ++w)
            claimed[static_cast<std::size_t>(b.rows[u][x])][static_cast<std::size_t>(b.rows[w][x])] = true;
    }
    for (Eigen::Index i = 0; i < n && !done; ++i)
      for (Eigen::Index j = 0; j < n && !done; ++j)
        if (!claimed[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) {
          g.node_matrices[v](i, j) += 1e-3;
          done = true;
        }
  }
  ASSERT_TRUE(done);
  c.gates[0].op = g;
  EXPECT_TRUE(has_message(validate(c), "certificate violated"));
}

TEST(Cost, Examples) {
  Circuit c;
  c.layout = small_layout();
  ConditionedUnitary cu{{1}, {0}, {}};
  for (int v = 0; v < 3; ++v) cu.branches.push_back({{{v}}, Matrix::Identity(2, 2)});
  EXPECT_EQ(gate_cost(cu), 12u);
  PrimitiveCyclicQFT q;
  q.order = 8;
  EXPECT_EQ(gate_cost(q), 6u);
}

TEST(Cost, AdditiveAndStableUnderRoundTrip) {
  const auto a = random_circuit(1, 10), b = random_circuit(2, 7);
  Circuit ab = a;
  ab.gates.insert(ab.gates.end(), b.gates.begin(), b.gates.end());
  EXPECT_EQ(cost(ab), cost(a) + cost(b));
  EXPECT_EQ(cost(deserialize(serialize(ab))), cost(ab));
}

TEST(Json, EmptyCircuitShape) {
  Circuit c;
  c.layout = small_layout();
  const auto j = nlohmann::json::parse(serialize(c));
  EXPECT_TRUE(j["gates"].is_array());
  EXPECT_TRUE(j["gates"].empty());
  EXPECT_EQ(j["layout"].size(), 6u);
}

TEST(Json, RandomCircuitsRoundTrip) {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const auto c = random_circuit(seed, 12);
    ASSERT_TRUE(is_valid(c));
    const auto text = serialize(c);
    const auto back = deserialize(text);
    EXPECT_EQ(back, c) << "seed " << seed;
    EXPECT_EQ(serialize(back), text);
  }
}

TEST(Json, SynthesizedCircuitsRoundTrip) {
  for (auto spec : {GroupSpec::symmetric(3), GroupSpec::dihedral(5), GroupSpec::cyclic(8)}) {
    const auto c = synth_qft(spec);
    const auto back = deserialize(serialize(c));
    EXPECT_EQ(back, c) << spec.id();
    ASSERT_TRUE(back.group.has_value());
    EXPECT_EQ(*back.group, spec);
  }
}

TEST(Json, TruncatedDocument) {
  const auto text = serialize(random_circuit(3, 4));
  EXPECT_THROW(deserialize(text.substr(0, text.size() / 2)), ParseError);
  try {
    deserialize(text.substr(0, text.size() / 2));
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("byte"), std::string::npos) << e.what();
  }
}

TEST(Json, SchemaErrorsNameThePath) {
  auto j = nlohmann::json::parse(serialize(random_circuit(4, 3)));
  j["gates"][1]["kind"] = "teleport";
  try {
    circuit_from_json(j);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("/gates/1"), std::string::npos) << e.what();
  }
}

TEST(Adjoint, IsInvolution) {
  const auto c = random_circuit(9, 15);
  EXPECT_EQ(adjoint(adjoint(c)), c);
  EXPECT_EQ(adjoint(c).gates.size(), c.gates.size());
}

TEST(Dot, MentionsEveryGate) {
  const auto c = random_circuit(5, 3);
  const auto dot = to_dot(c);
  EXPECT_NE(dot.find("digraph"), std::string::npos);
  for (const auto& g : c.gates) EXPECT_NE(dot.find(std::string(gate_kind(g.op))), std::string::npos);
}
