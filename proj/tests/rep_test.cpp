#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <nlohmann/json.hpp>

#include "gqft/errors.hpp"
#include "gqft/fourier.hpp"
#include "gqft/schur.hpp"
#include "gqft/synth.hpp"
#include "gqft/verify.hpp"

using namespace gqft;

namespace {

std::shared_ptr<const QftContext> ctx(const GroupSpec& spec) { return QftContext::build(spec); }

int node_by_label(const BratteliDiagram& d, int level, const std::string& label) {
  for (int v = 0; v < d.node_count(level); ++v)
    if (d.label(level, v) == label) return v;
  ADD_FAILURE() << "no node " << label << " at level " << level;
  return -1;
}

Matrix mat2(cplx a, cplx b, cplx c, cplx d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

std::vector<GroupSpec> suite() {
  std::vector<GroupSpec> out;
  for (int n : {1, 2, 5, 6, 8, 12, 16}) out.push_back(GroupSpec::cyclic(n));
  for (int n : {2, 3, 4}) out.push_back(GroupSpec::symmetric(n));
  for (int p : {3, 5, 7}) out.push_back(GroupSpec::dihedral(p));
  out.push_back(GroupSpec::metacyclic(7, 3, 2));
  out.push_back(GroupSpec::metacyclic(3, 2, 1));
  return out;
}

}  // namespace

TEST(Irreps, S3LabelsAndDims) {
  auto c = ctx(GroupSpec::symmetric(3));
  const auto& top = c->table->irreps(2);
  ASSERT_EQ(top.size(), 3u);
  EXPECT_EQ(top[0].label, "(3)");
  EXPECT_EQ(top[1].label, "(2,1)");
  EXPECT_EQ(top[2].label, "(1,1,1)");
  EXPECT_EQ(top[0].dim, 1);
  EXPECT_EQ(top[1].dim, 2);
  EXPECT_EQ(top[2].dim, 1);
}

TEST(Irreps, YoungOrthogonalExamples) {
  auto c = ctx(GroupSpec::symmetric(3));
  const auto& G = *c->group;
  const int rho = node_by_label(*c->diagram, 2, "(2,1)");
  const Matrix a = c->table->evaluate(2, rho, G.parse("(1 2)"));
  EXPECT_LT(max_abs(a - mat2(1, 0, 0, -1)), 1e-12);
  const double h = std::sqrt(3.0) / 2;
  const Matrix b = c->table->evaluate(2, rho, G.parse("(2 3)"));
  EXPECT_LT(max_abs(b - mat2(-0.5, h, h, 0.5)), 1e-12);
  EXPECT_LT(max_abs(c->table->evaluate(2, rho, G.identity()) - Matrix::Identity(2, 2)), 1e-15);
}

TEST(Irreps, CyclicCharacters) {
  auto c = ctx(GroupSpec::cyclic(6));
  const auto& top = c->table->irreps(2);
  ASSERT_EQ(top.size(), 6u);
  for (int v = 0; v < 6; ++v) {
    const int j = std::stoi(top[static_cast<std::size_t>(v)].label);
    for (int x = 0; x < 6; ++x) EXPECT_LT(std::abs(c->table->evaluate(2, v, {x})(0, 0) - root_of_unity(6, j * x)), 1e-12);
  }
}

TEST(Irreps, D5Orbits) {
  auto c = ctx(GroupSpec::dihedral(5));
  const auto& top = c->table->irreps(c->table->levels());
  std::vector<int> dims;
  std::vector<std::vector<int>> two_dim_parents;
  for (const auto& r : top) {
    dims.push_back(r.dim);
    if (r.dim == 2) {
      auto p = r.parents;
      std::sort(p.begin(), p.end());
      two_dim_parents.push_back(p);
    }
  }
  std::sort(dims.begin(), dims.end());
  EXPECT_EQ(dims, (std::vector<int>{1, 1, 2, 2}));
  std::sort(two_dim_parents.begin(), two_dim_parents.end());
  EXPECT_EQ(two_dim_parents, (std::vector<std::vector<int>>{{1, 4}, {2, 3}}));
}

TEST(Irreps, CompletenessAtEveryLevel) {
  for (const auto& spec : suite()) {
    auto c = ctx(spec);
    for (int l = 0; l <= c->table->levels(); ++l) {
      std::size_t sum = 0;
      for (const auto& r : c->table->irreps(l)) sum += static_cast<std::size_t>(r.dim * r.dim);
      EXPECT_EQ(sum, c->tower->subgroup_order(l)) << spec.id() << " level " << l;
    }
  }
}

TEST(Irreps, Homomorphism) {
  std::mt19937 rng(7);
  for (const auto& spec : suite()) {
    auto c = ctx(spec);
    const auto& G = *c->group;
    const auto& els = c->tower->elements();
    const int top = c->table->levels();
    const std::size_t n = els.size();
    auto check = [&](const Element& g, const Element& h) {
      for (int v = 0; v < c->diagram->node_count(top); ++v) {
        const Matrix lhs = c->table->evaluate(top, v, G.mul(g, h));
        const Matrix rhs = c->table->evaluate(top, v, g) * c->table->evaluate(top, v, h);
        ASSERT_LT(max_abs(lhs - rhs), 1e-10) << spec.id();
      }
    };
    if (n <= 24) {
      for (const auto& g : els)
        for (const auto& h : els) check(g, h);
    } else {
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      for (int k = 0; k < 200; ++k) check(els[pick(rng)], els[pick(rng)]);
    }
  }
}

TEST(Irreps, OrthogonalityRelations) {
  for (const auto& spec : suite()) {
    auto c = ctx(spec);
    const Matrix F = dense_qft_matrix(*c->table);
    // Rows of F are sqrt(d/|G|) rho_jk(g); orthonormal rows <=> Eq. orthogonality.
    EXPECT_LT(max_abs(F * F.adjoint() - Matrix::Identity(F.rows(), F.rows())), 1e-10) << spec.id();
    EXPECT_LT(unitarity_residual(F), 1e-10) << spec.id();
  }
}

TEST(Irreps, GelfandTsetlinBlocks) {
  for (const auto& spec : suite()) {
    auto c = ctx(spec);
    const auto& d = *c->diagram;
    for (int l = 1; l <= c->table->levels(); ++l)
      for (int v = 0; v < d.node_count(l); ++v) {
        const int dim = d.dim(l, v);
        const auto& parents = d.parents(l, v);
        for (const auto& h : c->tower->elements()) {
          if (c->group->level_of(h) > l - 1) continue;
          const Matrix m = c->table->evaluate(l, v, h);
          Matrix expect = Matrix::Zero(dim, dim);
          for (std::size_t s = 0; s < parents.size(); ++s) {
            const int off = d.slot_offset(l, v, static_cast<int>(s));
            const int pd = d.dim(l - 1, parents[s]);
            expect.block(off, off, pd, pd) = c->table->evaluate(l - 1, parents[s], h);
          }
          ASSERT_LT(max_abs(m - expect), 1e-10) << spec.id() << " level " << l << " node " << v;
        }
      }
  }
}

TEST(Bratteli, Z6Diagram) {
  auto c = ctx(GroupSpec::cyclic(6));
  const auto& d = *c->diagram;
  EXPECT_EQ(d.node_count(0), 1);
  EXPECT_EQ(d.node_count(1), 3);
  EXPECT_EQ(d.node_count(2), 6);
  for (int v = 0; v < 6; ++v) EXPECT_EQ(d.parents(2, v).size(), 1u);
  EXPECT_EQ(d.path_count(0, 0), 1u);
  EXPECT_EQ(d.paths_to(0, 0), std::vector<GTPath>{GTPath{}});
}

TEST(Bratteli, S4Diagram) {
  auto c = ctx(GroupSpec::symmetric(4));
  const auto& d = *c->diagram;
  std::vector<std::string> labels;
  std::vector<std::size_t> counts;
  for (int v = 0; v < d.node_count(3); ++v) {
    labels.push_back(d.label(3, v));
    counts.push_back(d.path_count(3, v));
  }
  EXPECT_EQ(labels, (std::vector<std::string>{"(4)", "(3,1)", "(2,2)", "(2,1,1)", "(1,1,1,1)"}));
  EXPECT_EQ(counts, (std::vector<std::size_t>{1, 3, 2, 3, 1}));

  const int s21 = node_by_label(*ctx(GroupSpec::symmetric(3))->diagram, 2, "(2,1)");
  auto b = d.branching(2, s21);
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(d.label(1, b[0].parent), "(2)");
  EXPECT_EQ(d.label(1, b[1].parent), "(1,1)");
  EXPECT_EQ(b[0].multiplicity, 1);
  EXPECT_EQ(b[1].multiplicity, 1);
}

TEST(Bratteli, TwoStepMultiplicity) {
  auto c = ctx(GroupSpec::symmetric(4));
  const auto& d = *c->diagram;
  const int rho = node_by_label(d, 3, "(3,1)");
  const int sigma = node_by_label(d, 1, "(2)");
  EXPECT_EQ(d.paths_between(1, sigma, 3, rho).size(), 2u);
}

TEST(Bratteli, PathIndexRoundTrip) {
  for (const auto& spec : suite()) {
    auto c = ctx(spec);
    const auto& d = *c->diagram;
    for (int l = 0; l <= d.levels(); ++l)
      for (int v = 0; v < d.node_count(l); ++v) {
        EXPECT_EQ(d.path_count(l, v), static_cast<std::size_t>(d.dim(l, v)));
        const auto paths = d.paths_to(l, v);
        for (int r = 0; r < d.dim(l, v); ++r) {
          const auto& path = paths[static_cast<std::size_t>(r)];
          EXPECT_EQ(d.index_to_path(l, v, r), path);
          const auto slot = d.path_to_index(path);
          EXPECT_EQ(slot.node, v);
          EXPECT_EQ(slot.row, r);
        }
      }
    EXPECT_THROW(d.path_to_index(GTPath{99}), DomainError);
  }
}

TEST(Bratteli, JsonAndDot) {
  auto c = ctx(GroupSpec::symmetric(3));
  const auto j = c->diagram->to_json();
  ASSERT_TRUE(j.contains("levels"));
  EXPECT_EQ(j["levels"].size(), 3u);
  EXPECT_NE(c->diagram->to_dot().find("digraph"), std::string::npos);
}

TEST(Fourier, DeltaIdentity) {
  auto c = ctx(GroupSpec::symmetric(3));
  const auto& T = *c->tower;
  const auto f = delta_function(T, T.element_index(T.group().identity()));
  const auto coeffs = fourier(*c->table, f);
  const int top = c->table->levels();
  for (int v = 0; v < c->diagram->node_count(top); ++v) {
    const int dim = c->diagram->dim(top, v);
    EXPECT_LT(max_abs(coeffs[static_cast<std::size_t>(v)] - std::sqrt(dim / 6.0) * Matrix::Identity(dim, dim)), 1e-12);
  }
}

TEST(Fourier, PlancherelAndInversion) {
  for (const auto& spec : suite()) {
    auto c = ctx(spec);
    const auto f = random_function(*c->tower, 11);
    const auto coeffs = fourier(*c->table, f);
    double mass = 0.0;
    for (const auto& m : coeffs) mass += m.squaredNorm();
    EXPECT_NEAR(mass, 1.0, 1e-10) << spec.id();
    const auto back = inverse_fourier(*c->table, coeffs);
    for (std::size_t i = 0; i < f.size(); ++i) ASSERT_LT(std::abs(back[i] - f[i]), 1e-10) << spec.id();
  }
}

TEST(Fourier, MatrixElementHasSingleCoefficient) {
  auto c = ctx(GroupSpec::symmetric(3));
  const int top = 2;
  const int rho = node_by_label(*c->diagram, top, "(2,1)");
  const auto& els = c->tower->elements();
  std::vector<cplx> f(els.size());
  // f(g) = conj(rho_01(g)) so that f-hat(rho)_{01} = sqrt(d/|G|) * |G|/d, normalised.
  for (std::size_t g = 0; g < els.size(); ++g) f[g] = std::conj(c->table->evaluate(top, rho, els[g])(0, 1));
  double n2 = 0.0;
  for (auto v : f) n2 += std::norm(v);
  for (auto& v : f) v /= std::sqrt(n2);
  const auto coeffs = fourier(*c->table, f);
  for (int v = 0; v < c->diagram->node_count(top); ++v)
    for (int i = 0; i < coeffs[static_cast<std::size_t>(v)].rows(); ++i)
      for (int j = 0; j < coeffs[static_cast<std::size_t>(v)].cols(); ++j) {
        const double a = std::abs(coeffs[static_cast<std::size_t>(v)](i, j));
        if (v == rho && i == 0 && j == 1)
          EXPECT_NEAR(a, 1.0, 1e-10);
        else
          EXPECT_LT(a, 1e-10);
      }
}

TEST(Fourier, Z2Matrix) {
  const Matrix F = dense_qft_matrix(*ctx(GroupSpec::cyclic(2))->table);
  const double r = 1 / std::sqrt(2.0);
  EXPECT_LT(max_abs(F - mat2(r, r, r, -r)), 1e-15);
}

TEST(Schur, IdentityAndS4Blocks) {
  auto c = ctx(GroupSpec::symmetric(4));
  const auto& gens = c->tower->generators();
  for (int g = 0; g < static_cast<int>(gens.size()); ++g) {
    const auto cert = schur_certificate(*c->table, *c->diagram, 3, g, false);
    EXPECT_LE(cert.residual, 1e-10);
    EXPECT_LE(cert.max_block(), 2) << gens[static_cast<std::size_t>(g)].name;
  }
  // (3 4) centralizes S_2; on (3,1) the (2)-block is 2x2.
  const int rho = node_by_label(*c->diagram, 3, "(3,1)");
  const auto blocks = schur_blocks(*c->table, *c->diagram, 3, rho, 2, false);
  int largest = 0;
  for (const auto& b : blocks) largest = std::max(largest, b.m);
  EXPECT_EQ(largest, 2);
}

TEST(Schur, D5RotationBlocksAreScalar) {
  auto c = ctx(GroupSpec::dihedral(5));
  const int top = c->table->levels();
  const auto cert = schur_certificate(*c->table, *c->diagram, top, 0, false);
  EXPECT_EQ(cert.max_block(), 1);
  for (int v = 0; v < c->diagram->node_count(top); ++v) {
    if (c->diagram->dim(top, v) != 2) continue;
    const auto blocks = schur_blocks(*c->table, *c->diagram, top, v, 0, false);
    EXPECT_EQ(blocks.size(), 2u);
    for (const auto& b : blocks) EXPECT_EQ(b.m * b.d, 1);
  }
}

TEST(Schur, MaxMultiplicity) {
  for (int n : {2, 4, 8, 12}) {
    auto c = ctx(GroupSpec::cyclic(n));
    std::vector<int> levels;
    for (int l = 1; l <= c->table->levels(); ++l) levels.push_back(l);
    EXPECT_EQ(max_multiplicity(*c->table, *c->diagram, levels), 1);
  }
  for (int n : {3, 4, 5}) {
    auto c = ctx(GroupSpec::symmetric(n));
    std::vector<int> levels;
    for (int l = 1; l <= c->table->levels(); ++l) levels.push_back(l);
    EXPECT_EQ(max_multiplicity(*c->table, *c->diagram, levels), 2) << n;
  }
  auto d = ctx(GroupSpec::dihedral(13));
  const Synthesizer s(d);
  const auto plan = s.plan(PlanKind::automatic);
  EXPECT_EQ(s.stats(s.synthesize(plan), plan).M, 1);
}
