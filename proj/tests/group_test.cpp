#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "gqft/errors.hpp"
#include "gqft/tower.hpp"

using namespace gqft;

namespace {

std::shared_ptr<const Tower> tower_of(const GroupSpec& spec) {
  return std::make_shared<const Tower>(std::shared_ptr<const Group>(make_group(spec)));
}

std::vector<GroupSpec> small_groups() {
  std::vector<GroupSpec> out;
  for (int n : {1, 2, 6, 8, 12, 30, 64}) out.push_back(GroupSpec::cyclic(n));
  for (int n : {1, 2, 3, 4, 5}) out.push_back(GroupSpec::symmetric(n));
  for (int p : {3, 5, 7, 13}) out.push_back(GroupSpec::dihedral(p));
  out.push_back(GroupSpec::metacyclic(7, 3, 2));
  out.push_back(GroupSpec::metacyclic(5, 4, 2));
  return out;
}

}  // namespace

TEST(Group, MultiplicationExamples) {
  auto s3 = make_group(GroupSpec::symmetric(3));
  EXPECT_EQ(s3->mul(s3->parse("(1 2)"), s3->identity()), s3->parse("(1 2)"));
  EXPECT_EQ(s3->format(s3->mul(s3->parse("(1 3)"), s3->parse("(1 2 3)"))), "(1 2)");
  auto z6 = make_group(GroupSpec::cyclic(6));
  EXPECT_EQ(z6->mul({4}, {5}), Element{3});
}

TEST(Group, CompositionAgainstDirectFunctionComposition) {
  auto s4 = make_group(GroupSpec::symmetric(4));
  for (const auto& g : s4->elements())
    for (const auto& h : s4->elements()) {
      Element gh(4);
      for (int x = 0; x < 4; ++x) gh[x] = g[h[x]];
      ASSERT_EQ(s4->mul(g, h), gh);
    }
}

TEST(Group, GroupAxioms) {
  for (const auto& spec : small_groups()) {
    if (spec.family == Family::symmetric && spec.n > 4) continue;
    auto G = make_group(spec);
    const auto els = G->elements();
    ASSERT_EQ(els.size(), G->order()) << spec.id();
    for (const auto& g : els) {
      EXPECT_EQ(G->mul(g, G->inverse(g)), G->identity());
      EXPECT_EQ(G->parse(G->format(g)), g);
    }
    if (els.size() > 30) continue;
    for (const auto& a : els)
      for (const auto& b : els)
        for (const auto& c : els) ASSERT_EQ(G->mul(G->mul(a, b), c), G->mul(a, G->mul(b, c))) << spec.id();
  }
}

TEST(Group, MetacyclicRelation) {
  for (auto spec : {GroupSpec::dihedral(5), GroupSpec::metacyclic(7, 3, 2), GroupSpec::metacyclic(13, 4, 5)}) {
    auto G = make_group(spec);
    const Element a{1, 0}, b{0, 1};
    Element ar = G->identity();
    for (int i = 0; i < spec.r; ++i) ar = G->mul(ar, a);
    EXPECT_EQ(G->mul(G->mul(b, a), G->inverse(b)), ar) << spec.id();
  }
}

TEST(Group, RejectsBadEncodings) {
  auto s3 = make_group(GroupSpec::symmetric(3));
  EXPECT_THROW(s3->check({0, 0, 1}), EncodingError);
  EXPECT_THROW(s3->parse("(1 4)"), EncodingError);
  EXPECT_THROW(s3->parse("(1 2"), EncodingError);
  auto z6 = make_group(GroupSpec::cyclic(6));
  EXPECT_THROW(z6->check({6}), EncodingError);
  EXPECT_THROW(make_group(GroupSpec::metacyclic(7, 3, 3)), Error);
}

TEST(Group, SpecJsonRoundTrip) {
  for (const auto& spec : small_groups()) EXPECT_EQ(group_spec_from_json(group_spec_to_json(spec)), spec);
  auto d = group_spec_from_json(nlohmann::json{{"family", "dihedral"}, {"n", 5}});
  EXPECT_EQ(d.id(), "D5");
  EXPECT_THROW(group_spec_from_json(nlohmann::json{{"family", "sporadic"}}), Error);
}

TEST(Group, DefaultCyclicChain) {
  EXPECT_EQ(default_cyclic_chain(6), (std::vector<int>{3, 6}));
  EXPECT_EQ(default_cyclic_chain(8), (std::vector<int>{2, 4, 8}));
  EXPECT_TRUE(default_cyclic_chain(1).empty());
}

TEST(Tower, CosetFactorizationReassembles) {
  for (const auto& spec : small_groups()) {
    auto T = tower_of(spec);
    const auto& G = T->group();
    if (G.order() > 200) continue;
    for (const auto& g : T->elements()) {
      const auto alphas = T->coset_factorize(g);
      ASSERT_EQ(static_cast<int>(alphas.size()), T->levels());
      Element prod = G.identity();
      for (const auto& a : alphas) prod = G.mul(prod, a);
      ASSERT_EQ(prod, g) << spec.id() << " " << G.format(g);
      EXPECT_EQ(T->from_positions(T->coset_positions(g)), g);
    }
    for (const auto& a : T->coset_factorize(G.identity())) EXPECT_EQ(a, G.identity());
  }
}

TEST(Tower, S3FactorizationExample) {
  auto T = tower_of(GroupSpec::symmetric(3));
  const auto& G = T->group();
  std::vector<std::string> t3, t2;
  for (const auto& a : T->transversal(2)) t3.push_back(G.format(a));
  for (const auto& a : T->transversal(1)) t2.push_back(G.format(a));
  EXPECT_EQ(t3, (std::vector<std::string>{"()", "(2 3)", "(1 3)"}));
  EXPECT_EQ(t2, (std::vector<std::string>{"()", "(1 2)"}));
  auto f = T->coset_factorize(G.parse("(1 2 3)"));
  EXPECT_EQ(G.format(f[0]), "(1 3)");
  EXPECT_EQ(G.format(f[1]), "(1 2)");
}

TEST(Tower, TransversalWords) {
  auto s3 = tower_of(GroupSpec::symmetric(3));
  EXPECT_TRUE(s3->transversal_word(s3->group().identity(), 2).empty());
  const Element a = s3->group().parse("(1 3)");
  const Word& w = s3->transversal_word(a, 2);
  EXPECT_EQ(w.size(), 3u);
  EXPECT_EQ(s3->evaluate(w), a);
  EXPECT_THROW(s3->transversal_word(s3->group().parse("(1 2)"), 2), DomainError);

  auto d7 = tower_of(GroupSpec::dihedral(7));
  const Element b{0, 1};
  const Word& wb = d7->transversal_word(b, d7->levels());
  ASSERT_EQ(wb.size(), 1u);
  EXPECT_EQ(d7->evaluate(wb), b);

  for (const auto& spec : small_groups()) {
    auto T = tower_of(spec);
    for (int l = 1; l <= T->levels(); ++l)
      for (int k = 0; k < T->index(l); ++k) {
        const Word& wk = T->transversal_word_at(l, k);
        EXPECT_EQ(T->evaluate(wk), T->transversal(l)[static_cast<std::size_t>(k)]);
        for (const auto& letter : wk) EXPECT_LE(T->generators()[static_cast<std::size_t>(letter.generator)].level, l);
      }
  }
}

TEST(Tower, Stats) {
  auto z2 = tower_of(GroupSpec::cyclic(2)).get()->stats();
  EXPECT_EQ(z2.adapted_diameter, 1);
  EXPECT_EQ(z2.max_index, 2);
  auto s3 = tower_of(GroupSpec::symmetric(3))->stats();
  EXPECT_EQ(s3.level_diameters, (std::vector<int>{1, 3}));
  EXPECT_EQ(s3.adapted_diameter, 4);
  for (int n = 2; n <= 6; ++n) EXPECT_EQ(tower_of(GroupSpec::symmetric(n))->stats().max_index, n);
}

TEST(Tower, CentralizedLevels) {
  auto T = tower_of(GroupSpec::symmetric(4));
  for (const auto& g : T->generators()) {
    // (k k+1) lies in S_{k+1} (level k) and commutes with S_{k-1} (level
    // k-2); (1 2) commutes with all of S_2.
    EXPECT_EQ(g.centralized_level, g.level == 1 ? 1 : g.level - 2) << g.name;
    EXPECT_TRUE(g.involution);
  }
}
