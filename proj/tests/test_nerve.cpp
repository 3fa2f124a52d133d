#include <gtest/gtest.h>

#include <random>

#include "plocal/corpus.hpp"
#include "plocal/nerve.hpp"
#include "test_util.hpp"

using namespace plocal;
using namespace testutil;

namespace {

std::vector<cpp_int> ints(std::initializer_list<int> v) {
  return std::vector<cpp_int>(v.begin(), v.end());
}

AbelianInvariants one_object_h1(const GroupPtr& S) {
  FusionPtr F = fusion_of_p_group(S, 2);
  return nerve_h1(LinkingCategory(F, {F->whole()}));
}

}  // namespace

TEST(Smith, ZeroMatrix) {
  IntMatrix M(3, 5);
  EXPECT_EQ(smith_normal_form(M), ints({0, 0, 0}));
  auto c = cokernel(M);
  EXPECT_EQ(c.free_rank, 5u);
  EXPECT_TRUE(c.torsion.empty());
}

TEST(Smith, DivisorChainInputs) {
  EXPECT_EQ(smith_normal_form(IntMatrix::from({{2, 0}, {0, 6}})), ints({2, 6}));
  EXPECT_EQ(smith_normal_form(IntMatrix::from({{6, 0}, {0, 4}})), ints({2, 12}));
  EXPECT_EQ(smith_normal_form(IntMatrix::from({{-3}})), ints({3}));
  EXPECT_EQ(cokernel(IntMatrix::from({{2, 0}, {0, 6}})).to_string(), "Z/2 + Z/6");
}

TEST(Smith, MatchesMinorsOracleOnRandomMatrices) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> entry(-9, 9);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<std::vector<long long>> m(6, std::vector<long long>(8));
    if (trial % 4 == 3) {
      // Rank at most 3.
      std::vector<std::vector<long long>> a(6, std::vector<long long>(3)), b(3, std::vector<long long>(8));
      for (auto& r : a)
        for (auto& x : r) x = entry(rng) / 3;
      for (auto& r : b)
        for (auto& x : r) x = entry(rng) / 3;
      for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 8; ++j)
          for (std::size_t k = 0; k < 3; ++k) m[i][j] += a[i][k] * b[k][j];
    } else {
      for (auto& r : m)
        for (auto& x : r) x = entry(rng);
    }
    EXPECT_EQ(smith_normal_form(IntMatrix::from(m)), oracle::invariant_factors_by_minors(m))
        << "trial " << trial;
  }
}

TEST(Nerve, OneObjectCategories) {
  EXPECT_EQ(one_object_h1(groups::cyclic(2)).to_string(), "Z/2");
  EXPECT_EQ(one_object_h1(groups::cyclic(1)).to_string(), "0");
  EXPECT_EQ(one_object_h1(groups::cyclic(4)).to_string(), "Z/4");
  EXPECT_EQ(one_object_h1(groups::dihedral8()).to_string(), "Z/2 + Z/2");
  // C2 x C4: invariants of an abelian automorphism group are its invariant factors.
  GroupPtr A = FiniteGroup::generate(6, {Perm::from_cycles(6, {{0, 1}}), Perm::from_cycles(6, {{2, 3, 4, 5}})});
  EXPECT_EQ(one_object_h1(A).to_string(), "Z/2 + Z/4");
}

TEST(Nerve, PresentationBookkeeping) {
  auto F = corpus_system("S4").F;
  LinkingCategory L = centric_linking(F);
  CatPresentation pr = pi1_presentation(L);
  EXPECT_EQ(pr.generators, L.morphism_count());
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < L.object_count(); ++i)
    for (std::size_t j = 0; j < L.object_count(); ++j)
      for (std::size_t k = 0; k < L.object_count(); ++k) pairs += L.mor(i, j).size() * L.mor(j, k).size();
  EXPECT_EQ(pr.composable_pairs, pairs);
  EXPECT_EQ(pr.relations.size() - pr.objects - pr.tree_relations, pr.composable_pairs);
  EXPECT_EQ(pr.tree_relations, pr.objects - 1);
  std::size_t ids = 0;
  for (bool b : pr.is_identity) ids += b;
  EXPECT_EQ(ids, pr.objects);
  AbelianizationStats st;
  abelianize(pr, &st);
  EXPECT_LT(st.generators_after, st.generators_before);
}

TEST(Nerve, H1IndependentOfGeneratorOrder) {
  auto F = corpus_system("S4").F;
  CatPresentation pr = pi1_presentation(quasicentric_linking(F));
  const AbelianInvariants base = abelianize(pr);
  std::mt19937 rng(11);
  for (int t = 0; t < 3; ++t) {
    std::vector<std::size_t> perm(pr.generators);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    CatPresentation q = pr.relabeled(perm);
    std::shuffle(q.relations.begin(), q.relations.end(), rng);
    EXPECT_EQ(abelianize(q), base);
  }
}

TEST(Nerve, InvarianceS4) {
  auto rep = h1_invariance_check(corpus_system("S4").F);
  ASSERT_EQ(rep.valid_count(), 3u);
  EXPECT_TRUE(rep.all_equal());
  // H₁(S4) = Z/2.
  EXPECT_EQ(rep.entries[0].h1.to_string(), "Z/2");
}

TEST(Nerve, InvarianceA4) {
  auto rep = h1_invariance_check(corpus_system("A4").F);
  ASSERT_EQ(rep.valid_count(), 3u);
  EXPECT_TRUE(rep.all_equal());
  // The centric-radical category is the single object V4 with Aut_L = A4.
  EXPECT_EQ(rep.entries[0].objects, 1u);
  EXPECT_EQ(rep.entries[0].h1.to_string(), "Z/3");
}

TEST(Nerve, InvalidCollectionIsSkipped) {
  auto F = corpus_system("S4").F;
  auto cr = centric_radical_subgroups(*F);
  std::vector<Subgroup> dropped;
  for (const auto& P : centric_subgroups(*F))
    if (!(P == cr.back())) dropped.push_back(P);
  auto rep = h1_invariance_check(F, {{"centric", centric_collection(*F)},
                                     {"dropped", Collection(*F, dropped)},
                                     {"all", all_collection(*F)}});
  EXPECT_TRUE(rep.entries[0].valid);
  EXPECT_FALSE(rep.entries[1].valid);
  EXPECT_NE(rep.entries[1].skipped_reason.find("precondition violated"), std::string::npos);
  EXPECT_FALSE(rep.entries[2].valid);
  EXPECT_TRUE(rep.all_equal());
}

TEST(Nerve, DisconnectedWithoutS) {
  auto F = corpus_system("S4").F;
  auto cr = centric_radical_subgroups(*F);
  std::vector<Subgroup> no_top;
  for (const auto& P : cr)
    if (!(P == F->whole())) no_top.push_back(P);
  EXPECT_THROW(pi1_presentation(LinkingCategory(F, no_top)), DisconnectedCategory);
}
