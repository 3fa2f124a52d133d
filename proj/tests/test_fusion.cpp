#include <gtest/gtest.h>

#include "plocal/classify.hpp"
#include "plocal/groups.hpp"
#include "test_util.hpp"

using namespace plocal;
using namespace testutil;

namespace {

// F_{D8}(S4) with D8 = <(0123),(02)>, Z = Z(D8) = <(02)(13)>,
// Va = the S4-normal Klein four, Vb = <(02),(13)>.
struct S4Fixture : ::testing::Test {
  GroupPtr G = groups::symmetric(4);
  Subgroup D8_in_G = sub_of(G, {c4({{0, 1, 2, 3}}), c4({{0, 2}})});
  FusionPtr F = fusion_of_group(G, D8_in_G, 2);
  GroupPtr S = F->S();
  Subgroup D8 = F->whole();
  Subgroup Z = sub_of(S, {c4({{0, 2}, {1, 3}})});
  Subgroup Zb = sub_of(S, {c4({{0, 1}, {2, 3}})});
  Subgroup C4 = sub_of(S, {c4({{0, 1, 2, 3}})});
  Subgroup Va = sub_of(S, {c4({{0, 1}, {2, 3}}), c4({{0, 2}, {1, 3}})});
  Subgroup Vb = sub_of(S, {c4({{0, 2}}), c4({{1, 3}})});
  Subgroup T = sub_of(S, {c4({{0, 2}})});
};

}  // namespace

TEST_F(S4Fixture, HomCountFromCentralInvolution) {
  auto maps = oracle::conjugation_maps(oracle::all_perms(4), as_set(Zb), as_set(D8_in_G));
  ASSERT_EQ(maps.size(), 3u);
  EXPECT_EQ(F->hom_count(Zb, D8), 3u);
  EXPECT_EQ(F->hom_count(Z, D8), 3u);
}

TEST_F(S4Fixture, AutOfKleinFours) {
  auto all = oracle::all_perms(4);
  ASSERT_EQ(oracle::conjugation_maps(all, as_set(Va), as_set(Va)).size(), 6u);
  ASSERT_EQ(oracle::conjugation_maps(all, as_set(Vb), as_set(Vb)).size(), 2u);
  EXPECT_EQ(aut(*F, Va).group->order(), 6u);
  EXPECT_EQ(aut(*F, Vb).group->order(), 2u);
  EXPECT_FALSE(is_abelian(Subgroup::whole(aut(*F, Va).group)));
}

TEST_F(S4Fixture, HomCountsMatchTransporterOverCentralizer) {
  for (const auto& P : F->subgroups())
    for (const auto& Q : F->subgroups()) {
      Subgroup PG = F->to_ambient(P), QG = F->to_ambient(Q);
      std::size_t t = transporter(G, PG, QG).size();
      EXPECT_EQ(F->hom_count(P, Q) * centralizer(G, PG).order(), t);
      auto brute = oracle::conjugation_maps(oracle::all_perms(4), as_set(PG), as_set(QG));
      EXPECT_EQ(F->hom_count(P, Q), brute.size());
    }
}

TEST_F(S4Fixture, HomFromTrivialIsUnique) {
  for (const auto& Q : F->subgroups()) EXPECT_EQ(F->hom_count(Subgroup::trivial(S), Q), 1u);
}

TEST_F(S4Fixture, OutGroups) {
  EXPECT_EQ(out(*F, D8).quotient.group->order(), 1u);
  EXPECT_EQ(out(*F, C4).quotient.group->order(), 2u);
  EXPECT_EQ(out(*F, Va).quotient.group->order(), 6u);
  EXPECT_EQ(out(*F, Vb).quotient.group->order(), 2u);
}

TEST_F(S4Fixture, ClassTable) {
  // Oracle: orbits of S4-conjugation on the subgroups of D8.
  auto subs = oracle::subgroups_by_subsets(as_set(D8_in_G));
  ASSERT_EQ(subs.size(), 10u);
  std::set<std::set<oracle::PermSet>> orbits;
  for (const auto& H : subs) {
    std::set<oracle::PermSet> orbit;
    for (const auto& x : oracle::all_perms(4)) {
      auto K = oracle::conj_set(x, H);
      if (subs.contains(K)) orbit.insert(K);
    }
    orbits.insert(orbit);
  }
  ASSERT_EQ(orbits.size(), 7u);
  auto table = f_classes(*F);
  EXPECT_EQ(table.classes.size(), 7u);
  std::size_t total = 0;
  for (const auto& c : table.classes) {
    total += c.members.size();
    for (const auto& a : c.members)
      for (const auto& b : c.members) EXPECT_FALSE(F->hom_set(a, b).empty());
  }
  EXPECT_EQ(total, 10u);
  EXPECT_EQ(F->conjugacy_class(Z).size(), 3u);
}

TEST_F(S4Fixture, FullyNormalized) {
  EXPECT_TRUE(F->is_fully_normalized(D8));
  EXPECT_TRUE(F->is_fully_normalized(Va));
  EXPECT_TRUE(F->is_fully_normalized(Z));
  EXPECT_FALSE(F->is_fully_normalized(Zb));
  EXPECT_EQ(F->fully_normalized_representative(Zb), Z);
}

TEST_F(S4Fixture, NPhi) {
  for (const auto& P : F->subgroups()) {
    EXPECT_EQ(n_phi(*F, GroupMono::inclusion(P, D8)), F->normalizer_in_S(P));
    for (const auto& phi : F->homs_from(P)) {
      Subgroup N = n_phi(*F, phi);
      EXPECT_TRUE(P.is_subgroup_of(N));
      // Oracle: direct double loop over N_S(P) and Aut_S(phi P).
      std::size_t brute = 0;
      auto autS = aut_S_maps(*F, phi.image());
      for (Elem g : F->normalizer_in_S(P).members()) {
        std::vector<Elem> v;
        for (Elem y : phi.image().members()) {
          Elem x = phi.inverse().apply(y);
          v.push_back(phi.apply(S->conj(g, x)));
        }
        if (autS.contains(v)) ++brute;
      }
      EXPECT_EQ(N.order(), brute);
    }
  }
}

TEST_F(S4Fixture, KNormalizer) {
  for (const auto& P : F->subgroups()) {
    AutSet all;
    for (const auto& a : F->aut_maps(P)) all.insert(a.images());
    // Every automorphism of P restricted from N_S(P) lies in Aut_F(P).
    EXPECT_EQ(k_normalizer(*F, P, all), F->normalizer_in_S(P));
    EXPECT_EQ(k_normalizer(*F, P, identity_aut_set(P)), F->centralizer_in_S(P));
    AutSet inner;
    for (Elem x : P.members()) inner.insert(conjugation_hom(x, P, P).images());
    EXPECT_EQ(k_normalizer(*F, P, inner), join(P, F->centralizer_in_S(P)));
  }
}

TEST_F(S4Fixture, CentralizerSystemOfCenter) {
  FusionPtr CF = centralizer_fusion_system(F, Z);
  ASSERT_EQ(CF->S()->order(), 8u);
  Subgroup whole = CF->whole();
  // Oracle: extension search over Hom_F(D8, D8) fixing Z pointwise.
  std::size_t brute = 0;
  for (const auto& psi : F->aut_maps(D8))
    if (psi.apply(Z.members()[1]) == Z.members()[1]) ++brute;
  EXPECT_EQ(CF->aut_maps(whole).size(), brute);
  EXPECT_EQ(brute, 4u);  // Inn(D8)
}

TEST_F(S4Fixture, CentralizerSystemOfTrivialIsF) {
  FusionPtr CF = centralizer_fusion_system(F, Subgroup::trivial(S));
  for (const auto& P : F->subgroups())
    EXPECT_EQ(CF->homs_from(lower_subgroup(*CF, P)).size(), F->homs_from(P).size());
}

TEST_F(S4Fixture, NormalizerSystemOfS) {
  FusionPtr NF = normalizer_fusion_system(F, D8, std::nullopt);
  EXPECT_EQ(NF->aut_maps(NF->whole()).size(), F->aut_maps(D8).size());
  // Only restrictions of Aut_F(D8) = Inn(D8) survive: Va's S3 collapses.
  EXPECT_EQ(NF->aut_maps(lower_subgroup(*NF, Va)).size(), 2u);
}

TEST_F(S4Fixture, MorphismFactorsThroughCorestriction) {
  for (const auto& P : F->subgroups())
    for (const auto& phi : F->homs_from(P)) {
      GroupMono iso = phi.corestriction();
      EXPECT_TRUE(F->contains(iso));
      EXPECT_TRUE(compose(GroupMono::inclusion(phi.image(), D8), iso).same_map(phi));
      for (const auto& R : F->subgroups())
        if (R.is_subgroup_of(P)) EXPECT_TRUE(F->contains(phi.restrict_to(R)));
    }
}

TEST_F(S4Fixture, ClosedUnderComposition) {
  for (const auto& P : F->subgroups())
    for (const auto& f : F->homs_from(P))
      for (const auto& g : F->homs_from(f.image()))
        EXPECT_TRUE(F->contains(compose(g, f)));
}

TEST(GeneratedSystem, EmptyGeneratorsGiveInnerSystem) {
  for (auto G : {groups::dihedral8(), groups::elementary_abelian_2(3), groups::cyclic(4),
                 as_group(sylow_p(groups::symmetric(6), 2))}) {
    FusionPtr A = fusion_of_p_group(G, 2);
    FusionPtr B = generated_fusion_system(G, 2, {});
    EXPECT_TRUE(same_morphisms(*A, *B, A->subgroups()));
    // A single inner generator adds nothing.
    Subgroup whole = Subgroup::whole(G);
    FusionPtr C = generated_fusion_system(G, 2, {conjugation_hom(G->order() - 1, whole, whole)});
    EXPECT_TRUE(same_morphisms(*A, *C, A->subgroups()));
  }
}

TEST(GeneratedSystem, ReproducesGroupSystemFromItsAutomorphisms) {
  auto G = groups::symmetric(4);
  FusionPtr F = fusion_of_group(G, sylow_p(G, 2), 2);
  std::vector<GroupMono> gens;
  for (const auto& P : F->subgroups())
    for (const auto& a : F->aut_maps(P)) gens.push_back(a);
  FusionPtr H = generated_fusion_system(F->S(), 2, gens);
  EXPECT_TRUE(same_morphisms(*F, *H, F->subgroups()));
  // Closure idempotence.
  std::vector<GroupMono> all;
  for (const auto& P : H->subgroups())
    for (const auto& f : H->homs_from(P)) all.push_back(f);
  FusionPtr H2 = generated_fusion_system(H->S(), 2, all);
  EXPECT_TRUE(same_morphisms(*H, *H2, H->subgroups()));
}

TEST(GeneratedSystem, ClosureBound) {
  auto G = groups::symmetric(6);
  FusionPtr F = fusion_of_group(G, sylow_p(G, 2), 2);
  std::vector<GroupMono> gens;
  for (const auto& P : F->subgroups())
    for (const auto& a : F->aut_maps(P)) gens.push_back(a);
  FusionOptions opt;
  opt.limits.closure_bound = 3;
  FusionPtr H = generated_fusion_system(F->S(), 2, gens, opt);
  std::optional<Subgroup> busy;
  for (const auto& P : F->subgroups())
    if (F->homs_from(P).size() > 3) busy = P;
  ASSERT_TRUE(busy.has_value());
  EXPECT_THROW(H->homs_from(*busy), BoundExceeded);
}

TEST(FusionOfGroup, RejectsNonSylow) {
  auto G = groups::symmetric(4);
  Subgroup V = p_core(G, 2);
  EXPECT_THROW(fusion_of_group(G, V, 2), NotSylow);
}
