#include <gtest/gtest.h>

#include "plocal/corpus.hpp"
#include "plocal/saturation.hpp"
#include "test_util.hpp"

using namespace plocal;
using namespace testutil;

namespace {

struct S4Saturation : ::testing::Test {
  GroupPtr G = groups::symmetric(4);
  FusionPtr F = fusion_of_group(G, sub_of(G, {c4({{0, 1, 2, 3}}), c4({{0, 2}})}), 2);
  GroupPtr S = F->S();
  Subgroup D8 = F->whole();
  Subgroup Va = sub_of(S, {c4({{0, 1}, {2, 3}}), c4({{0, 2}, {1, 3}})});
  Subgroup Vb = sub_of(S, {c4({{0, 2}}), c4({{1, 3}})});
};

const std::vector<GroupSystem>& corpus() {
  static const std::vector<GroupSystem> c = group_corpus();
  return c;
}

oracle::PermSet centralizer_in(const oracle::PermSet& X, const oracle::PermSet& P) {
  oracle::PermSet out;
  for (const auto& x : X) {
    bool ok = true;
    for (const auto& g : P)
      if (x * g != g * x) ok = false;
    if (ok) out.insert(x);
  }
  return out;
}

oracle::PermSet normalizer_in(const oracle::PermSet& X, const oracle::PermSet& P) {
  oracle::PermSet out;
  for (const auto& x : X)
    if (oracle::conj_set(x, P) == P) out.insert(x);
  return out;
}

bool agree_on(const Perm& a, const Perm& b, const oracle::PermSet& P) {
  for (const auto& g : P)
    if (oracle::conj(a, g) != oracle::conj(b, g)) return false;
  return true;
}

}  // namespace

TEST(Collection, FlagsMatchDefinition) {
  const auto& sys = corpus().front();
  const FusionSystem& F = *sys.F;
  auto reps = class_representatives(F);
  for (const auto& R : reps) {
    Collection single(F, {R});
    EXPECT_EQ(single.conjugacy_closed(), F.conjugacy_class(R).size() == 1);
    Collection cls = class_closure(F, {R});
    EXPECT_TRUE(cls.conjugacy_closed());
    EXPECT_EQ(cls.size(), F.conjugacy_class(R).size());
  }
  Collection dup(F, {F.whole(), F.whole()});
  EXPECT_EQ(dup.size(), 1u);
  EXPECT_EQ(centric_collection(F).overgroup_closed(), std::optional<bool>(true));
  EXPECT_EQ(all_collection(F).overgroup_closed(), std::optional<bool>(true));
  EXPECT_EQ(Collection(F, {Subgroup::trivial(F.S())}).overgroup_closed(), std::optional<bool>(false));
}

TEST_F(S4Saturation, CheckIIMatchesBruteForceExtensionSearch) {
  // Oracle: φ = c_g|P. The image Q = gPg⁻¹ is fully centralized when
  // |C_D8(Q)| is maximal over the S4-conjugates of P inside D8. N_φ collects
  // the n in N_D8(P) for which g n g⁻¹ agrees on Q with some s in N_D8(Q).
  // φ extends when some h ≡ g on P satisfies h N_φ h⁻¹ ⊆ D8.
  const auto all = oracle::all_perms(4);
  const auto d8 = as_set(F->to_ambient(D8));
  std::size_t oracle_cases = 0;
  bool oracle_holds = true;
  for (const auto& Psub : F->subgroups()) {
    const auto P = as_set(F->to_ambient(Psub));
    std::size_t best = 0;
    for (const auto& x : all)
      if (oracle::subset(oracle::conj_set(x, P), d8))
        best = std::max(best, centralizer_in(d8, oracle::conj_set(x, P)).size());
    std::vector<Perm> maps;
    for (const auto& g : all) {
      const auto Q = oracle::conj_set(g, P);
      if (!oracle::subset(Q, d8)) continue;
      if (std::any_of(maps.begin(), maps.end(), [&](const Perm& m) { return agree_on(m, g, P); }))
        continue;
      maps.push_back(g);
      if (centralizer_in(d8, Q).size() != best) continue;
      ++oracle_cases;
      std::vector<Perm> nphi;
      for (const auto& n : normalizer_in(d8, P))
        for (const auto& s : normalizer_in(d8, Q))
          if (agree_on(g * n * g.inverse(), s, Q)) {
            nphi.push_back(n);
            break;
          }
      bool extends = false;
      for (const auto& h : all) {
        if (!agree_on(h, g, P)) continue;
        bool inside = true;
        for (const auto& n : nphi)
          if (!d8.contains(oracle::conj(h, n))) inside = false;
        if (inside) extends = true;
      }
      if (!extends) oracle_holds = false;
    }
  }
  ASSERT_TRUE(oracle_holds);
  ASSERT_GT(oracle_cases, 10u);
  ASSERT_EQ(F->subgroups().size(), 10u);

  std::size_t cases = 0;
  for (const auto& P : F->subgroups()) {
    Verdict v = check_II(*F, P);
    EXPECT_TRUE(v.holds);
    cases += v.cases;
  }
  EXPECT_EQ(cases, oracle_cases);
}

TEST_F(S4Saturation, AxiomFormsOnEveryClass) {
  for (const auto& R : class_representatives(*F)) {
    Collection H = class_closure(*F, {R});
    for (const auto& P : H.members()) {
      EXPECT_TRUE(check_I(*F, P).holds);
      EXPECT_TRUE(check_I_prime(*F, H, P).holds);
      EXPECT_TRUE(check_IIB(*F, P).holds);
    }
    EXPECT_TRUE(check_IIA(*F, R).holds);
  }
}

TEST_F(S4Saturation, VacuousVerdictsAreRecordedSeparately) {
  // Of the two order-2 classes inside Va, the central one is fully normalized.
  std::size_t vacuous = 0;
  for (const auto& P : F->subgroups()) {
    Verdict v = check_I(*F, P);
    EXPECT_EQ(v.vacuous, !F->is_fully_normalized(P));
    if (v.vacuous) {
      ++vacuous;
      EXPECT_EQ(v.cases, 0u);
    }
  }
  EXPECT_GT(vacuous, 0u);
  auto r = is_saturated(*F);
  EXPECT_TRUE(r.holds());
  EXPECT_LT(r.checked(), r.verdicts.size());
}

TEST_F(S4Saturation, HGenerated) {
  EXPECT_TRUE(is_H_generated(F, all_collection(*F)));
  EXPECT_TRUE(is_H_generated(F, centric_radical_collection(*F)));
  // Aut_F(Va) ≅ S3 is not visible from D8 alone.
  EXPECT_FALSE(is_H_generated(F, Collection(*F, {D8})));
  EXPECT_TRUE(is_H_generated(F, class_closure(*F, {D8, Va})));
  EXPECT_THROW(is_H_generated(F, Collection(*F, {})), Error);
}

TEST_F(S4Saturation, HarnessWithCentricCollections) {
  for (const Collection& H : {centric_collection(*F), centric_radical_collection(*F)}) {
    auto r = theorem_A_harness(F, H);
    EXPECT_TRUE(r.hypotheses_hold()) << r.summary();
    EXPECT_TRUE(r.conclusion_saturated);
    EXPECT_FALSE(r.violation());
  }
  // Only Vb and C4 are centric outside the centric-radical set.
  auto r = theorem_A_harness(F, centric_radical_collection(*F));
  EXPECT_EQ(r.star_classes.size(), 2u);
}

TEST_F(S4Saturation, HarnessFlagsMissingCentricRadical) {
  auto r = theorem_A_harness(F, Collection(*F, {D8}));
  EXPECT_FALSE(r.h_contains_centric_radical);
  EXPECT_FALSE(r.h_generated);
  EXPECT_FALSE(r.hypotheses_hold());
  EXPECT_TRUE(r.conclusion_saturated);
  EXPECT_NE(r.summary().find("hypothesis failed"), std::string::npos);
}

TEST(SaturationPGroup, InnerSystemOfC4WithHEqualToS) {
  FusionPtr F = fusion_of_p_group(groups::cyclic(4), 2);
  auto r = theorem_A_harness(F, Collection(*F, {F->whole()}));
  EXPECT_TRUE(r.hypotheses_hold());
  EXPECT_TRUE(r.conclusion_saturated);
  EXPECT_TRUE(r.star_classes.empty());
}

TEST(SaturationPGroup, InnerSystemsAreSaturatedAndAudited) {
  for (auto S : {groups::dihedral8(), groups::cyclic(4), groups::elementary_abelian_2(3)}) {
    FusionPtr F = fusion_of_p_group(S, 2);
    EXPECT_TRUE(is_saturated(*F).holds());
    for (const auto& P : F->subgroups()) {
      EXPECT_TRUE(check_I(*F, P).holds);
      EXPECT_TRUE(check_IIA(*F, P).holds);
    }
    EXPECT_TRUE(lemma_newax_audit(*F, all_collection(*F)).consistent());
    EXPECT_EQ(is_constrained(*F), std::optional<Subgroup>(F->whole()));
  }
}

TEST(SaturationCorpus, GroupSystemsAreSaturated) {
  for (const auto& sys : corpus()) {
    auto r = is_saturated(*sys.F);
    EXPECT_TRUE(r.holds()) << sys.name;
  }
}

TEST(SaturationCorpus, AlperinDirection) {
  for (const auto& sys : corpus())
    EXPECT_TRUE(is_H_generated(sys.F, centric_radical_collection(*sys.F))) << sys.name;
}

TEST(SaturationCorpus, AuditOverStandardCollections) {
  for (const auto& sys : corpus()) {
    const FusionSystem& F = *sys.F;
    std::vector<Collection> tested{all_collection(F), centric_collection(F),
                                   centric_radical_collection(F)};
    for (const auto& R : class_representatives(F)) tested.push_back(class_closure(F, {R}));
    for (const auto& H : tested) {
      auto a = lemma_newax_audit(F, H);
      EXPECT_TRUE(a.consistent()) << sys.name;
      EXPECT_TRUE(a.failures.empty()) << sys.name;
    }
  }
}

TEST(SaturationCorpus, HarnessHypothesesHold) {
  for (const auto& sys : corpus())
    for (const Collection& H : {centric_collection(*sys.F), centric_radical_collection(*sys.F)}) {
      auto r = theorem_A_harness(sys.F, H);
      EXPECT_TRUE(r.hypotheses_hold()) << sys.name << ": " << r.summary();
      EXPECT_FALSE(r.violation()) << sys.name;
    }
}

TEST(Constrained, Witnesses) {
  auto a5 = corpus_system("A5");
  EXPECT_EQ(is_constrained(*a5.F), std::optional<Subgroup>(a5.F->whole()));
  EXPECT_EQ(a5.F->whole().order(), 4u);
  EXPECT_FALSE(is_constrained(*corpus_system("A6").F).has_value());
  auto s4 = corpus_system("S4");
  auto w = is_constrained(*s4.F);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->order(), 4u);
  EXPECT_TRUE(is_normal_in_F(*s4.F, *w));
}

TEST(Constrained, A6HasNoNormalCentricSubgroup) {
  // Oracle: scan every normal subgroup of S for being F-normal and centric.
  auto a6 = corpus_system("A6");
  for (const auto& Q : normal_subgroups_of_S(*a6.F))
    EXPECT_FALSE(is_normal_in_F(*a6.F, Q) && is_centric(*a6.F, Q));
}
