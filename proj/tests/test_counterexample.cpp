#include <gtest/gtest.h>

#include "plocal/counterexample.hpp"
#include "plocal/saturation.hpp"

using namespace plocal;

namespace {

const Counterexample& cx() {
  static const Counterexample c = build_counterexample();
  return c;
}

}  // namespace

TEST(GF4, FieldAxiomsByExhaustion) {
  using namespace gf4;
  for (F4 a = 0; a < 4; ++a) {
    EXPECT_EQ(mul(a, 1), a);
    if (a) EXPECT_EQ(mul(a, inv(a)), 1);
    EXPECT_EQ(frob(a), mul(a, a));
    for (F4 b = 0; b < 4; ++b)
      for (F4 c = 0; c < 4; ++c) {
        EXPECT_EQ(mul(a, add(b, c)), add(mul(a, b), mul(a, c)));
        EXPECT_EQ(mul(a, mul(b, c)), mul(mul(a, b), c));
      }
  }
}

TEST(GF4, SigmaL2IsS5OnTheProjectiveLine) {
  auto all = gf4::sigma_l2();
  ASSERT_EQ(all.size(), 120u);
  std::set<Perm> images;
  for (const auto& g : all) images.insert(gf4::projective_action(g));
  EXPECT_EQ(images.size(), 120u);
}

TEST(Counterexample, Orders) {
  const auto& c = cx();
  EXPECT_EQ(c.S.order(), 256u);
  EXPECT_EQ(c.P.order(), 64u);
  EXPECT_EQ(c.Q1.order(), 128u);
  EXPECT_EQ(c.Q2.order(), 128u);
  EXPECT_EQ(c.Q3.order(), 128u);
  EXPECT_TRUE(is_abelian(c.P));
  EXPECT_EQ(exponent(c.P), 2u);
}

TEST(Counterexample, AmbientOrder) {
  const auto& c = cx();
  EXPECT_EQ(counterexample_ambient(c)->order(), 64u * 16u * 120u);
}

TEST(Counterexample, InvolutionCentralizesSPrime) {
  const auto& c = cx();
  EXPECT_FALSE(c.x.is_identity());
  EXPECT_TRUE((c.x * c.x).is_identity());
  for (std::size_t k = 0; k < 2; ++k) EXPECT_EQ(c.x * c.R1_gens[k], c.R1_gens[k] * c.x);
}

// x is forced: it must centralize S' and lie in O_2(Γ). With that x,
// <R1, xR2x^-1> is a complement to O_2(Γ) that is not O_2(Γ)-conjugate to
// the standard S5 (it fixes no point of the affine plane), so Aut_F(P) has
// order 120, not |Γ| = 1920. Frozen from this build and an independent
// affine-plane model.
TEST(Counterexample, RGroupsGenerateAComplement) {
  const auto& c = cx();
  std::vector<Perm> r = c.R1_gens;
  r.insert(r.end(), c.R2p_gens.begin(), c.R2p_gens.end());
  EXPECT_EQ(FiniteGroup::generate(64, r)->order(), 120u);
  EXPECT_EQ(FiniteGroup::generate(64, c.gamma_gens)->order(), 1920u);
  // Any translation other than 0 and x would give all of Γ.
  r.resize(c.R1_gens.size());
  const Perm y = counterexample_detail::transvection({1, 0});
  for (const auto& g : c.R2_gens) r.push_back(y * g * y.inverse());
  EXPECT_EQ(FiniteGroup::generate(64, r)->order(), 1920u);
}

TEST(Counterexample, AutomizerOfP) {
  const auto& c = cx();
  EXPECT_EQ(c.F->aut_maps(c.P).size(), 120u);
  AutGroup A = aut(*c.F, c.P);
  Subgroup AS = aut_S(*c.F, A);
  EXPECT_EQ(AS.order(), 4u);
  EXPECT_EQ(exponent(AS), 2u);
}

TEST(Counterexample, OutOfQ1AndQ2AreS3) {
  const auto& c = cx();
  for (const auto& Q : {c.Q1, c.Q2}) {
    auto o = out(*c.F, Q);
    EXPECT_EQ(o.quotient.group->order(), 6u);
    EXPECT_FALSE(is_abelian(Subgroup::whole(o.quotient.group)));
  }
  EXPECT_EQ(out(*c.F, c.Q3).quotient.group->order(), 2u);
  EXPECT_EQ(out(*c.F, c.S).quotient.group->order(), 1u);
}

TEST(Counterexample, AxiomIFailsAtP) {
  const auto& c = cx();
  Verdict v = check_I(*c.F, c.P);
  EXPECT_FALSE(v.holds);
  EXPECT_FALSE(v.vacuous);
}

TEST(Counterexample, StarConditionFailsAtP) {
  const auto& c = cx();
  EXPECT_FALSE(condition_star_witness(*c.F, c.P));
  EXPECT_TRUE(is_centric(*c.F, c.P));
}

TEST(Counterexample, HSaturatedButNotSaturated) {
  const auto& c = cx();
  Collection H(*c.F, c.H());
  EXPECT_TRUE(H.conjugacy_closed());
  EXPECT_TRUE(is_H_saturated(*c.F, H).holds());
  auto full = is_saturated_on(*c.F, c.focus());
  ASSERT_FALSE(full.holds());
  EXPECT_EQ(*full.first_failure()->subgroup, c.P);
}

TEST(Counterexample, AxiomIIBFailsAtP) {
  const auto& c = cx();
  Verdict v = check_IIB(*c.F, c.P);
  EXPECT_FALSE(v.holds);
  ASSERT_TRUE(v.morphism.has_value());
  EXPECT_EQ(automorphism_order(*v.morphism) % 2, 1u);
}

TEST(Counterexample, Harness) {
  const auto& c = cx();
  Collection H(*c.F, c.H());
  auto r = theorem_A_harness(c.F, H, c.focus(), "focus");
  EXPECT_TRUE(r.h_generated);
  EXPECT_TRUE(r.h_saturated);
  EXPECT_FALSE(r.star_condition);
  EXPECT_FALSE(r.conclusion_saturated);
  EXPECT_FALSE(r.violation());
  ASSERT_EQ(r.star_classes.size(), 1u);
  EXPECT_EQ(r.star_classes[0].representative, c.P);
}

TEST(Counterexample, AuditOnClassOfP) {
  const auto& c = cx();
  auto a = lemma_newax_audit(*c.F, class_closure(*c.F, {c.P}));
  EXPECT_FALSE(a.I);
  EXPECT_FALSE(a.I_prime);
  EXPECT_TRUE(a.consistent());
}
