#pragma once

// Transporter linking categories of finite groups: morphisms P -> Q are the
// cosets x O^p(C_G(P)) with x P x^-1 <= Q, composed by multiplying
// representatives.

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "plocal/classify.hpp"
#include "plocal/fusion.hpp"
#include "plocal/saturation.hpp"

namespace plocal {

/// A morphism of a linking category. `rep` is the minimal element of the
/// coset in the ambient group.
struct LinkMor {
  std::size_t dom = 0, cod = 0;
  Elem rep = 0;

  auto operator<=>(const LinkMor&) const = default;
};

class LinkingCategory {
 public:
  /// `objects` are subgroups of F.S(); F must be ambient-backed.
  LinkingCategory(FusionPtr F, std::vector<Subgroup> objects) : F_(std::move(F)) {
    if (F_->kind() != FusionSystem::Kind::Ambient)
      throw Error("linking categories are built from an ambient group");
    G_ = F_->ambient();
    std::sort(objects.begin(), objects.end());
    objects.erase(std::unique(objects.begin(), objects.end()), objects.end());
    objects_ = std::move(objects);
    const auto& emb = F_->ambient_embedding();
    back_.assign(G_->order(), kNone);
    for (Elem s = 0; s < emb.size(); ++s) back_[emb[s]] = s;

    const std::size_t n = objects_.size();
    for (const auto& P : objects_) {
      if (P.parent() != F_->S()) throw Error("object is not a subgroup of S");
      ambient_.push_back(F_->to_ambient(P));
      kernel_.push_back(p_residual(centralizer(G_, ambient_.back()), F_->prime()));
      coset_rep_.push_back(coset_table(kernel_.back()));
    }
    mor_.assign(n * n, {});
    transporter_size_.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        auto T = transporter(G_, ambient_[i], ambient_[j]);
        transporter_size_[i * n + j] = T.size();
        std::vector<LinkMor>& m = mor_[i * n + j];
        for (Elem x : T)
          if (coset_rep_[i][x] == x) m.push_back({i, j, x});
      }
  }

  const FusionPtr& fusion() const { return F_; }
  const GroupPtr& group() const { return G_; }
  std::size_t prime() const { return F_->prime(); }
  std::size_t object_count() const { return objects_.size(); }
  const std::vector<Subgroup>& objects() const { return objects_; }
  const Subgroup& object(std::size_t i) const { return objects_[i]; }
  const Subgroup& ambient_object(std::size_t i) const { return ambient_[i]; }
  /// O^p(C_G(P)) for the i-th object.
  const Subgroup& kernel(std::size_t i) const { return kernel_[i]; }

  std::optional<std::size_t> find(const Subgroup& P) const {
    auto it = std::lower_bound(objects_.begin(), objects_.end(), P);
    if (it == objects_.end() || !(*it == P)) return std::nullopt;
    return std::size_t(it - objects_.begin());
  }
  std::size_t index(const Subgroup& P) const {
    auto i = find(P);
    if (!i) throw Error("subgroup is not an object of the linking category");
    return *i;
  }

  const std::vector<LinkMor>& mor(std::size_t i, std::size_t j) const {
    return mor_[i * objects_.size() + j];
  }
  std::size_t transporter_size(std::size_t i, std::size_t j) const {
    return transporter_size_[i * objects_.size() + j];
  }
  std::size_t morphism_count() const {
    std::size_t n = 0;
    for (const auto& m : mor_) n += m.size();
    return n;
  }

  /// The morphism i -> j represented by x; x must transport P_i into P_j.
  LinkMor morphism(std::size_t i, std::size_t j, Elem x) const {
    if (!conjugates_into(ambient_[i], x, ambient_[j]))
      throw TransporterViolation("element does not conjugate the source into the target");
    return {i, j, coset_rep_[i][x]};
  }

  LinkMor identity(std::size_t i) const { return {i, i, coset_rep_[i][0]}; }

  /// ι: the identity coset P_i -> P_j for P_i <= P_j.
  LinkMor inclusion(std::size_t i, std::size_t j) const {
    if (!objects_[i].is_subgroup_of(objects_[j]))
      throw ContainmentViolation("inclusion between non-nested objects");
    return identity_coset(i, j);
  }

  /// g ∘ f.
  LinkMor compose(const LinkMor& g, const LinkMor& f) const {
    if (f.cod != g.dom) throw Error("morphisms are not composable");
    return {f.dom, g.cod, coset_rep_[f.dom][G_->mul(g.rep, f.rep)]};
  }

  /// π(f) = c_x as a map P -> Q inside S.
  GroupMono project(const LinkMor& f) const {
    const Subgroup& P = objects_[f.dom];
    std::vector<Elem> v;
    v.reserve(P.order());
    for (Elem a : P.members()) v.push_back(back_[G_->conj(f.rep, F_->ambient_embedding()[a])]);
    return GroupMono(P, objects_[f.cod], std::move(v));
  }

  /// δ_{P_i,P_j}(s) for s in N_S(P_i, P_j), given in S coordinates.
  LinkMor delta(std::size_t i, std::size_t j, Elem s) const {
    return morphism(i, j, F_->ambient_embedding()[s]);
  }

  /// N_S(P_i, P_j) in S coordinates.
  std::vector<Elem> s_transporter(std::size_t i, std::size_t j) const {
    return transporter(F_->whole(), objects_[i], objects_[j]);
  }

 private:
  static constexpr Elem kNone = ~Elem{0};

  LinkMor identity_coset(std::size_t i, std::size_t j) const { return {i, j, coset_rep_[i][0]}; }

  /// Maps every element x of G to the least element of x K.
  std::vector<Elem> coset_table(const Subgroup& K) const {
    std::vector<Elem> rep(G_->order(), kNone);
    for (Elem x = 0; x < G_->order(); ++x) {
      if (rep[x] != kNone) continue;
      for (Elem k : K.members()) rep[G_->mul(x, k)] = x;
    }
    return rep;
  }

  FusionPtr F_;
  GroupPtr G_;
  std::vector<Subgroup> objects_, ambient_, kernel_;
  std::vector<std::vector<Elem>> coset_rep_;
  std::vector<Elem> back_;
  std::vector<std::vector<LinkMor>> mor_;
  std::vector<std::size_t> transporter_size_;
};

inline LinkingCategory linking_category(const FusionPtr& F, const Collection& H) {
  return LinkingCategory(F, H.members());
}

/// L^c_S(G).
inline LinkingCategory centric_linking(const FusionPtr& F) {
  return LinkingCategory(F, centric_subgroups(*F));
}

/// L^q_S(G).
inline LinkingCategory quasicentric_linking(const FusionPtr& F) {
  return LinkingCategory(F, quasicentric_subgroups(F));
}

// ---------------------------------------------------------------------------
// Axiom verification

struct ClauseReport {
  std::string clause;
  bool holds = true;
  std::size_t cases = 0;
  std::string witness;

  void fail(std::string w) {
    if (holds) witness = std::move(w);
    holds = false;
  }
};

struct LinkingReport {
  std::vector<ClauseReport> clauses;

  bool holds() const {
    for (const auto& c : clauses)
      if (!c.holds) return false;
    return true;
  }
  const ClauseReport* find(const std::string& name) const {
    for (const auto& c : clauses)
      if (c.clause == name) return &c;
    return nullptr;
  }
};

namespace linking_detail {

inline std::string describe(const LinkingCategory& L, const LinkMor& f) {
  return "morphism " + std::to_string(f.dom) + "->" + std::to_string(f.cod) + " rep " +
         L.group()->element(f.rep).to_string();
}

/// |mor(P,Q)| · |O^p(C_G(P))| = |transporter(G,P,Q)|.
inline ClauseReport coset_count(const LinkingCategory& L) {
  ClauseReport r{"coset-count"};
  const std::size_t n = L.object_count();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      ++r.cases;
      if (L.mor(i, j).size() * L.kernel(i).order() != L.transporter_size(i, j))
        r.fail("objects " + std::to_string(i) + "," + std::to_string(j));
    }
  return r;
}

/// The group `acting` (in S coordinates, inside C_S(P) or Z(P)) acts on
/// mor(P,Q) by f -> f ∘ δ_P(z); checks freeness and that π induces a
/// bijection from orbits onto Hom_F(P,Q).
inline void check_free_and_bijective(const LinkingCategory& L, std::size_t i,
                                     const Subgroup& acting, ClauseReport& r) {
  const FusionSystem& F = *L.fusion();
  for (std::size_t j = 0; j < L.object_count(); ++j) {
    ++r.cases;
    const auto& mors = L.mor(i, j);
    std::set<LinkMor> seen;
    std::size_t orbits = 0;
    bool ok = true;
    for (const auto& f : mors) {
      if (seen.contains(f)) continue;
      ++orbits;
      const GroupMono pf = L.project(f);
      std::set<LinkMor> orbit;
      for (Elem z : acting.members()) {
        LinkMor g = L.compose(f, L.delta(i, i, z));
        orbit.insert(g);
        seen.insert(g);
        if (!L.project(g).same_map(pf)) ok = false;
      }
      if (orbit.size() != acting.order()) ok = false;
    }
    std::set<std::vector<Elem>> images;
    for (const auto& f : mors) images.insert(L.project(f).images());
    if (!ok || orbits != F.hom_count(L.object(i), L.object(j)) ||
        images.size() != F.hom_count(L.object(i), L.object(j)))
      r.fail("objects " + std::to_string(i) + "," + std::to_string(j));
  }
}

/// π(f) ranges over all of Hom_F(P,Q).
inline ClauseReport surjectivity(const LinkingCategory& L) {
  ClauseReport r{"pi-surjective"};
  const FusionSystem& F = *L.fusion();
  for (std::size_t i = 0; i < L.object_count(); ++i)
    for (std::size_t j = 0; j < L.object_count(); ++j) {
      ++r.cases;
      std::set<std::vector<Elem>> images;
      for (const auto& f : L.mor(i, j)) images.insert(L.project(f).images());
      if (images.size() != F.hom_count(L.object(i), L.object(j)))
        r.fail("objects " + std::to_string(i) + "," + std::to_string(j));
    }
  return r;
}

/// π(δ_P(g)) = c_g for g in N_S(P).
inline ClauseReport clause_B(const LinkingCategory& L, std::string name) {
  ClauseReport r{std::move(name)};
  const FusionSystem& F = *L.fusion();
  for (std::size_t i = 0; i < L.object_count(); ++i) {
    const Subgroup& P = L.object(i);
    for (Elem g : F.normalizer_in_S(P).members()) {
      ++r.cases;
      if (!L.project(L.delta(i, i, g)).same_map(conjugation_hom(g, P, P)))
        r.fail("object " + std::to_string(i));
    }
  }
  return r;
}

/// f ∘ δ_P(g) = δ_Q(π(f)(g)) ∘ f for g in P.
inline ClauseReport clause_C(const LinkingCategory& L, std::string name) {
  ClauseReport r{std::move(name)};
  for (std::size_t i = 0; i < L.object_count(); ++i)
    for (std::size_t j = 0; j < L.object_count(); ++j)
      for (const auto& f : L.mor(i, j)) {
        const GroupMono pf = L.project(f);
        for (Elem g : L.object(i).members()) {
          ++r.cases;
          if (L.compose(f, L.delta(i, i, g)) != L.compose(L.delta(j, j, pf.apply(g)), f))
            r.fail(describe(L, f));
        }
      }
  return r;
}

}  // namespace linking_detail

/// (A), (B), (C) of a centric linking system, plus the coset count.
inline LinkingReport verify_centric_axioms(const LinkingCategory& L) {
  namespace ld = linking_detail;
  LinkingReport rep;
  rep.clauses.push_back(ld::coset_count(L));
  ClauseReport a{"A"};
  for (std::size_t i = 0; i < L.object_count(); ++i) {
    const Subgroup& P = L.object(i);
    if (!is_centric(*L.fusion(), P)) {
      a.fail("object " + std::to_string(i) + " is not F-centric");
      continue;
    }
    ld::check_free_and_bijective(L, i, center(P), a);
  }
  rep.clauses.push_back(a);
  rep.clauses.push_back(ld::surjectivity(L));
  rep.clauses.push_back(ld::clause_B(L, "B"));
  rep.clauses.push_back(ld::clause_C(L, "C"));
  return rep;
}

/// (A)_q through (D)_q of a quasicentric linking system, plus the coset count.
inline LinkingReport verify_quasicentric_axioms(const LinkingCategory& L) {
  namespace ld = linking_detail;
  const FusionSystem& F = *L.fusion();
  LinkingReport rep;
  rep.clauses.push_back(ld::coset_count(L));
  ClauseReport a{"A_q"};
  for (std::size_t i = 0; i < L.object_count(); ++i) {
    const Subgroup& P = L.object(i);
    if (!F.is_fully_centralized(P)) continue;
    ld::check_free_and_bijective(L, i, F.centralizer_in_S(P), a);
  }
  rep.clauses.push_back(a);
  rep.clauses.push_back(ld::surjectivity(L));
  rep.clauses.push_back(ld::clause_B(L, "B_q"));
  rep.clauses.push_back(ld::clause_C(L, "C_q"));
  ClauseReport d{"D_q"};
  auto top = L.find(F.whole());
  if (!top) {
    d.fail("S is not an object");
  } else {
    for (std::size_t i = 0; i < L.object_count(); ++i) {
      const LinkMor iota = L.inclusion(i, *top);
      for (Elem g : F.normalizer_in_S(L.object(i)).members()) {
        ++d.cases;
        if (L.compose(iota, L.delta(i, i, g)) != L.compose(L.delta(*top, *top, g), iota))
          d.fail("object " + std::to_string(i));
      }
    }
  }
  rep.clauses.push_back(d);
  return rep;
}

// ---------------------------------------------------------------------------
// Factorization and restriction

/// Every χ in mor(P,Q) with ψ ∘ χ = φ, for φ: P -> R and ψ: Q -> R.
inline std::vector<LinkMor> factorizations(const LinkingCategory& L, const LinkMor& phi,
                                           const LinkMor& psi) {
  if (phi.cod != psi.cod) throw Error("factorization needs a common target");
  if (!L.project(phi).image().is_subgroup_of(L.project(psi).image()))
    throw ContainmentViolation("image of phi is not contained in the image of psi");
  std::vector<LinkMor> out;
  for (const auto& chi : L.mor(phi.dom, psi.dom))
    if (L.compose(psi, chi) == phi) out.push_back(chi);
  return out;
}

/// The unique χ with φ = ψ ∘ χ.
inline LinkMor factor_unique(const LinkingCategory& L, const LinkMor& phi, const LinkMor& psi) {
  auto all = factorizations(L, phi, psi);
  if (all.size() != 1)
    throw InternalInconsistency("expected one factorization, found " + std::to_string(all.size()));
  return all.front();
}

/// φ|_{P'}^{Q'}: the unique morphism with ι_{Q'}^Q ∘ φ|_{P'}^{Q'} = φ ∘ ι_{P'}^P.
inline LinkMor restriction(const LinkingCategory& L, const LinkMor& phi, std::size_t p_sub,
                           std::size_t q_sub) {
  return factor_unique(L, L.compose(phi, L.inclusion(p_sub, phi.dom)), L.inclusion(q_sub, phi.cod));
}

// ---------------------------------------------------------------------------
// The δ family

struct DeltaFamilyReport {
  ClauseReport a{"a"}, b{"b"}, c{"c"}, unique{"unique"};
  bool holds() const { return a.holds && b.holds && c.holds && unique.holds; }
};

/// Checks the three defining conditions of δ_{P,Q}: N_S(P,Q) -> mor(P,Q)
/// with the identity-coset inclusions, and re-derives each δ_{P,Q}(g) as the
/// restriction of δ_S(g) to confirm it is forced.
inline DeltaFamilyReport verify_delta_family(const LinkingCategory& L) {
  const FusionSystem& F = *L.fusion();
  const std::size_t n = L.object_count();
  DeltaFamilyReport r;
  std::vector<std::vector<Elem>> T(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) T[i * n + j] = L.s_transporter(i, j);
  auto top = L.find(F.whole());

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (Elem g : T[i * n + j]) {
        ++r.a.cases;
        const LinkMor d = L.delta(i, j, g);
        if (!L.project(d).same_map(conjugation_hom(g, L.object(i), L.object(j))))
          r.a.fail(linking_detail::describe(L, d));
        if (top) {
          ++r.unique.cases;
          const LinkMor via = factor_unique(L, L.compose(L.delta(*top, *top, g), L.inclusion(i, *top)),
                                            L.inclusion(j, *top));
          if (via != d) r.unique.fail(linking_detail::describe(L, d));
        }
      }

  for (std::size_t i = 0; i < n; ++i) {
    if (top) {
      ++r.b.cases;
      if (L.delta(i, *top, FiniteGroup::identity()) != L.inclusion(i, *top)) r.b.fail("object " + std::to_string(i));
    }
    for (Elem g : T[i * n + i]) {
      ++r.b.cases;
      if (L.delta(i, i, g) != L.morphism(i, i, F.ambient_embedding()[g]))
        r.b.fail("object " + std::to_string(i));
    }
  }

  const GroupPtr& S = F.S();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (Elem g : T[i * n + j])
          for (Elem h : T[j * n + k]) {
            ++r.c.cases;
            if (L.compose(L.delta(j, k, h), L.delta(i, j, g)) != L.delta(i, k, S->mul(h, g)))
              r.c.fail("objects " + std::to_string(i) + "," + std::to_string(j) + "," +
                       std::to_string(k));
          }
  if (!top) r.unique.fail("S is not an object");
  return r;
}

// ---------------------------------------------------------------------------
// Monomorphisms and epimorphisms

struct MonoEpiReport {
  std::size_t triples = 0;
  std::size_t violations = 0;
  bool sampled = false;
  std::string witness;
  bool holds() const { return violations == 0; }
};

namespace linking_detail {

/// Checks ψ∘- injective on mor(P,Q) and -∘ψ' injective on mor(Q,R) for the
/// object triple (P,Q,R), over every ψ: Q->R and ψ': P->Q.
inline void mono_epi_triple(const LinkingCategory& L, std::size_t p, std::size_t q, std::size_t r,
                            MonoEpiReport& rep) {
  const auto& pq = L.mor(p, q);
  const auto& qr = L.mor(q, r);
  for (const auto& psi : qr) {
    ++rep.triples;
    std::set<LinkMor> seen;
    for (const auto& chi : pq) seen.insert(L.compose(psi, chi));
    if (seen.size() != pq.size()) {
      ++rep.violations;
      if (rep.witness.empty()) rep.witness = "not mono: " + describe(L, psi);
    }
  }
  for (const auto& psi : pq) {
    ++rep.triples;
    std::set<LinkMor> seen;
    for (const auto& chi : qr) seen.insert(L.compose(chi, psi));
    if (seen.size() != qr.size()) {
      ++rep.violations;
      if (rep.witness.empty()) rep.witness = "not epi: " + describe(L, psi);
    }
  }
}

}  // namespace linking_detail

/// Every morphism is a categorical monomorphism and epimorphism. With
/// `samples` = 0 every object triple is checked; otherwise that many object
/// triples are drawn with the given seed.
inline MonoEpiReport verify_mono_epi(const LinkingCategory& L, std::size_t samples = 0,
                                     std::uint64_t seed = 0) {
  MonoEpiReport rep;
  const std::size_t n = L.object_count();
  if (samples == 0) {
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q)
        for (std::size_t r = 0; r < n; ++r) linking_detail::mono_epi_triple(L, p, q, r, rep);
    return rep;
  }
  rep.sampled = true;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t s = 0; s < samples; ++s) {
    std::size_t p = pick(rng), q = pick(rng), r = pick(rng);
    linking_detail::mono_epi_triple(L, p, q, r, rep);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Aut_L(Q) and constrained models

/// Aut_L(Q) as a permutation group through its left-regular action on
/// mor(Q,Q). `element_of[k]` is the group element for mor(Q,Q)[k].
struct LinkingAutGroup {
  GroupPtr group;
  std::vector<LinkMor> morphisms;
  std::vector<Elem> element_of;

  Elem of(const LinkMor& f) const {
    auto it = std::lower_bound(morphisms.begin(), morphisms.end(), f);
    if (it == morphisms.end() || *it != f) throw Error("not an automorphism of the object");
    return element_of[std::size_t(it - morphisms.begin())];
  }
};

inline LinkingAutGroup aut_in_linking(const LinkingCategory& L, std::size_t q) {
  LinkingAutGroup A;
  A.morphisms = L.mor(q, q);
  const std::size_t n = A.morphisms.size();
  std::vector<Perm> perms;
  for (const auto& f : A.morphisms) {
    std::vector<Point> img(n);
    for (std::size_t k = 0; k < n; ++k) {
      LinkMor g = L.compose(f, A.morphisms[k]);
      img[k] = Point(std::lower_bound(A.morphisms.begin(), A.morphisms.end(), g) - A.morphisms.begin());
    }
    perms.push_back(Perm(std::move(img)));
  }
  A.group = FiniteGroup::from_elements(n, perms, perms, "Aut_L");
  for (const auto& p : perms) A.element_of.push_back(A.group->index_of(p));
  return A;
}

/// Morphism-oracle equality of F1 and F2 on the given objects of F1, with
/// S1 identified with S2 through `iso` (indices of F1.S() -> F2.S()).
inline bool same_morphisms_via(const FusionSystem& F1, const FusionSystem& F2,
                               const std::vector<Elem>& iso, const std::vector<Subgroup>& objects) {
  std::vector<Elem> back(iso.size());
  for (Elem s = 0; s < iso.size(); ++s) back[iso[s]] = s;
  for (const auto& P : objects) {
    Subgroup P2 = map_subgroup(P, F2.S(), iso);
    std::set<std::vector<Elem>> a, b;
    for (const auto& phi : F1.homs_from(P)) a.insert(phi.images());
    for (const auto& psi : F2.homs_from(P2)) {
      std::vector<Elem> v;
      for (Elem x : P.members()) v.push_back(back[psi.apply(iso[x])]);
      b.insert(std::move(v));
    }
    if (a != b) return false;
  }
  return true;
}

struct ConstrainedModel {
  Subgroup witness;  // Q = O_p(F), centric and normal in F
  GroupPtr group;    // Aut_L(Q)
  Subgroup sylow;    // δ_Q(S)
  Subgroup core;     // δ_Q(Q)
  FusionPtr fusion;  // F_{δ(S)}(group)
  std::vector<Elem> s_to_model;  // S -> fusion->S()
  bool sylow_ok = false, p_prime_reduced = false, p_constrained = false, fusion_equal = false;

  bool certified() const { return sylow_ok && p_prime_reduced && p_constrained && fusion_equal; }
  std::string failures() const {
    std::string out;
    auto add = [&](bool ok, const char* what) {
      if (!ok) out += out.empty() ? what : std::string(", ") + what;
    };
    add(sylow_ok, "Sylow embedding");
    add(p_prime_reduced, "p'-reduced");
    add(p_constrained, "p-constrained");
    add(fusion_equal, "fusion equality");
    return out;
  }
};

/// Realizes a constrained ambient fusion system by Aut_L(Q) for Q = O_p(F)
/// and certifies the result.
inline ConstrainedModel constrained_model(const FusionPtr& F) {
  auto Q = is_constrained(*F);
  if (!Q) throw Error("fusion system is not constrained");
  const std::size_t p = F->prime();
  ConstrainedModel m;
  m.witness = *Q;
  LinkingCategory L(F, {*Q});
  const std::size_t q = 0;
  LinkingAutGroup A = aut_in_linking(L, q);
  m.group = A.group;

  std::vector<Elem> delta(F->S()->order());
  for (Elem s = 0; s < delta.size(); ++s) delta[s] = A.of(L.delta(q, q, s));
  auto image = [&](const Subgroup& X) {
    std::vector<Elem> v;
    for (Elem s : X.members()) v.push_back(delta[s]);
    return subgroup_from_members(m.group, std::move(v));
  };
  m.sylow = image(F->whole());
  m.core = image(*Q);
  m.sylow_ok = m.sylow.order() == F->S()->order() &&
               p_part(m.group->order(), p) == m.sylow.order();
  m.p_prime_reduced = p_prime_core(m.group, p).is_trivial();
  m.p_constrained = centralizer(m.group, m.core).is_subgroup_of(m.core);
  if (m.sylow_ok) {
    m.fusion = fusion_of_group(m.group, m.sylow, p, F->limits());
    const auto& emb = m.fusion->ambient_embedding();
    std::vector<Elem> back(m.group->order(), 0);
    for (Elem s = 0; s < emb.size(); ++s) back[emb[s]] = s;
    for (Elem s : delta) m.s_to_model.push_back(back[s]);
    m.fusion_equal = same_morphisms_via(*F, *m.fusion, m.s_to_model, class_representatives(*F));
  }
  if (!m.certified()) throw CertificateFailure("constrained model failed: " + m.failures());
  return m;
}

}  // namespace plocal
