#pragma once

#include <optional>
#include <vector>

#include "plocal/fusion.hpp"

namespace plocal {

/// C_S(P') = Z(P') for every P' in the F-class of P.
inline bool is_centric(const FusionSystem& F, const Subgroup& P) {
  for (const auto& Q : F.conjugacy_class(P))
    if (!F.centralizer_in_S(Q).is_subgroup_of(Q)) return false;
  return true;
}

/// O_p(Out_F(P)) = 1.
inline bool is_radical(const FusionSystem& F, const Subgroup& P) {
  OutGroup o = out(F, P);
  return p_core(o.quotient.group, F.prime()).is_trivial();
}

// ---------------------------------------------------------------------------
// Quasicentric subgroups

/// Order of an automorphism under composition.
inline std::size_t automorphism_order(const GroupMono& a) {
  std::size_t k = 1;
  std::vector<Elem> cur = a.images();
  while (cur != a.domain().members()) {
    for (auto& y : cur) y = a.apply(y);
    ++k;
  }
  return k;
}

/// First algorithm: for every fully centralized P' in the class, C_F(P')
/// coincides with the fusion system of the p-group C_S(P').
inline bool quasicentric_by_centralizer_system(const FusionPtr& F, const Subgroup& P) {
  for (const auto& Pc : F->conjugacy_class(P)) {
    if (!F->is_fully_centralized(Pc)) continue;
    FusionPtr CF = centralizer_fusion_system(F, Pc);
    FusionPtr CS = fusion_of_p_group(CF->S(), F->prime());
    for (const auto& R : all_subgroups(CF->S(), F->limits())) {
      if (CF->homs_from(R).size() != CS->homs_from(R).size()) return false;
    }
  }
  return true;
}

struct QuasicentricWitness {
  Subgroup conjugate;  // P'
  Subgroup overgroup;  // Q P'
  GroupMono alpha;     // nontrivial p'-automorphism of QP' fixing P' pointwise
};

/// Second algorithm: search for P' ~ P, Q <= C_S(P') and a nontrivial
/// α in Aut_F(QP') of order prime to p with α|_{P'} = Id.
inline std::optional<QuasicentricWitness> quasicentric_obstruction(const FusionSystem& F,
                                                                  const Subgroup& P) {
  for (const auto& Pc : F.conjugacy_class(P)) {
    Subgroup top = join(Pc, F.centralizer_in_S(Pc));
    for (const auto& R : F.subgroups()) {
      if (!Pc.is_subgroup_of(R) || !R.is_subgroup_of(top)) continue;
      for (const auto& a : F.aut_maps(R)) {
        if (a.is_identity_on_domain()) continue;
        bool fixes = true;
        for (Elem x : Pc.members())
          if (a.apply(x) != x) {
            fixes = false;
            break;
          }
        if (!fixes) continue;
        if (automorphism_order(a) % F.prime() == 0) continue;
        return QuasicentricWitness{Pc, R, a};
      }
    }
  }
  return std::nullopt;
}

struct QuasicentricVerdict {
  bool by_centralizer_system;
  bool by_obstruction_search;
  bool agree() const { return by_centralizer_system == by_obstruction_search; }
};

inline QuasicentricVerdict quasicentric_verdicts(const FusionPtr& F, const Subgroup& P) {
  return {quasicentric_by_centralizer_system(F, P), !quasicentric_obstruction(*F, P).has_value()};
}

/// F-quasicentric test. Both algorithms run; on a saturated system they must
/// agree, and a disagreement raises InternalInconsistency. Pass
/// `assume_saturated = false` to return the first verdict without the check.
inline bool is_quasicentric(const FusionPtr& F, const Subgroup& P, bool assume_saturated = true) {
  QuasicentricVerdict v = quasicentric_verdicts(F, P);
  if (assume_saturated && !v.agree())
    throw InternalInconsistency("quasicentric algorithms disagree");
  return v.by_centralizer_system;
}

// ---------------------------------------------------------------------------
// Closed and normal subgroups

inline void require_normal_in_S(const FusionSystem& F, const Subgroup& Q) {
  if (!is_normalized_by(Q, F.whole())) throw NotNormal("subgroup is not normal in S");
}

/// No element of Q is F-conjugate to an element of S \ Q.
inline bool is_strongly_closed(const FusionSystem& F, const Subgroup& Q) {
  for (Elem x : Q.members()) {
    Subgroup cyc = Subgroup::generated(F.S(), {x});
    for (const auto& f : F.homs_from(cyc))
      if (!Q.contains(f.apply(x))) return false;
  }
  return true;
}

/// No other subgroup of S is F-conjugate to Q.
inline bool is_weakly_closed(const FusionSystem& F, const Subgroup& Q) {
  return F.conjugacy_class(Q).size() == 1;
}

/// Every α in Hom_F(P, P') extends to ᾱ in Hom_F(PQ, P'Q) with ᾱ(Q) = Q.
/// The α range over morphisms out of class representatives.
inline bool is_normal_in_F(const FusionSystem& F, const Subgroup& Q) {
  require_normal_in_S(F, Q);
  for (const auto& P : class_representatives(F)) {
    Subgroup PQ = join(P, Q);
    const auto& ext = F.homs_from(PQ);
    for (const auto& alpha : F.homs_from(P)) {
      bool found = false;
      for (const auto& psi : ext) {
        if (!alpha.extended_by(psi)) continue;
        bool keeps = true;
        for (Elem q : Q.generators())
          if (!Q.contains(psi.apply(q))) {
            keeps = false;
            break;
          }
        if (keeps) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
  }
  return true;
}

inline std::vector<Subgroup> normal_subgroups_of_S(const FusionSystem& F) {
  std::vector<Subgroup> out;
  Subgroup S = F.whole();
  for (const auto& Q : F.subgroups())
    if (is_normalized_by(Q, S)) out.push_back(Q);
  return out;
}

/// O_p(F): the join of all subgroups normal in F.
inline Subgroup maximal_normal_subgroup(const FusionSystem& F) {
  Subgroup acc = Subgroup::trivial(F.S());
  for (const auto& Q : normal_subgroups_of_S(F))
    if (!Q.is_subgroup_of(acc) && is_normal_in_F(F, Q)) acc = join(acc, Q);
  if (!is_normal_in_F(F, acc)) throw InternalInconsistency("join of normal subgroups is not normal");
  return acc;
}

inline std::vector<Subgroup> radical_subgroups(const FusionSystem& F) {
  std::vector<Subgroup> out;
  for (const auto& P : F.subgroups())
    if (is_radical(F, P)) out.push_back(P);
  return out;
}

inline std::vector<Subgroup> centric_subgroups(const FusionSystem& F) {
  std::vector<Subgroup> out;
  for (const auto& P : F.subgroups())
    if (is_centric(F, P)) out.push_back(P);
  return out;
}

inline std::vector<Subgroup> centric_radical_subgroups(const FusionSystem& F) {
  std::vector<Subgroup> out;
  for (const auto& P : F.subgroups())
    if (is_centric(F, P) && is_radical(F, P)) out.push_back(P);
  return out;
}

inline std::vector<Subgroup> quasicentric_subgroups(const FusionPtr& F) {
  std::vector<Subgroup> out;
  for (const auto& P : F->subgroups())
    if (is_quasicentric(F, P)) out.push_back(P);
  return out;
}

/// The three equivalent normality conditions: (a) normal in F; (b) strongly
/// closed and inside every F-centric F-radical subgroup; (c) weakly closed
/// and inside every F-centric F-radical subgroup.
///
/// The trivial subgroup is always F-radical, so containment in every radical
/// subgroup (without centricity) fails for any nontrivial Q. That literal
/// containment is still reported in `in_all_radicals` for inspection.
struct NormalEquivalenceReport {
  bool normal = false;
  bool strongly_closed_and_in_radicals = false;
  bool weakly_closed_and_in_radicals = false;
  bool in_all_radicals = false;
  bool consistent() const {
    return normal == strongly_closed_and_in_radicals &&
           normal == weakly_closed_and_in_radicals;
  }
};

inline bool contained_in_all(const Subgroup& Q, const std::vector<Subgroup>& subs) {
  for (const auto& R : subs)
    if (!Q.is_subgroup_of(R)) return false;
  return true;
}

inline NormalEquivalenceReport normal_equivalence_report(
    const FusionSystem& F, const Subgroup& Q, const std::vector<Subgroup>& centric_radicals,
    const std::vector<Subgroup>& radicals) {
  require_normal_in_S(F, Q);
  const bool in_cr = contained_in_all(Q, centric_radicals);
  NormalEquivalenceReport r;
  r.normal = is_normal_in_F(F, Q);
  r.strongly_closed_and_in_radicals = in_cr && is_strongly_closed(F, Q);
  r.weakly_closed_and_in_radicals = in_cr && is_weakly_closed(F, Q);
  r.in_all_radicals = contained_in_all(Q, radicals);
  return r;
}

inline NormalEquivalenceReport normal_equivalence_report(const FusionSystem& F,
                                                         const Subgroup& Q) {
  return normal_equivalence_report(F, Q, centric_radical_subgroups(F), radical_subgroups(F));
}

// ---------------------------------------------------------------------------
// P* and condition (*)

/// P* = { x in N_S(P) | c_x|_P in O_p(Aut_F(P)) }.
inline Subgroup star_subgroup(const FusionSystem& F, const Subgroup& P) {
  AutGroup A = aut(F, P);
  Subgroup core = p_core(A.group, F.prime());
  std::vector<Elem> out;
  for (Elem x : F.normalizer_in_S(P).members())
    if (core.contains(A.index_of(conjugation_hom(x, P, P)))) out.push_back(x);
  return Subgroup(F.S(), std::move(out));
}

/// Out_S(P) ∩ O_p(Out_F(P)) ≠ 1.
inline bool condition_star_witness(const FusionSystem& F, const Subgroup& P) {
  OutGroup o = out(F, P);
  Subgroup core = p_core(o.quotient.group, F.prime());
  for (Elem a : aut_S(F, o.aut).members()) {
    Elem img = o.quotient.projection[a];
    if (img != FiniteGroup::identity() && core.contains(img)) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Group-side notions (P a p-subgroup of G)

/// Z(P) is Sylow in C_G(P).
inline bool is_p_centric_in_G(const GroupPtr& G, const Subgroup& P, std::size_t p) {
  return center(P).order() == p_part(centralizer(G, P).order(), p);
}

/// O^p(C_G(P)) has order prime to p.
inline bool is_p_quasicentric_in_G(const GroupPtr& G, const Subgroup& P, std::size_t p) {
  return p_residual(centralizer(G, P), p).order() % p != 0;
}

// ---------------------------------------------------------------------------
// Passing to a normal subgroup

/// Compares F_{S0}(N) with F_S(G) for N normal in G, S0 = S ∩ N. Every
/// subgroup of S0 is checked for centricity and quasicentricity in both.
struct NormalTransferReport {
  FusionPtr F, F0;
  std::size_t checked = 0;
  /// Quasicentric in F_{S0}(N) but not in F_S(G).
  std::vector<Subgroup> quasicentric_lost;
  /// Centric in F_{S0}(N) but not in F_S(G), as subgroups of S.
  std::vector<Subgroup> centric_lost;
};

inline NormalTransferReport normal_subgroup_transfer(const GroupPtr& G, const Subgroup& N,
                                                     std::size_t p, const Limits& limits = {}) {
  if (!is_normalized_by(N, Subgroup::whole(G))) throw NotNormal("N is not normal in G");
  auto carry = [](const Subgroup& H, const GroupPtr& target) {
    std::vector<Elem> m;
    for (Elem x : H.members()) m.push_back(target->index_of(H.parent()->element(x)));
    return subgroup_from_members(target, std::move(m));
  };
  NormalTransferReport r;
  Subgroup S = sylow_p(G, p);
  r.F = fusion_of_group(G, S, p, limits);
  GroupPtr NG = as_group(N, "N");
  r.F0 = fusion_of_group(NG, carry(intersection(S, N), NG), p, limits);
  for (const auto& P0 : r.F0->subgroups()) {
    Subgroup P = carry(r.F0->to_ambient(P0), r.F->S());
    ++r.checked;
    if (is_quasicentric(r.F0, P0) && !is_quasicentric(r.F, P)) r.quasicentric_lost.push_back(P);
    if (is_centric(*r.F0, P0) && !is_centric(*r.F, P)) r.centric_lost.push_back(P);
  }
  return r;
}

}  // namespace plocal
