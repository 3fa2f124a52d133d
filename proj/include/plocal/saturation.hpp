#pragma once

#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "plocal/classify.hpp"

namespace plocal {

/// A set H of subgroups of S, deduplicated and kept in canonical order.
class Collection {
 public:
  Collection() = default;

  Collection(const FusionSystem& F, std::vector<Subgroup> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    members_ = std::move(members);
    index_.insert(members_.begin(), members_.end());
    conj_closed_ = true;
    for (const auto& P : members_)
      for (const auto& Q : F.conjugacy_class(P))
        if (!index_.contains(Q)) conj_closed_ = false;
    if (F.S()->order() <= F.limits().lattice_bound) {
      bool closed = true;
      for (const auto& P : members_)
        for (const auto& R : F.subgroups())
          if (P.is_subgroup_of(R) && !index_.contains(R)) closed = false;
      overgroup_closed_ = closed;
    }
  }

  const std::vector<Subgroup>& members() const { return members_; }
  bool contains(const Subgroup& P) const { return index_.contains(P); }
  bool empty() const { return members_.empty(); }
  std::size_t size() const { return members_.size(); }
  bool conjugacy_closed() const { return conj_closed_; }
  /// Unknown when the lattice of S is beyond the configured bound.
  std::optional<bool> overgroup_closed() const { return overgroup_closed_; }

 private:
  std::vector<Subgroup> members_;
  std::unordered_set<Subgroup, SubgroupHash> index_;
  bool conj_closed_ = true;
  std::optional<bool> overgroup_closed_;
};

/// Union of the F-classes of the given subgroups.
inline Collection class_closure(const FusionSystem& F, const std::vector<Subgroup>& seeds) {
  std::vector<Subgroup> all;
  for (const auto& P : seeds)
    for (const auto& Q : F.conjugacy_class(P)) all.push_back(Q);
  return Collection(F, std::move(all));
}

inline Collection all_collection(const FusionSystem& F) { return Collection(F, F.subgroups()); }
inline Collection centric_collection(const FusionSystem& F) {
  return Collection(F, centric_subgroups(F));
}
inline Collection centric_radical_collection(const FusionSystem& F) {
  return Collection(F, centric_radical_subgroups(F));
}
inline Collection quasicentric_collection(const FusionPtr& F) {
  return Collection(*F, quasicentric_subgroups(F));
}

// ---------------------------------------------------------------------------
// Verdicts

struct Verdict {
  std::string condition;
  bool holds = true;
  bool vacuous = false;
  std::size_t cases = 0;
  std::optional<Subgroup> subgroup;
  std::optional<GroupMono> morphism;
  std::string detail;

  static Verdict vacuous_truth(std::string cond, const Subgroup& P, std::string why) {
    Verdict v;
    v.condition = std::move(cond);
    v.vacuous = true;
    v.subgroup = P;
    v.detail = std::move(why);
    return v;
  }
};

inline bool aut_S_is_sylow(const FusionSystem& F, const Subgroup& P) {
  const std::size_t autS = F.normalizer_in_S(P).order() / F.centralizer_in_S(P).order();
  return autS == p_part(F.aut_maps(P).size(), F.prime());
}

/// First morphism in Hom_F(N, within) extending phi, if any.
inline std::optional<GroupMono> find_extension(const FusionSystem& F, const GroupMono& phi,
                                               const Subgroup& N, const Subgroup& within) {
  for (const auto& psi : F.homs_from(N))
    if (psi.image().is_subgroup_of(within) && phi.extended_by(psi)) return psi;
  return std::nullopt;
}

/// (I) at P: if P is fully normalized, then P is fully centralized and
/// Aut_S(P) is Sylow in Aut_F(P).
inline Verdict check_I(const FusionSystem& F, const Subgroup& P) {
  if (!F.is_fully_normalized(P)) return Verdict::vacuous_truth("I", P, "not fully normalized");
  Verdict v;
  v.condition = "I";
  v.subgroup = P;
  v.cases = 1;
  if (!F.is_fully_centralized(P)) {
    v.holds = false;
    v.detail = "fully normalized but not fully centralized";
  } else if (!aut_S_is_sylow(F, P)) {
    v.holds = false;
    v.detail = "Aut_S(P) of order " +
               std::to_string(F.normalizer_in_S(P).order() / F.centralizer_in_S(P).order()) +
               " is not Sylow in Aut_F(P) of order " + std::to_string(F.aut_maps(P).size());
  }
  return v;
}

/// (II) at P: every φ in Hom_F(P,S) with φ(P) fully centralized extends to N_φ.
inline Verdict check_II(const FusionSystem& F, const Subgroup& P) {
  Verdict v;
  v.condition = "II";
  v.subgroup = P;
  const Subgroup S = F.whole();
  for (const auto& phi : F.homs_from(P)) {
    if (!F.is_fully_centralized(phi.image())) continue;
    ++v.cases;
    if (!find_extension(F, phi, n_phi(F, phi), S)) {
      v.holds = false;
      v.morphism = phi;
      v.detail = "no extension to N_phi of order " + std::to_string(n_phi(F, phi).order());
      return v;
    }
  }
  if (v.cases == 0) {
    v.vacuous = true;
    v.detail = "no morphism with fully centralized image";
  }
  return v;
}

/// (I') at P: some F-conjugate P' in H is fully centralized with Aut_S(P')
/// Sylow in Aut_F(P').
inline Verdict check_I_prime(const FusionSystem& F, const Collection& H, const Subgroup& P) {
  Verdict v;
  v.condition = "I'";
  v.subgroup = P;
  v.holds = false;
  for (const auto& Q : F.conjugacy_class(P)) {
    if (!H.contains(Q)) continue;
    ++v.cases;
    if (F.is_fully_centralized(Q) && aut_S_is_sylow(F, Q)) {
      v.holds = true;
      return v;
    }
  }
  v.detail = "no fully centralized conjugate in H with Sylow Aut_S";
  return v;
}

/// (IIA) on the class of P: some fully normalized P^ in the class admits, for
/// every P in the class, φ in Hom_F(N_S(P), N_S(P^)) with φ(P) = P^.
inline Verdict check_IIA(const FusionSystem& F, const Subgroup& P) {
  Verdict v;
  v.condition = "IIA";
  v.subgroup = P;
  const auto& cls = F.conjugacy_class(P);
  std::optional<Subgroup> blocker;
  for (const auto& hat : cls) {
    if (!F.is_fully_normalized(hat)) continue;
    const Subgroup Nhat = F.normalizer_in_S(hat);
    bool all = true;
    for (const auto& Q : cls) {
      ++v.cases;
      bool found = false;
      for (const auto& phi : F.homs_from(F.normalizer_in_S(Q))) {
        if (!phi.image().is_subgroup_of(Nhat)) continue;
        bool onto = true;
        for (Elem x : Q.generators())
          if (!hat.contains(phi.apply(x))) {
            onto = false;
            break;
          }
        if (onto) {
          found = true;
          break;
        }
      }
      if (!found) {
        all = false;
        blocker = Q;
        break;
      }
    }
    if (all) return v;
  }
  v.holds = false;
  if (blocker) v.subgroup = *blocker;
  v.detail = "no fully normalized representative receives every normalizer";
  return v;
}

/// (IIB) at P^: if fully normalized, every φ in Aut_F(P^) extends to
/// Hom_F(N_φ, N_S(P^)).
inline Verdict check_IIB(const FusionSystem& F, const Subgroup& hat) {
  if (!F.is_fully_normalized(hat)) return Verdict::vacuous_truth("IIB", hat, "not fully normalized");
  Verdict v;
  v.condition = "IIB";
  v.subgroup = hat;
  const Subgroup Nhat = F.normalizer_in_S(hat);
  for (const auto& phi : F.aut_maps(hat)) {
    ++v.cases;
    Subgroup N = n_phi(F, phi);
    if (!find_extension(F, phi, N, Nhat)) {
      v.holds = false;
      v.morphism = phi;
      v.detail = "automorphism admits no extension to N_phi of order " + std::to_string(N.order());
      return v;
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// H-saturation

struct SaturationReport {
  std::vector<Verdict> verdicts;
  bool conjugacy_closed = true;

  bool holds() const {
    for (const auto& v : verdicts)
      if (!v.holds) return false;
    return true;
  }
  const Verdict* first_failure() const {
    for (const auto& v : verdicts)
      if (!v.holds) return &v;
    return nullptr;
  }
  std::size_t checked() const {
    std::size_t n = 0;
    for (const auto& v : verdicts)
      if (!v.vacuous) ++n;
    return n;
  }
};

/// (I) and (II) at every member of H.
inline SaturationReport is_H_saturated(const FusionSystem& F, const Collection& H) {
  SaturationReport r;
  r.conjugacy_closed = H.conjugacy_closed();
  if (!r.conjugacy_closed) warn("H is not closed under F-conjugacy");
  for (const auto& P : H.members()) {
    r.verdicts.push_back(check_I(F, P));
    r.verdicts.push_back(check_II(F, P));
  }
  return r;
}

/// Saturation over the full lattice of S.
inline SaturationReport is_saturated(const FusionSystem& F) {
  return is_H_saturated(F, all_collection(F));
}

/// Saturation restricted to the F-classes of a focus set; used when the
/// lattice of S is too large to enumerate.
inline SaturationReport is_saturated_on(const FusionSystem& F, const std::vector<Subgroup>& focus) {
  return is_H_saturated(F, class_closure(F, focus));
}

/// The subsystem generated by all Hom_F(P, S) with P in H, compared with F on
/// every subgroup of `universe`.
inline bool is_H_generated(const FusionPtr& F, const Collection& H,
                           const std::vector<Subgroup>& universe) {
  if (H.empty()) throw Error("H must be nonempty");
  std::vector<GroupMono> gens;
  for (const auto& P : H.members())
    for (const auto& f : F->homs_from(P))
      if (H.contains(f.image())) gens.push_back(f);
  FusionOptions opt;
  opt.limits = F->limits();
  FusionPtr sub = generated_fusion_system(F->S(), F->prime(), std::move(gens), opt);
  return same_morphisms(*F, *sub, universe);
}

inline bool is_H_generated(const FusionPtr& F, const Collection& H) {
  return is_H_generated(F, H, F->subgroups());
}

// ---------------------------------------------------------------------------
// Sufficient-condition harness

struct StarClassVerdict {
  Subgroup representative;
  bool holds = false;
};

struct TheoremHarnessReport {
  std::string scope;  // "lattice" or "focus"
  bool h_conjugacy_closed = false;
  bool h_contains_centric_radical = false;
  bool h_generated = false;
  bool h_saturated = false;
  bool star_condition = false;
  std::vector<StarClassVerdict> star_classes;  // centric classes outside H
  bool conclusion_saturated = false;
  SaturationReport saturation;

  bool hypotheses_hold() const {
    return h_conjugacy_closed && h_contains_centric_radical && h_generated && h_saturated &&
           star_condition;
  }
  /// Hypotheses all true and conclusion false: would refute the theorem.
  bool violation() const { return hypotheses_hold() && !conclusion_saturated; }

  std::string summary() const {
    if (violation()) return "violation: all hypotheses hold but F is not saturated";
    if (!hypotheses_hold()) {
      std::string failing;
      auto add = [&](bool ok, const char* name) {
        if (!ok) failing += failing.empty() ? name : std::string(", ") + name;
      };
      add(h_conjugacy_closed, "conjugacy-closed");
      add(h_contains_centric_radical, "contains centric-radical");
      add(h_generated, "H-generated");
      add(h_saturated, "H-saturated");
      add(star_condition, "(*)");
      return "hypothesis failed (" + failing + "); theorem not applicable; F " +
             (conclusion_saturated ? "saturated" : "not saturated");
    }
    return "hypotheses hold; F saturated";
  }
};

/// Evaluates every hypothesis and the conclusion over `universe` (all
/// subgroups of S, or a conjugacy-closed focus set when the lattice is out of
/// reach).
inline TheoremHarnessReport theorem_A_harness(const FusionPtr& F, const Collection& H,
                                              const std::vector<Subgroup>& universe,
                                              std::string scope) {
  TheoremHarnessReport r;
  r.scope = std::move(scope);
  r.h_conjugacy_closed = H.conjugacy_closed();
  r.h_contains_centric_radical = true;
  r.star_condition = true;
  std::unordered_set<Subgroup, SubgroupHash> seen;
  for (const auto& P : universe) {
    if (seen.contains(P)) continue;
    for (const auto& Q : F->conjugacy_class(P)) seen.insert(Q);
    if (!is_centric(*F, P)) continue;
    if (is_radical(*F, P) && !H.contains(P)) r.h_contains_centric_radical = false;
    if (H.contains(P)) continue;
    StarClassVerdict c{P, false};
    for (const auto& Q : F->conjugacy_class(P))
      if (condition_star_witness(*F, Q)) {
        c.holds = true;
        break;
      }
    if (!c.holds) r.star_condition = false;
    r.star_classes.push_back(c);
  }
  r.h_generated = is_H_generated(F, H, universe);
  r.h_saturated = is_H_saturated(*F, H).holds();
  r.saturation = is_H_saturated(*F, class_closure(*F, universe));
  r.conclusion_saturated = r.saturation.holds();
  return r;
}

inline TheoremHarnessReport theorem_A_harness(const FusionPtr& F, const Collection& H) {
  return theorem_A_harness(F, H, F->subgroups(), "lattice");
}

// ---------------------------------------------------------------------------
// Constrained systems

/// O_p(F) when it is F-centric.
inline std::optional<Subgroup> is_constrained(const FusionSystem& F) {
  Subgroup O = maximal_normal_subgroup(F);
  if (is_centric(F, O)) return O;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Audit of the equivalent forms of (I) and (II)

struct NewAxiomAudit {
  bool I = true, I_prime = true, II = true, IIA = true, IIB = true;
  std::vector<Verdict> failures;

  bool I_iff_I_prime() const { return I == I_prime; }
  bool first_implication() const { return !(I && II) || (IIA && IIB); }
  bool second_implication() const { return !(IIA && IIB) || II; }
  bool consistent() const { return I_iff_I_prime() && first_implication() && second_implication(); }
};

inline NewAxiomAudit lemma_newax_audit(const FusionSystem& F, const Collection& H) {
  NewAxiomAudit a;
  auto record = [&](bool& flag, Verdict v) {
    if (!v.holds) {
      flag = false;
      a.failures.push_back(std::move(v));
    }
  };
  std::unordered_set<Subgroup, SubgroupHash> classes_done;
  for (const auto& P : H.members()) {
    record(a.I, check_I(F, P));
    record(a.I_prime, check_I_prime(F, H, P));
    record(a.II, check_II(F, P));
    record(a.IIB, check_IIB(F, P));
    if (!classes_done.contains(P)) {
      for (const auto& Q : F.conjugacy_class(P)) classes_done.insert(Q);
      record(a.IIA, check_IIA(F, P));
    }
  }
  return a;
}

}  // namespace plocal
