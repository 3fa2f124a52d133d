#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "plocal/mono.hpp"

namespace plocal {

class FusionSystem;
using FusionPtr = std::shared_ptr<const FusionSystem>;

/// A set of automorphisms of a fixed subgroup, each stored as its image list.
using AutSet = std::set<std::vector<Elem>>;

struct FusionOptions {
  /// Add inverses of isomorphism generators to a generated system.
  bool inverse_closure = false;
  Limits limits;
};

/// A fusion system over a finite p-group S.
///
/// Objects are all subgroups of S (as Subgroups of the group `S()`). The
/// morphism oracle is `homs_from(P)`, the set Hom_F(P, S); every other
/// morphism set is read off from it. Results are memoized.
class FusionSystem : public std::enable_shared_from_this<FusionSystem> {
 public:
  enum class Kind { Ambient, Generated, Restricted };

  /// F_S(G). `S` is a Subgroup of G and must be Sylow.
  static FusionPtr of_group(const GroupPtr& G, const Subgroup& S, std::size_t p,
                            const Limits& limits = {}) {
    if (S.parent() != G) throw NotSylow("Sylow candidate does not belong to G");
    if (!is_p_group(S, p) || S.order() != p_part(G->order(), p))
      throw NotSylow("subgroup of order " + std::to_string(S.order()) +
                     " is not a Sylow " + std::to_string(p) + "-subgroup of a group of order " +
                     std::to_string(G->order()));
    auto F = std::shared_ptr<FusionSystem>(new FusionSystem());
    F->p_ = p;
    F->limits_ = limits;
    F->S_ = S.order() == G->order()
                ? G
                : as_group(S, G->name().empty() ? "S"
                                                : "Syl_" + std::to_string(p) + "(" + G->name() + ")");
    Ambient a;
    a.G = G;
    a.S_in_G = S;
    a.embed = embedding_by_perm(F->S_, G);
    a.back.assign(G->order(), -1);
    for (Elem s = 0; s < a.embed.size(); ++s) a.back[a.embed[s]] = std::int64_t(s);
    F->backing_ = std::move(a);
    F->inverse_closed_ = true;
    return F;
  }

  /// The fusion system over S generated by `gens` and the inner
  /// conjugations of S.
  static FusionPtr generated(const GroupPtr& S, std::size_t p, std::vector<GroupMono> gens,
                             const FusionOptions& opt = {}) {
    if (!is_p_power(S->order(), p)) throw Error("S is not a p-group");
    for (const auto& g : gens)
      if (g.domain().parent() != S) throw Error("generator does not act on subgroups of S");
    auto F = std::shared_ptr<FusionSystem>(new FusionSystem());
    F->p_ = p;
    F->limits_ = opt.limits;
    F->S_ = S;
    Generated b;
    Subgroup whole = Subgroup::whole(S);
    for (Elem s : whole.generators()) b.gens.push_back(conjugation_hom(s, whole, whole));
    for (auto& g : gens) {
      GroupMono iso = g.corestriction();
      if (opt.inverse_closure) b.gens.push_back(iso.inverse());
      b.gens.push_back(std::move(iso));
    }
    F->backing_ = std::move(b);
    F->inverse_closed_ = opt.inverse_closure;
    return F;
  }

  /// Sub-system over `sub` (a subgroup of parent S) whose morphisms are the
  /// parent morphisms φ: P -> P' extending to ψ: PQ -> P'Q with ψ(Q) = Q and
  /// ψ|_Q in K (K = nullopt means all of Aut(Q)).
  static FusionPtr restricted(const FusionPtr& parent, const Subgroup& sub, const Subgroup& Q,
                              std::optional<AutSet> K) {
    auto F = std::shared_ptr<FusionSystem>(new FusionSystem());
    F->p_ = parent->p_;
    F->limits_ = parent->limits_;
    F->S_ = as_group(sub, "sub");
    Restricted r;
    r.parent = parent;
    r.Q = Q;
    r.K = std::move(K);
    r.embed = embedding_by_perm(F->S_, parent->S_);
    r.back.assign(parent->S_->order(), -1);
    for (Elem s = 0; s < r.embed.size(); ++s) r.back[r.embed[s]] = std::int64_t(s);
    F->inverse_closed_ = parent->inverse_closed_;
    F->backing_ = std::move(r);
    return F;
  }

  Kind kind() const {
    if (std::holds_alternative<Ambient>(backing_)) return Kind::Ambient;
    if (std::holds_alternative<Generated>(backing_)) return Kind::Generated;
    return Kind::Restricted;
  }

  const GroupPtr& S() const { return S_; }
  Subgroup whole() const { return Subgroup::whole(S_); }
  std::size_t prime() const { return p_; }
  const Limits& limits() const { return limits_; }
  bool inverse_closed() const { return inverse_closed_; }

  /// Ambient group and the element embedding S -> G (Ambient kind only).
  const GroupPtr& ambient() const { return std::get<Ambient>(backing_).G; }
  const Subgroup& sylow_in_ambient() const { return std::get<Ambient>(backing_).S_in_G; }
  const std::vector<Elem>& ambient_embedding() const { return std::get<Ambient>(backing_).embed; }

  /// Subgroup of S -> subgroup of the ambient group.
  Subgroup to_ambient(const Subgroup& P) const {
    const auto& a = std::get<Ambient>(backing_);
    return map_subgroup(P, a.G, a.embed);
  }

  /// Subgroup of the ambient group contained in S -> subgroup of S.
  Subgroup from_ambient(const Subgroup& PG) const {
    const auto& a = std::get<Ambient>(backing_);
    std::vector<Elem> m;
    for (Elem x : PG.members()) {
      if (a.back[x] < 0) throw ContainmentViolation("subgroup is not contained in S");
      m.push_back(Elem(a.back[x]));
    }
    std::sort(m.begin(), m.end());
    return Subgroup(S_, std::move(m));
  }

  /// Hom_F(P, S), deduplicated, sorted by image list.
  const std::vector<GroupMono>& homs_from(const Subgroup& P) const {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = cache_.find(P);
      if (it != cache_.end()) return *it->second;
    }
    auto computed = std::make_shared<const std::vector<GroupMono>>(compute_homs_from(P));
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = cache_.emplace(P, std::move(computed));
    return *it->second;
  }

  /// Hom_F(P, Q).
  std::vector<GroupMono> hom_set(const Subgroup& P, const Subgroup& Q) const {
    std::vector<GroupMono> out;
    for (const auto& f : homs_from(P))
      if (f.image().is_subgroup_of(Q)) out.push_back(f.with_codomain(Q));
    return out;
  }

  /// Aut_F(P) as a list of maps P -> P.
  std::vector<GroupMono> aut_maps(const Subgroup& P) const { return hom_set(P, P); }

  /// Number of morphisms P -> S; cheaper than hom_set when only sizes matter.
  std::size_t hom_count(const Subgroup& P, const Subgroup& Q) const {
    std::size_t n = 0;
    for (const auto& f : homs_from(P))
      if (f.image().is_subgroup_of(Q)) ++n;
    return n;
  }

  bool contains(const GroupMono& phi) const {
    for (const auto& f : homs_from(phi.domain()))
      if (f.images() == phi.images()) return true;
    return false;
  }

  /// The F-conjugacy class of P in canonical order.
  const std::vector<Subgroup>& conjugacy_class(const Subgroup& P) const {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = class_cache_.find(P);
      if (it != class_cache_.end()) return *it->second;
    }
    std::vector<Subgroup> cls;
    {
      std::unordered_set<Subgroup, SubgroupHash> seen;
      for (const auto& f : homs_from(P))
        if (seen.insert(f.image()).second) cls.push_back(f.image());
    }
    if (!inverse_closed_) {
      // Keep only targets with a morphism back onto P: then both maps are
      // isomorphisms of the category.
      std::erase_if(cls, [&](const Subgroup& Qc) {
        for (const auto& g : homs_from(Qc))
          if (g.image() == P) return false;
        return true;
      });
    }
    std::sort(cls.begin(), cls.end());
    auto ptr = std::make_shared<const std::vector<Subgroup>>(std::move(cls));
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = class_cache_.emplace(P, std::move(ptr));
    return *it->second;
  }

  Subgroup normalizer_in_S(const Subgroup& P) const { return normalizer(whole(), P); }
  Subgroup centralizer_in_S(const Subgroup& P) const { return centralizer(whole(), P); }

  bool is_fully_normalized(const Subgroup& P) const {
    const std::size_t n = normalizer_in_S(P).order();
    for (const auto& Q : conjugacy_class(P))
      if (normalizer_in_S(Q).order() > n) return false;
    return true;
  }

  bool is_fully_centralized(const Subgroup& P) const {
    const std::size_t n = centralizer_in_S(P).order();
    for (const auto& Q : conjugacy_class(P))
      if (centralizer_in_S(Q).order() > n) return false;
    return true;
  }

  /// Fully normalized member of P's class: least canonical form among those
  /// with maximal |N_S(-)|.
  Subgroup fully_normalized_representative(const Subgroup& P) const {
    const auto& cls = conjugacy_class(P);
    std::size_t best = 0;
    std::optional<Subgroup> rep;
    for (const auto& Q : cls) {
      std::size_t n = normalizer_in_S(Q).order();
      if (!rep || n > best) {
        best = n;
        rep = Q;
      }
    }
    return *rep;
  }

  const std::vector<Subgroup>& subgroups() const {
    std::call_once(lattice_once_, [&] { lattice_ = all_subgroups(S_, limits_); });
    return lattice_;
  }

 private:
  struct Ambient {
    GroupPtr G;
    Subgroup S_in_G;
    std::vector<Elem> embed;
    std::vector<std::int64_t> back;
  };
  struct Generated {
    std::vector<GroupMono> gens;
  };
  struct Restricted {
    FusionPtr parent;
    Subgroup Q;
    std::optional<AutSet> K;
    std::vector<Elem> embed;
    std::vector<std::int64_t> back;
  };

  FusionSystem() = default;

  std::vector<GroupMono> compute_homs_from(const Subgroup& P) const {
    if (P.parent() != S_) throw Error("object is not a subgroup of S");
    if (auto* a = std::get_if<Ambient>(&backing_)) return ambient_homs(*a, P);
    if (auto* g = std::get_if<Generated>(&backing_)) return generated_homs(*g, P);
    return restricted_homs(std::get<Restricted>(backing_), P);
  }

  std::vector<GroupMono> ambient_homs(const Ambient& a, const Subgroup& P) const {
    const auto& G = *a.G;
    Subgroup PG = map_subgroup(P, a.G, a.embed);
    std::set<std::vector<Elem>> maps;
    for (Elem x : transporter(a.G, PG, a.S_in_G)) {
      std::vector<Elem> v;
      v.reserve(P.order());
      for (Elem m : P.members()) v.push_back(Elem(a.back[G.conj(x, a.embed[m])]));
      maps.insert(std::move(v));
    }
    Subgroup S = whole();
    std::vector<GroupMono> out;
    out.reserve(maps.size());
    for (const auto& v : maps) out.emplace_back(P, S, v);
    return out;
  }

  struct VecHash {
    std::size_t operator()(const std::vector<Elem>& v) const noexcept {
      std::size_t h = 1469598103934665603ULL;
      for (Elem e : v) {
        h ^= e;
        h *= 1099511628211ULL;
      }
      return h;
    }
  };

  // Breadth-first closure over morphisms out of P: each state is a map
  // P -> S; a generator applies whenever its domain contains the current image.
  std::vector<GroupMono> generated_homs(const Generated& b, const Subgroup& P) const {
    const std::size_t n = S_->order();
    std::unordered_set<std::vector<Elem>, VecHash> seen;
    std::vector<std::vector<Elem>> states{P.members()};
    seen.insert(P.members());
    for (std::size_t i = 0; i < states.size(); ++i) {
      DynBitset img(n);
      for (Elem y : states[i]) img.set(y);
      for (const auto& g : b.gens) {
        if (g.domain().order() < P.order() || !img.is_subset_of(g.domain().bits())) continue;
        std::vector<Elem> next;
        next.reserve(states[i].size());
        for (Elem y : states[i]) next.push_back(g.apply(y));
        if (seen.insert(next).second) {
          states.push_back(std::move(next));
          if (states.size() > limits_.closure_bound)
            throw BoundExceeded("morphism closure exceeded bound " +
                                    std::to_string(limits_.closure_bound),
                                states.size());
        }
      }
    }
    std::sort(states.begin(), states.end());
    Subgroup S = whole();
    std::vector<GroupMono> out;
    out.reserve(states.size());
    for (auto& v : states) out.emplace_back(P, S, std::move(v));
    return out;
  }

  std::vector<GroupMono> restricted_homs(const Restricted& r, const Subgroup& P) const {
    const auto& parent = *r.parent;
    Subgroup PP = map_subgroup(P, parent.S_, r.embed);
    Subgroup PQ = join(PP, r.Q);
    const auto& ext = parent.homs_from(PQ);
    std::vector<GroupMono> out;
    Subgroup S = whole();
    for (const auto& phi : parent.homs_from(PP)) {
      bool inside = true;
      for (Elem y : phi.images())
        if (r.back[y] < 0) {
          inside = false;
          break;
        }
      if (!inside) continue;
      bool ok = false;
      for (const auto& psi : ext) {
        if (!phi.extended_by(psi)) continue;
        std::vector<Elem> onQ;
        onQ.reserve(r.Q.order());
        bool fixes = true;
        for (Elem q : r.Q.members()) {
          Elem y = psi.apply(q);
          if (!r.Q.contains(y)) {
            fixes = false;
            break;
          }
          onQ.push_back(y);
        }
        if (!fixes) continue;
        if (r.K && !r.K->contains(onQ)) continue;
        ok = true;
        break;
      }
      if (!ok) continue;
      std::vector<Elem> v;
      v.reserve(P.order());
      for (Elem y : phi.images()) v.push_back(Elem(r.back[y]));
      out.emplace_back(P, S, std::move(v));
    }
    normalize_hom_set(out);
    return out;
  }

  std::size_t p_ = 0;
  Limits limits_;
  GroupPtr S_;
  bool inverse_closed_ = false;
  std::variant<Ambient, Generated, Restricted> backing_;

  mutable std::mutex mu_;
  mutable std::unordered_map<Subgroup, std::shared_ptr<const std::vector<GroupMono>>, SubgroupHash>
      cache_;
  mutable std::unordered_map<Subgroup, std::shared_ptr<const std::vector<Subgroup>>, SubgroupHash>
      class_cache_;
  mutable std::once_flag lattice_once_;
  mutable std::vector<Subgroup> lattice_;
};

// ---------------------------------------------------------------------------
// Constructors as free functions

inline FusionPtr fusion_of_group(const GroupPtr& G, const Subgroup& S, std::size_t p,
                                 const Limits& limits = {}) {
  return FusionSystem::of_group(G, S, p, limits);
}

/// F_S(S) for a p-group given as a FiniteGroup.
inline FusionPtr fusion_of_p_group(const GroupPtr& S, std::size_t p) {
  return FusionSystem::of_group(S, Subgroup::whole(S), p);
}

inline FusionPtr generated_fusion_system(const GroupPtr& S, std::size_t p,
                                         std::vector<GroupMono> gens,
                                         const FusionOptions& opt = {}) {
  return FusionSystem::generated(S, p, std::move(gens), opt);
}

// ---------------------------------------------------------------------------
// Automorphism groups

/// Aut_F(P) as a permutation group on the positions of P's members.
struct AutGroup {
  Subgroup P;
  GroupPtr group;
  /// maps[e] is the automorphism represented by element e of `group`.
  std::vector<GroupMono> maps;

  static Perm to_perm(const Subgroup& P, const GroupMono& a) {
    std::vector<Point> img(P.order());
    for (std::size_t k = 0; k < img.size(); ++k) img[k] = Point(P.position(a.images()[k]));
    return Perm(std::move(img));
  }

  Elem index_of(const GroupMono& a) const { return group->index_of(to_perm(P, a)); }

  /// The subgroup of automorphisms c_x|_P for x in X (X normalizes P).
  Subgroup conjugations_by(const Subgroup& X) const {
    std::vector<Elem> gens;
    for (Elem x : X.generators()) gens.push_back(index_of(conjugation_hom(x, P, P)));
    return Subgroup::generated(group, std::span<const Elem>(gens));
  }
};

inline AutGroup aut(const FusionSystem& F, const Subgroup& P) {
  AutGroup A;
  A.P = P;
  auto maps = F.aut_maps(P);
  std::vector<Perm> perms;
  perms.reserve(maps.size());
  for (const auto& m : maps) perms.push_back(AutGroup::to_perm(P, m));
  A.group = FiniteGroup::from_elements(std::max<std::size_t>(P.order(), 1), perms, {});
  // Regenerate a small generating set for downstream algorithms.
  std::vector<Elem> all(A.group->order());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = Elem(i);
  Subgroup whole(A.group, all);
  std::vector<Perm> g2;
  for (Elem e : whole.generators()) g2.push_back(A.group->element(e));
  A.group = FiniteGroup::from_elements(A.group->degree(), A.group->elements(), std::move(g2));
  A.maps.resize(A.group->order());
  for (auto& m : maps) A.maps[A.index_of(m)] = m;
  return A;
}

/// Aut_S(P) = conjugations by N_S(P), inside Aut_F(P).
inline Subgroup aut_S(const FusionSystem& F, const AutGroup& A) {
  return A.conjugations_by(F.normalizer_in_S(A.P));
}

/// Inn(P), inside Aut_F(P).
inline Subgroup inn(const AutGroup& A) { return A.conjugations_by(A.P); }

struct OutGroup {
  AutGroup aut;
  Subgroup inner;
  Quotient quotient;
};

/// Out_F(P) = Aut_F(P)/Inn(P).
inline OutGroup out(const FusionSystem& F, const Subgroup& P) {
  OutGroup o{aut(F, P), {}, {}};
  o.inner = inn(o.aut);
  o.quotient = quotient_group(o.aut.group, o.inner);
  return o;
}

// ---------------------------------------------------------------------------
// Conjugacy class table

struct ConjugacyClassInfo {
  std::vector<Subgroup> members;
  Subgroup representative;
  std::vector<bool> fully_normalized;
  std::vector<bool> fully_centralized;
};

struct ConjugacyClassTable {
  std::vector<ConjugacyClassInfo> classes;
  /// Class index of a subgroup.
  std::size_t class_of(const Subgroup& P) const {
    for (std::size_t i = 0; i < classes.size(); ++i)
      for (const auto& m : classes[i].members)
        if (m == P) return i;
    throw Error("subgroup not found in class table");
  }
};

inline ConjugacyClassTable f_classes(const FusionSystem& F) {
  ConjugacyClassTable t;
  std::unordered_set<Subgroup, SubgroupHash> done;
  for (const auto& P : F.subgroups()) {
    if (done.contains(P)) continue;
    ConjugacyClassInfo info;
    info.members = F.conjugacy_class(P);
    std::size_t maxN = 0, maxC = 0;
    for (const auto& Q : info.members) {
      done.insert(Q);
      maxN = std::max(maxN, F.normalizer_in_S(Q).order());
      maxC = std::max(maxC, F.centralizer_in_S(Q).order());
    }
    for (const auto& Q : info.members) {
      info.fully_normalized.push_back(F.normalizer_in_S(Q).order() == maxN);
      info.fully_centralized.push_back(F.centralizer_in_S(Q).order() == maxC);
    }
    info.representative = F.fully_normalized_representative(P);
    t.classes.push_back(std::move(info));
  }
  return t;
}

/// Canonical representatives of all F-classes.
inline std::vector<Subgroup> class_representatives(const FusionSystem& F) {
  std::vector<Subgroup> reps;
  for (const auto& c : f_classes(F).classes) reps.push_back(c.representative);
  return reps;
}

// ---------------------------------------------------------------------------
// N_phi, K-normalizers, normalizer and centralizer systems

/// Aut_S(P) as a set of maps on P.
inline AutSet aut_S_maps(const FusionSystem& F, const Subgroup& P) {
  AutSet out;
  for (Elem x : F.normalizer_in_S(P).members()) out.insert(conjugation_hom(x, P, P).images());
  return out;
}

/// N_φ = { g in N_S(P) | φ c_g φ^-1 in Aut_S(φP) }.
inline Subgroup n_phi(const FusionSystem& F, const GroupMono& phi) {
  const auto& S = *F.S();
  const Subgroup& P = phi.domain();
  const Subgroup& R = phi.image();
  const AutSet autSR = aut_S_maps(F, R);
  const GroupMono inv = phi.inverse();
  std::vector<Elem> out;
  for (Elem g : F.normalizer_in_S(P).members()) {
    std::vector<Elem> v;
    v.reserve(R.order());
    for (std::size_t k = 0; k < R.order(); ++k) {
      Elem x = inv.images()[k];
      v.push_back(phi.apply(S.conj(g, x)));
    }
    if (autSR.contains(v)) out.push_back(g);
  }
  return Subgroup(F.S(), std::move(out));
}

/// N_S^K(P) = { x in N_S(P) | c_x in K }.
inline Subgroup k_normalizer(const FusionSystem& F, const Subgroup& P, const AutSet& K) {
  const auto& S = *F.S();
  auto compose_maps = [&](const std::vector<Elem>& x, const std::vector<Elem>& y) {
    std::vector<Elem> xy;
    xy.reserve(x.size());
    for (Elem e : y) xy.push_back(x[P.position(e)]);
    return xy;
  };
  bool closed = true;
  for (const auto& a : K)
    for (const auto& b : K)
      if (closed && !K.contains(compose_maps(a, b))) closed = false;
  if (!closed) warn("K-normalizer taken with respect to a set that is not a subgroup");
  std::vector<Elem> out;
  for (Elem x : F.normalizer_in_S(P).members()) {
    std::vector<Elem> v;
    v.reserve(P.order());
    for (Elem a : P.members()) v.push_back(S.conj(x, a));
    if (K.contains(v)) out.push_back(x);
  }
  return Subgroup(F.S(), std::move(out));
}

/// K = {Id_P}.
inline AutSet identity_aut_set(const Subgroup& P) { return AutSet{P.members()}; }

/// N_F^K(Q) over N_S^K(Q); K = nullopt means K = Aut(Q).
inline FusionPtr normalizer_fusion_system(const FusionPtr& F, const Subgroup& Q,
                                          std::optional<AutSet> K) {
  Subgroup sub = K ? k_normalizer(*F, Q, *K) : F->normalizer_in_S(Q);
  return FusionSystem::restricted(F, sub, Q, std::move(K));
}

/// C_F(P) over C_S(P).
inline FusionPtr centralizer_fusion_system(const FusionPtr& F, const Subgroup& P) {
  return normalizer_fusion_system(F, P, identity_aut_set(P));
}

/// The embedding of a restricted system's S into its parent's S, via
/// identical permutations.
inline Subgroup lift_subgroup(const FusionSystem& sub, const FusionSystem& parent,
                              const Subgroup& P) {
  return map_subgroup(P, parent.S(), embedding_by_perm(sub.S(), parent.S()));
}

inline Subgroup lower_subgroup(const FusionSystem& sub, const Subgroup& P) {
  std::vector<Elem> m;
  for (Elem x : P.members()) m.push_back(sub.S()->index_of(P.parent()->element(x)));
  std::sort(m.begin(), m.end());
  return Subgroup(sub.S(), std::move(m));
}

/// Morphism-oracle equality on the given objects of F (objects of F1 are
/// matched in F2 by identical permutations; both must share the same S
/// element set).
inline bool same_morphisms(const FusionSystem& F1, const FusionSystem& F2,
                           const std::vector<Subgroup>& objects_of_F1) {
  if (F1.S()->elements() != F2.S()->elements()) return false;
  for (const auto& P : objects_of_F1) {
    Subgroup P2 = F1.S() == F2.S() ? P : lower_subgroup(F2, P);
    const auto& a = F1.homs_from(P);
    const auto& b = F2.homs_from(P2);
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i].images() != b[i].images()) return false;
  }
  return true;
}

}  // namespace plocal
