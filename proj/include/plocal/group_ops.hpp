#pragma once

#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "plocal/group.hpp"

namespace plocal {

// ---------------------------------------------------------------------------
// Warnings

using WarningHandler = std::function<void(const std::string&)>;

inline WarningHandler& warning_handler() {
  static WarningHandler h = [](const std::string& msg) {
    std::cerr << "warning: " << msg << '\n';
  };
  return h;
}

inline void warn(const std::string& msg) {
  if (warning_handler()) warning_handler()(msg);
}

// ---------------------------------------------------------------------------
// Arithmetic

inline bool is_prime(std::size_t n) {
  if (n < 2) return false;
  for (std::size_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Largest power of p dividing n.
inline std::size_t p_part(std::size_t n, std::size_t p) {
  std::size_t r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

inline bool is_p_power(std::size_t n, std::size_t p) { return p_part(n, p) == n; }

// ---------------------------------------------------------------------------
// Subgroup constructions

/// x P x^-1 as a subgroup of P's parent.
inline Subgroup conjugate(const Subgroup& P, Elem x) {
  const auto& g = *P.parent();
  std::vector<Elem> m;
  m.reserve(P.order());
  for (Elem a : P.members()) m.push_back(g.conj(x, a));
  std::sort(m.begin(), m.end());
  std::vector<Elem> gens;
  for (Elem a : P.generators()) gens.push_back(g.conj(x, a));
  return Subgroup(P.parent(), std::move(m), std::move(gens), true);
}

/// True iff x P x^-1 <= Q.
inline bool conjugates_into(const Subgroup& P, Elem x, const Subgroup& Q) {
  const auto& g = *P.parent();
  for (Elem a : P.generators())
    if (!Q.contains(g.conj(x, a))) return false;
  return true;
}

/// Builds a subgroup from an arbitrary member list already known to be closed.
inline Subgroup subgroup_from_members(const GroupPtr& g, std::vector<Elem> members) {
  std::sort(members.begin(), members.end());
  return Subgroup(g, std::move(members));
}

/// { x in within : x h = h x for all h in H }
inline Subgroup centralizer(const Subgroup& within, const Subgroup& H) {
  const auto& g = *within.parent();
  std::vector<Elem> out;
  for (Elem x : within.members()) {
    bool ok = true;
    for (Elem h : H.generators())
      if (g.mul(x, h) != g.mul(h, x)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(x);
  }
  return Subgroup(within.parent(), std::move(out));
}

inline Subgroup centralizer(const GroupPtr& G, const Subgroup& H) {
  return centralizer(Subgroup::whole(G), H);
}

/// { x in within : x H x^-1 = H }
inline Subgroup normalizer(const Subgroup& within, const Subgroup& H) {
  std::vector<Elem> out;
  for (Elem x : within.members())
    if (conjugates_into(H, x, H)) out.push_back(x);
  return Subgroup(within.parent(), std::move(out));
}

inline Subgroup normalizer(const GroupPtr& G, const Subgroup& H) {
  return normalizer(Subgroup::whole(G), H);
}

/// { x in within : x P x^-1 <= Q }, sorted.
inline std::vector<Elem> transporter(const Subgroup& within, const Subgroup& P,
                                     const Subgroup& Q) {
  std::vector<Elem> out;
  if (P.order() > Q.order()) return out;
  for (Elem x : within.members())
    if (conjugates_into(P, x, Q)) out.push_back(x);
  return out;
}

inline std::vector<Elem> transporter(const GroupPtr& G, const Subgroup& P,
                                     const Subgroup& Q) {
  return transporter(Subgroup::whole(G), P, Q);
}

inline Subgroup center(const Subgroup& H) { return centralizer(H, H); }

inline Subgroup intersection(const Subgroup& A, const Subgroup& B) {
  std::vector<Elem> m;
  for (Elem x : A.members())
    if (B.contains(x)) m.push_back(x);
  return Subgroup(A.parent(), std::move(m));
}

inline Subgroup join(const Subgroup& A, const Subgroup& B) {
  Subgroup r = A;
  for (Elem x : B.generators()) r = r.adjoin(x);
  return r;
}

/// True iff N is normalized by every element of H (N need not lie in H).
inline bool is_normalized_by(const Subgroup& N, const Subgroup& H) {
  for (Elem x : H.generators())
    if (!conjugates_into(N, x, N)) return false;
  return true;
}

inline bool is_p_group(const Subgroup& H, std::size_t p) {
  return is_p_power(H.order(), p);
}

/// Element conjugacy classes of `within`, in order of least member.
inline std::vector<std::vector<Elem>> conjugacy_classes(const Subgroup& within) {
  const auto& g = *within.parent();
  std::vector<std::vector<Elem>> classes;
  DynBitset done(g.order());
  for (Elem a : within.members()) {
    if (done.test(a)) continue;
    std::vector<Elem> orbit{a};
    done.set(a);
    for (std::size_t i = 0; i < orbit.size(); ++i)
      for (Elem s : within.generators()) {
        Elem b = g.conj(s, orbit[i]);
        if (!done.test(b)) {
          done.set(b);
          orbit.push_back(b);
        }
      }
    std::sort(orbit.begin(), orbit.end());
    classes.push_back(std::move(orbit));
  }
  return classes;
}

// ---------------------------------------------------------------------------
// Sylow theory and characteristic subgroups

/// A Sylow p-subgroup of `within`, grown inside successive normalizers.
inline Subgroup sylow_p(const Subgroup& within, std::size_t p) {
  const auto& g = *within.parent();
  Subgroup P = Subgroup::trivial(within.parent());
  const std::size_t target = p_part(within.order(), p);
  while (P.order() < target) {
    Subgroup N = normalizer(within, P);
    bool grown = false;
    for (Elem y : N.members()) {
      if (P.contains(y)) continue;
      std::size_t m = 1;
      Elem t = y;
      while (!P.contains(t)) {
        t = g.mul(t, y);
        ++m;
      }
      if (m % p == 0) {
        P = P.adjoin(g.power(y, m / p));
        grown = true;
        break;
      }
    }
    if (!grown) throw InternalInconsistency("Sylow growth stalled");
  }
  return P;
}

inline Subgroup sylow_p(const GroupPtr& G, std::size_t p) {
  return sylow_p(Subgroup::whole(G), p);
}

/// O_p: the intersection of all Sylow p-subgroups.
inline Subgroup p_core(const Subgroup& within, std::size_t p) {
  const auto& g = *within.parent();
  Subgroup syl = sylow_p(within, p);
  std::vector<Elem> core;
  for (Elem s : syl.members()) {
    bool ok = true;
    for (Elem x : within.members())
      if (!syl.contains(g.conj(g.inv(x), s))) {
        ok = false;
        break;
      }
    if (ok) core.push_back(s);
  }
  return Subgroup(within.parent(), std::move(core));
}

inline Subgroup p_core(const GroupPtr& G, std::size_t p) {
  return p_core(Subgroup::whole(G), p);
}

/// O_{p'}: the largest normal subgroup of order prime to p.
inline Subgroup p_prime_core(const Subgroup& within, std::size_t p) {
  const auto& g = *within.parent();
  Subgroup core = Subgroup::trivial(within.parent());
  for (const auto& cls : conjugacy_classes(within)) {
    if (g.element_order(cls.front()) % p == 0) continue;
    if (core.contains(cls.front())) continue;
    Subgroup closure = Subgroup::generated(within.parent(), std::span<const Elem>(cls));
    if (closure.order() % p != 0) core = join(core, closure);
  }
  return core;
}

inline Subgroup p_prime_core(const GroupPtr& G, std::size_t p) {
  return p_prime_core(Subgroup::whole(G), p);
}

/// O^p: generated by the elements of order prime to p.
inline Subgroup p_residual(const Subgroup& within, std::size_t p) {
  const auto& g = *within.parent();
  std::vector<Elem> gens;
  for (Elem x : within.members())
    if (g.element_order(x) % p != 0) gens.push_back(x);
  Subgroup r = Subgroup::generated(within.parent(), std::span<const Elem>(gens));
  if (!is_p_power(within.order() / r.order(), p))
    throw InternalInconsistency("index of O^p is not a power of p");
  return r;
}

inline Subgroup p_residual(const GroupPtr& G, std::size_t p) {
  return p_residual(Subgroup::whole(G), p);
}

// ---------------------------------------------------------------------------
// Subgroup lattice

/// All subgroups of G in canonical order (by order, then members).
///
/// Built bottom-up: every subgroup is reached by adjoining single elements
/// to a subgroup already found.
inline std::vector<Subgroup> all_subgroups(const GroupPtr& G, const Limits& limits = {}) {
  if (G->order() > limits.lattice_bound)
    throw BoundExceeded("subgroup lattice of a group of order " +
                            std::to_string(G->order()) + " exceeds bound " +
                            std::to_string(limits.lattice_bound),
                        0);
  if (G->order() > limits.lattice_warn)
    warn("enumerating the subgroup lattice of a group of order " +
         std::to_string(G->order()));
  std::unordered_set<Subgroup, SubgroupHash> seen;
  std::vector<Subgroup> found{Subgroup::trivial(G)};
  seen.insert(found.front());
  for (std::size_t i = 0; i < found.size(); ++i) {
    Subgroup H = found[i];
    DynBitset tried(G->order());
    for (Elem x = 0; x < G->order(); ++x) {
      if (H.contains(x) || tried.test(x)) continue;
      Subgroup K = H.adjoin(x);
      // Generators of the same cyclic group give the same extension.
      const std::size_t ox = G->element_order(x);
      Elem y = x;
      for (std::size_t k = 1; k <= ox; ++k, y = G->mul(y, x))
        if (std::gcd(k, ox) == 1) tried.set(y);
      if (seen.insert(K).second) found.push_back(K);
    }
  }
  std::sort(found.begin(), found.end());
  return found;
}

// ---------------------------------------------------------------------------
// Quotients

struct Quotient {
  GroupPtr group;
  /// projection[x] = image of element x of the source group.
  std::vector<Elem> projection;
};

/// G/N realized as a permutation group on the left cosets of N.
inline Quotient quotient_group(const GroupPtr& G, const Subgroup& N) {
  if (!is_normalized_by(N, Subgroup::whole(G)))
    throw NotNormal("quotient by a subgroup that is not normal");
  Quotient q;
  if (N.is_trivial()) {
    q.group = G;
    q.projection.resize(G->order());
    for (std::size_t i = 0; i < q.projection.size(); ++i) q.projection[i] = Elem(i);
    return q;
  }
  const std::size_t n = G->order();
  std::vector<std::int64_t> coset(n, -1);
  std::vector<Elem> reps;
  for (Elem x = 0; x < n; ++x) {
    if (coset[x] >= 0) continue;
    for (Elem m : N.members()) coset[G->mul(x, m)] = std::int64_t(reps.size());
    reps.push_back(x);
  }
  const std::size_t k = reps.size();
  auto action = [&](Elem x) {
    std::vector<Point> img(k);
    for (std::size_t c = 0; c < k; ++c) img[c] = Point(coset[G->mul(x, reps[c])]);
    return Perm(std::move(img));
  };
  std::vector<Perm> gens;
  for (Elem s : G->generator_indices()) gens.push_back(action(s));
  q.group = FiniteGroup::generate(k, gens);
  q.projection.resize(n);
  // The image of x only depends on its coset.
  std::vector<std::int64_t> by_coset(k, -1);
  for (Elem x = 0; x < n; ++x) {
    auto c = coset[x];
    if (by_coset[c] < 0) by_coset[c] = q.group->index_of(action(x));
    q.projection[x] = Elem(by_coset[c]);
  }
  return q;
}

// ---------------------------------------------------------------------------
// Maps between groups

/// Image of `H` under an injective element map into `target`.
inline Subgroup map_subgroup(const Subgroup& H, const GroupPtr& target,
                             const std::vector<Elem>& embedding) {
  std::vector<Elem> m;
  m.reserve(H.order());
  for (Elem x : H.members()) m.push_back(embedding[x]);
  std::sort(m.begin(), m.end());
  std::vector<Elem> gens;
  for (Elem x : H.generators()) gens.push_back(embedding[x]);
  return Subgroup(target, std::move(m), std::move(gens), true);
}

/// Embedding of a group into another group of the same degree by identical
/// permutations.
inline std::vector<Elem> embedding_by_perm(const GroupPtr& from, const GroupPtr& into) {
  std::vector<Elem> e(from->order());
  for (Elem x = 0; x < from->order(); ++x) e[x] = into->index_of(from->element(x));
  return e;
}

/// The subgroup H as a group in its own right.
inline GroupPtr as_group(const Subgroup& H, std::string name = {}) {
  std::vector<Perm> elems;
  elems.reserve(H.order());
  for (Elem x : H.members()) elems.push_back(H.parent()->element(x));
  std::vector<Perm> gens;
  for (Elem x : H.generators()) gens.push_back(H.parent()->element(x));
  return FiniteGroup::from_elements(H.parent()->degree(), std::move(elems),
                                    std::move(gens), std::move(name));
}

/// Exhaustive isomorphism search; returns the element map A -> B if any.
inline std::optional<std::vector<Elem>> find_isomorphism(const GroupPtr& A,
                                                         const GroupPtr& B) {
  if (A->order() != B->order()) return std::nullopt;
  std::vector<Elem> all(A->order());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = Elem(i);
  const std::vector<Elem> gens = Subgroup(A, all).generators();
  std::vector<Elem> img(gens.size());

  auto try_extend = [&]() -> std::optional<std::vector<Elem>> {
    constexpr Elem kUnset = ~Elem{0};
    std::vector<Elem> map(A->order(), kUnset);
    DynBitset used(B->order());
    map[0] = 0;
    used.set(0);
    std::vector<Elem> queue{0};
    for (std::size_t i = 0; i < queue.size(); ++i) {
      Elem x = queue[i];
      for (std::size_t j = 0; j < gens.size(); ++j) {
        Elem y = A->mul(x, gens[j]);
        Elem fy = B->mul(map[x], img[j]);
        if (map[y] == kUnset) {
          if (used.test(fy)) return std::nullopt;
          map[y] = fy;
          used.set(fy);
          queue.push_back(y);
        } else if (map[y] != fy) {
          return std::nullopt;
        }
      }
    }
    if (queue.size() != A->order()) return std::nullopt;
    return map;
  };

  std::function<std::optional<std::vector<Elem>>(std::size_t)> rec =
      [&](std::size_t k) -> std::optional<std::vector<Elem>> {
    if (k == gens.size()) return try_extend();
    const std::size_t ord = A->element_order(gens[k]);
    for (Elem b = 0; b < B->order(); ++b) {
      if (B->element_order(b) != ord) continue;
      img[k] = b;
      if (auto r = rec(k + 1)) return r;
    }
    return std::nullopt;
  };
  return rec(0);
}

inline bool is_abelian(const Subgroup& H) {
  const auto& g = *H.parent();
  for (Elem a : H.generators())
    for (Elem b : H.generators())
      if (g.mul(a, b) != g.mul(b, a)) return false;
  return true;
}

/// Least common multiple of element orders.
inline std::size_t exponent(const Subgroup& H) {
  std::size_t e = 1;
  for (Elem x : H.members()) e = std::lcm(e, H.parent()->element_order(x));
  return e;
}

}  // namespace plocal
