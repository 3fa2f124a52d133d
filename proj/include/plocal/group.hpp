#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "plocal/error.hpp"
#include "plocal/perm.hpp"

namespace plocal {

/// Index of an element in the canonical element list of its group.
using Elem = std::uint32_t;

/// Fixed-size bit set sized at run time; used as a subgroup fingerprint.
class DynBitset {
 public:
  DynBitset() = default;
  explicit DynBitset(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  void set(std::size_t i) { w_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1U; }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : w_) c += std::popcount(w);
    return c;
  }

  bool is_subset_of(const DynBitset& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  DynBitset operator&(const DynBitset& o) const {
    DynBitset r(n_);
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] & o.w_[i];
    return r;
  }

  bool operator==(const DynBitset&) const = default;

  std::size_t hash() const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto w : w_) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// A finite permutation group with an explicitly enumerated element list.
///
/// Elements are sorted lexicographically by image array, so index 0 is the
/// identity. Groups up to `kTableLimit` elements carry a full Cayley table;
/// larger ones multiply through a hash lookup.
class FiniteGroup {
 public:
  static constexpr std::size_t kTableLimit = 1024;

  /// Enumerates the closure of `gens` (all of degree `degree`).
  static GroupPtr generate(std::size_t degree, std::vector<Perm> gens,
                           const Limits& limits = {}, std::string name = {}) {
    for (const auto& g : gens)
      if (g.degree() != degree)
        throw DegreeMismatch("generator of degree " +
                             std::to_string(g.degree()) + " in group of degree " +
                             std::to_string(degree));
    std::unordered_set<Perm, PermHash> seen;
    std::vector<Perm> elems;
    Perm id = Perm::identity(degree);
    seen.insert(id);
    elems.push_back(id);
    std::vector<Perm> live;
    for (const auto& g : gens)
      if (!g.is_identity()) live.push_back(g);
    for (std::size_t i = 0; i < elems.size(); ++i) {
      for (const auto& g : live) {
        Perm y = elems[i] * g;
        if (seen.insert(y).second) {
          elems.push_back(std::move(y));
          if (elems.size() > limits.element_bound)
            throw BoundExceeded("element enumeration exceeded bound " +
                                    std::to_string(limits.element_bound),
                                elems.size());
        }
      }
    }
    return from_elements(degree, std::move(elems), std::move(live),
                         std::move(name));
  }

  /// Builds a group from an element list already closed under products.
  static GroupPtr from_elements(std::size_t degree, std::vector<Perm> elems,
                                std::vector<Perm> gens, std::string name = {}) {
    auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
    g->degree_ = degree;
    g->name_ = std::move(name);
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    if (elems.empty() || !elems.front().is_identity())
      throw Error("element list does not contain the identity");
    g->elems_ = std::move(elems);
    g->gens_ = std::move(gens);
    g->index_.reserve(g->elems_.size() * 2);
    for (std::size_t i = 0; i < g->elems_.size(); ++i)
      g->index_.emplace(g->elems_[i], Elem(i));
    const std::size_t n = g->elems_.size();
    g->inv_.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      g->inv_[i] = g->index_of(g->elems_[i].inverse());
    if (n <= kTableLimit) {
      g->table_.resize(n * n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          g->table_[i * n + j] = g->index_of(g->elems_[i] * g->elems_[j]);
    }
    return g;
  }

  std::size_t order() const { return elems_.size(); }
  std::size_t degree() const { return degree_; }
  const std::string& name() const { return name_; }
  const std::vector<Perm>& generators() const { return gens_; }
  const std::vector<Perm>& elements() const { return elems_; }
  const Perm& element(Elem i) const { return elems_[i]; }
  static constexpr Elem identity() { return 0; }

  std::optional<Elem> find(const Perm& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  Elem index_of(const Perm& p) const {
    auto it = index_.find(p);
    if (it == index_.end())
      throw Error("permutation " + p.to_string() + " is not in the group");
    return it->second;
  }

  Elem mul(Elem a, Elem b) const {
    if (!table_.empty()) return table_[std::size_t(a) * elems_.size() + b];
    return index_of(elems_[a] * elems_[b]);
  }

  Elem inv(Elem a) const { return inv_[a]; }

  /// x g x^-1
  Elem conj(Elem x, Elem g) const { return mul(mul(x, g), inv_[x]); }

  std::size_t element_order(Elem a) const {
    std::size_t k = 1;
    for (Elem y = a; y != identity(); y = mul(y, a)) ++k;
    return k;
  }

  Elem power(Elem a, std::size_t k) const {
    Elem r = identity();
    for (std::size_t i = 0; i < k; ++i) r = mul(r, a);
    return r;
  }

  std::vector<Elem> generator_indices() const {
    std::vector<Elem> out;
    for (const auto& g : gens_) out.push_back(index_of(g));
    return out;
  }

 private:
  FiniteGroup() = default;

  std::size_t degree_ = 0;
  std::string name_;
  std::vector<Perm> elems_;
  std::vector<Perm> gens_;
  std::unordered_map<Perm, Elem, PermHash> index_;
  std::vector<Elem> inv_;
  std::vector<Elem> table_;
};

/// Enumerates the closure of `generators`, returning the sorted element list.
inline std::vector<Perm> enumerate_elements(std::size_t degree,
                                            std::vector<Perm> generators,
                                            const Limits& limits = {}) {
  return FiniteGroup::generate(degree, std::move(generators), limits)->elements();
}

/// A subgroup of a FiniteGroup, identified by its sorted member list.
///
/// Copies share one immutable payload. Two subgroups compare equal iff they
/// have the same parent and the same members.
class Subgroup {
 public:
  Subgroup() = default;

  /// Trusted constructor: `members` must be sorted and form a subgroup.
  Subgroup(GroupPtr parent, std::vector<Elem> members,
           std::vector<Elem> gens = {}, bool gens_known = false) {
    auto d = std::make_shared<Data>();
    d->parent = std::move(parent);
    d->members = std::move(members);
    d->bits = DynBitset(d->parent->order());
    for (Elem m : d->members) d->bits.set(m);
    if (gens_known) {
      d->gens = std::move(gens);
    } else {
      d->gens = greedy_generators(*d->parent, d->members);
    }
    data_ = std::move(d);
  }

  /// The subgroup generated by `gens`.
  static Subgroup generated(const GroupPtr& g, std::span<const Elem> gens) {
    std::vector<Elem> kept;
    DynBitset bits(g->order());
    std::vector<Elem> members{FiniteGroup::identity()};
    bits.set(FiniteGroup::identity());
    for (Elem x : gens) {
      if (bits.test(x)) continue;
      kept.push_back(x);
      extend(*g, kept, members, bits);
    }
    std::sort(members.begin(), members.end());
    return Subgroup(g, std::move(members), std::move(kept), true);
  }

  static Subgroup generated(const GroupPtr& g, std::initializer_list<Elem> gens) {
    std::vector<Elem> v(gens);
    return generated(g, std::span<const Elem>(v));
  }

  static Subgroup whole(const GroupPtr& g) {
    std::vector<Elem> all(g->order());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = Elem(i);
    auto gi = g->generator_indices();
    return Subgroup(g, std::move(all), std::move(gi), true);
  }

  static Subgroup trivial(const GroupPtr& g) {
    return Subgroup(g, {FiniteGroup::identity()}, {}, true);
  }

  /// The subgroup generated by this one and `x`.
  Subgroup adjoin(Elem x) const {
    if (contains(x)) return *this;
    std::vector<Elem> gens = data_->gens;
    gens.push_back(x);
    std::vector<Elem> members = data_->members;
    DynBitset bits = data_->bits;
    extend(*data_->parent, gens, members, bits);
    std::sort(members.begin(), members.end());
    return Subgroup(data_->parent, std::move(members), std::move(gens), true);
  }

  bool valid() const { return static_cast<bool>(data_); }
  const GroupPtr& parent() const { return data_->parent; }
  std::size_t order() const { return data_->members.size(); }
  const std::vector<Elem>& members() const& { return data_->members; }
  const std::vector<Elem>& generators() const& { return data_->gens; }
  const DynBitset& bits() const& { return data_->bits; }
  // Temporaries hand out copies so `for (x : f().members())` stays valid.
  std::vector<Elem> members() && { return data_->members; }
  std::vector<Elem> generators() && { return data_->gens; }
  DynBitset bits() && { return data_->bits; }
  bool contains(Elem x) const { return data_->bits.test(x); }
  bool is_trivial() const { return order() == 1; }

  /// Position of `x` in the sorted member list; x must be a member.
  std::size_t position(Elem x) const {
    auto it = std::lower_bound(data_->members.begin(), data_->members.end(), x);
    return std::size_t(it - data_->members.begin());
  }

  bool is_subgroup_of(const Subgroup& o) const {
    return order() <= o.order() && data_->bits.is_subset_of(o.bits());
  }

  bool operator==(const Subgroup& o) const {
    if (data_ == o.data_) return true;
    return data_->parent == o.data_->parent && data_->members == o.data_->members;
  }

  /// Canonical order: by order, then lexicographically by members.
  bool operator<(const Subgroup& o) const {
    if (order() != o.order()) return order() < o.order();
    return data_->members < o.data_->members;
  }

  std::size_t hash() const noexcept { return data_->bits.hash(); }

 private:
  struct Data {
    GroupPtr parent;
    std::vector<Elem> members;
    DynBitset bits;
    std::vector<Elem> gens;
  };

  static void extend(const FiniteGroup& g, const std::vector<Elem>& gens,
                     std::vector<Elem>& members, DynBitset& bits) {
    // Right-multiply every member by every generator until closed.
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (Elem s : gens) {
        Elem y = g.mul(members[i], s);
        if (!bits.test(y)) {
          bits.set(y);
          members.push_back(y);
        }
      }
    }
  }

  static std::vector<Elem> greedy_generators(const FiniteGroup& g,
                                             const std::vector<Elem>& members) {
    std::vector<Elem> gens;
    std::vector<Elem> cur{FiniteGroup::identity()};
    DynBitset bits(g.order());
    bits.set(FiniteGroup::identity());
    for (Elem m : members) {
      if (bits.test(m)) continue;
      gens.push_back(m);
      extend(g, gens, cur, bits);
      if (cur.size() == members.size()) break;
    }
    return gens;
  }

  std::shared_ptr<const Data> data_;
};

struct SubgroupHash {
  std::size_t operator()(const Subgroup& s) const noexcept { return s.hash(); }
};

}  // namespace plocal
