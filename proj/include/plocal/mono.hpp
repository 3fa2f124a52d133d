#pragma once

#include <string>
#include <vector>

#include "plocal/group_ops.hpp"

namespace plocal {

/// An injective homomorphism between two subgroups of one group.
///
/// `images()[k]` is the image of `domain().members()[k]`.
class GroupMono {
 public:
  GroupMono() = default;

  /// Trusted constructor; the map must already be an injective homomorphism.
  GroupMono(Subgroup domain, Subgroup codomain, std::vector<Elem> images)
      : dom_(std::move(domain)), cod_(std::move(codomain)), img_(std::move(images)) {
    std::vector<Elem> m = img_;
    std::sort(m.begin(), m.end());
    std::vector<Elem> gens;
    for (Elem g : dom_.generators()) gens.push_back(apply(g));
    image_ = Subgroup(dom_.parent(), std::move(m), std::move(gens), true);
  }

  /// Validating constructor: checks injectivity, multiplicativity and that
  /// the image lies in the codomain.
  static GroupMono checked(Subgroup domain, Subgroup codomain, std::vector<Elem> images) {
    const auto& g = *domain.parent();
    if (images.size() != domain.order())
      throw NotAHomomorphism("map does not cover the domain");
    std::vector<Elem> sorted = images;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw NotAHomomorphism("map is not injective");
    for (Elem y : images)
      if (!codomain.contains(y)) throw NotAHomomorphism("image leaves the codomain");
    const auto& mem = domain.members();
    for (std::size_t i = 0; i < mem.size(); ++i)
      for (std::size_t j = 0; j < mem.size(); ++j) {
        Elem xy = g.mul(mem[i], mem[j]);
        if (images[domain.position(xy)] != g.mul(images[i], images[j]))
          throw NotAHomomorphism("map is not multiplicative");
      }
    return GroupMono(std::move(domain), std::move(codomain), std::move(images));
  }

  static GroupMono identity(const Subgroup& P) { return GroupMono(P, P, P.members()); }

  static GroupMono inclusion(const Subgroup& P, const Subgroup& Q) {
    if (!P.is_subgroup_of(Q)) throw ContainmentViolation("inclusion of a non-subgroup");
    return GroupMono(P, Q, P.members());
  }

  const Subgroup& domain() const { return dom_; }
  const Subgroup& codomain() const { return cod_; }
  const Subgroup& image() const { return image_; }
  const std::vector<Elem>& images() const { return img_; }

  Elem apply(Elem x) const { return img_[dom_.position(x)]; }

  bool is_identity_on_domain() const { return img_ == dom_.members(); }
  bool is_automorphism() const { return dom_ == cod_; }

  /// Same map, new codomain (which must contain the image).
  GroupMono with_codomain(const Subgroup& Q) const {
    if (!image_.is_subgroup_of(Q)) throw ContainmentViolation("corestriction target too small");
    return GroupMono(dom_, Q, img_);
  }

  /// The isomorphism onto the image.
  GroupMono corestriction() const { return with_codomain(image_); }

  GroupMono restrict_to(const Subgroup& R) const {
    if (!R.is_subgroup_of(dom_)) throw ContainmentViolation("restriction to a non-subgroup");
    std::vector<Elem> v;
    v.reserve(R.order());
    for (Elem x : R.members()) v.push_back(apply(x));
    return GroupMono(R, cod_, std::move(v));
  }

  /// Inverse of the corestriction, image -> domain.
  GroupMono inverse() const {
    std::vector<Elem> v(image_.order());
    const auto& mem = dom_.members();
    for (std::size_t k = 0; k < mem.size(); ++k) v[image_.position(img_[k])] = mem[k];
    return GroupMono(image_, dom_, std::move(v));
  }

  /// True iff this map agrees with `other` on this map's domain.
  bool extended_by(const GroupMono& other) const {
    if (!dom_.is_subgroup_of(other.dom_)) return false;
    const auto& mem = dom_.members();
    for (std::size_t k = 0; k < mem.size(); ++k)
      if (other.apply(mem[k]) != img_[k]) return false;
    return true;
  }

  /// Equality of (domain, codomain, map).
  bool operator==(const GroupMono& o) const {
    return img_ == o.img_ && dom_ == o.dom_ && cod_ == o.cod_;
  }

  bool same_map(const GroupMono& o) const { return img_ == o.img_ && dom_ == o.dom_; }

 private:
  Subgroup dom_, cod_, image_;
  std::vector<Elem> img_;
};

/// (after ∘ before); requires image(before) <= domain(after).
inline GroupMono compose(const GroupMono& after, const GroupMono& before) {
  if (!before.image().is_subgroup_of(after.domain()))
    throw ContainmentViolation("composition of non-composable morphisms");
  std::vector<Elem> v;
  v.reserve(before.images().size());
  for (Elem y : before.images()) v.push_back(after.apply(y));
  return GroupMono(before.domain(), after.codomain(), std::move(v));
}

/// c_x restricted to P, with codomain Q; x lives in P's parent group.
inline GroupMono conjugation_hom(Elem x, const Subgroup& P, const Subgroup& Q) {
  if (!conjugates_into(P, x, Q))
    throw TransporterViolation("conjugating element does not map P into Q");
  const auto& g = *P.parent();
  std::vector<Elem> v;
  v.reserve(P.order());
  for (Elem a : P.members()) v.push_back(g.conj(x, a));
  return GroupMono(P, Q, std::move(v));
}

/// c_x restricted to P where x is a permutation outside P's parent group that
/// normalizes the relevant subgroups; images are looked up by permutation.
inline GroupMono conjugation_by_perm(const Perm& x, const Subgroup& P, const Subgroup& Q) {
  const auto& g = *P.parent();
  const Perm xi = x.inverse();
  std::vector<Elem> v;
  v.reserve(P.order());
  for (Elem a : P.members()) {
    auto y = g.find(x * g.element(a) * xi);
    if (!y || !Q.contains(*y))
      throw TransporterViolation("conjugating permutation does not map P into Q");
    v.push_back(*y);
  }
  return GroupMono(P, Q, std::move(v));
}

/// Sorts and deduplicates a morphism set by map.
inline void normalize_hom_set(std::vector<GroupMono>& homs) {
  std::sort(homs.begin(), homs.end(), [](const GroupMono& a, const GroupMono& b) {
    return a.images() < b.images();
  });
  homs.erase(std::unique(homs.begin(), homs.end(),
                         [](const GroupMono& a, const GroupMono& b) {
                           return a.images() == b.images();
                         }),
             homs.end());
}

}  // namespace plocal
