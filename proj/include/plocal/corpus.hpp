#pragma once

// Named group fusion systems used by the CLI, the acceptance suite and the
// tests.

#include <functional>
#include <string>
#include <vector>

#include "plocal/fusion.hpp"
#include "plocal/groups.hpp"

namespace plocal {

struct GroupSystem {
  std::string name;
  GroupPtr G;
  std::size_t p = 2;
  FusionPtr F;
};

struct GroupRecipe {
  std::string name;
  std::function<GroupPtr()> group;
  std::size_t p;
};

/// The saturated corpus, in a fixed order.
inline const std::vector<GroupRecipe>& group_recipes() {
  static const std::vector<GroupRecipe> r{
      {"S4", [] { return groups::symmetric(4); }, 2},
      {"S5", [] { return groups::symmetric(5); }, 2},
      {"A4", [] { return groups::alternating(4); }, 2},
      {"A5", [] { return groups::alternating(5); }, 2},
      {"A6", [] { return groups::alternating(6); }, 2},
      {"Sym6", [] { return groups::symmetric(6); }, 2},
      {"A4@3", [] { return groups::alternating(4); }, 3},
  };
  return r;
}

/// The fusion system of G on its canonical Sylow p-subgroup.
inline GroupSystem make_group_system(std::string name, const GroupPtr& G, std::size_t p,
                                     const Limits& limits = {}) {
  return {std::move(name), G, p, fusion_of_group(G, sylow_p(G, p), p, limits)};
}

inline GroupSystem corpus_system(const std::string& name, const Limits& limits = {}) {
  for (const auto& r : group_recipes())
    if (r.name == name) return make_group_system(r.name, r.group(), r.p, limits);
  throw Error("unknown corpus group '" + name + "'");
}

inline std::vector<GroupSystem> group_corpus(const Limits& limits = {}) {
  std::vector<GroupSystem> out;
  for (const auto& r : group_recipes()) out.push_back(make_group_system(r.name, r.group(), r.p, limits));
  return out;
}

}  // namespace plocal
