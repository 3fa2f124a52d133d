#pragma once

#include <vector>

#include "oracles.hpp"
#include "plocal/group.hpp"

namespace testutil {

using namespace plocal;

inline oracle::PermSet as_set(const Subgroup& H) {
  oracle::PermSet s;
  for (Elem x : H.members()) s.insert(H.parent()->element(x));
  return s;
}

inline Subgroup sub_of(const GroupPtr& G, const std::vector<Perm>& gens) {
  std::vector<Elem> idx;
  for (const auto& g : gens) idx.push_back(G->index_of(g));
  return Subgroup::generated(G, std::span<const Elem>(idx));
}

inline Subgroup from_set(const GroupPtr& G, const oracle::PermSet& s) {
  std::vector<Elem> m;
  for (const auto& x : s) m.push_back(G->index_of(x));
  std::sort(m.begin(), m.end());
  return Subgroup(G, std::move(m));
}

inline Perm c4(std::vector<std::vector<Point>> cycles) { return Perm::from_cycles(4, cycles); }

}  // namespace testutil
