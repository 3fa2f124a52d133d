#pragma once

#include <string>
#include <vector>

#include "plocal/group.hpp"

namespace plocal::groups {

inline GroupPtr symmetric(std::size_t n) {
  std::vector<Perm> gens;
  if (n >= 2) gens.push_back(Perm::from_cycles(n, {{0, 1}}));
  if (n >= 3) {
    std::vector<Point> cyc(n);
    for (std::size_t i = 0; i < n; ++i) cyc[i] = Point(i);
    gens.push_back(Perm::from_cycles(n, {cyc}));
  }
  return FiniteGroup::generate(n, gens, {}, "S" + std::to_string(n));
}

inline GroupPtr alternating(std::size_t n) {
  std::vector<Perm> gens;
  for (std::size_t k = 2; k < n; ++k)
    gens.push_back(Perm::from_cycles(n, {{0, 1, Point(k)}}));
  return FiniteGroup::generate(n, gens, {}, "A" + std::to_string(n));
}

inline GroupPtr cyclic(std::size_t n) {
  std::vector<Point> cyc(n);
  for (std::size_t i = 0; i < n; ++i) cyc[i] = Point(i);
  std::vector<Perm> gens;
  if (n >= 2) gens.push_back(Perm::from_cycles(n, {cyc}));
  return FiniteGroup::generate(std::max<std::size_t>(n, 1), gens, {}, "C" + std::to_string(n));
}

/// The dihedral group of order 8 acting on the square's corners 0..3.
inline GroupPtr dihedral8() {
  return FiniteGroup::generate(
      4, {Perm::from_cycles(4, {{0, 1, 2, 3}}), Perm::from_cycles(4, {{0, 2}})}, {}, "D8");
}

/// Elementary abelian group of order 2^k acting regularly on 2^k points.
inline GroupPtr elementary_abelian_2(std::size_t k) {
  const std::size_t n = std::size_t{1} << k;
  std::vector<Perm> gens;
  for (std::size_t b = 0; b < k; ++b) {
    std::vector<Point> img(n);
    for (std::size_t x = 0; x < n; ++x) img[x] = Point(x ^ (std::size_t{1} << b));
    gens.emplace_back(std::move(img));
  }
  return FiniteGroup::generate(n, gens, {}, "C2^" + std::to_string(k));
}

}  // namespace plocal::groups
