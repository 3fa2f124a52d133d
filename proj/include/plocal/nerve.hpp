#pragma once

// π₁ presentations and first homology of linking-category nerves.

#include <map>
#include <numeric>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "plocal/linking.hpp"

namespace plocal {

using boost::multiprecision::cpp_int;

/// A word letter: generator index and exponent ±1.
struct Letter {
  std::size_t gen;
  int exp;
};
using Word = std::vector<Letter>;

/// Generators are the morphisms of the category; relations say g·f = (g∘f)
/// for every composable pair, kill every identity, and kill the inclusions
/// ι_P^S (a spanning tree of the nerve's 1-skeleton rooted at S).
struct CatPresentation {
  std::size_t generators = 0;
  std::vector<bool> is_identity;
  std::vector<Word> relations;
  std::size_t objects = 0;
  std::size_t composable_pairs = 0;
  std::size_t tree_relations = 0;

  /// The same presentation with generator k renamed to perm[k].
  CatPresentation relabeled(const std::vector<std::size_t>& perm) const {
    CatPresentation out = *this;
    for (std::size_t k = 0; k < generators; ++k) out.is_identity[perm[k]] = is_identity[k];
    for (auto& w : out.relations)
      for (auto& l : w) l.gen = perm[l.gen];
    return out;
  }
};

inline CatPresentation pi1_presentation(const LinkingCategory& L) {
  const std::size_t n = L.object_count();
  const auto top = L.find(L.fusion()->whole());
  if (!top) throw DisconnectedCategory("S is not an object, so no spanning tree of inclusions");
  for (std::size_t i = 0; i < n; ++i)
    if (L.mor(i, *top).empty()) throw DisconnectedCategory("object without a morphism to S");

  CatPresentation pr;
  pr.objects = n;
  std::map<LinkMor, std::size_t> id;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& f : L.mor(i, j)) {
        id.emplace(f, pr.generators++);
        pr.is_identity.push_back(f == L.identity(i) && i == j);
      }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (const auto& f : L.mor(i, j))
          for (const auto& g : L.mor(j, k)) {
            ++pr.composable_pairs;
            pr.relations.push_back({{id.at(g), 1}, {id.at(f), 1}, {id.at(L.compose(g, f)), -1}});
          }
  for (std::size_t i = 0; i < n; ++i) pr.relations.push_back({{id.at(L.identity(i)), 1}});
  for (std::size_t i = 0; i < n; ++i) {
    if (i == *top) continue;
    pr.relations.push_back({{id.at(L.inclusion(i, *top)), 1}});
    ++pr.tree_relations;
  }
  return pr;
}

// ---------------------------------------------------------------------------
// Integer matrices and Smith normal form

struct IntMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<cpp_int> a;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
  static IntMatrix from(const std::vector<std::vector<long long>>& m) {
    IntMatrix M(m.size(), m.empty() ? 0 : m[0].size());
    for (std::size_t i = 0; i < M.rows; ++i)
      for (std::size_t j = 0; j < M.cols; ++j) M(i, j) = m[i][j];
    return M;
  }

  cpp_int& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const cpp_int& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

/// Diagonal d_1 | d_2 | ... of length min(rows, cols), all nonnegative.
inline std::vector<cpp_int> smith_normal_form(IntMatrix M) {
  const std::size_t r = M.rows, c = M.cols, n = std::min(r, c);
  auto swap_rows = [&](std::size_t x, std::size_t y) {
    for (std::size_t j = 0; j < c; ++j) std::swap(M(x, j), M(y, j));
  };
  auto swap_cols = [&](std::size_t x, std::size_t y) {
    for (std::size_t i = 0; i < r; ++i) std::swap(M(i, x), M(i, y));
  };
  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pi = r, pj = c;
      for (std::size_t i = t; i < r; ++i)
        for (std::size_t j = t; j < c; ++j)
          if (M(i, j) != 0 && (pi == r || abs(M(i, j)) < abs(M(pi, pj)))) pi = i, pj = j;
      if (pi == r) break;
      swap_rows(t, pi);
      swap_cols(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (M(i, t) == 0) continue;
        cpp_int q = M(i, t) / M(t, t);
        for (std::size_t j = t; j < c; ++j) M(i, j) -= q * M(t, j);
        if (M(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (M(t, j) == 0) continue;
        cpp_int q = M(t, j) / M(t, t);
        for (std::size_t i = t; i < r; ++i) M(i, j) -= q * M(i, t);
        if (M(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Enforce divisibility by folding an offending row into the pivot row.
      std::size_t bad = r;
      for (std::size_t i = t + 1; i < r && bad == r; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (M(i, j) % M(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == r) break;
      for (std::size_t j = t; j < c; ++j) M(t, j) += M(bad, j);
    }
  }
  std::vector<cpp_int> d(n);
  for (std::size_t t = 0; t < n; ++t) d[t] = abs(M(t, t));
  return d;
}

/// Z^free_rank ⊕ Z/t_1 ⊕ ... with t_1 | t_2 | ..., every t_i > 1.
struct AbelianInvariants {
  std::size_t free_rank = 0;
  std::vector<cpp_int> torsion;

  bool operator==(const AbelianInvariants&) const = default;
  std::string to_string() const {
    std::string s;
    auto add = [&](const std::string& part) { s += s.empty() ? part : " + " + part; };
    if (free_rank) add(free_rank == 1 ? "Z" : "Z^" + std::to_string(free_rank));
    for (const auto& t : torsion) add("Z/" + t.str());
    return s.empty() ? "0" : s;
  }
};

/// Cokernel of the relation matrix (rows are relations).
inline AbelianInvariants cokernel(const IntMatrix& M) {
  AbelianInvariants out;
  std::size_t rank = 0;
  for (const auto& d : smith_normal_form(M)) {
    if (d == 0) continue;
    ++rank;
    if (d != 1) out.torsion.push_back(d);
  }
  out.free_rank = M.cols - rank;
  return out;
}

// ---------------------------------------------------------------------------
// Abelianization with Tietze pre-simplification

struct AbelianizationStats {
  std::size_t generators_before = 0, relations_before = 0;
  std::size_t generators_after = 0, relations_after = 0;
};

/// Abelianizes the presentation. Generators carrying a ±1 coefficient in
/// some relation are eliminated first; the remaining block goes through the
/// Smith normal form.
inline AbelianInvariants abelianize(const CatPresentation& pr, AbelianizationStats* stats = nullptr) {
  using Row = std::map<std::size_t, cpp_int>;
  std::vector<Row> rows;
  rows.reserve(pr.relations.size());
  for (const auto& w : pr.relations) {
    Row r;
    for (const auto& l : w) {
      cpp_int& e = r[l.gen];
      e += l.exp;
      if (e == 0) r.erase(l.gen);
    }
    if (!r.empty()) rows.push_back(std::move(r));
  }
  std::vector<std::vector<std::size_t>> rows_of(pr.generators);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& [g, e] : rows[i]) rows_of[g].push_back(i);
  std::vector<bool> alive_row(rows.size(), true), alive_gen(pr.generators, true);

  // Unit pivots in order of row length.
  for (std::size_t len = 1;; ++len) {
    bool any_longer = false, progress = false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!alive_row[i]) continue;
      if (rows[i].empty()) {
        alive_row[i] = false;
        continue;
      }
      if (rows[i].size() > len) {
        any_longer = true;
        continue;
      }
      std::optional<std::size_t> pivot;
      for (const auto& [g, e] : rows[i])
        if (e == 1 || e == -1) {
          pivot = g;
          break;
        }
      if (!pivot) continue;
      const Row prow = rows[i];
      const cpp_int pe = prow.at(*pivot);
      alive_row[i] = false;
      alive_gen[*pivot] = false;
      for (std::size_t k : rows_of[*pivot]) {
        if (!alive_row[k] || k == i) continue;
        auto it = rows[k].find(*pivot);
        if (it == rows[k].end()) continue;
        const cpp_int q = it->second * pe;  // pe = ±1, so q·prow cancels the pivot
        for (const auto& [g, e] : prow) {
          cpp_int& v = rows[k][g];
          v -= q * e;
          if (v == 0) {
            rows[k].erase(g);
          } else {
            rows_of[g].push_back(k);
          }
        }
      }
      progress = true;
    }
    if (!any_longer && !progress) break;
    if (progress) len = 0;
  }

  std::vector<std::size_t> col(pr.generators, 0);
  std::size_t cols = 0;
  for (std::size_t g = 0; g < pr.generators; ++g)
    if (alive_gen[g]) col[g] = cols++;
  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (alive_row[i] && !rows[i].empty()) live.push_back(i);
  IntMatrix M(live.size(), cols);
  for (std::size_t r = 0; r < live.size(); ++r)
    for (const auto& [g, e] : rows[live[r]]) M(r, col[g]) = e;
  if (stats) {
    stats->generators_before = pr.generators;
    stats->relations_before = pr.relations.size();
    stats->generators_after = cols;
    stats->relations_after = live.size();
  }
  return cokernel(M);
}

/// H₁ of the nerve of L.
inline AbelianInvariants nerve_h1(const LinkingCategory& L, AbelianizationStats* stats = nullptr) {
  return abelianize(pi1_presentation(L), stats);
}

// ---------------------------------------------------------------------------
// Invariance across object sets

struct H1Entry {
  std::string label;
  bool valid = false;
  std::string skipped_reason;
  std::size_t objects = 0, generators = 0, relations = 0;
  AbelianInvariants h1;
};

struct H1InvarianceReport {
  std::vector<H1Entry> entries;

  std::size_t valid_count() const {
    std::size_t n = 0;
    for (const auto& e : entries) n += e.valid;
    return n;
  }
  /// Every valid entry has the same H₁.
  bool all_equal() const {
    const H1Entry* first = nullptr;
    for (const auto& e : entries) {
      if (!e.valid) continue;
      if (!first) first = &e;
      else if (!(e.h1 == first->h1)) return false;
    }
    return true;
  }
};

/// Computes H₁(|L^H|) for every collection H that lies between the
/// centric-radical and the quasicentric subgroups; others are skipped.
inline H1InvarianceReport h1_invariance_check(
    const FusionPtr& F, const std::vector<std::pair<std::string, Collection>>& collections) {
  H1InvarianceReport rep;
  const auto quasi = quasicentric_subgroups(F);
  const std::unordered_set<Subgroup, SubgroupHash> qset(quasi.begin(), quasi.end());
  const auto cr = centric_radical_subgroups(*F);
  for (const auto& [label, H] : collections) {
    H1Entry e;
    e.label = label;
    for (const auto& P : H.members())
      if (!qset.contains(P)) e.skipped_reason = "precondition violated: contains a non-quasicentric subgroup";
    for (const auto& P : cr)
      if (!H.contains(P)) e.skipped_reason = "precondition violated: misses a centric-radical subgroup";
    if (e.skipped_reason.empty()) {
      LinkingCategory L(F, H.members());
      CatPresentation pr = pi1_presentation(L);
      e.valid = true;
      e.objects = L.object_count();
      e.generators = pr.generators;
      e.relations = pr.relations.size();
      e.h1 = abelianize(pr);
    }
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

/// The standard chain centric-radical ⊆ centric ⊆ quasicentric.
inline H1InvarianceReport h1_invariance_check(const FusionPtr& F) {
  return h1_invariance_check(F, {{"centric-radical", centric_radical_collection(*F)},
                                 {"centric", centric_collection(*F)},
                                 {"quasicentric", quasicentric_collection(F)}});
}

}  // namespace plocal
