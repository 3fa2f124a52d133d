#pragma once

// A fusion system over S = F_4^3 ⋊ <(1 2),(4 5)> that is H-saturated and
// H-generated for H = {S, Q1, Q2, Q3} but not saturated. Everything lives
// inside the affine group F_4^3 ⋊ Γ acting on 64 points, with
// Γ = F_4^2 ⋊ ΣL_2(F_4) and ΣL_2(F_4) identified with S_5 through its action
// on the five points of the projective line.

#include <array>
#include <map>
#include <optional>

#include "plocal/fusion.hpp"

namespace plocal::gf4 {

// Elements 0, 1, 2 = ω, 3 = ω² = ω + 1; addition is XOR.
using F4 = std::uint8_t;

inline F4 add(F4 a, F4 b) { return F4(a ^ b); }

inline F4 mul(F4 a, F4 b) {
  if (a == 0 || b == 0) return 0;
  static constexpr std::array<int, 4> log{-1, 0, 1, 2};
  static constexpr std::array<F4, 3> exp{1, 2, 3};
  return exp[(log[a] + log[b]) % 3];
}

inline F4 inv(F4 a) { return a == 1 ? 1 : F4(a ^ 1); }

/// The Frobenius x -> x², swapping ω and ω².
inline F4 frob(F4 a) { return a < 2 ? a : F4(a ^ 1); }

using Vec2 = std::array<F4, 2>;
using Mat2 = std::array<std::array<F4, 2>, 2>;

inline Vec2 mat_apply(const Mat2& A, const Vec2& v) {
  return {add(mul(A[0][0], v[0]), mul(A[0][1], v[1])),
          add(mul(A[1][0], v[0]), mul(A[1][1], v[1]))};
}

inline F4 det(const Mat2& A) { return add(mul(A[0][0], A[1][1]), mul(A[0][1], A[1][0])); }

/// An element of ΣL_2(F_4): v -> A·σ(v), σ the Frobenius if `frobenius`.
struct SemiLinear {
  Mat2 A;
  bool frobenius;

  Vec2 operator()(const Vec2& v) const {
    Vec2 w = frobenius ? Vec2{frob(v[0]), frob(v[1])} : v;
    return mat_apply(A, w);
  }
};

inline std::vector<SemiLinear> sigma_l2() {
  std::vector<SemiLinear> out;
  for (int code = 0; code < 256; ++code) {
    Mat2 A{{{F4(code & 3), F4(code >> 2 & 3)}, {F4(code >> 4 & 3), F4(code >> 6 & 3)}}};
    if (det(A) != 1) continue;
    out.push_back({A, false});
    out.push_back({A, true});
  }
  return out;
}

/// Projective point of a nonzero vector, normalized so the first nonzero
/// coordinate is 1.
inline Vec2 normalize(const Vec2& v) {
  F4 s = v[0] != 0 ? inv(v[0]) : inv(v[1]);
  return {mul(s, v[0]), mul(s, v[1])};
}

/// The five projective points in a fixed order; position k carries label k+1.
inline const std::array<Vec2, 5>& projective_points() {
  static const std::array<Vec2, 5> pts{Vec2{1, 0}, Vec2{0, 1}, Vec2{1, 1}, Vec2{1, 2}, Vec2{1, 3}};
  return pts;
}

/// Induced permutation of {0..4} (labels 1..5 shifted down by one).
inline Perm projective_action(const SemiLinear& g) {
  const auto& pts = projective_points();
  std::vector<Point> img(5);
  for (std::size_t i = 0; i < 5; ++i) {
    Vec2 w = normalize(g(pts[i]));
    img[i] = Point(std::find(pts.begin(), pts.end(), w) - pts.begin());
  }
  return Perm(std::move(img));
}

}  // namespace plocal::gf4

namespace plocal {

struct Counterexample {
  GroupPtr S_group;  // S as a permutation group on 64 points
  Subgroup S, P, Q1, Q2, Q3;
  Perm x;  // the involution of O_2(Γ) centralizing S'
  std::vector<Perm> P_gens, R1_gens, R2_gens, R2p_gens;
  std::vector<Perm> gamma_gens;  // generators of Γ on 64 points
  FusionPtr F;

  /// The focus set used wherever the lattice of S is out of reach.
  std::vector<Subgroup> focus() const { return {S, Q1, Q2, Q3, P}; }
  std::vector<Subgroup> H() const { return {S, Q1, Q2, Q3}; }
};

namespace counterexample_detail {

inline Point point_of(gf4::F4 a, gf4::F4 b, gf4::F4 c) { return Point(a + 4 * b + 16 * c); }

/// (x,y,z) -> (A σ(x,y), σ(z)).
inline Perm linear_perm(const gf4::SemiLinear& g) {
  std::vector<Point> img(64);
  for (Point p = 0; p < 64; ++p) {
    gf4::F4 a = p & 3, b = p >> 2 & 3, c = p >> 4 & 3;
    gf4::Vec2 w = g({a, b});
    img[p] = point_of(w[0], w[1], g.frobenius ? gf4::frob(c) : c);
  }
  return Perm(std::move(img));
}

/// (x,y,z) -> (x + z t1, y + z t2, z).
inline Perm transvection(const gf4::Vec2& t) {
  std::vector<Point> img(64);
  for (Point p = 0; p < 64; ++p) {
    gf4::F4 a = p & 3, b = p >> 2 & 3, c = p >> 4 & 3;
    img[p] = point_of(gf4::add(a, gf4::mul(c, t[0])), gf4::add(b, gf4::mul(c, t[1])), c);
  }
  return Perm(std::move(img));
}

/// Translation u -> u + v on F_4^3.
inline Perm translation(gf4::F4 a, gf4::F4 b, gf4::F4 c) {
  std::vector<Point> img(64);
  for (Point p = 0; p < 64; ++p)
    img[p] = point_of(gf4::add(p & 3, a), gf4::add(p >> 2 & 3, b), gf4::add(p >> 4 & 3, c));
  return Perm(std::move(img));
}

/// The unique element of ΣL_2(F_4) inducing `target` on the projective line
/// (labels 1..5 given as cycles).
inline gf4::SemiLinear realize(const std::vector<std::vector<Point>>& cycles_one_based) {
  std::vector<std::vector<Point>> cycles;
  for (const auto& c : cycles_one_based) {
    std::vector<Point> z;
    for (Point k : c) z.push_back(Point(k - 1));
    cycles.push_back(z);
  }
  const Perm target = Perm::from_cycles(5, cycles);
  std::optional<gf4::SemiLinear> found;
  for (const auto& g : gf4::sigma_l2())
    if (gf4::projective_action(g) == target) {
      if (found) throw InternalInconsistency("projective action of ΣL_2(F_4) is not faithful");
      found = g;
    }
  if (!found) throw InternalInconsistency("permutation not induced by ΣL_2(F_4)");
  return *found;
}

}  // namespace counterexample_detail

inline Counterexample build_counterexample(const Limits& limits = {}) {
  namespace cd = counterexample_detail;
  Counterexample c;

  const auto s12 = cd::realize({{1, 2}});
  const auto s45 = cd::realize({{4, 5}});
  const auto c345 = cd::realize({{3, 4, 5}});
  const auto c123 = cd::realize({{1, 2, 3}});
  const Perm t12 = cd::linear_perm(s12), t45 = cd::linear_perm(s45);
  const Perm r345 = cd::linear_perm(c345), r123 = cd::linear_perm(c123);

  // x: the nonzero transvection vector fixed by both generators of S'.
  std::vector<gf4::Vec2> fixed;
  for (gf4::F4 a = 0; a < 4; ++a)
    for (gf4::F4 b = 0; b < 4; ++b) {
      gf4::Vec2 t{a, b};
      if ((a | b) != 0 && s12(t) == t && s45(t) == t) fixed.push_back(t);
    }
  if (fixed.size() != 1)
    throw InternalInconsistency("expected a unique involution of O_2(Γ) centralizing S'");
  c.x = cd::transvection(fixed[0]);

  using gf4::F4;
  for (F4 s : {F4(1), F4(2)}) {
    c.P_gens.push_back(cd::translation(s, 0, 0));
    c.P_gens.push_back(cd::translation(0, s, 0));
    c.P_gens.push_back(cd::translation(0, 0, s));
  }
  c.R1_gens = {t12, t45, r345};
  c.R2_gens = {t12, t45, r123};
  const Perm xi = c.x.inverse();
  for (const auto& g : c.R2_gens) c.R2p_gens.push_back(c.x * g * xi);
  c.gamma_gens = {t12, t45, r345, r123, cd::transvection({1, 0}), cd::transvection({2, 0}),
                  cd::transvection({0, 1}), cd::transvection({0, 2})};

  std::vector<Perm> sgens = c.P_gens;
  sgens.push_back(t12);
  sgens.push_back(t45);
  c.S_group = FiniteGroup::generate(64, sgens, limits, "S");
  const GroupPtr& G = c.S_group;
  auto sub = [&](std::vector<Perm> gens) {
    std::vector<Elem> idx;
    for (const auto& g : gens) idx.push_back(G->index_of(g));
    return Subgroup::generated(G, std::span<const Elem>(idx));
  };
  c.S = Subgroup::whole(G);
  c.P = sub(c.P_gens);
  auto with = [&](std::vector<Perm> extra) {
    std::vector<Perm> g = c.P_gens;
    g.insert(g.end(), extra.begin(), extra.end());
    return sub(g);
  };
  c.Q1 = with({t12});
  c.Q2 = with({t45});
  c.Q3 = with({t12 * t45});

  std::vector<GroupMono> gens;
  for (const auto& g : c.P_gens) gens.push_back(conjugation_by_perm(g, c.Q1, c.Q1));
  for (const auto& g : c.R1_gens) gens.push_back(conjugation_by_perm(g, c.Q1, c.Q1));
  for (const auto& g : c.P_gens) gens.push_back(conjugation_by_perm(g, c.Q2, c.Q2));
  for (const auto& g : c.R2p_gens) gens.push_back(conjugation_by_perm(g, c.Q2, c.Q2));
  FusionOptions opt;
  opt.limits = limits;
  c.F = generated_fusion_system(G, 2, std::move(gens), opt);
  return c;
}

/// P ⋊ Γ on 64 points.
inline GroupPtr counterexample_ambient(const Counterexample& c, const Limits& limits = {}) {
  std::vector<Perm> gens = c.P_gens;
  gens.insert(gens.end(), c.gamma_gens.begin(), c.gamma_gens.end());
  return FiniteGroup::generate(64, gens, limits, "P:Gamma");
}

}  // namespace plocal
