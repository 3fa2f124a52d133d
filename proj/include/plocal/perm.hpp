#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "plocal/error.hpp"

namespace plocal {

using Point = std::uint16_t;

/// A permutation of {0, ..., n-1} stored as its image array.
///
/// Products compose right to left: (a * b)(x) == a(b(x)).
class Perm {
 public:
  Perm() = default;

  explicit Perm(std::vector<Point> images) : img_(std::move(images)) {
    std::vector<bool> seen(img_.size(), false);
    for (Point v : img_) {
      if (v >= img_.size() || seen[v])
        throw InvalidPermutation("image array is not a bijection");
      seen[v] = true;
    }
  }

  Perm(std::initializer_list<Point> images)
      : Perm(std::vector<Point>(images)) {}

  static Perm identity(std::size_t n) {
    Perm p;
    p.img_.resize(n);
    std::iota(p.img_.begin(), p.img_.end(), Point{0});
    return p;
  }

  /// Builds a permutation of degree n from disjoint cycles.
  static Perm from_cycles(std::size_t n,
                          const std::vector<std::vector<Point>>& cycles) {
    Perm p = identity(n);
    for (const auto& c : cycles) {
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] >= n) throw InvalidPermutation("cycle point out of range");
        p.img_[c[i]] = c[(i + 1) % c.size()];
      }
    }
    return Perm(p.img_);
  }

  std::size_t degree() const { return img_.size(); }
  Point operator[](std::size_t i) const { return img_[i]; }
  const std::vector<Point>& images() const { return img_; }

  Perm operator*(const Perm& rhs) const {
    if (rhs.degree() != degree())
      throw DegreeMismatch("product of permutations of different degree");
    Perm out;
    out.img_.resize(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) out.img_[i] = img_[rhs.img_[i]];
    return out;
  }

  Perm inverse() const {
    Perm out;
    out.img_.resize(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) out.img_[img_[i]] = Point(i);
    return out;
  }

  bool is_identity() const {
    for (std::size_t i = 0; i < img_.size(); ++i)
      if (img_[i] != i) return false;
    return true;
  }

  auto operator<=>(const Perm&) const = default;
  bool operator==(const Perm&) const = default;

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < img_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(img_[i]);
    }
    return s + "]";
  }

 private:
  std::vector<Point> img_;
};

inline std::ostream& operator<<(std::ostream& os, const Perm& p) {
  return os << p.to_string();
}

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (Point v : p.images()) {
      h ^= v;
      h *= 1099511628211ULL;
    }
    return h;
  }
};

}  // namespace plocal
