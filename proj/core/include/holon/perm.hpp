#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace holon {

/// A permutation of {0, ..., n-1} stored in one-line image notation.
///
/// Products follow function composition: (a * b)(x) == a(b(x)), so a gluing
/// g_ij : F(j) -> F(i) composed with g_jk : F(k) -> F(j) is written g_ij * g_jk.
class Perm {
 public:
  using Point = std::uint32_t;

  Perm() = default;

  /// Throws Error{kNotBijection} unless `images` is a permutation of 0..n-1.
  explicit Perm(std::vector<Point> images);

  static Perm identity(std::size_t degree);
  /// Transposition of a and b on `degree` points.
  static Perm swap(std::size_t degree, Point a, Point b);
  /// The cycle i -> i+1 (mod degree).
  static Perm rotation(std::size_t degree, std::size_t shift = 1);
  /// Parses "[1 0 2]" or "1 0 2".
  static Perm parse(const std::string& text);

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator()(Point x) const { return images_[x]; }
  std::span<const Point> images() const noexcept { return images_; }

  bool is_identity() const noexcept;
  Perm inverse() const;
  /// Multiplicative order.
  std::size_t order() const;

  /// One-line notation, e.g. "[1 0 2]".
  std::string to_string() const;

  friend Perm operator*(const Perm& a, const Perm& b);
  Perm& operator*=(const Perm& other);

  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm&, const Perm&) = default;

 private:
  std::vector<Point> images_;
};

/// True when `images` maps 0..n-1 bijectively onto itself.
bool is_bijection(std::span<const Perm::Point> images);

/// Product of a sequence, left to right: factors[0] * factors[1] * ...
Perm product(std::span<const Perm> factors, std::size_t degree);

/// Conjugate x * g * x^{-1}.
Perm conjugate(const Perm& g, const Perm& x);

/// All permutations of `degree` points in lexicographic order.
std::vector<Perm> symmetric_group(std::size_t degree);

}  // namespace holon

template <>
struct std::hash<holon::Perm> {
  std::size_t operator()(const holon::Perm& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto x : p.images()) {
      h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};
