#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace holon {

inline constexpr std::uint64_t kDefaultFieldBound = std::uint64_t{1} << 20;

/// Polynomial over GF(p), coefficients from the constant term up. The zero
/// polynomial is empty; otherwise the leading coefficient is nonzero.
using Poly = std::vector<std::uint32_t>;

bool is_prime(std::uint32_t n);

/// p^n, or nothing when it exceeds `bound`.
bool power_within(std::uint32_t p, std::uint32_t n, std::uint64_t bound, std::uint64_t* out);

/// Ben-Or test: no factor of degree <= deg/2.
bool is_irreducible(const Poly& f, std::uint32_t p);

/// Least monic irreducible of degree n, ordering polynomials by their
/// coefficient sequence read from the top. Throws kBoundExceeded when p^n
/// exceeds `bound`, kInvalidInput when p is not prime or n == 0.
Poly irreducible_modulus(std::uint32_t p, std::uint32_t n,
                         std::uint64_t bound = kDefaultFieldBound);

/// "x^2 + x + 1".
std::string poly_to_string(const Poly& f);

/// GF(p^n) = GF(p)[x] / (modulus). An element is stored as the integer whose
/// base-p digits are its coefficients, so elements of GF(p) are 0..p-1.
class FiniteField {
 public:
  using Element = std::uint32_t;

  /// Throws kBoundExceeded or kInvalidInput.
  FiniteField(std::uint32_t p, std::uint32_t n, std::uint64_t bound = kDefaultFieldBound);

  std::uint32_t characteristic() const noexcept { return p_; }
  std::uint32_t degree() const noexcept { return n_; }
  std::uint64_t order() const noexcept { return q_; }
  const Poly& modulus() const noexcept { return modulus_; }

  Element zero() const noexcept { return 0; }
  Element one() const noexcept { return 1; }
  /// Class of x.
  Element root() const;

  Element add(Element a, Element b) const;
  Element sub(Element a, Element b) const;
  Element neg(Element a) const;
  Element mul(Element a, Element b) const;
  Element pow(Element a, std::uint64_t e) const;
  /// Throws kInvalidInput on zero.
  Element inv(Element a) const;

  /// x^(p^k).
  Element frobenius(Element a, std::uint32_t k = 1) const;
  /// Least k >= 1 with frobenius(a, k) == a.
  std::uint32_t frobenius_orbit_length(Element a) const;
  /// Multiplicative generator with the least code.
  Element primitive_element() const;

  Poly coefficients(Element a) const;
  Element from_coefficients(const Poly& c) const;
  std::string to_string(Element a) const;

  /// Matrix of Frobenius over GF(p) in the basis 1, x, ..., x^(n-1):
  /// column j holds the coefficients of x^(j p).
  std::vector<std::vector<std::uint32_t>> frobenius_matrix() const;

 private:
  std::uint32_t p_;
  std::uint32_t n_;
  std::uint64_t q_;
  Poly modulus_;
};

/// Polynomial with coefficients in a FiniteField, constant term first,
/// normalized like Poly.
using FieldPoly = std::vector<FiniteField::Element>;

FieldPoly lift_poly(const Poly& f);
FieldPoly poly_mul(const FiniteField& k, const FieldPoly& a, const FieldPoly& b);
/// Quotient and remainder. Throws kInvalidInput on division by zero.
std::pair<FieldPoly, FieldPoly> poly_divmod(const FiniteField& k, const FieldPoly& a,
                                            const FieldPoly& b);
/// Monic gcd.
FieldPoly poly_gcd(const FiniteField& k, FieldPoly a, FieldPoly b);
FieldPoly make_monic(const FiniteField& k, FieldPoly a);
std::string poly_to_string(const FiniteField& k, const FieldPoly& f);

/// Monic irreducible factors over K, with multiplicity, sorted by degree and
/// then coefficients. Uses square-free, distinct-degree and equal-degree
/// splitting; the randomized split is seeded so output is deterministic.
/// Throws kBoundExceeded when deg f exceeds `max_degree`.
std::vector<FieldPoly> factor(const FiniteField& k, const FieldPoly& f,
                              std::uint64_t seed = 1, std::size_t max_degree = 12);

/// Factorization over K of a polynomial with coefficients in GF(p).
std::vector<FieldPoly> factor_over_extension(const Poly& f, const FiniteField& k,
                                             std::uint64_t seed = 1, std::size_t max_degree = 12);

}  // namespace holon
