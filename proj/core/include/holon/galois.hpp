#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "holon/finite_field.hpp"
#include "holon/structure.hpp"

namespace holon {

std::uint32_t gcd_u(std::uint32_t a, std::uint32_t b);
std::uint32_t lcm_u(std::uint32_t a, std::uint32_t b);
std::vector<std::uint32_t> divisors(std::uint32_t n);

/// Product of GF(p^d) over a multiset of degrees.
struct EtaleAlgebra {
  std::uint32_t p = 2;
  std::vector<std::uint32_t> degrees;  // sorted

  /// Throws kInvalidInput (p not prime, no members, degree 0).
  static EtaleAlgebra make(std::uint32_t p, std::vector<std::uint32_t> degrees);
  std::string to_string() const;
  friend bool operator==(const EtaleAlgebra&, const EtaleAlgebra&) = default;
};

/// Each pair of members (a, b) contributes gcd(a, b) copies of GF(p^lcm(a,b)).
/// Throws kInvalidInput on different characteristics.
EtaleAlgebra tensor_etale(const EtaleAlgebra& a, const EtaleAlgebra& b);

/// Degree of the compositum of GF(p^a) and GF(p^b).
inline std::uint32_t compositum(std::uint32_t a, std::uint32_t b) { return lcm_u(a, b); }

/// Subgroup of Gal(GF(p^n) : GF(p)) generated by Frobenius^step.
struct CyclicSubgroup {
  std::uint32_t group_order = 1;
  std::uint32_t step = 1;  // divides group_order

  std::uint32_t order() const noexcept { return group_order / step; }
  friend bool operator==(const CyclicSubgroup&, const CyclicSubgroup&) = default;
};

/// One subgroup per divisor of n, by increasing step.
std::vector<CyclicSubgroup> subgroup_lattice(std::uint32_t n);

/// Subfield of GF(p^n) as a GF(p)-subspace in the power basis.
struct Subfield {
  std::uint32_t degree = 0;
  std::vector<std::vector<std::uint32_t>> basis;  // reduced row echelon form
};

/// Elements fixed by Frobenius^step: the kernel of F^step - I.
Subfield fixed_field(const FiniteField& e, std::uint32_t step);
/// Least j >= 1 such that Frobenius^j fixes the subfield pointwise.
std::uint32_t stabilizer_step(const FiniteField& e, const Subfield& f);

struct FieldMember {
  std::uint32_t degree = 1;     // F_i = GF(p^degree)
  std::uint32_t embed_exp = 0;  // chart twist, modulo the member's precision

  friend bool operator==(const FieldMember&, const FieldMember&) = default;
};

/// (E, G)-structure data on a family of extensions F_i of F = GF(p^base_degree),
/// modelled on E = GF(p^model_degree) with G = Z/group_order acting by
/// Frobenius twists. transitions[{i, j}] (i < j) is the exponent acting from
/// member j's chart to member i's.
struct FieldStructure {
  std::uint32_t p = 2;
  std::uint32_t base_degree = 1;
  std::uint32_t model_degree = 1;
  std::uint32_t group_order = 1;
  std::vector<FieldMember> members;
  std::map<std::pair<std::size_t, std::size_t>, std::uint32_t> transitions;

  /// Charts of member i are recorded modulo gcd(group_order, degree_i).
  std::uint32_t precision(std::size_t i) const;
  /// lcm of the member degrees.
  std::uint32_t lcm_degree() const;
  std::string to_string() const;

  friend bool operator==(const FieldStructure&, const FieldStructure&) = default;
};

/// Throws kInvalidStructure naming the member, pair or triple at fault.
void validate_field_structure(const FieldStructure& s);

/// E embeds in the lcm field.
bool is_complete_field_structure(const FieldStructure& s);

/// The structure on F = GF(p^f) given by one embedding of E = GF(p^e).
/// Throws kNotAnExtension unless e | f.
FieldStructure complete_structure(std::uint32_t p, std::uint32_t e, std::uint32_t f);

/// The universal field GF(p^L), L the lcm of the member degrees.
struct UniversalField {
  std::uint32_t p = 2;
  std::uint32_t degree = 1;
  std::vector<std::uint32_t> member_degrees;  // each divides degree
  std::optional<std::uint32_t> developing_exp;  // E -> GF(p^L), when complete
};

UniversalField build_fsg(const FieldStructure& s);

/// For a candidate K = GF(p^k) whose own developing embedding has exponent
/// dev_k: nullopt when GF(p^L) does not embed in K, otherwise the exponent v
/// in Z/L of an embedding GF(p^L) -> K whose composite with the developing
/// embedding is dev_k (0 when the structure is incomplete).
std::optional<std::uint32_t> universal_factorization(const FieldStructure& s, std::uint32_t k,
                                                     std::uint32_t dev_k);

struct CorrespondenceEntry {
  CyclicSubgroup holonomy;
  Subfield subfield;
  FieldStructure structure;
};

/// One complete structure on GF(p^n) per subgroup of its Galois group; each
/// pairing is checked to be mutually inverse. Throws kBoundExceeded.
std::vector<CorrespondenceEntry> enumerate_complete_structures(
    std::uint32_t p, std::uint32_t n, std::uint64_t bound = kDefaultFieldBound);

/// Member maps sigma from s to t: f_i | f'_sigma(i), charts agree modulo both
/// precisions, and every listed pair of s lands on a listed pair of t with the
/// same exponent modulo both group orders (or on a single member with exponent
/// zero). Empty unless p and model degrees agree.
std::vector<std::vector<std::size_t>> field_morphisms(const FieldStructure& s,
                                                      const FieldStructure& t);
bool is_field_morphism(const FieldStructure& s, const FieldStructure& t,
                       const std::vector<std::size_t>& sigma);
/// A bijective morphism whose inverse is also a morphism.
std::optional<std::vector<std::size_t>> field_isomorphism(const FieldStructure& s,
                                                          const FieldStructure& t);

/// The same covering data read over the subfield GF(p^e) of the model
/// GF(p^e'). Throws kNotAnExtension unless e | e'.
FieldStructure base_change_pullback(const FieldStructure& t, std::uint32_t e);
/// Extension of scalars to GF(p^e'): members and base become composita with
/// GF(p^e'). Throws kNotAnExtension unless e | e'.
FieldStructure base_change_pushforward(const FieldStructure& s, std::uint32_t e_prime);

/// Twist of every chart by Frobenius^k; transitions commute with it.
FieldStructure frobenius_twist(const FieldStructure& s, std::uint32_t k);
/// lcm of the model, base and member degrees.
std::uint32_t ambient_order(const FieldStructure& s);
/// A member bijection and global twist kappa carrying s to t, if any.
std::optional<std::pair<std::vector<std::size_t>, std::uint32_t>> abstract_isomorphism(
    const FieldStructure& s, const FieldStructure& t);

/// Structure on four members of degree L = e * ord(a) arranged in a cycle,
/// from the homomorphism Frob_E -> a of Gal(GF(p^L) : E) into Z/e twisted by
/// the coboundary of (b_0..b_3): t(i, j) = b_i - b_j, plus a on the closing
/// pair (0, 3). Throws kBoundExceeded when p^L exceeds `bound`.
FieldStructure structure_from_cocycle(std::uint32_t p, std::uint32_t e, std::uint32_t a,
                                      const std::array<std::uint32_t, 4>& b,
                                      std::uint64_t bound = kDefaultFieldBound);

/// The transitions as a cocycle of rotations on Z/group_order over the nerve
/// of members, listed pairs and fully listed triples.
TransitionCocycle to_cocycle(const FieldStructure& s);

}  // namespace holon
