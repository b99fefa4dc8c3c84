#include "holon/galois.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "holon/error.hpp"

namespace holon {

std::uint32_t gcd_u(std::uint32_t a, std::uint32_t b) { return std::gcd(a, b); }
std::uint32_t lcm_u(std::uint32_t a, std::uint32_t b) { return std::lcm(a, b); }

std::vector<std::uint32_t> divisors(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t d = 1; d <= n; ++d) {
    if (n % d == 0) out.push_back(d);
  }
  return out;
}

EtaleAlgebra EtaleAlgebra::make(std::uint32_t p, std::vector<std::uint32_t> degrees) {
  if (!is_prime(p)) fail(ErrorCode::kInvalidInput, std::to_string(p) + " is not prime");
  if (degrees.empty()) fail(ErrorCode::kInvalidInput, "an etale algebra needs a member");
  for (auto d : degrees) {
    if (d == 0) fail(ErrorCode::kInvalidInput, "member degree must be at least 1");
  }
  std::sort(degrees.begin(), degrees.end());
  return EtaleAlgebra{p, std::move(degrees)};
}

std::string EtaleAlgebra::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (i) out << " x ";
    out << "GF(" << p << "^" << degrees[i] << ")";
  }
  return out.str();
}

EtaleAlgebra tensor_etale(const EtaleAlgebra& a, const EtaleAlgebra& b) {
  if (a.p != b.p) fail(ErrorCode::kInvalidInput, "tensor factors have different characteristics");
  std::vector<std::uint32_t> out;
  for (auto x : a.degrees) {
    for (auto y : b.degrees) out.insert(out.end(), gcd_u(x, y), lcm_u(x, y));
  }
  return EtaleAlgebra::make(a.p, std::move(out));
}

std::vector<CyclicSubgroup> subgroup_lattice(std::uint32_t n) {
  std::vector<CyclicSubgroup> out;
  for (auto d : divisors(n)) out.push_back(CyclicSubgroup{n, d});
  return out;
}

namespace {

using Matrix = std::vector<std::vector<std::uint32_t>>;

Matrix mat_mul(const Matrix& a, const Matrix& b, std::uint32_t p) {
  const std::size_t n = a.size();
  Matrix c(n, std::vector<std::uint32_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        c[i][j] = static_cast<std::uint32_t>((c[i][j] + std::uint64_t{a[i][k]} * b[k][j]) % p);
      }
    }
  }
  return c;
}

Matrix mat_pow_minus_identity(const Matrix& f, std::uint32_t k, std::uint32_t p) {
  const std::size_t n = f.size();
  Matrix r(n, std::vector<std::uint32_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = 1;
  for (std::uint32_t i = 0; i < k; ++i) r = mat_mul(r, f, p);
  for (std::size_t i = 0; i < n; ++i) r[i][i] = (r[i][i] + p - 1) % p;
  return r;
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::uint64_t r = 1, b = a, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(Matrix& m, std::uint32_t p) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t cols = m[0].size();
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t r = row;
    while (r < m.size() && m[r][c] == 0) ++r;
    if (r == m.size()) continue;
    std::swap(m[r], m[row]);
    auto inv = inv_mod(m[row][c], p);
    for (auto& x : m[row]) x = static_cast<std::uint32_t>(std::uint64_t{x} * inv % p);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][c] == 0) continue;
      auto factor = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) {
        m[i][j] = static_cast<std::uint32_t>((m[i][j] + std::uint64_t{p - factor} * m[row][j]) % p);
      }
    }
    pivots.push_back(c);
    ++row;
  }
  m.resize(row);
  return pivots;
}

Matrix kernel(Matrix a, std::uint32_t p) {
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  auto pivots = rref(a, p);
  Matrix basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
    std::vector<std::uint32_t> v(cols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = (p - a[r][free]) % p;
    basis.push_back(std::move(v));
  }
  rref(basis, p);
  return basis;
}

bool annihilates(const Matrix& a, const Matrix& vectors, std::uint32_t p) {
  for (const auto& v : vectors) {
    for (const auto& row : a) {
      std::uint64_t s = 0;
      for (std::size_t j = 0; j < v.size(); ++j) s += std::uint64_t{row[j]} * v[j];
      if (s % p) return false;
    }
  }
  return true;
}

}  // namespace

Subfield fixed_field(const FiniteField& e, std::uint32_t step) {
  const auto p = e.characteristic();
  auto basis = kernel(mat_pow_minus_identity(e.frobenius_matrix(), step, p), p);
  return Subfield{static_cast<std::uint32_t>(basis.size()), basis};
}

std::uint32_t stabilizer_step(const FiniteField& e, const Subfield& f) {
  const auto p = e.characteristic();
  const auto frob = e.frobenius_matrix();
  Matrix power = frob;
  for (std::uint32_t j = 1; j <= e.degree(); ++j) {
    auto shifted = power;
    for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i][i] = (shifted[i][i] + p - 1) % p;
    if (annihilates(shifted, f.basis, p)) return j;
    power = mat_mul(power, frob, p);
  }
  return e.degree();
}

std::uint32_t FieldStructure::precision(std::size_t i) const {
  return gcd_u(group_order, members.at(i).degree);
}

std::uint32_t FieldStructure::lcm_degree() const {
  std::uint32_t l = 1;
  for (const auto& m : members) l = lcm_u(l, m.degree);
  return l;
}

std::string FieldStructure::to_string() const {
  std::ostringstream out;
  out << "F=GF(" << p << "^" << base_degree << ") E=GF(" << p << "^" << model_degree
      << ") G=Z/" << group_order << " members [";
  for (std::size_t i = 0; i < members.size(); ++i) {
    out << (i ? ", " : "") << "GF(" << p << "^" << members[i].degree << ")@"
        << members[i].embed_exp;
  }
  out << "]";
  for (const auto& [key, g] : transitions) {
    out << " t(" << key.first << "," << key.second << ")=" << g;
  }
  return out.str();
}

void validate_field_structure(const FieldStructure& s) {
  auto bad = [](const std::string& msg) { fail(ErrorCode::kInvalidStructure, msg); };
  if (!is_prime(s.p)) bad(std::to_string(s.p) + " is not prime");
  if (s.base_degree == 0 || s.model_degree == 0 || s.group_order == 0) {
    bad("degrees and group order must be at least 1");
  }
  if (s.members.empty()) bad("structure has no members");
  for (std::size_t i = 0; i < s.members.size(); ++i) {
    const auto& m = s.members[i];
    if (m.degree == 0 || m.degree % s.base_degree != 0) {
      bad("member " + std::to_string(i) + " of degree " + std::to_string(m.degree) +
          " is not an extension of the base of degree " + std::to_string(s.base_degree));
    }
    if (m.embed_exp >= s.precision(i)) {
      bad("member " + std::to_string(i) + " chart exponent " + std::to_string(m.embed_exp) +
          " is not reduced modulo " + std::to_string(s.precision(i)));
    }
  }
  for (const auto& [key, g] : s.transitions) {
    const auto& [i, j] = key;
    if (!(i < j) || j >= s.members.size()) {
      bad("transition (" + std::to_string(i) + "," + std::to_string(j) +
          ") does not name an ordered pair of members");
    }
    if (g >= s.group_order) {
      bad("transition (" + std::to_string(i) + "," + std::to_string(j) + ") exponent " +
          std::to_string(g) + " is not reduced modulo " + std::to_string(s.group_order));
    }
  }
  const auto n = s.members.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      auto ij = s.transitions.find({i, j});
      if (ij == s.transitions.end()) continue;
      for (std::size_t k = j + 1; k < n; ++k) {
        auto jk = s.transitions.find({j, k});
        auto ik = s.transitions.find({i, k});
        if (jk == s.transitions.end() || ik == s.transitions.end()) continue;
        if ((ij->second + jk->second) % s.group_order != ik->second) {
          bad("Chasles fails on (" + std::to_string(i) + "," + std::to_string(j) + "," +
              std::to_string(k) + ")");
        }
      }
    }
  }
}

bool is_complete_field_structure(const FieldStructure& s) {
  return s.lcm_degree() % s.model_degree == 0;
}

FieldStructure complete_structure(std::uint32_t p, std::uint32_t e, std::uint32_t f) {
  if (e == 0 || f == 0 || f % e != 0) {
    fail(ErrorCode::kNotAnExtension,
         "GF(p^" + std::to_string(f) + ") does not contain GF(p^" + std::to_string(e) + ")");
  }
  FieldStructure s;
  s.p = p;
  s.base_degree = f;
  s.model_degree = e;
  s.group_order = e;
  s.members = {FieldMember{f, 0}};
  validate_field_structure(s);
  return s;
}

UniversalField build_fsg(const FieldStructure& s) {
  validate_field_structure(s);
  UniversalField u;
  u.p = s.p;
  u.degree = s.lcm_degree();
  for (const auto& m : s.members) u.member_degrees.push_back(m.degree);
  if (is_complete_field_structure(s)) u.developing_exp = s.members.front().embed_exp % s.model_degree;
  return u;
}

std::optional<std::uint32_t> universal_factorization(const FieldStructure& s, std::uint32_t k,
                                                     std::uint32_t dev_k) {
  auto u = build_fsg(s);
  if (k == 0 || k % u.degree != 0) return std::nullopt;
  if (!u.developing_exp) return 0;
  const auto e = s.model_degree;
  return (dev_k % e + e - *u.developing_exp) % e;
}

std::vector<CorrespondenceEntry> enumerate_complete_structures(std::uint32_t p, std::uint32_t n,
                                                               std::uint64_t bound) {
  FiniteField field(p, n, bound);
  std::vector<CorrespondenceEntry> out;
  for (const auto& h : subgroup_lattice(n)) {
    auto sub = fixed_field(field, h.step);
    if (sub.degree != h.step) throw std::logic_error("fixed field has the wrong degree");
    if (stabilizer_step(field, sub) != h.step) {
      throw std::logic_error("stabilizer of the fixed field differs from the subgroup");
    }
    out.push_back(CorrespondenceEntry{h, std::move(sub), complete_structure(p, h.step, n)});
  }
  return out;
}

namespace {

// Exponent of the pair (a, b) in t read in that orientation, if listed.
std::optional<std::uint32_t> oriented(const FieldStructure& t, std::size_t a, std::size_t b) {
  if (a < b) {
    auto it = t.transitions.find({a, b});
    if (it == t.transitions.end()) return std::nullopt;
    return it->second;
  }
  auto it = t.transitions.find({b, a});
  if (it == t.transitions.end()) return std::nullopt;
  return (t.group_order - it->second) % t.group_order;
}

}  // namespace

bool is_field_morphism(const FieldStructure& s, const FieldStructure& t,
                       const std::vector<std::size_t>& sigma) {
  if (s.p != t.p || s.model_degree != t.model_degree) return false;
  if (sigma.size() != s.members.size()) return false;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (sigma[i] >= t.members.size()) return false;
    const auto& a = s.members[i];
    const auto& b = t.members[sigma[i]];
    if (b.degree % a.degree != 0) return false;
    auto mod = gcd_u(s.precision(i), t.precision(sigma[i]));
    if (a.embed_exp % mod != b.embed_exp % mod) return false;
  }
  const auto mod = gcd_u(s.group_order, t.group_order);
  for (const auto& [key, g] : s.transitions) {
    auto a = sigma[key.first];
    auto b = sigma[key.second];
    if (a == b) {
      if (g % mod != 0) return false;
      continue;
    }
    auto image = oriented(t, a, b);
    if (!image || *image % mod != g % mod) return false;
  }
  return true;
}

std::vector<std::vector<std::size_t>> field_morphisms(const FieldStructure& s,
                                                      const FieldStructure& t) {
  std::vector<std::vector<std::size_t>> out;
  if (s.p != t.p || s.model_degree != t.model_degree || t.members.empty()) return out;
  std::vector<std::size_t> sigma(s.members.size(), 0);
  while (true) {
    if (is_field_morphism(s, t, sigma)) out.push_back(sigma);
    std::size_t i = 0;
    while (i < sigma.size() && ++sigma[i] == t.members.size()) sigma[i++] = 0;
    if (i == sigma.size()) break;
  }
  return out;
}

std::optional<std::vector<std::size_t>> field_isomorphism(const FieldStructure& s,
                                                          const FieldStructure& t) {
  if (s.members.size() != t.members.size()) return std::nullopt;
  for (const auto& sigma : field_morphisms(s, t)) {
    std::vector<std::size_t> inverse(sigma.size(), sigma.size());
    bool bijective = true;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      if (inverse[sigma[i]] != sigma.size()) bijective = false;
      inverse[sigma[i]] = i;
    }
    if (bijective && is_field_morphism(t, s, inverse)) return sigma;
  }
  return std::nullopt;
}

FieldStructure base_change_pullback(const FieldStructure& t, std::uint32_t e) {
  if (e == 0 || t.model_degree % e != 0) {
    fail(ErrorCode::kNotAnExtension, "GF(p^" + std::to_string(e) + ") is not a subfield of GF(p^" +
                                         std::to_string(t.model_degree) + ")");
  }
  FieldStructure s = t;
  s.model_degree = e;
  return s;
}

FieldStructure base_change_pushforward(const FieldStructure& s, std::uint32_t e_prime) {
  if (e_prime == 0 || e_prime % s.model_degree != 0) {
    fail(ErrorCode::kNotAnExtension, "GF(p^" + std::to_string(e_prime) +
                                         ") is not an extension of GF(p^" +
                                         std::to_string(s.model_degree) + ")");
  }
  FieldStructure t = s;
  t.model_degree = e_prime;
  t.base_degree = lcm_u(s.base_degree, e_prime);
  for (auto& m : t.members) m.degree = lcm_u(m.degree, e_prime);
  return t;
}

FieldStructure frobenius_twist(const FieldStructure& s, std::uint32_t k) {
  FieldStructure t = s;
  for (std::size_t i = 0; i < t.members.size(); ++i) {
    t.members[i].embed_exp = static_cast<std::uint32_t>(
        (std::uint64_t{t.members[i].embed_exp} + k) % t.precision(i));
  }
  return t;
}

std::uint32_t ambient_order(const FieldStructure& s) {
  auto a = lcm_u(s.model_degree, s.base_degree);
  for (const auto& m : s.members) a = lcm_u(a, m.degree);
  return a;
}

std::optional<std::pair<std::vector<std::size_t>, std::uint32_t>> abstract_isomorphism(
    const FieldStructure& s, const FieldStructure& t) {
  if (s.p != t.p || s.model_degree != t.model_degree || s.group_order != t.group_order ||
      s.base_degree != t.base_degree || s.members.size() != t.members.size() ||
      s.transitions.size() != t.transitions.size()) {
    return std::nullopt;
  }
  std::vector<std::size_t> sigma(s.members.size());
  std::iota(sigma.begin(), sigma.end(), 0);
  const auto a = ambient_order(s);
  do {
    bool shape = true;
    for (std::size_t i = 0; i < sigma.size() && shape; ++i) {
      shape = s.members[i].degree == t.members[sigma[i]].degree;
    }
    for (const auto& [key, g] : s.transitions) {
      if (!shape) break;
      auto image = oriented(t, sigma[key.first], sigma[key.second]);
      shape = image && *image == g;
    }
    if (!shape) continue;
    for (std::uint32_t kappa = 0; kappa < a; ++kappa) {
      bool ok = true;
      for (std::size_t i = 0; i < sigma.size() && ok; ++i) {
        ok = (s.members[i].embed_exp + kappa) % s.precision(i) == t.members[sigma[i]].embed_exp;
      }
      if (ok) return std::make_pair(sigma, kappa);
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return std::nullopt;
}

FieldStructure structure_from_cocycle(std::uint32_t p, std::uint32_t e, std::uint32_t a,
                                      const std::array<std::uint32_t, 4>& b,
                                      std::uint64_t bound) {
  if (e == 0) fail(ErrorCode::kInvalidInput, "model degree must be at least 1");
  a %= e;
  const std::uint32_t order = e / gcd_u(a, e);
  const std::uint32_t l = e * order;
  if (!power_within(p, l, bound, nullptr)) {
    fail(ErrorCode::kBoundExceeded, "GF(" + std::to_string(p) + "^" + std::to_string(l) +
                                        ") exceeds the field bound " + std::to_string(bound));
  }
  FieldStructure s;
  s.p = p;
  s.base_degree = e;
  s.model_degree = e;
  s.group_order = e;
  for (auto x : b) s.members.push_back(FieldMember{l, x % e});
  auto diff = [&](std::size_t i, std::size_t j) { return (b[i] % e + e - b[j] % e) % e; };
  s.transitions[{0, 1}] = diff(0, 1);
  s.transitions[{1, 2}] = diff(1, 2);
  s.transitions[{2, 3}] = diff(2, 3);
  s.transitions[{0, 3}] = (diff(0, 3) + a) % e;
  validate_field_structure(s);
  return s;
}

TransitionCocycle to_cocycle(const FieldStructure& s) {
  const auto n = s.members.size();
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::vector<Perm> t;
  std::map<std::pair<std::size_t, std::size_t>, EdgeId> index;
  for (const auto& [key, g] : s.transitions) {
    index[key] = edges.size();
    edges.push_back(key);
    t.push_back(Perm::rotation(s.group_order, g));
  }
  std::vector<std::array<EdgeId, 3>> triangles;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        auto ij = index.find({i, j});
        auto jk = index.find({j, k});
        auto ik = index.find({i, k});
        if (ij != index.end() && jk != index.end() && ik != index.end()) {
          triangles.push_back({ij->second, jk->second, ik->second});
        }
      }
    }
  }
  auto nerve = Nerve::from_indices(n, edges, triangles);
  return TransitionCocycle::verify(std::move(nerve), ModelSpace::cyclic(s.group_order),
                                   std::move(t));
}

}  // namespace holon
