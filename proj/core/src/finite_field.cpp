#include "holon/finite_field.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "holon/error.hpp"

namespace holon {

namespace {

// Coefficient field GF(p) with the same interface FiniteField offers, so the
// polynomial routines below serve both.
struct PrimeField {
  std::uint32_t p;

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return (a + b) % p; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return (a + p - b) % p; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(std::uint64_t{a} * b % p);
  }
  std::uint32_t inv(std::uint32_t a) const {
    std::uint64_t r = 1, base = a, e = p - 2;
    while (e) {
      if (e & 1) r = r * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
  }
};

std::uint32_t k_characteristic(const FiniteField& k) { return k.characteristic(); }

template <class V>
void trim(V& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

template <class F, class V>
V padd(const F& k, const V& a, const V& b) {
  V out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = k.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  }
  trim(out);
  return out;
}

template <class F, class V>
V psub(const F& k, const V& a, const V& b) {
  V out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = k.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  }
  trim(out);
  return out;
}

template <class F, class V>
V pmul(const F& k, const V& a, const V& b) {
  if (a.empty() || b.empty()) return {};
  V out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] = k.add(out[i + j], k.mul(a[i], b[j]));
    }
  }
  trim(out);
  return out;
}

template <class F, class V>
std::pair<V, V> pdivmod(const F& k, V a, const V& b) {
  if (b.empty()) fail(ErrorCode::kInvalidInput, "polynomial division by zero");
  trim(a);
  if (a.size() < b.size()) return {V{}, a};
  V q(a.size() - b.size() + 1, 0);
  auto lead_inv = k.inv(b.back());
  for (std::size_t i = a.size(); i-- >= b.size();) {
    auto c = k.mul(a[i], lead_inv);
    q[i - (b.size() - 1)] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      auto& slot = a[i - (b.size() - 1) + j];
      slot = k.sub(slot, k.mul(c, b[j]));
    }
  }
  trim(q);
  a.resize(b.size() - 1);
  trim(a);
  return {q, a};
}

template <class F, class V>
V pmod(const F& k, const V& a, const V& b) {
  return pdivmod(k, a, b).second;
}

template <class F, class V>
V pmonic(const F& k, V a) {
  trim(a);
  if (a.empty() || a.back() == 1) return a;
  auto c = k.inv(a.back());
  for (auto& x : a) x = k.mul(x, c);
  return a;
}

template <class F, class V>
V pgcd(const F& k, V a, V b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = pmod(k, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return pmonic(k, std::move(a));
}

template <class F, class V>
V ppowmod(const F& k, V base, std::uint64_t e, const V& m) {
  V out{1};
  out = pmod(k, out, m);
  base = pmod(k, base, m);
  while (e) {
    if (e & 1) out = pmod(k, pmul(k, out, base), m);
    e >>= 1;
    if (e) base = pmod(k, pmul(k, base, base), m);
  }
  return out;
}

template <class F, class V>
V pderivative(const F& k, const V& a) {
  V out;
  for (std::size_t i = 1; i < a.size(); ++i) {
    // i * a[i], with i reduced into the prime field.
    typename V::value_type c = 0;
    for (std::size_t t = 0; t < i % k_characteristic(k); ++t) c = k.add(c, a[i]);
    out.push_back(c);
  }
  trim(out);
  return out;
}

}  // namespace

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; std::uint64_t{d} * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool power_within(std::uint32_t p, std::uint32_t n, std::uint64_t bound, std::uint64_t* out) {
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (q > bound / p) return false;
    q *= p;
  }
  if (q > bound) return false;
  if (out) *out = q;
  return true;
}

bool is_irreducible(const Poly& f, std::uint32_t p) {
  PrimeField k{p};
  auto g = f;
  trim(g);
  if (g.size() < 2) return false;
  g = pmonic(k, g);
  const std::size_t n = g.size() - 1;
  Poly x{0, 1};
  Poly h = pmod(k, x, g);
  for (std::size_t i = 1; 2 * i <= n; ++i) {
    h = ppowmod(k, h, p, g);
    if (pgcd(k, g, psub(k, h, x)).size() != 1) return false;
  }
  return true;
}

Poly irreducible_modulus(std::uint32_t p, std::uint32_t n, std::uint64_t bound) {
  if (!is_prime(p)) fail(ErrorCode::kInvalidInput, std::to_string(p) + " is not prime");
  if (n == 0) fail(ErrorCode::kInvalidInput, "extension degree must be at least 1");
  std::uint64_t q = 0;
  if (!power_within(p, n, bound, &q)) {
    fail(ErrorCode::kBoundExceeded, "GF(" + std::to_string(p) + "^" + std::to_string(n) +
                                        ") exceeds the field bound " + std::to_string(bound));
  }
  // Counting upward through the lower coefficients in base p, most
  // significant digit last, walks the monic polynomials in order.
  for (std::uint64_t code = 0; code < q; ++code) {
    Poly f(n + 1, 0);
    f[n] = 1;
    auto c = code;
    for (std::uint32_t i = 0; i < n; ++i) {
      f[i] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    if (is_irreducible(f, p)) return f;
  }
  fail(ErrorCode::kInvalidInput, "no irreducible polynomial found");
}

std::string poly_to_string(const Poly& f) {
  if (f.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = f.size(); i-- > 0;) {
    if (f[i] == 0) continue;
    if (!first) out << " + ";
    first = false;
    if (i == 0 || f[i] != 1) out << f[i];
    if (i >= 1) out << "x";
    if (i >= 2) out << "^" << i;
  }
  return out.str();
}

FiniteField::FiniteField(std::uint32_t p, std::uint32_t n, std::uint64_t bound)
    : p_(p), n_(n), q_(0), modulus_(irreducible_modulus(p, n, bound)) {
  power_within(p, n, bound, &q_);
}

FiniteField::Element FiniteField::root() const { return from_coefficients(Poly{0, 1}); }

Poly FiniteField::coefficients(Element a) const {
  Poly c(n_, 0);
  for (std::uint32_t i = 0; i < n_; ++i) {
    c[i] = a % p_;
    a /= p_;
  }
  trim(c);
  return c;
}

FiniteField::Element FiniteField::from_coefficients(const Poly& c) const {
  PrimeField k{p_};
  Poly r = c;
  for (auto& x : r) x %= p_;
  trim(r);
  r = pmod(k, r, modulus_);
  std::uint64_t code = 0;
  for (std::size_t i = r.size(); i-- > 0;) code = code * p_ + r[i];
  return static_cast<Element>(code);
}

FiniteField::Element FiniteField::add(Element a, Element b) const {
  std::uint64_t out = 0, scale = 1;
  for (std::uint32_t i = 0; i < n_; ++i) {
    out += scale * ((a % p_ + b % p_) % p_);
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return static_cast<Element>(out);
}

FiniteField::Element FiniteField::neg(Element a) const {
  std::uint64_t out = 0, scale = 1;
  for (std::uint32_t i = 0; i < n_; ++i) {
    out += scale * ((p_ - a % p_) % p_);
    a /= p_;
    scale *= p_;
  }
  return static_cast<Element>(out);
}

FiniteField::Element FiniteField::sub(Element a, Element b) const { return add(a, neg(b)); }

FiniteField::Element FiniteField::mul(Element a, Element b) const {
  if (n_ == 1) return static_cast<Element>(std::uint64_t{a} * b % p_);
  PrimeField k{p_};
  return from_coefficients(pmul(k, coefficients(a), coefficients(b)));
}

FiniteField::Element FiniteField::pow(Element a, std::uint64_t e) const {
  Element out = 1;
  while (e) {
    if (e & 1) out = mul(out, a);
    e >>= 1;
    if (e) a = mul(a, a);
  }
  return out;
}

FiniteField::Element FiniteField::inv(Element a) const {
  if (a == 0) fail(ErrorCode::kInvalidInput, "zero has no inverse");
  return pow(a, q_ - 2);
}

FiniteField::Element FiniteField::frobenius(Element a, std::uint32_t k) const {
  for (std::uint32_t i = 0; i < k; ++i) a = pow(a, p_);
  return a;
}

std::uint32_t FiniteField::frobenius_orbit_length(Element a) const {
  auto b = frobenius(a);
  std::uint32_t k = 1;
  while (b != a) {
    b = frobenius(b);
    ++k;
  }
  return k;
}

FiniteField::Element FiniteField::primitive_element() const {
  if (q_ == 2) return 1;
  std::vector<std::uint64_t> primes;
  auto m = q_ - 1;
  for (std::uint64_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      primes.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) primes.push_back(m);
  for (Element g = 2; g < q_; ++g) {
    bool ok = std::all_of(primes.begin(), primes.end(),
                          [&](std::uint64_t r) { return pow(g, (q_ - 1) / r) != 1; });
    if (ok) return g;
  }
  return 1;
}

std::string FiniteField::to_string(Element a) const {
  auto c = coefficients(a);
  if (c.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    if (!first) out << "+";
    first = false;
    if (i == 0 || c[i] != 1) out << c[i];
    if (i >= 1) out << "a";
    if (i >= 2) out << "^" << i;
  }
  return out.str();
}

std::vector<std::vector<std::uint32_t>> FiniteField::frobenius_matrix() const {
  PrimeField k{p_};
  std::vector<std::vector<std::uint32_t>> m(n_, std::vector<std::uint32_t>(n_, 0));
  Poly xp = ppowmod(k, Poly{0, 1}, p_, modulus_);
  Poly col{1};
  for (std::uint32_t j = 0; j < n_; ++j) {
    for (std::size_t i = 0; i < col.size(); ++i) m[i][j] = col[i];
    col = pmod(k, pmul(k, col, xp), modulus_);
  }
  return m;
}

FieldPoly lift_poly(const Poly& f) { return FieldPoly(f.begin(), f.end()); }

FieldPoly poly_mul(const FiniteField& k, const FieldPoly& a, const FieldPoly& b) {
  return pmul(k, a, b);
}

std::pair<FieldPoly, FieldPoly> poly_divmod(const FiniteField& k, const FieldPoly& a,
                                            const FieldPoly& b) {
  auto bb = b;
  trim(bb);
  return pdivmod(k, a, bb);
}

FieldPoly poly_gcd(const FiniteField& k, FieldPoly a, FieldPoly b) {
  return pgcd(k, std::move(a), std::move(b));
}

FieldPoly make_monic(const FiniteField& k, FieldPoly a) { return pmonic(k, std::move(a)); }

std::string poly_to_string(const FiniteField& k, const FieldPoly& f) {
  if (f.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = f.size(); i-- > 0;) {
    if (f[i] == 0) continue;
    if (!first) out << " + ";
    first = false;
    bool compound = k.coefficients(f[i]).size() > 1;
    if (i == 0 || f[i] != 1) {
      out << (compound && i > 0 ? "(" : "") << k.to_string(f[i]) << (compound && i > 0 ? ")" : "");
    }
    if (i >= 1) out << "x";
    if (i >= 2) out << "^" << i;
  }
  return out.str();
}

namespace {

using FP = FieldPoly;

// a^(1/p) coefficientwise on a polynomial in x^p.
FP pth_root(const FiniteField& k, const FP& a) {
  const auto p = k.characteristic();
  FP out;
  for (std::size_t i = 0; i < a.size(); i += p) out.push_back(k.frobenius(a[i], k.degree() - 1));
  trim(out);
  return out;
}

void squarefree(const FiniteField& k, FP f, std::size_t multiplicity,
                std::vector<std::pair<FP, std::size_t>>& out) {
  const FP one{1};
  auto c = pgcd(k, f, pderivative(k, f));
  auto w = pdivmod(k, f, c).first;
  std::size_t i = 1;
  while (w.size() > 1) {
    auto y = pgcd(k, w, c);
    auto z = pdivmod(k, w, y).first;
    if (z.size() > 1) out.emplace_back(pmonic(k, z), i * multiplicity);
    ++i;
    w = y;
    c = pdivmod(k, c, y).first;
  }
  if (c.size() > 1) squarefree(k, pth_root(k, c), multiplicity * k.characteristic(), out);
}

std::vector<std::pair<FP, std::size_t>> distinct_degree(const FiniteField& k, FP g) {
  std::vector<std::pair<FP, std::size_t>> out;
  const FP x{0, 1};
  FP h = pmod(k, x, g);
  for (std::size_t d = 1; 2 * d <= g.size() - 1; ++d) {
    h = ppowmod(k, h, k.order(), g);
    auto t = pgcd(k, g, psub(k, h, x));
    if (t.size() > 1) {
      out.emplace_back(t, d);
      g = pdivmod(k, g, t).first;
      h = pmod(k, h, g);
    }
  }
  if (g.size() > 1) out.emplace_back(pmonic(k, g), g.size() - 1);
  return out;
}

void equal_degree(const FiniteField& k, const FP& g, std::size_t d, std::mt19937_64& rng,
                  std::vector<FP>& out) {
  const std::size_t deg = g.size() - 1;
  if (deg == d) {
    out.push_back(g);
    return;
  }
  std::uniform_int_distribution<std::uint64_t> coeff(0, k.order() - 1);
  while (true) {
    FP a(deg, 0);
    for (auto& c : a) c = static_cast<FiniteField::Element>(coeff(rng));
    trim(a);
    if (a.size() < 2) continue;
    FP b;
    if (k.characteristic() == 2) {
      // Absolute trace down to GF(2) of the degree-d extension.
      const std::size_t steps = static_cast<std::size_t>(k.degree()) * d;
      FP t = pmod(k, a, g);
      FP term = t;
      for (std::size_t i = 1; i < steps; ++i) {
        term = pmod(k, pmul(k, term, term), g);
        t = padd(k, t, term);
      }
      b = t;
    } else {
      // a^((q^d - 1) / 2) as (a^(1 + q + ... + q^(d-1)))^((q - 1) / 2).
      FP norm{1};
      FP power = pmod(k, a, g);
      for (std::size_t i = 0; i < d; ++i) {
        norm = pmod(k, pmul(k, norm, power), g);
        power = ppowmod(k, power, k.order(), g);
      }
      b = psub(k, ppowmod(k, norm, (k.order() - 1) / 2, g), FP{1});
    }
    auto u = pgcd(k, g, b);
    if (u.size() > 1 && u.size() < g.size()) {
      equal_degree(k, u, d, rng, out);
      equal_degree(k, pmonic(k, pdivmod(k, g, u).first), d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<FieldPoly> factor(const FiniteField& k, const FieldPoly& f, std::uint64_t seed,
                              std::size_t max_degree) {
  auto g = f;
  trim(g);
  if (g.empty()) fail(ErrorCode::kInvalidInput, "cannot factor the zero polynomial");
  if (g.size() - 1 > max_degree) {
    fail(ErrorCode::kBoundExceeded, "polynomial degree " + std::to_string(g.size() - 1) +
                                        " exceeds " + std::to_string(max_degree));
  }
  for (auto c : g) {
    if (c >= k.order()) fail(ErrorCode::kInvalidInput, "coefficient outside the field");
  }
  g = pmonic(k, g);
  std::vector<FieldPoly> out;
  if (g.size() == 1) return out;
  std::mt19937_64 rng(seed);
  std::vector<std::pair<FP, std::size_t>> parts;
  squarefree(k, g, 1, parts);
  for (const auto& [part, mult] : parts) {
    for (const auto& [block, d] : distinct_degree(k, part)) {
      std::vector<FP> irreducible;
      equal_degree(k, block, d, rng, irreducible);
      for (const auto& q : irreducible) {
        for (std::size_t i = 0; i < mult; ++i) out.push_back(q);
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const FP& a, const FP& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
  });
  return out;
}

std::vector<FieldPoly> factor_over_extension(const Poly& f, const FiniteField& k,
                                             std::uint64_t seed, std::size_t max_degree) {
  for (auto c : f) {
    if (c >= k.characteristic()) fail(ErrorCode::kInvalidInput, "coefficient outside GF(p)");
  }
  return factor(k, lift_poly(f), seed, max_degree);
}

}  // namespace holon
