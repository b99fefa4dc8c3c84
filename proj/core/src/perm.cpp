#include "holon/perm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "holon/error.hpp"

namespace holon {

bool is_bijection(std::span<const Perm::Point> images) {
  std::vector<bool> seen(images.size(), false);
  for (auto x : images) {
    if (x >= images.size() || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

Perm::Perm(std::vector<Point> images) : images_(std::move(images)) {
  if (!is_bijection(images_)) {
    fail(ErrorCode::kNotBijection, "not a permutation: " + to_string());
  }
}

Perm Perm::identity(std::size_t degree) {
  Perm p;
  p.images_.resize(degree);
  std::iota(p.images_.begin(), p.images_.end(), Point{0});
  return p;
}

Perm Perm::swap(std::size_t degree, Point a, Point b) {
  Perm p = identity(degree);
  std::swap(p.images_.at(a), p.images_.at(b));
  return p;
}

Perm Perm::rotation(std::size_t degree, std::size_t shift) {
  Perm p = identity(degree);
  for (std::size_t i = 0; i < degree; ++i) {
    p.images_[i] = static_cast<Point>((i + shift) % degree);
  }
  return p;
}

Perm Perm::parse(const std::string& text) {
  std::string cleaned;
  for (char c : text) {
    cleaned.push_back((c == '[' || c == ']' || c == ',') ? ' ' : c);
  }
  std::istringstream in(cleaned);
  std::vector<Point> images;
  long long value = 0;
  while (in >> value) {
    if (value < 0) fail(ErrorCode::kNotBijection, "negative image in '" + text + "'");
    images.push_back(static_cast<Point>(value));
  }
  if (!in.eof()) fail(ErrorCode::kInvalidInput, "cannot parse permutation '" + text + "'");
  return Perm(std::move(images));
}

bool Perm::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

Perm Perm::inverse() const {
  Perm inv;
  inv.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) {
    inv.images_[images_[i]] = static_cast<Point>(i);
  }
  return inv;
}

std::size_t Perm::order() const {
  std::vector<bool> seen(images_.size(), false);
  std::size_t result = 1;
  for (std::size_t start = 0; start < images_.size(); ++start) {
    if (seen[start]) continue;
    std::size_t length = 0;
    for (std::size_t x = start; !seen[x]; x = images_[x]) {
      seen[x] = true;
      ++length;
    }
    result = std::lcm(result, length);
  }
  return result;
}

std::string Perm::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(images_[i]);
  }
  return out + "]";
}

Perm operator*(const Perm& a, const Perm& b) {
  if (a.degree() != b.degree()) {
    fail(ErrorCode::kInvalidInput, "degree mismatch in product: " + a.to_string() +
                                       " * " + b.to_string());
  }
  Perm out;
  out.images_.resize(a.degree());
  for (std::size_t i = 0; i < a.degree(); ++i) out.images_[i] = a.images_[b.images_[i]];
  return out;
}

Perm& Perm::operator*=(const Perm& other) {
  *this = *this * other;
  return *this;
}

Perm product(std::span<const Perm> factors, std::size_t degree) {
  Perm out = Perm::identity(degree);
  for (const auto& f : factors) out *= f;
  return out;
}

Perm conjugate(const Perm& g, const Perm& x) { return x * g * x.inverse(); }

std::vector<Perm> symmetric_group(std::size_t degree) {
  std::vector<Perm::Point> images(degree);
  std::iota(images.begin(), images.end(), Perm::Point{0});
  std::vector<Perm> out;
  do {
    out.emplace_back(images);
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

}  // namespace holon
