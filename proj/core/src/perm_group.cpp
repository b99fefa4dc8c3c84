#include "holon/perm_group.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "holon/error.hpp"

namespace holon {

std::vector<Perm> closure(std::span<const Perm> generators, std::size_t degree,
                          std::size_t max_elements) {
  std::unordered_set<Perm> seen;
  std::deque<Perm> frontier;
  Perm id = Perm::identity(degree);
  seen.insert(id);
  frontier.push_back(id);
  while (!frontier.empty()) {
    Perm current = std::move(frontier.front());
    frontier.pop_front();
    for (const auto& g : generators) {
      Perm next = g * current;
      if (seen.insert(next).second) {
        if (seen.size() > max_elements) {
          fail(ErrorCode::kSearchBudgetExceeded,
               "group closure exceeds " + std::to_string(max_elements) + " elements");
        }
        frontier.push_back(std::move(next));
      }
    }
  }
  std::vector<Perm> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Perm::Point> orbit(std::span<const Perm> generators, Perm::Point point,
                               std::size_t degree) {
  std::vector<bool> seen(degree, false);
  std::vector<Perm::Point> stack{point};
  seen[point] = true;
  std::vector<Perm::Point> out;
  while (!stack.empty()) {
    auto x = stack.back();
    stack.pop_back();
    out.push_back(x);
    for (const auto& g : generators) {
      auto y = g(x);
      if (!seen[y]) {
        seen[y] = true;
        stack.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

StabilizerChain::StabilizerChain(std::span<const Perm> generators, std::size_t degree)
    : degree_(degree) {
  std::vector<Perm> strong;
  std::vector<Perm::Point> base;
  for (const auto& g : generators) {
    if (!g.is_identity()) strong.push_back(g);
  }
  auto add_base_point = [&](const Perm& g) {
    for (Perm::Point x = 0; x < degree_; ++x) {
      if (g(x) != x) {
        base.push_back(x);
        return;
      }
    }
  };
  if (!strong.empty()) add_base_point(strong.front());

  // Deterministic Schreier-Sims: level i is generated by the strong generators
  // fixing the first i base points. Whenever a Schreier generator fails to
  // sift, it joins the strong set and the chain is rebuilt.
  while (true) {
    levels_.clear();
    for (std::size_t i = 0; i < base.size(); ++i) {
      Level level{base[i], {}, {}};
      for (const auto& s : strong) {
        bool fixes = true;
        for (std::size_t b = 0; b < i && fixes; ++b) fixes = s(base[b]) == base[b];
        if (fixes) level.generators.push_back(s);
      }
      rebuild_transversal(level);
      levels_.push_back(std::move(level));
    }
    std::optional<Perm> residue;
    for (std::size_t i = 0; i < levels_.size() && !residue; ++i) {
      const auto& level = levels_[i];
      for (Perm::Point x = 0; x < degree_ && !residue; ++x) {
        if (!level.transversal[x]) continue;
        for (const auto& s : level.generators) {
          const auto& ux = *level.transversal[x];
          const auto& usx = *level.transversal[s(x)];
          std::size_t stuck = 0;
          residue = strip(usx.inverse() * s * ux, i + 1, &stuck);
          if (residue) break;
        }
      }
    }
    if (!residue) return;
    strong.push_back(*residue);
    bool fixes_base = true;
    for (auto b : base) fixes_base = fixes_base && (*residue)(b) == b;
    if (fixes_base) add_base_point(*residue);
  }
}

void StabilizerChain::rebuild_transversal(Level& level) const {
  level.transversal.assign(degree_, std::nullopt);
  level.transversal[level.base_point] = Perm::identity(degree_);
  std::vector<Perm::Point> stack{level.base_point};
  while (!stack.empty()) {
    auto x = stack.back();
    stack.pop_back();
    for (const auto& g : level.generators) {
      auto y = g(x);
      if (!level.transversal[y]) {
        level.transversal[y] = g * *level.transversal[x];
        stack.push_back(y);
      }
    }
  }
}

std::optional<Perm> StabilizerChain::strip(Perm g, std::size_t from_level,
                                           std::size_t* level_out) const {
  for (std::size_t i = from_level; i < levels_.size(); ++i) {
    const auto& level = levels_[i];
    auto image = g(level.base_point);
    if (!level.transversal[image]) {
      *level_out = i;
      return g;
    }
    g = level.transversal[image]->inverse() * g;
  }
  *level_out = levels_.size();
  if (g.is_identity()) return std::nullopt;
  return g;
}

std::uint64_t StabilizerChain::order() const {
  std::uint64_t result = 1;
  for (const auto& level : levels_) {
    std::uint64_t orbit_size = 0;
    for (const auto& t : level.transversal) orbit_size += t.has_value();
    result *= orbit_size;
  }
  return result;
}

bool StabilizerChain::contains(const Perm& g) const {
  if (g.degree() != degree_) return false;
  std::size_t stuck = 0;
  return !strip(g, 0, &stuck).has_value();
}

std::vector<Perm> conjugate_set(std::span<const Perm> elements, const Perm& x) {
  std::vector<Perm> out;
  out.reserve(elements.size());
  Perm x_inv = x.inverse();
  for (const auto& g : elements) out.push_back(x * g * x_inv);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Perm> find_conjugator(std::span<const Perm> group, std::span<const Perm> a,
                                    std::span<const Perm> b) {
  if (a.size() != b.size()) return std::nullopt;
  std::vector<Perm> target(b.begin(), b.end());
  std::sort(target.begin(), target.end());
  for (const auto& x : group) {
    if (conjugate_set(a, x) == target) return x;
  }
  return std::nullopt;
}

}  // namespace holon
