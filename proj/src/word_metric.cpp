#include "bscope/cayley.hpp"

#include "bscope/errors.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <unordered_map>

namespace bscope {

namespace {

struct ElementHash {
  std::size_t operator()(const GroupElement& g) const noexcept {
    std::size_t h = g.index() * 0x9e3779b97f4a7c15ULL;
    auto mix = [&h](std::uint64_t v) {
      h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    };
    if (const auto* w = std::get_if<Word>(&g))
      for (const auto l : w->letters) mix(static_cast<std::uint64_t>(static_cast<std::int64_t>(l)));
    else
      for (const auto c : std::get<LatticeVector>(g).coords) mix(static_cast<std::uint64_t>(c));
    return h;
  }
};

using NormTable = std::unordered_map<GroupElement, std::int64_t, ElementHash>;

// Breadth-first enumeration of the ball of the given radius. `visit` sees
// every element once, in BFS order with generators tried in their fixed order.
template <class Visit>
void breadth_first(const GroupSpec& spec, std::int64_t radius, std::size_t cap, NormTable& seen,
                   Visit&& visit) {
  const auto gens = generators(spec);
  std::vector<GroupElement> frontier{identity(spec)};
  seen.emplace(frontier.front(), 0);
  visit(frontier.front(), 0);
  for (std::int64_t r = 1; r <= radius && !frontier.empty(); ++r) {
    std::vector<GroupElement> next;
    for (const auto& g : frontier) {
      for (const auto& s : gens) {
        GroupElement h = act(spec, g, s);
        if (seen.contains(h)) continue;
        if (seen.size() >= cap)
          throw ResourceError("Cayley ball of radius " + std::to_string(radius) + " for " +
                              to_string(spec) + " exceeds the cap of " + std::to_string(cap) +
                              " elements");
        seen.emplace(h, r);
        visit(h, r);
        next.push_back(std::move(h));
      }
    }
    frontier = std::move(next);
  }
}

std::int64_t common_prefix(const Word& u, const Word& v) {
  std::int64_t k = 0;
  const auto n = std::min(u.letters.size(), v.letters.size());
  while (static_cast<std::size_t>(k) < n && u.letters[k] == v.letters[k]) ++k;
  return k;
}

}  // namespace

struct WordMetric::Table {
  NormTable norms;
};

std::size_t free_ball_size(int rank, std::int64_t radius) {
  constexpr auto kMax = std::numeric_limits<std::size_t>::max();
  if (radius <= 0) return 1;
  const std::size_t branching = 2 * static_cast<std::size_t>(rank) - 1;
  std::size_t sphere = 2 * static_cast<std::size_t>(rank);
  std::size_t total = 1;
  for (std::int64_t r = 1; r <= radius; ++r) {
    if (total > kMax - sphere) return kMax;
    total += sphere;
    if (r < radius) {
      if (branching != 0 && sphere > kMax / branching) return kMax;
      sphere *= branching;
    }
  }
  return total;
}

WordMetric::WordMetric(GroupSpec spec, std::int64_t radius, std::size_t cap)
    : spec_(std::move(spec)), radius_(radius) {
  if (radius < 0) throw DomainError("window radius must be nonnegative");
  if (spec_.is_free() && spec_.free().standard) return;
  auto table = std::make_shared<Table>();
  breadth_first(spec_, radius_, cap, table->norms, [](const GroupElement&, std::int64_t) {});
  table_ = std::move(table);
}

std::int64_t WordMetric::norm(const GroupElement& g) const {
  require_member(spec_, g);
  if (!table_) {
    const auto n = static_cast<std::int64_t>(std::get<Word>(g).length());
    if (n > radius_)
      throw OutOfWindowError("|" + to_string(g) + "| = " + std::to_string(n) +
                             " exceeds window radius " + std::to_string(radius_));
    return n;
  }
  const auto it = table_->norms.find(g);
  if (it == table_->norms.end())
    throw OutOfWindowError("|" + to_string(g) + "| exceeds window radius " +
                           std::to_string(radius_));
  return it->second;
}

std::int64_t WordMetric::distance(const GroupElement& x, const GroupElement& y) const {
  if (!table_) {
    require_member(spec_, x);
    require_member(spec_, y);
    const auto& u = std::get<Word>(x);
    const auto& v = std::get<Word>(y);
    const auto d = static_cast<std::int64_t>(u.length() + v.length()) - 2 * common_prefix(u, v);
    if (d > radius_)
      throw OutOfWindowError("d(" + to_string(x) + ", " + to_string(y) + ") = " +
                             std::to_string(d) + " exceeds window radius " +
                             std::to_string(radius_));
    return d;
  }
  return norm(act(spec_, inverse(spec_, x), y));
}

HalfExact WordMetric::product(const GroupElement& x, const GroupElement& y) const {
  return HalfExact::from_doubled(Rational(norm(x) + norm(y) - distance(x, y)));
}

std::int64_t WordMetric::horofunction(const GroupElement& z, const GroupElement& x) const {
  return norm(x) - distance(x, z);
}

WordMetric WordMetric::covering(const GroupSpec& spec, const std::vector<GroupElement>& elements,
                                std::int64_t slack, std::size_t cap) {
  std::int64_t max_norm = 0;
  if (spec.is_free() && spec.free().standard) {
    for (const auto& g : elements) {
      require_member(spec, g);
      max_norm = std::max<std::int64_t>(max_norm, std::get<Word>(g).length());
    }
  } else {
    std::int64_t probe_radius = 8;
    while (true) {
      try {
        WordMetric probe(spec, probe_radius, cap);
        max_norm = 0;
        for (const auto& g : elements) max_norm = std::max(max_norm, probe.norm(g));
        break;
      } catch (const OutOfWindowError&) {
        probe_radius *= 2;
      }
    }
  }
  return WordMetric(spec, 2 * max_norm + std::max<std::int64_t>(slack, 0), cap);
}

CayleyBall build_ball(const GroupSpec& spec, std::int64_t radius, std::size_t cap) {
  if (radius < 0) throw DomainError("ball radius must be nonnegative");
  if (spec.is_free() && spec.free().standard) {
    const auto size = free_ball_size(spec.rank(), radius);
    if (size > cap)
      throw ResourceError("Cayley ball of radius " + std::to_string(radius) + " for " +
                          to_string(spec) + " has " +
                          (size == std::numeric_limits<std::size_t>::max()
                               ? std::string("more than 2^64")
                               : std::to_string(size)) +
                          " elements, exceeding the cap of " + std::to_string(cap));
  }
  CayleyBall ball;
  ball.spec = spec;
  ball.radius = radius;
  NormTable seen;
  breadth_first(spec, radius, cap, seen, [&](const GroupElement& g, std::int64_t r) {
    ball.elements.push_back(g);
    ball.norms.push_back(r);
  });
  return ball;
}

std::int64_t word_norm(const GroupSpec& spec, const GroupElement& g, std::int64_t radius) {
  return WordMetric(spec, radius).norm(g);
}

std::vector<GroupElement> sphere(const CayleyBall& ball, std::int64_t r) {
  if (r < 0 || r > ball.radius)
    throw OutOfWindowError("sphere radius " + std::to_string(r) + " outside ball radius " +
                           std::to_string(ball.radius));
  std::vector<GroupElement> out;
  for (std::size_t i = 0; i < ball.elements.size(); ++i)
    if (ball.norms[i] == r) out.push_back(ball.elements[i]);
  return out;
}

bool on_geodesic(const WordMetric& metric, const GroupElement& x, const GroupElement& y,
                 const GroupElement& z) {
  return metric.distance(x, z) + metric.distance(z, y) == metric.distance(x, y);
}

MetricWindow window_from_ball(const CayleyBall& ball, const WordMetric& metric) {
  std::vector<std::string> labels;
  labels.reserve(ball.elements.size());
  for (const auto& g : ball.elements) labels.push_back(to_string(g));
  return MetricWindow::from_integer_function(
      ball.elements.size(), PointId{0},
      [&](std::size_t i, std::size_t j) { return metric.distance(ball.elements[i], ball.elements[j]); },
      MetricWindow::Check::basic, std::move(labels));
}

MetricWindow window_from_ball(const CayleyBall& ball) {
  return window_from_ball(ball, WordMetric(ball.spec, 2 * ball.radius));
}

}  // namespace bscope
