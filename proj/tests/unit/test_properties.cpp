#include "../oracles.hpp"
#include "helpers.hpp"

#include <random>

using namespace testing;

namespace {

std::vector<GroupSpec> specs() {
  return {free_group(2), z2(), parse_group_spec("zd:2:gens=(1,0),(0,1),(1,1),(1,-1)"),
          parse_group_spec("free:2:gens=a,b,ab"), parse_group_spec("zd:1:gens=(2),(3)")};
}

std::string random_word(std::mt19937& rng, int rank, int max_len, bool nonempty) {
  std::uniform_int_distribution<int> len(nonempty ? 1 : 0, max_len), letter(0, 2 * rank - 1);
  const int n = len(rng);
  std::string w;
  while (static_cast<int>(w.size()) < n) {
    const int l = letter(rng);
    const char c = static_cast<char>('a' + l / 2 + (l / 2 >= 4 ? 1 : 0));
    const char x = l % 2 ? oracle::inv(c) : c;
    if (!w.empty() && w.back() == oracle::inv(x)) continue;
    w.push_back(x);
  }
  return w;
}

// Random eventually-periodic ray text with no junction cancellation.
std::string random_ray(std::mt19937& rng, int rank) {
  while (true) {
    const auto p = random_word(rng, rank, 3, false);
    const auto q = random_word(rng, rank, 3, true);
    if (q.back() == oracle::inv(q.front())) continue;
    if (!p.empty() && p.back() == oracle::inv(q.front())) continue;
    return "free:" + p + "|" + q;
  }
}

}  // namespace

TEST_CASE("balls are metric windows") {
  for (const auto& spec : specs()) {
    const auto ball = build_ball(spec, spec.is_free() && !spec.free().standard ? 2 : 3);
    const WordMetric m(spec, 6);
    CHECK_NOTHROW(MetricWindow::from_integer_function(
        ball.elements.size(), PointId{0},
        [&](std::size_t i, std::size_t j) { return m.distance(ball.elements[i], ball.elements[j]); },
        MetricWindow::Check::full));
  }
}

TEST_CASE("product, horofunction and delta invariants on random triples") {
  std::mt19937 rng(7);
  for (const auto& spec : specs()) {
    const auto ball = build_ball(spec, spec.is_free() && !spec.free().standard ? 2 : 3);
    const auto w = window_from_ball(ball);
    const auto delta = min_delta(w);
    const auto again = min_delta(w);
    CHECK(delta.delta == again.delta);
    CHECK(delta.witness == again.witness);
    if (delta.witness) CHECK(triple_defect(w, delta.witness->x, delta.witness->y, delta.witness->z) == delta.delta);
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(ball.elements.size() - 1));
    for (int trial = 0; trial < 3000; ++trial) {
      const PointId x{pick(rng)}, y{pick(rng)}, z{pick(rng)}, x2{pick(rng)};
      const auto dx = w.distance(x, w.base()), dy = w.distance(y, w.base());
      const auto p = gromov_product(w, x, y);
      CHECK(p >= H(0));
      CHECK(p.value() <= std::min(dx, dy));
      CHECK(p >= std::min(gromov_product(w, x, z), gromov_product(w, y, z)) - delta.delta);
      const auto fz = horofunction(w, z, x);
      CHECK(abs(fz - horofunction(w, z, x2)) <= w.distance(x, x2) * 2);
      CHECK(abs(fz - horofunction(w, x2, x)) <= w.distance(z, x2));
      CHECK(abs(fz) <= w.distance(z, w.base()));
      const auto gap = product_horofunction_gap(w, x, y, z);
      CHECK(gap >= Q(0));
      const bool between = w.distance(x, z) + w.distance(z, y) == w.distance(x, y);
      CHECK((gap == Q(0)) == between);
      CHECK(between == is_between(w, x, y, z));
    }
  }
}

TEST_CASE("random free rays: certificates, profiles and classification") {
  std::mt19937 rng(11);
  const auto f3 = free_group(3);
  const WordMetric m(f3, 200);
  const auto probes = build_ball(f3, 2).elements;
  for (int trial = 0; trial < 40; ++trial) {
    const auto u = random_ray(rng, 3), v = random_ray(rng, 3);
    const auto ru = materialize_ray(f3, parse_ray_spec(f3, u), Q(24));
    CHECK(ru.samples == materialize_ray(f3, parse_ray_spec(f3, u), Q(24)).samples);
    const auto a = sample_from_ray(ru, m, u);
    const auto b = sample_from_ray(materialize_ray(f3, parse_ray_spec(f3, v), Q(24)), m, v);
    const auto ca = converges_to_infinity(a, Q(4), m);
    CHECK(ca.pass);
    CHECK(std::is_sorted(ca.values.begin(), ca.values.end()));
    const auto eq = gromov_equiv(a, b, Q(4), m);
    CHECK(std::is_sorted(eq.values.begin(), eq.values.end()));
    CHECK(check_geodesic(ru, m).pass);

    // Products along the samples equal common prefix lengths of the word oracle.
    for (std::size_t n = 1; n <= a.horizon(); n += 5) {
      auto sa = to_string(a.at(n)), sb = to_string(b.at(n));
      CHECK(m.product(a.at(n), b.at(n)).doubled() == Q(oracle::free_product2(sa, sb)));
    }
    // Metric equivalence implies Gromov equivalence at every threshold below the stable radius.
    if (metric_equiv(a, b, probes, Q(0), m).verdict == Verdict::pass) CHECK(gromov_equiv(a, b, Q(1), m).pass);

    // Translation: generators move means by exactly 2/n or less.
    for (const auto& g : generators(f3)) {
      const auto d = mean_defect(f3, g, parse_ray_spec(f3, u), 10, m);
      CHECK(d <= Q(2, 10));
    }
  }
}
