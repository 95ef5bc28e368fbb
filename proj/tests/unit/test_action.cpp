#include "helpers.hpp"

#include <random>

using namespace testing;

namespace {

const GroupSpec F2 = free_group(2);
const WordMetric MF(F2, 200);

BoundarySample powers(const std::string& prefix, const std::string& w, const std::string& suffix, int h) {
  return word_sample(MF, h, [&](int n) { return prefix + power(w, n) + suffix; }, prefix + "(" + w + ")^n" + suffix);
}

ProbabilityMeasure uniform_words(const std::vector<std::string>& words) {
  std::vector<GroupElement> pts;
  for (const auto& w : words) pts.push_back(el(F2, w));
  return ProbabilityMeasure::uniform(pts);
}

std::vector<std::string> range(const std::string& w, int from, int to) {
  std::vector<std::string> out;
  for (int i = from; i <= to; ++i) out.push_back(power(w, i));
  return out;
}

}  // namespace

TEST_CASE("acting on samples") {
  const auto a = powers("", "a", "", 10);
  const auto moved = act_on_sample(el(F2, "a"), a, MF);
  REQUIRE(moved.horizon() == 10);
  for (std::size_t n = 1; n <= 10; ++n) CHECK(moved.at(n) == el(F2, power("a", static_cast<int>(n) + 1)));
  CHECK(act_on_sample(identity(F2), a, MF).points() == a.points());
  const auto back = act_on_sample(el(F2, "A"), a, MF);
  REQUIRE(back.horizon() == 9);
  for (std::size_t n = 1; n <= 9; ++n) CHECK(back.at(n) == el(F2, power("a", static_cast<int>(n))));
  const auto bb = act_on_sample(el(F2, "AA"), powers("", "a", "b", 10), MF);
  CHECK(bb.at(1) == el(F2, "b"));
  CHECK_THROWS_AS(act_on_sample(el(z2(), "(1,0)"), a, MF), DomainError);
}

TEST_CASE("equivariance") {
  const auto a = powers("", "a", "", 40);
  const auto ab = powers("", "a", "b", 40);
  const auto r = equivariance_check(el(F2, "b"), a, ab, Q(10), MF);
  CHECK(r.before.pass);
  CHECK(r.after.pass);
  CHECK(r.base_change_identity);
  CHECK(r.shift_within_bound);
  CHECK(r.pass);
  CHECK(r.shift == 1);

  const auto e = equivariance_check(identity(F2), a, ab, Q(10), MF);
  CHECK(e.before.values == e.after.values);
  CHECK(e.dropped == 0);

  CHECK(product_based_at(MF, el(F2, "b"), el(F2, "ba"), el(F2, "baa")) == H(1));
  CHECK(MF.product(el(F2, "a"), el(F2, "aa")) == H(1));

  CHECK_THROWS_AS(equivariance_check(el(F2, "b"), a, powers("", "b", "", 40), Q(10), MF), PreconditionError);

  for (const auto& g : build_ball(F2, 2).elements) {
    const auto q = equivariance_check(g, a, ab, Q(8), MF);
    CHECK(q.pass);
  }
}

TEST_CASE("probability measures") {
  CHECK_THROWS_AS(ProbabilityMeasure({{el(F2, "a"), Q(1, 2)}}), DomainError);
  CHECK_THROWS_AS(ProbabilityMeasure({{el(F2, "a"), Q(3, 2)}, {el(F2, "b"), Q(-1, 2)}}), DomainError);
  CHECK_THROWS_AS(ProbabilityMeasure::uniform({el(F2, "a"), el(F2, "a")}), DomainError);
  CHECK_THROWS_AS(ProbabilityMeasure::uniform({}), DomainError);

  const auto mu = uniform_words({"a", "aa"});
  const auto pushed = pushforward(F2, el(F2, "a"), mu);
  CHECK(tv_distance(pushed, uniform_words({"aa", "aaa"})) == Q(0));
  CHECK(pushed.total() == Q(1));
  CHECK(tv_distance(pushforward(F2, identity(F2), mu), mu) == Q(0));

  CHECK(tv_distance(uniform_words(range("a", 1, 4)), uniform_words(range("a", 2, 5))) == Q(1, 2));
  CHECK(tv_distance(mu, mu) == Q(0));
  CHECK(tv_distance(uniform_words({"a"}), uniform_words({"b", "bb"})) == Q(2));
}

TEST_CASE("tv distance is a metric and pushforward an isometry") {
  std::mt19937 rng(20260417);
  const auto ball = build_ball(F2, 2).elements;
  auto random_measure = [&] {
    std::uniform_int_distribution<int> size(1, 5), pick(0, static_cast<int>(ball.size()) - 1), weight(1, 6);
    std::map<GroupElement, std::int64_t> raw;
    const int k = size(rng);
    for (int i = 0; i < k; ++i) raw[ball[pick(rng)]] += weight(rng);
    std::int64_t total = 0;
    for (const auto& [g, w] : raw) total += w;
    std::map<GroupElement, Rational> m;
    for (const auto& [g, w] : raw) m[g] = Rational(w, total);
    return ProbabilityMeasure(m);
  };
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_measure(), b = random_measure(), c = random_measure();
    CHECK(tv_distance(a, b) == tv_distance(b, a));
    CHECK(tv_distance(a, c) <= tv_distance(a, b) + tv_distance(b, c));
    CHECK(tv_distance(a, b) <= Q(2));
    const auto g = ball[static_cast<std::size_t>(trial) % ball.size()];
    const auto ga = pushforward(F2, g, a);
    CHECK(ga.weights().size() == a.weights().size());
    CHECK(ga.total() == Q(1));
    CHECK(tv_distance(ga, pushforward(F2, g, b)) == tv_distance(a, b));
  }
}

TEST_CASE("ray translation and canonical tails") {
  const auto f = F2;
  auto tr = [&](const char* g, const char* ray) {
    return to_string(translate_ray(f, el(f, g), parse_ray_spec(f, ray)));
  };
  CHECK(tr("a", "free:|a") == "free:|a");
  CHECK(tr("b", "free:|a") == "free:b|a");
  CHECK(tr("A", "free:ab|a") == "free:b|a");
  CHECK(tr("A", "free:a|b") == "free:|b");
  CHECK(tr("BA", "free:ab|ab") == "free:|ab");
  CHECK(tr("b", "free:|ab") == "free:|ba");
  auto canon = [&](const char* p, const char* q) {
    return to_string(RaySpec{canonical_tail(FreeTail{std::get<Word>(el(f, p)), std::get<Word>(el(f, q))})});
  };
  CHECK(canon("ab", "ab") == "free:|ab");
  CHECK(canon("b", "ab") == "free:|ba");
  CHECK(canon("", "aa") == "free:|a");
  CHECK(canon("bab", "abab") == "free:|ba");

  const auto l = translate_ray(z2(), el(z2(), "(1,2)"), parse_ray_spec(z2(), "lattice:offset=(0,0);dir=(1,0)"));
  CHECK(std::get<LatticePath>(l).offset == std::get<LatticeVector>(el(z2(), "(1,2)")));
  CHECK_THROWS_AS(translate_ray(f, el(f, "a"), RaySpec{ExplicitTable{{{Q(0), identity(f)}}}}), DomainError);
}

TEST_CASE("canonical geodesics") {
  const auto g = canonical_geodesic(F2, parse_ray_spec(F2, "free:b|a"), 3, MF);
  REQUIRE(g.size() == 4);
  CHECK(g[3] == el(F2, "baa"));
  const WordMetric mz(z2(), 16);
  const auto s = canonical_geodesic(z2(), parse_ray_spec(z2(), "lattice:offset=(0,0);dir=(1,1)"), 4, mz);
  REQUIRE(s.size() == 5);
  CHECK(s[1] == el(z2(), "(0,1)"));
  CHECK(s[2] == el(z2(), "(1,1)"));
  CHECK(s[4] == el(z2(), "(2,2)"));
  const auto o = canonical_geodesic(z2(), parse_ray_spec(z2(), "lattice:offset=(-1,0);dir=(0,2);mode=straight"), 3, mz);
  CHECK(o[1] == el(z2(), "(-1,0)"));
  CHECK(o[3] == el(z2(), "(-1,2)"));
}

TEST_CASE("mean defects") {
  const auto aw = parse_ray_spec(F2, "free:|a");
  CHECK(mean_defect(F2, el(F2, "a"), aw, 4, MF) == Q(1, 2));
  CHECK(mean_defect(F2, identity(F2), aw, 4, MF) == Q(0));
  CHECK(mean_defect(F2, el(F2, "b"), aw, 4, MF) == Q(1, 2));
  const auto m = mean_measure(F2, aw, 7, MF);
  CHECK(m.weights().size() == 7);
  for (const auto& [g, w] : m.weights()) CHECK(w == Q(1, 7));
  CHECK_FALSE(m.weights().contains(identity(F2)));
  CHECK(mean_measure(F2, aw, 7, MF, true).weights().contains(identity(F2)));
  CHECK_THROWS_AS(mean_measure(F2, aw, 0, MF), DomainError);
  CHECK_THROWS_AS(mean_defect(F2, el(F2, "a"), RaySpec{ExplicitTable{{{Q(0), identity(F2)}}}}, 4, MF), DomainError);

  for (const auto* ray : {"free:|a", "free:b|a", "free:Ab|ab", "free:|aB"})
    for (const auto& g : generators(F2))
      for (std::size_t n : {3u, 8u, 13u}) {
        const auto ex = mean_defect(F2, g, parse_ray_spec(F2, ray), n, MF);
        const auto in = mean_defect(F2, g, parse_ray_spec(F2, ray), n, MF, true);
        CHECK(abs(ex - in) <= Q(2, static_cast<std::int64_t>(n)));
      }

  const WordMetric mz(z2(), 64);
  CHECK(mean_defect(z2(), el(z2(), "(1,0)"), parse_ray_spec(z2(), "lattice:offset=(0,0);dir=(1,0)"), 8, mz) == Q(1, 4));
}

TEST_CASE("defect decay scan") {
  std::vector<RaySpec> omegas;
  for (const auto* r : {"free:|a", "free:|b", "free:b|a", "free:|ab", "free:AB|a"}) omegas.push_back(parse_ray_spec(F2, r));
  const auto gens = generators(F2);
  const auto scan = defect_decay_scan(F2, gens, omegas, {4, 8, 16, 32}, MF);
  CHECK(scan.within_bound);
  CHECK(scan.constant == 2);
  CHECK(scan.pairs_covered == gens.size() * omegas.size());
  REQUIRE(scan.max_by_n.size() == 4);
  for (std::size_t i = 1; i < scan.max_by_n.size(); ++i)
    CHECK(scan.max_by_n[i].second * 2 == scan.max_by_n[i - 1].second);
  for (const auto& e : scan.entries)
    if (e.g == el(F2, "a") && to_string(e.omega) == "free:|a")
      CHECK(e.defect == Q(2, static_cast<std::int64_t>(e.n)));

  const auto one = defect_decay_scan(F2, gens, omegas, {1}, MF);
  for (const auto& e : one.entries) CHECK(e.defect <= Q(2));
}
