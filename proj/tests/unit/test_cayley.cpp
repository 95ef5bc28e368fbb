#include "../oracles.hpp"
#include "helpers.hpp"

using namespace testing;

TEST_CASE("group spec grammar") {
  const auto f2 = parse_group_spec("free:2");
  CHECK(f2.is_free());
  CHECK(f2.rank() == 2);
  CHECK(generators(f2).size() == 4);

  const auto z = parse_group_spec("zd:2:gens=(1,0),(0,1)");
  REQUIRE(z.is_lattice());
  CHECK(z.lattice().generators.size() == 4);
  CHECK(to_string(z) == "zd:2:gens=(0,1),(1,0)");
  CHECK(parse_group_spec(to_string(z)) == z);

  CHECK_THROWS_AS(parse_group_spec("zd:2:gens=(2,0),(0,2)"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("zd:2:gens=(1,1),(1,-1)"), ParseError);
  CHECK_NOTHROW(parse_group_spec("zd:2:gens=(1,1),(0,1)"));
  CHECK_THROWS_AS(parse_group_spec("free:0"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("zd:0:gens=(1)"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("zd:2:gens=(1,0,0)"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("free:2:gens=ab"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("free:2x"), ParseError);
  try {
    parse_group_spec("torus:2");
    FAIL("accepted an unknown family");
  } catch (const ParseError& e) {
    CHECK(e.position() == 0);
  }
  const auto g = parse_group_spec("free:2:gens=a,b,ab");
  CHECK(generators(g).size() == 6);
  CHECK(parse_group_spec(to_string(g)) == g);
  CHECK_FALSE(g == f2);
}

TEST_CASE("hyperbolicity of families") {
  CHECK(is_hyperbolic(free_group(3)));
  CHECK(is_hyperbolic(parse_group_spec("zd:1:gens=(1),(2)")));
  CHECK_FALSE(is_hyperbolic(z2()));
}

TEST_CASE("ball sizes") {
  CHECK(build_ball(free_group(2), 2).elements.size() == 17);
  CHECK(build_ball(z2(), 3).elements.size() == 25);
  for (const auto& spec : {free_group(2), z2()}) {
    const auto b = build_ball(spec, 0);
    REQUIRE(b.elements.size() == 1);
    CHECK(is_identity(b.elements[0]));
  }
  for (int k = 1; k <= 3; ++k)
    for (int r = 0; r <= 4; ++r) {
      CHECK(build_ball(free_group(k), r).elements.size() == oracle::free_ball(k, r).size());
      CHECK(free_ball_size(k, r) == oracle::free_ball(k, r).size());
    }
  for (int r = 0; r <= 6; ++r)
    CHECK(build_ball(z2(), r).elements.size() == static_cast<std::size_t>(2 * r * r + 2 * r + 1));
}

TEST_CASE("ball invariants") {
  for (const auto& spec : {free_group(2), z2(), parse_group_spec("free:2:gens=a,b,ab")}) {
    const auto ball = build_ball(spec, 3);
    const WordMetric m(spec, 6);
    CHECK(ball.norms[0] == 0);
    for (std::size_t i = 0; i < ball.elements.size(); ++i) {
      CHECK(ball.norms[i] <= 3);
      if (i > 0) CHECK(ball.norms[i - 1] <= ball.norms[i]);
      CHECK(m.norm(ball.elements[i]) == ball.norms[i]);
    }
  }
}

TEST_CASE("resource cap") {
  CHECK_THROWS_AS(build_ball(parse_group_spec("free:9"), 12), ResourceError);
  CHECK_THROWS_AS(build_ball(z2(), 30, 100), ResourceError);
  CHECK_THROWS_AS(WordMetric(z2(), 30, 100), ResourceError);
}

TEST_CASE("word norms") {
  CHECK(word_norm(free_group(2), el(free_group(2), "abA"), 5) == 3);
  const auto king = parse_group_spec("zd:2:gens=(1,0),(0,1),(1,1),(1,-1)");
  CHECK(word_norm(king, el(king, "(3,2)"), 5) == 3);
  CHECK(word_norm(king, identity(king), 0) == 0);
  CHECK_THROWS_AS(word_norm(king, el(king, "(9,0)"), 5), OutOfWindowError);
  CHECK_THROWS_AS(word_norm(free_group(2), el(free_group(2), "aaaa"), 3), OutOfWindowError);

  const oracle::Z2 ok({{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}, {1, -1}, {-1, 1}}, 10);
  const WordMetric m(king, 6);
  for (int x = -5; x <= 5; ++x)
    for (int y = -5; y <= 5; ++y) CHECK(m.norm(LatticeVector{{x, y}}) == ok.norm(x, y));

  const auto g = parse_group_spec("free:2:gens=a,b,ab");
  const WordMetric mg(g, 6);
  CHECK(mg.norm(el(g, "ab")) == 1);
  CHECK(mg.norm(el(g, "abab")) == 2);
  CHECK(mg.norm(el(g, "ba")) == 2);
  CHECK(mg.norm(el(g, "BA")) == 1);
}

TEST_CASE("left action") {
  const auto f = free_group(2);
  CHECK(act(f, el(f, "a"), el(f, "Ab")) == el(f, "b"));
  CHECK(act(z2(), el(z2(), "(1,0)"), el(z2(), "(3,2)")) == el(z2(), "(4,2)"));
  CHECK(act(f, identity(f), el(f, "abA")) == el(f, "abA"));
  CHECK(act(f, inverse(f, el(f, "abA")), el(f, "abA")) == identity(f));
  CHECK_THROWS_AS(act(f, el(z2(), "(1,0)"), el(f, "a")), DomainError);
  CHECK_THROWS_AS(act(free_group(1), el(f, "b"), identity(f)), DomainError);
  CHECK(to_string(el(f, "aA")) == "e");
  CHECK(to_string(el(f, "")) == "e");
}

TEST_CASE("spheres") {
  const auto f = build_ball(free_group(2), 3);
  const auto s1 = sphere(f, 1);
  CHECK(s1.size() == 4);
  for (const auto* w : {"a", "A", "b", "B"})
    CHECK(std::count(s1.begin(), s1.end(), el(f.spec, w)) == 1);
  const auto z = build_ball(z2(), 4);
  CHECK(sphere(z, 2).size() == 8);
  for (int r = 1; r <= 4; ++r) CHECK(sphere(z, r).size() == static_cast<std::size_t>(4 * r));
  CHECK(sphere(z, 0) == std::vector<GroupElement>{identity(z2())});
  CHECK_THROWS_AS(sphere(z, 5), OutOfWindowError);
}

TEST_CASE("geodesic membership") {
  const WordMetric mz(z2(), 16);
  CHECK(on_geodesic(mz, el(z2(), "(4,0)"), el(z2(), "(0,4)"), el(z2(), "(2,2)")));
  const WordMetric mf(free_group(2), 16);
  const auto f = free_group(2);
  CHECK_FALSE(on_geodesic(mf, el(f, "aa"), el(f, "bb"), el(f, "ab")));
  CHECK(on_geodesic(mf, el(f, "aa"), el(f, "bb"), el(f, "aa")));
}

TEST_CASE("free distances agree with the string oracle and with BFS") {
  const auto spec = free_group(2);
  const auto words = oracle::free_ball(2, 3);
  const WordMetric m(spec, 10);
  const auto ball = build_ball(spec, 5);
  for (const auto& u : words)
    for (const auto& v : words) CHECK(m.distance(el(spec, u), el(spec, v)) == oracle::free_distance(u, v));
  for (std::size_t i = 0; i < ball.elements.size(); ++i) {
    auto s = to_string(ball.elements[i]);
    if (s == "e") s.clear();
    CHECK(ball.norms[i] == oracle::free_norm(s));
  }
}

TEST_CASE("translation invariance and base change") {
  for (const auto& spec : {free_group(2), z2(), parse_group_spec("free:2:gens=a,b,ab")}) {
    const WordMetric m(spec, 6);
    const auto ball = build_ball(spec, 2).elements;
    for (const auto& g : ball)
      for (const auto& x : ball)
        for (const auto& y : ball) {
          const auto gx = act(spec, g, x), gy = act(spec, g, y);
          CHECK(m.distance(gx, gy) == m.distance(x, y));
          CHECK(product_based_at(m, g, gx, gy) == m.product(x, y));
        }
  }
  const auto f = free_group(2);
  const WordMetric m(f, 10);
  CHECK(product_based_at(m, el(f, "b"), el(f, "ba"), el(f, "baa")) == H(1));
  CHECK(m.product(el(f, "a"), el(f, "aa")) == H(1));
}
