#pragma once

#include "bscope/action.hpp"
#include "bscope/boundary.hpp"
#include "bscope/cayley.hpp"
#include "bscope/errors.hpp"
#include "bscope/metric.hpp"
#include "bscope/rays.hpp"

#include <doctest.h>

#include <algorithm>
#include <string>

namespace testing {

using namespace bscope;

inline GroupSpec free_group(int k) { return parse_group_spec("free:" + std::to_string(k)); }
inline GroupSpec z2() { return parse_group_spec("zd:2:gens=(1,0),(0,1)"); }

inline GroupElement el(const GroupSpec& spec, const std::string& text) { return parse_element(spec, text); }

inline PointId id_of(const CayleyBall& ball, const std::string& repr) {
  const auto g = parse_element(ball.spec, repr);
  const auto it = std::find(ball.elements.begin(), ball.elements.end(), g);
  REQUIRE(it != ball.elements.end());
  return PointId{static_cast<std::uint32_t>(it - ball.elements.begin())};
}

inline Rational Q(std::int64_t p, std::int64_t q = 1) { return Rational(p, q); }
inline HalfExact H(std::int64_t p, std::int64_t q = 1) { return HalfExact::from_value(Rational(p, q)); }

inline std::string power(const std::string& w, int n) {
  std::string out;
  for (int i = 0; i < n; ++i) out += w;
  return out;
}

// Sample x_n = prefix·w(n) for n = 1..h, built from a callback producing the word text.
template <class F>
BoundarySample word_sample(const WordMetric& m, int h, F&& f, const std::string& label) {
  std::vector<GroupElement> pts;
  for (int n = 1; n <= h; ++n) pts.push_back(parse_element(m.spec(), f(n)));
  return BoundarySample(m, std::move(pts), label);
}

inline BoundarySample lattice_sample(const WordMetric& m, int h, int dx, int dy, const std::string& label) {
  std::vector<GroupElement> pts;
  for (int n = 1; n <= h; ++n)
    pts.push_back(LatticeVector{{static_cast<std::int64_t>(n) * dx, static_cast<std::int64_t>(n) * dy}});
  return BoundarySample(m, std::move(pts), label);
}

}  // namespace testing
