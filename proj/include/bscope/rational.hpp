#pragma once

#include <boost/rational.hpp>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace bscope {

using Rational = boost::rational<std::int64_t>;

std::string to_string(const Rational& r);

/// Accepts "p", "p/q" and finite decimals such as "0.5" or "-1.25".
Rational parse_rational(std::string_view text);

double to_double(const Rational& r);

inline bool is_integer(const Rational& r) { return r.denominator() == 1; }

inline Rational abs(const Rational& r) { return r < 0 ? -r : r; }

/// Largest integer not exceeding r.
std::int64_t floor(const Rational& r);

inline std::strong_ordering compare(const Rational& a, const Rational& b) {
  if (a < b) return std::strong_ordering::less;
  if (b < a) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

/// A half-integer style exact value stored as twice the mathematical value.
/// Gromov products of integer metrics live here without leaving the integers.
class HalfExact {
 public:
  HalfExact() = default;

  static HalfExact from_doubled(Rational doubled) {
    HalfExact h;
    h.doubled_ = doubled;
    return h;
  }
  static HalfExact from_value(Rational value) { return from_doubled(value * 2); }

  const Rational& doubled() const { return doubled_; }
  Rational value() const { return doubled_ / 2; }

  HalfExact operator+(const HalfExact& o) const { return from_doubled(doubled_ + o.doubled_); }
  HalfExact operator-(const HalfExact& o) const { return from_doubled(doubled_ - o.doubled_); }

  bool operator==(const HalfExact& o) const { return doubled_ == o.doubled_; }
  std::strong_ordering operator<=>(const HalfExact& o) const { return compare(doubled_, o.doubled_); }

 private:
  Rational doubled_{0};
};

inline std::string to_string(const HalfExact& h) { return to_string(h.value()); }

}  // namespace bscope
