#include "bscope/rational.hpp"

#include "bscope/errors.hpp"

#include <cctype>
#include <limits>

namespace bscope {

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

std::int64_t parse_integer(std::string_view text, std::size_t offset) {
  if (text.empty()) throw ParseError("expected an integer", offset);
  std::int64_t value = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("expected a digit", offset + i);
    if (value > (std::numeric_limits<std::int64_t>::max() - (c - '0')) / 10)
      throw ParseError("integer overflow", offset + i);
    value = value * 10 + (c - '0');
  }
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
    negative = text[0] == '-';
    pos = 1;
  }
  const std::string_view body = text.substr(pos);
  Rational result;
  if (const auto slash = body.find('/'); slash != std::string_view::npos) {
    const auto num = parse_integer(body.substr(0, slash), pos);
    const auto den = parse_integer(body.substr(slash + 1), pos + slash + 1);
    if (den == 0) throw ParseError("zero denominator", pos + slash + 1);
    result = Rational(num, den);
  } else if (const auto dot = body.find('.'); dot != std::string_view::npos) {
    const auto whole = body.substr(0, dot);
    const auto frac = body.substr(dot + 1);
    if (frac.size() > 17) throw ParseError("too many decimal digits", pos + dot + 1);
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const auto w = whole.empty() ? 0 : parse_integer(whole, pos);
    const auto f = frac.empty() ? 0 : parse_integer(frac, pos + dot + 1);
    result = Rational(w) + Rational(f, scale);
  } else {
    result = Rational(parse_integer(body, pos));
  }
  return negative ? -result : result;
}

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::int64_t floor(const Rational& r) {
  const auto n = r.numerator();
  const auto d = r.denominator();
  auto q = n / d;
  if ((n % d != 0) && (n < 0)) --q;
  return q;
}

}  // namespace bscope
