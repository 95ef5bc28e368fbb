#include "bscope/cayley.hpp"

#include "bscope/errors.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <optional>

namespace bscope {

namespace {

constexpr std::string_view kLetters = "abcdfghijklmnopqrstuvwxyz";

std::optional<std::int32_t> letter_from_char(char c) {
  const char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  const auto pos = kLetters.find(lower);
  if (pos == std::string_view::npos) return std::nullopt;
  const auto k = static_cast<std::int32_t>(pos) + 1;
  return std::isupper(static_cast<unsigned char>(c)) ? -k : k;
}

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  bool done() const { return pos_ >= text_.size(); }
  std::size_t pos() const { return pos_; }
  char peek() const { return done() ? '\0' : text_[pos_]; }

  void skip_spaces() {
    while (!done() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view token) {
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view token) {
    if (!accept(token)) throw ParseError("expected '" + std::string(token) + "'", pos_);
  }

  std::int64_t integer() {
    skip_spaces();
    const auto start = pos_;
    bool negative = false;
    if (peek() == '-' || peek() == '+') {
      negative = peek() == '-';
      ++pos_;
    }
    if (done() || !std::isdigit(static_cast<unsigned char>(peek())))
      throw ParseError("expected an integer", pos_);
    std::int64_t value = 0;
    while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) {
      if (value > (std::numeric_limits<std::int64_t>::max() - 9) / 10)
        throw ParseError("integer overflow", start);
      value = value * 10 + (text_[pos_++] - '0');
    }
    skip_spaces();
    return negative ? -value : value;
  }

  std::string_view rest() const { return text_.substr(std::min(pos_, text_.size())); }
  void advance(std::size_t n) { pos_ += n; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

LatticeVector parse_vector(Cursor& in) {
  in.skip_spaces();
  in.expect("(");
  LatticeVector v;
  v.coords.push_back(in.integer());
  while (in.accept(",")) v.coords.push_back(in.integer());
  in.expect(")");
  in.skip_spaces();
  return v;
}

Word parse_word(std::string_view text, int rank, std::size_t offset) {
  std::vector<std::int32_t> letters;
  if (text == "e" || text.empty()) return {};
  for (std::size_t i = 0; i < text.size(); ++i) {
    const auto letter = letter_from_char(text[i]);
    if (!letter || std::abs(*letter) > rank)
      throw ParseError(std::string("letter '") + text[i] + "' is not a generator of rank " +
                           std::to_string(rank),
                       offset + i);
    letters.push_back(*letter);
  }
  return reduce(std::move(letters));
}

LatticeVector negate(const LatticeVector& v) {
  LatticeVector out = v;
  for (auto& c : out.coords) c = -c;
  return out;
}

Word invert(const Word& w) {
  Word out;
  out.letters.reserve(w.letters.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) out.letters.push_back(-*it);
  return out;
}

// Column reduction of the generator matrix; the generated subgroup is Z^d iff
// every pivot of the resulting triangular basis is ±1.
bool spans_full_lattice(int rank, std::vector<LatticeVector> cols) {
  using Wide = __int128;
  std::vector<std::vector<Wide>> m;
  for (const auto& c : cols) m.emplace_back(c.coords.begin(), c.coords.end());
  std::size_t first = 0;
  for (int row = 0; row < rank; ++row) {
    while (true) {
      std::size_t pivot = m.size();
      for (std::size_t k = first; k < m.size(); ++k)
        if (m[k][row] != 0 && (pivot == m.size() ||
                               (m[k][row] < 0 ? -m[k][row] : m[k][row]) <
                                   (m[pivot][row] < 0 ? -m[pivot][row] : m[pivot][row])))
          pivot = k;
      if (pivot == m.size()) return false;
      std::swap(m[first], m[pivot]);
      bool cleared = true;
      for (std::size_t k = first + 1; k < m.size(); ++k) {
        if (m[k][row] == 0) continue;
        const Wide q = m[k][row] / m[first][row];
        for (int r = 0; r < rank; ++r) m[k][r] -= q * m[first][r];
        if (m[k][row] != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (m[first][row] != 1 && m[first][row] != -1) return false;
    ++first;
  }
  return true;
}

}  // namespace

int GroupSpec::rank() const {
  return is_free() ? free().rank : lattice().rank;
}

char letter_name(std::int32_t letter) {
  const auto k = static_cast<std::size_t>(std::abs(letter)) - 1;
  if (letter == 0 || k >= kLetters.size()) throw DomainError("letter index out of range");
  const char c = kLetters[k];
  return letter > 0 ? c : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
}

Word reduce(std::vector<std::int32_t> letters) {
  Word out;
  out.letters.reserve(letters.size());
  for (const auto l : letters) {
    if (!out.letters.empty() && out.letters.back() == -l) out.letters.pop_back();
    else out.letters.push_back(l);
  }
  return out;
}

Word concat(const Word& u, const Word& v) {
  std::size_t cancel = 0;
  while (cancel < u.letters.size() && cancel < v.letters.size() &&
         u.letters[u.letters.size() - 1 - cancel] == -v.letters[cancel])
    ++cancel;
  Word out;
  out.letters.reserve(u.letters.size() + v.letters.size() - 2 * cancel);
  out.letters.insert(out.letters.end(), u.letters.begin(), u.letters.end() - cancel);
  out.letters.insert(out.letters.end(), v.letters.begin() + cancel, v.letters.end());
  return out;
}

GroupSpec parse_group_spec(std::string_view text) {
  Cursor in(text);
  GroupSpec spec;
  if (in.accept("free:")) {
    const auto rank_pos = in.pos();
    const auto rank = in.integer();
    if (rank < 1) throw ParseError("free group rank must be at least 1", rank_pos);
    if (rank > static_cast<std::int64_t>(kLetters.size()))
      throw ParseError("free group rank exceeds " + std::to_string(kLetters.size()), rank_pos);
    FreeGroup g;
    g.rank = static_cast<int>(rank);
    if (in.done()) {
      for (std::int32_t k = 1; k <= g.rank; ++k) {
        g.generators.push_back(Word{{k}});
        g.generators.push_back(Word{{-k}});
      }
    } else {
      in.expect(":gens=");
      g.standard = false;
      while (true) {
        const auto start = in.pos();
        const auto rest = in.rest();
        const auto comma = rest.find(',');
        const auto token = rest.substr(0, comma);
        const Word w = parse_word(token, g.rank, start);
        if (w.letters.empty()) throw ParseError("identity is not a generator", start);
        const Word inv = invert(w);
        if (std::find(g.generators.begin(), g.generators.end(), w) == g.generators.end()) {
          g.generators.push_back(w);
          g.generators.push_back(inv);
        }
        in.advance(token.size());
        if (comma == std::string_view::npos) break;
        in.expect(",");
      }
      for (std::int32_t k = 1; k <= g.rank; ++k)
        if (std::find(g.generators.begin(), g.generators.end(), Word{{k}}) == g.generators.end())
          throw ParseError(std::string("generating set must contain the basis letter '") +
                               letter_name(k) + "'",
                           text.size());
    }
    spec.family = std::move(g);
  } else if (in.accept("zd:")) {
    const auto rank_pos = in.pos();
    const auto rank = in.integer();
    if (rank < 1) throw ParseError("lattice rank must be at least 1", rank_pos);
    if (rank > 16) throw ParseError("lattice rank exceeds 16", rank_pos);
    in.expect(":gens=");
    Lattice l;
    l.rank = static_cast<int>(rank);
    while (true) {
      const auto start = in.pos();
      const auto v = parse_vector(in);
      if (static_cast<std::int64_t>(v.coords.size()) != rank)
        throw ParseError("generator has dimension " + std::to_string(v.coords.size()) +
                             ", expected " + std::to_string(rank),
                         start);
      if (std::all_of(v.coords.begin(), v.coords.end(), [](auto c) { return c == 0; }))
        throw ParseError("zero vector is not a generator", start);
      l.generators.push_back(v);
      l.generators.push_back(negate(v));
      if (!in.accept(",")) break;
    }
    if (!in.done()) throw ParseError("unexpected trailing text", in.pos());
    std::sort(l.generators.begin(), l.generators.end());
    l.generators.erase(std::unique(l.generators.begin(), l.generators.end()), l.generators.end());
    if (!spans_full_lattice(l.rank, l.generators))
      throw ParseError("generators do not generate Z^" + std::to_string(rank), text.size());
    spec.family = std::move(l);
  } else {
    throw ParseError("expected 'free:' or 'zd:'", 0);
  }
  if (!in.done()) throw ParseError("unexpected trailing text", in.pos());
  return spec;
}

std::string to_string(const GroupSpec& spec) {
  if (spec.is_free()) {
    const auto& g = spec.free();
    std::string out = "free:" + std::to_string(g.rank);
    if (g.standard) return out;
    out += ":gens=";
    for (std::size_t i = 0; i < g.generators.size(); i += 2) {
      if (i) out += ',';
      out += to_string(GroupElement{g.generators[i]});
    }
    return out;
  }
  const auto& l = spec.lattice();
  std::string out = "zd:" + std::to_string(l.rank) + ":gens=";
  bool first = true;
  for (const auto& v : l.generators) {
    if (v < negate(v)) continue;  // list one of each ± pair
    if (!first) out += ',';
    first = false;
    out += to_string(GroupElement{v});
  }
  return out;
}

bool operator==(const GroupSpec& a, const GroupSpec& b) { return to_string(a) == to_string(b); }

bool is_hyperbolic(const GroupSpec& spec) { return spec.is_free() || spec.lattice().rank == 1; }

GroupElement identity(const GroupSpec& spec) {
  if (spec.is_free()) return Word{};
  return LatticeVector{std::vector<std::int64_t>(static_cast<std::size_t>(spec.rank()), 0)};
}

bool is_identity(const GroupElement& g) {
  if (const auto* w = std::get_if<Word>(&g)) return w->letters.empty();
  const auto& v = std::get<LatticeVector>(g);
  return std::all_of(v.coords.begin(), v.coords.end(), [](auto c) { return c == 0; });
}

void require_member(const GroupSpec& spec, const GroupElement& g) {
  if (spec.is_free()) {
    const auto* w = std::get_if<Word>(&g);
    if (!w) throw DomainError("lattice vector used with a free group spec");
    for (std::size_t i = 0; i < w->letters.size(); ++i) {
      if (w->letters[i] == 0 || std::abs(w->letters[i]) > spec.rank())
        throw DomainError("letter outside the free group rank");
      if (i && w->letters[i] == -w->letters[i - 1]) throw DomainError("word is not reduced");
    }
    return;
  }
  const auto* v = std::get_if<LatticeVector>(&g);
  if (!v) throw DomainError("word used with a lattice spec");
  if (static_cast<int>(v->coords.size()) != spec.rank())
    throw DomainError("vector dimension does not match lattice rank");
}

GroupElement act(const GroupSpec& spec, const GroupElement& g, const GroupElement& x) {
  require_member(spec, g);
  require_member(spec, x);
  if (spec.is_free()) return concat(std::get<Word>(g), std::get<Word>(x));
  LatticeVector out = std::get<LatticeVector>(x);
  const auto& a = std::get<LatticeVector>(g).coords;
  for (std::size_t i = 0; i < a.size(); ++i) out.coords[i] += a[i];
  return out;
}

GroupElement inverse(const GroupSpec& spec, const GroupElement& g) {
  require_member(spec, g);
  if (spec.is_free()) return invert(std::get<Word>(g));
  return negate(std::get<LatticeVector>(g));
}

GroupElement parse_element(const GroupSpec& spec, std::string_view text) {
  if (spec.is_free()) {
    std::size_t lead = 0;
    while (lead < text.size() && std::isspace(static_cast<unsigned char>(text[lead]))) ++lead;
    auto body = text.substr(lead);
    while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back())))
      body.remove_suffix(1);
    return parse_word(body, spec.rank(), lead);
  }
  Cursor in(text);
  const auto v = parse_vector(in);
  if (!in.done()) throw ParseError("unexpected trailing text", in.pos());
  if (static_cast<int>(v.coords.size()) != spec.rank())
    throw ParseError("vector dimension does not match lattice rank", 0);
  return v;
}

std::string to_string(const GroupElement& g) {
  if (const auto* w = std::get_if<Word>(&g)) {
    if (w->letters.empty()) return "e";
    std::string out;
    for (const auto l : w->letters) out += letter_name(l);
    return out;
  }
  const auto& v = std::get<LatticeVector>(g);
  std::string out = "(";
  for (std::size_t i = 0; i < v.coords.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v.coords[i]);
  }
  return out + ")";
}

std::vector<GroupElement> generators(const GroupSpec& spec) {
  std::vector<GroupElement> out;
  if (spec.is_free())
    for (const auto& w : spec.free().generators) out.emplace_back(w);
  else
    for (const auto& v : spec.lattice().generators) out.emplace_back(v);
  return out;
}

}  // namespace bscope
