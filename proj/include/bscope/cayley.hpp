#pragma once

// Group specifications (free groups and integer lattices), their elements,
// and the Cayley-ball machinery built on top of the word metric.

#include "bscope/metric.hpp"

#include <compare>
#include <memory>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace bscope {

/// Reduced free-group word. Letter k > 0 is the k-th generator, -k its inverse.
struct Word {
  std::vector<std::int32_t> letters;
  auto operator<=>(const Word&) const = default;
  std::size_t length() const noexcept { return letters.size(); }
};

struct LatticeVector {
  std::vector<std::int64_t> coords;
  auto operator<=>(const LatticeVector&) const = default;
};

using GroupElement = std::variant<Word, LatticeVector>;

/// Free group of the given rank. `generators` is the symmetric generating set
/// used by the word metric; for the standard basis it is a, A, b, B, ...
struct FreeGroup {
  int rank = 0;
  std::vector<Word> generators;
  bool standard = true;
};

/// Z^rank with a finite symmetric generating set, sorted lexicographically.
struct Lattice {
  int rank = 0;
  std::vector<LatticeVector> generators;
};

struct GroupSpec {
  std::variant<FreeGroup, Lattice> family;

  bool is_free() const noexcept { return std::holds_alternative<FreeGroup>(family); }
  bool is_lattice() const noexcept { return std::holds_alternative<Lattice>(family); }
  const FreeGroup& free() const { return std::get<FreeGroup>(family); }
  const Lattice& lattice() const { return std::get<Lattice>(family); }
  int rank() const;
};

/// Grammar:
///   free:<k>                      standard basis of F_k
///   free:<k>:gens=<w1>,<w2>,...   words over the letters; inverses added
///   zd:<d>:gens=(v1),(v2),...     integer vectors; negations added
/// Lattice generators must generate all of Z^d; free generating sets must
/// contain every basis letter (up to inversion).
GroupSpec parse_group_spec(std::string_view text);

/// Canonical text that parses back to the same spec.
std::string to_string(const GroupSpec& spec);

bool operator==(const GroupSpec& a, const GroupSpec& b);

/// Free groups and rank-1 lattices; higher-rank lattices are not hyperbolic.
bool is_hyperbolic(const GroupSpec& spec);

/// Letter names skip 'e', which is reserved for the identity.
char letter_name(std::int32_t letter);

GroupElement identity(const GroupSpec& spec);
bool is_identity(const GroupElement& g);

/// Left product g·x, reduced. Throws DomainError on spec mismatch.
GroupElement act(const GroupSpec& spec, const GroupElement& g, const GroupElement& x);
GroupElement inverse(const GroupSpec& spec, const GroupElement& g);

/// Throws DomainError unless `g` belongs to `spec`'s family and dimension.
void require_member(const GroupSpec& spec, const GroupElement& g);

GroupElement parse_element(const GroupSpec& spec, std::string_view text);
std::string to_string(const GroupElement& g);

/// Free reduction of an arbitrary letter sequence.
Word reduce(std::vector<std::int32_t> letters);
Word concat(const Word& u, const Word& v);

/// Generators of the spec in their fixed order.
std::vector<GroupElement> generators(const GroupSpec& spec);

/// Exact word metric |x⁻¹y| on a spec, answering queries up to `radius`.
/// Standard free groups use the reduced length; every other family uses a
/// BFS table. Queries beyond the radius throw OutOfWindowError.
class WordMetric {
 public:
  static constexpr std::size_t kDefaultCap = 5'000'000;

  WordMetric(GroupSpec spec, std::int64_t radius, std::size_t cap = kDefaultCap);

  const GroupSpec& spec() const noexcept { return spec_; }
  std::int64_t radius() const noexcept { return radius_; }

  std::int64_t norm(const GroupElement& g) const;
  std::int64_t distance(const GroupElement& x, const GroupElement& y) const;

  /// Gromov product with base e.
  HalfExact product(const GroupElement& x, const GroupElement& y) const;
  /// φ_z(x) = |x| − d(x, z).
  std::int64_t horofunction(const GroupElement& z, const GroupElement& x) const;

  /// Smallest power-of-two radius ≥ `minimum` whose table covers every
  /// element of `elements` with `slack` to spare, i.e. radius ≥ 2·max|g| + slack.
  static WordMetric covering(const GroupSpec& spec, const std::vector<GroupElement>& elements,
                             std::int64_t slack, std::size_t cap = kDefaultCap);

 private:
  struct Table;

  GroupSpec spec_;
  std::int64_t radius_;
  std::shared_ptr<const Table> table_;
};

struct CayleyBall {
  GroupSpec spec;
  std::int64_t radius = 0;
  std::vector<GroupElement> elements;  // BFS order, elements[0] == e
  std::vector<std::int64_t> norms;
};

/// Exact BFS ball. Throws ResourceError when the ball would exceed `cap`.
CayleyBall build_ball(const GroupSpec& spec, std::int64_t radius,
                      std::size_t cap = WordMetric::kDefaultCap);

std::int64_t word_norm(const GroupSpec& spec, const GroupElement& g, std::int64_t radius);

/// All elements of norm exactly r, in BFS order.
std::vector<GroupElement> sphere(const CayleyBall& ball, std::int64_t r);

/// d(x,z) + d(z,y) == d(x,y).
bool on_geodesic(const WordMetric& metric, const GroupElement& x, const GroupElement& y,
                 const GroupElement& z);

/// The ball as a metric window based at e; distances from `metric`.
MetricWindow window_from_ball(const CayleyBall& ball, const WordMetric& metric);
MetricWindow window_from_ball(const CayleyBall& ball);

/// Number of elements of the standard-basis free-group ball, saturating.
std::size_t free_ball_size(int rank, std::int64_t radius);

}  // namespace bscope
