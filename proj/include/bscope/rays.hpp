#pragma once

// Finite truncations γ: T → X of rays and their classification as
// geodesic, almost-geodesic or weakly-geodesic.
//
// Truncation rule: a clause passes when some integer N ≤ horizon/2 makes its
// inequality hold on every sampled parameter in [N, horizon]; it fails when
// every such N still has a violation beyond it.

#include "bscope/cayley.hpp"
#include "bscope/rational.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace bscope {

/// prefix·period^∞ in a free group; the parameter of a word w is |w|.
struct FreeTail {
  Word prefix;
  Word period;
};

enum class LatticeMode {
  staircase,  // unit steps, coordinates visited round-robin; t counts steps
  straight,   // γ(t) = offset + t·direction
};

struct LatticePath {
  LatticeVector offset;
  LatticeVector direction;
  LatticeMode mode = LatticeMode::staircase;
};

struct ExplicitTable {
  std::vector<std::pair<Rational, GroupElement>> entries;
};

using RaySpec = std::variant<FreeTail, LatticePath, ExplicitTable>;

/// `free:<prefix>|<period>` or `lattice:offset=(..);dir=(..)[;mode=straight]`,
/// optionally preceded by `ray=`. Explicit tables come from JSON instead.
RaySpec parse_ray_spec(const GroupSpec& spec, std::string_view text);
std::string to_string(const RaySpec& ray);

/// Validates a FreeTail against junction cancellation; throws ConstructionError.
void validate_ray(const GroupSpec& spec, const RaySpec& ray);

struct RaySample {
  Rational t;
  GroupElement point;
  bool operator==(const RaySample&) const = default;
};

struct RayTruncation {
  RaySpec origin;
  Rational horizon;  // last sampled parameter
  std::vector<RaySample> samples;
};

/// Deterministic truncation up to `horizon`. FreeTail and LatticePath sample
/// every integer parameter 0..horizon; explicit tables keep entries ≤ horizon.
RayTruncation materialize_ray(const GroupSpec& spec, const RaySpec& ray, Rational horizon);

enum class Clause { geodesic, almost_geodesic, weakly_geodesic };

std::string to_string(Clause c);

struct ClauseWitness {
  Rational t;
  Rational s;
  std::optional<GroupElement> probe;  // weakly-geodesic second inequality only
  int inequality = 1;                 // 1 or 2 for the weakly-geodesic clause
  Rational defect;
};

struct ClassificationReport {
  Clause clause = Clause::geodesic;
  std::optional<Rational> epsilon;
  bool pass = false;
  std::optional<std::int64_t> threshold;  // minimal N on pass
  std::optional<ClauseWitness> witness;   // violation blocking every N ≤ horizon/2 on fail
  Rational max_defect{0};                 // over all sampled pairs
  Rational tail_defect{0};                // over pairs with parameters ≥ floor(horizon/2)
};

ClassificationReport check_geodesic(const RayTruncation& ray, const WordMetric& metric);

ClassificationReport check_almost_geodesic(const RayTruncation& ray, const Rational& epsilon,
                                           const WordMetric& metric);

ClassificationReport check_weakly_geodesic(const RayTruncation& ray, const Rational& epsilon,
                                           const std::vector<GroupElement>& probes,
                                           const WordMetric& metric);

/// The sphere of radius 2 about e.
std::vector<GroupElement> default_ray_probes(const GroupSpec& spec);

/// Re-checks a report against the samples without reusing the scan: on pass,
/// the clause holds beyond N and (for N > 0) fails beyond N − 1; on fail, the
/// witness violates the clause and sits beyond floor(horizon/2).
bool replay_classification(const ClassificationReport& report, const RayTruncation& ray,
                           const WordMetric& metric, const std::vector<GroupElement>& probes = {});

}  // namespace bscope
