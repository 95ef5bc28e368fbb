#pragma once

// Finite-scale boundary machinery: divergence certificates for Gromov
// convergence and equivalence, horofunction profiles for the metric boundary,
// the sphere-recurrence witness for large horofunction values, the quotient
// partition of samples, extended products and the continuity probe.
//
// Sample indices are 1-based: points()[n - 1] is x_n. Every "→ ∞" claim is a
// DivergenceCertificate D(N) = min over the sampled tail of the quantity,
// passing at threshold M iff D(N) ≥ M for some N ≤ H/2.

#include "bscope/cayley.hpp"
#include "bscope/rational.hpp"
#include "bscope/rays.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bscope {

class BoundarySample {
 public:
  /// Consecutive duplicates are dropped; the remaining norms must be strictly
  /// increasing. Throws ConstructionError otherwise.
  BoundarySample(const WordMetric& metric, std::vector<GroupElement> points, std::string label);

  const GroupSpec& spec() const noexcept { return spec_; }
  const std::vector<GroupElement>& points() const noexcept { return points_; }
  const std::vector<std::int64_t>& norms() const noexcept { return norms_; }
  const std::string& label() const noexcept { return label_; }
  std::size_t horizon() const noexcept { return points_.size(); }
  const GroupElement& at(std::size_t n) const { return points_.at(n - 1); }

 private:
  GroupSpec spec_;
  std::vector<GroupElement> points_;
  std::vector<std::int64_t> norms_;
  std::string label_;
};

/// x_n = γ(t_n) for the sampled parameters t_n > 0.
BoundarySample sample_from_ray(const RayTruncation& ray, const WordMetric& metric, std::string label);

struct DivergenceCertificate {
  std::string quantity;
  std::vector<HalfExact> values;  // values[N - 1] == D(N), N = 1..H
  HalfExact threshold;
  bool pass = false;
  std::optional<std::size_t> first_passing;  // smallest N ≤ H/2 with D(N) ≥ M
};

/// Builds the certificate from per-index tail minima already computed.
DivergenceCertificate make_certificate(std::string quantity, std::vector<HalfExact> values,
                                       const Rational& threshold);

/// Certificate over (x_n · x_k), n, k ≥ N.
DivergenceCertificate converges_to_infinity(const BoundarySample& s, const Rational& threshold,
                                            const WordMetric& metric);

/// Certificate over (a_n · b_n), n ≥ N; with `double_index`, over (a_n · b_k), n, k ≥ N.
/// Both samples must pass converges_to_infinity at the threshold.
DivergenceCertificate gromov_equiv(const BoundarySample& a, const BoundarySample& b,
                                   const Rational& threshold, const WordMetric& metric,
                                   bool double_index = false);

struct ProbeProfile {
  GroupElement probe;
  std::vector<std::int64_t> values;  // φ_z(x_n), n = 1..H
  std::size_t stabilization_index = 0;
  bool stable = false;  // stabilization_index ≤ H/2
  Rational value{0};    // stabilized value when stable
};

struct HorofunctionProfile {
  std::vector<ProbeProfile> probes;
  std::vector<GroupElement> unstable() const;
};

/// A probe is stable when φ_z(x_n) is constant from its stabilization index
/// on and that index is at most H/2. Word metrics are integer-valued, so
/// stabilization is exact and `tol` (which must be ≥ 0) has no effect.
HorofunctionProfile horofunction_profile(const BoundarySample& s,
                                         const std::vector<GroupElement>& probes,
                                         const Rational& tol, const WordMetric& metric);

enum class Verdict { pass, fail, inconclusive };
std::string to_string(Verdict v);

struct MetricEquivRow {
  GroupElement probe;
  std::optional<Rational> value_a;
  std::optional<Rational> value_b;
  std::optional<Rational> difference;
};

struct MetricEquivReport {
  Verdict verdict = Verdict::inconclusive;  // pass == equivalent
  std::vector<MetricEquivRow> rows;
  std::vector<GroupElement> unstable_probes;
};

MetricEquivReport metric_equiv(const BoundarySample& a, const BoundarySample& b,
                               const std::vector<GroupElement>& probes, const Rational& tol,
                               const WordMetric& metric);

struct HorofunctionWitness {
  bool found = false;
  std::int64_t sphere_radius = 0;        // r, smallest integer > N + ε
  GroupElement z;                        // recurring sphere point
  std::vector<std::size_t> indices;      // every n with z on a geodesic [0, x_n]
  std::int64_t bound = 0;                // φ_z(x_n) on those indices, equal to r
  std::size_t recurrences_in_tail = 0;   // among the last floor(H/2) indices
  std::size_t tail_length = 0;
};

/// Sphere-recurrence construction: among points of S(0, r) lying on a
/// geodesic from 0 to x_n, pick the one recurring most often in the last
/// floor(H/2) indices (ties: first in BFS order). Found iff it recurs for at
/// least half of them.
HorofunctionWitness witness_large_horofunction(const BoundarySample& s, const Rational& height,
                                               const Rational& epsilon, const WordMetric& metric);

struct PairVerdict {
  std::size_t a = 0;
  std::size_t b = 0;
};

struct TransitivityViolation {
  std::size_t x = 0;  // x ∼ z and y ∼ z pass, x ∼ y fails
  std::size_t y = 0;
  std::size_t z = 0;
};

struct QuotientPartition {
  std::vector<std::string> labels;
  std::vector<std::vector<std::optional<DivergenceCertificate>>> pairwise;  // i < j filled
  bool hyperbolic = false;
  bool partitioned = false;
  std::vector<std::vector<std::size_t>> classes;
  std::vector<PairVerdict> refinement_violations;  // metric-equivalent but certificate fails
  std::vector<PairVerdict> metric_inconclusive;
  std::vector<TransitivityViolation> transitivity_violations;

  bool passes(std::size_t i, std::size_t j) const;
};

QuotientPartition quotient_partition(const std::vector<BoundarySample>& samples,
                                     const Rational& threshold,
                                     const std::vector<GroupElement>& probes, const Rational& tol,
                                     const WordMetric& metric);

struct ExtendedProduct {
  HalfExact value;                 // tail minimum at N = floor(H/2)
  std::vector<HalfExact> tail_minima;  // T(N), N = 1..H
  bool tail_constant = false;      // T(N) == T(H) from N = floor(H/2) on
  bool exact = false;              // point-point case
};

/// liminf over the supplied representatives only. This is an upper bound of
/// the infimum over all representatives and a lower certificate for divergence.
ExtendedProduct extended_product(const BoundarySample& a, const BoundarySample& b,
                                 const WordMetric& metric);
ExtendedProduct extended_product(const BoundarySample& a, const GroupElement& y,
                                 const WordMetric& metric);
ExtendedProduct extended_product(const GroupElement& x, const GroupElement& y,
                                 const WordMetric& metric);

struct ContinuityRow {
  std::string label;
  std::int64_t agreement_radius = 0;
  ExtendedProduct product;
};

/// Probes are the ball of `probe_radius`; the agreement radius of ω_j is the
/// largest r ≤ probe_radius such that both profiles are stable and equal on
/// every probe of norm ≤ r.
std::vector<ContinuityRow> continuity_probe(const std::vector<BoundarySample>& omegas,
                                            const BoundarySample& omega,
                                            std::int64_t probe_radius, const Rational& threshold,
                                            const WordMetric& metric);

/// The ball of radius min(radius, 6), the default probe set.
std::vector<GroupElement> default_probes(const GroupSpec& spec, std::int64_t radius);

}  // namespace bscope
