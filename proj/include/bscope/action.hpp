#pragma once

// The left action on boundary samples, its equivariance at certificate
// level, and a numerical probe of approximate invariant means built from
// uniform measures on canonical geodesics.

#include "bscope/boundary.hpp"

#include <map>

namespace bscope {

/// Pointwise g·x_n. Leading points that are the identity or whose norm does
/// not increase to the next point are dropped so norms increase again.
BoundarySample act_on_sample(const GroupElement& g, const BoundarySample& s, const WordMetric& metric);

struct EquivarianceReport {
  DivergenceCertificate before;        // (a_n · b_n) at threshold M
  DivergenceCertificate after;         // (g a_n · g b_n) at threshold M − |g|
  std::int64_t shift = 0;              // |g|
  std::size_t dropped = 0;             // leading indices dropped from both translates
  bool base_change_identity = false;   // (g a_n · g b_n)_{g} == (a_n · b_n)_e for every n
  bool shift_within_bound = false;     // D'(N) ≥ D(N + dropped) − |g| for every N
  bool pass = false;
};

EquivarianceReport equivariance_check(const GroupElement& g, const BoundarySample& a,
                                      const BoundarySample& b, const Rational& threshold,
                                      const WordMetric& metric);

/// Gromov product based at `base`: ½(d(x,base) + d(y,base) − d(x,y)).
HalfExact product_based_at(const WordMetric& metric, const GroupElement& base,
                           const GroupElement& x, const GroupElement& y);

/// Finitely supported probability measure with exact weights summing to 1.
class ProbabilityMeasure {
 public:
  explicit ProbabilityMeasure(std::map<GroupElement, Rational> weights);

  /// Uniform on the given distinct points.
  static ProbabilityMeasure uniform(const std::vector<GroupElement>& support);

  const std::map<GroupElement, Rational>& weights() const noexcept { return weights_; }
  Rational weight(const GroupElement& g) const;
  Rational total() const;

 private:
  std::map<GroupElement, Rational> weights_;
};

ProbabilityMeasure pushforward(const GroupSpec& spec, const GroupElement& g,
                               const ProbabilityMeasure& mu);

/// ℓ1 distance Σ_h |mu(h) − nu(h)|, in [0, 2].
Rational tv_distance(const ProbabilityMeasure& mu, const ProbabilityMeasure& nu);

/// α_g ω as a ray spec. Free tails are reduced and put in canonical form.
/// Explicit tables have no canonical form and throw DomainError.
RaySpec translate_ray(const GroupSpec& spec, const GroupElement& g, const RaySpec& omega);

/// Shortest prefix and primitive period describing the same infinite word.
FreeTail canonical_tail(FreeTail tail);

/// γ(0..count) of the canonical geodesic from e toward ω. Free groups use the
/// reduced infinite word; lattices concatenate lexicographically smallest
/// geodesic words from e to the offset and then along each direction period.
std::vector<GroupElement> canonical_geodesic(const GroupSpec& spec, const RaySpec& omega,
                                             std::size_t count, const WordMetric& metric);

/// Uniform measure on γ(1..n), or on γ(0..n-1) when `inclusive`.
ProbabilityMeasure mean_measure(const GroupSpec& spec, const RaySpec& omega, std::size_t n,
                                const WordMetric& metric, bool inclusive = false);

/// ‖g·m_n(ω) − m_n(α_g ω)‖₁.
Rational mean_defect(const GroupSpec& spec, const GroupElement& g, const RaySpec& omega,
                     std::size_t n, const WordMetric& metric, bool inclusive = false);

struct DefectEntry {
  GroupElement g;
  RaySpec omega;
  std::size_t n = 0;
  Rational defect;
  bool within_bound = false;  // defect ≤ 2|g|/n
};

struct DefectScan {
  std::vector<DefectEntry> entries;
  std::vector<std::pair<std::size_t, Rational>> max_by_n;
  std::int64_t constant = 0;  // smallest integer C with defect ≤ C/n everywhere
  bool within_bound = false;  // every entry satisfies defect ≤ 2|g|/n
  std::size_t pairs_covered = 0;
};

DefectScan defect_decay_scan(const GroupSpec& spec, const std::vector<GroupElement>& gens,
                             const std::vector<RaySpec>& omegas,
                             const std::vector<std::size_t>& n_values, const WordMetric& metric,
                             bool inclusive = false);

}  // namespace bscope
