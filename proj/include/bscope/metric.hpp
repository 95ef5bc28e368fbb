#pragma once

// Exact metric windows: finite point sets with a total distance oracle and a
// base point. Distances are stored as integer numerators over one common
// denominator so every derived quantity stays exact.

#include "bscope/rational.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace bscope {

struct PointId {
  std::uint32_t index = 0;
  auto operator<=>(const PointId&) const = default;
};

class MetricWindow {
 public:
  using DistanceFn = std::function<Rational(std::size_t, std::size_t)>;
  using IntegerDistanceFn = std::function<std::int64_t(std::size_t, std::size_t)>;

  /// `basic` checks zero diagonal, positivity and symmetry (quadratic);
  /// `full` adds the triangle inequality over all triples (cubic).
  enum class Check { basic, full };

  MetricWindow() = default;

  static MetricWindow from_function(std::size_t size, PointId base, const DistanceFn& dist,
                                    Check check = Check::full,
                                    std::vector<std::string> labels = {});

  static MetricWindow from_integer_function(std::size_t size, PointId base,
                                            const IntegerDistanceFn& dist,
                                            Check check = Check::full,
                                            std::vector<std::string> labels = {});

  static MetricWindow from_table(const std::vector<std::vector<Rational>>& table, PointId base,
                                 std::vector<std::string> labels = {});

  std::size_t size() const noexcept { return size_; }
  PointId base() const noexcept { return base_; }
  bool contains(PointId p) const noexcept { return p.index < size_; }

  /// Throws DomainError for ids outside the window.
  Rational distance(PointId x, PointId y) const;

  /// Label of a point, or its index when no labels were given.
  std::string label(PointId p) const;

  // Raw access for scans: distance(x, y) == scaled(x, y) / denominator().
  std::int64_t scaled(std::uint32_t x, std::uint32_t y) const noexcept {
    return numerators_[static_cast<std::size_t>(x) * size_ + y];
  }
  std::int64_t denominator() const noexcept { return denominator_; }

 private:
  void validate(Check check) const;
  void require(PointId p) const;

  std::size_t size_ = 0;
  PointId base_{};
  std::int64_t denominator_ = 1;
  std::vector<std::int32_t> numerators_;
  std::vector<std::string> labels_;
};

/// (x·y) = ½(d(x,0) + d(y,0) − d(x,y)) with the window's base as 0.
HalfExact gromov_product(const MetricWindow& w, PointId x, PointId y);

/// φ_z(x) = d(x,0) − d(x,z).
Rational horofunction(const MetricWindow& w, PointId z, PointId x);

/// (x·y) − ½(φ_z(x) + φ_z(y)); zero exactly when z is between x and y.
Rational product_horofunction_gap(const MetricWindow& w, PointId x, PointId y, PointId z);

/// d(x,z) + d(z,y) == d(x,y).
bool is_between(const MetricWindow& w, PointId x, PointId y, PointId z);

struct Triple {
  PointId x, y, z;
  auto operator<=>(const Triple&) const = default;
};

struct DeltaReport {
  HalfExact delta;
  std::optional<Triple> witness;  // present iff delta > 0
};

/// Smallest δ ≥ 0 with (x·y) ≥ min{(x·z),(y·z)} − δ over all triples.
/// The witness is the lexicographically smallest triple attaining δ, so the
/// result does not depend on `threads`.
DeltaReport min_delta(const MetricWindow& w, unsigned threads = 0);

/// Defect min{(x·z),(y·z)} − (x·y) of a single triple.
HalfExact triple_defect(const MetricWindow& w, PointId x, PointId y, PointId z);

}  // namespace bscope
