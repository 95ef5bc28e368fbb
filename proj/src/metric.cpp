#include "bscope/metric.hpp"

#include "bscope/errors.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <limits>
#include <numeric>
#include <thread>

namespace bscope {

namespace {

constexpr std::int64_t kMaxNumerator = std::numeric_limits<std::int32_t>::max();

std::int32_t checked_numerator(std::int64_t value) {
  if (value < 0 || value > kMaxNumerator)
    throw ConstructionError("distance numerator out of range: " + std::to_string(value));
  return static_cast<std::int32_t>(value);
}

}  // namespace

MetricWindow MetricWindow::from_function(std::size_t size, PointId base, const DistanceFn& dist,
                                         Check check, std::vector<std::string> labels) {
  std::vector<Rational> upper;
  upper.reserve(size * (size + 1) / 2);
  std::int64_t den = 1;
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = i; j < size; ++j) {
      const Rational d = dist(i, j);
      if (i != j && dist(j, i) != d)
        throw ConstructionError("distance oracle is not symmetric at (" + std::to_string(i) +
                                "," + std::to_string(j) + ")");
      den = std::lcm(den, d.denominator());
      upper.push_back(d);
    }
  }
  MetricWindow w;
  w.size_ = size;
  w.base_ = base;
  w.denominator_ = den;
  w.labels_ = std::move(labels);
  w.numerators_.assign(size * size, 0);
  std::size_t k = 0;
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = i; j < size; ++j, ++k) {
      const Rational& d = upper[k];
      if (d < 0) throw ConstructionError("negative distance");
      const auto num = checked_numerator(d.numerator() * (den / d.denominator()));
      w.numerators_[i * size + j] = num;
      w.numerators_[j * size + i] = num;
    }
  }
  w.validate(check);
  return w;
}

MetricWindow MetricWindow::from_integer_function(std::size_t size, PointId base,
                                                 const IntegerDistanceFn& dist, Check check,
                                                 std::vector<std::string> labels) {
  MetricWindow w;
  w.size_ = size;
  w.base_ = base;
  w.labels_ = std::move(labels);
  w.numerators_.assign(size * size, 0);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = i; j < size; ++j) {
      const auto num = checked_numerator(dist(i, j));
      w.numerators_[i * size + j] = num;
      w.numerators_[j * size + i] = num;
    }
  }
  w.validate(check);
  return w;
}

MetricWindow MetricWindow::from_table(const std::vector<std::vector<Rational>>& table, PointId base,
                                      std::vector<std::string> labels) {
  for (const auto& row : table)
    if (row.size() != table.size()) throw ConstructionError("distance table is not square");
  return from_function(
      table.size(), base, [&](std::size_t i, std::size_t j) { return table[i][j]; }, Check::full,
      std::move(labels));
}

void MetricWindow::validate(Check check) const {
  if (size_ == 0) return;
  if (base_.index >= size_) throw ConstructionError("base point outside the window");
  if (!labels_.empty() && labels_.size() != size_)
    throw ConstructionError("label count does not match window size");
  for (std::uint32_t i = 0; i < size_; ++i) {
    if (scaled(i, i) != 0) throw ConstructionError("nonzero self-distance at " + std::to_string(i));
    for (std::uint32_t j = i + 1; j < size_; ++j)
      if (scaled(i, j) == 0)
        throw ConstructionError("distinct points at distance 0: " + std::to_string(i) + "," +
                                std::to_string(j));
  }
  if (check == Check::full) {
    for (std::uint32_t x = 0; x < size_; ++x)
      for (std::uint32_t y = 0; y < size_; ++y)
        for (std::uint32_t z = 0; z < size_; ++z)
          if (scaled(x, z) > scaled(x, y) + scaled(y, z))
            throw ConstructionError("triangle inequality fails at (" + std::to_string(x) + "," +
                                    std::to_string(y) + "," + std::to_string(z) + ")");
  }
}

void MetricWindow::require(PointId p) const {
  if (!contains(p)) throw DomainError("unknown point id " + std::to_string(p.index));
}

Rational MetricWindow::distance(PointId x, PointId y) const {
  require(x);
  require(y);
  return Rational(scaled(x.index, y.index), denominator_);
}

std::string MetricWindow::label(PointId p) const {
  require(p);
  return labels_.empty() ? std::to_string(p.index) : labels_[p.index];
}

HalfExact gromov_product(const MetricWindow& w, PointId x, PointId y) {
  const PointId o = w.base();
  return HalfExact::from_doubled(w.distance(x, o) + w.distance(y, o) - w.distance(x, y));
}

Rational horofunction(const MetricWindow& w, PointId z, PointId x) {
  return w.distance(x, w.base()) - w.distance(x, z);
}

Rational product_horofunction_gap(const MetricWindow& w, PointId x, PointId y, PointId z) {
  return gromov_product(w, x, y).value() - (horofunction(w, z, x) + horofunction(w, z, y)) / 2;
}

bool is_between(const MetricWindow& w, PointId x, PointId y, PointId z) {
  return w.distance(x, z) + w.distance(z, y) == w.distance(x, y);
}

HalfExact triple_defect(const MetricWindow& w, PointId x, PointId y, PointId z) {
  return std::min(gromov_product(w, x, z), gromov_product(w, y, z)) - gromov_product(w, x, y);
}

namespace {

struct RowBest {
  std::int64_t defect = 0;  // scaled doubled units
  std::uint32_t y = 0;
  std::uint32_t z = 0;
  bool found = false;
};

// Level sets {z : (x·z) ≥ level} as bitsets; a pair (x, y) has
// max_z min((x·z),(y·z)) ≥ level iff the two level sets intersect.
class LevelSets {
 public:
  LevelSets(std::size_t n, std::int64_t max_level)
      : n_(n), words_((n + 63) / 64), levels_(static_cast<std::size_t>(max_level)),
        bits_(n * levels_ * words_, 0) {}

  std::uint64_t* row(std::size_t x, std::int64_t level) {
    return bits_.data() + (x * levels_ + static_cast<std::size_t>(level - 1)) * words_;
  }
  const std::uint64_t* row(std::size_t x, std::int64_t level) const {
    return bits_.data() + (x * levels_ + static_cast<std::size_t>(level - 1)) * words_;
  }

  std::size_t words() const { return words_; }

  // First z in both level sets, or n when they are disjoint.
  std::size_t first_common(std::size_t x, std::size_t y, std::int64_t level) const {
    const auto* a = row(x, level);
    const auto* b = row(y, level);
    for (std::size_t k = 0; k < words_; ++k)
      if (const auto m = a[k] & b[k]; m != 0)
        return k * 64 + static_cast<std::size_t>(std::countr_zero(m));
    return n_;
  }

 private:
  std::size_t n_;
  std::size_t words_;
  std::size_t levels_;
  std::vector<std::uint64_t> bits_;
};

constexpr std::int64_t kMaxLevels = 4096;
constexpr std::size_t kMaxBitsetBytes = std::size_t{1} << 30;

template <class RowFn>
std::vector<RowBest> scan_rows(std::size_t n, unsigned threads, RowFn&& row_fn) {
  std::vector<RowBest> rows(n);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, n)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t x = next++; x < n; x = next++) rows[x] = row_fn(x);
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return rows;
}

}  // namespace

DeltaReport min_delta(const MetricWindow& w, unsigned threads) {
  const std::size_t n = w.size();
  if (n <= 1) return {};
  const std::uint32_t base = w.base().index;
  std::vector<std::int64_t> to_base(n);
  for (std::uint32_t i = 0; i < n; ++i) to_base[i] = w.scaled(i, base);
  auto product = [&](std::uint32_t i, std::uint32_t j) {
    return to_base[i] + to_base[j] - w.scaled(i, j);
  };

  std::int64_t lo_value = std::numeric_limits<std::int64_t>::max();
  std::int64_t hi_value = std::numeric_limits<std::int64_t>::min();
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i; j < n; ++j) {
      const auto p = product(i, j);
      lo_value = std::min(lo_value, p);
      hi_value = std::max(hi_value, p);
    }

  const std::size_t words = (n + 63) / 64;
  const bool use_bitsets = lo_value >= 0 && hi_value <= kMaxLevels && hi_value >= 1 &&
                           n * static_cast<std::size_t>(hi_value) * words * 8 <= kMaxBitsetBytes;

  std::vector<RowBest> rows;
  if (use_bitsets) {
    LevelSets sets(n, hi_value);
    for (std::uint32_t x = 0; x < n; ++x) {
      for (std::uint32_t z = 0; z < n; ++z) {
        const auto p = product(x, z);
        if (p >= 1) sets.row(x, p)[z / 64] |= std::uint64_t{1} << (z % 64);
      }
      for (std::int64_t level = hi_value - 1; level >= 1; --level) {
        auto* dst = sets.row(x, level);
        const auto* src = sets.row(x, level + 1);
        for (std::size_t k = 0; k < words; ++k) dst[k] |= src[k];
      }
    }
    rows = scan_rows(n, threads, [&](std::size_t xs) {
      const auto x = static_cast<std::uint32_t>(xs);
      RowBest best;
      for (std::uint32_t y = x; y < n; ++y) {
        const auto p = product(x, y);
        std::int64_t lo = p + best.defect + 1;
        if (lo < 1) lo = 1;
        if (lo > hi_value || sets.first_common(x, y, lo) == n) continue;
        std::int64_t hi = hi_value;
        while (lo < hi) {  // largest level with a common point
          const std::int64_t mid = lo + (hi - lo + 1) / 2;
          if (sets.first_common(x, y, mid) != n) lo = mid;
          else hi = mid - 1;
        }
        best = {lo - p, y, static_cast<std::uint32_t>(sets.first_common(x, y, lo)), true};
      }
      return best;
    });
  } else {
    rows = scan_rows(n, threads, [&](std::size_t xs) {
      const auto x = static_cast<std::uint32_t>(xs);
      RowBest best;
      for (std::uint32_t y = x; y < n; ++y) {
        const auto p = product(x, y);
        for (std::uint32_t z = 0; z < n; ++z) {
          const auto d = std::min(product(x, z), product(y, z)) - p;
          if (d > best.defect) best = {d, y, z, true};
        }
      }
      return best;
    });
  }

  DeltaReport report;
  std::int64_t best = 0;
  for (std::uint32_t x = 0; x < n; ++x) {
    const auto& r = rows[x];
    if (r.found && r.defect > best) {
      best = r.defect;
      report.witness = Triple{PointId{x}, PointId{r.y}, PointId{r.z}};
    }
  }
  report.delta = HalfExact::from_doubled(Rational(best, w.denominator()));
  return report;
}

}  // namespace bscope
