#include "bscope/action.hpp"

#include "bscope/errors.hpp"

#include <algorithm>

namespace bscope {

namespace {

void require_same(const GroupSpec& a, const GroupSpec& b) {
  if (!(a == b)) throw DomainError("spec mismatch: " + to_string(a) + " vs " + to_string(b));
}

std::vector<GroupElement> translate_points(const GroupSpec& spec, const GroupElement& g,
                                           const std::vector<GroupElement>& pts) {
  std::vector<GroupElement> out;
  out.reserve(pts.size());
  for (const auto& x : pts) out.push_back(act(spec, g, x));
  return out;
}

std::size_t leading_drop(const std::vector<GroupElement>& pts, const WordMetric& metric) {
  std::size_t k = 0;
  while (k < pts.size()) {
    const auto nk = metric.norm(pts[k]);
    if (nk == 0) { ++k; continue; }
    if (k + 1 < pts.size() && nk >= metric.norm(pts[k + 1])) { ++k; continue; }
    break;
  }
  return k;
}

Word power_tail(const Word& prefix, const Word& period, std::size_t copies) {
  Word w = prefix;
  for (std::size_t i = 0; i < copies; ++i)
    w.letters.insert(w.letters.end(), period.letters.begin(), period.letters.end());
  return w;
}

bool ends_with(const std::vector<std::int32_t>& w, const std::vector<std::int32_t>& tail) {
  return w.size() >= tail.size() && std::equal(tail.begin(), tail.end(), w.end() - static_cast<std::ptrdiff_t>(tail.size()));
}

LatticeVector add(const LatticeVector& a, const LatticeVector& b) {
  LatticeVector out = a;
  for (std::size_t i = 0; i < out.coords.size(); ++i) out.coords[i] += b.coords[i];
  return out;
}

// Vertices after `from` on the lexicographically smallest geodesic word to `to`.
void append_normal_form(const Lattice& lat, const WordMetric& metric, const LatticeVector& from,
                        const LatticeVector& to, std::vector<GroupElement>& out) {
  LatticeVector p = from;
  auto left = metric.distance(p, to);
  while (left > 0) {
    bool moved = false;
    for (const auto& s : lat.generators) {
      auto q = add(p, s);
      if (metric.distance(q, to) == left - 1) {
        p = std::move(q);
        --left;
        out.push_back(p);
        moved = true;
        break;
      }
    }
    if (!moved) throw ConstructionError("no geodesic step found");
  }
}

}  // namespace

BoundarySample act_on_sample(const GroupElement& g, const BoundarySample& s, const WordMetric& metric) {
  require_same(s.spec(), metric.spec());
  require_member(s.spec(), g);
  auto pts = translate_points(s.spec(), g, s.points());
  const auto k = leading_drop(pts, metric);
  pts.erase(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(k));
  return BoundarySample(metric, std::move(pts), to_string(g) + "." + s.label());
}

HalfExact product_based_at(const WordMetric& metric, const GroupElement& base,
                           const GroupElement& x, const GroupElement& y) {
  const auto dx = metric.distance(x, base);
  const auto dy = metric.distance(y, base);
  const auto dxy = metric.distance(x, y);
  return HalfExact::from_doubled(Rational(dx + dy - dxy));
}

EquivarianceReport equivariance_check(const GroupElement& g, const BoundarySample& a,
                                      const BoundarySample& b, const Rational& threshold,
                                      const WordMetric& metric) {
  require_same(a.spec(), b.spec());
  require_same(a.spec(), metric.spec());
  require_member(a.spec(), g);
  const auto& spec = a.spec();

  EquivarianceReport r;
  r.before = gromov_equiv(a, b, threshold, metric);
  if (!r.before.pass)
    throw PreconditionError("samples '" + a.label() + "' and '" + b.label() +
                            "' are not equivalent at the threshold");
  r.shift = metric.norm(g);

  const auto h = std::min(a.horizon(), b.horizon());
  std::vector<GroupElement> pa(a.points().begin(), a.points().begin() + static_cast<std::ptrdiff_t>(h));
  std::vector<GroupElement> pb(b.points().begin(), b.points().begin() + static_cast<std::ptrdiff_t>(h));
  auto ta = translate_points(spec, g, pa);
  auto tb = translate_points(spec, g, pb);
  r.dropped = std::max(leading_drop(ta, metric), leading_drop(tb, metric));

  r.base_change_identity = true;
  for (std::size_t n = 0; n < h; ++n) {
    if (product_based_at(metric, g, ta[n], tb[n]) != metric.product(pa[n], pb[n])) {
      r.base_change_identity = false;
      break;
    }
  }

  const auto off = static_cast<std::ptrdiff_t>(r.dropped);
  BoundarySample sa(metric, std::vector<GroupElement>(ta.begin() + off, ta.end()), to_string(g) + "." + a.label());
  BoundarySample sb(metric, std::vector<GroupElement>(tb.begin() + off, tb.end()), to_string(g) + "." + b.label());
  r.after = gromov_equiv(sa, sb, threshold - Rational(r.shift), metric);

  const auto shift = HalfExact::from_value(Rational(r.shift));
  r.shift_within_bound = true;
  for (std::size_t i = 0; i < r.after.values.size(); ++i) {
    const auto j = i + r.dropped;
    if (j >= r.before.values.size()) break;
    if (r.after.values[i] < r.before.values[j] - shift) {
      r.shift_within_bound = false;
      break;
    }
  }
  r.pass = r.after.pass && r.base_change_identity && r.shift_within_bound;
  return r;
}

ProbabilityMeasure::ProbabilityMeasure(std::map<GroupElement, Rational> weights) {
  Rational sum{0};
  for (auto& [g, w] : weights) {
    if (w < 0) throw DomainError("negative weight at " + to_string(g));
    sum += w;
    if (w != Rational(0)) weights_.emplace(g, w);
  }
  if (sum != Rational(1)) throw DomainError("weights sum to " + to_string(sum) + ", not 1");
}

ProbabilityMeasure ProbabilityMeasure::uniform(const std::vector<GroupElement>& support) {
  if (support.empty()) throw DomainError("uniform measure on an empty set");
  std::map<GroupElement, Rational> w;
  const Rational each(1, static_cast<std::int64_t>(support.size()));
  for (const auto& g : support) {
    if (!w.emplace(g, each).second) throw DomainError("repeated point " + to_string(g));
  }
  return ProbabilityMeasure(std::move(w));
}

Rational ProbabilityMeasure::weight(const GroupElement& g) const {
  auto it = weights_.find(g);
  return it == weights_.end() ? Rational(0) : it->second;
}

Rational ProbabilityMeasure::total() const {
  Rational sum{0};
  for (const auto& [g, w] : weights_) sum += w;
  return sum;
}

ProbabilityMeasure pushforward(const GroupSpec& spec, const GroupElement& g,
                               const ProbabilityMeasure& mu) {
  require_member(spec, g);
  std::map<GroupElement, Rational> out;
  for (const auto& [h, w] : mu.weights()) out.emplace(act(spec, g, h), w);
  return ProbabilityMeasure(std::move(out));
}

Rational tv_distance(const ProbabilityMeasure& mu, const ProbabilityMeasure& nu) {
  Rational sum{0};
  for (const auto& [h, w] : mu.weights()) sum += abs(w - nu.weight(h));
  for (const auto& [h, w] : nu.weights())
    if (!mu.weights().contains(h)) sum += w;
  return sum;
}

FreeTail canonical_tail(FreeTail tail) {
  auto& q = tail.period.letters;
  for (std::size_t d = 1; d <= q.size(); ++d) {
    if (q.size() % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < q.size() && ok; ++i) ok = q[i] == q[i - d];
    if (ok) {
      q.resize(d);
      break;
    }
  }
  auto& p = tail.prefix.letters;
  while (!q.empty() && ends_with(p, q)) p.resize(p.size() - q.size());
  while (!p.empty() && p.back() == q.back()) {
    std::rotate(q.rbegin(), q.rbegin() + 1, q.rend());
    p.pop_back();
  }
  return tail;
}

RaySpec translate_ray(const GroupSpec& spec, const GroupElement& g, const RaySpec& omega) {
  require_member(spec, g);
  validate_ray(spec, omega);
  if (const auto* tail = std::get_if<FreeTail>(&omega)) {
    const auto& gw = std::get<Word>(g);
    const auto copies = (gw.length() + 1) / tail->period.length() + 2;
    auto w = concat(gw, power_tail(tail->prefix, tail->period, copies));
    return canonical_tail(FreeTail{w, tail->period});
  }
  if (const auto* path = std::get_if<LatticePath>(&omega)) {
    LatticePath out = *path;
    out.offset = add(path->offset, std::get<LatticeVector>(g));
    return out;
  }
  throw DomainError("explicit tables have no canonical geodesic");
}

std::vector<GroupElement> canonical_geodesic(const GroupSpec& spec, const RaySpec& omega,
                                             std::size_t count, const WordMetric& metric) {
  require_same(spec, metric.spec());
  validate_ray(spec, omega);
  std::vector<GroupElement> out;
  out.reserve(count + 1);
  if (const auto* tail = std::get_if<FreeTail>(&omega)) {
    Word w;
    out.push_back(w);
    const auto& p = tail->prefix.letters;
    const auto& q = tail->period.letters;
    for (std::size_t i = 0; i < count; ++i) {
      w.letters.push_back(i < p.size() ? p[i] : q[(i - p.size()) % q.size()]);
      out.push_back(w);
    }
    return out;
  }
  if (const auto* path = std::get_if<LatticePath>(&omega)) {
    const auto& lat = spec.lattice();
    LatticeVector origin{std::vector<std::int64_t>(static_cast<std::size_t>(lat.rank), 0)};
    out.push_back(origin);
    append_normal_form(lat, metric, origin, path->offset, out);
    LatticeVector at = path->offset;
    while (out.size() <= count) {
      auto next = add(at, path->direction);
      append_normal_form(lat, metric, at, next, out);
      at = std::move(next);
    }
    out.resize(count + 1);
    return out;
  }
  throw DomainError("explicit tables have no canonical geodesic");
}

ProbabilityMeasure mean_measure(const GroupSpec& spec, const RaySpec& omega, std::size_t n,
                                const WordMetric& metric, bool inclusive) {
  if (n == 0) throw DomainError("n must be positive");
  auto pts = canonical_geodesic(spec, omega, n, metric);
  if (inclusive) pts.pop_back();
  else pts.erase(pts.begin());
  return ProbabilityMeasure::uniform(pts);
}

Rational mean_defect(const GroupSpec& spec, const GroupElement& g, const RaySpec& omega,
                     std::size_t n, const WordMetric& metric, bool inclusive) {
  const auto moved = pushforward(spec, g, mean_measure(spec, omega, n, metric, inclusive));
  const auto target = mean_measure(spec, translate_ray(spec, g, omega), n, metric, inclusive);
  return tv_distance(moved, target);
}

DefectScan defect_decay_scan(const GroupSpec& spec, const std::vector<GroupElement>& gens,
                             const std::vector<RaySpec>& omegas,
                             const std::vector<std::size_t>& n_values, const WordMetric& metric,
                             bool inclusive) {
  DefectScan scan;
  scan.within_bound = true;
  scan.pairs_covered = gens.size() * omegas.size();
  for (auto n : n_values) {
    Rational worst{0};
    for (const auto& g : gens) {
      const auto bound = Rational(2 * metric.norm(g), static_cast<std::int64_t>(n));
      for (const auto& omega : omegas) {
        DefectEntry e{g, omega, n, mean_defect(spec, g, omega, n, metric, inclusive), false};
        e.within_bound = e.defect <= bound;
        scan.within_bound = scan.within_bound && e.within_bound;
        worst = std::max(worst, e.defect);
        const auto c = -floor(-e.defect * static_cast<std::int64_t>(n));
        scan.constant = std::max(scan.constant, c);
        scan.entries.push_back(std::move(e));
      }
    }
    scan.max_by_n.emplace_back(n, worst);
  }
  return scan;
}

}  // namespace bscope
