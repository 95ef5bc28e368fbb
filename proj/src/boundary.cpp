#include "bscope/boundary.hpp"

#include "bscope/errors.hpp"

#include <algorithm>
#include <numeric>

namespace bscope {

BoundarySample::BoundarySample(const WordMetric& metric, std::vector<GroupElement> points,
                               std::string label)
    : spec_(metric.spec()), label_(std::move(label)) {
  for (auto& p : points) {
    require_member(spec_, p);
    if (!points_.empty() && points_.back() == p) continue;
    const auto n = metric.norm(p);
    if (!norms_.empty() && n <= norms_.back())
      throw ConstructionError("sample '" + label_ + "': norms must increase strictly, but |" +
                              to_string(p) + "| = " + std::to_string(n) + " follows " +
                              std::to_string(norms_.back()));
    points_.push_back(std::move(p));
    norms_.push_back(n);
  }
  if (points_.empty()) throw ConstructionError("sample '" + label_ + "' is empty");
}

BoundarySample sample_from_ray(const RayTruncation& ray, const WordMetric& metric, std::string label) {
  std::vector<GroupElement> points;
  for (const auto& s : ray.samples)
    if (s.t > 0) points.push_back(s.point);
  return BoundarySample(metric, std::move(points), std::move(label));
}

namespace {

void require_same_spec(const BoundarySample& a, const BoundarySample& b) {
  if (!(a.spec() == b.spec()))
    throw DomainError("samples '" + a.label() + "' and '" + b.label() + "' use different groups");
}

std::vector<HalfExact> suffix_minima(std::vector<HalfExact> v) {
  for (std::size_t i = v.size(); i-- > 1;) v[i - 1] = std::min(v[i - 1], v[i]);
  return v;
}

}  // namespace

DivergenceCertificate make_certificate(std::string quantity, std::vector<HalfExact> values,
                                       const Rational& threshold) {
  DivergenceCertificate c;
  c.quantity = std::move(quantity);
  c.threshold = HalfExact::from_value(threshold);
  const std::size_t half = values.size() / 2;
  for (std::size_t n = 1; n <= half; ++n) {
    if (values[n - 1] >= c.threshold) {
      c.first_passing = n;
      break;
    }
  }
  c.pass = c.first_passing.has_value();
  c.values = std::move(values);
  return c;
}

DivergenceCertificate converges_to_infinity(const BoundarySample& s, const Rational& threshold,
                                            const WordMetric& metric) {
  const auto h = s.horizon();
  std::vector<HalfExact> row_min(h);
  for (std::size_t n = 0; n < h; ++n) {
    HalfExact m = HalfExact::from_doubled(Rational(2 * s.norms()[n]));  // (x_n·x_n)
    for (std::size_t k = n + 1; k < h; ++k) m = std::min(m, metric.product(s.points()[n], s.points()[k]));
    row_min[n] = m;
  }
  return make_certificate("(x_n . x_k)", suffix_minima(std::move(row_min)), threshold);
}

DivergenceCertificate gromov_equiv(const BoundarySample& a, const BoundarySample& b,
                                   const Rational& threshold, const WordMetric& metric,
                                   bool double_index) {
  require_same_spec(a, b);
  for (const auto* s : {&a, &b})
    if (!converges_to_infinity(*s, threshold, metric).pass)
      throw PreconditionError("sample '" + s->label() +
                              "' does not converge to infinity at threshold " + to_string(threshold));
  const auto h = std::min(a.horizon(), b.horizon());
  std::vector<HalfExact> values(h);
  if (!double_index) {
    for (std::size_t n = 0; n < h; ++n) values[n] = metric.product(a.points()[n], b.points()[n]);
    return make_certificate("(a_n . b_n)", suffix_minima(std::move(values)), threshold);
  }
  // D(N) = min over n, k ≥ N of (a_n · b_k): peel off row N and column N.
  std::vector<std::vector<HalfExact>> p(h, std::vector<HalfExact>(h));
  for (std::size_t n = 0; n < h; ++n)
    for (std::size_t k = 0; k < h; ++k) p[n][k] = metric.product(a.points()[n], b.points()[k]);
  HalfExact running = p[h - 1][h - 1];
  for (std::size_t n = h; n-- > 0;) {
    for (std::size_t k = n; k < h; ++k) running = std::min({running, p[n][k], p[k][n]});
    values[n] = running;
  }
  return make_certificate("(a_n . b_k)", std::move(values), threshold);
}

std::vector<GroupElement> HorofunctionProfile::unstable() const {
  std::vector<GroupElement> out;
  for (const auto& p : probes)
    if (!p.stable) out.push_back(p.probe);
  return out;
}

HorofunctionProfile horofunction_profile(const BoundarySample& s,
                                         const std::vector<GroupElement>& probes,
                                         const Rational& tol, const WordMetric& metric) {
  if (tol < 0) throw DomainError("tolerance must be nonnegative");
  HorofunctionProfile profile;
  const auto h = s.horizon();
  for (const auto& z : probes) {
    require_member(s.spec(), z);
    ProbeProfile p;
    p.probe = z;
    p.values.reserve(h);
    for (const auto& x : s.points()) p.values.push_back(metric.horofunction(z, x));
    // Word metrics are integer-valued, so stabilization is exact equality.
    const auto last = p.values.back();
    std::size_t index = h;
    while (index > 1 && p.values[index - 2] == last) --index;
    p.stabilization_index = index;
    p.stable = index <= h / 2;
    if (p.stable) p.value = Rational(last);
    profile.probes.push_back(std::move(p));
  }
  return profile;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

MetricEquivReport metric_equiv(const BoundarySample& a, const BoundarySample& b,
                               const std::vector<GroupElement>& probes, const Rational& tol,
                               const WordMetric& metric) {
  require_same_spec(a, b);
  const auto pa = horofunction_profile(a, probes, tol, metric);
  const auto pb = horofunction_profile(b, probes, tol, metric);
  MetricEquivReport report;
  bool agree = true;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    MetricEquivRow row{probes[i], std::nullopt, std::nullopt, std::nullopt};
    const auto& x = pa.probes[i];
    const auto& y = pb.probes[i];
    if (x.stable) row.value_a = x.value;
    if (y.stable) row.value_b = y.value;
    if (x.stable && y.stable) {
      row.difference = x.value - y.value;
      agree = agree && *row.difference == Rational(0);
    } else {
      report.unstable_probes.push_back(probes[i]);
    }
    report.rows.push_back(std::move(row));
  }
  if (!report.unstable_probes.empty()) report.verdict = Verdict::inconclusive;
  else report.verdict = agree ? Verdict::pass : Verdict::fail;
  return report;
}

HorofunctionWitness witness_large_horofunction(const BoundarySample& s, const Rational& height,
                                               const Rational& epsilon, const WordMetric& metric) {
  if (!(epsilon > 0)) throw DomainError("epsilon must be positive");
  HorofunctionWitness w;
  w.sphere_radius = floor(height + epsilon) + 1;
  if (w.sphere_radius < 1) w.sphere_radius = 1;
  if (w.sphere_radius > metric.radius())
    throw OutOfWindowError("sphere radius " + std::to_string(w.sphere_radius) +
                           " exceeds window radius " + std::to_string(metric.radius()));
  if (!converges_to_infinity(s, height, metric).pass)
    throw PreconditionError("sample '" + s.label() + "' does not converge to infinity at threshold " +
                            to_string(height));

  const auto shell = sphere(build_ball(s.spec(), w.sphere_radius), w.sphere_radius);
  const auto h = s.horizon();
  w.tail_length = h / 2;
  const std::size_t tail_start = h - w.tail_length;  // 0-based first tail index

  // members[n] lists sphere indices on a geodesic [0, x_n].
  std::vector<std::vector<std::size_t>> members(h);
  std::vector<std::size_t> counts(shell.size(), 0);
  for (std::size_t n = 0; n < h; ++n) {
    const auto norm = s.norms()[n];
    if (norm < w.sphere_radius) continue;
    for (std::size_t i = 0; i < shell.size(); ++i) {
      if (w.sphere_radius + metric.distance(shell[i], s.points()[n]) == norm) {
        members[n].push_back(i);
        if (n >= tail_start) ++counts[i];
      }
    }
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < counts.size(); ++i)
    if (counts[i] > counts[best]) best = i;
  w.recurrences_in_tail = counts.empty() ? 0 : counts[best];
  w.found = w.tail_length > 0 && w.recurrences_in_tail > 0 &&
            2 * w.recurrences_in_tail >= w.tail_length;
  if (!w.found) return w;
  w.z = shell[best];
  w.bound = w.sphere_radius;
  for (std::size_t n = 0; n < h; ++n)
    if (std::find(members[n].begin(), members[n].end(), best) != members[n].end())
      w.indices.push_back(n + 1);
  return w;
}

bool QuotientPartition::passes(std::size_t i, std::size_t j) const {
  if (i == j) return true;
  if (i > j) std::swap(i, j);
  const auto& c = pairwise[i][j];
  return c && c->pass;
}

QuotientPartition quotient_partition(const std::vector<BoundarySample>& samples,
                                     const Rational& threshold,
                                     const std::vector<GroupElement>& probes, const Rational& tol,
                                     const WordMetric& metric) {
  QuotientPartition q;
  const auto k = samples.size();
  for (const auto& s : samples) {
    require_same_spec(samples.front(), s);
    if (!converges_to_infinity(s, threshold, metric).pass)
      throw PreconditionError("sample '" + s.label() + "' does not converge to infinity at threshold " +
                              to_string(threshold));
    q.labels.push_back(s.label());
  }
  q.hyperbolic = k == 0 || is_hyperbolic(samples.front().spec());
  q.pairwise.assign(k, std::vector<std::optional<DivergenceCertificate>>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      q.pairwise[i][j] = gromov_equiv(samples[i], samples[j], threshold, metric);
      const auto m = metric_equiv(samples[i], samples[j], probes, tol, metric);
      if (m.verdict == Verdict::inconclusive) q.metric_inconclusive.push_back({i, j});
      else if (m.verdict == Verdict::pass && !q.pairwise[i][j]->pass)
        q.refinement_violations.push_back({i, j});
    }
  for (std::size_t x = 0; x < k; ++x)
    for (std::size_t y = x + 1; y < k; ++y) {
      if (q.passes(x, y)) continue;
      for (std::size_t z = 0; z < k; ++z)
        if (z != x && z != y && q.passes(x, z) && q.passes(y, z))
          q.transitivity_violations.push_back({x, y, z});
    }
  if (q.hyperbolic) {
    std::vector<std::size_t> parent(k);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        if (q.passes(i, j)) parent[std::max(find(i), find(j))] = std::min(find(i), find(j));
    std::vector<std::size_t> slot(k, k);
    for (std::size_t i = 0; i < k; ++i) {
      const auto root = find(i);
      if (slot[root] == k) {
        slot[root] = q.classes.size();
        q.classes.emplace_back();
      }
      q.classes[slot[root]].push_back(i);
    }
    q.partitioned = true;
  }
  return q;
}

namespace {

ExtendedProduct from_sequence(std::vector<HalfExact> values) {
  ExtendedProduct e;
  e.tail_minima = suffix_minima(std::move(values));
  const auto h = e.tail_minima.size();
  const std::size_t anchor = std::max<std::size_t>(1, h / 2);
  e.value = e.tail_minima[anchor - 1];
  e.tail_constant = e.value == e.tail_minima.back();
  return e;
}

}  // namespace

ExtendedProduct extended_product(const BoundarySample& a, const BoundarySample& b,
                                 const WordMetric& metric) {
  require_same_spec(a, b);
  const auto h = std::min(a.horizon(), b.horizon());
  std::vector<HalfExact> v(h);
  for (std::size_t n = 0; n < h; ++n) v[n] = metric.product(a.points()[n], b.points()[n]);
  return from_sequence(std::move(v));
}

ExtendedProduct extended_product(const BoundarySample& a, const GroupElement& y,
                                 const WordMetric& metric) {
  std::vector<HalfExact> v;
  for (const auto& x : a.points()) v.push_back(metric.product(x, y));
  return from_sequence(std::move(v));
}

ExtendedProduct extended_product(const GroupElement& x, const GroupElement& y,
                                 const WordMetric& metric) {
  ExtendedProduct e;
  e.value = metric.product(x, y);
  e.tail_minima = {e.value};
  e.tail_constant = true;
  e.exact = true;
  return e;
}

std::vector<ContinuityRow> continuity_probe(const std::vector<BoundarySample>& omegas,
                                            const BoundarySample& omega,
                                            std::int64_t probe_radius, const Rational& threshold,
                                            const WordMetric& metric) {
  for (const auto* s : {&omega})
    if (!converges_to_infinity(*s, threshold, metric).pass)
      throw PreconditionError("sample '" + s->label() + "' does not converge to infinity");
  const auto ball = build_ball(omega.spec(), probe_radius);
  const Rational tol(0);
  const auto target = horofunction_profile(omega, ball.elements, tol, metric);
  std::vector<ContinuityRow> rows;
  for (const auto& w : omegas) {
    require_same_spec(w, omega);
    if (!converges_to_infinity(w, threshold, metric).pass)
      throw PreconditionError("sample '" + w.label() + "' does not converge to infinity");
    const auto profile = horofunction_profile(w, ball.elements, tol, metric);
    ContinuityRow row;
    row.label = w.label();
    row.agreement_radius = probe_radius;
    for (std::size_t i = 0; i < ball.elements.size(); ++i) {
      const auto& x = profile.probes[i];
      const auto& y = target.probes[i];
      if (!(x.stable && y.stable && x.value == y.value)) {
        row.agreement_radius = std::min(row.agreement_radius, ball.norms[i] - 1);
      }
    }
    row.product = extended_product(w, omega, metric);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<GroupElement> default_probes(const GroupSpec& spec, std::int64_t radius) {
  return build_ball(spec, std::min<std::int64_t>(radius, 6)).elements;
}

}  // namespace bscope
