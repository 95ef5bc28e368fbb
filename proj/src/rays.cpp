#include "bscope/rays.hpp"

#include "bscope/errors.hpp"

#include <algorithm>
#include <cstdlib>

namespace bscope {

namespace {

std::string_view strip_prefix(std::string_view text) {
  if (text.starts_with("ray=")) text.remove_prefix(4);
  return text;
}

LatticeVector parse_lattice_vector(const GroupSpec& spec, std::string_view text) {
  return std::get<LatticeVector>(parse_element(spec, text));
}

// Positions of the first |v|₁ unit steps of the staircase along v.
std::vector<LatticeVector> staircase_period(const LatticeVector& v) {
  const std::size_t d = v.coords.size();
  std::vector<std::int64_t> used(d, 0);
  std::vector<LatticeVector> steps;
  LatticeVector pos{std::vector<std::int64_t>(d, 0)};
  bool progressed = true;
  while (progressed) {
    progressed = false;
    for (std::size_t i = 0; i < d; ++i) {
      if (used[i] < std::abs(v.coords[i])) {
        ++used[i];
        pos.coords[i] += v.coords[i] > 0 ? 1 : -1;
        steps.push_back(pos);
        progressed = true;
      }
    }
  }
  return steps;
}

GroupElement lattice_point(const LatticePath& path, const std::vector<LatticeVector>& period,
                           std::int64_t t) {
  LatticeVector out = path.offset;
  if (path.mode == LatticeMode::straight) {
    for (std::size_t i = 0; i < out.coords.size(); ++i) out.coords[i] += t * path.direction.coords[i];
    return out;
  }
  const auto len = static_cast<std::int64_t>(period.size());
  const auto full = t / len;
  const auto rem = t % len;
  for (std::size_t i = 0; i < out.coords.size(); ++i) {
    out.coords[i] += full * path.direction.coords[i];
    if (rem > 0) out.coords[i] += period[static_cast<std::size_t>(rem - 1)].coords[i];
  }
  return out;
}

Word free_tail_prefix(const FreeTail& tail, std::int64_t length) {
  Word w;
  w.letters.reserve(static_cast<std::size_t>(length));
  for (std::int64_t i = 0; i < length; ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (k < tail.prefix.letters.size()) {
      w.letters.push_back(tail.prefix.letters[k]);
    } else {
      const auto p = (k - tail.prefix.letters.size()) % tail.period.letters.size();
      w.letters.push_back(tail.period.letters[p]);
    }
  }
  return w;
}

struct Violation {
  std::int64_t block = -1;  // smallest admissible N is block + 1
  ClauseWitness witness;
};

void consider(Violation& v, const Rational& blocking_param, ClauseWitness w) {
  const auto block = floor(blocking_param);
  if (block > v.block) v = {block, std::move(w)};
}

std::vector<std::vector<std::int64_t>> pairwise(const RayTruncation& ray, const WordMetric& m) {
  const auto n = ray.samples.size();
  std::vector<std::vector<std::int64_t>> d(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      d[i][j] = d[j][i] = m.distance(ray.samples[i].point, ray.samples[j].point);
  return d;
}

ClassificationReport finish(ClassificationReport r, const Violation& v, const RayTruncation& ray) {
  const auto half = floor(ray.horizon / 2);
  const auto n_min = v.block + 1;
  r.pass = n_min <= half;
  if (r.pass) r.threshold = n_min;
  else r.witness = v.witness;
  return r;
}

}  // namespace

RaySpec parse_ray_spec(const GroupSpec& spec, std::string_view text) {
  text = strip_prefix(text);
  if (text.starts_with("free:")) {
    if (!spec.is_free()) throw ParseError("free ray used with a lattice group", 0);
    const auto body = text.substr(5);
    const auto bar = body.find('|');
    if (bar == std::string_view::npos) throw ParseError("expected '|' between prefix and period", text.size());
    FreeTail tail{std::get<Word>(parse_element(spec, body.substr(0, bar))),
                  std::get<Word>(parse_element(spec, body.substr(bar + 1)))};
    RaySpec ray = tail;
    validate_ray(spec, ray);
    return ray;
  }
  if (text.starts_with("lattice:")) {
    if (!spec.is_lattice()) throw ParseError("lattice ray used with a free group", 0);
    std::string_view body = text.substr(8);
    LatticePath path;
    bool have_offset = false;
    bool have_dir = false;
    std::size_t offset = 8;
    while (!body.empty()) {
      const auto semi = body.find(';');
      const auto item = body.substr(0, semi);
      if (item.starts_with("offset=")) {
        path.offset = parse_lattice_vector(spec, item.substr(7));
        have_offset = true;
      } else if (item.starts_with("dir=")) {
        path.direction = parse_lattice_vector(spec, item.substr(4));
        have_dir = true;
      } else if (item == "mode=straight") {
        path.mode = LatticeMode::straight;
      } else if (item == "mode=staircase") {
        path.mode = LatticeMode::staircase;
      } else {
        throw ParseError("unknown lattice ray field '" + std::string(item) + "'", offset);
      }
      if (semi == std::string_view::npos) break;
      body.remove_prefix(semi + 1);
      offset += semi + 1;
    }
    if (!have_dir) throw ParseError("lattice ray needs dir=(..)", text.size());
    if (!have_offset) path.offset = std::get<LatticeVector>(identity(spec));
    RaySpec ray = path;
    validate_ray(spec, ray);
    return ray;
  }
  throw ParseError("expected 'free:' or 'lattice:' ray", 0);
}

std::string to_string(const RaySpec& ray) {
  if (const auto* f = std::get_if<FreeTail>(&ray)) {
    const auto prefix = f->prefix.letters.empty() ? std::string() : to_string(GroupElement{f->prefix});
    return "free:" + prefix + "|" + to_string(GroupElement{f->period});
  }
  if (const auto* l = std::get_if<LatticePath>(&ray)) {
    return "lattice:offset=" + to_string(GroupElement{l->offset}) +
           ";dir=" + to_string(GroupElement{l->direction}) +
           (l->mode == LatticeMode::straight ? ";mode=straight" : "");
  }
  return "table:" + std::to_string(std::get<ExplicitTable>(ray).entries.size());
}

void validate_ray(const GroupSpec& spec, const RaySpec& ray) {
  if (const auto* f = std::get_if<FreeTail>(&ray)) {
    if (!spec.is_free()) throw ConstructionError("free ray used with a lattice group");
    require_member(spec, f->prefix);
    require_member(spec, f->period);
    if (f->period.letters.empty()) throw ConstructionError("free ray period must be nonempty");
    if (f->period.letters.back() == -f->period.letters.front())
      throw ConstructionError("period '" + to_string(GroupElement{f->period}) +
                              "' cancels at the period-period junction");
    if (!f->prefix.letters.empty() && f->prefix.letters.back() == -f->period.letters.front())
      throw ConstructionError("prefix '" + to_string(GroupElement{f->prefix}) +
                              "' cancels against the period");
    return;
  }
  if (const auto* l = std::get_if<LatticePath>(&ray)) {
    if (!spec.is_lattice()) throw ConstructionError("lattice ray used with a free group");
    require_member(spec, l->offset);
    require_member(spec, l->direction);
    if (is_identity(l->direction)) throw ConstructionError("lattice ray direction must be nonzero");
    return;
  }
  const auto& table = std::get<ExplicitTable>(ray);
  if (table.entries.empty()) throw ConstructionError("explicit ray table is empty");
  if (table.entries.front().first != Rational(0))
    throw ConstructionError("explicit ray table must start at parameter 0");
  for (std::size_t i = 0; i < table.entries.size(); ++i) {
    require_member(spec, table.entries[i].second);
    if (i && !(table.entries[i - 1].first < table.entries[i].first))
      throw ConstructionError("explicit ray parameters must be strictly increasing (entry " +
                              std::to_string(i) + ")");
  }
}

RayTruncation materialize_ray(const GroupSpec& spec, const RaySpec& ray, Rational horizon) {
  if (!(horizon > 0)) throw DomainError("ray horizon must be positive");
  validate_ray(spec, ray);
  RayTruncation out;
  out.origin = ray;
  if (const auto* f = std::get_if<FreeTail>(&ray)) {
    const auto h = floor(horizon);
    for (std::int64_t t = 0; t <= h; ++t) out.samples.push_back({Rational(t), free_tail_prefix(*f, t)});
  } else if (const auto* l = std::get_if<LatticePath>(&ray)) {
    const auto period = staircase_period(l->direction);
    const auto h = floor(horizon);
    for (std::int64_t t = 0; t <= h; ++t) out.samples.push_back({Rational(t), lattice_point(*l, period, t)});
  } else {
    for (const auto& [t, g] : std::get<ExplicitTable>(ray).entries)
      if (!(horizon < t)) out.samples.push_back({t, g});
  }
  out.horizon = out.samples.back().t;
  if (!(out.horizon > 0)) throw DomainError("ray truncation has no positive parameter");
  return out;
}

std::string to_string(Clause c) {
  switch (c) {
    case Clause::geodesic: return "geodesic";
    case Clause::almost_geodesic: return "almost-geodesic";
    case Clause::weakly_geodesic: return "weakly-geodesic";
  }
  return "?";
}

ClassificationReport check_geodesic(const RayTruncation& ray, const WordMetric& metric) {
  const auto d = pairwise(ray, metric);
  const auto tail = floor(ray.horizon / 2);
  ClassificationReport r;
  r.clause = Clause::geodesic;
  for (std::size_t i = 0; i < ray.samples.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const auto& t = ray.samples[i].t;
      const auto& s = ray.samples[j].t;
      const Rational defect = abs(Rational(d[i][j]) - (t - s));
      if (defect > r.max_defect) {
        r.max_defect = defect;
        r.witness = ClauseWitness{t, s, std::nullopt, 1, defect};
      }
      if (!(s < tail) && defect > r.tail_defect) r.tail_defect = defect;
    }
  }
  r.pass = r.max_defect == Rational(0);
  if (r.pass) {
    r.threshold = 0;
    r.witness.reset();
  }
  return r;
}

ClassificationReport check_almost_geodesic(const RayTruncation& ray, const Rational& epsilon,
                                           const WordMetric& metric) {
  if (!(epsilon > 0)) throw DomainError("epsilon must be positive");
  const auto d = pairwise(ray, metric);
  const auto tail = floor(ray.horizon / 2);
  ClassificationReport r;
  r.clause = Clause::almost_geodesic;
  r.epsilon = epsilon;
  Violation worst;
  for (std::size_t i = 0; i < ray.samples.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const auto& t = ray.samples[i].t;
      const auto& s = ray.samples[j].t;
      const Rational defect = abs(Rational(d[i][j] + d[j][0]) - t);
      r.max_defect = std::max(r.max_defect, defect);
      if (!(s < tail)) r.tail_defect = std::max(r.tail_defect, defect);
      if (!(defect < epsilon)) consider(worst, s, ClauseWitness{t, s, std::nullopt, 1, defect});
    }
  }
  return finish(r, worst, ray);
}

ClassificationReport check_weakly_geodesic(const RayTruncation& ray, const Rational& epsilon,
                                           const std::vector<GroupElement>& probes,
                                           const WordMetric& metric) {
  if (!(epsilon > 0)) throw DomainError("epsilon must be positive");
  if (probes.empty()) throw DomainError("weakly-geodesic check needs at least one probe");
  const auto n = ray.samples.size();
  const auto tail = floor(ray.horizon / 2);
  ClassificationReport r;
  r.clause = Clause::weakly_geodesic;
  r.epsilon = epsilon;
  Violation worst;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& t = ray.samples[i].t;
    const Rational defect = abs(Rational(metric.distance(ray.samples[i].point, ray.samples[0].point)) - t);
    r.max_defect = std::max(r.max_defect, defect);
    if (!(t < tail)) r.tail_defect = std::max(r.tail_defect, defect);
    if (!(defect < epsilon)) consider(worst, t, ClauseWitness{t, t, std::nullopt, 1, defect});
  }
  std::vector<std::int64_t> to_probe(n);
  for (const auto& y : probes) {
    for (std::size_t i = 0; i < n; ++i) to_probe[i] = metric.distance(ray.samples[i].point, y);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        const auto& t = ray.samples[i].t;
        const auto& s = ray.samples[j].t;
        const Rational defect = abs(Rational(to_probe[i] - to_probe[j]) - (t - s));
        r.max_defect = std::max(r.max_defect, defect);
        if (!(s < tail)) r.tail_defect = std::max(r.tail_defect, defect);
        if (!(defect < epsilon)) consider(worst, s, ClauseWitness{t, s, y, 2, defect});
      }
    }
  }
  return finish(r, worst, ray);
}

std::vector<GroupElement> default_ray_probes(const GroupSpec& spec) {
  return sphere(build_ball(spec, 2), 2);
}

bool replay_classification(const ClassificationReport& report, const RayTruncation& ray,
                           const WordMetric& metric, const std::vector<GroupElement>& probes) {
  const auto& xs = ray.samples;
  const auto dist = [&](std::size_t i, std::size_t j) {
    return Rational(metric.distance(xs[i].point, xs[j].point));
  };
  // Largest defect among constraints whose blocking parameter is ≥ n_floor.
  const auto worst_beyond = [&](std::int64_t n_floor) {
    Rational worst{0};
    const auto beyond = [&](const Rational& p) { return !(p < n_floor); };
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (std::size_t j = 0; j < xs.size(); ++j) {
        const auto& t = xs[i].t;
        const auto& s = xs[j].t;
        switch (report.clause) {
          case Clause::geodesic:
            worst = std::max(worst, abs(dist(i, j) - abs(t - s)));
            break;
          case Clause::almost_geodesic:
            if (s <= t && beyond(s)) worst = std::max(worst, abs(dist(i, j) + dist(j, 0) - t));
            break;
          case Clause::weakly_geodesic:
            if (i == j && beyond(t)) worst = std::max(worst, abs(dist(i, 0) - t));
            if (beyond(t) && beyond(s))
              for (const auto& y : probes)
                worst = std::max(worst, abs(Rational(metric.distance(xs[i].point, y) -
                                                     metric.distance(xs[j].point, y)) -
                                            (t - s)));
            break;
        }
      }
    }
    return worst;
  };
  const Rational eps = report.epsilon.value_or(Rational(0));
  const auto violates = [&](const Rational& defect) {
    return report.clause == Clause::geodesic ? defect > 0 : !(defect < eps);
  };

  if (report.pass) {
    if (!report.threshold) return false;
    const auto n = *report.threshold;
    if (violates(worst_beyond(n))) return false;
    return n == 0 || violates(worst_beyond(n - 1));
  }
  if (!report.witness) return false;
  const auto& w = *report.witness;
  const auto index_of = [&](const Rational& p) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < xs.size(); ++i)
      if (xs[i].t == p) return i;
    return std::nullopt;
  };
  const auto ti = index_of(w.t);
  const auto si = index_of(w.s);
  if (!ti || !si) return false;
  Rational defect;
  switch (report.clause) {
    case Clause::geodesic: defect = abs(dist(*ti, *si) - abs(w.t - w.s)); break;
    case Clause::almost_geodesic: defect = abs(dist(*ti, *si) + dist(*si, 0) - w.t); break;
    case Clause::weakly_geodesic:
      if (w.inequality == 1) defect = abs(dist(*ti, 0) - w.t);
      else if (w.probe)
        defect = abs(Rational(metric.distance(xs[*ti].point, *w.probe) -
                              metric.distance(xs[*si].point, *w.probe)) -
                     (w.t - w.s));
      else return false;
      break;
  }
  if (defect != w.defect || !violates(defect)) return false;
  if (report.clause == Clause::geodesic) return true;
  const auto blocking = w.inequality == 1 && report.clause == Clause::weakly_geodesic ? w.t : w.s;
  return floor(blocking) + 1 > floor(ray.horizon / 2);
}

}  // namespace bscope
