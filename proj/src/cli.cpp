#include "bscope/cli.hpp"

#include "bscope/action.hpp"
#include "bscope/boundary.hpp"
#include "bscope/errors.hpp"
#include "bscope/report.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace bscope {

namespace {

struct Options {
  std::string group;
  std::optional<std::int64_t> radius;
  std::optional<std::string> horizon;
  std::optional<std::string> threshold;
  std::optional<std::string> epsilon;
  std::optional<std::int64_t> probe_radius;
  std::string tol = "0";
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
  std::optional<std::string> samples;
  std::vector<std::string> rays;
  std::string clause = "all";
  std::optional<std::string> x, y, z;
  std::optional<std::string> target;
  std::vector<std::string> gens;
  std::vector<std::size_t> n_values;
  bool inclusive = false;
  bool double_index = false;
  unsigned threads = 0;
  std::string report;
};

struct Outcome {
  Outcome() = default;
  Outcome(std::string s, Json r) : status(std::move(s)), result(std::move(r)) {}

  std::string status = "computed";
  Json result;
  int code = kExitOk;
  std::optional<std::string> text;  // replaces the JSON report when set
};

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string read_arg(const std::string& text) {
  return text.starts_with('@') ? read_file(text.substr(1)) : text;
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw UsageError("cannot write " + tmp);
    f << content;
    if (!f.flush()) throw UsageError("cannot write " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

template <class T>
const T& need(const std::optional<T>& v, const char* flag) {
  if (!v) throw UsageError(std::string(flag) + " is required");
  return *v;
}

struct RawSample {
  std::string label;
  std::vector<GroupElement> points;
  std::optional<RayTruncation> ray;
};

class Context {
 public:
  explicit Context(const Options& o) : opts(o), spec(parse_group_spec(o.group)) {}

  const Options& opts;
  GroupSpec spec;
  std::optional<WordMetric> metric_;

  Rational rational(const std::optional<std::string>& v, const char* flag) const {
    return parse_rational(need(v, flag));
  }

  std::optional<Rational> horizon() const {
    if (!opts.horizon) return std::nullopt;
    auto h = parse_rational(*opts.horizon);
    if (h <= 0) throw UsageError("--horizon must be positive");
    return h;
  }

  RawSample from_ray(std::string label, RaySpec ray) const {
    const auto h = horizon();
    if (!h) throw UsageError("--horizon is required for ray samples");
    RawSample s{std::move(label), {}, materialize_ray(spec, ray, *h)};
    for (const auto& p : s.ray->samples)
      if (p.t > 0) s.points.push_back(p.point);
    return s;
  }

  // Rows are [t, point]; t is a JSON number or an exact rational string.
  ExplicitTable table(const Json& rows) const {
    if (!rows.is_array()) throw UsageError("a ray table must be an array of [t, point] rows");
    ExplicitTable t;
    for (const auto& row : rows) {
      const auto& p = row.at(0);
      const Rational param = p.is_string() ? parse_rational(p.get<std::string>()) : Rational(p.get<std::int64_t>());
      t.entries.emplace_back(param, parse_element(spec, row.at(1).get<std::string>()));
    }
    return t;
  }

  std::vector<RawSample> raw_samples() const {
    std::vector<RawSample> out;
    if (opts.samples) {
      const auto doc = Json::parse(read_arg(*opts.samples));
      const Json& list = doc.is_object() ? doc.at("samples") : doc;
      if (!list.is_array()) throw UsageError("--samples must hold a JSON array of samples");
      for (const auto& item : list) {
        std::string label = item.value("label", "s" + std::to_string(out.size() + 1));
        if (item.contains("ray")) {
          out.push_back(from_ray(std::move(label), parse_ray_spec(spec, item.at("ray").get<std::string>())));
        } else if (item.contains("table")) {
          out.push_back(from_ray(std::move(label), table(item.at("table"))));
        } else {
          RawSample s{std::move(label), {}, std::nullopt};
          for (const auto& p : item.at("points")) s.points.push_back(parse_element(spec, p.get<std::string>()));
          if (const auto h = horizon()) {
            const auto keep = static_cast<std::size_t>(floor(*h));
            if (s.points.size() > keep) s.points.resize(keep);
          }
          out.push_back(std::move(s));
        }
      }
    }
    for (const auto& r : opts.rays) {
      std::string_view text = r;
      if (text.starts_with("ray=")) text.remove_prefix(4);
      if (text.starts_with('@')) out.push_back(from_ray(r, table(Json::parse(read_file(std::string(text.substr(1)))))));
      else out.push_back(from_ray(r, parse_ray_spec(spec, text)));
    }
    return out;
  }

  std::vector<GroupElement> probe_ball(std::int64_t fallback) const {
    const auto r = opts.probe_radius.value_or(fallback);
    if (r < 0) throw UsageError("--probe-radius must be nonnegative");
    return build_ball(spec, r).elements;
  }

  const WordMetric& metric(const std::vector<GroupElement>& elements, std::int64_t slack = 0) {
    if (opts.radius) {
      if (*opts.radius <= 0) throw UsageError("--radius must be positive");
      metric_.emplace(spec, *opts.radius);
    } else {
      metric_.emplace(WordMetric::covering(spec, elements, slack));
    }
    return *metric_;
  }

  std::vector<BoundarySample> samples(const std::vector<RawSample>& raw) const {
    std::vector<BoundarySample> out;
    for (const auto& r : raw) out.emplace_back(*metric_, r.points, r.label);
    return out;
  }

  Json config() const {
    Json rays = opts.rays;
    return {{"group", to_string(spec)},
            {"radius", opts.radius ? Json(*opts.radius) : Json(nullptr)},
            {"window_radius", metric_ ? Json(metric_->radius()) : Json(nullptr)},
            {"horizon", opts.horizon ? Json(*opts.horizon) : Json(nullptr)},
            {"M", opts.threshold ? Json(*opts.threshold) : Json(nullptr)},
            {"epsilon", opts.epsilon ? Json(*opts.epsilon) : Json(nullptr)},
            {"probe_radius", opts.probe_radius ? Json(*opts.probe_radius) : Json(nullptr)},
            {"tol", opts.tol},
            {"seed", opts.seed},
            {"format", opts.format},
            {"samples", opts.samples ? Json(*opts.samples) : Json(nullptr)},
            {"rays", std::move(rays)}};
  }
};

std::vector<GroupElement> all_points(const std::vector<RawSample>& raw) {
  std::vector<GroupElement> out;
  for (const auto& r : raw) out.insert(out.end(), r.points.begin(), r.points.end());
  return out;
}

void append(std::vector<GroupElement>& to, const std::vector<GroupElement>& from) {
  to.insert(to.end(), from.begin(), from.end());
}

std::int64_t ball_radius(const Options& o) {
  const auto r = need(o.radius, "--radius");
  if (r < 0) throw UsageError("--radius must be nonnegative");
  return r;
}

Outcome cmd_ball(Context& c) {
  return {"computed", to_json(build_ball(c.spec, ball_radius(c.opts)))};
}

Outcome cmd_delta(Context& c) {
  const auto ball = build_ball(c.spec, ball_radius(c.opts));
  const auto report = min_delta(window_from_ball(ball), c.opts.threads);
  Json witness = nullptr;
  if (report.witness) {
    const auto& t = *report.witness;
    witness = {{"x", to_json(ball.elements[t.x.index])},
               {"y", to_json(ball.elements[t.y.index])},
               {"z", to_json(ball.elements[t.z.index])}};
  }
  return {"computed",
          {{"spec", to_string(c.spec)},
           {"radius", ball.radius},
           {"points", ball.elements.size()},
           {"delta", to_string(report.delta)},
           {"witness", std::move(witness)}}};
}

Outcome cmd_product(Context& c) {
  const auto x = parse_element(c.spec, need(c.opts.x, "--x"));
  const auto y = parse_element(c.spec, need(c.opts.y, "--y"));
  std::vector<GroupElement> elems{x, y};
  std::optional<GroupElement> z;
  if (c.opts.z) elems.push_back(*(z = parse_element(c.spec, *c.opts.z)));
  const auto& m = c.metric(elems);
  Json r = {{"x", to_json(x)}, {"y", to_json(y)}, {"product", to_string(m.product(x, y))}};
  if (z) {
    const auto fx = m.horofunction(*z, x);
    const auto fy = m.horofunction(*z, y);
    r["z"] = to_json(*z);
    r["phi_z_x"] = fx;
    r["phi_z_y"] = fy;
    r["gap"] = to_string(m.product(x, y) - HalfExact::from_doubled(Rational(fx + fy)));
    r["between"] = on_geodesic(m, x, y, *z);
  }
  return {"computed", std::move(r)};
}

Outcome cmd_horofn(Context& c) {
  const auto raw = c.raw_samples();
  if (raw.empty()) throw UsageError("horofn needs --samples or --ray");
  const auto probes = c.probe_ball(2);
  auto elems = all_points(raw);
  append(elems, probes);
  c.metric(elems);
  const auto tol = parse_rational(c.opts.tol);
  Outcome o;
  o.result = {{"profiles", Json::array()}};
  for (const auto& s : c.samples(raw)) {
    auto p = horofunction_profile(s, probes, tol, *c.metric_);
    if (!p.unstable().empty()) o.status = "inconclusive";
    o.result["profiles"].push_back({{"label", s.label()}, {"profile", to_json(p)}});
  }
  if (o.status == "inconclusive") o.code = kExitInconclusive;
  return o;
}

Outcome cmd_classify(Context& c) {
  const auto raw = c.raw_samples();
  if (raw.size() != 1 || !raw[0].ray) throw UsageError("classify needs exactly one ray (--ray or a ray/table sample)");
  const auto& ray = *raw[0].ray;
  std::vector<Clause> clauses;
  const auto& name = c.opts.clause;
  if (name == "all") clauses = {Clause::geodesic, Clause::almost_geodesic, Clause::weakly_geodesic};
  else if (name == "geodesic") clauses = {Clause::geodesic};
  else if (name == "almost-geodesic") clauses = {Clause::almost_geodesic};
  else if (name == "weakly-geodesic") clauses = {Clause::weakly_geodesic};
  else throw UsageError("unknown clause '" + name + "'");

  const auto probes = c.opts.probe_radius ? c.probe_ball(0) : default_ray_probes(c.spec);
  std::vector<GroupElement> elems;
  for (const auto& s : ray.samples) elems.push_back(s.point);
  append(elems, probes);
  const auto& m = c.metric(elems);

  Json reports = Json::array();
  for (auto clause : clauses) {
    ClassificationReport r;
    if (clause == Clause::geodesic) {
      r = check_geodesic(ray, m);
    } else {
      const auto eps = c.rational(c.opts.epsilon, "--epsilon");
      r = clause == Clause::almost_geodesic ? check_almost_geodesic(ray, eps, m)
                                            : check_weakly_geodesic(ray, eps, probes, m);
    }
    auto j = to_json(r);
    j["replayed"] = replay_classification(r, ray, m, probes);
    reports.push_back(std::move(j));
  }
  return {"computed",
          {{"ray", to_string(ray.origin)},
           {"horizon", to_string(ray.horizon)},
           {"probes", to_json(probes)},
           {"reports", std::move(reports)}}};
}

std::vector<BoundarySample> exactly(Context& c, const std::vector<RawSample>& raw, std::size_t n,
                                    const char* cmd, std::vector<GroupElement> extra = {}) {
  if (raw.size() != n)
    throw UsageError(std::string(cmd) + " needs exactly " + std::to_string(n) + " samples");
  append(extra, all_points(raw));
  c.metric(extra);
  return c.samples(raw);
}

Outcome cmd_equiv(Context& c) {
  const auto s = exactly(c, c.raw_samples(), 2, "equiv");
  const auto threshold = c.rational(c.opts.threshold, "--M");
  const auto& m = *c.metric_;
  const auto cert = gromov_equiv(s[0], s[1], threshold, m, c.opts.double_index);
  return {"computed",
          {{"a", s[0].label()},
           {"b", s[1].label()},
           {"double_index", c.opts.double_index},
           {"convergence",
            {{"a", to_json(converges_to_infinity(s[0], threshold, m))},
             {"b", to_json(converges_to_infinity(s[1], threshold, m))}}},
           {"certificate", to_json(cert)}}};
}

Outcome cmd_metric_equiv(Context& c) {
  const auto probes = c.probe_ball(2);
  const auto s = exactly(c, c.raw_samples(), 2, "metric-equiv", probes);
  const auto r = metric_equiv(s[0], s[1], probes, parse_rational(c.opts.tol), *c.metric_);
  Outcome o{"computed", {{"a", s[0].label()}, {"b", s[1].label()}, {"report", to_json(r)}}};
  if (r.verdict == Verdict::inconclusive) {
    o.status = "inconclusive";
    o.code = kExitInconclusive;
  }
  return o;
}

Outcome cmd_witness(Context& c) {
  const auto s = exactly(c, c.raw_samples(), 1, "witness");
  const auto height = c.rational(c.opts.threshold, "--M");
  const auto eps = c.rational(c.opts.epsilon, "--epsilon");
  const auto w = witness_large_horofunction(s[0], height, eps, *c.metric_);
  Outcome o{"computed", {{"sample", s[0].label()}, {"witness", to_json(w)}}};
  if (!w.found) {
    o.status = "inconclusive";
    o.code = kExitInconclusive;
  }
  return o;
}

Outcome cmd_quotient(Context& c) {
  const auto raw = c.raw_samples();
  if (raw.size() < 2) throw UsageError("quotient needs at least two samples");
  const auto probes = c.probe_ball(2);
  const auto s = exactly(c, raw, raw.size(), "quotient", probes);
  const auto q = quotient_partition(s, c.rational(c.opts.threshold, "--M"), probes,
                                    parse_rational(c.opts.tol), *c.metric_);
  Outcome o{"computed", to_json(q)};
  if (!q.metric_inconclusive.empty()) {
    o.status = "inconclusive";
    o.code = kExitInconclusive;
  }
  return o;
}

Outcome cmd_extended(Context& c) {
  const auto raw = c.raw_samples();
  std::vector<GroupElement> points;
  if (c.opts.x) points.push_back(parse_element(c.spec, *c.opts.x));
  if (c.opts.y) points.push_back(parse_element(c.spec, *c.opts.y));
  if (raw.size() + points.size() != 2)
    throw UsageError("extended needs two arguments among --samples/--ray and --x/--y");
  const auto s = exactly(c, raw, raw.size(), "extended", points);
  const auto& m = *c.metric_;
  ExtendedProduct e;
  Json args = Json::array();
  if (s.size() == 2) {
    e = extended_product(s[0], s[1], m);
    args = {s[0].label(), s[1].label()};
  } else if (s.size() == 1) {
    e = extended_product(s[0], points[0], m);
    args = {s[0].label(), to_string(points[0])};
  } else {
    e = extended_product(points[0], points[1], m);
    args = {to_string(points[0]), to_string(points[1])};
  }
  return {"computed", {{"arguments", std::move(args)}, {"product", to_json(e)}}};
}

Outcome cmd_continuity(Context& c) {
  const auto raw = c.raw_samples();
  const auto& target = need(c.opts.target, "--target");
  const auto probes = c.probe_ball(2);
  const auto s = exactly(c, raw, raw.size(), "continuity", probes);
  std::optional<BoundarySample> omega;
  std::vector<BoundarySample> omegas;
  for (const auto& x : s) {
    if (x.label() == target) omega = x;
    else omegas.push_back(x);
  }
  if (!omega) throw UsageError("no sample labelled '" + target + "'");
  const auto rows = continuity_probe(omegas, *omega, c.opts.probe_radius.value_or(2),
                                     c.rational(c.opts.threshold, "--M"), *c.metric_);
  Json table = Json::array();
  for (const auto& r : rows) table.push_back(to_json(r));
  return {"computed", {{"target", target}, {"rows", std::move(table)}}};
}

Outcome cmd_mean_scan(Context& c) {
  if (c.opts.rays.empty()) throw UsageError("mean-scan needs at least one --ray");
  if (c.opts.n_values.empty()) throw UsageError("mean-scan needs --n");
  std::vector<RaySpec> omegas;
  std::vector<GroupElement> elems;
  for (const auto& r : c.opts.rays) {
    omegas.push_back(parse_ray_spec(c.spec, r));
    if (const auto* p = std::get_if<LatticePath>(&omegas.back())) {
      elems.push_back(p->offset);
      elems.push_back(p->direction);
    }
  }
  std::vector<GroupElement> gens;
  if (c.opts.gens.empty()) gens = generators(c.spec);
  for (const auto& g : c.opts.gens) gens.push_back(parse_element(c.spec, g));
  for (const auto& g : gens) {
    elems.push_back(g);
    for (const auto& w : omegas)
      if (const auto* p = std::get_if<LatticePath>(&w)) elems.push_back(act(c.spec, g, p->offset));
  }
  const auto& m = c.metric(elems, 2);
  const auto scan = defect_decay_scan(c.spec, gens, omegas, c.opts.n_values, m, c.opts.inclusive);
  Outcome o;
  o.result = to_json(scan);
  o.result["gens"] = to_json(gens);
  o.result["inclusive"] = c.opts.inclusive;
  if (c.opts.format == "csv") o.text = scan_csv(scan);
  return o;
}

std::vector<std::string> strip_out(const std::vector<std::string>& command) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < command.size(); ++i) {
    if (command[i] == "--out") {
      ++i;
      continue;
    }
    if (command[i].starts_with("--out=")) continue;
    out.push_back(command[i]);
  }
  return out;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  const auto recorded = Json::parse(read_arg(o.report));
  if (recorded.value("schema", "") != kSchema) throw UsageError("not a " + std::string(kSchema) + " report");
  const auto command = strip_out(recorded.at("command").get<std::vector<std::string>>());
  std::ostringstream rerun_out, rerun_err;
  const int code = run_cli(command, rerun_out, rerun_err);
  Json mismatched = Json::array();
  std::string status = "match";
  if (code != kExitOk && code != kExitInconclusive) {
    status = "mismatch";
    mismatched.push_back("exit");
    err << rerun_err.str();
  } else {
    const auto fresh = Json::parse(rerun_out.str());
    for (const auto* key : {"schema", "tool", "subcommand", "config", "status", "result"})
      if (fresh.value(key, Json()) != recorded.value(key, Json())) mismatched.push_back(key);
    if (!mismatched.empty()) status = "mismatch";
  }
  const auto report = envelope({"verify", o.report}, "verify", {{"report", o.report}}, status,
                               {{"replayed", command}, {"exit", code}, {"mismatched", mismatched}});
  const auto text = dump(report);
  if (o.out.empty()) out << text;
  else write_atomic(o.out, text);
  return status == "match" ? kExitOk : kExitInternal;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Boundary computations on Cayley graphs of free groups and lattices", "bscope"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  auto common = [&o](CLI::App* sub) {
    sub->add_option("--group", o.group, "Group spec: free:<k>, free:<k>:gens=..., zd:<d>:gens=(..),...")->required();
    sub->add_option("--radius", o.radius, "Window radius (ball radius for ball/delta)");
    sub->add_option("--horizon", o.horizon, "Ray horizon H, or sample truncation");
    sub->add_option("--seed", o.seed, "Recorded in the config; no operation samples randomly");
    sub->add_option("--out", o.out, "Report path, written atomically");
    sub->add_option("--format", o.format, "json or csv (csv: mean-scan only)")
        ->check(CLI::IsMember({"json", "csv"}));
  };
  auto with_samples = [&o](CLI::App* sub) {
    sub->add_option("--samples", o.samples, "@file.json or inline JSON list of {label, points|ray|table}");
    sub->add_option("--ray", o.rays, "Ray spec; repeatable");
  };
  auto with_probes = [&o](CLI::App* sub) {
    sub->add_option("--probe-radius", o.probe_radius, "Probe ball radius");
    sub->add_option("--tol", o.tol, "Stabilization tolerance (exact for word metrics)");
  };
  auto with_m = [&o](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--M", o.threshold, "Divergence threshold M");
    if (required) opt->required();
  };

  struct Entry {
    CLI::App* app;
    Outcome (*run)(Context&);
  };
  std::vector<Entry> entries;
  auto add = [&](const char* name, const char* help, Outcome (*run)(Context&)) {
    auto* sub = app.add_subcommand(name, help);
    common(sub);
    entries.push_back({sub, run});
    return sub;
  };

  add("ball", "Enumerate a Cayley ball", cmd_ball);
  add("delta", "Exact four-point delta of a Cayley ball", cmd_delta)
      ->add_option("--threads", o.threads, "Worker threads (0: hardware)");
  auto* product = add("product", "Gromov product and horofunction values", cmd_product);
  product->add_option("--x", o.x)->required();
  product->add_option("--y", o.y)->required();
  product->add_option("--z", o.z, "Horofunction centre");
  auto* horofn = add("horofn", "Horofunction profiles of samples", cmd_horofn);
  with_samples(horofn);
  with_probes(horofn);
  auto* classify = add("classify", "Classify a ray truncation", cmd_classify);
  with_samples(classify);
  classify->add_option("--clause", o.clause, "geodesic, almost-geodesic, weakly-geodesic or all");
  classify->add_option("--epsilon", o.epsilon);
  classify->add_option("--probe-radius", o.probe_radius, "Probe ball for the weakly-geodesic clause");
  auto* equiv = add("equiv", "Gromov equivalence certificate of two samples", cmd_equiv);
  with_samples(equiv);
  with_m(equiv, true);
  equiv->add_flag("--double-index", o.double_index, "Use (a_n . b_k) over n, k >= N");
  auto* mequiv = add("metric-equiv", "Metric-boundary equivalence of two samples", cmd_metric_equiv);
  with_samples(mequiv);
  with_probes(mequiv);
  auto* witness = add("witness", "Point with a large horofunction value along a sample", cmd_witness);
  with_samples(witness);
  with_m(witness, true);
  witness->add_option("--epsilon", o.epsilon)->required();
  auto* quotient = add("quotient", "Partition samples into Gromov classes", cmd_quotient);
  with_samples(quotient);
  with_probes(quotient);
  with_m(quotient, true);
  auto* extended = add("extended", "Extended Gromov product", cmd_extended);
  with_samples(extended);
  extended->add_option("--x", o.x);
  extended->add_option("--y", o.y);
  auto* continuity = add("continuity", "Agreement radius and extended product against a target", cmd_continuity);
  with_samples(continuity);
  with_probes(continuity);
  with_m(continuity, true);
  continuity->add_option("--target", o.target, "Label of the target sample")->required();
  auto* scan = add("mean-scan", "Translation defect of uniform means along rays", cmd_mean_scan);
  scan->add_option("--ray", o.rays, "Ray spec; repeatable")->required();
  scan->add_option("--gen", o.gens, "Group element; repeatable (default: generators)");
  scan->add_option("--n", o.n_values, "Mean sizes")->delimiter(',')->required();
  scan->add_flag("--inclusive", o.inclusive, "Use gamma(0..n-1) instead of gamma(1..n)");
  auto* verify = app.add_subcommand("verify", "Recompute a report and compare");
  verify->add_option("report", o.report, "@report.json")->required();
  verify->add_option("--out", o.out);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (verify->parsed()) return cmd_verify(o, out, err);
    for (const auto& e : entries) {
      if (!e.app->parsed()) continue;
      if (o.format == "csv" && e.app->get_name() != "mean-scan")
        throw UsageError("--format csv is only available for mean-scan");
      Context ctx(o);
      auto outcome = e.run(ctx);
      const auto text = outcome.text
                            ? *outcome.text
                            : dump(envelope(args, e.app->get_name(), ctx.config(), outcome.status,
                                            std::move(outcome.result)));
      if (o.out.empty()) out << text;
      else write_atomic(o.out, text);
      return outcome.code;
    }
  } catch (const ResourceError& e) {
    err << "resource cap: " << e.what() << '\n';
    return kExitResource;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed JSON input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace bscope
