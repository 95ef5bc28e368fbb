#include "bscope/report.hpp"

#include <cstdio>
#include <sstream>

namespace bscope {

namespace {

Json str(const Rational& r) { return to_string(r); }
Json str(const HalfExact& h) { return to_string(h); }

template <class T>
Json opt(const std::optional<T>& v) {
  return v ? Json(str(*v)) : Json(nullptr);
}

std::string decimal(const Rational& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", to_double(r));
  return buf;
}

Json pairs(const std::vector<PairVerdict>& v, const std::vector<std::string>& labels) {
  Json out = Json::array();
  for (const auto& p : v) out.push_back({labels.at(p.a), labels.at(p.b)});
  return out;
}

}  // namespace

Json to_json(const GroupElement& g) { return to_string(g); }

Json to_json(const std::vector<GroupElement>& gs) {
  Json out = Json::array();
  for (const auto& g : gs) out.push_back(to_string(g));
  return out;
}

Json to_json(const CayleyBall& ball) {
  Json elements = Json::array();
  for (std::size_t i = 0; i < ball.elements.size(); ++i)
    elements.push_back({{"id", i}, {"repr", to_string(ball.elements[i])}, {"norm", ball.norms[i]}});
  return {{"spec", to_string(ball.spec)},
          {"radius", ball.radius},
          {"size", ball.elements.size()},
          {"elements", std::move(elements)}};
}

Json to_json(const DivergenceCertificate& c) {
  Json values = Json::array();
  for (const auto& v : c.values) values.push_back(str(v));
  return {{"quantity", c.quantity},
          {"threshold", str(c.threshold)},
          {"pass", c.pass},
          {"first_passing", c.first_passing ? Json(*c.first_passing) : Json(nullptr)},
          {"values", std::move(values)}};
}

Json to_json(const ClassificationReport& r) {
  Json witness = nullptr;
  if (r.witness) {
    witness = {{"t", str(r.witness->t)},
               {"s", str(r.witness->s)},
               {"probe", r.witness->probe ? to_json(*r.witness->probe) : Json(nullptr)},
               {"inequality", r.witness->inequality},
               {"defect", str(r.witness->defect)}};
  }
  return {{"clause", to_string(r.clause)},
          {"epsilon", opt(r.epsilon)},
          {"verdict", r.pass ? "pass" : "fail"},
          {"N", r.threshold ? Json(*r.threshold) : Json(nullptr)},
          {"witness", std::move(witness)},
          {"max_defect", str(r.max_defect)},
          {"tail_defect", str(r.tail_defect)}};
}

Json to_json(const ProbeProfile& p) {
  return {{"probe", to_json(p.probe)},
          {"values", p.values},
          {"stabilization_index", p.stabilization_index},
          {"stable", p.stable},
          {"value", p.stable ? str(p.value) : Json(nullptr)}};
}

Json to_json(const HorofunctionProfile& p) {
  Json probes = Json::array();
  for (const auto& q : p.probes) probes.push_back(to_json(q));
  return {{"probes", std::move(probes)}, {"unstable", to_json(p.unstable())}};
}

Json to_json(const MetricEquivReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"probe", to_json(row.probe)},
                    {"a", opt(row.value_a)},
                    {"b", opt(row.value_b)},
                    {"difference", opt(row.difference)}});
  return {{"verdict", to_string(r.verdict)},
          {"unstable_probes", to_json(r.unstable_probes)},
          {"rows", std::move(rows)}};
}

Json to_json(const HorofunctionWitness& w) {
  return {{"found", w.found},
          {"sphere_radius", w.sphere_radius},
          {"z", w.found ? to_json(w.z) : Json(nullptr)},
          {"indices", w.indices},
          {"bound", w.bound},
          {"recurrences_in_tail", w.recurrences_in_tail},
          {"tail_length", w.tail_length}};
}

Json to_json(const QuotientPartition& q) {
  Json pairwise = Json::array();
  for (std::size_t i = 0; i < q.labels.size(); ++i)
    for (std::size_t j = i + 1; j < q.labels.size(); ++j)
      if (q.pairwise[i][j])
        pairwise.push_back({{"a", q.labels[i]}, {"b", q.labels[j]}, {"certificate", to_json(*q.pairwise[i][j])}});
  Json classes = nullptr;
  if (q.partitioned) {
    classes = Json::array();
    for (const auto& c : q.classes) {
      Json members = Json::array();
      for (auto i : c) members.push_back(q.labels[i]);
      classes.push_back(std::move(members));
    }
  }
  Json trans = Json::array();
  for (const auto& t : q.transitivity_violations)
    trans.push_back({{"x", q.labels[t.x]}, {"y", q.labels[t.y]}, {"z", q.labels[t.z]}});
  return {{"labels", q.labels},
          {"hyperbolic", q.hyperbolic},
          {"partitioned", q.partitioned},
          {"classes", std::move(classes)},
          {"transitivity_violations", std::move(trans)},
          {"refinement_violations", pairs(q.refinement_violations, q.labels)},
          {"metric_inconclusive", pairs(q.metric_inconclusive, q.labels)},
          {"pairwise", std::move(pairwise)}};
}

Json to_json(const ExtendedProduct& e) {
  Json minima = Json::array();
  for (const auto& v : e.tail_minima) minima.push_back(str(v));
  return {{"value", str(e.value)},
          {"exact", e.exact},
          {"tail_constant", e.tail_constant},
          {"tail_minima", std::move(minima)}};
}

Json to_json(const ContinuityRow& r) {
  return {{"label", r.label},
          {"agreement_radius", r.agreement_radius},
          {"extended_product", str(r.product.value)},
          {"tail_constant", r.product.tail_constant}};
}

Json to_json(const EquivarianceReport& r) {
  return {{"pass", r.pass},
          {"shift", r.shift},
          {"dropped", r.dropped},
          {"base_change_identity", r.base_change_identity},
          {"shift_within_bound", r.shift_within_bound},
          {"before", to_json(r.before)},
          {"after", to_json(r.after)}};
}

Json to_json(const ProbabilityMeasure& m) {
  Json out = Json::array();
  for (const auto& [g, w] : m.weights()) out.push_back({to_string(g), str(w)});
  return out;
}

Json to_json(const DefectScan& s) {
  Json entries = Json::array();
  for (const auto& e : s.entries)
    entries.push_back({{"g", to_json(e.g)},
                       {"omega", to_string(e.omega)},
                       {"n", e.n},
                       {"defect", str(e.defect)},
                       {"within_bound", e.within_bound}});
  Json max_by_n = Json::array();
  for (const auto& [n, d] : s.max_by_n) max_by_n.push_back({{"n", n}, {"max_defect", str(d)}});
  return {{"constant", s.constant},
          {"within_bound", s.within_bound},
          {"pairs_covered", s.pairs_covered},
          {"max_by_n", std::move(max_by_n)},
          {"entries", std::move(entries)}};
}

Json to_json(const BoundarySample& s) {
  return {{"label", s.label()}, {"horizon", s.horizon()}, {"points", to_json(s.points())}};
}

std::string scan_csv(const DefectScan& s) {
  std::ostringstream out;
  out << "g,omega,n,defect,defect_decimal\n";
  for (const auto& e : s.entries) {
    out << to_string(e.g) << ",\"" << to_string(e.omega) << "\"," << e.n << ','
        << to_string(e.defect) << ',' << decimal(e.defect) << '\n';
  }
  return out.str();
}

Json envelope(const std::vector<std::string>& command, const std::string& subcommand,
              Json config, std::string status, Json result) {
  return {{"schema", kSchema},
          {"tool", {{"name", kToolName}, {"version", kToolVersion}}},
          {"subcommand", subcommand},
          {"command", command},
          {"config", std::move(config)},
          {"status", std::move(status)},
          {"result", std::move(result)}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace bscope
