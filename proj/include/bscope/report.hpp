#pragma once

// JSON and CSV serialization of every result type. Exact rationals are
// written as strings ("p" or "p/q"); counts and indices as integers.

#include "bscope/action.hpp"
#include "bscope/boundary.hpp"
#include "bscope/cayley.hpp"
#include "bscope/metric.hpp"
#include "bscope/rays.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace bscope {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "bscope/1";
inline constexpr const char* kToolName = "bscope";
inline constexpr const char* kToolVersion = "1.0.0";

Json to_json(const GroupElement& g);
Json to_json(const std::vector<GroupElement>& gs);
Json to_json(const CayleyBall& ball);
Json to_json(const DivergenceCertificate& c);
Json to_json(const ClassificationReport& r);
Json to_json(const ProbeProfile& p);
Json to_json(const HorofunctionProfile& p);
Json to_json(const MetricEquivReport& r);
Json to_json(const HorofunctionWitness& w);
Json to_json(const QuotientPartition& q);
Json to_json(const ExtendedProduct& e);
Json to_json(const ContinuityRow& r);
Json to_json(const EquivarianceReport& r);
Json to_json(const ProbabilityMeasure& m);
Json to_json(const DefectScan& s);
Json to_json(const BoundarySample& s);

/// Columns: g, omega, n, defect, defect_decimal.
std::string scan_csv(const DefectScan& s);

/// The versioned envelope shared by every report.
Json envelope(const std::vector<std::string>& command, const std::string& subcommand,
              Json config, std::string status, Json result);

/// Two-space indented text with a trailing newline.
std::string dump(const Json& j);

}  // namespace bscope
