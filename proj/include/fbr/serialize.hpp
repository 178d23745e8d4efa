#pragma once

#include <json.hpp>

#include "fbr/csp.hpp"
#include "fbr/homophily.hpp"
#include "fbr/mechanism.hpp"
#include "fbr/netstats.hpp"
#include "fbr/reports.hpp"
#include "fbr/verify.hpp"

namespace fbr {

// JSON views with stable key order.
using Json = nlohmann::ordered_json;

/// {n, reports: [{agent, pairs: [[j, k, sign], ...]}, ...]}
Json to_json(const ReportProfile& reports);

/// Inverse of to_json against a known graph. Every agent must report on
/// exactly its observable pairs, each with j < k. Throws
/// std::invalid_argument otherwise.
ReportProfile reports_from_json(const Json& doc, std::shared_ptr<const Observability> obs);

Json to_json(const Ranking& r);
Json to_json(const CoarseRanking& r);
Json to_json(const MechanismTrace& t);
Json to_json(const CharacteristicProfile& theta);
Json to_json(const DeviationReport& d);
Json to_json(const EfficiencyViolation& v);
Json to_json(const NetworkSummary& s);
Json to_json(const InformationDecomposition& d);
Json to_json(const CspCertificate& c);
Json to_json(const McEstimate& m);

/// Verifier report: {checked: {...}, violations: [...], certificate: {...}}.
Json verifier_report(const IcResult& r);
Json verifier_report(const EfficiencyResult& r);

}  // namespace fbr
