#pragma once

// Structured result files: JSON test reports, CSV power curves, and the run
// record whose digest every output embeds.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "netlap/clt.hpp"
#include "netlap/inference.hpp"
#include "netlap/power.hpp"

namespace netlap {

inline constexpr const char* kSoftwareVersion = NETLAP_VERSION_STRING;
inline constexpr const char* kTestReportSchema = "netlap.test_report/1";

std::string sha256_hex(std::string_view bytes);

/// Provenance of one invocation. digest() covers only the analytical identity
/// (config digest, seed, software version), so it is stable across
/// re-serialization, timestamps, and worker counts.
struct RunRecord {
  std::string command_line;
  std::string config_digest;
  std::uint64_t seed = 0;
  std::string software_version = kSoftwareVersion;
  std::string started_at;
  std::string finished_at;
  std::vector<std::string> outputs;

  std::string digest() const;
};

nlohmann::json to_json(const RunRecord& r);
RunRecord run_record_from_json(const nlohmann::json& j);

/// UTC timestamp in ISO-8601 form.
std::string utc_timestamp();

nlohmann::json to_json(const EstimatorMeta& m);
nlohmann::json to_json(const TestReport& r);

/// Full report document: the test fields plus software version, input
/// digest, run record and its digest.
nlohmann::json test_report_document(const TestReport& r, const std::string& input_digest,
                                    const RunRecord& run);

/// CSV with columns
/// topology,d,n,T,noise,association,effect_size,rejections,reps,power,std_error
/// preceded by a single '# run_digest=<hex>' comment line.
std::string power_curve_csv(const PowerStudyConfig& config, const PowerCurve& curve,
                            const std::string& run_digest);

nlohmann::json to_json(const CltReport& r);

}  // namespace netlap
