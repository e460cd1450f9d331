#include "netlap/report.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <chrono>
#include <ctime>
#include <sstream>

#include "netlap/errors.hpp"

namespace netlap {

namespace {

std::string number(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error("sha256 digest failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 0xF]);
  }
  return out;
}

std::string RunRecord::digest() const {
  const nlohmann::json identity{
      {"config_digest", config_digest}, {"seed", seed}, {"software_version", software_version}};
  return sha256_hex(identity.dump());
}

nlohmann::json to_json(const RunRecord& r) {
  return {{"command_line", r.command_line}, {"config_digest", r.config_digest},
          {"seed", r.seed},                 {"software_version", r.software_version},
          {"started_at", r.started_at},     {"finished_at", r.finished_at},
          {"outputs", r.outputs}};
}

RunRecord run_record_from_json(const nlohmann::json& j) {
  RunRecord r;
  r.command_line = j.at("command_line").get<std::string>();
  r.config_digest = j.at("config_digest").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.software_version = j.at("software_version").get<std::string>();
  r.started_at = j.at("started_at").get<std::string>();
  r.finished_at = j.at("finished_at").get<std::string>();
  r.outputs = j.at("outputs").get<std::vector<std::string>>();
  return r;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::json to_json(const EstimatorMeta& m) {
  return {{"kind", to_string(m.kind)},
          {"thresholded", m.thresholded},
          {"delta", m.delta},
          {"pd_projected", m.pd_projected},
          {"pd_floor", m.pd_floor},
          {"pd_iterations", m.pd_iterations},
          {"pd_gap", m.pd_gap},
          {"pooling", m.pooling}};
}

nlohmann::json to_json(const TestReport& r) {
  nlohmann::json groups = nlohmann::json::array();
  for (std::size_t i = 0; i < r.group_labels.size(); ++i)
    groups.push_back({{"label", r.group_labels[i]}, {"n", r.group_sizes[i]}});
  return {{"test_kind", to_string(r.kind)}, {"statistic", r.statistic}, {"dof", r.dof},
          {"p_value", r.p_value},           {"d", r.d},                 {"groups", groups},
          {"estimator", to_json(r.estimator)}};
}

nlohmann::json test_report_document(const TestReport& r, const std::string& input_digest,
                                    const RunRecord& run) {
  nlohmann::json doc = to_json(r);
  doc["schema"] = kTestReportSchema;
  doc["software_version"] = run.software_version;
  doc["input_digest"] = input_digest;
  doc["run_record"] = to_json(run);
  doc["run_digest"] = run.digest();
  return doc;
}

std::string power_curve_csv(const PowerStudyConfig& config, const PowerCurve& curve,
                            const std::string& run_digest) {
  std::ostringstream out;
  out << "# run_digest=" << run_digest << '\n';
  out << "topology,d,n,T,noise,association,effect_size,rejections,reps,power,std_error\n";
  for (const PowerRow& row : curve.rows) {
    out << to_string(config.topology.kind) << ',' << config.topology.d << ',' << config.n << ','
        << config.T << ',' << to_string(config.noise.kind) << ','
        << to_string(config.association) << ',' << number(row.effect_size) << ','
        << row.rejections << ',' << row.reps << ',' << number(row.power) << ','
        << number(row.std_error) << '\n';
  }
  return out.str();
}

nlohmann::json to_json(const CltReport& r) {
  return {{"m", r.m},
          {"rel_frobenius_error", r.rel_frobenius_error},
          {"sandwich_error", r.sandwich_error},
          {"skewness", r.skewness},
          {"skewness_se", r.skewness_se},
          {"max_abs_skewness", r.max_abs_skewness}};
}

}  // namespace netlap
