#pragma once

// Key-value configuration for simulation studies.
//
//   # comment
//   topology = block_diagonal      # or small_world
//   d = 10
//   n = 100
//   T = 200
//   reps = 100
//   ladder = 0,1,2,4               # rewire counts; omitted -> default ladder
//   noise = gaussian_iid           # or ar1 (ar_phi, ar_drift)
//   association = covariance       # or mutual_information (bins)
//   alpha = 0.05
//   delta = 2
//   threshold = true
//   pd = true
//   seed = 1
//
// Remaining keys: rewire_beta, bins, ar_phi, ar_drift, lambda_exp,
// lambda_kind (mean | rate), mu1, mu2,
// sigma2, pd_tol, pd_max_iter, pd_floor_rel, pd_anderson. Unknown or repeated keys are
// rejected with the offending line.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>

#include "netlap/clt.hpp"
#include "netlap/power.hpp"

namespace netlap {

using Settings = std::map<std::string, std::string>;

Settings parse_settings(std::istream& in, const std::string& source = "<stream>");
Settings read_settings(const std::filesystem::path& path);

/// Applies one key to a config; throws ValidationError naming the field.
void apply_setting(PowerStudyConfig& config, const std::string& key, const std::string& value);
void apply_setting(CltConfig& config, const std::string& key, const std::string& value);

PowerStudyConfig power_config_from(const Settings& settings);
CltConfig clt_config_from(const Settings& settings);

/// Canonical key-value rendering of every analytical field, one per line in
/// sorted order. Equal configs render identically.
std::string canonical_text(const PowerStudyConfig& config);
std::string canonical_text(const CltConfig& config);

}  // namespace netlap
