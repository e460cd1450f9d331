#include "netlap/config.hpp"

#include <charconv>
#include <string>
#include <fstream>
#include <sstream>

#include "netlap/errors.hpp"

namespace netlap {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(const std::string& key, const std::string& value, const std::string& why) {
  throw ValidationError("config field '" + key + "': " + why + " (got '" + value + "')");
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (value.empty() || ec != std::errc() || ptr != end) bad(key, value, "not a valid number");
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  bad(key, value, "expected true or false");
}

std::string number(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

bool apply_common(TopologySpec& topo, MixtureParams& mix, std::uint64_t& seed,
                  const std::string& key, const std::string& value) {
  if (key == "topology") {
    if (value == "block_diagonal" || value == "block")
      topo.kind = TopologyKind::kBlockDiagonal;
    else if (value == "small_world")
      topo.kind = TopologyKind::kSmallWorld;
    else
      bad(key, value, "expected block_diagonal or small_world");
  } else if (key == "d") {
    topo.d = parse_number<int>(key, value);
  } else if (key == "rewire_beta") {
    topo.rewire_beta = parse_number<double>(key, value);
  } else if (key == "seed") {
    seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "lambda_exp") {
    mix.lambda_exp = parse_number<double>(key, value);
  } else if (key == "lambda_kind") {
    if (value == "mean")
      mix.lambda_kind = ExpParametrization::kMean;
    else if (value == "rate")
      mix.lambda_kind = ExpParametrization::kRate;
    else
      bad(key, value, "expected mean or rate");
  } else if (key == "mu1") {
    mix.mu1 = parse_number<double>(key, value);
  } else if (key == "mu2") {
    mix.mu2 = parse_number<double>(key, value);
  } else if (key == "sigma2") {
    mix.sigma2 = parse_number<double>(key, value);
  } else {
    return false;
  }
  return true;
}

void render_common(Settings& out, const TopologySpec& topo, const MixtureParams& mix,
                   std::uint64_t seed) {
  out["d"] = std::to_string(topo.d);
  out["lambda_exp"] = number(mix.lambda_exp);
  out["lambda_kind"] = to_string(mix.lambda_kind);
  out["mu1"] = number(mix.mu1);
  out["mu2"] = number(mix.mu2);
  out["rewire_beta"] = number(topo.rewire_beta);
  out["seed"] = std::to_string(seed);
  out["sigma2"] = number(mix.sigma2);
  out["topology"] = to_string(topo.kind);
}

std::string render(const Settings& s) {
  std::string out;
  for (const auto& [k, v] : s) out += k + "=" + v + "\n";
  return out;
}

}  // namespace

Settings parse_settings(std::istream& in, const std::string& source) {
  Settings out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = source + ":" + std::to_string(lineno);
    if (eq == std::string::npos) throw ValidationError(where + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ValidationError(where + ": empty key");
    if (!out.emplace(key, value).second)
      throw ValidationError(where + ": duplicate key '" + key + "'");
  }
  return out;
}

Settings read_settings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(path.string() + ": cannot open config file");
  return parse_settings(in, path.string());
}

void apply_setting(PowerStudyConfig& c, const std::string& key, const std::string& value) {
  if (apply_common(c.topology, c.mixture, c.seed, key, value)) return;
  if (key == "n") {
    c.n = parse_number<int>(key, value);
  } else if (key == "T") {
    c.T = parse_number<int>(key, value);
  } else if (key == "reps") {
    c.reps = parse_number<int>(key, value);
  } else if (key == "bins") {
    c.bins = parse_number<int>(key, value);
  } else if (key == "alpha") {
    c.alpha = parse_number<double>(key, value);
  } else if (key == "delta") {
    c.estimator.delta = parse_number<double>(key, value);
  } else if (key == "threshold") {
    c.estimator.threshold = parse_bool(key, value);
  } else if (key == "pd") {
    c.estimator.project_pd = parse_bool(key, value);
  } else if (key == "pd_tol") {
    c.estimator.pd.tol = parse_number<double>(key, value);
  } else if (key == "pd_max_iter") {
    c.estimator.pd.max_iter = parse_number<int>(key, value);
  } else if (key == "pd_anderson") {
    c.estimator.pd.anderson_depth = parse_number<int>(key, value);
  } else if (key == "pd_floor_rel") {
    c.estimator.pd.floor_rel = parse_number<double>(key, value);
  } else if (key == "noise") {
    if (value == "gaussian_iid" || value == "gaussian")
      c.noise.kind = NoiseKind::kGaussianIid;
    else if (value == "ar1")
      c.noise.kind = NoiseKind::kAr1;
    else
      bad(key, value, "expected gaussian_iid or ar1");
  } else if (key == "ar_phi") {
    c.noise.phi = parse_number<double>(key, value);
  } else if (key == "ar_drift") {
    c.noise.drift = parse_number<double>(key, value);
  } else if (key == "association") {
    if (value == "covariance")
      c.association = AssociationKind::kCovariance;
    else if (value == "mutual_information" || value == "mi")
      c.association = AssociationKind::kMutualInformation;
    else
      bad(key, value, "expected covariance or mutual_information");
  } else if (key == "ladder") {
    c.effect_ladder.clear();
    std::string item;
    std::istringstream items(value);
    while (std::getline(items, item, ',')) c.effect_ladder.push_back(parse_number<int>(key, trim(item)));
    if (c.effect_ladder.empty()) bad(key, value, "empty ladder");
  } else {
    throw ValidationError("config: unknown key '" + key + "'");
  }
}

void apply_setting(CltConfig& c, const std::string& key, const std::string& value) {
  if (apply_common(c.topology, c.mixture, c.seed, key, value)) return;
  if (key == "n")
    c.n = parse_number<int>(key, value);
  else if (key == "T")
    c.T = parse_number<int>(key, value);
  else if (key == "reps")
    c.reps = parse_number<int>(key, value);
  else
    throw ValidationError("config: unknown key '" + key + "' for clt diagnostic");
}

PowerStudyConfig power_config_from(const Settings& settings) {
  PowerStudyConfig c;
  for (const auto& [k, v] : settings) apply_setting(c, k, v);
  validate(c);
  return c;
}

CltConfig clt_config_from(const Settings& settings) {
  CltConfig c;
  for (const auto& [k, v] : settings) apply_setting(c, k, v);
  return c;
}

std::string canonical_text(const PowerStudyConfig& c) {
  Settings s;
  render_common(s, c.topology, c.mixture, c.seed);
  std::string ladder;
  for (std::size_t i = 0; i < c.effect_ladder.size(); ++i)
    ladder += (i ? "," : "") + std::to_string(c.effect_ladder[i]);
  s["T"] = std::to_string(c.T);
  s["alpha"] = number(c.alpha);
  s["ar_drift"] = number(c.noise.drift);
  s["ar_phi"] = number(c.noise.phi);
  s["association"] = to_string(c.association);
  s["bins"] = std::to_string(c.bins);
  s["delta"] = number(c.estimator.delta);
  s["ladder"] = ladder;
  s["n"] = std::to_string(c.n);
  s["noise"] = to_string(c.noise.kind);
  s["pd"] = c.estimator.project_pd ? "true" : "false";
  s["pd_anderson"] = std::to_string(c.estimator.pd.anderson_depth);
  s["pd_floor_rel"] = number(c.estimator.pd.floor_rel);
  s["pd_max_iter"] = std::to_string(c.estimator.pd.max_iter);
  s["pd_tol"] = number(c.estimator.pd.tol);
  s["reps"] = std::to_string(c.reps);
  s["threshold"] = c.estimator.threshold ? "true" : "false";
  return render(s);
}

std::string canonical_text(const CltConfig& c) {
  Settings s;
  render_common(s, c.topology, c.mixture, c.seed);
  s["T"] = std::to_string(c.T);
  s["n"] = std::to_string(c.n);
  s["reps"] = std::to_string(c.reps);
  return render(s);
}

}  // namespace netlap
