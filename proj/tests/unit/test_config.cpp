#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "support.hpp"

namespace netlap {
namespace {

Settings parse(const std::string& text) {
  std::istringstream in(text);
  return parse_settings(in, "cfg");
}

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ValidationError& e) {
    return e.what();
  }
  return {};
}

TEST(Settings, ParsesKeyValueLinesWithComments) {
  const Settings s = parse("# header\n\n d = 10 \ntopology=small_world   # trailing\nladder = 0, 1,2\n");
  EXPECT_EQ(s.size(), 3u);
  EXPECT_EQ(s.at("d"), "10");
  EXPECT_EQ(s.at("topology"), "small_world");
  EXPECT_EQ(s.at("ladder"), "0, 1,2");
}

TEST(Settings, ReportsLineOfBadInput) {
  EXPECT_NE(error_of([] { parse("d = 4\nd = 5\n"); }).find("cfg:2"), std::string::npos);
  EXPECT_NE(error_of([] { parse("d = 4\njust words\n"); }).find("cfg:2"), std::string::npos);
  EXPECT_NE(error_of([] { read_settings("/nonexistent/netlap.cfg"); }).find("cannot open"),
            std::string::npos);
}

TEST(PowerConfig, AppliesEveryKey) {
  const PowerStudyConfig c = power_config_from(parse(
      "topology = small_world\nd = 12\nrewire_beta = 0.2\nseed = 99\nlambda_exp = 2\n"
      "lambda_kind = rate\nmu1 = 0.8\nmu2 = 0.1\nsigma2 = 0.3\nn = 40\nT = 120\nreps = 7\n"
      "bins = 6\nalpha = 0.01\ndelta = 1.5\nthreshold = false\npd = true\npd_tol = 1e-6\n"
      "pd_max_iter = 300\npd_floor_rel = 1e-9\npd_anderson = 0\nnoise = ar1\nar_phi = 0.3\n"
      "ar_drift = 0.5\nassociation = mi\nladder = 0,2,4\n"));
  EXPECT_EQ(c.topology.kind, TopologyKind::kSmallWorld);
  EXPECT_EQ(c.topology.d, 12);
  EXPECT_EQ(c.topology.rewire_beta, 0.2);
  EXPECT_EQ(c.seed, 99u);
  EXPECT_EQ(c.mixture.lambda_exp, 2.0);
  EXPECT_EQ(c.mixture.lambda_kind, ExpParametrization::kRate);
  EXPECT_EQ(c.mixture.mu1, 0.8);
  EXPECT_EQ(c.mixture.mu2, 0.1);
  EXPECT_EQ(c.mixture.sigma2, 0.3);
  EXPECT_EQ(c.n, 40);
  EXPECT_EQ(c.T, 120);
  EXPECT_EQ(c.reps, 7);
  EXPECT_EQ(c.bins, 6);
  EXPECT_EQ(c.alpha, 0.01);
  EXPECT_EQ(c.estimator.delta, 1.5);
  EXPECT_FALSE(c.estimator.threshold);
  EXPECT_TRUE(c.estimator.project_pd);
  EXPECT_EQ(c.estimator.pd.tol, 1e-6);
  EXPECT_EQ(c.estimator.pd.max_iter, 300);
  EXPECT_EQ(c.estimator.pd.floor_rel, 1e-9);
  EXPECT_EQ(c.estimator.pd.anderson_depth, 0);
  EXPECT_EQ(c.noise.kind, NoiseKind::kAr1);
  EXPECT_EQ(c.noise.phi, 0.3);
  EXPECT_EQ(c.noise.drift, 0.5);
  EXPECT_EQ(c.association, AssociationKind::kMutualInformation);
  EXPECT_EQ(c.effect_ladder, (std::vector<int>{0, 2, 4}));
}

TEST(PowerConfig, RejectsBadValuesByField) {
  EXPECT_NE(error_of([] { power_config_from(parse("d = ten\n")); }).find("config field 'd'"),
            std::string::npos);
  EXPECT_NE(error_of([] { power_config_from(parse("d = 3\n")); }).find("config field 'd'"),
            std::string::npos);
  EXPECT_NE(error_of([] { power_config_from(parse("noise = pink\n")); }).find("'noise'"),
            std::string::npos);
  EXPECT_NE(error_of([] { power_config_from(parse("threshold = maybe\n")); }).find("'threshold'"),
            std::string::npos);
  EXPECT_NE(error_of([] { power_config_from(parse("colour = red\n")); }).find("unknown key 'colour'"),
            std::string::npos);
  EXPECT_NE(error_of([] { power_config_from(parse("reps = 10.5\n")); }).find("'reps'"),
            std::string::npos);
  EXPECT_NE(error_of([] { power_config_from(parse("ladder = 2,4\n")); }).find("'ladder'"),
            std::string::npos);
}

TEST(CltConfig, OnlyAcceptsItsKeys) {
  const CltConfig c = clt_config_from(parse("d = 6\nn = 50\nreps = 30\nT = 80\nseed = 4\n"));
  EXPECT_EQ(c.topology.d, 6);
  EXPECT_EQ(c.n, 50);
  EXPECT_EQ(c.reps, 30);
  EXPECT_EQ(c.T, 80);
  EXPECT_EQ(c.seed, 4u);
  EXPECT_THROW(clt_config_from(parse("alpha = 0.1\n")), ValidationError);
}

TEST(CanonicalText, SortedCompleteAndRoundTrips) {
  PowerStudyConfig c;
  c.effect_ladder = {0, 1, 3};
  c.estimator.delta = 0.1;
  const std::string text = canonical_text(c);
  std::vector<std::string> keys;
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) keys.push_back(line.substr(0, line.find('=')));
  EXPECT_TRUE(std::is_sorted(keys.begin(), keys.end()));
  EXPECT_EQ(keys.size(), 26u);
  const PowerStudyConfig back = power_config_from(parse(text));
  EXPECT_EQ(canonical_text(back), text);
  PowerStudyConfig other = c;
  other.seed = 2;
  EXPECT_NE(canonical_text(other), text);

  const CltConfig clt;
  EXPECT_EQ(canonical_text(clt_config_from(parse(canonical_text(clt)))), canonical_text(clt));
}

TEST(Settings, ReadsFiles) {
  const auto dir = testing::scratch_dir("config");
  const auto path = dir / "power.cfg";
  std::ofstream(path) << "d = 8\nreps = 3\n";
  const Settings s = read_settings(path);
  EXPECT_EQ(s.at("d"), "8");
  EXPECT_EQ(power_config_from(s).reps, 3);
}

}  // namespace
}  // namespace netlap
