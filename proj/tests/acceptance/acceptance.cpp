// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Tolerances are fixed here and must not be tuned to the outcome.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "netlap/cli.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace {

using namespace netlap;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int all_cores() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

PowerStudyConfig null_study(int d, int n, int reps) {
  PowerStudyConfig c;
  c.topology.d = d;
  c.n = n;
  c.reps = reps;
  c.effect_ladder = {0};
  return c;
}

// 1. T2 null rejection at d=5, n=200, 400 reps in [0.02, 0.09]; <= 5 min on one core.
Outcome null_calibration() {
  const auto t0 = Clock::now();
  const PowerCurve curve = run_power_study(null_study(5, 200, 400), 1);
  const double secs = seconds_since(t0);
  const double rate = curve.rows.front().power;
  return {rate >= 0.02 && rate <= 0.09 && secs <= 300.0,
          fmt("rejection %.4f (%d/400), bound [0.02, 0.09]; %.1f s on 1 worker, bound 300 s", rate,
              curve.rows.front().rejections, secs)};
}

// 2. d=10, n=100, T=200, 100 reps per rung: no drop beyond 2 joint SE, top rung >= 0.9; <= 15 min.
Outcome power_curve_shape() {
  PowerStudyConfig c;
  c.topology.d = 10;
  c.n = 100;
  c.T = 200;
  c.reps = 100;
  const auto t0 = Clock::now();
  const PowerCurve curve = run_power_study(c, 1);
  const double secs = seconds_since(t0);
  bool monotone = true;
  std::string rows;
  for (std::size_t i = 0; i < curve.rows.size(); ++i) {
    const PowerRow& r = curve.rows[i];
    rows += fmt("%sr=%d eff=%.3f pow=%.2f", i ? ", " : "", r.rewire_count, r.effect_size, r.power);
    if (i > 0) {
      const PowerRow& p = curve.rows[i - 1];
      const double joint = std::sqrt(p.std_error * p.std_error + r.std_error * r.std_error);
      if (p.power - r.power > 2.0 * joint) monotone = false;
    }
  }
  const double top = curve.rows.back().power;
  const bool ok = curve.rows.size() >= 2 && monotone && top >= 0.9 && secs <= 900.0;
  return {ok, fmt("%s; monotone within 2 SE: %s; top %.2f >= 0.9; %.1f s on 1 worker, bound 900 s",
                  rows.c_str(), monotone ? "yes" : "no", top, secs)};
}

// 3. d=50, n=20: null rejection > 0.10 over 100 reps.
Outcome type_one_inflation() {
  const auto t0 = Clock::now();
  const PowerCurve curve = run_power_study(null_study(50, 20, 100), all_cores());
  const double rate = curve.rows.front().power;
  return {rate > 0.10, fmt("null rejection %.2f, bound > 0.10; %.1f s on %d workers", rate,
                           seconds_since(t0), all_cores())};
}

// 4. d=5, n=500, 300 replicate means: rel. Frobenius error <= 0.15; <= 2 min.
Outcome clt() {
  CltConfig c;
  c.topology.d = 5;
  c.n = 500;
  c.reps = 300;
  const auto t0 = Clock::now();
  const CltReport r = clt_diagnostic(c);
  const double secs = seconds_since(t0);
  return {r.rel_frobenius_error <= 0.15 && secs <= 120.0,
          fmt("rel. error %.4f, bound 0.15 (sandwich %.4f, max |skew| %.3f vs 3 SE %.3f); %.1f s, "
              "bound 120 s",
              r.rel_frobenius_error, r.sandwich_error, r.max_abs_skewness, 3 * r.skewness_se, secs)};
}

// 5. Estimator oracles.
Outcome estimator_oracles() {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> z;
  Matrix x(20, 3);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = z(rng);
  x.col(1) += 0.6 * x.col(0);
  bool cai = true;
  for (double delta : {0.0, 1.0, 2.0, 3.0})
    cai = cai && cai_liu_threshold(VectorSample(x), delta).matrix == oracle::cai_liu(x, delta);

  double cov_err = 0.0, assoc_err = 0.0;
  for (int rep = 0; rep < 5; ++rep) {
    Matrix y(60, 8);
    for (Eigen::Index i = 0; i < y.size(); ++i) y.data()[i] = 2.0 + z(rng);
    const Matrix want = oracle::two_pass_cov(y, 59.0);
    cov_err = std::max(cov_err, (sample_cov(VectorSample(y)).matrix - want).norm() / want.norm());
    assoc_err = std::max(assoc_err, (association_covariance(y).entries() - want).norm() / want.norm());
  }
  double closed = 0.0;
  for (double t : {0.5, 2.0, 10.0}) closed = std::max(closed, std::abs(chi_square_sf(t, 2) - std::exp(-t / 2)));
  const double q = chi_square_sf(3.8415, 1);
  const double q_oracle = oracle::chi_square_1_sf(3.8415);
  const bool ok = cai && cov_err <= 1e-12 && assoc_err <= 1e-12 && closed <= 1e-10 &&
                  std::abs(q - 0.05) <= 5e-4 && std::abs(q - q_oracle) <= 5e-4;
  return {ok, fmt("cai_liu exact: %s; sample_cov %.1e, association %.1e (bound 1e-12); dof=2 %.1e "
                  "(bound 1e-10); sf(3.8415,1)=%.6f, integration oracle %.6f (bound 5e-4)",
                  cai ? "yes" : "no", cov_err, assoc_err, closed, q, q_oracle)};
}

// 6. nearest_pd: floor on 200 random symmetric inputs, idempotent, identity fixed.
// The floor is judged up to the eigensolver's own accuracy, m * eps * lambda_max
// (tau is ~1e-8, so a relative slack on tau would be below rounding).
Outcome nearest_pd_contract() {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> dim(2, 15);
  int floor_ok = 0, idem_ok = 0, worst_iter = 0;
  double worst_idem = 0.0, worst_short = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    CovEstimate c;
    c.matrix = testing::random_symmetric(dim(rng), rng);
    const CovEstimate once = nearest_pd(c);
    const Vector ev = symmetric_eigenvalues(once.matrix);
    const double ulp = static_cast<double>(ev.size()) * std::numeric_limits<double>::epsilon() *
                       std::abs(ev(ev.size() - 1));
    const double shortfall = std::max(0.0, once.pd_floor - ev(0)) / ulp;
    worst_short = std::max(worst_short, shortfall);
    floor_ok += shortfall <= 1.0;
    worst_iter = std::max(worst_iter, once.pd_iterations);
    const double change = (nearest_pd(once).matrix - once.matrix).norm();
    worst_idem = std::max(worst_idem, change);
    idem_ok += change <= NearestPdOptions{}.tol;
  }
  CovEstimate id;
  id.matrix = Matrix::Identity(3, 3);
  const bool fixed = nearest_pd(id).matrix == id.matrix;
  return {floor_ok == 200 && idem_ok == 200 && fixed,
          fmt("floor held %d/200 (worst shortfall %.2f of m*eps*lmax; max %d iterations); "
              "idempotent %d/200 (max change %.1e); identity fixed: %s",
              floor_ok, worst_short, worst_iter, idem_ok, worst_idem, fixed ? "yes" : "no")};
}

// 7. Invariant suites.
Outcome invariants() {
  std::mt19937_64 rng(7);
  std::vector<std::string> failed;

  // metric axioms
  bool metric = true;
  for (int t = 0; t < 300; ++t) {
    const int d = 3 + static_cast<int>(rng() % 6);
    const auto x = testing::random_laplacian(d, rng), y = testing::random_laplacian(d, rng),
               w = testing::random_laplacian(d, rng);
    const double xy = frobenius_metric(x, y);
    metric = metric && frobenius_metric(x, x) == 0.0 && xy == frobenius_metric(y, x) && xy > 0.0 &&
             xy <= frobenius_metric(x, w) + frobenius_metric(w, y) + 1e-12;
  }
  if (!metric) failed.push_back("metric axioms");

  // permutation of vertex labels, and rescaling of the associations
  double perm_worst = 0.0, scale_worst = 0.0;
  bool floor_inactive = true;
  for (const auto& [d, n] : {std::pair{5, 60}, std::pair{8, 20}}) {
    const Matrix sigma = testing::well_conditioned_sigma(d, 70 + d);
    const auto a = testing::covariance_laplacians(sigma, n, 80, 1);
    const auto b = testing::covariance_laplacians(sigma, n + 4, 80, 2);
    const auto c = testing::covariance_laplacians(sigma, n + 9, 80, 3);
    const LaplacianMatrix l0 = laplacian_from_association(AssociationMatrix(sigma));
    Eigen::PermutationMatrix<Eigen::Dynamic> p(d);
    p.setIdentity();
    std::shuffle(p.indices().data(), p.indices().data() + d, rng);
    const auto stats = [](const std::vector<LaplacianMatrix>& ga, const std::vector<LaplacianMatrix>& gb,
                          const std::vector<LaplacianMatrix>& gc, const LaplacianMatrix& ref) {
      const NetworkGroup na("a", ga), nb("b", gb), nc("c", gc);
      const std::vector<NetworkGroup> k{na, nb, nc};
      const TestReport t1 = test_one_sample(na, ref), t2 = test_two_sample(na, nb),
                       tk = test_k_sample(k);
      return std::vector<TestReport>{t1, t2, tk};
    };
    const auto base = stats(a, b, c, l0);
    const auto perm = stats(testing::permuted(a, p), testing::permuted(b, p), testing::permuted(c, p),
                            LaplacianMatrix(p * l0.entries() * p.transpose()));
    for (int i = 0; i < 3; ++i) {
      perm_worst = std::max(perm_worst, testing::rel_diff(base[i].statistic, perm[i].statistic));
      floor_inactive = floor_inactive && base[i].estimator.pd_iterations == 0;
    }
    for (double s : {0.05, 4.0}) {
      const auto sc = stats(testing::scaled(a, s), testing::scaled(b, s), testing::scaled(c, s),
                            LaplacianMatrix(s * l0.entries()));
      for (int i = 0; i < 3; ++i)
        scale_worst = std::max(scale_worst, testing::rel_diff(base[i].statistic, sc[i].statistic));
    }
  }
  if (perm_worst > 1e-9) failed.push_back("permutation");
  if (scale_worst > 1e-8 || !floor_inactive) failed.push_back("scale");

  // component count under averaging
  int mono = 0;
  std::uniform_real_distribution<double> prob(0.0, 0.4);
  for (int t = 0; t < 500; ++t) {
    const int d = 3 + static_cast<int>(rng() % 8);
    mono += component_monotonicity_check(testing::random_laplacian(d, rng, prob(rng)),
                                         testing::random_laplacian(d, rng, prob(rng)));
  }
  if (mono != 500) failed.push_back("component monotonicity");

  // vectorize round trip
  bool round = true;
  for (int t = 0; t < 200; ++t) {
    const auto l = testing::random_laplacian(2 + static_cast<int>(rng() % 12), rng, 0.7);
    round = round && devectorize(vectorize(l)) == l;
  }
  if (!round) failed.push_back("vectorize round trip");

  std::string which;
  for (const auto& f : failed) which += (which.empty() ? "" : ", ") + f;
  return {failed.empty(),
          fmt("metric axioms %s; permutation max rel. %.1e (bound 1e-9); scale max rel. %.1e "
              "(bound 1e-8, floor inactive: %s); monotonicity %d/500; round trip %s%s%s",
              metric ? "ok" : "FAILED", perm_worst, scale_worst, floor_inactive ? "yes" : "no", mono,
              round ? "exact" : "FAILED", failed.empty() ? "" : "; failing: ", which.c_str())};
}

// 8. d=10, n=10, many small edge shifts: T2 rejects >= 60%, Bonferroni mask empty >= 80%.
Outcome global_vs_local() {
  PowerStudyConfig c;
  c.topology.d = 10;
  c.n = 10;
  const Scenario sc = build_scenario(c, 0);
  // every edge shifted by 0.3 of its per-subject standard deviation, random sign
  const Matrix w = wishart_edge_covariance(sc.sigma1, c.T);
  Rng rng = make_rng(7, Stage::kUser);
  std::bernoulli_distribution coin(0.5);
  Vector shift(w.rows());
  for (Eigen::Index k = 0; k < w.rows(); ++k) shift(k) = (coin(rng) ? 0.3 : -0.3) * std::sqrt(w(k, k));
  const Matrix bump = devectorize(EdgeVector{10, shift}).entries();

  const int reps = 50;
  int rejected = 0, empty = 0, null_rejected = 0;
  for (int r = 0; r < reps; ++r) {
    const auto l1 = simulate_group(c, sc.sigma1, r, 0);
    auto l2 = simulate_group(c, sc.sigma1, r, 1);
    for (auto& l : l2) l = LaplacianMatrix(l.entries() + bump);
    const NetworkGroup g1("g1", l1), g2("g2", l2);
    null_rejected += test_two_sample(g1, NetworkGroup("g2", simulate_group(c, sc.sigma1, r, 1))).p_value < 0.05;
    rejected += test_two_sample(g1, g2).p_value < 0.05;
    empty += !mass_univariate(g1, g2, 0.05, Correction::kBonferroni).corrected.any();
  }
  const double rej = rejected / double(reps), emp = empty / double(reps);
  return {rej >= 0.6 && emp >= 0.8,
          fmt("T2 rejects %.2f (bound >= 0.60); Bonferroni mask empty %.2f (bound >= 0.80); "
              "T2 null rejection at the same n %.2f",
              rej, emp, null_rejected / double(reps))};
}

// 9. simulate power via the CLI: byte-identical output at 1 and 8 workers.
Outcome determinism() {
  const auto dir = testing::scratch_dir("acceptance_determinism");
  std::vector<std::string> base{"simulate", "power", "--d", "10", "--n", "30", "--reps", "30",
                                "--seed", "2024"};
  std::string bytes[2];
  int codes[2];
  const int workers[2] = {1, 8};
  for (int i = 0; i < 2; ++i) {
    auto args = base;
    const auto out = dir / ("power_" + std::to_string(workers[i]) + ".csv");
    args.insert(args.end(), {"--workers", std::to_string(workers[i]), "--out", out.string()});
    std::ostringstream sink_out, sink_err;
    codes[i] = cli::run(args, sink_out, sink_err);
    std::ifstream in(out, std::ios::binary);
    bytes[i].assign(std::istreambuf_iterator<char>(in), {});
  }
  const bool same = codes[0] == 0 && codes[1] == 0 && !bytes[0].empty() && bytes[0] == bytes[1];
  return {same, fmt("exit codes %d/%d; %zu vs %zu bytes; identical: %s", codes[0], codes[1],
                    bytes[0].size(), bytes[1].size(), same ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"null calibration d=5 n=200", null_calibration},
      {"power curve shape d=10 n=100", power_curve_shape},
      {"type-I inflation d=50 n=20", type_one_inflation},
      {"CLT diagnostic d=5 n=500", clt},
      {"estimator oracles", estimator_oracles},
      {"nearest_pd contract", nearest_pd_contract},
      {"invariant suites", invariants},
      {"global vs local power", global_vs_local},
      {"determinism across workers", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << " (" << criteria[i].first
              << "): " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << "/" << criteria.size()
            << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
