#include "netlap/cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "netlap/config.hpp"
#include "netlap/errors.hpp"
#include "netlap/graph.hpp"
#include "netlap/matrix_io.hpp"
#include "netlap/report.hpp"

namespace netlap::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Bad combination of otherwise well-formed arguments.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::string read_bytes(const fs::path& p, const std::string& what) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ValidationError(p.string() + ": cannot open " + what);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string join(const std::vector<std::string>& args) {
  std::string out = "netlap";
  for (const auto& a : args) out += " " + a;
  return out;
}

std::string matrix_text(const Matrix& m, const std::string& run_digest) {
  std::ostringstream out;
  out << "# run_digest=" << run_digest << '\n';
  write_matrix_csv(out, m);
  return out.str();
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json mask_json(const BoolMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j) ? 1 : 0);
    rows.push_back(std::move(row));
  }
  return rows;
}

LaplacianMatrix load_laplacian(const Matrix& m, const IngestOptions& opts) {
  if (opts.laplacian) return LaplacianMatrix(m, opts.tol);
  return laplacian_from_association(AssociationMatrix(m, opts.tol));
}

struct Session {
  std::vector<std::string> args;
  std::ostream& out;
  std::string started_at = utc_timestamp();

  RunRecord record(const std::string& canonical, std::uint64_t seed,
                   std::vector<std::string> outputs) const {
    RunRecord r;
    r.command_line = join(args);
    r.config_digest = sha256_hex(canonical);
    r.seed = seed;
    r.started_at = started_at;
    r.finished_at = utc_timestamp();
    r.outputs = std::move(outputs);
    return r;
  }
};

std::string ingest_canonical(const IngestOptions& io) {
  std::ostringstream c;
  c << "d=" << io.d << "\nheader=" << io.header << "\nlaplacian=" << io.laplacian
    << "\ntol=" << io.tol << '\n';
  return c.str();
}

NetworkGroup network_group(const GroupData& g) { return NetworkGroup(g.label, g.members); }

std::vector<const GroupData*> pick_groups(const Ingested& in, const std::string& list,
                                          std::size_t want, const char* command) {
  std::vector<const GroupData*> out;
  if (list.empty()) {
    if (want != 0 && in.groups.size() != want)
      throw UsageError(std::string(command) + ": manifest has " +
                       std::to_string(in.groups.size()) + " groups; choose with --groups");
    for (const auto& g : in.groups) out.push_back(&g);
    return out;
  }
  for (const auto& label : split(list, ',')) out.push_back(&in.group(label));
  if (want != 0 && out.size() != want)
    throw UsageError(std::string(command) + ": expected " + std::to_string(want) +
                     " group labels in --groups, got " + std::to_string(out.size()));
  return out;
}

// ---- commands ---------------------------------------------------------------

struct InputArgs {
  std::string manifest;
  IngestOptions io;
};

void add_input(CLI::App* sc, InputArgs& in) {
  sc->add_option("--manifest", in.manifest, "CSV manifest: subject_id,group,path")->required();
  sc->add_option("--d", in.io.d, "declared vertex count")->required()->check(CLI::PositiveNumber);
}

Ingested ingest(const InputArgs& in) { return ingest_manifest(in.manifest, in.io); }

void cmd_ingest_check(Session& s, const InputArgs& in) {
  const Ingested data = ingest(in);
  s.out << "d=" << in.io.d << " subjects=" << data.rows.size() << " groups=" << data.groups.size()
        << '\n';
  for (const auto& g : data.groups) s.out << "  " << g.label << ": n=" << g.members.size() << '\n';
  s.out << "input_digest=" << data.input_digest << '\n';
}

struct MeanArgs {
  std::string group;
  std::string out;
};

void cmd_mean(Session& s, const InputArgs& in, const MeanArgs& a) {
  const Ingested data = ingest(in);
  if (a.group.empty() && data.groups.size() != 1)
    throw UsageError("mean: manifest has several groups; pass --group");
  const GroupData& g = a.group.empty() ? data.groups.front() : data.group(a.group);
  const LaplacianMatrix mean = frechet_mean(g.members);
  const SpaceDiagnostic diag = space_membership(mean);
  const RunRecord run = s.record(
      "command=mean\ngroup=" + g.label + "\ninput=" + data.input_digest + "\n" +
          ingest_canonical(in.io),
      0, {a.out});
  write_file_atomic(a.out, matrix_text(mean.entries(), run.digest()));
  s.out << "group " << g.label << " (n=" << g.members.size() << "): mean Laplacian written to "
        << a.out << '\n'
        << "components=" << diag.n_components << " in_L_d=" << diag.in_L_d
        << " in_L_d_prime=" << diag.in_L_d_prime << '\n';
}

struct BinarizeArgs {
  double q = 75.0;
  std::string group;
  std::string out_dir;
};

void cmd_binarize(Session& s, const InputArgs& in, const BinarizeArgs& a) {
  const Ingested data = ingest(in);
  std::vector<LaplacianMatrix> sample;
  std::vector<std::string> ids;
  for (const auto& g : data.groups) {
    if (!a.group.empty() && g.label != a.group) continue;
    sample.insert(sample.end(), g.members.begin(), g.members.end());
    ids.insert(ids.end(), g.subjects.begin(), g.subjects.end());
  }
  if (sample.empty()) throw ValidationError("binarize: unknown group '" + a.group + "'");
  const auto masks = binarize_percentile(sample, a.q);
  fs::create_directories(a.out_dir);
  std::vector<std::string> outputs;
  for (const auto& id : ids) outputs.push_back((fs::path(a.out_dir) / (id + ".mask.csv")).string());
  std::ostringstream canon;
  canon << "command=binarize\nq=" << a.q << "\ngroup=" << a.group
        << "\ninput=" << data.input_digest << '\n'
        << ingest_canonical(in.io);
  const RunRecord run = s.record(canon.str(), 0, outputs);
  for (std::size_t i = 0; i < masks.size(); ++i) {
    std::ostringstream text;
    text << "# run_digest=" << run.digest() << '\n';
    write_mask_csv(text, masks[i]);
    write_file_atomic(outputs[i], text.str());
  }
  s.out << "wrote " << masks.size() << " masks at the " << a.q << "th percentile to " << a.out_dir
        << '\n';
}

struct TestArgs {
  double alpha = 0.05;
  double delta = 2.0;
  bool no_threshold = false;
  bool no_pd = false;
  std::string lambda0;
  std::string groups;
  std::uint64_t seed = 0;
  std::string out;
};

void add_test_options(CLI::App* sc, TestArgs& t) {
  sc->add_option("--alpha", t.alpha, "test level")->check(CLI::Range(0.0, 1.0));
  sc->add_option("--delta", t.delta, "threshold scale")->check(CLI::NonNegativeNumber);
  sc->add_flag("--no-threshold", t.no_threshold, "use the plain sample covariance");
  sc->add_flag("--no-pd", t.no_pd, "skip the positive-definite projection");
  sc->add_option("--groups", t.groups, "comma-separated group labels");
  sc->add_option("--seed", t.seed, "recorded in the run record");
  sc->add_option("--out", t.out, "report file (JSON)");
}

void cmd_test(Session& s, const InputArgs& in, const std::string& kind, const TestArgs& t) {
  if (kind == "one" && t.lambda0.empty()) throw UsageError("test one: --lambda0 is required");
  const Ingested data = ingest(in);
  EstimatorOptions opts;
  opts.threshold = !t.no_threshold;
  opts.delta = t.delta;
  opts.project_pd = !t.no_pd;

  std::ostringstream canon;
  canon << "command=test " << kind << "\nalpha=" << t.alpha << "\ndelta=" << t.delta
        << "\nthreshold=" << opts.threshold << "\npd=" << opts.project_pd
        << "\ngroups=" << t.groups << "\ninput=" << data.input_digest << '\n'
        << ingest_canonical(in.io);

  TestReport report;
  std::string input_digest = data.input_digest;
  if (kind == "one") {
    const auto picked = pick_groups(data, t.groups, 1, "test one");
    const std::string bytes = read_bytes(t.lambda0, "reference matrix");
    std::istringstream stream(bytes);
    const Matrix m = read_matrix_csv(stream, CsvOptions{in.io.header}, t.lambda0);
    if (m.rows() != in.io.d || m.cols() != in.io.d)
      throw ValidationError(t.lambda0 + ": reference is " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()) + ", declared d=" + std::to_string(in.io.d));
    const LaplacianMatrix lambda0 = load_laplacian(m, in.io);
    input_digest = sha256_hex(data.input_digest + sha256_hex(bytes));
    canon << "lambda0=" << sha256_hex(bytes) << '\n';
    report = test_one_sample(network_group(*picked.front()), lambda0, opts);
  } else if (kind == "two") {
    const auto picked = pick_groups(data, t.groups, 2, "test two");
    report = test_two_sample(network_group(*picked[0]), network_group(*picked[1]), opts);
  } else {
    const auto picked = pick_groups(data, t.groups, 0, "test k");
    if (picked.size() < 2) throw UsageError("test k: need at least two groups");
    std::vector<NetworkGroup> groups;
    for (const auto* g : picked) groups.push_back(network_group(*g));
    report = test_k_sample(groups, opts);
  }

  s.out << to_string(report.kind) << ": statistic=" << report.statistic << " dof=" << report.dof
        << " p_value=" << report.p_value << (report.p_value < t.alpha ? " (reject" : " (retain")
        << " at alpha=" << t.alpha << ")\n";
  if (!t.out.empty()) {
    const RunRecord run = s.record(canon.str(), t.seed, {t.out});
    json doc = test_report_document(report, input_digest, run);
    doc["alpha"] = t.alpha;
    doc["reject"] = report.p_value < t.alpha;
    write_file_atomic(t.out, doc.dump(2) + "\n");
  }
}

struct MassArgs {
  double alpha = 0.05;
  std::string correction = "bonferroni";
  std::string groups;
  std::string out;
};

void cmd_massuni(Session& s, const InputArgs& in, const MassArgs& a) {
  const Ingested data = ingest(in);
  const auto picked = pick_groups(data, a.groups, 2, "massuni");
  const Correction corr = a.correction == "none" ? Correction::kNone : Correction::kBonferroni;
  const MassUnivariateResult r =
      mass_univariate(network_group(*picked[0]), network_group(*picked[1]), a.alpha, corr);
  const auto count = [](const BoolMatrix& m) { return m.count() / 2; };
  s.out << "edges significant at alpha=" << a.alpha << ": uncorrected=" << count(r.uncorrected)
        << " " << to_string(corr) << "=" << count(r.corrected) << " (level " << r.level << ")\n";
  if (!a.out.empty()) {
    std::ostringstream canon;
    canon << "command=massuni\nalpha=" << a.alpha << "\ncorrection=" << to_string(corr)
          << "\ngroups=" << picked[0]->label << "," << picked[1]->label
          << "\ninput=" << data.input_digest << '\n'
          << ingest_canonical(in.io);
    const RunRecord run = s.record(canon.str(), 0, {a.out});
    json doc{{"schema", "netlap.massuni_report/1"},
             {"software_version", kSoftwareVersion},
             {"groups", {picked[0]->label, picked[1]->label}},
             {"alpha", a.alpha},
             {"correction", to_string(corr)},
             {"level", r.level},
             {"significant_uncorrected", count(r.uncorrected)},
             {"significant_corrected", count(r.corrected)},
             {"p_values", matrix_json(r.p_values)},
             {"t_statistics", matrix_json(r.t_statistics)},
             {"mask_uncorrected", mask_json(r.uncorrected)},
             {"mask_corrected", mask_json(r.corrected)},
             {"input_digest", data.input_digest},
             {"run_record", to_json(run)},
             {"run_digest", run.digest()}};
    write_file_atomic(a.out, doc.dump(2) + "\n");
  }
}

struct SimArgs {
  std::string config;
  std::vector<std::string> sets;
  std::map<std::string, std::string> shortcuts;
  int workers = 1;
  std::string out;
};

void add_sim_options(CLI::App* sc, SimArgs& a, bool power) {
  sc->add_option("--config", a.config, "key = value configuration file");
  sc->add_option("--set", a.sets, "override one key (key=value); repeatable");
  const std::vector<std::string> keys =
      power ? std::vector<std::string>{"topology", "d", "n", "T", "reps", "ladder", "seed",
                                       "alpha", "delta", "noise", "association", "bins"}
            : std::vector<std::string>{"topology", "d", "n", "T", "reps", "seed"};
  for (const auto& k : keys)
    sc->add_option_function<std::string>(
        "--" + k, [&a, k](const std::string& v) { a.shortcuts[k] = v; }, "config key " + k);
  if (power)
    sc->add_option("--workers", a.workers, "worker threads")->check(CLI::PositiveNumber);
  sc->add_option("--out", a.out, "output file")->required();
}

Settings merged_settings(const SimArgs& a) {
  Settings settings;
  if (!a.config.empty()) settings = read_settings(a.config);
  for (const auto& [k, v] : a.shortcuts) settings[k] = v;
  for (const auto& kv : a.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw UsageError("--set expects key=value, got '" + kv + "'");
    settings[trim(kv.substr(0, eq))] = trim(kv.substr(eq + 1));
  }
  return settings;
}

void cmd_simulate_power(Session& s, const SimArgs& a) {
  const PowerStudyConfig config = power_config_from(merged_settings(a));
  const std::string canonical = "command=simulate power\n" + canonical_text(config);
  const PowerCurve curve = run_power_study(config, a.workers);
  const RunRecord run = s.record(canonical, config.seed, {a.out});
  write_file_atomic(a.out, power_curve_csv(config, curve, run.digest()));
  s.out << "power curve (" << curve.rows.size() << " rows, " << config.reps
        << " reps each) written to " << a.out << '\n';
  for (const auto& row : curve.rows)
    s.out << "  rewires=" << row.rewire_count << " effect=" << row.effect_size
          << " power=" << row.power << " se=" << row.std_error << '\n';
}

void cmd_simulate_clt(Session& s, const SimArgs& a) {
  const CltConfig config = clt_config_from(merged_settings(a));
  const std::string canonical = "command=simulate clt\n" + canonical_text(config);
  const CltReport report = clt_diagnostic(config);
  const RunRecord run = s.record(canonical, config.seed, {a.out});
  json doc = to_json(report);
  doc["schema"] = "netlap.clt_report/1";
  doc["software_version"] = kSoftwareVersion;
  doc["run_record"] = to_json(run);
  doc["run_digest"] = run.digest();
  write_file_atomic(a.out, doc.dump(2) + "\n");
  s.out << "clt: m=" << report.m << " rel_frobenius_error=" << report.rel_frobenius_error
        << " max_abs_skewness=" << report.max_abs_skewness << " (se " << report.skewness_se
        << ")\n";
}

}  // namespace

const GroupData& Ingested::group(const std::string& label) const {
  for (const auto& g : groups)
    if (g.label == label) return g;
  throw ValidationError("unknown group '" + label + "'");
}

Ingested ingest_manifest(const fs::path& manifest, const IngestOptions& opts) {
  if (opts.d < 1) throw ValidationError("manifest: declared dimension d must be >= 1");
  const std::string bytes = read_bytes(manifest, "manifest");
  const fs::path base = manifest.parent_path();
  Ingested out;
  std::string digests = sha256_hex(bytes);
  std::map<std::string, std::size_t> seen;
  std::istringstream lines(bytes);
  std::string line;
  std::size_t lineno = 0;
  bool first = true;
  while (std::getline(lines, line)) {
    ++lineno;
    const std::string content = trim(line);
    if (content.empty() || content.front() == '#') continue;
    const std::string where = manifest.string() + ":" + std::to_string(lineno);
    const auto fields = split(content, ',');
    if (first) {
      first = false;
      if (fields == std::vector<std::string>{"subject_id", "group", "path"}) continue;
    }
    if (fields.size() != 3)
      throw ValidationError(where + ": expected 3 fields subject_id,group,path, found " +
                            std::to_string(fields.size()));
    if (fields[0].empty() || fields[1].empty() || fields[2].empty())
      throw ValidationError(where + ": empty field");
    const std::string& id = fields[0];
    if (const auto it = seen.find(id); it != seen.end())
      throw ValidationError(where + ": duplicate subject '" + id + "' (first on line " +
                            std::to_string(it->second) + ")");
    seen.emplace(id, lineno);

    fs::path path = fields[2];
    if (path.is_relative()) path = base / path;
    const std::string ctx = where + ": subject '" + id + "'";
    if (!fs::exists(path)) throw ValidationError(ctx + ": file not found: " + path.string());
    std::string file_bytes;
    Matrix m;
    LaplacianMatrix lap(Matrix::Zero(1, 1));
    try {
      file_bytes = read_bytes(path, "matrix file");
      std::istringstream stream(file_bytes);
      m = read_matrix_csv(stream, CsvOptions{opts.header}, path.string());
      if (m.rows() != opts.d || m.cols() != opts.d)
        throw ValidationError(path.string() + " is " + std::to_string(m.rows()) + "x" +
                              std::to_string(m.cols()) + ", declared d=" + std::to_string(opts.d));
      try {
        lap = load_laplacian(m, opts);
      } catch (const ValidationError& e) {
        throw ValidationError(path.string() + ": " + e.what());
      }
    } catch (const ValidationError& e) {
      throw ValidationError(ctx + ": " + e.what());
    }
    digests += sha256_hex(file_bytes);

    out.rows.push_back(ManifestRow{id, fields[1], path});
    auto g = std::find_if(out.groups.begin(), out.groups.end(),
                          [&](const GroupData& x) { return x.label == fields[1]; });
    if (g == out.groups.end()) {
      out.groups.push_back(GroupData{fields[1], {}, {}});
      g = std::prev(out.groups.end());
    }
    g->subjects.push_back(id);
    g->members.push_back(std::move(lap));
  }
  if (out.rows.empty()) throw ValidationError(manifest.string() + ": no subjects listed");
  out.input_digest = sha256_hex(digests);
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Global tests on samples of graph Laplacians, and simulation studies.", "netlap"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kSoftwareVersion);

  InputArgs in;
  app.add_flag("--header", in.io.header, "matrix files start with one header row");
  app.add_option("--tol", in.io.tol, "relative symmetry / row-sum tolerance")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--laplacian", in.io.laplacian, "files hold Laplacians, not association matrices");

  std::function<void(Session&)> action;

  auto* ingest_check = app.add_subcommand("ingest-check", "load a manifest and print a summary");
  add_input(ingest_check, in);
  ingest_check->callback([&] { action = [&](Session& s) { cmd_ingest_check(s, in); }; });

  MeanArgs mean_args;
  auto* mean = app.add_subcommand("mean", "Frechet mean Laplacian of one group");
  add_input(mean, in);
  mean->add_option("--group", mean_args.group, "group label");
  mean->add_option("--out", mean_args.out, "output CSV")->required();
  mean->callback([&] { action = [&](Session& s) { cmd_mean(s, in, mean_args); }; });

  BinarizeArgs bin_args;
  auto* binarize = app.add_subcommand("binarize", "percentile-threshold every subject");
  add_input(binarize, in);
  binarize->add_option("--q", bin_args.q, "percentile in [0, 100]")->check(CLI::Range(0.0, 100.0));
  binarize->add_option("--group", bin_args.group, "restrict to one group");
  binarize->add_option("--out-dir", bin_args.out_dir, "directory for mask files")->required();
  binarize->callback([&] { action = [&](Session& s) { cmd_binarize(s, in, bin_args); }; });

  TestArgs test_args;
  auto* test = app.add_subcommand("test", "chi-square tests on mean Laplacians");
  test->require_subcommand(1);
  for (const char* kind : {"one", "two", "k"}) {
    auto* sc = test->add_subcommand(kind, std::string(kind) + "-sample test");
    add_input(sc, in);
    add_test_options(sc, test_args);
    if (std::string(kind) == "one")
      sc->add_option("--lambda0", test_args.lambda0, "reference matrix (same format as inputs)");
    const std::string k = kind;
    sc->callback([&, k] { action = [&, k](Session& s) { cmd_test(s, in, k, test_args); }; });
  }

  MassArgs mass_args;
  auto* massuni = app.add_subcommand("massuni", "per-edge Welch tests");
  add_input(massuni, in);
  massuni->add_option("--alpha", mass_args.alpha, "level")->check(CLI::Range(0.0, 1.0));
  massuni->add_option("--correction", mass_args.correction, "bonferroni or none")
      ->check(CLI::IsMember({"bonferroni", "none"}));
  massuni->add_option("--groups", mass_args.groups, "two comma-separated labels");
  massuni->add_option("--out", mass_args.out, "report file (JSON)");
  massuni->callback([&] { action = [&](Session& s) { cmd_massuni(s, in, mass_args); }; });

  SimArgs power_args, clt_args;
  auto* simulate = app.add_subcommand("simulate", "simulation studies");
  simulate->require_subcommand(1);
  auto* power = simulate->add_subcommand("power", "Monte-Carlo power curve of the two-sample test");
  add_sim_options(power, power_args, true);
  power->callback([&] { action = [&](Session& s) { cmd_simulate_power(s, power_args); }; });
  auto* clt = simulate->add_subcommand("clt", "central-limit diagnostic for mean Laplacians");
  add_sim_options(clt, clt_args, false);
  clt->callback([&] { action = [&](Session& s) { cmd_simulate_clt(s, clt_args); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Session session{args, out};
  try {
    action(session);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace netlap::cli
