// Command-line front end. Links only the public C API; all numerics live
// behind logdet.h. Reports go to standard output (or --output) as canonical
// JSON; a human-readable table goes to standard error when it is a terminal.

#include <unistd.h>

#include <cctype>
#include <cerrno>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "csv.hpp"
#include "logdet.h"
#include "report.hpp"

namespace {

using report::json;

// Fixed default so casual runs reproduce without flag spelunking.
constexpr std::uint64_t kDefaultSeed = 12345;

[[noreturn]] void die(int code, const std::string& message) {
  std::fprintf(stderr, "error: %s\n", message.c_str());
  std::exit(code);
}

void check(logdet_status status) {
  if (status != LOGDET_OK) die(static_cast<int>(status), logdet_last_error());
}

struct Dataset {
  logdet_dataset* handle = nullptr;
  ~Dataset() { logdet_dataset_destroy(handle); }
};

struct Gaussian {
  logdet_gaussian* handle = nullptr;
  ~Gaussian() { logdet_gaussian_destroy(handle); }
};

csv::Table load_table(const std::string& path) {
  try {
    return csv::read_file(path);
  } catch (const csv::ParseError& e) {
    die(2, e.what());
  }
}

void make_dataset(const csv::Table& table, Dataset* out) {
  check(logdet_dataset_create(table.values.data(), static_cast<int64_t>(table.rows),
                              static_cast<int64_t>(table.cols), &out->handle));
}

// Parameter file: first row is the mean, the remaining p rows the covariance.
int64_t make_gaussian(const std::string& path, Gaussian* out) {
  csv::Table table = load_table(path);
  if (table.rows != table.cols + 1) {
    die(4, "parameter file '" + path + "': expected 1 mean row plus a " +
               std::to_string(table.cols) + "x" + std::to_string(table.cols) +
               " covariance, got " + std::to_string(table.rows) + " rows of width " +
               std::to_string(table.cols));
  }
  check(logdet_gaussian_create(table.values.data(), table.values.data() + table.cols,
                               static_cast<int64_t>(table.cols), &out->handle));
  return static_cast<int64_t>(table.cols);
}

bool parse_u64(const std::string& text, std::uint64_t* out) {
  if (text.empty()) return false;
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  errno = 0;
  char* end = nullptr;
  unsigned long long value = std::strtoull(text.c_str(), &end, 10);
  if (errno != 0 || end != text.c_str() + text.size()) return false;
  *out = value;
  return true;
}

logdet_cov_spec parse_sigma_spec(const std::string& text) {
  logdet_cov_spec spec;
  spec.kind = LOGDET_COV_IDENTITY;
  spec.value = 1.0;
  spec.seed = 0;

  std::string kind = text;
  std::string arg;
  std::size_t colon = text.find(':');
  if (colon != std::string::npos) {
    kind = text.substr(0, colon);
    arg = text.substr(colon + 1);
  }
  if (kind == "identity" && colon == std::string::npos) return spec;
  if (kind == "diag") {
    double value;
    if (!csv::parse_number(arg, &value))
      die(2, "covariance spec 'diag:<a>' needs a numeric argument, got '" + text + "'");
    spec.kind = LOGDET_COV_DIAG;
    spec.value = value;
    return spec;
  }
  if (kind == "ar") {
    double value;
    if (!csv::parse_number(arg, &value))
      die(2, "covariance spec 'ar:<rho>' needs a numeric argument, got '" + text + "'");
    spec.kind = LOGDET_COV_AR;
    spec.value = value;
    return spec;
  }
  if (kind == "random") {
    std::uint64_t seed;
    if (!parse_u64(arg, &seed))
      die(2, "covariance spec 'random:<seed>' needs a non-negative integer, got '" + text + "'");
    spec.kind = LOGDET_COV_RANDOM;
    spec.seed = seed;
    return spec;
  }
  die(2, "unknown covariance spec '" + text +
             "' (expected identity, diag:<a>, ar:<rho>, or random:<seed>)");
}

std::string human_scalar(const json& v) {
  if (v.is_number_float()) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v.get<double>());
    return buf;
  }
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void print_human(const json& node, int indent) {
  for (auto it = node.begin(); it != node.end(); ++it) {
    const json& v = it.value();
    if (v.is_object()) {
      std::fprintf(stderr, "%*s%s:\n", indent, "", it.key().c_str());
      print_human(v, indent + 2);
    } else if (v.is_array()) {
      std::fprintf(stderr, "%*s%s:\n", indent, "", it.key().c_str());
      for (const json& item : v) {
        if (item.is_object()) {
          std::fprintf(stderr, "%*s-\n", indent + 2, "");
          print_human(item, indent + 4);
        } else {
          std::fprintf(stderr, "%*s- %s\n", indent + 2, "", human_scalar(item).c_str());
        }
      }
    } else {
      std::fprintf(stderr, "%*s%-20s %s\n", indent, "", (it.key() + ":").c_str(),
                   human_scalar(v).c_str());
    }
  }
}

json make_report(const std::string& command, json inputs, json results) {
  json rep;
  rep["command"] = command;
  rep["inputs"] = std::move(inputs);
  rep["results"] = std::move(results);
  rep["version"] = logdet_version();
  return rep;
}

void emit(const json& rep, const std::string& output_path) {
  std::string text = report::render(rep);
  if (output_path.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    std::ofstream out(output_path, std::ios::binary);
    if (!out) die(2, "cannot open '" + output_path + "' for writing");
    out << text;
    out.flush();
    if (!out) die(2, "failed while writing '" + output_path + "'");
  }
  if (isatty(fileno(stderr))) {
    std::fprintf(stderr, "%s (logdet %s)\n", rep["command"].get<std::string>().c_str(),
                 rep["version"].get<std::string>().c_str());
    print_human(rep["results"], 2);
  }
}

json run_estimate(const std::string& data_path, double level) {
  csv::Table table = load_table(data_path);
  Dataset data;
  make_dataset(table, &data);
  logdet_estimate e{};
  check(logdet_estimate_log_det(data.handle, level, &e));

  json inputs;
  inputs["data"] = data_path;
  inputs["level"] = level;
  json results;
  results["n"] = e.n;
  results["p"] = e.p;
  results["tau"] = e.tau;
  results["sigma"] = e.sigma;
  results["t_hat"] = e.t_hat;
  results["ci_lower"] = e.ci_lower;
  results["ci_upper"] = e.ci_upper;
  results["h_hat"] = e.h_hat;
  results["h_ci_lower"] = e.h_ci_lower;
  results["h_ci_upper"] = e.h_ci_upper;
  return make_report("estimate", std::move(inputs), std::move(results));
}

json run_bounds(int64_t n, int64_t p) {
  json inputs;
  inputs["n"] = n;
  inputs["p"] = p;
  json results;
  double value = 0.0;
  if (p <= n) {
    check(logdet_tau(n, p, &value));
    results["tau"] = value;
    check(logdet_sigma(n, p, &value));
    results["sigma"] = value;
    check(logdet_exact_mse(n, p, &value));
    results["exact_mse"] = value;
    check(logdet_risk_upper_bound(n, p, &value));
    results["risk_upper_bound"] = value;  // +inf on the p = n boundary
    check(logdet_info_lower_bound(n, p, &value));
    results["info_lower_bound"] = value;
    check(logdet_diag_lower_bound(n, p, &value));
    results["diag_lower_bound"] = value;
    check(logdet_rnp_ratio(n, p, &value));
    results["rnp_ratio"] = value;
    if (n >= 2) {
      check(logdet_rnp_bound(n, &value));
      results["rnp_bound"] = value;
    }
  } else {
    if (n < 1 || p < 1) die(2, "n and p must be positive integers");
    check(logdet_diag_lower_bound(n, p, &value));
    results["diag_lower_bound"] = value;
    results["note"] = "p exceeds n: exact constants and estimation bounds require p <= n";
  }
  return make_report("bounds", std::move(inputs), std::move(results));
}

json run_simulate(const std::string& kind, int64_t n, int64_t p, int64_t reps,
                  std::uint64_t seed, const std::string& sampler, const std::string& sigma,
                  double level, const std::string& centering) {
  logdet_sim_config config{};
  config.n = n;
  config.p = p;
  config.reps = reps;
  config.seed = seed;
  config.sampler = sampler == "full" ? LOGDET_SAMPLER_FULL : LOGDET_SAMPLER_BARTLETT;
  config.sigma = parse_sigma_spec(sigma);
  config.level = level;
  config.centering =
      centering == "boundary" ? LOGDET_CENTERING_BOUNDARY : LOGDET_CENTERING_EXACT;

  json results;
  if (kind == "clt") {
    logdet_clt_report r{};
    check(logdet_run_clt(&config, &r));
    results["mean"] = r.mean;
    results["variance"] = r.variance;
    results["skewness"] = r.skewness;
    results["ks_stat"] = r.ks_stat;
    results["reps"] = r.reps;
  } else if (kind == "coverage") {
    logdet_coverage_report r{};
    check(logdet_run_coverage(&config, &r));
    results["level"] = r.level;
    results["empirical_coverage"] = r.empirical_coverage;
    results["mc_stderr"] = r.mc_stderr;
    results["reps"] = r.reps;
  } else {
    logdet_mse_report r{};
    check(logdet_run_mse(&config, &r));
    results["empirical_mse"] = r.empirical_mse;
    results["exact_mse"] = r.exact_mse;
    results["upper_bound"] = r.upper_bound;
    results["lower_bound"] = r.lower_bound;
    results["reps"] = r.reps;
  }

  json inputs;
  inputs["kind"] = kind;
  inputs["n"] = n;
  inputs["p"] = p;
  inputs["reps"] = reps;
  inputs["sampler"] = sampler;
  inputs["sigma"] = sigma;
  inputs["level"] = level;
  inputs["centering"] = centering;

  json rep;
  rep["command"] = "simulate";
  rep["inputs"] = std::move(inputs);
  rep["results"] = std::move(results);
  rep["seed"] = seed;
  rep["version"] = logdet_version();
  return rep;
}

json run_test_entropy(const std::string& path1, const std::string& path2, double alpha) {
  csv::Table t1 = load_table(path1);
  csv::Table t2 = load_table(path2);
  Dataset d1, d2;
  make_dataset(t1, &d1);
  make_dataset(t2, &d2);
  logdet_entropy_test r{};
  check(logdet_entropy_equality_test(d1.handle, d2.handle, alpha, &r));

  json inputs;
  inputs["data1"] = path1;
  inputs["data2"] = path2;
  inputs["alpha"] = alpha;
  json results;
  results["n1"] = r.n1;
  results["n2"] = r.n2;
  results["p"] = r.p;
  results["h1"] = r.h1;
  results["h2"] = r.h2;
  results["se"] = r.se;
  results["z_stat"] = r.z_stat;
  results["p_value"] = r.p_value;
  results["level"] = 1.0 - r.alpha;
  results["reject"] = r.reject != 0;
  return make_report("test-entropy", std::move(inputs), std::move(results));
}

json run_kl(const std::string& path1, const std::string& path2) {
  Gaussian g1, g2;
  int64_t dim = make_gaussian(path1, &g1);
  make_gaussian(path2, &g2);
  double kl = 0.0;
  check(logdet_kl_divergence(g1.handle, g2.handle, &kl));

  json inputs;
  inputs["params1"] = path1;
  inputs["params2"] = path2;
  json results;
  results["p"] = dim;
  results["kl_divergence"] = kl;
  return make_report("kl", std::move(inputs), std::move(results));
}

json run_qda(const std::string& points_path, const std::string& path1,
             const std::string& path2, bool plugin) {
  csv::Table points = load_table(points_path);
  auto dim = static_cast<int64_t>(points.cols);

  json point_list = json::array();
  auto classify = [&](std::size_t i, double delta) {
    json entry;
    entry["index"] = static_cast<int64_t>(i);
    entry["delta"] = delta;
    entry["decision"] =
        delta > 0.0 ? "population1" : (delta < 0.0 ? "population2" : "boundary");
    point_list.push_back(std::move(entry));
  };

  if (plugin) {
    csv::Table t1 = load_table(path1);
    csv::Table t2 = load_table(path2);
    Dataset d1, d2;
    make_dataset(t1, &d1);
    make_dataset(t2, &d2);
    for (std::size_t i = 0; i < points.rows; ++i) {
      double delta = 0.0;
      check(logdet_qda_plugin(points.values.data() + i * points.cols, dim, d1.handle,
                              d2.handle, &delta));
      classify(i, delta);
    }
  } else {
    Gaussian g1, g2;
    make_gaussian(path1, &g1);
    make_gaussian(path2, &g2);
    for (std::size_t i = 0; i < points.rows; ++i) {
      double delta = 0.0;
      check(logdet_qda_oracle(points.values.data() + i * points.cols, dim, g1.handle,
                              g2.handle, &delta));
      classify(i, delta);
    }
  }

  json inputs;
  inputs["points"] = points_path;
  inputs[plugin ? "data1" : "params1"] = path1;
  inputs[plugin ? "data2" : "params2"] = path2;
  inputs["mode"] = plugin ? "plugin" : "oracle";
  json results;
  results["p"] = dim;
  results["points"] = std::move(point_list);
  return make_report("qda", std::move(inputs), std::move(results));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Log-determinant and Gaussian differential entropy estimation"};
  app.set_version_flag("--version", std::string(logdet_version()));
  app.require_subcommand(1);

  std::string est_data, est_output;
  double est_level = 0.95;
  CLI::App* est = app.add_subcommand(
      "estimate", "Bias-corrected log det and entropy of a Gaussian sample");
  est->add_option("data", est_data, "CSV sample; rows are observations")->required();
  est->add_option("--level", est_level, "two-sided confidence level in (0, 1)")
      ->capture_default_str();
  est->add_option("--output", est_output, "write the JSON report to this file");

  int64_t bounds_n = 0, bounds_p = 0;
  std::string bounds_output;
  CLI::App* bounds =
      app.add_subcommand("bounds", "Exact risk constants and bounds for given (n, p)");
  bounds->add_option("--n", bounds_n, "effective sample size (observations minus one)")
      ->required();
  bounds->add_option("--p", bounds_p, "dimension")->required();
  bounds->add_option("--output", bounds_output, "write the JSON report to this file");

  std::string sim_kind, sim_sampler = "bartlett", sim_sigma = "identity",
              sim_centering = "exact", sim_output;
  int64_t sim_n = 0, sim_p = 0, sim_reps = 1000;
  std::uint64_t sim_seed = kDefaultSeed;
  double sim_level = 0.95;
  CLI::App* sim = app.add_subcommand("simulate", "Seeded Monte Carlo experiments");
  sim->add_option("kind", sim_kind, "experiment: clt, coverage, or mse")
      ->required()
      ->check(CLI::IsMember({"clt", "coverage", "mse"}));
  sim->add_option("--n", sim_n, "effective sample size")->required();
  sim->add_option("--p", sim_p, "dimension")->required();
  sim->add_option("--reps", sim_reps, "number of replicates")->capture_default_str();
  sim->add_option("--seed", sim_seed, "RNG seed")->capture_default_str();
  sim->add_option("--sampler", sim_sampler, "draw mechanism: full or bartlett")
      ->check(CLI::IsMember({"full", "bartlett"}))
      ->capture_default_str();
  sim->add_option("--sigma", sim_sigma,
                  "covariance: identity, diag:<a>, ar:<rho>, or random:<seed>")
      ->capture_default_str();
  sim->add_option("--level", sim_level, "confidence level (coverage experiment)")
      ->capture_default_str();
  sim->add_option("--centering", sim_centering,
                  "CLT standardization: exact, or boundary for p = n")
      ->check(CLI::IsMember({"exact", "boundary"}))
      ->capture_default_str();
  sim->add_option("--output", sim_output, "write the JSON report to this file");

  std::string te_data1, te_data2, te_output;
  double te_alpha = 0.05;
  CLI::App* te = app.add_subcommand("test-entropy",
                                    "Two-sample test of equal differential entropy");
  te->add_option("data1", te_data1, "first CSV sample")->required();
  te->add_option("data2", te_data2, "second CSV sample")->required();
  te->add_option("--alpha", te_alpha, "significance level in (0, 1)")->capture_default_str();
  te->add_option("--output", te_output, "write the JSON report to this file");

  std::string kl_params1, kl_params2, kl_output;
  CLI::App* kl = app.add_subcommand("kl", "Exact KL divergence between two Gaussians");
  kl->add_option("params1", kl_params1, "parameter file: mean row, then covariance rows")
      ->required();
  kl->add_option("params2", kl_params2, "parameter file: mean row, then covariance rows")
      ->required();
  kl->add_option("--output", kl_output, "write the JSON report to this file");

  std::string qda_points, qda_in1, qda_in2, qda_output;
  bool qda_plugin = false;
  CLI::App* qda = app.add_subcommand("qda", "Quadratic discriminant scores for points");
  qda->add_option("points", qda_points, "CSV of points to classify; rows are points")
      ->required();
  qda->add_option("input1", qda_in1,
                  "population 1: parameter file, or data CSV with --plugin")
      ->required();
  qda->add_option("input2", qda_in2,
                  "population 2: parameter file, or data CSV with --plugin")
      ->required();
  qda->add_flag("--plugin", qda_plugin,
                "estimate parameters from data CSVs (bias-corrected log det)");
  qda->add_option("--output", qda_output, "write the JSON report to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (*est) {
    emit(run_estimate(est_data, est_level), est_output);
  } else if (*bounds) {
    emit(run_bounds(bounds_n, bounds_p), bounds_output);
  } else if (*sim) {
    emit(run_simulate(sim_kind, sim_n, sim_p, sim_reps, sim_seed, sim_sampler, sim_sigma,
                      sim_level, sim_centering),
         sim_output);
  } else if (*te) {
    emit(run_test_entropy(te_data1, te_data2, te_alpha), te_output);
  } else if (*kl) {
    emit(run_kl(kl_params1, kl_params2), kl_output);
  } else if (*qda) {
    emit(run_qda(qda_points, qda_in1, qda_in2, qda_plugin), qda_output);
  }
  return 0;
}
