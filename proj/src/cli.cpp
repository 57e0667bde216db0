#include "lncv/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "lncv/covariance_oracle.hpp"
#include "lncv/error.hpp"
#include "lncv/estimator.hpp"
#include "lncv/io.hpp"
#include "lncv/model.hpp"
#include "lncv/montecarlo.hpp"

#ifndef LNCV_VERSION
#define LNCV_VERSION "0.0.0"
#endif

namespace lncv::cli {

namespace {

using nlohmann::ordered_json;

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

// Writes to `out` when `path` is empty or "-", else to the named file.
void emit(const std::string& path, std::ostream& out,
          const std::function<void(std::ostream&)>& body) {
  if (path.empty() || path == "-") {
    body(out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot open output file '" + path + "'");
  body(file);
  if (!file) throw UsageError("failed writing output file '" + path + "'");
}

// Manifest goes to --manifest if given, else next to a file output.
void write_manifest(const std::string& manifest_path,
                    const std::string& output_path, const std::string& command,
                    ordered_json config, std::uint64_t master_seed) {
  std::string path = manifest_path;
  if (path.empty() && !output_path.empty() && output_path != "-") {
    path = output_path + ".manifest.json";
  }
  if (path.empty()) return;
  ordered_json manifest;
  manifest["command"] = command;
  manifest["config"] = std::move(config);
  manifest["master_seed"] = master_seed;
  manifest["tool_version"] = LNCV_VERSION;
  manifest["timestamp"] = utc_timestamp();
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot open manifest file '" + path + "'");
  file << manifest.dump(2) << '\n';
}

// Exactly one of (--mu, --sigma2) or (--g, --k) must be supplied.
struct ParamFlags {
  std::optional<double> mu;
  std::optional<double> sigma2;
  std::optional<double> g;
  std::optional<double> k;

  void add_to(CLI::App& app) {
    app.add_option("--mu", mu, "log-space mean (default 0 with --sigma2)");
    app.add_option("--sigma2", sigma2, "log-space variance");
    app.add_option("--g", g, "geometric mean");
    app.add_option("--k", k, "relative ratio, equal to cv^2");
  }

  LogNormalParams resolve() const {
    const bool log_space = mu.has_value() || sigma2.has_value();
    const bool gk_space = g.has_value() || k.has_value();
    if (log_space == gk_space) {
      throw UsageError(
          "give exactly one parameterization: --sigma2 [--mu] or --g and --k");
    }
    if (log_space) {
      if (!sigma2) throw UsageError("--sigma2 is required with --mu");
      LogNormalParams p{mu.value_or(0.0), *sigma2};
      p.validate();
      return p;
    }
    if (!g || !k) throw UsageError("--g and --k must be given together");
    return params_from_gk(*g, *k);
  }

  ordered_json to_json(const LogNormalParams& p) const {
    ordered_json j;
    j["mu_y"] = p.mu_y;
    j["sigma2_y"] = p.sigma2_y;
    if (g) j["g"] = *g;
    if (k) j["k"] = *k;
    return j;
  }
};

double budget_from_env() {
  const char* raw = std::getenv(kBudgetEnvVar);
  if (raw == nullptr || *raw == '\0') return kDefaultVariateBudget;
  char* end = nullptr;
  const double value = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !(value > 0.0)) {
    throw UsageError(std::string(kBudgetEnvVar) +
                     " must be a positive number, got '" + raw + "'");
  }
  return value;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err) {
  CLI::App app{"Lognormal C_v^2 estimation from arithmetic and harmonic means",
               args.empty() ? "lncv" : args.front()};
  app.require_subcommand(1);
  app.set_version_flag("--version", LNCV_VERSION);

  // estimate
  std::string estimate_input = "-";
  std::string estimate_format = "text";
  auto* estimate = app.add_subcommand(
      "estimate", "estimate k_hat, g_hat and friends from a sample file");
  estimate->add_option("input", estimate_input,
                       "sample file, one value per line ('-' for stdin)");
  estimate->add_option("-f,--format", estimate_format, "output format")
      ->check(CLI::IsMember({"text", "csv"}));

  // sample
  ParamFlags sample_params;
  std::uint64_t sample_n = 0;
  std::uint64_t sample_seed = 1;
  std::string sample_output;
  std::string sample_manifest;
  auto* sample_cmd =
      app.add_subcommand("sample", "draw a seeded lognormal sample");
  sample_params.add_to(*sample_cmd);
  sample_cmd->add_option("-n,--n", sample_n, "sample size")->required();
  sample_cmd->add_option("--seed", sample_seed, "64-bit seed");
  sample_cmd->add_option("-o,--output", sample_output, "output file");
  sample_cmd->add_option("--manifest", sample_manifest, "manifest file");

  // pdf
  ParamFlags pdf_params;
  std::vector<double> pdf_x;
  auto* pdf_cmd = app.add_subcommand("pdf", "evaluate the lognormal density");
  pdf_params.add_to(*pdf_cmd);
  pdf_cmd->add_option("-x,--x", pdf_x, "evaluation points")->required();

  // predict
  std::uint64_t predict_n = 0;
  std::optional<double> predict_k;
  std::optional<double> predict_cv;
  auto* predict = app.add_subcommand(
      "predict", "population mean and spread of K_n and k_hat");
  predict->add_option("-n,--n", predict_n, "sample size")->required();
  auto* k_opt = predict->add_option("--k", predict_k, "relative ratio");
  auto* cv_opt = predict->add_option("--cv", predict_cv, "population C_v");
  k_opt->excludes(cv_opt);

  // simulate
  GridConfig grid;
  grid.runs_cap = 1'000'000;
  std::uint64_t runs_cap = 1'000'000;
  std::uint64_t runs_override = 0;
  std::string simulate_output;
  std::string simulate_manifest;
  auto* simulate = app.add_subcommand(
      "simulate", "Monte Carlo mean and sd of k_hat over an (n, cv) grid");
  simulate->add_option("--n", grid.n_values, "sample sizes")->delimiter(',');
  simulate->add_option("--cv", grid.cv_values, "population C_v values")
      ->delimiter(',');
  simulate->add_option("--runs", runs_override,
                       "runs per cell (default floor(1e7/(n-1)), capped)");
  simulate->add_option("--runs-cap", runs_cap,
                       "cap on the default runs rule, 0 for none");
  simulate->add_option("--seed", grid.master_seed, "master seed");
  simulate->add_option("--mu", grid.mu_y, "log-space mean");
  simulate->add_option("--threads", grid.threads, "worker threads")
      ->check(CLI::PositiveNumber);
  simulate->add_option("-o,--output", simulate_output, "CSV output file");
  simulate->add_option("--manifest", simulate_manifest, "manifest file");

  // efficiency
  double eff_min = 0.01;
  double eff_max = 4.0;
  std::uint64_t eff_points = 100;
  std::string eff_spacing = "linear";
  std::string eff_output;
  std::string eff_manifest;
  auto* efficiency = app.add_subcommand(
      "efficiency", "large-sample efficiency of k_hat against sigma2");
  efficiency->add_option("--min", eff_min, "smallest sigma2");
  efficiency->add_option("--max", eff_max, "largest sigma2");
  efficiency->add_option("--points", eff_points, "grid points");
  efficiency->add_option("--spacing", eff_spacing, "grid spacing")
      ->check(CLI::IsMember({"linear", "log"}));
  efficiency->add_option("-o,--output", eff_output, "CSV output file");
  efficiency->add_option("--manifest", eff_manifest, "manifest file");

  // verify
  oracle::VerifyConfig verify_cfg;
  std::string inject_fault;
  auto* verify = app.add_subcommand(
      "verify", "check the covariance enumeration against the closed forms");
  verify->add_option("--max-n", verify_cfg.max_n, "largest sample size");
  verify->add_option("--omega", verify_cfg.omegas, "omega values")
      ->delimiter(',');
  verify->add_option("--inject-fault", inject_fault)->group("");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("lncv");

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (estimate->parsed()) {
      std::vector<double> xs;
      if (estimate_input == "-") {
        xs = io::read_sample(in);
      } else {
        std::ifstream file(estimate_input);
        if (!file) throw UsageError("cannot open '" + estimate_input + "'");
        xs = io::read_sample(file);
      }
      const EstimateReport report = make_report(accumulate_all(xs));
      if (estimate_format == "csv") {
        io::write_report_csv(out, report);
      } else {
        io::write_report_text(out, report);
      }
    } else if (sample_cmd->parsed()) {
      const LogNormalParams p = sample_params.resolve();
      if (sample_n < 1) throw UsageError("--n must be >= 1");
      const auto xs = sample(p, sample_n, sample_seed);
      emit(sample_output, out,
           [&xs](std::ostream& os) { io::write_sample(os, xs); });
      ordered_json config;
      config["params"] = sample_params.to_json(p);
      config["n"] = sample_n;
      write_manifest(sample_manifest, sample_output, "sample", config,
                     sample_seed);
    } else if (pdf_cmd->parsed()) {
      const LogNormalParams p = pdf_params.resolve();
      out << "x,pdf\n";
      for (double x : pdf_x) {
        out << io::format_real(x) << ',' << io::format_real(pdf(x, p))
            << '\n';
      }
    } else if (predict->parsed()) {
      if (!predict_k && !predict_cv) {
        throw UsageError("predict needs --k or --cv");
      }
      const double k = predict_k ? *predict_k : *predict_cv * *predict_cv;
      out << "n,k,expected_k_n,sd_k_n,expected_k_hat,sd_k_hat,"
             "cost_collective,cost_conventional\n";
      out << predict_n << ',' << io::format_real(k) << ','
          << io::format_real(expected_k_n(predict_n, k)) << ','
          << io::format_real(sd_k_n(predict_n, k)) << ',' << io::format_real(k)
          << ',' << io::format_real(sd_k_hat(predict_n, k)) << ','
          << measurement_cost(predict_n, MeasurementMode::collective) << ','
          << measurement_cost(predict_n, MeasurementMode::conventional)
          << '\n';
    } else if (simulate->parsed()) {
      if (runs_override != 0) grid.runs_override = runs_override;
      grid.runs_cap = runs_cap == 0 ? std::nullopt
                                    : std::optional<std::uint64_t>(runs_cap);
      grid.variate_budget = budget_from_env();
      const auto cells = run_grid(grid);
      for (const auto& c : cells) {
        if (c.slow_convergence) {
          err << "warning: cell n=" << c.n << " cv=" << io::format_real(c.cv)
              << " has cv > " << kSlowConvergenceCv
              << "; sd_khat converges slowly\n";
        }
      }
      emit(simulate_output, out,
           [&cells](std::ostream& os) { io::write_cells_csv(os, cells); });

      ordered_json config;
      config["n_values"] = grid.n_values;
      config["cv_values"] = grid.cv_values;
      config["runs"] = runs_override == 0 ? ordered_json(nullptr)
                                          : ordered_json(runs_override);
      config["runs_cap"] = runs_cap;
      config["mu_y"] = grid.mu_y;
      config["seed_derivation"] =
          "splitmix64_mix(master_seed + (cell_index + 1) * "
          "0x9E3779B97F4A7C15), row-major over (n, cv)";
      config["generator"] = "xoshiro256** + Marsaglia polar";
      ordered_json slow = ordered_json::array();
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i].slow_convergence) slow.push_back(i);
      }
      config["slow_convergence_cells"] = slow;
      write_manifest(simulate_manifest, simulate_output, "simulate", config,
                     grid.master_seed);
    } else if (efficiency->parsed()) {
      if (!(eff_min > 0.0) || !(eff_min < eff_max)) {
        throw UsageError("need 0 < --min < --max");
      }
      if (eff_points < 2) throw UsageError("--points must be >= 2");
      const auto curve = efficiency_curve(
          eff_min, eff_max, eff_points,
          eff_spacing == "log" ? Spacing::log : Spacing::linear);
      emit(eff_output, out,
           [&curve](std::ostream& os) { io::write_efficiency_csv(os, curve); });
      ordered_json config;
      config["min"] = eff_min;
      config["max"] = eff_max;
      config["points"] = eff_points;
      config["spacing"] = eff_spacing;
      write_manifest(eff_manifest, eff_output, "efficiency", config, 0);
    } else if (verify->parsed()) {
      if (!inject_fault.empty()) {
        verify_cfg.fault = oracle::term_kind_from_string(inject_fault);
        if (!verify_cfg.fault) {
          throw UsageError("unknown term class '" + inject_fault + "'");
        }
      }
      const auto report = oracle::verify_closed_forms(verify_cfg);
      if (!report.passed) {
        out << "FAIL " << report.first_failure << '\n';
        return kVerificationFailure;
      }
      out << "PASS " << report.checks << " checks, n <= " << verify_cfg.max_n
          << ", " << verify_cfg.omegas.size() << " omega values\n";
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const BudgetExceededError& e) {
    err << "budget refused: " << e.what() << " (set " << kBudgetEnvVar
        << " to raise it)\n";
    return kBudgetRefusal;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kSuccess;
}

}  // namespace lncv::cli
