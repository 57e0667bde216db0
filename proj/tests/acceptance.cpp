// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fail.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "lncv/cli.hpp"
#include "lncv/covariance_oracle.hpp"
#include "lncv/estimator.hpp"
#include "lncv/io.hpp"
#include "lncv/montecarlo.hpp"
#include "oracles.hpp"

#ifndef LNCV_PROPERTIES_BIN
#error "LNCV_PROPERTIES_BIN must point at the property-suite executable"
#endif

using namespace lncv;
using lncv::test::rel_close;

namespace {

constexpr std::uint64_t kPublishedSeed = 20140101;

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Outcome oracle_equivalence() {
  const auto start = Clock::now();
  Outcome o;
  int checks = 0;
  for (std::uint64_t n = 2; n <= 12 && o.pass; ++n) {
    for (double w : {1.0, 1.1, 2.0, 5.0, 10.0}) {
      checks += 2;
      if (!rel_close(oracle::exact_mean_kn(n, w), expected_k_n(n, w - 1.0),
                     1e-12) ||
          !rel_close(oracle::exact_var_kn(n, w), var_k_n(n, w - 1.0), 1e-12)) {
        o.pass = false;
        o.detail = "mismatch at n=" + std::to_string(n) +
                   " omega=" + io::format_real(w);
        break;
      }
    }
  }
  for (std::uint64_t n = 2; n <= 50 && o.pass; ++n) {
    std::uint64_t total = 0;
    for (auto c : oracle::closed_form_multiplicities(n)) total += c;
    ++checks;
    if (total != (n * (n - 1)) * (n * (n - 1))) {
      o.pass = false;
      o.detail = "multiplicities do not sum at n=" + std::to_string(n);
    }
  }
  const double elapsed = seconds_since(start);
  if (o.pass && elapsed >= 1.0) {
    o.pass = false;
    o.detail = "runtime " + io::format_real(elapsed) + " s >= 1 s";
  }
  if (o.pass) {
    o.detail = std::to_string(checks) + " checks in " +
               std::to_string(elapsed * 1e3) + " ms";
  }
  return o;
}

Outcome example_one() {
  Outcome o;
  for (double k : {0.1, 1.0, 5.0}) {
    const double expected = k * k * (k + 2.0) * (k + 2.0) / 8.0;
    const double got = var_k_n(2, k);
    if (!rel_close(got, expected, 1e-12)) {
      o.pass = false;
      o.detail = "k=" + io::format_real(k) + ": " + io::format_real(got) +
                 " vs " + io::format_real(expected);
      return o;
    }
  }
  o.detail = "k in {0.1, 1, 5}";
  return o;
}

struct GridRun {
  std::vector<SimulationCell> cells;
  double seconds = 0.0;
};

GridRun acceptance_grid() {
  GridConfig cfg;
  cfg.n_values = {2, 10, 100};
  cfg.cv_values = {0.1, 0.5, 1.0};
  cfg.runs_cap = 1'000'000;
  cfg.master_seed = kPublishedSeed;
  cfg.threads = std::max(1u, std::thread::hardware_concurrency());
  const auto start = Clock::now();
  GridRun run;
  run.cells = run_grid(cfg);
  run.seconds = seconds_since(start);
  return run;
}

std::string cell_label(const SimulationCell& c) {
  std::ostringstream os;
  os << "n=" << c.n << " cv=" << c.cv << " runs=" << c.runs;
  return os.str();
}

Outcome unbiasedness(const GridRun& grid) {
  Outcome o;
  double worst = 0.0;
  for (const auto& c : grid.cells) {
    const double z = std::fabs(c.mean_khat - c.cv * c.cv) / c.se_mean;
    worst = std::max(worst, z);
    std::printf("      %-32s mean_khat=%.6g cv^2=%.6g |z|=%.2f\n",
                cell_label(c).c_str(), c.mean_khat, c.cv * c.cv, z);
    if (!(z <= 4.0)) {
      o.pass = false;
      if (o.detail.empty()) o.detail = "4-sigma gate failed at " + cell_label(c);
    }
  }
  if (grid.seconds >= 120.0) {
    o.pass = false;
    o.detail += " runtime " + std::to_string(grid.seconds) + " s >= 120 s";
  }
  if (o.pass) {
    std::ostringstream os;
    os.precision(3);
    os << "worst |z| = " << worst << ", grid " << grid.seconds << " s";
    o.detail = os.str();
  }
  return o;
}

Outcome variance_law(const GridRun& grid) {
  Outcome o;
  double worst = 0.0;
  for (const auto& c : grid.cells) {
    if (c.cv > 1.0) continue;
    const double predicted = sd_k_hat(c.n, c.cv * c.cv);
    const double rel = std::fabs(c.sd_khat - predicted) / predicted;
    worst = std::max(worst, rel);
    std::printf("      %-32s sd_khat=%.6g eq6=%.6g rel=%.4f\n",
                cell_label(c).c_str(), c.sd_khat, predicted, rel);
    if (!(rel <= 0.05)) {
      o.pass = false;
      if (o.detail.empty()) o.detail = "5% gate failed at " + cell_label(c);
    }
  }
  if (o.pass) o.detail = "worst relative error " + std::to_string(worst);
  return o;
}

Outcome efficiency_curve_check() {
  Outcome o;
  for (double s2 : {0.01, 1.0, 2.0}) {
    const double got = large_sample_efficiency(s2);
    const double expected = lncv::test::efficiency_by_substitution(s2);
    std::printf("      sigma2=%-5g efficiency=%.9f substitution=%.9f\n", s2,
                got, expected);
    if (!(std::fabs(got - expected) <= 1e-6)) {
      o.pass = false;
      o.detail = "sigma2=" + io::format_real(s2) + " off by more than 1e-6";
    }
  }
  const auto curve = efficiency_curve(0.01, 4.0, 1000, Spacing::linear);
  for (std::size_t i = 1; i < curve.size(); ++i) {
    if (!(curve[i].second < curve[i - 1].second)) {
      o.pass = false;
      o.detail = "curve not strictly decreasing at sigma2=" +
                 io::format_real(curve[i].first);
      break;
    }
  }
  if (o.pass) o.detail = "3 points within 1e-6; 1000-point curve decreasing";
  return o;
}

Outcome property_suites() {
  Outcome o;
  const std::string command = std::string("\"") + LNCV_PROPERTIES_BIN +
                              "\" --minimal --no-version";
  const int status = std::system(command.c_str());
  o.pass = status == 0;
  o.detail = o.pass ? "standalone property binary green"
                    : "property binary exited with status " +
                          std::to_string(status);
  return o;
}

Outcome determinism() {
  const std::vector<std::string> args = {
      "lncv", "simulate", "--n",  "2,10", "--cv",
      "0.5,1", "--runs",  "20000", "--seed", "7"};
  std::string outputs[2];
  for (auto& output : outputs) {
    std::istringstream in;
    std::ostringstream out;
    std::ostringstream err;
    if (cli::run(args, in, out, err) != cli::kSuccess) {
      return {false, "simulate failed: " + err.str()};
    }
    output = out.str();
  }
  Outcome o;
  o.pass = !outputs[0].empty() && outputs[0] == outputs[1];
  o.detail = o.pass ? std::to_string(outputs[0].size()) + " identical bytes"
                    : "CSV differs between runs";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> check;
  };

  std::printf("running acceptance grid (seed %llu)...\n",
              static_cast<unsigned long long>(kPublishedSeed));
  std::fflush(stdout);
  GridRun grid;
  std::string grid_error;
  try {
    grid = acceptance_grid();
  } catch (const std::exception& e) {
    grid_error = e.what();
  }
  const auto needs_grid = [&](Outcome (*f)(const GridRun&)) {
    return [&, f]() -> Outcome {
      if (!grid_error.empty()) return {false, "grid failed: " + grid_error};
      return f(grid);
    };
  };

  const std::vector<Criterion> criteria = {
      {"1 oracle equivalence (E(K_n), Var(K_n), multiplicities)",
       oracle_equivalence},
      {"2 n = 2 variance cross-check", example_one},
      {"3 unbiasedness of k_hat on the default grid", needs_grid(unbiasedness)},
      {"4 sd of k_hat within 5% for cv <= 1", needs_grid(variance_law)},
      {"5 large-sample efficiency curve", efficiency_curve_check},
      {"6 property suites", property_suites},
      {"7 simulate determinism", determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", c.name,
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
