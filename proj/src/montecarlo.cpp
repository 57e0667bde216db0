#include "lncv/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include "lncv/compensated_sum.hpp"
#include "lncv/error.hpp"
#include "lncv/estimator.hpp"
#include "lncv/model.hpp"
#include "lncv/rng.hpp"

namespace lncv {

namespace {

void check_cell_args(std::uint64_t n, double cv, std::uint64_t runs) {
  if (n < 2) throw DomainError("simulation cell needs n >= 2");
  if (!(cv > 0.0) || !std::isfinite(cv)) {
    throw DomainError("simulation cell needs a finite cv > 0");
  }
  if (runs < 2) throw DomainError("simulation cell needs runs >= 2");
}

void check_budget(std::uint64_t n, std::uint64_t runs, double budget) {
  const double cost = static_cast<double>(n) * static_cast<double>(runs);
  if (cost > budget) {
    throw BudgetExceededError(
        cost, budget,
        "cell n=" + std::to_string(n) + " runs=" + std::to_string(runs) +
            " needs " + std::to_string(cost) + " variates, budget is " +
            std::to_string(budget));
  }
}

}  // namespace

void GridConfig::validate() const {
  if (n_values.empty() || cv_values.empty()) {
    throw DomainError("grid needs at least one n and one cv value");
  }
  for (auto n : n_values) {
    if (n < 2) throw DomainError("grid n values must be >= 2");
  }
  for (double cv : cv_values) {
    if (!(cv > 0.0) || !std::isfinite(cv)) {
      throw DomainError("grid cv values must be finite and > 0");
    }
  }
  if (runs_override && *runs_override < 2) {
    throw DomainError("runs override must be >= 2");
  }
  if (runs_cap && *runs_cap < 2) throw DomainError("runs cap must be >= 2");
  if (!std::isfinite(mu_y)) throw DomainError("mu_y must be finite");
}

std::uint64_t default_runs(std::uint64_t n) {
  if (n < 2) throw DomainError("default_runs needs n >= 2");
  return 10'000'000ULL / (n - 1);
}

std::uint64_t resolve_runs(const GridConfig& cfg, std::uint64_t n) {
  if (cfg.runs_override) return *cfg.runs_override;
  const std::uint64_t runs = default_runs(n);
  return cfg.runs_cap ? std::min(runs, *cfg.runs_cap) : runs;
}

SimulationCell run_cell(std::uint64_t n, double cv, std::uint64_t runs,
                        std::uint64_t seed, double mu_y,
                        double variate_budget) {
  check_cell_args(n, cv, runs);
  check_budget(n, runs, variate_budget);

  SimulationCell cell;
  cell.n = n;
  cell.cv = cv;
  cell.runs = runs;
  cell.seed = seed;
  cell.mu_y = mu_y;
  cell.pred_mean = cv * cv;
  cell.pred_sd = sd_k_hat(n, cell.pred_mean);
  cell.slow_convergence = cv > kSlowConvergenceCv;

  const LogNormalParams params = params_from_gk(std::exp(mu_y), cv * cv);
  params.validate();
  const double sigma = std::sqrt(params.sigma2_y);
  Xoshiro256 engine(seed);
  StandardNormal normal;

  // Deviations from the predicted mean keep the sum of squares well
  // conditioned.
  const double shift = cell.pred_mean;
  CompensatedSum sum_dev;
  CompensatedSum sum_dev2;
  CompensatedSum sum_kn;
  const double correction =
      static_cast<double>(n) / (static_cast<double>(n) - 1.0);
  for (std::uint64_t run = 0; run < runs; ++run) {
    SampleAccumulator acc;
    for (std::uint64_t i = 0; i < n; ++i) {
      acc.add(std::exp(params.mu_y + sigma * normal(engine)));
    }
    const double kn = relative_ratio(acc);
    const double d = correction * kn - shift;
    sum_kn += kn;
    sum_dev += d;
    sum_dev2 += d * d;
  }

  const double r = static_cast<double>(runs);
  const double mean_dev = sum_dev.value() / r;
  const double variance =
      std::max((sum_dev2.value() - r * mean_dev * mean_dev) / (r - 1.0), 0.0);
  cell.mean_khat = std::max(shift + mean_dev, 0.0);
  cell.sd_khat = std::sqrt(variance);
  cell.se_mean = cell.sd_khat / std::sqrt(r);
  cell.mean_kn = sum_kn.value() / r;
  return cell;
}

std::vector<SimulationCell> run_grid(const GridConfig& cfg) {
  cfg.validate();

  struct Task {
    std::uint64_t n;
    double cv;
    std::uint64_t runs;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (auto n : cfg.n_values) {
    for (double cv : cfg.cv_values) {
      const std::uint64_t runs = resolve_runs(cfg, n);
      check_budget(n, runs, cfg.variate_budget);
      tasks.push_back({n, cv, runs, derive_seed(cfg.master_seed, tasks.size())});
    }
  }

  std::vector<SimulationCell> cells(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        const Task& t = tasks[i];
        cells[i] = run_cell(t.n, t.cv, t.runs, t.seed, cfg.mu_y,
                            cfg.variate_budget);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  const unsigned threads = std::clamp<unsigned>(
      cfg.threads, 1, static_cast<unsigned>(tasks.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }
  return cells;
}

std::vector<std::pair<double, double>> efficiency_curve(double sigma2_min,
                                                        double sigma2_max,
                                                        std::uint64_t points,
                                                        Spacing spacing) {
  if (!(sigma2_min > 0.0) || !std::isfinite(sigma2_max) ||
      !(sigma2_min < sigma2_max)) {
    throw DomainError("efficiency curve needs 0 < sigma2_min < sigma2_max");
  }
  if (points < 2) throw DomainError("efficiency curve needs points >= 2");

  std::vector<std::pair<double, double>> curve;
  curve.reserve(points);
  const double last = static_cast<double>(points - 1);
  for (std::uint64_t i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / last;
    double s2 = 0.0;
    if (i == 0) {
      s2 = sigma2_min;
    } else if (i + 1 == points) {
      s2 = sigma2_max;
    } else if (spacing == Spacing::log) {
      s2 = std::exp(std::log(sigma2_min) +
                    t * (std::log(sigma2_max) - std::log(sigma2_min)));
    } else {
      s2 = sigma2_min + t * (sigma2_max - sigma2_min);
    }
    curve.emplace_back(s2, large_sample_efficiency(s2));
  }
  return curve;
}

}  // namespace lncv
