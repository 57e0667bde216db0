#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace lncv {

/// Largest runs * n a single cell may draw unless the caller says otherwise.
inline constexpr double kDefaultVariateBudget = 4e9;

/// Cells above this population C_v converge slowly in sd and are flagged.
inline constexpr double kSlowConvergenceCv = 2.0;

/// One Monte Carlo experiment: `runs` independent samples of size n from the
/// lognormal with C_v = cv, summarized by the mean and sd of k_hat.
struct SimulationCell {
  std::uint64_t n = 0;
  double cv = 0.0;
  std::uint64_t runs = 0;
  std::uint64_t seed = 0;
  double mu_y = 0.0;
  double mean_khat = 0.0;
  double sd_khat = 0.0;   ///< (runs - 1) divisor
  double pred_mean = 0.0; ///< cv^2
  double pred_sd = 0.0;   ///< sd_k_hat(n, cv^2)
  double se_mean = 0.0;   ///< sd_khat / sqrt(runs)
  double mean_kn = 0.0;   ///< mean of the uncorrected K_n over the same runs
  bool slow_convergence = false;
};

struct GridConfig {
  std::vector<std::uint64_t> n_values{2, 10, 100};
  std::vector<double> cv_values{0.1, 0.5, 1.0};
  std::optional<std::uint64_t> runs_override;
  /// Applied after the default rule; the acceptance grid uses 10^6.
  std::optional<std::uint64_t> runs_cap;
  std::uint64_t master_seed = 20140101;
  double mu_y = 0.0;
  double variate_budget = kDefaultVariateBudget;
  unsigned threads = 1;

  /// Throws DomainError on empty lists, n < 2, cv <= 0 or runs < 2.
  void validate() const;
};

/// floor(10^7 / (n - 1)).
std::uint64_t default_runs(std::uint64_t n);

/// Runs used for `n` under `cfg`: the override if set, else default_runs
/// limited by runs_cap.
std::uint64_t resolve_runs(const GridConfig& cfg, std::uint64_t n);

/// Simulates one cell. Deterministic in its arguments. Throws
/// BudgetExceededError when runs * n exceeds `variate_budget`.
SimulationCell run_cell(std::uint64_t n, double cv, std::uint64_t runs,
                        std::uint64_t seed, double mu_y = 0.0,
                        double variate_budget = kDefaultVariateBudget);

/// One cell per (n, cv) pair in row-major order (n outer). Cell i is seeded
/// with derive_seed(master_seed, i), so the output does not depend on
/// `threads`. Budgets are checked for every cell before any cell runs.
std::vector<SimulationCell> run_grid(const GridConfig& cfg);

enum class Spacing { linear, log };

/// (sigma2, large_sample_efficiency(sigma2)) on `points` grid nodes spanning
/// [sigma2_min, sigma2_max] inclusive.
std::vector<std::pair<double, double>> efficiency_curve(double sigma2_min,
                                                        double sigma2_max,
                                                        std::uint64_t points,
                                                        Spacing spacing);

}  // namespace lncv
