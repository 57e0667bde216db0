#include <algorithm>
#include <cmath>
#include <sstream>

#include "lncv/covariance_oracle.hpp"
#include "lncv/error.hpp"
#include "lncv/estimator.hpp"

namespace lncv::oracle {

namespace {

bool relatively_close(double a, double b, double tol) {
  if (a == b) return true;
  return std::fabs(a - b) <= tol * std::max(std::fabs(a), std::fabs(b));
}

std::string describe(std::uint64_t n, const char* what) {
  std::ostringstream os;
  os << "n=" << n << ": " << what;
  return os.str();
}

}  // namespace

VerifyReport verify_closed_forms(const VerifyConfig& cfg) {
  if (cfg.max_n < 2) throw DomainError("verify needs max_n >= 2");
  for (double omega : cfg.omegas) {
    if (!(omega >= 1.0) || !std::isfinite(omega)) {
      throw DomainError("verify needs finite omega values >= 1");
    }
  }

  VerifyReport report;
  const auto fail = [&report](std::string message) {
    report.passed = false;
    report.first_failure = std::move(message);
    return report;
  };

  for (std::uint64_t n = 2; n <= cfg.max_n; ++n) {
    Multiplicities counts = closed_form_multiplicities(n);
    if (cfg.fault) ++counts[static_cast<std::size_t>(*cfg.fault)];

    if (n <= kMaxBruteForceN) {
      const Multiplicities enumerated = brute_force_multiplicities(n);
      for (TermKind kind : kAllTermKinds) {
        const auto i = static_cast<std::size_t>(kind);
        ++report.checks;
        if (counts[i] != enumerated[i]) {
          std::ostringstream os;
          os << "n=" << n << ", class " << to_string(kind)
             << ": closed-form multiplicity " << counts[i]
             << " != enumerated " << enumerated[i];
          return fail(os.str());
        }
      }
    }

    std::uint64_t total = 0;
    for (auto c : counts) total += c;
    ++report.checks;
    if (total != (n * (n - 1)) * (n * (n - 1))) {
      return fail(describe(n, "class multiplicities do not sum to (n(n-1))^2"));
    }

    for (double omega : cfg.omegas) {
      const double k = omega - 1.0;
      ++report.checks;
      const double mean = exact_mean_kn(n, omega);
      const double mean_closed = expected_k_n(n, k);
      if (!relatively_close(mean, mean_closed, cfg.rel_tol)) {
        std::ostringstream os;
        os.precision(17);
        os << "n=" << n << ", omega=" << omega << ": E(K_n) enumeration "
           << mean << " != closed form " << mean_closed;
        return fail(os.str());
      }
      ++report.checks;
      const double var = assemble_var_kn(n, omega, counts);
      const double var_closed = var_k_n(n, k);
      if (!relatively_close(var, var_closed, cfg.rel_tol)) {
        std::ostringstream os;
        os.precision(17);
        os << "n=" << n << ", omega=" << omega << ": Var(K_n) enumeration "
           << var << " != closed form " << var_closed;
        return fail(os.str());
      }
    }
  }
  return report;
}

}  // namespace lncv::oracle
