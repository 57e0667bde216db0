#include "lncv/covariance_oracle.hpp"

#include <array>
#include <cmath>
#include <string>

#include "lncv/compensated_sum.hpp"
#include "lncv/error.hpp"

namespace lncv::oracle {

namespace {

constexpr std::array<std::string_view, 7> kNames = {
    "SelfPair",      "ReciprocalPair",  "SharedDenominator", "NumIsOtherDen",
    "DenIsOtherNum", "SharedNumerator", "Disjoint",
};

void check_args(std::uint64_t n, double omega) {
  if (n < 2) throw DomainError("oracle needs sample size n >= 2");
  if (!(omega >= 1.0) || !std::isfinite(omega)) {
    throw DomainError("oracle needs a finite omega >= 1");
  }
}

void check_brute_force_n(std::uint64_t n) {
  if (n < 2 || n > kMaxBruteForceN) {
    throw DomainError("brute-force enumeration supports 2 <= n <= " +
                      std::to_string(kMaxBruteForceN));
  }
}

TermKind classify(std::uint64_t i, std::uint64_t j, std::uint64_t p,
                  std::uint64_t q) {
  if (p == i && q == j) return TermKind::SelfPair;
  if (p == j && q == i) return TermKind::ReciprocalPair;
  if (q == j) return TermKind::SharedDenominator;
  if (q == i) return TermKind::NumIsOtherDen;
  if (p == j) return TermKind::DenIsOtherNum;
  if (p == i) return TermKind::SharedNumerator;
  return TermKind::Disjoint;
}

std::size_t index_of(TermKind kind) { return static_cast<std::size_t>(kind); }

}  // namespace

std::string_view to_string(TermKind kind) { return kNames[index_of(kind)]; }

std::optional<TermKind> term_kind_from_string(std::string_view name) {
  for (TermKind kind : kAllTermKinds) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

double covariance_term(TermKind kind, double omega) {
  if (!(omega >= 1.0) || !std::isfinite(omega)) {
    throw DomainError("covariance_term needs a finite omega >= 1");
  }
  const double w2 = omega * omega;
  switch (kind) {
    case TermKind::SelfPair:
      return w2 * w2 - w2;
    case TermKind::ReciprocalPair:
      return 1.0 - w2;
    case TermKind::SharedDenominator:
    case TermKind::SharedNumerator:
      return w2 * omega - w2;
    case TermKind::NumIsOtherDen:
    case TermKind::DenIsOtherNum:
      return omega - w2;
    case TermKind::Disjoint:
      return 0.0;
  }
  return 0.0;
}

std::uint64_t term_multiplicity(TermKind kind, std::uint64_t n) {
  const auto falling = [n](std::uint64_t terms) {
    std::uint64_t product = 1;
    for (std::uint64_t t = 0; t < terms; ++t) {
      if (n <= t) return std::uint64_t{0};
      product *= n - t;
    }
    return product;
  };
  switch (kind) {
    case TermKind::SelfPair:
    case TermKind::ReciprocalPair:
      return falling(2);
    case TermKind::SharedDenominator:
    case TermKind::NumIsOtherDen:
    case TermKind::DenIsOtherNum:
    case TermKind::SharedNumerator:
      return falling(3);
    case TermKind::Disjoint:
      return falling(4);
  }
  return 0;
}

Multiplicities closed_form_multiplicities(std::uint64_t n) {
  Multiplicities counts{};
  for (TermKind kind : kAllTermKinds) {
    counts[index_of(kind)] = term_multiplicity(kind, n);
  }
  return counts;
}

Multiplicities brute_force_multiplicities(std::uint64_t n) {
  check_brute_force_n(n);
  Multiplicities counts{};
  for (std::uint64_t i = 0; i < n; ++i)
    for (std::uint64_t j = 0; j < n; ++j) {
      if (i == j) continue;
      for (std::uint64_t p = 0; p < n; ++p)
        for (std::uint64_t q = 0; q < n; ++q) {
          if (p == q) continue;
          ++counts[index_of(classify(i, j, p, q))];
        }
    }
  return counts;
}

double assemble_var_kn(std::uint64_t n, double omega,
                       const Multiplicities& counts) {
  check_args(n, omega);
  // Like terms are scaled per class, then summed in class order.
  CompensatedSum total;
  for (TermKind kind : kAllTermKinds) {
    total += static_cast<double>(counts[index_of(kind)]) *
             covariance_term(kind, omega);
  }
  const double n2 = static_cast<double>(n) * static_cast<double>(n);
  return total.value() / (n2 * n2);
}

double exact_var_kn(std::uint64_t n, double omega) {
  return assemble_var_kn(n, omega, closed_form_multiplicities(n));
}

double exact_mean_kn(std::uint64_t n, double omega) {
  check_args(n, omega);
  const double nd = static_cast<double>(n);
  return (nd + nd * (nd - 1.0) * omega) / (nd * nd) - 1.0;
}

double brute_force_var_kn(std::uint64_t n, double omega) {
  check_brute_force_n(n);
  check_args(n, omega);
  // E[prod X^e] for zero-sum exponent vector e is exp(sigma2 |e|^2 / 2),
  // i.e. omega^(|e|^2 / 2); |e|^2 is always even here.
  const auto moment = [omega](int squared_norm) {
    return std::pow(omega, squared_norm / 2);
  };
  CompensatedSum total;
  std::array<int, kMaxBruteForceN> e{};
  for (std::uint64_t i = 0; i < n; ++i)
    for (std::uint64_t j = 0; j < n; ++j) {
      if (i == j) continue;
      for (std::uint64_t p = 0; p < n; ++p)
        for (std::uint64_t q = 0; q < n; ++q) {
          if (p == q) continue;
          e.fill(0);
          ++e[i];
          --e[j];
          ++e[p];
          --e[q];
          int joint = 0;
          for (int v : e) joint += v * v;
          total += moment(joint) - moment(2) * moment(2);
        }
    }
  const double n2 = static_cast<double>(n) * static_cast<double>(n);
  return total.value() / (n2 * n2);
}

}  // namespace lncv::oracle
