#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lncv::oracle {

/*!
  Classes of covariance terms Cov(X_i/X_j, X_p/X_q), i != j, p != q, in the
  expansion of Var(sum_{i != j} X_i/X_j). Written with the first ratio as
  X1/X2:

    SelfPair            (X1/X2, X1/X2)
    ReciprocalPair      (X1/X2, X2/X1)
    SharedDenominator   (X1/X2, X3/X2)
    NumIsOtherDen       (X1/X2, X3/X1)
    DenIsOtherNum       (X1/X2, X2/X3)
    SharedNumerator     (X1/X2, X1/X3)
    Disjoint            (X1/X2, X3/X4)
*/
enum class TermKind {
  SelfPair,
  ReciprocalPair,
  SharedDenominator,
  NumIsOtherDen,
  DenIsOtherNum,
  SharedNumerator,
  Disjoint,
};

inline constexpr std::array<TermKind, 7> kAllTermKinds = {
    TermKind::SelfPair,        TermKind::ReciprocalPair,
    TermKind::SharedDenominator, TermKind::NumIsOtherDen,
    TermKind::DenIsOtherNum,   TermKind::SharedNumerator,
    TermKind::Disjoint,
};

using Multiplicities = std::array<std::uint64_t, kAllTermKinds.size()>;

std::string_view to_string(TermKind kind);
std::optional<TermKind> term_kind_from_string(std::string_view name);

/// Covariance of one term of class `kind`, a polynomial in omega >= 1.
double covariance_term(TermKind kind, double omega);

/// Number of ordered (i, j, p, q) tuples of class `kind` for sample size n.
/// Classes needing more distinct indices than n yield 0.
std::uint64_t term_multiplicity(TermKind kind, std::uint64_t n);

/// term_multiplicity for every class, indexed as kAllTermKinds.
Multiplicities closed_form_multiplicities(std::uint64_t n);

/// Class counts by enumerating every (i, j, p, q) with i != j, p != q.
/// Limited to n <= kMaxBruteForceN.
inline constexpr std::uint64_t kMaxBruteForceN = 8;
Multiplicities brute_force_multiplicities(std::uint64_t n);

/// (1/n^4) * sum over classes of multiplicity * covariance_term.
double assemble_var_kn(std::uint64_t n, double omega,
                       const Multiplicities& counts);

/// Var(K_n) assembled from the closed-form class counts.
double exact_var_kn(std::uint64_t n, double omega);

/// E(K_n) = (1/n^2)(n + n(n-1) omega) - 1.
double exact_mean_kn(std::uint64_t n, double omega);

/// Var(K_n) with no class table at all: every (i, j, p, q) term is evaluated
/// from its exponent vector e as E[prod X^e] = omega^(|e|^2 / 2).
/// Limited to n <= kMaxBruteForceN.
double brute_force_var_kn(std::uint64_t n, double omega);


struct VerifyConfig {
  std::uint64_t max_n = 12;
  std::vector<double> omegas{1.0, 1.1, 2.0, 5.0, 10.0};
  double rel_tol = 1e-12;
  /// Test hook: adds one to this class's closed-form multiplicity before
  /// any check runs.
  std::optional<TermKind> fault;
};

struct VerifyReport {
  bool passed = true;
  std::uint64_t checks = 0;
  /// Empty on success; otherwise names the (n, omega, class) of the first
  /// mismatch.
  std::string first_failure;
};

/// Checks, for n = 2..max_n: class counts against brute-force enumeration
/// (n <= kMaxBruteForceN), the count total (n(n-1))^2, and for each omega
/// exact_mean_kn / assembled Var(K_n) against expected_k_n / var_k_n at
/// k = omega - 1. Stops at the first mismatch.
VerifyReport verify_closed_forms(const VerifyConfig& cfg);

}  // namespace lncv::oracle
