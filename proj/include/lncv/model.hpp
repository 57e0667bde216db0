#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace lncv {

/// Two-parameter lognormal LN(mu_y, sigma2_y), parameterized in log space.
struct LogNormalParams {
  double mu_y = 0.0;
  double sigma2_y = 0.0;

  /// Throws DomainError unless both fields are finite and sigma2_y >= 0.
  void validate() const;

  friend bool operator==(const LogNormalParams&,
                         const LogNormalParams&) = default;
};

/// Real-space population quantities of a lognormal distribution.
struct DerivedMoments {
  double alpha = 1.0;  ///< arithmetic mean E[X]
  double h = 1.0;      ///< harmonic mean 1/E[1/X]
  double g = 1.0;      ///< geometric mean exp(mu_y)
  double beta2 = 0.0;  ///< variance
  double cv2 = 0.0;    ///< squared coefficient of variation
  double omega = 1.0;  ///< alpha / h
  double k = 0.0;      ///< relative ratio omega - 1
};

/// Closed-form moments. Throws OverflowError naming the first field that is
/// not finite.
DerivedMoments derive_moments(const LogNormalParams& p);

/// Inverse of the (g, k) parameterization: mu_y = ln g, sigma2_y = ln(1 + k).
LogNormalParams params_from_gk(double g, double k);

/// Density f(x; mu_y, sigma2_y). Rejects x <= 0 and sigma2_y == 0.
double pdf(double x, const LogNormalParams& p);

/// Density in terms of the geometric mean g and relative ratio k.
double pdf_gk(double x, double g, double k);

/// n i.i.d. variates exp(mu_y + sigma_y * Z), Z from StandardNormal driven by
/// Xoshiro256(seed). Deterministic in (p, n, seed).
std::vector<double> sample(const LogNormalParams& p, std::size_t n,
                           std::uint64_t seed);

}  // namespace lncv
