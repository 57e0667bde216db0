#include "lncv/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lncv/error.hpp"
#include "lncv/rng.hpp"

namespace lncv {

namespace {

void check_finite(double value, const char* field) {
  if (!std::isfinite(value)) {
    throw OverflowError(field, std::string("derive_moments: ") + field +
                                   " is not representable as a finite double");
  }
}

void check_density_args(double x, double sigma2) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("pdf: x must be a positive finite real, got " +
                      std::to_string(x));
  }
  if (sigma2 == 0.0) {
    throw DegenerateDistributionError(
        "pdf: zero log-variance is a point mass with no density");
  }
}

}  // namespace

void LogNormalParams::validate() const {
  if (!std::isfinite(mu_y) || !std::isfinite(sigma2_y)) {
    throw DomainError("lognormal parameters must be finite");
  }
  if (sigma2_y < 0.0) {
    throw DomainError("lognormal log-variance must be >= 0, got " +
                      std::to_string(sigma2_y));
  }
}

DerivedMoments derive_moments(const LogNormalParams& p) {
  p.validate();
  DerivedMoments m;
  m.alpha = std::exp(p.mu_y + 0.5 * p.sigma2_y);
  check_finite(m.alpha, "alpha");
  m.h = std::exp(p.mu_y - 0.5 * p.sigma2_y);
  check_finite(m.h, "h");
  m.g = std::exp(p.mu_y);
  check_finite(m.g, "g");
  m.k = std::expm1(p.sigma2_y);
  check_finite(m.k, "k");
  m.omega = m.k + 1.0;
  check_finite(m.omega, "omega");
  m.cv2 = m.k;
  m.beta2 = std::exp(2.0 * p.mu_y + p.sigma2_y) * m.k;
  check_finite(m.beta2, "beta2");
  if (m.alpha == 0.0 || m.h == 0.0 || m.g == 0.0) {
    throw OverflowError("h", "derive_moments: means underflow to zero");
  }
  return m;
}

LogNormalParams params_from_gk(double g, double k) {
  if (!(g > 0.0) || !std::isfinite(g)) {
    throw DomainError("geometric mean g must be a positive finite real");
  }
  if (!(k >= 0.0) || !std::isfinite(k)) {
    throw DomainError("relative ratio k must be a finite real >= 0");
  }
  return LogNormalParams{std::log(g), std::log1p(k)};
}

double pdf(double x, const LogNormalParams& p) {
  p.validate();
  check_density_args(x, p.sigma2_y);
  const double sigma = std::sqrt(p.sigma2_y);
  const double z = std::log(x) - p.mu_y;
  return std::exp(-z * z / (2.0 * p.sigma2_y)) /
         (x * sigma * std::sqrt(2.0 * std::numbers::pi));
}

double pdf_gk(double x, double g, double k) {
  if (!(g > 0.0) || !std::isfinite(g)) {
    throw DomainError("pdf_gk: g must be a positive finite real");
  }
  if (!(k >= 0.0) || !std::isfinite(k)) {
    throw DomainError("pdf_gk: k must be a finite real >= 0");
  }
  const double log_omega = std::log1p(k);
  check_density_args(x, log_omega);
  const double z = std::log(x / g);
  return std::exp(-z * z / (2.0 * log_omega)) /
         (x * std::sqrt(2.0 * std::numbers::pi * log_omega));
}

std::vector<double> sample(const LogNormalParams& p, std::size_t n,
                           std::uint64_t seed) {
  p.validate();
  if (n == 0) {
    throw DomainError("sample: n must be >= 1");
  }
  std::vector<double> out(n);
  if (p.sigma2_y == 0.0) {
    const double value = std::exp(p.mu_y);
    for (auto& x : out) x = value;
    return out;
  }
  Xoshiro256 engine(seed);
  StandardNormal normal;
  const double sigma = std::sqrt(p.sigma2_y);
  for (auto& x : out) x = std::exp(p.mu_y + sigma * normal(engine));
  return out;
}

}  // namespace lncv
