#include "projave/geometry/constants.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "projave/errors.hpp"

namespace projave::geometry {

namespace {

double log_unit_ball_volume(double s) {
  return 0.5 * s * std::log(std::numbers::pi) - std::lgamma(1.0 + 0.5 * s);
}

void require_exponent_range(int n, double p) {
  if (n < 2) {
    throw DomainError("dimension must be at least 2, got " + std::to_string(n));
  }
  if (!(p >= 1.0) || !(p < n)) {
    throw DomainError("exponent p must satisfy 1 <= p < n (n = " + std::to_string(n) +
                      ", p = " + std::to_string(p) + ")");
  }
}

}  // namespace

double unit_ball_volume(double s) {
  if (!(s >= 0.0)) {
    throw DomainError("unit_ball_volume: negative dimension " + std::to_string(s));
  }
  return std::exp(log_unit_ball_volume(s));
}

double q_coefficient(int i, double p) {
  if (i < 1) {
    throw DomainError("q_coefficient: subspace dimension must be >= 1");
  }
  if (!(p >= 1.0)) {
    throw DomainError("q_coefficient: p must be >= 1");
  }
  const double log_q = std::log(2.0) + log_unit_ball_volume(i + p - 2.0) -
                       std::log(static_cast<double>(i)) - log_unit_ball_volume(i) -
                       log_unit_ball_volume(p - 1.0);
  return std::exp(log_q);
}

double sharp_constant(int n, double p) {
  require_exponent_range(n, p);
  const double dn = n;
  // (2 omega_{n+p-2} / (omega_n omega_{p-1}))^{1/p}
  const double log_first = (std::log(2.0) + log_unit_ball_volume(dn + p - 2.0) -
                            log_unit_ball_volume(dn) - log_unit_ball_volume(p - 1.0)) /
                           p;
  // ((n-p)/(p-1))^{1-1/p}; the exponent vanishes at p = 1 and the limit is 1.
  double log_middle = 0.0;
  if (p > 1.0) {
    log_middle = (1.0 - 1.0 / p) * (std::log(dn - p) - std::log(p - 1.0));
  }
  // (omega_n Gamma(n/p) Gamma(n+1-n/p) / Gamma(n))^{1/n}
  const double log_last = (log_unit_ball_volume(dn) + std::lgamma(dn / p) +
                           std::lgamma(dn + 1.0 - dn / p) - std::lgamma(dn)) /
                          dn;
  return std::exp(log_first + log_middle + log_last);
}

double classical_constant(int n, double p) {
  return sharp_constant(n, p) * std::pow(q_coefficient(n, p), -1.0 / p);
}

double projected_moment(int n, int i, double p) {
  if (i < 1 || i > n) {
    throw DomainError("projected_moment: need 1 <= i <= n");
  }
  if (!(p >= 0.0)) {
    throw DomainError("projected_moment: p must be >= 0");
  }
  if (i == n) {
    return 1.0;
  }
  return std::exp(std::lgamma(0.5 * (i + p)) + std::lgamma(0.5 * n) - std::lgamma(0.5 * i) -
                  std::lgamma(0.5 * (n + p)));
}

double sobolev_exponent(int n, double p) {
  require_exponent_range(n, p);
  return n * p / (n - p);
}

}  // namespace projave::geometry
