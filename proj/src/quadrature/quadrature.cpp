#include "projave/quadrature/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "projave/errors.hpp"
#include "projave/geometry/constants.hpp"
#include "projave/quadrature/monte_carlo.hpp"

namespace projave::quadrature {

namespace {

// Stream tags keep the generators of different routines apart when they
// are driven by the same spec seed.
constexpr std::uint64_t kFrameStream = 1;
constexpr std::uint64_t kSphereStream = 2;
constexpr std::uint64_t kImportanceStream = 3;

std::uint64_t stream_seed(const QuadratureSpec& spec, std::uint64_t tag) {
  return geometry::derive_seed(spec.seed, tag);
}

double integrate_panels(const RadialFn& g, int n, int k, std::span<const double> t_cuts) {
  double total = 0.0;
  for (std::size_t p = 0; p + 1 < t_cuts.size(); ++p) {
    const auto rule = gauss_legendre(k, t_cuts[p], t_cuts[p + 1]);
    double panel = 0.0;
    for (int q = 0; q < k; ++q) {
      const double t = rule.nodes[q];
      const double one_minus = 1.0 - t;
      const double r = t / one_minus;
      const double gr = g(r);
      if (!std::isfinite(gr)) {
        std::ostringstream msg;
        msg << "integrate_radial: non-finite integrand " << gr << " at r = " << r;
        throw IntegrationError(msg.str());
      }
      if (gr != 0.0) {
        panel += rule.weights[q] * gr * std::pow(r, n - 1) / (one_minus * one_minus);
      }
    }
    total += panel;
  }
  return total;
}

// [r0, inf) in u = log(r / r0): int g(r0 e^u) (r0 e^u)^n du on doubling
// panels. Slow algebraic tails become exponentials in u. The range stops
// where r^n would overflow.
double integrate_tail(const RadialFn& g, int n, int k, double r0) {
  const double u_max = 700.0 / n - std::log(r0);
  std::vector<double> edges{0.0};
  for (double u = 1.0; u < u_max; u *= 2.0) {
    edges.push_back(u);
  }
  edges.push_back(u_max);
  double total = 0.0;
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const auto rule = gauss_legendre(k, edges[p], edges[p + 1]);
    for (int q = 0; q < k; ++q) {
      const double r = r0 * std::exp(rule.nodes[q]);
      const double gr = g(r);
      if (!std::isfinite(gr)) {
        std::ostringstream msg;
        msg << "integrate_radial: non-finite integrand " << gr << " at r = " << r;
        throw IntegrationError(msg.str());
      }
      if (gr != 0.0) {
        total += rule.weights[q] * gr * std::pow(r, n);
      }
    }
  }
  return total;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (radial_nodes < 1 || sphere_samples < 1 || grassmann_samples < 1) {
    throw ConfigError("QuadratureSpec: all sample/node counts must be >= 1");
  }
  if (!(target_rel_error > 0.0 && target_rel_error <= 0.1)) {
    throw ConfigError("QuadratureSpec: target_rel_error must lie in (0, 0.1]");
  }
}

double combined_error(double a, double b) { return std::hypot(a, b); }

GaussLegendreRule gauss_legendre(int k, double a, double b) {
  if (k < 1) {
    throw ConfigError("gauss_legendre: need at least one node");
  }
  GaussLegendreRule rule{std::vector<double>(k), std::vector<double>(k)};
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const int m = (k + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (k + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 1; j <= k; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      dp = k * (z * p1 - p2) / (z * z - 1.0);
      const double step = p1 / dp;
      z -= step;
      if (std::abs(step) <= 1e-15) {
        break;
      }
    }
    // Re-evaluate the derivative at the converged root for the weight.
    double p1 = 1.0;
    double p2 = 0.0;
    for (int j = 1; j <= k; ++j) {
      const double p3 = p2;
      p2 = p1;
      p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
    }
    dp = k * (z * p1 - p2) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = mid - half * z;
    rule.nodes[k - 1 - i] = mid + half * z;
    rule.weights[i] = half * w;
    rule.weights[k - 1 - i] = half * w;
  }
  return rule;
}

Estimate integrate_radial(const RadialFn& g, int n, const QuadratureSpec& spec,
                          std::span<const double> breakpoints) {
  spec.validate();
  if (n < 1) {
    throw DomainError("integrate_radial: dimension must be >= 1");
  }
  std::vector<double> sorted(breakpoints.begin(), breakpoints.end());
  std::sort(sorted.begin(), sorted.end());
  double r0 = 1.0;
  for (double r : sorted) {
    if (r > 0.0 && std::isfinite(r)) {
      r0 = std::max(r0, 2.0 * r);
    }
  }
  std::vector<double> cuts{0.0};
  for (double r : sorted) {
    if (r > 0.0 && std::isfinite(r)) {
      const double t = r / (1.0 + r);
      if (t > cuts.back()) {
        cuts.push_back(t);
      }
    }
  }
  cuts.push_back(r0 / (1.0 + r0));
  const int k = spec.radial_nodes;
  const double coarse = integrate_panels(g, n, k, cuts) + integrate_tail(g, n, k, r0);
  const double fine = integrate_panels(g, n, 2 * k, cuts) + integrate_tail(g, n, 2 * k, r0);
  return {fine, std::abs(fine - coarse), spec};
}

Estimate sphere_average(const SphereFn& h, int n, const QuadratureSpec& spec) {
  spec.validate();
  if (n < 1) {
    throw DomainError("sphere_average: dimension must be >= 1");
  }
  auto factory = [&]() -> SampleFn {
    return [&h, n, u = Vector(n), normal = std::normal_distribution<double>()](
               geometry::Rng& rng, std::span<double> out) mutable {
      double norm = 0.0;
      do {
        for (int k = 0; k < n; ++k) {
          u[k] = normal(rng);
        }
        norm = u.norm();
      } while (norm == 0.0);
      u /= norm;
      const double plus = h(u);
      const double minus = h(-u);
      out[0] = 0.5 * (plus + minus);
    };
  };
  const auto stats = run_monte_carlo(static_cast<std::size_t>(spec.sphere_samples),
                                     stream_seed(spec, kSphereStream), 1, factory);
  return {stats.mean(0), stats.std_error(0), spec};
}

Estimate integrate_rn(const RnFn& F, int n, const QuadratureSpec& spec,
                      const RnStructure& structure) {
  spec.validate();
  const double sphere_area = n * geometry::unit_ball_volume(n);
  if (structure.separable) {
    const auto& sep = *structure.separable;
    const Estimate radial = integrate_radial(sep.radial, n, spec, sep.breakpoints);
    const Estimate angular = sphere_average(sep.angular, n, spec);
    const double value = radial.value * sphere_area * angular.value;
    double rel = 0.0;
    if (radial.value != 0.0 && angular.value != 0.0) {
      rel = combined_error(radial.std_error / radial.value, angular.std_error / angular.value);
    }
    return {value, std::abs(value) * rel, spec};
  }
  if (!structure.tail_exponent) {
    throw ConfigError("integrate_rn: non-separable integrand needs a declared tail exponent");
  }
  const double tail = *structure.tail_exponent;
  if (!(tail > n)) {
    throw ConfigError("integrate_rn: tail exponent must exceed the dimension");
  }
  if (!(structure.scale > 0.0)) {
    throw ConfigError("integrate_rn: proposal scale must be positive");
  }
  const double beta = tail / n - 1.0;
  const double sigma = structure.scale;
  const double density_norm = beta / (geometry::unit_ball_volume(n) * std::pow(sigma, n));

  auto factory = [&]() -> SampleFn {
    return [&F, n, beta, sigma, density_norm, x = Vector(n),
            normal = std::normal_distribution<double>(),
            uniform = std::uniform_real_distribution<double>()](
               geometry::Rng& rng, std::span<double> out) mutable {
      double norm = 0.0;
      do {
        for (int k = 0; k < n; ++k) {
          x[k] = normal(rng);
        }
        norm = x.norm();
      } while (norm == 0.0);
      const double u = 1.0 - uniform(rng);  // (0, 1]
      const double s = std::pow(u, -1.0 / beta) - 1.0;
      const double r = sigma * std::pow(s, 1.0 / n);
      x *= r / norm;
      const double density = density_norm * std::pow(1.0 + s, -1.0 - beta);
      const double fx = F(x);
      if (!std::isfinite(fx)) {
        throw IntegrationError("integrate_rn: non-finite integrand at |x| = " +
                               std::to_string(r));
      }
      out[0] = fx / density;
    };
  };
  const auto stats = run_monte_carlo(static_cast<std::size_t>(spec.sphere_samples),
                                     stream_seed(spec, kImportanceStream), 1, factory);
  return {stats.mean(0), stats.std_error(0), spec};
}

Estimate grassmann_functional(const FrameFn& G, int n, int i, double exponent,
                              const QuadratureSpec& spec) {
  spec.validate();
  if (i < 1 || i > n) {
    throw DomainError("grassmann_functional: need 1 <= i <= n");
  }
  auto checked = [&G](const Frame& frame) {
    const double g = G(frame);
    if (!(g > 0.0) || !std::isfinite(g)) {
      std::ostringstream msg;
      msg << "grassmann_functional: inner value " << g << " on frame with first basis vector ["
          << frame.basis().col(0).transpose() << "]";
      throw DegenerateError(msg.str());
    }
    return g;
  };
  if (i == n) {
    return {std::pow(checked(Frame::coordinate(n, n)), exponent), 0.0, spec};
  }
  auto factory = [&]() -> SampleFn {
    return [&checked, i, exponent, sampler = geometry::HaarSampler(n)](
               geometry::Rng& rng, std::span<double> out) mutable {
      out[0] = std::pow(checked(sampler.next_frame(rng, i)), exponent);
    };
  };
  const auto stats = run_monte_carlo(static_cast<std::size_t>(spec.grassmann_samples),
                                     stream_seed(spec, kFrameStream), 1, factory);
  return {stats.mean(0), stats.std_error(0), spec};
}

SampleStatistics grassmann_joint(int n, int columns, std::size_t outputs,
                                 const QuadratureSpec& spec, const JointFrameFn& fn) {
  spec.validate();
  if (columns < 1 || columns > n) {
    throw DomainError("grassmann_joint: need 1 <= columns <= n");
  }
  auto factory = [&]() -> SampleFn {
    return [&fn, columns, sampler = geometry::HaarSampler(n)](geometry::Rng& rng,
                                                               std::span<double> out) mutable {
      fn(sampler.next_frame(rng, columns), out);
    };
  };
  return run_monte_carlo(static_cast<std::size_t>(spec.grassmann_samples),
                         stream_seed(spec, kFrameStream), outputs, factory);
}

}  // namespace projave::quadrature
