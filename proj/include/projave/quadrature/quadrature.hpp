#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "projave/geometry/haar.hpp"
#include "projave/quadrature/monte_carlo.hpp"

// Callbacks passed to the Monte Carlo routines below may be invoked from
// several worker threads and must be pure.

namespace projave::quadrature {

using geometry::Frame;
using geometry::Vector;

struct QuadratureSpec {
  int radial_nodes = 128;           // Gauss-Legendre nodes per panel
  long sphere_samples = 100'000;    // antithetic pairs for sphere averages
  long grassmann_samples = 100'000; // Haar frames for Grassmannian averages
  std::uint64_t seed = 0;
  double target_rel_error = 1e-6;

  /// Throws ConfigError unless every count is >= 1 and the target lies in (0, 0.1].
  void validate() const;
};

/// A numerical value with its uncertainty. For Monte Carlo estimates
/// `std_error` is the standard error of the mean; for deterministic rules it
/// holds the refinement delta |I(k) - I(2k)|.
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  QuadratureSpec spec{};
};

/// sqrt(a^2 + b^2) of two standard errors.
double combined_error(double a, double b);

struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// k-point Gauss-Legendre rule on [a, b] (Newton iteration on P_k).
GaussLegendreRule gauss_legendre(int k, double a, double b);

using RadialFn = std::function<double(double)>;

/// Integral of g(r) r^{n-1} over (0, inf) by Gauss-Legendre. On [0, r0]
/// the rule runs in t with r = t / (1 - t), split into panels at the images
/// of `breakpoints` (locations where g is not smooth); r0 is 1 or twice the
/// largest breakpoint. The tail [r0, inf) uses u = log(r / r0) on doubling
/// panels, which handles slowly decaying algebraic tails. The returned value
/// uses 2k nodes per panel and std_error = |I(k) - I(2k)|, k = spec.radial_nodes.
Estimate integrate_radial(const RadialFn& g, int n, const QuadratureSpec& spec,
                          std::span<const double> breakpoints = {});

using SphereFn = std::function<double(const Vector&)>;

/// Mean of h over the uniform distribution on S^{n-1}: spec.sphere_samples
/// antithetic pairs (u, -u), each pair contributing (h(u) + h(-u)) / 2.
Estimate sphere_average(const SphereFn& h, int n, const QuadratureSpec& spec);

using RnFn = std::function<double(const Vector&)>;

/// Declares the structure of an integrand over R^n.
struct RnStructure {
  /// F(x) = radial(|x|) * angular(x / |x|); enables the product rule.
  struct Separable {
    RadialFn radial;
    SphereFn angular;
    std::vector<double> breakpoints;
  };
  std::optional<Separable> separable;
  /// F(x) = O(|x|^{-tail_exponent}) as |x| -> inf; must exceed n.
  std::optional<double> tail_exponent;
  /// Length scale for the importance-sampling proposal.
  double scale = 1.0;
};

/// Integral of F over R^n. Separable integrands use
/// integrate_radial * (n omega_n) * sphere_average; others are importance
/// sampled from a radial Lomax-type proposal with density proportional to
/// (1 + (r/scale)^n)^{-tail/n}.
Estimate integrate_rn(const RnFn& F, int n, const QuadratureSpec& spec,
                      const RnStructure& structure);

using FrameFn = std::function<double(const Frame&)>;

/// Sample mean of G(E)^exponent over Haar-distributed E in Gr(n, i).
///
/// Frames are drawn with HaarSampler from derive_seed(spec.seed, batch), so
/// the frames for different i at the same seed are prefixes of shared
/// rotations. For i = n the single frame span{e_1..e_n} is evaluated.
/// Throws DegenerateError if G(E) <= 0 on a sampled frame.
Estimate grassmann_functional(const FrameFn& G, int n, int i, double exponent,
                              const QuadratureSpec& spec);

using JointFrameFn = std::function<void(const Frame& frame, std::span<double> out)>;

/// Joint samples over spec.grassmann_samples Haar frames of dimension
/// `columns`, drawn from the same stream as grassmann_functional. Callers
/// evaluate nested subspaces on frame.prefix(k), so every output of one
/// sample shares its rotation.
SampleStatistics grassmann_joint(int n, int columns, std::size_t outputs,
                                 const QuadratureSpec& spec, const JointFrameFn& fn);

}  // namespace projave::quadrature
