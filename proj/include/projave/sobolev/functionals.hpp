#pragma once

#include <string>
#include <vector>

#include "projave/convex/sphere_measure.hpp"
#include "projave/quadrature/quadrature.hpp"
#include "projave/sobolev/profile.hpp"

namespace projave::sobolev {

using convex::DiscreteSphereMeasure;
using geometry::Frame;
using quadrature::Estimate;
using quadrature::QuadratureSpec;

/// Mean of |M u|^p over u uniform on S^{n-1}, for k x n matrices M.
/// Exact for k = 1 (q_{n,p} |M|^p) and for p = 2 (|M|_F^2 / n); otherwise
/// a sample mean over one fixed set of spec.sphere_samples antithetic
/// directions shared by every call, so that different M are compared on
/// common random numbers.
class AngularAverage {
 public:
  AngularAverage(int n, double p, const QuadratureSpec& spec);

  Estimate operator()(const Matrix& m) const;
  bool exact_for(int rows) const { return rows == 1 || p_ == 2.0; }

 private:
  int n_;
  double p_;
  QuadratureSpec spec_;
  Matrix directions_;  // n x N, filled only when needed
};

enum class NormRoute { automatic, quadrature };

/// ||f||_{p*} with p* = np/(n-p). `automatic` uses a closed form when the
/// profile has one; `quadrature` always integrates the radial reduction.
Estimate lpstar_norm(const Profile& f, double p, const QuadratureSpec& spec,
                     NormRoute route = NormRoute::automatic);

/// int ||grad f(x) | E||^p dx for E spanned by the frame. Radial profiles
/// use the radial integral times the closed-form angular factor
/// n omega_n E||u|E||^p; AffineExtremizer is importance sampled over R^n.
Estimate directional_energy(const Profile& f, const Frame& frame, double p,
                            const QuadratureSpec& spec);

/// E_{i,p}(f) = (E_{E in Gr(n,i)} (q_{i,p} int ||grad f|E||^p dx)^{-n/p})^{-1/n}.
/// Radial profiles have the same inner integral on every subspace and are
/// evaluated without sampling. AffineExtremizer inner integrals reduce to
/// |det A|^{-1} (radial integral) times an angular average of |E^T A^T u|^p.
/// Throws IntegrationError when the radial refinement delta exceeds
/// spec.target_rel_error and DegenerateError on a vanishing inner integral.
Estimate E_ip(const Profile& f, int i, double p, const QuadratureSpec& spec);

/// E^mu_{i,p}(f) with Z = Z^mu_p a zonoid in R^i: the inner norm of
/// grad f | phi E_i is h(phi Z, grad f), so the inner integral is
/// sum_k w_k int |grad f . phi u_k|^p dx. mu lives on S^{i-1} and must be
/// even and span R^i (DomainError otherwise).
Estimate E_ip_zonoid(const Profile& f, int i, double p, const DiscreteSphereMeasure& mu,
                     const QuadratureSpec& spec);

/// E_i(1_K) through the surface measure of K:
/// (E_{E in Gr(n,i)} (q_{i,1} int ||u|E|| dS(K, u))^{-n})^{-1/n}.
/// Balls are exact (2 omega_{n-1} r^{n-1}); ellipsoids A B^n use
/// int phi dS(AK) = |det A| int phi(A^{-T} w) dS(K, w) for 1-homogeneous phi;
/// polytopes sum over facets. Throws ConfigError for other bodies.
Estimate E_i_bv(const ConvexBody& body, int i, const QuadratureSpec& spec);

/// BV analogue of E_ip_zonoid with the p = 1 zonoid of mu.
Estimate E_i_bv_zonoid(const ConvexBody& body, int i, const DiscreteSphereMeasure& mu,
                       const QuadratureSpec& spec);

/// E_{i,p}(f) / (c_{n,p} ||f||_{p*}).
Estimate sobolev_ratio(const Profile& f, int i, double p, const QuadratureSpec& spec);

struct FunctionalReport {
  int n = 0;
  double p = 0.0;
  std::vector<Estimate> values;  // values[i - 1] = E_{i,p}(f)
  std::vector<Estimate> ratios;  // values[i - 1] / (c_{n,p} ||f||_{p*})
  // gap_std_error[j - 1][i - 1]: paired standard error of E_j - E_i.
  std::vector<std::vector<double>> gap_std_error;
  bool monotone = true;  // E_j >= E_i - 3 SE for all i < j
  std::string diagnostics;
  QuadratureSpec spec;
};

/// E_{1,p}, ..., E_{n,p} on nested frames of one rotation stream.
FunctionalReport chain_report(const Profile& f, double p, const QuadratureSpec& spec);

}  // namespace projave::sobolev
