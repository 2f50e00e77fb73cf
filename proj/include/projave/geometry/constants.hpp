#pragma once

// Closed-form constants attached to the projection-averaged Sobolev
// functionals. All Gamma evaluations go through std::lgamma so that the
// constants stay finite for dimensions up to ~50.

namespace projave::geometry {

/// Volume of the unit ball in R^s, extended to real s >= 0:
/// omega_s = pi^{s/2} / Gamma(1 + s/2).
double unit_ball_volume(double s);

/// q_{i,p} = 2 omega_{i+p-2} / (i omega_i omega_{p-1}).
///
/// This is the normalisation that makes q_{i,p} ||x|E||^p equal to the
/// average of |x . u|^p over the unit sphere of an i-dimensional subspace
/// E. In particular q_{1,p} = 1 for every p.
double q_coefficient(int i, double p);

/// Best constant c_{n,p} of the projection-averaged Sobolev inequality
/// E_{i,p}(f) >= c_{n,p} ||f||_{p*}, valid for 1 <= p < n. The factor
/// ((n-p)/(p-1))^{1-1/p} is taken as its limit 1 at p = 1.
double sharp_constant(int n, double p);

/// Best constant a_{n,p} of the classical inequality
/// ||grad f||_p >= a_{n,p} ||f||_{p*}, recovered as c_{n,p} q_{n,p}^{-1/p}.
double classical_constant(int n, double p);

/// E ||u|E_i||^p for u uniform on S^{n-1}:
/// Gamma((i+p)/2) Gamma(n/2) / (Gamma(i/2) Gamma((n+p)/2)).
double projected_moment(int n, int i, double p);

/// Critical Sobolev exponent p* = np/(n-p).
double sobolev_exponent(int n, double p);

}  // namespace projave::geometry
