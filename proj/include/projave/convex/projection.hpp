#pragma once

#include <functional>

#include "projave/convex/bodies.hpp"
#include "projave/quadrature/quadrature.hpp"

namespace projave::convex {

using quadrature::Estimate;
using quadrature::QuadratureSpec;

/// Atoms at the facet normals with the facet areas as weights.
DiscreteSphereMeasure surface_area_measure(const Polytope& p);

/// S_p(P, .) = h(P, .)^{1-p} S(P, .). Throws DomainError naming the first
/// facet whose support value is not positive.
DiscreteSphereMeasure lp_surface_area_measure(const Polytope& p, double p_exp);

/// Pi_p P as an L^p zonoid whose generator is
/// omega_{p-1} / (2 omega_{n+p-2}) times the even part of S_p(P, .),
/// normalised so that Pi_p B^n = B^n.
LpZonoid lp_projection_body(const Polytope& p, double p_exp);

/// Pi_p(A B^n) = |det A|^{1/p} A^{-T} B^n.
Ellipsoid ellipsoid_projection_body(const Ellipsoid& e, double p_exp);

/// (1/n) sum_k area_k h(P, u_k).
double volume(const Polytope& p);

using SupportFn = std::function<double(const Vector&)>;

/// Volume of the polar of the body with support function h:
/// omega_n * mean over the sphere of h(u)^{-n}. Throws DegenerateError on
/// a non-positive support value.
Estimate polar_volume(const SupportFn& h, int n, const QuadratureSpec& spec);

/// |Pi_p^o P| |P|^{(n-p)/p}; at most omega_n^{n/p}.
Estimate petty_product(const Polytope& p, double p_exp, const QuadratureSpec& spec);

/// ||x||_{Z^o} = h(Z, x). Throws DegenerateError if the generator does not
/// span R^n.
double polar_zonoid_norm(const LpZonoid& z, const Vector& x);

/// Norm of x | E in the polar of the rotated copy of a subspace zonoid.
/// Z lives in R^i (generator on S^{i-1}) and E is spanned by the frame
/// columns b_1..b_i; the copy is sum_k w_k |x . B u_k|^p, i.e. h(Z, B^T x).
double polar_zonoid_norm(const LpZonoid& z, const Frame& frame, const Vector& x);

/// Discretised D^i_p: the L^p zonoid in R^n whose generator is the uniform
/// probability measure on the unit sphere of E_i = span{e_1..e_i}, so that
/// h^p ~ q_{i,p} ||x|E_i||^p. For i = 1 the generator is exactly
/// {+-e_1, 1/2 each}; otherwise ceil(N/2) seeded antithetic pairs.
LpZonoid disc_zonoid(int n, int i, double p_exp, int atoms, std::uint64_t seed);

/// Relative residual (rhs - lhs) / lhs of
///   q_{j,p} ||x|E_j||^p = q_{i,p} E_{phi in SO(j)} ||x|phi E_i||^p,
/// with E_i c E_j coordinate subspaces and the right side estimated from
/// spec.grassmann_samples Haar frames. Returns 0 exactly when x is
/// orthogonal to E_j.
Estimate nested_average_residual(const Vector& x, int i, int j, double p_exp, const QuadratureSpec& spec);

struct ChainSides {
  Estimate left;                // j side
  Estimate right;               // i side
  double difference_std_error;  // paired SE of right - left
};

/// The two Grassmannian averages
///   E_{E in Gr(n,k)} (q_{k,p} int ||u|E||^p dS_p(P, u))^{-n/p}
/// for k = j (left) and k = i (right), drawn on nested frames of shared
/// rotations. Theory: left <= right for i < j.
ChainSides polytope_chain_sides(const Polytope& p, int i, int j, double p_exp,
                           const QuadratureSpec& spec);

}  // namespace projave::convex
