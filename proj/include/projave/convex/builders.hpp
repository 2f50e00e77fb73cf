#pragma once

#include <filesystem>
#include "json.hpp"

#include "projave/convex/bodies.hpp"

namespace projave::convex {

/// [-half_width, half_width]^n.
Polytope cube(int n, double half_width = 1.0);

/// Regular simplex with unit circumradius, centroid at the origin.
Polytope regular_simplex(int n);

/// conv{+-e_1, ..., +-e_n}.
Polytope cross_polytope(int n);

/// Zonotope sum_k [-g_k, g_k]. Facets come in +-pairs, one pair per
/// linearly independent (n-1)-subset of generators, with area
/// 2^{n-1} times the (n-1)-volume spanned by the subset.
Polytope zonotope(const std::vector<Vector>& generators);

/// Zonotope with m equal, well-spread generators on a hemisphere, scaled so
/// that its support function averages 1 over the sphere. Approximates B^n
/// with m(m-1) facets when n = 3.
Polytope ball_zonotope(int n, int generators);

/// Polytope inscribed in B^3: the icosahedron with each face split into
/// frequency^2 triangles whose vertices are pushed out to the unit sphere.
/// Has 20 frequency^2 facets and is origin-symmetric.
Polytope geodesic_sphere(int frequency);

/// Random origin-symmetric polytope: a random zonotope (3-8 generators) or
/// a random linear image of a cube or cross-polytope.
Polytope random_symmetric_polytope(geometry::Rng& rng, int n);

/// Even measure on S^{dim-1} with `pairs` uniformly random +-u pairs and
/// random weights, normalised to the given total mass.
DiscreteSphereMeasure random_even_measure(geometry::Rng& rng, int dim, int pairs,
                                          double mass = 1.0);

/// Fixture format:
/// {"dimension": n,
///  "vertices": [[x1, ..., xn], ...],
///  "facets": [{"normal": [...], "area": a, "vertex": k}, ...]}
nlohmann::json polytope_to_json(const Polytope& p);
Polytope polytope_from_json(const nlohmann::json& j);
Polytope read_polytope(const std::filesystem::path& path);
void write_polytope(const Polytope& p, const std::filesystem::path& path);

}  // namespace projave::convex
