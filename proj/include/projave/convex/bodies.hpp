#pragma once

#include <variant>
#include <vector>

#include "projave/convex/sphere_measure.hpp"

namespace projave::convex {

/// Convex polytope given redundantly by its vertices and its facets
/// (outer unit normal, (n-1)-volume, index of one incident vertex).
/// No hull is computed; the constructor validates the two descriptions
/// against each other.
class Polytope {
 public:
  struct Facet {
    Vector normal;
    double area;
    int vertex;
  };

  /// Throws ConfigError on inconsistent data: non-unit normals, non-positive
  /// areas, an incident vertex off its supporting hyperplane (1e-9), or a
  /// surface measure that does not close up (sum area * normal != 0).
  Polytope(std::vector<Vector> vertices, std::vector<Facet> facets);

  int dim() const { return n_; }
  const std::vector<Vector>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }

  double support(const Vector& x) const;

  /// A P for invertible A: vertices map by A, normals by A^{-T}
  /// (renormalised), areas by |det A| |A^{-T} nu|.
  Polytope linear_image(const Matrix& a) const;
  Polytope scaled(double factor) const;

 private:
  int n_;
  std::vector<Vector> vertices_;
  std::vector<Facet> facets_;
  Matrix vertex_matrix_;  // columns are vertices
};

/// Euclidean ball of given radius centred at the origin.
struct Ball {
  int n;
  double radius = 1.0;

  double support(const Vector& x) const { return radius * x.norm(); }
};

/// The ellipsoid A B^n for invertible A.
class Ellipsoid {
 public:
  explicit Ellipsoid(Matrix shape);

  int dim() const { return static_cast<int>(shape_.rows()); }
  const Matrix& shape() const { return shape_; }
  double support(const Vector& x) const { return (shape_.transpose() * x).norm(); }
  double condition_number() const;
  double volume() const;

 private:
  Matrix shape_;
};

/// L^p zonoid: h(Z, x)^p = sum_k w_k |x . u_k|^p for an even generator.
class LpZonoid {
 public:
  /// Throws DomainError if p < 1 or the generator is not even.
  LpZonoid(double p, DiscreteSphereMeasure generator);

  int dim() const { return generator_.dim(); }
  double p() const { return p_; }
  const DiscreteSphereMeasure& generator() const { return generator_; }

  double support(const Vector& x) const;
  LpZonoid linear_image(const Matrix& a) const;

 private:
  double p_;
  DiscreteSphereMeasure generator_;
};

using ConvexBody = std::variant<Ball, Polytope, Ellipsoid, LpZonoid>;

double support(const ConvexBody& body, const Vector& x);
int dim(const ConvexBody& body);

/// A K for invertible A; balls become ellipsoids.
ConvexBody linear_image(const ConvexBody& body, const Matrix& a);

}  // namespace projave::convex
