#pragma once

#include <vector>

#include "projave/geometry/haar.hpp"

namespace projave::convex {

using geometry::Frame;
using geometry::Matrix;
using geometry::Vector;

/// Finite positive measure on S^{n-1} with atoms at unit vectors.
///
/// Evenness (atoms pair up as +-u with equal weights) is detected on
/// construction. Cosine transforms of even measures are evaluated on one
/// representative per pair with doubled weight.
class DiscreteSphereMeasure {
 public:
  struct Atom {
    Vector direction;
    double weight;
  };

  /// Validates |u_k| = 1 to 1e-12 and w_k > 0.
  DiscreteSphereMeasure(int n, std::vector<Atom> atoms);

  /// Builds the even measure with atoms (u, w) and (-u, w) for each entry.
  static DiscreteSphereMeasure antithetic(int n, const std::vector<Atom>& half);

  int dim() const { return n_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool even() const { return even_; }
  double total_mass() const;

  /// sum_k w_k u_k.
  Vector first_moment() const;

  DiscreteSphereMeasure scaled(double factor) const;

  /// sum_k w_k |x . u_k|^p.
  double cosine_transform(const Vector& x, double p) const;

  /// sum_k w_k ||u_k | E||^p for the subspace spanned by the first `cols`
  /// columns of `basis`.
  double projection_moment(const Matrix& basis, int cols, double p) const;

  /// The even measure with the same cosine transforms: each atom (u, w)
  /// becomes (u, w/2), (-u, w/2). Returns *this unchanged if already even.
  DiscreteSphereMeasure even_part() const;

  /// Dimension of the linear span of the atoms.
  int span_dimension() const;

  /// True if every atom lies in span{e_1, ..., e_i} (to 1e-12).
  bool supported_in_coordinate_subspace(int i) const;

 private:
  int n_;
  std::vector<Atom> atoms_;
  bool even_ = false;
  // Directions used for cosine transforms (columns) and their weights; one
  // representative per pair with doubled weight when even.
  Matrix eval_directions_;
  Vector eval_weights_;
};

}  // namespace projave::convex
