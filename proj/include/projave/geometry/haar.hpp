#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

namespace projave::geometry {

using Rng = std::mt19937_64;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Seed for the index-th child stream of a parent seed (splitmix64 mix of
/// both words). Every Monte Carlo batch and worker draws from its own child.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index);

/// Orthogonal n x n matrix with determinant +1.
class Rotation {
 public:
  /// Validates orthogonality and det = +1 to 1e-12.
  explicit Rotation(Matrix entries);

  static Rotation identity(int n);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& matrix() const { return entries_; }
  Vector apply(const Vector& x) const { return entries_ * x; }
  Vector apply_inverse(const Vector& x) const { return entries_.transpose() * x; }

 private:
  Matrix entries_;
};

/// Orthonormal basis (as the columns of an n x i matrix) of an
/// i-dimensional subspace of R^n.
class Frame {
 public:
  /// Validates pairwise orthonormality to 1e-12.
  explicit Frame(Matrix basis);

  /// span{e_1, ..., e_i}.
  static Frame coordinate(int n, int i);

  int dim_ambient() const { return static_cast<int>(basis_.rows()); }
  int dim_sub() const { return static_cast<int>(basis_.cols()); }
  const Matrix& basis() const { return basis_; }

  /// Euclidean length of the orthogonal projection of x onto the subspace.
  double project_length(const Vector& x) const { return (basis_.transpose() * x).norm(); }

  /// First k basis vectors as a frame of the nested subspace.
  Frame prefix(int k) const;

 private:
  struct Unchecked {};
  Frame(Matrix basis, Unchecked) : basis_(std::move(basis)) {}
  friend class HaarSampler;

  Matrix basis_;
};

double project_length(const Vector& x, const Frame& frame);

/// Haar sampler on SO(n) and on the Grassmannians Gr(n, i).
///
/// Each draw consumes n*n standard normals (column-major) and orthonormalises
/// them by twice-iterated modified Gram-Schmidt, which is the QR factorisation
/// with positive diagonal. Column k only depends on the first k Gaussian
/// columns, so the frame of dimension i drawn at a given stream position is
/// bitwise the prefix of the rotation drawn there. For the full rotation the
/// last column is negated when the determinant is -1.
class HaarSampler {
 public:
  explicit HaarSampler(int n);

  int dim() const { return n_; }

  /// Draws a fresh Gaussian block and orthonormalises its first `columns`
  /// columns into `out` (n x columns). Does not fix the determinant.
  void draw_columns(Rng& rng, int columns, Matrix& out);

  Rotation rotation(Rng& rng);
  Frame frame(Rng& rng, int i);

  /// Like frame(), but reuses internal storage; the reference is valid
  /// until the next draw.
  const Frame& next_frame(Rng& rng, int i);

 private:
  int n_;
  Matrix gauss_;
  Frame scratch_;
  std::normal_distribution<double> normal_;
};

Rotation sample_rotation(Rng& rng, int n);
Frame sample_frame(Rng& rng, int n, int i);

/// Uniform point on S^{n-1} (normalised Gaussian vector).
Vector sample_unit_vector(Rng& rng, int n);

}  // namespace projave::geometry
