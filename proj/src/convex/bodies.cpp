#include "projave/convex/bodies.hpp"

#include <cmath>
#include <sstream>

#include "projave/errors.hpp"
#include "projave/geometry/constants.hpp"

namespace projave::convex {

namespace {

void require_invertible(const Matrix& a, const char* what) {
  if (a.rows() != a.cols()) {
    throw DomainError(std::string(what) + ": matrix must be square");
  }
  const double det = a.determinant();
  if (!(std::abs(det) > 1e-300) || !std::isfinite(det)) {
    throw DomainError(std::string(what) + ": matrix is singular");
  }
}

}  // namespace

Polytope::Polytope(std::vector<Vector> vertices, std::vector<Facet> facets)
    : vertices_(std::move(vertices)), facets_(std::move(facets)) {
  if (vertices_.empty() || facets_.empty()) {
    throw ConfigError("Polytope: needs at least one vertex and one facet");
  }
  n_ = static_cast<int>(vertices_.front().size());
  vertex_matrix_.resize(n_, static_cast<Eigen::Index>(vertices_.size()));
  double radius = 0.0;
  for (std::size_t k = 0; k < vertices_.size(); ++k) {
    if (vertices_[k].size() != n_) {
      throw ConfigError("Polytope: vertex " + std::to_string(k) + " has wrong dimension");
    }
    vertex_matrix_.col(static_cast<Eigen::Index>(k)) = vertices_[k];
    radius = std::max(radius, vertices_[k].norm());
  }
  const double tol = 1e-9 * (1.0 + radius);
  Vector closure = Vector::Zero(n_);
  double total_area = 0.0;
  for (std::size_t k = 0; k < facets_.size(); ++k) {
    const auto& f = facets_[k];
    std::ostringstream where;
    where << "Polytope: facet " << k;
    if (f.normal.size() != n_) {
      throw ConfigError(where.str() + " normal has wrong dimension");
    }
    if (std::abs(f.normal.norm() - 1.0) > 1e-9) {
      throw ConfigError(where.str() + " normal is not a unit vector");
    }
    if (!(f.area > 0.0) || !std::isfinite(f.area)) {
      throw ConfigError(where.str() + " has non-positive area");
    }
    if (f.vertex < 0 || f.vertex >= static_cast<int>(vertices_.size())) {
      throw ConfigError(where.str() + " references a missing vertex");
    }
    const double h = support(f.normal);
    const double offset = f.normal.dot(vertices_[f.vertex]);
    if (std::abs(h - offset) > tol) {
      where << ": incident vertex lies " << (h - offset) << " below the supporting hyperplane";
      throw ConfigError(where.str());
    }
    closure += f.area * f.normal;
    total_area += f.area;
  }
  if (closure.norm() > 1e-9 * (1.0 + total_area)) {
    std::ostringstream msg;
    msg << "Polytope: facet areas do not close up (|sum area * normal| = " << closure.norm()
        << ")";
    throw ConfigError(msg.str());
  }
}

double Polytope::support(const Vector& x) const {
  return (vertex_matrix_.transpose() * x).maxCoeff();
}

Polytope Polytope::linear_image(const Matrix& a) const {
  require_invertible(a, "Polytope::linear_image");
  if (a.rows() != n_) {
    throw DomainError("Polytope::linear_image: dimension mismatch");
  }
  const double det = std::abs(a.determinant());
  const Matrix inv_t = a.inverse().transpose();
  std::vector<Vector> vertices;
  vertices.reserve(vertices_.size());
  for (const auto& v : vertices_) {
    vertices.push_back(a * v);
  }
  std::vector<Facet> facets;
  facets.reserve(facets_.size());
  for (const auto& f : facets_) {
    const Vector m = inv_t * f.normal;
    const double len = m.norm();
    facets.push_back({m / len, f.area * det * len, f.vertex});
  }
  return Polytope(std::move(vertices), std::move(facets));
}

Polytope Polytope::scaled(double factor) const {
  if (!(factor > 0.0)) {
    throw DomainError("Polytope::scaled: factor must be positive");
  }
  std::vector<Vector> vertices = vertices_;
  for (auto& v : vertices) {
    v *= factor;
  }
  std::vector<Facet> facets = facets_;
  const double area_factor = std::pow(factor, n_ - 1);
  for (auto& f : facets) {
    f.area *= area_factor;
  }
  return Polytope(std::move(vertices), std::move(facets));
}

Ellipsoid::Ellipsoid(Matrix shape) : shape_(std::move(shape)) {
  require_invertible(shape_, "Ellipsoid");
}

double Ellipsoid::condition_number() const {
  Eigen::JacobiSVD<Matrix> svd(shape_);
  const auto& s = svd.singularValues();
  return s[0] / s[s.size() - 1];
}

double Ellipsoid::volume() const {
  return geometry::unit_ball_volume(dim()) * std::abs(shape_.determinant());
}

LpZonoid::LpZonoid(double p, DiscreteSphereMeasure generator)
    : p_(p), generator_(std::move(generator)) {
  if (!(p_ >= 1.0)) {
    throw DomainError("LpZonoid: p must be >= 1");
  }
  if (!generator_.even()) {
    throw DomainError("LpZonoid: generating measure must be even");
  }
}

double LpZonoid::support(const Vector& x) const {
  const double t = generator_.cosine_transform(x, p_);
  return p_ == 1.0 ? t : std::pow(t, 1.0 / p_);
}

LpZonoid LpZonoid::linear_image(const Matrix& a) const {
  require_invertible(a, "LpZonoid::linear_image");
  std::vector<DiscreteSphereMeasure::Atom> atoms;
  atoms.reserve(generator_.size());
  for (const auto& at : generator_.atoms()) {
    const Vector m = a * at.direction;
    const double len = m.norm();
    atoms.push_back({m / len, at.weight * std::pow(len, p_)});
  }
  return LpZonoid(p_, DiscreteSphereMeasure(dim(), std::move(atoms)));
}

double support(const ConvexBody& body, const Vector& x) {
  return std::visit([&x](const auto& b) { return b.support(x); }, body);
}

int dim(const ConvexBody& body) {
  return std::visit(
      [](const auto& b) -> int {
        if constexpr (std::is_same_v<std::decay_t<decltype(b)>, Ball>) {
          return b.n;
        } else {
          return b.dim();
        }
      },
      body);
}

ConvexBody linear_image(const ConvexBody& body, const Matrix& a) {
  return std::visit(
      [&a](const auto& b) -> ConvexBody {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return Ellipsoid(b.radius * a);
        } else if constexpr (std::is_same_v<T, Ellipsoid>) {
          return Ellipsoid(a * b.shape());
        } else {
          return b.linear_image(a);
        }
      },
      body);
}

}  // namespace projave::convex
