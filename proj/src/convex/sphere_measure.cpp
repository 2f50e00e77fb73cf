#include "projave/convex/sphere_measure.hpp"

#include <cmath>
#include <map>
#include <string>

#include "projave/errors.hpp"

namespace projave::convex {

namespace {

constexpr double kUnitTol = 1e-12;

// Sign that makes the first non-negligible coordinate positive.
int canonical_sign(const Vector& u) {
  for (Eigen::Index k = 0; k < u.size(); ++k) {
    if (std::abs(u[k]) > 1e-9) {
      return u[k] > 0.0 ? 1 : -1;
    }
  }
  return 1;
}

std::vector<long long> quantize(const Vector& u) {
  std::vector<long long> key(u.size());
  for (Eigen::Index k = 0; k < u.size(); ++k) {
    key[k] = std::llround(u[k] * 1e9);
  }
  return key;
}

}  // namespace

DiscreteSphereMeasure::DiscreteSphereMeasure(int n, std::vector<Atom> atoms)
    : n_(n), atoms_(std::move(atoms)) {
  if (n < 1) {
    throw DomainError("DiscreteSphereMeasure: dimension must be >= 1");
  }
  for (std::size_t k = 0; k < atoms_.size(); ++k) {
    const auto& a = atoms_[k];
    if (a.direction.size() != n) {
      throw DomainError("DiscreteSphereMeasure: atom " + std::to_string(k) +
                        " has wrong dimension");
    }
    if (std::abs(a.direction.norm() - 1.0) > kUnitTol) {
      throw DomainError("DiscreteSphereMeasure: atom " + std::to_string(k) +
                        " is not a unit vector");
    }
    if (!(a.weight > 0.0) || !std::isfinite(a.weight)) {
      throw DomainError("DiscreteSphereMeasure: atom " + std::to_string(k) +
                        " has non-positive weight");
    }
  }

  // Pair detection on quantised canonical directions.
  struct Pair {
    double plus = 0.0;
    double minus = 0.0;
    int rep = -1;
  };
  std::map<std::vector<long long>, Pair> pairs;
  for (std::size_t k = 0; k < atoms_.size(); ++k) {
    const int s = canonical_sign(atoms_[k].direction);
    auto& entry = pairs[quantize(s * atoms_[k].direction)];
    (s > 0 ? entry.plus : entry.minus) += atoms_[k].weight;
    if (entry.rep < 0) {
      entry.rep = static_cast<int>(k);
    }
  }
  even_ = !atoms_.empty();
  for (const auto& [key, entry] : pairs) {
    if (std::abs(entry.plus - entry.minus) > 1e-12 * std::max(entry.plus, entry.minus)) {
      even_ = false;
      break;
    }
  }

  if (even_) {
    eval_directions_.resize(n, static_cast<Eigen::Index>(pairs.size()));
    eval_weights_.resize(static_cast<Eigen::Index>(pairs.size()));
    Eigen::Index c = 0;
    for (const auto& [key, entry] : pairs) {
      eval_directions_.col(c) = atoms_[entry.rep].direction;
      eval_weights_[c] = entry.plus + entry.minus;
      ++c;
    }
  } else {
    eval_directions_.resize(n, static_cast<Eigen::Index>(atoms_.size()));
    eval_weights_.resize(static_cast<Eigen::Index>(atoms_.size()));
    for (std::size_t k = 0; k < atoms_.size(); ++k) {
      eval_directions_.col(static_cast<Eigen::Index>(k)) = atoms_[k].direction;
      eval_weights_[static_cast<Eigen::Index>(k)] = atoms_[k].weight;
    }
  }
}

DiscreteSphereMeasure DiscreteSphereMeasure::antithetic(int n, const std::vector<Atom>& half) {
  std::vector<Atom> atoms;
  atoms.reserve(2 * half.size());
  for (const auto& a : half) {
    atoms.push_back(a);
    atoms.push_back({-a.direction, a.weight});
  }
  return DiscreteSphereMeasure(n, std::move(atoms));
}

double DiscreteSphereMeasure::total_mass() const {
  double m = 0.0;
  for (const auto& a : atoms_) {
    m += a.weight;
  }
  return m;
}

Vector DiscreteSphereMeasure::first_moment() const {
  Vector s = Vector::Zero(n_);
  for (const auto& a : atoms_) {
    s += a.weight * a.direction;
  }
  return s;
}

DiscreteSphereMeasure DiscreteSphereMeasure::scaled(double factor) const {
  if (!(factor > 0.0)) {
    throw DomainError("DiscreteSphereMeasure::scaled: factor must be positive");
  }
  std::vector<Atom> atoms = atoms_;
  for (auto& a : atoms) {
    a.weight *= factor;
  }
  return DiscreteSphereMeasure(n_, std::move(atoms));
}

double DiscreteSphereMeasure::cosine_transform(const Vector& x, double p) const {
  const Vector dots = eval_directions_.transpose() * x;
  if (p == 1.0) {
    return eval_weights_.dot(dots.cwiseAbs());
  }
  if (p == 2.0) {
    return eval_weights_.dot(dots.cwiseAbs2());
  }
  return eval_weights_.dot(dots.cwiseAbs().array().pow(p).matrix());
}

double DiscreteSphereMeasure::projection_moment(const Matrix& basis, int cols, double p) const {
  const Matrix coords = eval_directions_.transpose() * basis.leftCols(cols);
  const Vector sq = coords.rowwise().squaredNorm();
  if (p == 2.0) {
    return eval_weights_.dot(sq);
  }
  if (p == 1.0) {
    return eval_weights_.dot(sq.cwiseSqrt());
  }
  return eval_weights_.dot(sq.array().pow(0.5 * p).matrix());
}

DiscreteSphereMeasure DiscreteSphereMeasure::even_part() const {
  if (even_) {
    return *this;
  }
  std::vector<Atom> half;
  half.reserve(atoms_.size());
  for (const auto& a : atoms_) {
    half.push_back({a.direction, 0.5 * a.weight});
  }
  return antithetic(n_, half);
}

int DiscreteSphereMeasure::span_dimension() const {
  if (atoms_.empty()) {
    return 0;
  }
  Eigen::FullPivLU<Matrix> lu(eval_directions_);
  lu.setThreshold(1e-10);
  return static_cast<int>(lu.rank());
}

bool DiscreteSphereMeasure::supported_in_coordinate_subspace(int i) const {
  for (const auto& a : atoms_) {
    for (int k = i; k < n_; ++k) {
      if (std::abs(a.direction[k]) > kUnitTol) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace projave::convex
