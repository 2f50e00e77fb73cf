#include "projave/geometry/haar.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "projave/errors.hpp"

namespace projave::geometry {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr double kOrthoTol = 1e-12;

void require_orthonormal_columns(const Matrix& m, const char* what) {
  const Matrix gram = m.transpose() * m;
  const Matrix defect = gram - Matrix::Identity(m.cols(), m.cols());
  if (defect.cwiseAbs().maxCoeff() > kOrthoTol) {
    throw DomainError(std::string(what) + ": columns are not orthonormal (max defect " +
                      std::to_string(defect.cwiseAbs().maxCoeff()) + ")");
  }
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) {
  return splitmix64(parent ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

Rotation::Rotation(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() < 1) {
    throw DomainError("Rotation: matrix must be square");
  }
  require_orthonormal_columns(entries_, "Rotation");
  const double det = entries_.determinant();
  if (std::abs(det - 1.0) > kOrthoTol) {
    throw DomainError("Rotation: determinant " + std::to_string(det) + " is not +1");
  }
}

Rotation Rotation::identity(int n) { return Rotation(Matrix::Identity(n, n)); }

Frame::Frame(Matrix basis) : basis_(std::move(basis)) {
  if (basis_.cols() < 1 || basis_.cols() > basis_.rows()) {
    throw DomainError("Frame: need 1 <= i <= n basis vectors");
  }
  require_orthonormal_columns(basis_, "Frame");
}

Frame Frame::coordinate(int n, int i) {
  if (i < 1 || i > n) {
    throw DomainError("Frame::coordinate: need 1 <= i <= n");
  }
  return Frame(Matrix::Identity(n, i), Unchecked{});
}

Frame Frame::prefix(int k) const {
  if (k < 1 || k > dim_sub()) {
    throw DomainError("Frame::prefix: need 1 <= k <= i");
  }
  return Frame(basis_.leftCols(k), Unchecked{});
}

double project_length(const Vector& x, const Frame& frame) { return frame.project_length(x); }

HaarSampler::HaarSampler(int n)
    : n_(n), gauss_(std::max(n, 1), std::max(n, 1)), scratch_(Matrix(), Frame::Unchecked{}) {
  if (n < 1) {
    throw DomainError("HaarSampler: dimension must be >= 1");
  }
}

void HaarSampler::draw_columns(Rng& rng, int columns, Matrix& out) {
  for (int c = 0; c < n_; ++c) {
    for (int r = 0; r < n_; ++r) {
      gauss_(r, c) = normal_(rng);
    }
  }
  out.resize(n_, columns);
  for (int c = 0; c < columns; ++c) {
    auto v = out.col(c);
    v = gauss_.col(c);
    // Two passes of MGS keep the columns orthonormal to ~1e-15.
    for (int pass = 0; pass < 2; ++pass) {
      for (int k = 0; k < c; ++k) {
        v -= out.col(k).dot(v) * out.col(k);
      }
    }
    v /= v.norm();
  }
}

Rotation HaarSampler::rotation(Rng& rng) {
  Matrix q;
  draw_columns(rng, n_, q);
  if (q.determinant() < 0.0) {
    q.col(n_ - 1) *= -1.0;
  }
  return Rotation(std::move(q));
}

Frame HaarSampler::frame(Rng& rng, int i) {
  if (i < 1 || i > n_) {
    throw DomainError("sample_frame: need 1 <= i <= n, got i = " + std::to_string(i));
  }
  Matrix q;
  draw_columns(rng, i, q);
  return Frame(std::move(q), Frame::Unchecked{});
}

const Frame& HaarSampler::next_frame(Rng& rng, int i) {
  if (i < 1 || i > n_) {
    throw DomainError("sample_frame: need 1 <= i <= n, got i = " + std::to_string(i));
  }
  draw_columns(rng, i, scratch_.basis_);
  return scratch_;
}

Rotation sample_rotation(Rng& rng, int n) { return HaarSampler(n).rotation(rng); }

Frame sample_frame(Rng& rng, int n, int i) { return HaarSampler(n).frame(rng, i); }

Vector sample_unit_vector(Rng& rng, int n) {
  std::normal_distribution<double> normal;
  Vector v(n);
  double norm = 0.0;
  do {
    for (int k = 0; k < n; ++k) {
      v[k] = normal(rng);
    }
    norm = v.norm();
  } while (norm == 0.0);
  return v / norm;
}

}  // namespace projave::geometry
