#include "projave/sobolev/functionals.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <sstream>

#include "projave/convex/projection.hpp"
#include "projave/errors.hpp"
#include "projave/geometry/constants.hpp"
#include "projave/quadrature/monte_carlo.hpp"

namespace projave::sobolev {

namespace {

constexpr std::uint64_t kAngularStream = 6;

using geometry::projected_moment;
using geometry::q_coefficient;
using geometry::unit_ball_volume;

void require_sobolev_range(int n, double p, const char* what) {
  if (!(p >= 1.0 && p < n)) {
    std::ostringstream msg;
    msg << what << ": need 1 <= p < n, got p = " << p << ", n = " << n;
    throw DomainError(msg.str());
  }
}

void require_index(int n, int i, const char* what) {
  if (i < 1 || i > n) {
    std::ostringstream msg;
    msg << what << ": need 1 <= i <= n, got i = " << i << ", n = " << n;
    throw DomainError(msg.str());
  }
}

double pow_p(double x, double p) { return p == 2.0 ? x * x : (p == 1.0 ? x : std::pow(x, p)); }

double checked_inner(double g, const char* what) {
  if (!(g > 0.0) || !std::isfinite(g)) {
    std::ostringstream msg;
    msg << what << ": inner integral " << g << " is not positive";
    throw DegenerateError(msg.str());
  }
  return g;
}

// Outer power of a Grassmannian mean M of G^{-n/p}: E = M^{-1/n}, with the
// delta-method standard error.
Estimate outer_power(const Estimate& mean, int n, const QuadratureSpec& spec) {
  const double e = std::pow(mean.value, -1.0 / n);
  return {e, e * mean.std_error / (n * mean.value), spec};
}

Estimate with_relative_error(Estimate e, double rel) {
  e.std_error = quadrature::combined_error(e.std_error, std::abs(e.value) * rel);
  return e;
}

// int |grad f|^p (with its dependence on subspaces) for the gradient
// profiles, after the radial reduction.
class EnergyModel {
 public:
  EnergyModel(const Profile& f, double p, const QuadratureSpec& spec)
      : n_(dim(f)), p_(p), angular_(dim(f), p, spec) {
    validate(f);
    if (std::holds_alternative<CharOfBody>(f)) {
      throw DomainError(
          "indicator profiles have no L^p gradient; evaluate them with the BV functionals");
    }
    require_sobolev_range(n_, p, "gradient functional");
    const auto form = *radial_form(f);
    const auto radial = quadrature::integrate_radial(
        [&form, p](double r) { return pow_p(std::abs(form.derivative(r)), p); }, n_, spec,
        form.breakpoints);
    if (!(radial.value > 0.0)) {
      throw DegenerateError("gradient functional: profile has zero gradient");
    }
    rel_delta_ = radial.std_error / radial.value;
    if (rel_delta_ > spec.target_rel_error) {
      std::ostringstream msg;
      msg << "radial gradient integral refinement delta " << rel_delta_
          << " (relative) exceeds target " << spec.target_rel_error
          << "; increase radial_nodes";
      throw IntegrationError(msg.str());
    }
    full_ = std::pow(std::abs(form.amplitude), p) * radial.value * n_ * unit_ball_volume(n_);
    if (const auto* g = std::get_if<AffineExtremizer>(&f)) {
      affine_ = true;
      full_ /= std::abs(g->shape.determinant());
      shape_ = g->shape;
      shape_t_ = g->shape.transpose();
    }
  }

  int n() const { return n_; }
  bool radial() const { return !affine_; }
  double rel_delta() const { return rel_delta_; }

  // int ||grad f | E||^p for E spanned by the first `cols` basis columns.
  double frame_energy(const Matrix& basis, int cols) const {
    if (!affine_) {
      return full_ * projected_moment(n_, cols, p_);
    }
    return full_ * angular_(basis.leftCols(cols).transpose() * shape_t_).value;
  }

  // Relative sampling error of the angular factor, 0 when it is exact.
  double angular_rel_error(int cols) const {
    if (!affine_ || angular_.exact_for(cols)) {
      return 0.0;
    }
    const auto e = angular_(Matrix::Identity(cols, n_) * shape_t_);
    return e.std_error / e.value;
  }

  // int |grad f . v|^p dx.
  double direction_energy(const Vector& v) const {
    const double len = affine_ ? (shape_ * v).norm() : v.norm();
    return full_ * q_coefficient(n_, p_) * pow_p(len, p_);
  }

 private:
  int n_;
  double p_;
  bool affine_ = false;
  double full_ = 0.0;
  double rel_delta_ = 0.0;
  Matrix shape_;
  Matrix shape_t_;
  AngularAverage angular_;
};

void require_subspace_measure(const DiscreteSphereMeasure& mu, int n, int i, const char* what) {
  require_index(n, i, what);
  if (mu.dim() != i) {
    throw DomainError(std::string(what) + ": mu must live on S^{i-1}");
  }
  if (!mu.even()) {
    throw DomainError(std::string(what) + ": mu must be even");
  }
  if (mu.span_dimension() != i) {
    throw DomainError(std::string(what) + ": mu must span R^i");
  }
}

// Atom directions of mu as the columns of an i x K matrix.
std::pair<Matrix, Vector> atom_matrix(const DiscreteSphereMeasure& mu) {
  Matrix u(mu.dim(), static_cast<Eigen::Index>(mu.size()));
  Vector w(static_cast<Eigen::Index>(mu.size()));
  for (std::size_t k = 0; k < mu.size(); ++k) {
    u.col(static_cast<Eigen::Index>(k)) = mu.atoms()[k].direction;
    w[static_cast<Eigen::Index>(k)] = mu.atoms()[k].weight;
  }
  return {std::move(u), std::move(w)};
}

}  // namespace

AngularAverage::AngularAverage(int n, double p, const QuadratureSpec& spec)
    : n_(n), p_(p), spec_(spec) {
  if (p_ != 2.0) {
    // Only matrices with several rows need the sample set; it is cheap to
    // build relative to any evaluation that uses it.
    geometry::Rng rng(geometry::derive_seed(spec.seed, kAngularStream));
    directions_.resize(n, spec.sphere_samples);
    for (long k = 0; k < spec.sphere_samples; ++k) {
      directions_.col(k) = geometry::sample_unit_vector(rng, n);
    }
  }
}

Estimate AngularAverage::operator()(const Matrix& m) const {
  if (m.cols() != n_) {
    throw DomainError("AngularAverage: matrix has the wrong number of columns");
  }
  if (m.rows() == 1) {
    return {q_coefficient(n_, p_) * pow_p(m.norm(), p_), 0.0, spec_};
  }
  if (p_ == 2.0) {
    return {m.squaredNorm() / n_, 0.0, spec_};
  }
  const Matrix image = m * directions_;
  const Eigen::ArrayXd values =
      image.colwise().norm().transpose().array().pow(p_);
  const double mean = values.mean();
  const double count = static_cast<double>(values.size());
  const double var =
      count > 1 ? (values - mean).square().sum() / (count - 1.0) : 0.0;
  return {mean, std::sqrt(var / count), spec_};
}

Estimate lpstar_norm(const Profile& f, double p, const QuadratureSpec& spec, NormRoute route) {
  validate(f);
  const int n = dim(f);
  require_sobolev_range(n, p, "lpstar_norm");
  const double q = geometry::sobolev_exponent(n, p);
  if (route == NormRoute::automatic) {
    if (const auto closed = closed_form_power_integral(f, q)) {
      return {std::pow(*closed, 1.0 / q), 0.0, spec};
    }
  }
  const auto form = radial_form(f);
  if (!form) {
    throw ConfigError("lpstar_norm: no radial reduction available for this profile");
  }
  const auto radial = quadrature::integrate_radial(
      [&form, q](double r) { return std::pow(std::abs(form->shape(r)), q); }, n, spec,
      form->breakpoints);
  double integral = std::pow(std::abs(form->amplitude), q) * radial.value * n * unit_ball_volume(n);
  if (const auto* g = std::get_if<AffineExtremizer>(&f)) {
    integral /= std::abs(g->shape.determinant());
  }
  if (!std::isfinite(integral) || !(integral > 0.0)) {
    throw IntegrationError("lpstar_norm: integral of |f|^{p*} is not finite and positive");
  }
  const double norm = std::pow(integral, 1.0 / q);
  return {norm, norm * radial.std_error / (q * radial.value), spec};
}

Estimate directional_energy(const Profile& f, const Frame& frame, double p,
                            const QuadratureSpec& spec) {
  const EnergyModel model(f, p, spec);
  if (frame.dim_ambient() != model.n()) {
    throw DomainError("directional_energy: frame dimension does not match the profile");
  }
  if (model.radial()) {
    const double v = model.frame_energy(frame.basis(), frame.dim_sub());
    return {v, v * model.rel_delta(), spec};
  }
  const auto& g = std::get<AffineExtremizer>(f);
  quadrature::RnStructure structure;
  structure.tail_exponent = gradient_tail_exponent(f, p);
  const double pp = g.p / (g.p - 1.0);
  structure.scale = std::pow(g.a, 1.0 / pp) / std::pow(std::abs(g.shape.determinant()), 1.0 / model.n());
  const Vector x0 = g.x0.size() == 0 ? Vector(Vector::Zero(model.n())) : g.x0;
  const Matrix basis_t = frame.basis().transpose();
  return quadrature::integrate_rn(
      [&](const Vector& x) { return pow_p((basis_t * gradient(f, x + x0)).norm(), p); },
      model.n(), spec, structure);
}

Estimate E_ip(const Profile& f, int i, double p, const QuadratureSpec& spec) {
  const EnergyModel model(f, p, spec);
  const int n = model.n();
  require_index(n, i, "E_ip");
  const double qi = q_coefficient(i, p);
  if (model.radial()) {
    const double g = checked_inner(qi * model.frame_energy(Matrix::Identity(n, n), i), "E_ip");
    const double e = std::pow(g, 1.0 / p);
    return {e, e * model.rel_delta() / p, spec};
  }
  const auto mean = quadrature::grassmann_functional(
      [&](const Frame& frame) { return qi * model.frame_energy(frame.basis(), i); }, n, i, -n / p,
      spec);
  return with_relative_error(outer_power(mean, n, spec),
                             quadrature::combined_error(model.rel_delta(), model.angular_rel_error(i)) / p);
}

Estimate E_ip_zonoid(const Profile& f, int i, double p, const DiscreteSphereMeasure& mu,
                     const QuadratureSpec& spec) {
  const EnergyModel model(f, p, spec);
  const int n = model.n();
  require_subspace_measure(mu, n, i, "E_ip_zonoid");
  const auto [atoms, weights] = atom_matrix(mu);
  auto inner = [&](const Matrix& basis) {
    const Matrix dirs = basis.leftCols(i) * atoms;
    double g = 0.0;
    for (Eigen::Index k = 0; k < dirs.cols(); ++k) {
      g += weights[k] * model.direction_energy(dirs.col(k));
    }
    return g;
  };
  if (model.radial()) {
    const double g = checked_inner(inner(Matrix::Identity(n, n)), "E_ip_zonoid");
    const double e = std::pow(g, 1.0 / p);
    return {e, e * model.rel_delta() / p, spec};
  }
  const auto mean = quadrature::grassmann_functional(
      [&](const Frame& frame) { return inner(frame.basis()); }, n, i, -n / p, spec);
  return with_relative_error(outer_power(mean, n, spec), model.rel_delta() / p);
}

Estimate E_i_bv(const ConvexBody& body, int i, const QuadratureSpec& spec) {
  spec.validate();
  const int n = convex::dim(body);
  require_index(n, i, "E_i_bv");
  const double qi = q_coefficient(i, 1.0);
  if (const auto* ball = std::get_if<convex::Ball>(&body)) {
    return {2.0 * unit_ball_volume(n - 1) * std::pow(ball->radius, n - 1), 0.0, spec};
  }
  if (const auto* poly = std::get_if<convex::Polytope>(&body)) {
    const auto s = convex::surface_area_measure(*poly);
    const auto mean = quadrature::grassmann_functional(
        [&](const Frame& frame) { return qi * s.projection_moment(frame.basis(), i, 1.0); }, n, i,
        -static_cast<double>(n), spec);
    return outer_power(mean, n, spec);
  }
  if (const auto* ell = std::get_if<convex::Ellipsoid>(&body)) {
    const Matrix inv_t = ell->shape().inverse().transpose();
    const double scale = std::abs(ell->shape().determinant()) * n * unit_ball_volume(n);
    const AngularAverage angular(n, 1.0, spec);
    const auto mean = quadrature::grassmann_functional(
        [&](const Frame& frame) {
          return qi * scale * angular(frame.basis().transpose() * inv_t).value;
        },
        n, i, -static_cast<double>(n), spec);
    double rel = 0.0;
    if (!angular.exact_for(i)) {
      const auto e = angular(Matrix::Identity(i, n) * inv_t);
      rel = e.std_error / e.value;
    }
    return with_relative_error(outer_power(mean, n, spec), rel);
  }
  throw ConfigError("E_i_bv: body has no surface-measure representation");
}

Estimate E_i_bv_zonoid(const ConvexBody& body, int i, const DiscreteSphereMeasure& mu,
                       const QuadratureSpec& spec) {
  spec.validate();
  const int n = convex::dim(body);
  require_subspace_measure(mu, n, i, "E_i_bv_zonoid");
  const auto [atoms, weights] = atom_matrix(mu);
  if (const auto* ball = std::get_if<convex::Ball>(&body)) {
    return {mu.total_mass() * 2.0 * unit_ball_volume(n - 1) * std::pow(ball->radius, n - 1), 0.0,
            spec};
  }
  std::function<double(const Matrix&)> inner;
  std::optional<DiscreteSphereMeasure> s;
  Matrix inv;
  double scale = 0.0;
  if (const auto* poly = std::get_if<convex::Polytope>(&body)) {
    s = convex::surface_area_measure(*poly);
    inner = [&](const Matrix& dirs) {
      double g = 0.0;
      for (Eigen::Index k = 0; k < dirs.cols(); ++k) {
        g += weights[k] * s->cosine_transform(dirs.col(k), 1.0);
      }
      return g;
    };
  } else if (const auto* ell = std::get_if<convex::Ellipsoid>(&body)) {
    inv = ell->shape().inverse();
    scale = std::abs(ell->shape().determinant()) * 2.0 * unit_ball_volume(n - 1);
    inner = [&](const Matrix& dirs) {
      return scale * weights.dot((inv * dirs).colwise().norm().transpose());
    };
  } else {
    throw ConfigError("E_i_bv_zonoid: body has no surface-measure representation");
  }
  const auto mean = quadrature::grassmann_functional(
      [&](const Frame& frame) { return inner(frame.basis().leftCols(i) * atoms); }, n, i,
      -static_cast<double>(n), spec);
  return outer_power(mean, n, spec);
}

Estimate sobolev_ratio(const Profile& f, int i, double p, const QuadratureSpec& spec) {
  const Estimate e = E_ip(f, i, p, spec);
  const Estimate norm = lpstar_norm(f, p, spec);
  const double denom = geometry::sharp_constant(dim(f), p) * norm.value;
  const double ratio = e.value / denom;
  return {ratio,
          ratio * quadrature::combined_error(e.std_error / e.value, norm.std_error / norm.value),
          spec};
}

FunctionalReport chain_report(const Profile& f, double p, const QuadratureSpec& spec) {
  const EnergyModel model(f, p, spec);
  const int n = model.n();
  FunctionalReport report;
  report.n = n;
  report.p = p;
  report.spec = spec;
  report.values.resize(n);
  report.gap_std_error.assign(n, std::vector<double>(n, 0.0));

  const double power = -n / p;
  std::vector<double> outer_slope(n, 0.0);  // dE_i / dM_i
  const double qn = q_coefficient(n, p);
  const double full = qn * model.frame_energy(Matrix::Identity(n, n), n);
  const double en = std::pow(checked_inner(full, "chain_report"), 1.0 / p);
  report.values[n - 1] = {en, en * model.rel_delta() / p, spec};

  if (model.radial()) {
    for (int i = 1; i < n; ++i) {
      const double g = q_coefficient(i, p) * model.frame_energy(Matrix::Identity(n, n), i);
      const double e = std::pow(checked_inner(g, "chain_report"), 1.0 / p);
      report.values[i - 1] = {e, e * model.rel_delta() / p, spec};
    }
  } else if (n > 1) {
    const auto stats = quadrature::grassmann_joint(
        n, n - 1, static_cast<std::size_t>(n - 1), spec,
        [&](const Frame& frame, std::span<double> out) {
          for (int i = 1; i < n; ++i) {
            const double g = q_coefficient(i, p) * model.frame_energy(frame.basis(), i);
            out[i - 1] = std::pow(checked_inner(g, "chain_report"), power);
          }
        });
    for (int i = 1; i < n; ++i) {
      const Estimate m{stats.mean(i - 1), stats.std_error(i - 1), spec};
      report.values[i - 1] = with_relative_error(
          outer_power(m, n, spec),
          quadrature::combined_error(model.rel_delta(), model.angular_rel_error(i)) / p);
      outer_slope[i - 1] = -report.values[i - 1].value / (n * m.value);
    }
    for (int j = 2; j <= n; ++j) {
      for (int i = 1; i < j; ++i) {
        std::vector<double> w(static_cast<std::size_t>(n - 1), 0.0);
        if (j < n) {
          w[j - 1] = outer_slope[j - 1];
        }
        w[i - 1] -= outer_slope[i - 1];
        report.gap_std_error[j - 1][i - 1] = stats.std_error_of(w);
      }
    }
  }

  const Estimate norm = lpstar_norm(f, p, spec);
  const double denom = geometry::sharp_constant(n, p) * norm.value;
  std::ostringstream diag;
  for (int i = 1; i <= n; ++i) {
    const auto& e = report.values[i - 1];
    const double r = e.value / denom;
    report.ratios.push_back(
        {r, r * quadrature::combined_error(e.std_error / e.value, norm.std_error / norm.value),
         spec});
  }
  for (int j = 2; j <= n; ++j) {
    for (int i = 1; i < j; ++i) {
      const double gap = report.values[j - 1].value - report.values[i - 1].value;
      const double tol =
          3.0 * report.gap_std_error[j - 1][i - 1] + 1e-12 * std::abs(report.values[j - 1].value);
      if (gap < -tol) {
        report.monotone = false;
        diag << "E_" << j << " - E_" << i << " = " << gap << " below -" << tol << "; ";
      }
    }
  }
  report.diagnostics = diag.str();
  return report;
}

}  // namespace projave::sobolev
