#include "projave/convex/projection.hpp"

#include <cmath>
#include <sstream>

#include "projave/errors.hpp"
#include "projave/geometry/constants.hpp"
#include "projave/quadrature/monte_carlo.hpp"

namespace projave::convex {

namespace {

constexpr std::uint64_t kNestedStream = 5;

void require_p(double p_exp, const char* what) {
  if (!(p_exp >= 1.0) || !std::isfinite(p_exp)) {
    throw DomainError(std::string(what) + ": p must be >= 1");
  }
}

}  // namespace

DiscreteSphereMeasure surface_area_measure(const Polytope& p) {
  std::vector<DiscreteSphereMeasure::Atom> atoms;
  atoms.reserve(p.facets().size());
  for (const auto& f : p.facets()) {
    atoms.push_back({f.normal, f.area});
  }
  return DiscreteSphereMeasure(p.dim(), std::move(atoms));
}

DiscreteSphereMeasure lp_surface_area_measure(const Polytope& p, double p_exp) {
  require_p(p_exp, "lp_surface_area_measure");
  std::vector<DiscreteSphereMeasure::Atom> atoms;
  atoms.reserve(p.facets().size());
  for (std::size_t k = 0; k < p.facets().size(); ++k) {
    const auto& f = p.facets()[k];
    const double h = p.support(f.normal);
    if (!(h > 0.0)) {
      std::ostringstream msg;
      msg << "lp_surface_area_measure: origin is not interior, h(P, u) = " << h << " at facet "
          << k << " (normal [" << f.normal.transpose() << "])";
      throw DomainError(msg.str());
    }
    atoms.push_back({f.normal, p_exp == 1.0 ? f.area : f.area * std::pow(h, 1.0 - p_exp)});
  }
  return DiscreteSphereMeasure(p.dim(), std::move(atoms));
}

LpZonoid lp_projection_body(const Polytope& p, double p_exp) {
  const int n = p.dim();
  const double norm = geometry::unit_ball_volume(p_exp - 1.0) /
                      (2.0 * geometry::unit_ball_volume(n + p_exp - 2.0));
  return LpZonoid(p_exp, lp_surface_area_measure(p, p_exp).even_part().scaled(norm));
}

Ellipsoid ellipsoid_projection_body(const Ellipsoid& e, double p_exp) {
  require_p(p_exp, "ellipsoid_projection_body");
  const Matrix& a = e.shape();
  const double det = std::abs(a.determinant());
  return Ellipsoid(std::pow(det, 1.0 / p_exp) * a.inverse().transpose());
}

double volume(const Polytope& p) {
  double v = 0.0;
  for (std::size_t k = 0; k < p.facets().size(); ++k) {
    const auto& f = p.facets()[k];
    const double h = p.support(f.normal);
    if (!(h > 0.0)) {
      throw DomainError("volume: origin is not interior (facet " + std::to_string(k) + ")");
    }
    v += f.area * h;
  }
  return v / p.dim();
}

Estimate polar_volume(const SupportFn& h, int n, const QuadratureSpec& spec) {
  const double omega = geometry::unit_ball_volume(n);
  const Estimate avg = quadrature::sphere_average(
      [&h, n](const Vector& u) {
        const double value = h(u);
        if (!(value > 0.0) || !std::isfinite(value)) {
          std::ostringstream msg;
          msg << "polar_volume: support value " << value << " at u = [" << u.transpose() << "]";
          throw DegenerateError(msg.str());
        }
        return std::pow(value, -static_cast<double>(n));
      },
      n, spec);
  return {omega * avg.value, omega * avg.std_error, spec};
}

Estimate petty_product(const Polytope& p, double p_exp, const QuadratureSpec& spec) {
  const int n = p.dim();
  if (!(p_exp >= 1.0 && p_exp < n)) {
    throw DomainError("petty_product: need 1 <= p < n");
  }
  const LpZonoid body = lp_projection_body(p, p_exp);
  const Estimate polar = polar_volume([&body](const Vector& u) { return body.support(u); }, n, spec);
  const double factor = std::pow(volume(p), (n - p_exp) / p_exp);
  return {polar.value * factor, polar.std_error * factor, spec};
}

double polar_zonoid_norm(const LpZonoid& z, const Vector& x) {
  if (z.generator().span_dimension() < z.dim()) {
    throw DegenerateError("polar_zonoid_norm: generator does not span the ambient space");
  }
  return z.support(x);
}

double polar_zonoid_norm(const LpZonoid& z, const Frame& frame, const Vector& x) {
  if (z.dim() != frame.dim_sub()) {
    throw DomainError("polar_zonoid_norm: zonoid dimension must match the frame dimension");
  }
  return polar_zonoid_norm(z, Vector(frame.basis().transpose() * x));
}

LpZonoid disc_zonoid(int n, int i, double p_exp, int atoms, std::uint64_t seed) {
  require_p(p_exp, "disc_zonoid");
  if (i < 1 || i > n) {
    throw DomainError("disc_zonoid: need 1 <= i <= n");
  }
  std::vector<DiscreteSphereMeasure::Atom> half;
  if (i == 1) {
    half.push_back({Vector::Unit(n, 0), 0.5});
  } else {
    if (atoms < 2) {
      throw DomainError("disc_zonoid: need at least 2 atoms");
    }
    const int pairs = (atoms + 1) / 2;
    geometry::Rng rng(seed);
    for (int k = 0; k < pairs; ++k) {
      Vector u = Vector::Zero(n);
      u.head(i) = geometry::sample_unit_vector(rng, i);
      half.push_back({u, 0.5 / pairs});
    }
  }
  return LpZonoid(p_exp, DiscreteSphereMeasure::antithetic(n, half));
}

Estimate nested_average_residual(const Vector& x, int i, int j, double p_exp, const QuadratureSpec& spec) {
  spec.validate();
  require_p(p_exp, "nested_average_residual");
  const int n = static_cast<int>(x.size());
  if (!(1 <= i && i < j && j <= n)) {
    throw DomainError("nested_average_residual: need 1 <= i < j <= n");
  }
  if (x.norm() == 0.0) {
    throw DomainError("nested_average_residual: x must be non-zero");
  }
  const Vector xj = x.head(j);
  const double len = xj.norm();
  if (len <= 1e-300) {
    return {0.0, 0.0, spec};
  }
  const double lhs = geometry::q_coefficient(j, p_exp) * std::pow(len, p_exp);
  auto factory = [&]() -> quadrature::SampleFn {
    return [&xj, i, p_exp, sampler = geometry::HaarSampler(j)](geometry::Rng& rng,
                                                                std::span<double> out) mutable {
      const double r = sampler.next_frame(rng, i).project_length(xj);
      out[0] = p_exp == 2.0 ? r * r : std::pow(r, p_exp);
    };
  };
  const auto stats =
      quadrature::run_monte_carlo(static_cast<std::size_t>(spec.grassmann_samples),
                                  geometry::derive_seed(spec.seed, kNestedStream), 1, factory);
  const double qi = geometry::q_coefficient(i, p_exp);
  return {(qi * stats.mean(0) - lhs) / lhs, qi * stats.std_error(0) / lhs, spec};
}

ChainSides polytope_chain_sides(const Polytope& p, int i, int j, double p_exp,
                           const QuadratureSpec& spec) {
  const int n = p.dim();
  if (!(1 <= i && i <= j && j <= n)) {
    throw DomainError("polytope_chain_sides: need 1 <= i <= j <= n");
  }
  if (!(p_exp >= 1.0 && p_exp < n)) {
    throw DomainError("polytope_chain_sides: need 1 <= p < n");
  }
  const DiscreteSphereMeasure sp = lp_surface_area_measure(p, p_exp).even_part();
  const double qi = geometry::q_coefficient(i, p_exp);
  const double qj = geometry::q_coefficient(j, p_exp);
  const double power = -n / p_exp;
  auto side = [&](const Matrix& basis, int cols, double q) {
    const double g = q * sp.projection_moment(basis, cols, p_exp);
    if (!(g > 0.0)) {
      throw DegenerateError("polytope_chain_sides: inner integral vanished on a sampled subspace");
    }
    return std::pow(g, power);
  };
  const auto stats = quadrature::grassmann_joint(
      n, j, 2, spec, [&](const Frame& frame, std::span<double> out) {
        out[0] = side(frame.basis(), j, qj);
        out[1] = side(frame.basis(), i, qi);
      });
  const double w[2] = {-1.0, 1.0};
  return {{stats.mean(0), stats.std_error(0), spec},
          {stats.mean(1), stats.std_error(1), spec},
          stats.std_error_of(w)};
}

}  // namespace projave::convex
