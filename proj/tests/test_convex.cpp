#include <cmath>
#include <numbers>

#include "doctest.h"
#include "projave/convex/builders.hpp"
#include "projave/convex/projection.hpp"
#include "projave/errors.hpp"
#include "projave/geometry/constants.hpp"

using namespace projave;
using namespace projave::convex;
using std::numbers::pi;

namespace {

QuadratureSpec spec_with(std::uint64_t seed, long sphere = 200000, long grassmann = 20000) {
  QuadratureSpec s;
  s.sphere_samples = sphere;
  s.grassmann_samples = grassmann;
  s.seed = seed;
  return s;
}

double surface_area(const Polytope& p) {
  double a = 0.0;
  for (const auto& f : p.facets()) {
    a += f.area;
  }
  return a;
}

Matrix skew_shape() {
  Matrix a(3, 3);
  a << 2.0, 0.3, 0.0, 0.0, 1.0, -0.4, 0.5, 0.0, 0.7;
  return a;
}

}  // namespace

TEST_CASE("volumes and surface areas of standard polytopes") {
  CHECK(volume(cube(3)) == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(surface_area(cube(3)) == doctest::Approx(24.0).epsilon(1e-14));
  CHECK(volume(cube(4, 0.5)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(volume(regular_simplex(3)) == doctest::Approx(8.0 * std::sqrt(3.0) / 27.0).epsilon(1e-13));
  CHECK(volume(regular_simplex(2)) == doctest::Approx(3.0 * std::sqrt(3.0) / 4.0).epsilon(1e-13));
  CHECK(volume(cross_polytope(3)) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(volume(cross_polytope(4)) == doctest::Approx(16.0 / 24.0).epsilon(1e-13));
}

TEST_CASE("zonotope volume is 2^n times the sum of |det| over generator triples") {
  std::vector<Vector> g;
  for (auto v : {Eigen::Vector3d(1, 0, 0.2), Eigen::Vector3d(0.3, 1, 0), Eigen::Vector3d(0, 0.4, 1),
                 Eigen::Vector3d(1, 1, 1)}) {
    g.push_back(v);
  }
  double expected = 0.0;
  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 4; ++b) {
      for (int c = b + 1; c < 4; ++c) {
        Matrix m(3, 3);
        m << g[a], g[b], g[c];
        expected += 8.0 * std::abs(m.determinant());
      }
    }
  }
  const auto z = zonotope(g);
  CHECK(volume(z) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(z.facets().size() == 12);
  CHECK(volume(zonotope({Vector::Unit(3, 0), Vector::Unit(3, 1), Vector::Unit(3, 2)})) ==
        doctest::Approx(8.0));
}

TEST_CASE("geodesic sphere approximates the unit ball") {
  const auto s = geodesic_sphere(8);
  CHECK(s.facets().size() == 1280);
  CHECK(volume(s) < 4.0 * pi / 3.0);
  CHECK(volume(s) == doctest::Approx(4.0 * pi / 3.0).epsilon(0.01));
  CHECK(surface_area(s) == doctest::Approx(4.0 * pi).epsilon(0.01));
  CHECK(surface_area_measure(s).even());
}

TEST_CASE("linear images scale volume by |det A|") {
  const Matrix a = skew_shape();
  CHECK(volume(cube(3).linear_image(a)) == doctest::Approx(8.0 * std::abs(a.determinant())).epsilon(1e-12));
  CHECK(volume(regular_simplex(3).scaled(2.0)) ==
        doctest::Approx(8.0 * volume(regular_simplex(3))).epsilon(1e-12));
  Ellipsoid e(a);
  CHECK(e.volume() == doctest::Approx(4.0 * pi / 3.0 * std::abs(a.determinant())));
  CHECK(support(linear_image(ConvexBody{Ball{3, 1.0}}, a), Vector::Unit(3, 0)) ==
        doctest::Approx(a.row(0).norm()));
}

TEST_CASE("support functions") {
  Vector x(3);
  x << 0.5, -2.0, 1.0;
  CHECK(cube(3).support(x) == doctest::Approx(x.lpNorm<1>()));
  CHECK(cross_polytope(3).support(x) == doctest::Approx(x.lpNorm<Eigen::Infinity>()));
}

TEST_CASE("projection body of the cube") {
  // Classical Pi P(u) = |P|u^perp|; the normalisation divides by omega_{n-1}.
  const auto pb = lp_projection_body(cube(3), 1.0);
  CHECK(pb.support(Vector::Unit(3, 0)) == doctest::Approx(4.0 / pi).epsilon(1e-13));
  Vector d = Vector::Ones(3).normalized();
  CHECK(pb.support(d) == doctest::Approx(4.0 * std::sqrt(3.0) / pi).epsilon(1e-13));
}

TEST_CASE("L^p projection bodies of near-balls and ellipsoids") {
  const auto ball = geodesic_sphere(16);
  for (double p : {1.0, 2.0}) {
    const auto pb = lp_projection_body(ball, p);
    for (int k = 0; k < 3; ++k) {
      CHECK(pb.support(Vector::Unit(3, k)) == doctest::Approx(1.0).epsilon(0.01));
    }
    // Pi_p(A B) = |det A|^{1/p} A^{-T} B, checked against the polytope image.
    const Matrix a = skew_shape();
    const auto ell = ellipsoid_projection_body(Ellipsoid(a), p);
    const auto poly = lp_projection_body(ball.linear_image(a), p);
    Vector x(3);
    x << 0.2, 0.7, -0.4;
    CHECK(poly.support(x) == doctest::Approx(ell.support(x)).epsilon(0.01));
  }
}

TEST_CASE("L^p surface measure needs the origin in the interior") {
  auto shift = [](double t) {
    auto j = polytope_to_json(cube(3));
    for (auto& v : j["vertices"]) {
      v[0] = v[0].get<double>() + t;
    }
    return polytope_from_json(j);
  };
  const auto inside = shift(0.5);
  CHECK(volume(inside) == doctest::Approx(8.0));
  CHECK(lp_surface_area_measure(inside, 2.0).total_mass() ==
        doctest::Approx(4.0 * (1.0 / 1.5 + 1.0 / 0.5) + 16.0));
  CHECK_THROWS_AS(lp_surface_area_measure(shift(1.0), 2.0), DomainError);
  CHECK_THROWS_AS(lp_surface_area_measure(shift(1.0), 1.0), DomainError);
}

TEST_CASE("polar volumes") {
  const auto spec = spec_with(3);
  const auto b = polar_volume([](const Vector& u) { return u.norm(); }, 3, spec);
  CHECK(b.value == doctest::Approx(4.0 * pi / 3.0).epsilon(1e-13));
  // The polar of the cube is the cross-polytope.
  const auto c = polar_volume([](const Vector& u) { return u.lpNorm<1>(); }, 3, spec);
  CHECK(std::abs(c.value - 4.0 / 3.0) < 4.0 * c.std_error);
  CHECK_THROWS_AS(polar_volume([](const Vector& u) { return u[0]; }, 3, spec), DegenerateError);
}

TEST_CASE("Petty products") {
  const auto spec = spec_with(4);
  const auto c = petty_product(cube(3), 1.0, spec);
  CHECK(c.value == doctest::Approx(4.0 * std::pow(pi, 3) / 3.0).epsilon(0.01));
  const double w = geometry::unit_ball_volume(3);
  // Affine invariance: an ellipsoid-like polytope stays near the maximum.
  for (double p : {1.0, 2.0}) {
    const auto e = petty_product(geodesic_sphere(8).linear_image(skew_shape()), p, spec);
    CHECK(e.value == doctest::Approx(std::pow(w, 3.0 / p)).epsilon(0.02));
    CHECK(e.value <= std::pow(w, 3.0 / p) * 1.01);
  }
  geometry::Rng rng(17);
  for (int k = 0; k < 5; ++k) {
    CHECK(petty_product(random_symmetric_polytope(rng, 3), 2.0, spec).value <= std::pow(w, 1.5) * 1.01);
  }
}

TEST_CASE("random bodies and measures") {
  geometry::Rng rng(21);
  for (int k = 0; k < 10; ++k) {
    const auto p = random_symmetric_polytope(rng, 3);
    CHECK(surface_area_measure(p).even());
    CHECK(volume(p) > 0.0);
  }
  const auto mu = random_even_measure(rng, 2, 8, 1.0);
  CHECK(mu.even());
  CHECK(mu.size() == 16);
  CHECK(mu.total_mass() == doctest::Approx(1.0));
  CHECK(mu.span_dimension() == 2);
  CHECK(mu.first_moment().norm() < 1e-14);
}

TEST_CASE("sphere measures") {
  DiscreteSphereMeasure m(2, {{Vector::Unit(2, 0), 2.0}, {Vector::Unit(2, 1), 1.0}});
  CHECK_FALSE(m.even());
  const auto e = m.even_part();
  CHECK(e.even());
  Vector x(2);
  x << 0.6, -0.8;
  CHECK(e.cosine_transform(x, 1.5) == doctest::Approx(m.cosine_transform(x, 1.5)));
  CHECK(m.cosine_transform(x, 1.0) == doctest::Approx(2.0));
  CHECK_THROWS_AS(DiscreteSphereMeasure(2, {{Vector::Ones(2), 1.0}}), DomainError);
  CHECK_THROWS_AS(LpZonoid(1.0, m), DomainError);
}

TEST_CASE("zonoids") {
  const auto d = disc_zonoid(3, 2, 2.0, 2000, 5);
  Vector x(3);
  x << 0.3, 0.4, 2.0;
  // h^2 = q_{2,2} |x|E_2|^2 = |x|E_2|^2 / 2 exactly for a balanced generator
  CHECK(std::pow(d.support(x), 2) == doctest::Approx(0.125).epsilon(0.05));
  const auto d1 = disc_zonoid(3, 1, 1.0, 10, 5);
  CHECK(d1.support(x) == doctest::Approx(0.3));
  CHECK_THROWS_AS(polar_zonoid_norm(d, x), DegenerateError);
  const auto full = disc_zonoid(3, 3, 1.0, 4000, 6);
  CHECK(polar_zonoid_norm(full, x) == doctest::Approx(geometry::q_coefficient(3, 1.0) * x.norm()).epsilon(0.05));
}

TEST_CASE("averaging identity for nested subspaces") {
  const auto spec = spec_with(8, 1000, 200000);
  const auto e = nested_average_residual(Vector::Unit(3, 0), 1, 2, 2.0, spec);
  CHECK(std::abs(e.value) < 4.0 * e.std_error);
  Vector x(4);
  x << 0.1, -0.5, 2.0, 0.7;
  for (double p : {1.0, 1.5, 2.0}) {
    const auto r = nested_average_residual(x, 2, 3, p, spec);
    CHECK(std::abs(r.value) < 4.0 * r.std_error);
  }
  const auto orth = nested_average_residual(Vector::Unit(3, 2), 1, 2, 1.0, spec);
  CHECK(orth.value == 0.0);
  CHECK_THROWS_AS(nested_average_residual(x, 2, 2, 1.0, spec), DomainError);
}

TEST_CASE("Grassmannian chain sides for polytopes") {
  const auto spec = spec_with(9);
  const auto c = polytope_chain_sides(cube(3), 1, 3, 1.0, spec);
  CHECK(c.right.value - c.left.value > 3.0 * c.difference_std_error);
  const auto same = polytope_chain_sides(cube(3), 2, 2, 1.0, spec);
  CHECK(same.left.value == same.right.value);
  CHECK_THROWS_AS(polytope_chain_sides(cube(3), 1, 3, 3.0, spec), DomainError);
}

TEST_CASE("fixture round trip and validation") {
  const auto s = regular_simplex(3);
  const auto back = polytope_from_json(polytope_to_json(s));
  Vector x(3);
  x << 0.3, -0.2, 0.9;
  CHECK(back.support(x) == s.support(x));
  CHECK(volume(back) == volume(s));
  auto j = polytope_to_json(s);
  j["facets"][0]["area"] = -1.0;
  CHECK_THROWS_AS(polytope_from_json(j), ConfigError);
  j = polytope_to_json(s);
  j["facets"].erase(0);
  CHECK_THROWS_AS(polytope_from_json(j), ConfigError);
  CHECK_THROWS_AS(read_polytope("/nonexistent/fixture.json"), ConfigError);
}
