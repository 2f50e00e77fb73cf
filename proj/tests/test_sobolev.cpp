#include <cmath>
#include <numbers>

#include "doctest.h"
#include "projave/convex/builders.hpp"
#include "projave/errors.hpp"
#include "projave/geometry/constants.hpp"
#include "projave/sobolev/functionals.hpp"
#include "projave/sobolev/profile.hpp"

using namespace projave;
using namespace projave::sobolev;
using quadrature::combined_error;
using std::numbers::pi;

namespace {

QuadratureSpec spec_with(std::uint64_t seed, long grassmann = 20000) {
  QuadratureSpec s;
  s.sphere_samples = 20000;
  s.grassmann_samples = grassmann;
  s.seed = seed;
  return s;
}

// Composite Simpson in s = log r over [-30, 600/n]; the oracle for the
// radial integrals below, independent of the library's rules.
template <class F>
double simpson_half_line(F g, int n, int panels = 400000) {
  const double lo = -30.0;
  const double hi = 600.0 / n;
  const double h = (hi - lo) / panels;
  auto at = [&](double s) {
    const double r = std::exp(s);
    return g(r) * r;
  };
  double sum = at(lo) + at(hi);
  for (int k = 1; k < panels; ++k) {
    sum += (k % 2 ? 4.0 : 2.0) * at(lo + k * h);
  }
  return sum * h / 3.0;
}

// int |grad f|^p dx for the Aubin-Talenti profile with a = b = 1.
double talenti_energy(int n, double p) {
  const double pc = p / (p - 1.0);
  const double area = n * geometry::unit_ball_volume(n);
  return area * simpson_half_line([&](double r) {
           const double d = (n / p - 1.0) * std::pow(1.0 + std::pow(r, pc), -n / p) * pc *
                            std::pow(r, pc - 1.0);
           return std::pow(d, p) * std::pow(r, n - 1.0);
         }, n);
}

double talenti_lpstar(int n, double p) {
  const double pc = p / (p - 1.0);
  const double area = n * geometry::unit_ball_volume(n);
  const double ps = n * p / (n - p);
  const double integral = area * simpson_half_line([&](double r) {
                            return std::pow(1.0 + std::pow(r, pc), -double(n)) * std::pow(r, n - 1.0);
                          }, n);
  return std::pow(integral, 1.0 / ps);
}

Matrix diag3(double a, double b, double c) { return Vector(Eigen::Vector3d(a, b, c)).asDiagonal(); }

}  // namespace

TEST_CASE("Aubin-Talenti profiles attain the sharp constant for every i") {
  const auto spec = spec_with(1);
  for (int n : {3, 4}) {
    for (double p : {1.5, 2.0, 2.5}) {
      if (p >= n) {
        continue;
      }
      const Profile f = AubinTalenti{n, p, 1.0, 1.0, 1.0, {}};
      for (int i = 1; i <= n; ++i) {
        const auto r = sobolev_ratio(f, i, p, spec);
        CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(r.std_error < 1e-9);
      }
    }
  }
}

TEST_CASE("E_n equals q_{n,p}^{1/p} ||grad f||_p from an independent integration") {
  const auto spec = spec_with(2);
  for (double p : {1.5, 2.0, 2.5}) {
    const Profile f = AubinTalenti{3, p, 1.0, 1.0, 1.0, {}};
    const double expected = std::pow(geometry::q_coefficient(3, p) * talenti_energy(3, p), 1.0 / p);
    CHECK(E_ip(f, 3, p, spec).value == doctest::Approx(expected).epsilon(1e-7));
    CHECK(lpstar_norm(f, p, spec).value == doctest::Approx(talenti_lpstar(3, p)).epsilon(1e-7));
    CHECK(lpstar_norm(f, p, spec, NormRoute::quadrature).value ==
          doctest::Approx(lpstar_norm(f, p, spec).value).epsilon(1e-10));
  }
}

TEST_CASE("Gaussian ratio matches its closed form and is strict") {
  const auto spec = spec_with(3);
  const Profile g = Gaussian{3, 1.0, 1.0, Vector()};
  // int |grad f|^2 = 3 (pi/2)^{3/2}, q_{3,2} = 1/3, ||f||_6 = (pi/6)^{1/4}
  const double e3 = std::pow(pi / 2.0, 0.75);
  const double ratio = e3 / (std::cbrt(pi * pi / 4.0) * std::pow(pi / 6.0, 0.25));
  for (int i = 1; i <= 3; ++i) {
    CHECK(E_ip(g, i, 2.0, spec).value == doctest::Approx(e3).epsilon(1e-10));
    const auto r = sobolev_ratio(g, i, 2.0, spec);
    CHECK(r.value == doctest::Approx(ratio).epsilon(1e-10));
    CHECK(r.value > 1.0 + 3.0 * r.std_error);
  }
}

TEST_CASE("homogeneity and translation invariance") {
  const auto spec = spec_with(4);
  const Profile at = AubinTalenti{3, 2.0, 1.0, 1.0, 1.0, {}};
  const Profile af = AffineExtremizer{3, 2.0, 1.0, diag3(2.0, 1.0, 0.5), 1.0, {}};
  const Vector shift = Vector(Eigen::Vector3d(0.4, -1.0, 2.5));
  for (const auto& f : {at, af}) {
    for (int i = 1; i <= 3; ++i) {
      const double base = E_ip(f, i, 2.0, spec).value;
      for (double lambda : {-2.0, 3.0}) {
        CHECK(E_ip(scaled(f, lambda), i, 2.0, spec).value ==
              doctest::Approx(std::abs(lambda) * base).epsilon(1e-12));
      }
      CHECK(E_ip(translated(f, shift), i, 2.0, spec).value == doctest::Approx(base).epsilon(1e-12));
    }
  }
  CHECK(value(translated(at, shift), shift) == doctest::Approx(value(at, Vector::Zero(3))));
}

TEST_CASE("rotating an anisotropic profile leaves E_{i,p} unchanged") {
  const auto spec = spec_with(5);
  geometry::Rng rng(55);
  const Matrix a = diag3(2.0, 1.0, 0.5);
  for (int k = 0; k < 3; ++k) {
    const Matrix phi = geometry::sample_rotation(rng, 3).matrix();
    // f o phi^{-1} has shape A phi^T.
    const Profile f = AffineExtremizer{3, 2.0, 1.0, a, 1.0, {}};
    const Profile g = AffineExtremizer{3, 2.0, 1.0, a * phi.transpose(), 1.0, {}};
    for (int i = 1; i <= 2; ++i) {
      const auto ef = E_ip(f, i, 2.0, spec);
      const auto eg = E_ip(g, i, 2.0, spec);
      CHECK(std::abs(ef.value - eg.value) <= 3.0 * combined_error(ef.std_error, eg.std_error));
    }
  }
}

TEST_CASE("i = 1 is affine invariant") {
  const auto spec = spec_with(6, 100000);
  Matrix a(3, 3);
  a << 1.0, 0.8, 0.0, 0.0, 2.0, 0.3, 0.0, 0.0, 0.5;  // det 1
  const Profile f = AffineExtremizer{3, 2.0, 1.0, a, 1.0, {}};
  const auto r = sobolev_ratio(f, 1, 2.0, spec);
  CHECK(std::abs(r.value - 1.0) <= 3.0 * r.std_error);
  CHECK(r.std_error < 5e-3);
  // higher i see the anisotropy
  const auto r3 = sobolev_ratio(f, 3, 2.0, spec);
  CHECK(r3.value > 1.0 + 3.0 * r3.std_error);
}

TEST_CASE("chain on anisotropic and radial profiles") {
  const auto spec = spec_with(7);
  const Profile f = AffineExtremizer{3, 2.0, 1.0, diag3(4.0, 0.5, 0.5), 1.0, {}};
  const auto c = chain_report(f, 2.0, spec);
  REQUIRE(c.values.size() == 3);
  CHECK(c.monotone);
  CHECK(c.values[2].value - c.values[0].value > 3.0 * c.gap_std_error[2][0]);
  CHECK(c.values[1].value - c.values[0].value > -3.0 * c.gap_std_error[1][0]);
  CHECK(c.values[2].value == doctest::Approx(E_ip(f, 3, 2.0, spec).value).epsilon(1e-12));
  // Same frames as E_ip at i = 1.
  CHECK(c.values[0].value == doctest::Approx(E_ip(f, 1, 2.0, spec).value).epsilon(1e-12));

  const Profile at = AubinTalenti{3, 1.5, 1.0, 1.0, 1.0, {}};
  const auto r = chain_report(at, 1.5, spec);
  CHECK(r.values[0].value == doctest::Approx(r.values[2].value).epsilon(1e-12));
  CHECK(r.monotone);
}

TEST_CASE("non-quadratic p on anisotropic profiles") {
  const auto spec = spec_with(8, 5000);
  const Profile f = AffineExtremizer{3, 1.5, 1.0, diag3(2.0, 1.0, 0.5), 1.0, {}};
  const auto c = chain_report(f, 1.5, spec);
  CHECK(c.monotone);
  const auto r1 = sobolev_ratio(f, 1, 1.5, spec);
  CHECK(std::abs(r1.value - 1.0) <= 3.0 * r1.std_error);
}

TEST_CASE("zonoid functionals sit between E_1 and E_n") {
  const auto spec = spec_with(9);
  geometry::Rng rng(99);
  const auto mu = convex::random_even_measure(rng, 2, 8, 1.0);
  const Profile f = AffineExtremizer{3, 2.0, 1.0, diag3(2.0, 1.0, 0.5), 1.0, {}};
  const auto e1 = E_ip(f, 1, 2.0, spec);
  const auto e3 = E_ip(f, 3, 2.0, spec);
  const auto z = E_ip_zonoid(f, 2, 2.0, mu, spec);
  CHECK(z.value > e1.value);
  CHECK(z.value < e3.value);
  const auto flat = DiscreteSphereMeasure::antithetic(2, {{Vector::Unit(2, 0), 0.5}});
  CHECK_THROWS_AS(E_ip_zonoid(f, 2, 2.0, flat, spec), DomainError);

  const convex::ConvexBody cube = convex::cube(3);
  const auto b1 = E_i_bv(cube, 1, spec);
  const auto b3 = E_i_bv(cube, 3, spec);
  const auto bz = E_i_bv_zonoid(cube, 2, mu, spec);
  CHECK(bz.value > b1.value - 3.0 * combined_error(bz.std_error, b1.std_error));
  CHECK(bz.value < b3.value + 3.0 * bz.std_error);
}

TEST_CASE("BV functionals of convex bodies") {
  const auto spec = spec_with(10);
  const convex::ConvexBody ball = convex::Ball{3, 1.0};
  for (int i = 1; i <= 3; ++i) {
    CHECK(E_i_bv(ball, i, spec).value == doctest::Approx(2.0 * pi).epsilon(1e-13));
  }
  CHECK(E_i_bv(convex::Ball{3, 2.0}, 2, spec).value == doctest::Approx(8.0 * pi).epsilon(1e-13));
  // i = n: q_{3,1} times the surface area.
  CHECK(E_i_bv(convex::cube(3), 3, spec).value == doctest::Approx(12.0).epsilon(1e-13));
  const double bound = geometry::sharp_constant(3, 1.0) * 4.0;
  for (int i = 1; i <= 3; ++i) {
    const auto e = E_i_bv(convex::cube(3), i, spec);
    CHECK(e.value > bound + 3.0 * e.std_error);
  }
  // Ellipsoid route against a polytope approximation of the same ellipsoid.
  Matrix a(3, 3);
  a << 2.0, 0.3, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.5;
  const auto fast = spec_with(10, 4000);
  const auto approx = convex::geodesic_sphere(12).linear_image(a);
  for (int i = 1; i <= 3; ++i) {
    const auto e = E_i_bv(convex::Ellipsoid(a), i, fast);
    const auto p = E_i_bv(approx, i, fast);
    CHECK(e.value == doctest::Approx(p.value).epsilon(0.005));
  }
  // det 1 images of the ball keep E_1 = 2 pi.
  const auto e1 = E_i_bv(convex::Ellipsoid(a), 1, spec);
  CHECK(std::abs(e1.value - 2.0 * pi) <= 3.0 * e1.std_error);
}

TEST_CASE("smoothed balls approach the indicator of the ball") {
  const auto spec = spec_with(11);
  double previous = INFINITY;
  for (double w : {0.2, 0.1, 0.05}) {
    const Profile f = SmoothedBall{3, w, 1.0, {}};
    const double gap = std::abs(E_ip(f, 1, 1.0, spec).value - 2.0 * pi);
    CHECK(gap < previous);
    previous = gap;
  }
  CHECK(previous < 0.05 * 2.0 * pi);
}

TEST_CASE("domain and routing errors") {
  const auto spec = spec_with(12);
  CHECK_THROWS_AS(validate(AubinTalenti{3, 1.0, 1.0, 1.0, 1.0, {}}), DomainError);
  CHECK_THROWS_AS(validate(AubinTalenti{3, 3.0, 1.0, 1.0, 1.0, {}}), DomainError);
  CHECK_THROWS_AS(validate(AffineExtremizer{3, 2.0, 1.0, Matrix::Zero(3, 3), 1.0, {}}), DomainError);
  const Profile ind = CharOfBody{convex::Ball{3, 1.0}};
  CHECK_THROWS_AS(E_ip(ind, 1, 1.5, spec), DomainError);
  CHECK_THROWS_AS(gradient(ind, Vector::Zero(3)), DomainError);
  QuadratureSpec coarse = spec;
  coarse.radial_nodes = 2;
  coarse.target_rel_error = 1e-12;
  CHECK_THROWS_AS(E_ip(Gaussian{3, 1.0, 1.0, Vector()}, 1, 2.0, coarse), IntegrationError);
}

TEST_CASE("profiles from JSON") {
  const auto f = profile_from_json(nlohmann::json::parse(
      R"({"type": "affine_extremizer", "n": 3, "p": 2, "shape": [[2,0,0],[0,1,0],[0,0,0.5]], "x0": [1,0,0]})"));
  CHECK(std::holds_alternative<AffineExtremizer>(f));
  CHECK(value(f, Vector::Unit(3, 0)) == doctest::Approx(1.0));
  CHECK_THROWS_AS(profile_from_json(nlohmann::json::parse(R"({"type": "bump", "n": 3})")), ConfigError);
  CHECK_THROWS_AS(profile_from_json(nlohmann::json::parse(R"({"type": "gaussian"})")), ConfigError);
  CHECK_THROWS_AS(profile_from_json(nlohmann::json::parse(R"({"type": "aubin_talenti", "n": 3, "p": 4})")),
                  DomainError);
  const auto b = body_from_json(nlohmann::json::parse(R"({"type": "cube", "n": 3, "half_width": 0.5})"));
  CHECK(convex::support(b, Vector::Ones(3)) == doctest::Approx(1.5));
}

TEST_CASE("gradients agree with finite differences") {
  const std::vector<Profile> profiles{
      AubinTalenti{3, 1.5, 1.0, 2.0, 1.0, {}},
      AffineExtremizer{3, 2.0, 1.0, diag3(2.0, 1.0, 0.5), -1.5, {}},
      Gaussian{3, 0.7, 2.0, Vector()},
      SmoothedBall{3, 0.3, 1.0, {}},
  };
  const Vector x = Vector(Eigen::Vector3d(0.3, -0.45, 0.6));
  for (const auto& f : profiles) {
    const Vector g = gradient(f, x);
    for (int k = 0; k < 3; ++k) {
      const double h = 1e-6;
      const double fd = (value(f, x + h * Vector::Unit(3, k)) - value(f, x - h * Vector::Unit(3, k))) / (2 * h);
      CHECK(g[k] == doctest::Approx(fd).epsilon(1e-6));
    }
  }
}
