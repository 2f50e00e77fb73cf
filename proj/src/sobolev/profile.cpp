#include "projave/sobolev/profile.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "projave/convex/builders.hpp"
#include "projave/convex/projection.hpp"
#include "projave/errors.hpp"
#include "projave/geometry/constants.hpp"

namespace projave::sobolev {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double log_beta(double x, double y) { return std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y); }

Vector centre(const Vector& x0, int n) { return x0.size() == 0 ? Vector(Vector::Zero(n)) : x0; }

void check_centre(const Vector& x0, int n, const char* what) {
  if (x0.size() != 0 && x0.size() != n) {
    throw DomainError(std::string(what) + ": x0 has the wrong dimension");
  }
}

void check_extremal_p(int n, double p, const char* what) {
  if (n < 2) {
    throw DomainError(std::string(what) + ": need n >= 2");
  }
  if (!(p > 1.0 && p < n)) {
    throw DomainError(std::string(what) + ": need 1 < p < n (the exponent p/(p-1) is undefined at p = 1)");
  }
}

// Radial Aubin-Talenti shape (a + b r^{p'})^{1 - n/p} and its derivative.
RadialForm talenti_form(int n, double p, double a, double b, double amplitude) {
  const double pp = p / (p - 1.0);
  const double e = 1.0 - n / p;
  RadialForm form;
  form.shape = [=](double r) { return std::pow(a + b * std::pow(r, pp), e); };
  form.derivative = [=](double r) {
    if (r == 0.0) {
      return 0.0;
    }
    const double rp = std::pow(r, pp - 1.0);
    return e * std::pow(a + b * rp * r, e - 1.0) * b * pp * rp;
  };
  form.amplitude = amplitude;
  return form;
}

// int (a + b r^{p'})^{-n} r^{n-1} dr over (0, inf), times n omega_n.
double talenti_power_integral(int n, double p, double a, double b) {
  const double pp = p / (p - 1.0);
  const double log_value = std::log(n * geometry::unit_ball_volume(n)) - n * std::log(a) +
                           (n / pp) * std::log(a / b) - std::log(pp) + log_beta(n / pp, n / p);
  return std::exp(log_value);
}

bool is_sobolev_exponent(int n, double p, double q) {
  return std::abs(q - geometry::sobolev_exponent(n, p)) <= 1e-12 * q;
}

Matrix read_matrix(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.empty()) {
    throw ConfigError(std::string(what) + " must be a non-empty array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (static_cast<Eigen::Index>(j[r].size()) != cols) {
      throw ConfigError(std::string(what) + " has ragged rows");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = j[r][c].get<double>();
    }
  }
  return m;
}

Vector read_vector(const nlohmann::json& j, const char* what) {
  if (!j.is_array()) {
    throw ConfigError(std::string(what) + " must be an array");
  }
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) {
    v[static_cast<Eigen::Index>(k)] = j[k].get<double>();
  }
  return v;
}

}  // namespace

void validate(const Profile& f) {
  std::visit(overloaded{
                 [](const AubinTalenti& g) {
                   check_extremal_p(g.n, g.p, "AubinTalenti");
                   if (!(g.a > 0.0 && g.b > 0.0)) {
                     throw DomainError("AubinTalenti: need a > 0 and b > 0");
                   }
                   check_centre(g.x0, g.n, "AubinTalenti");
                 },
                 [](const AffineExtremizer& g) {
                   check_extremal_p(g.n, g.p, "AffineExtremizer");
                   if (!(g.a > 0.0)) {
                     throw DomainError("AffineExtremizer: need a > 0");
                   }
                   if (g.shape.rows() != g.n || g.shape.cols() != g.n) {
                     throw DomainError("AffineExtremizer: A must be n x n");
                   }
                   if (!(std::abs(g.shape.determinant()) > 1e-300)) {
                     throw DomainError("AffineExtremizer: A must be invertible");
                   }
                   check_centre(g.x0, g.n, "AffineExtremizer");
                 },
                 [](const Gaussian& g) {
                   if (g.n < 2 || !(g.scale > 0.0)) {
                     throw DomainError("Gaussian: need n >= 2 and scale > 0");
                   }
                   check_centre(g.x0, g.n, "Gaussian");
                 },
                 [](const SmoothedBall& g) {
                   if (g.n < 2 || !(g.width > 0.0 && g.width < 1.0)) {
                     throw DomainError("SmoothedBall: need n >= 2 and 0 < width < 1");
                   }
                   check_centre(g.x0, g.n, "SmoothedBall");
                 },
                 [](const CharOfBody&) {},
             },
             f);
}

int dim(const Profile& f) {
  return std::visit(overloaded{
                        [](const CharOfBody& g) { return convex::dim(g.body); },
                        [](const auto& g) { return g.n; },
                    },
                    f);
}

std::optional<RadialForm> radial_form(const Profile& f) {
  return std::visit(
      overloaded{
          [](const AubinTalenti& g) -> std::optional<RadialForm> {
            return talenti_form(g.n, g.p, g.a, g.b, g.amplitude);
          },
          [](const AffineExtremizer& g) -> std::optional<RadialForm> {
            return talenti_form(g.n, g.p, g.a, 1.0, g.amplitude);
          },
          [](const Gaussian& g) -> std::optional<RadialForm> {
            const double s2 = g.scale * g.scale;
            RadialForm form;
            form.shape = [s2](double r) { return std::exp(-r * r / s2); };
            form.derivative = [s2](double r) { return -2.0 * r / s2 * std::exp(-r * r / s2); };
            form.amplitude = g.amplitude;
            return form;
          },
          [](const SmoothedBall& g) -> std::optional<RadialForm> {
            const double w = g.width;
            const double inner = 1.0 - w;
            RadialForm form;
            form.shape = [w, inner](double r) {
              if (r <= inner) {
                return 1.0;
              }
              if (r >= 1.0) {
                return 0.0;
              }
              const double t = (r - inner) / w;
              return 1.0 - t * t * (3.0 - 2.0 * t);
            };
            form.derivative = [w, inner](double r) {
              if (r <= inner || r >= 1.0) {
                return 0.0;
              }
              const double t = (r - inner) / w;
              return -6.0 * t * (1.0 - t) / w;
            };
            form.breakpoints = {inner, 1.0};
            form.amplitude = g.amplitude;
            return form;
          },
          [](const CharOfBody&) -> std::optional<RadialForm> { return std::nullopt; },
      },
      f);
}

double value(const Profile& f, const Vector& x) {
  validate(f);
  return std::visit(overloaded{
                        [&x](const CharOfBody& g) {
                          return std::visit(
                              overloaded{
                                  [&x](const convex::Ball& b) { return x.norm() <= b.radius ? 1.0 : 0.0; },
                                  [&x](const convex::Ellipsoid& e) {
                                    return e.shape().lu().solve(x).norm() <= 1.0 ? 1.0 : 0.0;
                                  },
                                  [&x](const convex::Polytope& p) {
                                    for (const auto& fc : p.facets()) {
                                      if (fc.normal.dot(x) > p.support(fc.normal)) {
                                        return 0.0;
                                      }
                                    }
                                    return 1.0;
                                  },
                                  [](const convex::LpZonoid&) -> double {
                                    throw DomainError("indicator of an L^p zonoid is not evaluable");
                                  },
                              },
                              g.body);
                        },
                        [&x, &f](const AffineExtremizer& g) {
                          const auto form = *radial_form(f);
                          const Vector y = g.shape * (x - centre(g.x0, g.n));
                          return form.amplitude * form.shape(y.norm());
                        },
                        [&x, &f](const auto& g) {
                          const auto form = *radial_form(f);
                          return form.amplitude * form.shape((x - centre(g.x0, g.n)).norm());
                        },
                    },
                    f);
}

Vector gradient(const Profile& f, const Vector& x) {
  validate(f);
  return std::visit(overloaded{
                        [](const CharOfBody&) -> Vector {
                          throw DomainError(
                              "indicator profiles have no L^p gradient; use the BV functionals");
                        },
                        [&x, &f](const AffineExtremizer& g) -> Vector {
                          const auto form = *radial_form(f);
                          const Vector y = g.shape * (x - centre(g.x0, g.n));
                          const double r = y.norm();
                          if (r == 0.0) {
                            return Vector::Zero(g.n);
                          }
                          return form.amplitude * form.derivative(r) / r * (g.shape.transpose() * y);
                        },
                        [&x, &f](const auto& g) -> Vector {
                          const auto form = *radial_form(f);
                          const Vector y = x - centre(g.x0, g.n);
                          const double r = y.norm();
                          if (r == 0.0) {
                            return Vector::Zero(g.n);
                          }
                          return form.amplitude * form.derivative(r) / r * y;
                        },
                    },
                    f);
}

double gradient_tail_exponent(const Profile& f, double p) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  return std::visit(overloaded{
                        [p](const AubinTalenti& g) { return p * (g.n - 1) / (g.p - 1.0); },
                        [p](const AffineExtremizer& g) { return p * (g.n - 1) / (g.p - 1.0); },
                        [](const Gaussian&) { return kInf; },
                        [](const SmoothedBall&) { return kInf; },
                        [](const CharOfBody&) -> double {
                          throw DomainError("indicator profiles have no L^p gradient");
                        },
                    },
                    f);
}

std::optional<double> closed_form_power_integral(const Profile& f, double q) {
  validate(f);
  return std::visit(
      overloaded{
          [q](const AubinTalenti& g) -> std::optional<double> {
            if (!is_sobolev_exponent(g.n, g.p, q)) {
              return std::nullopt;
            }
            return std::pow(std::abs(g.amplitude), q) * talenti_power_integral(g.n, g.p, g.a, g.b);
          },
          [q](const AffineExtremizer& g) -> std::optional<double> {
            if (!is_sobolev_exponent(g.n, g.p, q)) {
              return std::nullopt;
            }
            return std::pow(std::abs(g.amplitude), q) * talenti_power_integral(g.n, g.p, g.a, 1.0) /
                   std::abs(g.shape.determinant());
          },
          [q](const Gaussian& g) -> std::optional<double> {
            return std::pow(std::abs(g.amplitude), q) *
                   std::pow(std::numbers::pi * g.scale * g.scale / q, 0.5 * g.n);
          },
          [](const SmoothedBall&) -> std::optional<double> { return std::nullopt; },
          [](const CharOfBody& g) -> std::optional<double> {
            return std::visit(
                overloaded{
                    [](const convex::Ball& b) -> std::optional<double> {
                      return geometry::unit_ball_volume(b.n) * std::pow(b.radius, b.n);
                    },
                    [](const convex::Ellipsoid& e) -> std::optional<double> { return e.volume(); },
                    [](const convex::Polytope& p) -> std::optional<double> { return convex::volume(p); },
                    [](const convex::LpZonoid&) -> std::optional<double> { return std::nullopt; },
                },
                g.body);
          },
      },
      f);
}

Profile translated(const Profile& f, const Vector& shift) {
  return std::visit(overloaded{
                        [](const CharOfBody&) -> Profile {
                          throw DomainError("translated: indicator bodies are origin-centred");
                        },
                        [&shift](auto g) -> Profile {
                          g.x0 = centre(g.x0, g.n) + shift;
                          return g;
                        },
                    },
                    f);
}

Profile scaled(const Profile& f, double lambda) {
  return std::visit(overloaded{
                        [](const CharOfBody&) -> Profile {
                          throw DomainError("scaled: indicator profiles carry no amplitude");
                        },
                        [lambda](auto g) -> Profile {
                          g.amplitude *= lambda;
                          return g;
                        },
                    },
                    f);
}

ConvexBody body_from_json(const nlohmann::json& j, const std::filesystem::path& base) {
  try {
    const auto type = j.at("type").get<std::string>();
    if (type == "ball") {
      const convex::Ball b{j.at("n").get<int>(), j.value("radius", 1.0)};
      if (b.n < 2 || !(b.radius > 0.0)) {
        throw DomainError("ball: need n >= 2 and radius > 0");
      }
      return b;
    }
    if (type == "ellipsoid") {
      return convex::Ellipsoid(read_matrix(j.at("shape"), "ellipsoid shape"));
    }
    if (type == "cube") {
      return convex::cube(j.at("n").get<int>(), j.value("half_width", 1.0));
    }
    if (type == "ball_zonotope") {
      return convex::ball_zonotope(j.at("n").get<int>(), j.at("generators").get<int>());
    }
    if (type == "geodesic_sphere") {
      return convex::geodesic_sphere(j.at("frequency").get<int>());
    }
    if (type == "polytope") {
      std::filesystem::path path = j.at("fixture").get<std::string>();
      if (path.is_relative() && !base.empty()) {
        path = base / path;
      }
      return convex::read_polytope(path);
    }
    throw ConfigError("unknown body type '" + type + "'");
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("body: ") + e.what());
  }
}

Profile profile_from_json(const nlohmann::json& j, const std::filesystem::path& base) {
  Profile f = Gaussian{3, 1.0, 1.0, Vector()};
  try {
    const auto type = j.at("type").get<std::string>();
    const double amplitude = j.value("amplitude", 1.0);
    Vector x0;
    if (j.contains("x0")) {
      x0 = read_vector(j.at("x0"), "x0");
    }
    if (type == "aubin_talenti") {
      f = AubinTalenti{j.at("n").get<int>(), j.at("p").get<double>(), j.value("a", 1.0),
                       j.value("b", 1.0), amplitude, x0};
    } else if (type == "affine_extremizer") {
      f = AffineExtremizer{j.at("n").get<int>(), j.at("p").get<double>(), j.value("a", 1.0),
                           read_matrix(j.at("shape"), "affine_extremizer shape"), amplitude, x0};
    } else if (type == "gaussian") {
      f = Gaussian{j.at("n").get<int>(), j.value("scale", 1.0), amplitude, x0};
    } else if (type == "smoothed_ball") {
      f = SmoothedBall{j.at("n").get<int>(), j.at("width").get<double>(), amplitude, x0};
    } else if (type == "indicator") {
      f = CharOfBody{body_from_json(j.at("body"), base)};
    } else {
      throw ConfigError("unknown profile type '" + type + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("profile: ") + e.what());
  }
  validate(f);
  return f;
}

}  // namespace projave::sobolev
