#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "json.hpp"
#include "projave/convex/bodies.hpp"

namespace projave::sobolev {

using convex::ConvexBody;
using geometry::Matrix;
using geometry::Vector;

/// amplitude * (a + b |x - x0|^{p/(p-1)})^{1 - n/p}, 1 < p < n.
struct AubinTalenti {
  int n;
  double p;
  double a = 1.0;
  double b = 1.0;
  double amplitude = 1.0;
  Vector x0;  // empty means the origin
};

/// amplitude * (a + |A(x - x0)|^{p/(p-1)})^{1 - n/p}, A invertible.
struct AffineExtremizer {
  int n;
  double p;
  double a = 1.0;
  Matrix shape;
  double amplitude = 1.0;
  Vector x0;
};

/// amplitude * exp(-|x - x0|^2 / scale^2).
struct Gaussian {
  int n;
  double scale = 1.0;
  double amplitude = 1.0;
  Vector x0;
};

/// Radial C^1 approximation of the indicator of the unit ball: 1 on
/// |x| <= 1 - width, 0 on |x| >= 1, cubic smoothstep in between.
struct SmoothedBall {
  int n;
  double width;
  double amplitude = 1.0;
  Vector x0;
};

/// Indicator of a convex body. Only admitted to the BV functionals.
struct CharOfBody {
  ConvexBody body;
};

using Profile = std::variant<AubinTalenti, AffineExtremizer, Gaussian, SmoothedBall, CharOfBody>;

/// Throws DomainError if the parameters are outside the variant's domain.
void validate(const Profile& f);

int dim(const Profile& f);

double value(const Profile& f, const Vector& x);

/// Closed-form gradient. Throws DomainError for CharOfBody.
Vector gradient(const Profile& f, const Vector& x);

/// One-dimensional description of a radial profile around its centre:
/// f(x) = amplitude * shape(|x - x0|).
struct RadialForm {
  std::function<double(double)> shape;
  std::function<double(double)> derivative;
  std::vector<double> breakpoints;
  double amplitude = 1.0;
};

/// Radial form of the radial variants. For AffineExtremizer this is the
/// base profile g with f(x) = g(A(x - x0)). Empty for CharOfBody.
std::optional<RadialForm> radial_form(const Profile& f);

/// Decay exponent of |grad f|^p: |grad f(x)|^p = O(|x|^{-tail}).
/// Returns +inf for Gaussians and compactly supported profiles.
double gradient_tail_exponent(const Profile& f, double p);

/// Closed form of int |f|^q dx where one is known.
std::optional<double> closed_form_power_integral(const Profile& f, double q);

/// x -> f(x - shift).
Profile translated(const Profile& f, const Vector& shift);

/// lambda * f.
Profile scaled(const Profile& f, double lambda);

/// JSON form, e.g.
///   {"type": "aubin_talenti", "n": 3, "p": 2, "a": 1, "b": 1}
///   {"type": "affine_extremizer", "n": 3, "p": 2, "a": 1,
///    "shape": [[2,0,0],[0,1,0],[0,0,0.5]]}
///   {"type": "gaussian", "n": 3, "scale": 1}
///   {"type": "smoothed_ball", "n": 3, "width": 0.1}
///   {"type": "indicator", "body": {"type": "ball", "n": 3, "radius": 1}}
/// Optional keys: "amplitude", "x0". Bodies: "ball", "ellipsoid" (with
/// "shape"), "cube" (with "n", optional "half_width"), "geodesic_sphere"
/// (with "frequency"), "ball_zonotope" (with "n", "generators"), "polytope" (with
/// "fixture" path, resolved against `base`). Throws ConfigError on
/// malformed input and DomainError on parameters outside their domain.
Profile profile_from_json(const nlohmann::json& j, const std::filesystem::path& base = {});
ConvexBody body_from_json(const nlohmann::json& j, const std::filesystem::path& base = {});

}  // namespace projave::sobolev
